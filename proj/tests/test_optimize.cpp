#include "qci/optimize.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace qci::optimize;

TEST_SUITE_BEGIN("optimize");

namespace {

double sphere(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(const std::vector<double>& x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

Objective sphere5() { return boxed(5, -10.0, 10.0, sphere); }

void check_monotone(const RunRecord& rec) {
  for (std::size_t i = 1; i < rec.trace.size(); ++i) CHECK(rec.trace[i] <= rec.trace[i - 1]);
}

}  // namespace

TEST_CASE("pso solves the sphere and rosenbrock") {
  PsoConfig cfg;
  cfg.swarm = 50;
  cfg.iterations = 800;
  cfg.seed = 1;
  const RunRecord rec = pso_minimize(sphere5(), cfg);
  CHECK(rec.best_value <= 1e-6);
  check_monotone(rec);

  PsoConfig rcfg;
  rcfg.swarm = 60;
  rcfg.iterations = 1500;
  rcfg.seed = 3;
  const RunRecord rr = pso_minimize(boxed(2, -5.0, 5.0, rosenbrock), rcfg);
  CHECK(rr.best_value <= 1e-3);
}

TEST_CASE("pso on a constant objective returns a flat trace") {
  PsoConfig cfg;
  cfg.swarm = 10;
  cfg.iterations = 20;
  cfg.seed = 9;
  const RunRecord rec =
      pso_minimize(boxed(3, -1.0, 1.0, [](const std::vector<double>&) { return 2.5; }), cfg);
  for (double v : rec.trace) CHECK(v == 2.5);
}

TEST_CASE("pso requires a budget") {
  PsoConfig cfg;
  cfg.iterations = 0;
  CHECK_THROWS_AS(pso_minimize(sphere5(), cfg), std::invalid_argument);
}

TEST_CASE("abc solves the sphere") {
  AbcConfig cfg;
  cfg.employers = 30;
  cfg.iterations = 2000;
  cfg.seed = 2;
  const RunRecord rec = abc_minimize(sphere5(), cfg);
  CHECK(rec.best_value <= 1e-4);
  check_monotone(rec);
}

TEST_CASE("abc with a single iteration returns the best initial source") {
  AbcConfig cfg;
  cfg.employers = 12;
  cfg.iterations = 1;
  cfg.seed = 5;
  const RunRecord rec = abc_minimize(sphere5(), cfg);
  CHECK(rec.trace.size() == 1);
  CHECK(std::isfinite(rec.best_value));
}

TEST_CASE("abc converges onto a bound corner") {
  auto corner = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += (10.0 - v) * (10.0 - v);
    return s;
  };
  AbcConfig cfg;
  cfg.employers = 30;
  cfg.iterations = 2000;
  cfg.seed = 7;
  const RunRecord rec = abc_minimize(boxed(3, -10.0, 10.0, corner), cfg);
  CHECK(rec.best_value <= 1e-2);
}

TEST_CASE("pattern search refines a convex quadratic") {
  for (PatternVariant variant : {PatternVariant::Gps2D, PatternVariant::GpsDplus1,
                                 PatternVariant::Mads2D, PatternVariant::MadsDplus1}) {
    PatternSearchConfig cfg;
    cfg.variant = variant;
    cfg.delta0 = 1.0;
    cfg.delta_min = 1e-10;
    cfg.max_polls = 4000;
    cfg.seed = 11;
    const RunRecord rec =
        pattern_search_minimize(boxed(4, -10.0, 10.0, sphere), cfg, {5, 5, 5, 5});
    CHECK(rec.best_value <= 1e-6);
    check_monotone(rec);
  }
}

TEST_CASE("pattern search from the optimum polls unsuccessfully") {
  PatternSearchConfig cfg;
  cfg.max_polls = 1;
  const RunRecord rec = pattern_search_minimize(boxed(2, -1.0, 1.0, sphere), cfg, {0, 0});
  CHECK(rec.best_value == 0.0);
  CHECK(rec.best_point == std::vector<double>{0, 0});
  CHECK(rec.trace == std::vector<double>{0.0});
}

TEST_CASE("pattern search minimizes |x|") {
  PatternSearchConfig cfg;
  cfg.delta_min = 1e-12;
  cfg.max_polls = 200;
  const RunRecord rec = pattern_search_minimize(
      boxed(1, -3.0, 3.0, [](const std::vector<double>& x) { return std::abs(x[0]); }), cfg,
      {1.7});
  CHECK(rec.best_value <= 1e-6);
}

TEST_CASE("sga makes progress on the sphere") {
  SgaConfig cfg;
  cfg.population = 100;
  cfg.iterations = 2000;
  cfg.seed = 4;
  const RunRecord rec = sga_minimize(sphere5(), cfg);
  CHECK(rec.best_value <= 1e-2);
  check_monotone(rec);
}

TEST_CASE("sga without crossover or mutation keeps the population fixed") {
  SgaConfig cfg;
  cfg.population = 20;
  cfg.iterations = 50;
  cfg.crossover = 0.0;
  cfg.mutation = 0.0;
  cfg.seed = 6;
  const RunRecord rec = sga_minimize(sphere5(), cfg);
  for (double v : rec.trace) CHECK(v == rec.trace.front());
}

TEST_CASE("runs are reproducible bit for bit") {
  PsoConfig pso;
  pso.swarm = 20;
  pso.iterations = 100;
  pso.seed = 42;
  const RunRecord a = pso_minimize(sphere5(), pso);
  const RunRecord b = pso_minimize(sphere5(), pso);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_point == b.best_point);
  CHECK(a.trace == b.trace);
  CHECK(a.evaluations == b.evaluations);

  AbcConfig abc;
  abc.iterations = 100;
  abc.seed = 43;
  CHECK(abc_minimize(sphere5(), abc).best_point == abc_minimize(sphere5(), abc).best_point);

  SgaConfig sga;
  sga.iterations = 50;
  sga.seed = 44;
  CHECK(sga_minimize(sphere5(), sga).best_point == sga_minimize(sphere5(), sga).best_point);

  PatternSearchConfig ps;
  ps.variant = PatternVariant::Mads2D;
  ps.max_polls = 200;
  ps.seed = 45;
  CHECK(pattern_search_minimize(sphere5(), ps, {1, 2, 3, 4, 5}).best_point ==
        pattern_search_minimize(sphere5(), ps, {1, 2, 3, 4, 5}).best_point);
}

TEST_CASE("iterates respect the box bounds") {
  double worst = 0.0;
  auto tracked = [&worst](const std::vector<double>& x) {
    for (double v : x) worst = std::max(worst, std::abs(v));
    return sphere(x);
  };
  const Objective obj = boxed(4, -2.0, 2.0, tracked);

  PsoConfig pso;
  pso.swarm = 15;
  pso.iterations = 200;
  pso.seed = 8;
  pso_minimize(obj, pso);
  AbcConfig abc;
  abc.iterations = 200;
  abc.seed = 8;
  abc_minimize(obj, abc);
  SgaConfig sga;
  sga.population = 20;
  sga.iterations = 100;
  sga.seed = 8;
  sga_minimize(obj, sga);
  PatternSearchConfig ps;
  ps.max_polls = 200;
  pattern_search_minimize(obj, ps, {1.9, -1.9, 0.0, 2.0});
  CHECK(worst <= 2.0 + 1e-12);
}

TEST_CASE("optimizers tolerate infinite penalties") {
  auto penalized = [](const std::vector<double>& x) {
    if (x[0] < 0.0) return std::numeric_limits<double>::infinity();
    return sphere(x);
  };
  PsoConfig cfg;
  cfg.swarm = 30;
  cfg.iterations = 300;
  cfg.seed = 10;
  const RunRecord rec = pso_minimize(boxed(3, -5.0, 5.0, penalized), cfg);
  CHECK(std::isfinite(rec.best_value));
  CHECK(rec.best_value <= 1e-3);
}

TEST_CASE("chains refine the incumbent") {
  std::vector<Stage> both(2);
  PsoConfig pso;
  pso.swarm = 20;
  pso.iterations = 60;
  pso.seed = 12;
  both[0] = {"", pso};
  PatternSearchConfig gps;
  gps.delta0 = 0.5;
  gps.max_polls = 500;
  both[1] = {"", gps};

  const RunRecord chained = chain(sphere5(), both);
  const RunRecord alone = pso_minimize(sphere5(), pso);
  CHECK(chained.best_value <= alone.best_value);
  check_monotone(chained);
  CHECK(chained.stage_labels.front() == "pso");
  CHECK(chained.stage_labels.back() == "gps");

  // single-stage chain behaves like the stage itself
  const RunRecord single = chain(sphere5(), {both[0]});
  CHECK(single.best_value == alone.best_value);
  CHECK(single.trace == alone.trace);

  CHECK_THROWS_AS(chain(sphere5(), {}), std::invalid_argument);
}

TEST_SUITE_END();
