#include "qci/analytic.hpp"

#include "qci/channels.hpp"
#include "qci/cohinfo.hpp"
#include "qci/optimize.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace qci;
using namespace qci::analytic;
using linalg::Complex;

TEST_SUITE_BEGIN("analytic");

TEST_CASE("weighted repetition states") {
  const StateVector bell = weighted_repetition_state({1, 0.5});
  CHECK(std::abs(bell.amplitudes(0) - Complex(M_SQRT1_2)) < 1e-15);
  CHECK(std::abs(bell.amplitudes(3) - Complex(M_SQRT1_2)) < 1e-15);

  const StateVector ghz = weighted_repetition_state({3, 0.5});
  CHECK(ghz.dim() == 16);
  CHECK(std::abs(ghz.amplitudes(0) - Complex(M_SQRT1_2)) < 1e-15);
  CHECK(std::abs(ghz.amplitudes(15) - Complex(M_SQRT1_2)) < 1e-15);

  // lambda = 1 is a product state: zero coherent information everywhere
  const StateVector product = weighted_repetition_state({2, 1.0});
  const double ci =
      cohinfo::coherent_information(product, channels::gadc(0.3, 0.2), 2).ci_total;
  CHECK(std::abs(ci) < 1e-10);
}

TEST_CASE("product repetition states") {
  const StateVector two_bells = product_repetition_state({{1, 1}});
  CHECK(two_bells.subsystem_dims == std::vector<int>{4, 2, 2});
  const double ci =
      cohinfo::coherent_information(two_bells, channels::identity_channel(2), 2).ci_total;
  CHECK(ci == doctest::Approx(2.0).epsilon(1e-12));

  // 3x1 block structure: four uniform terms with matching halves
  const StateVector code = product_repetition_state({{3, 1}});
  CHECK(code.subsystem_dims == std::vector<int>{16, 2, 2, 2, 2});
  std::vector<int> support;
  for (int i = 0; i < code.dim(); ++i)
    if (std::abs(code.amplitudes(i)) > 1e-12) support.push_back(i);
  const std::vector<int> expected = {0 * 16 + 0, 1 * 16 + 1, 14 * 16 + 14, 15 * 16 + 15};
  CHECK(support == expected);
  for (int idx : support)
    CHECK(std::abs(code.amplitudes(idx) - Complex(0.5)) < 1e-15);

  // the product code beats the plain 4-repetition code at p = 0.2523
  const double p = 0.2523;
  const double rate31 =
      cohinfo::coherent_information(code, channels::depolarizing(p), 4).ci_per_use;
  const double rate4 = depolarizing_repetition_ci(4, p);
  CHECK(rate31 > rate4);

  CHECK_THROWS_AS(product_repetition_state({{11}}), std::invalid_argument);
  CHECK_THROWS_AS(product_repetition_state({{}}), std::invalid_argument);
}

TEST_CASE("gadc closed form against the brute-force channel") {
  for (double lam : {0.0, 0.25, 0.6, 1.0})
    for (double g : {0.1, 0.44035, 0.8})
      for (double n : {0.0, 0.1, 0.5})
        for (int k : {1, 2, 3, 4}) {
          const double formula = gadc_repcode_ci({k, lam}, g, n);
          const StateVector code = weighted_repetition_state({k, lam});
          const double brute =
              cohinfo::coherent_information(code, channels::gadc(g, n), k).ci_total;
          CHECK(formula == doctest::Approx(brute).epsilon(1e-10));
        }
  CHECK(std::abs(gadc_repcode_ci({4, 1.0}, 0.3, 0.2)) < 1e-12);
}

TEST_CASE("gadc closed form runs at large blocklength") {
  const double v16 = gadc_repcode_ci({16, 0.4}, 0.44035, 0.1);
  const double v20 = gadc_repcode_ci({20, 0.4}, 0.44035, 0.1);
  CHECK(std::isfinite(v16));
  CHECK(std::isfinite(v20));
  CHECK(v20 < 0.0);  // deep in the no-coding regime
}

TEST_CASE("dephrasure closed form against the brute-force channel") {
  for (double lam : {0.0, 0.3, 0.5, 1.0})
    for (double p : {0.0, 0.08, 0.5, 1.0})
      for (double q : {0.0, 0.4, 1.0})
        for (int k : {1, 2, 3}) {
          const double formula = dephrasure_repcode_ci({k, lam}, p, q);
          const StateVector code = weighted_repetition_state({k, lam});
          const double brute =
              cohinfo::coherent_information(code, channels::dephrasure(p, q), k).ci_total;
          CHECK(formula == doctest::Approx(brute).epsilon(1e-9));
        }
}

TEST_CASE("dephrasure formula is symmetric in the weight") {
  for (double lam : {0.1, 0.23, 0.4})
    for (int k : {1, 2, 5}) {
      const double a = dephrasure_repcode_ci({k, lam}, 0.08, 0.4);
      const double b = dephrasure_repcode_ci({k, 1.0 - lam}, 0.08, 0.4);
      CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
}

TEST_CASE("weight-optimized k=1 dephrasure formula is the single-letter optimum") {
  // search over arbitrary two-qubit codes and compare with the closed form
  const double p = 0.08, q = 0.4;
  double best_formula = 0.0;
  for (int i = 0; i <= 1000; ++i)
    best_formula = std::max(best_formula, dephrasure_repcode_ci({1, i / 1000.0}, p, q));

  ansatz::AnsatzSpec raw;
  raw.kind = ansatz::AnsatzKind::Raw;
  raw.n = 2;
  raw.reference_qudits = 1;
  const auto objective = cohinfo::make_ci_objective(raw, channels::dephrasure(p, q), 1);
  optimize::PsoConfig cfg;
  cfg.swarm = 40;
  cfg.iterations = 400;
  cfg.seed = 7;
  const double best_search = -optimize::pso_minimize(objective, cfg).best_value;
  CHECK(best_search <= best_formula + 1e-7);
  CHECK(best_search >= best_formula - 1e-4);
}

TEST_CASE("single-letter depolarizing coherent information") {
  CHECK(depolarizing_single_letter_ci(0.0) == doctest::Approx(1.0));
  CHECK(depolarizing_single_letter_ci(1.0) == doctest::Approx(-1.0));
  for (double p : {0.0, 0.1, 0.2523, 0.6, 1.0})
    CHECK(depolarizing_single_letter_ci(p) ==
          doctest::Approx(depolarizing_repetition_ci(1, p)).epsilon(1e-10));
  CHECK(depolarizing_single_letter_ci(0.25237) > 0.0);
  CHECK(depolarizing_single_letter_ci(0.25239) < 0.0);
}

TEST_CASE("repetition thresholds are ordered") {
  const double t1 =
      find_threshold([](double p) { return depolarizing_single_letter_ci(p); }, 0.24, 0.26);
  const double t3 =
      find_threshold([](double p) { return depolarizing_repetition_ci(3, p); }, 0.25, 0.26);
  const double t5 =
      find_threshold([](double p) { return depolarizing_repetition_ci(5, p); }, 0.25, 0.26);
  CHECK(t1 == doctest::Approx(0.25238).epsilon(2e-5));
  CHECK(t3 == doctest::Approx(0.25350).epsilon(2e-5));
  CHECK(t5 == doctest::Approx(0.25380).epsilon(2e-5));
  CHECK(t1 < t3);
  CHECK(t3 < t5);
}

TEST_CASE("best product repetition codes") {
  const ProductRepSearch k4 = best_product_repcode(4, 0.2523);
  CHECK(k4.partition.blocks == std::vector<int>{3, 1});
  CHECK(k4.frozen == 0);

  const ProductRepSearch k5 = best_product_repcode(5, 0.2537);
  CHECK(k5.partition.blocks == std::vector<int>{5});

  const ProductRepSearch k3 = best_product_repcode(3, 0.20);
  CHECK(k3.partition.blocks == std::vector<int>{1, 1, 1});

  // below every threshold, freezing everything is optimal
  const ProductRepSearch dead = best_product_repcode(2, 0.30);
  CHECK(dead.partition.blocks.empty());
  CHECK(dead.frozen == 2);
  CHECK(dead.rate == 0.0);
}

namespace {

double construction_fidelity_ff(const ProductRepSpec& spec) {
  int total = 0;
  for (int b : spec.blocks) total += b;
  ansatz::AnsatzSpec as;
  as.kind = ansatz::AnsatzKind::FF;
  as.n = 2 * total;
  as.reference_qudits = total;
  as.ff.hidden_widths = {static_cast<int>(spec.blocks.size()),
                         static_cast<int>(spec.blocks.size()), 1};
  as.ff.activations = {ansatz::Activation::Cos, ansatz::Activation::Relu,
                       ansatz::Activation::Relu};
  const StateVector psi =
      ansatz::assemble_state(as, ansatz::flatten(as, ff_repetition_construction(spec)));
  const StateVector target = product_repetition_state(spec);
  return std::norm(target.amplitudes.dot(psi.amplitudes));
}

double construction_fidelity_rbm(const ProductRepSpec& spec) {
  int total = 0;
  for (int b : spec.blocks) total += b;
  ansatz::AnsatzSpec as;
  as.kind = ansatz::AnsatzKind::RBM;
  as.n = 2 * total;
  as.reference_qudits = total;
  as.boltzmann_hidden = 2 * total;
  const StateVector psi =
      ansatz::assemble_state(as, ansatz::flatten(as, rbm_repetition_construction(spec)));
  const StateVector target = product_repetition_state(spec);
  return std::norm(target.amplitudes.dot(psi.amplitudes));
}

}  // namespace

TEST_CASE("network constructions hit their target codes") {
  for (const ProductRepSpec& spec : {ProductRepSpec{{1}}, ProductRepSpec{{3}}, ProductRepSpec{{3, 1}}}) {
    CHECK(construction_fidelity_ff(spec) >= 1.0 - 1e-9);
    CHECK(construction_fidelity_rbm(spec) >= 1.0 - 1e-6);
  }
}

TEST_CASE("rbm construction respects the parameter box and suppression bound") {
  const ProductRepSpec spec{{3, 1}};
  const ansatz::RBMParams params = rbm_repetition_construction(spec);
  double max_mag = 0.0;
  for (int i = 0; i < params.visible(); ++i)
    max_mag = std::max(max_mag, std::abs(params.visible_bias(i)));
  for (int j = 0; j < params.hidden(); ++j)
    max_mag = std::max(max_mag, std::abs(params.hidden_bias(j)));
  max_mag = std::max(max_mag, params.coupling.cwiseAbs().maxCoeff());
  CHECK(max_mag <= 10.0 + 1e-12);

  // ratio of the largest off-code amplitude to the smallest code amplitude
  ansatz::AnsatzSpec as;
  as.kind = ansatz::AnsatzKind::RBM;
  as.n = 8;
  as.reference_qudits = 4;
  as.boltzmann_hidden = 8;
  const StateVector psi = ansatz::assemble_state(as, ansatz::flatten(as, params));
  const StateVector target = product_repetition_state(spec);
  double largest_off = 0.0, smallest_on = 1e300;
  for (int i = 0; i < psi.dim(); ++i) {
    if (std::abs(target.amplitudes(i)) > 1e-12)
      smallest_on = std::min(smallest_on, std::abs(psi.amplitudes(i)));
    else
      largest_off = std::max(largest_off, std::abs(psi.amplitudes(i)));
  }
  // per-block suppression exponent: 2 n_i nodes, each contributing 10/(2 n_i)
  // per unit of Hamming distance, minus the V-profile correction
  const double delta = 8.0;
  CHECK(largest_off / smallest_on <= std::exp(-delta));
}

TEST_SUITE_END();
