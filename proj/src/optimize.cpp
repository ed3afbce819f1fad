#include "qci/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qci::optimize {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled conversions so runs are reproducible
// independent of the standard library's distribution implementations.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng() % n); }

  bool has_cached = false;
  double cached = 0.0;
  double gaussian() {
    if (has_cached) {
      has_cached = false;
      return cached;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached = r * std::sin(2.0 * M_PI * u2);
    has_cached = true;
    return r * std::cos(2.0 * M_PI * u2);
  }
};

void check_objective(const Objective& obj) {
  if (obj.dimension < 1) throw std::invalid_argument("objective dimension must be positive");
  if (static_cast<int>(obj.bounds.size()) != obj.dimension)
    throw std::invalid_argument("one bound pair per coordinate required");
  for (const auto& [lo, hi] : obj.bounds)
    if (!(lo < hi)) throw std::invalid_argument("bounds must satisfy lo < hi");
  if (!obj.evaluate) throw std::invalid_argument("objective has no evaluate function");
}

void clip(const Objective& obj, std::vector<double>& x) {
  for (int i = 0; i < obj.dimension; ++i)
    x[i] = std::clamp(x[i], obj.bounds[i].first, obj.bounds[i].second);
}

std::vector<double> random_point(const Objective& obj, Rng& rng) {
  std::vector<double> x(obj.dimension);
  for (int i = 0; i < obj.dimension; ++i)
    x[i] = rng.uniform(obj.bounds[i].first, obj.bounds[i].second);
  return x;
}

// NaN would poison min comparisons; map it to the +inf penalty.
double evaluate(const Objective& obj, const std::vector<double>& x, std::int64_t& count) {
  ++count;
  const double v = obj.evaluate(x);
  return std::isnan(v) ? kInf : v;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

Objective boxed(int dimension, double lo, double hi,
                std::function<double(const std::vector<double>&)> fn) {
  Objective obj;
  obj.dimension = dimension;
  obj.bounds.assign(dimension, {lo, hi});
  obj.evaluate = std::move(fn);
  return obj;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master + index * 0x9e3779b97f4a7c15ull;
  return splitmix64(state);
}

RunRecord pso_minimize(const Objective& obj, const PsoConfig& cfg,
                       const std::vector<double>* warm_start) {
  check_objective(obj);
  if (cfg.iterations < 1) throw std::invalid_argument("iteration budget must be >= 1");
  if (cfg.swarm < 2) throw std::invalid_argument("swarm size must be >= 2");
  if (!(cfg.inertia > 0 && cfg.cognitive > 0 && cfg.social > 0))
    throw std::invalid_argument("pso weights must be positive");

  Timer timer;
  RunRecord rec;
  rec.seed = cfg.seed;

  const int n = cfg.swarm;
  std::vector<Rng> streams;
  streams.reserve(n);
  for (int i = 0; i < n; ++i) streams.emplace_back(split_seed(cfg.seed, i));

  std::vector<std::vector<double>> x(n), v(n), pbest(n);
  std::vector<double> fx(n), fbest(n);
  for (int i = 0; i < n; ++i) {
    x[i] = random_point(obj, streams[i]);
    v[i].resize(obj.dimension);
    for (int c = 0; c < obj.dimension; ++c) {
      const double r = obj.bounds[c].second - obj.bounds[c].first;
      v[i][c] = streams[i].uniform(-r / 4.0, r / 4.0);
    }
  }
  if (warm_start) {
    x[0] = *warm_start;
    clip(obj, x[0]);
    std::fill(v[0].begin(), v[0].end(), 0.0);
  }
  for (int i = 0; i < n; ++i) {
    fx[i] = evaluate(obj, x[i], rec.evaluations);
    pbest[i] = x[i];
    fbest[i] = fx[i];
  }

  auto global_best = [&]() {
    return static_cast<int>(std::min_element(fbest.begin(), fbest.end()) - fbest.begin());
  };
  int best = global_best();

  // Ring neighborhood of size s around particle i (personal bests only).
  const int hood = cfg.neighborhood > 0 && cfg.neighborhood < n ? cfg.neighborhood : 0;
  auto local_best = [&](int i) {
    if (hood == 0) return best;
    int arg = i;
    for (int off = -(hood / 2); off <= (hood - 1) / 2; ++off) {
      const int j = ((i + off) % n + n) % n;
      if (fbest[j] < fbest[arg]) arg = j;
    }
    return arg;
  };

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int i = 0; i < n; ++i) {
      const double r_cog = streams[i].uniform();
      const double r_soc = streams[i].uniform();
      const auto& attract = pbest[local_best(i)];
      for (int c = 0; c < obj.dimension; ++c) {
        v[i][c] = cfg.inertia * v[i][c] + cfg.cognitive * r_cog * (pbest[i][c] - x[i][c]) +
                  cfg.social * r_soc * (attract[c] - x[i][c]);
        x[i][c] += v[i][c];
      }
      clip(obj, x[i]);
    }
    for (int i = 0; i < n; ++i) {
      fx[i] = evaluate(obj, x[i], rec.evaluations);
      if (fx[i] < fbest[i]) {
        fbest[i] = fx[i];
        pbest[i] = x[i];
      }
    }
    best = global_best();
    rec.trace.push_back(fbest[best]);
  }

  rec.best_point = pbest[best];
  rec.best_value = fbest[best];
  rec.stage_labels.assign(rec.trace.size(), "pso");
  rec.wall_seconds = timer.seconds();
  return rec;
}

RunRecord abc_minimize(const Objective& obj, const AbcConfig& cfg,
                       const std::vector<double>* warm_start) {
  check_objective(obj);
  if (cfg.iterations < 1) throw std::invalid_argument("iteration budget must be >= 1");
  if (cfg.employers < 2) throw std::invalid_argument("need at least two food sources");

  Timer timer;
  RunRecord rec;
  rec.seed = cfg.seed;

  const int n = cfg.employers;
  Rng rng(split_seed(cfg.seed, 0));

  std::vector<std::vector<double>> x(n);
  std::vector<double> fx(n);
  std::vector<int> trials(n, 0);
  for (int i = 0; i < n; ++i) {
    x[i] = random_point(obj, rng);
    if (i == 0 && warm_start) {
      x[i] = *warm_start;
      clip(obj, x[i]);
    }
    fx[i] = evaluate(obj, x[i], rec.evaluations);
  }
  std::vector<double> best_point = x[0];
  double best_value = fx[0];
  for (int i = 1; i < n; ++i)
    if (fx[i] < best_value) {
      best_value = fx[i];
      best_point = x[i];
    }

  auto probe = [&](int i) {
    const int dim = static_cast<int>(rng.index(obj.dimension));
    int partner = static_cast<int>(rng.index(n - 1));
    if (partner >= i) ++partner;
    const double r = rng.uniform(-1.0, 1.0);
    std::vector<double> cand = x[i];
    cand[dim] += r * (x[i][dim] - x[partner][dim]);
    clip(obj, cand);
    const double f = evaluate(obj, cand, rec.evaluations);
    if (f < fx[i]) {
      x[i] = std::move(cand);
      fx[i] = f;
      trials[i] = 0;
    } else {
      ++trials[i];
    }
    if (fx[i] < best_value) {
      best_value = fx[i];
      best_point = x[i];
    }
  };

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int i = 0; i < n; ++i) probe(i);

    // Non-negative fitness even for negative objective values, so the
    // onlooker roulette stays a probability distribution.
    std::vector<double> fit(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      fit[i] = fx[i] >= 0.0 ? 1.0 / (1.0 + fx[i]) : 1.0 - fx[i];
      if (std::isinf(fx[i])) fit[i] = 0.0;
      total += fit[i];
    }
    for (int o = 0; o < n; ++o) {
      int pick;
      if (total <= 0.0) {
        pick = static_cast<int>(rng.index(n));
      } else {
        double u = rng.uniform() * total, acc = 0.0;
        pick = n - 1;
        for (int i = 0; i < n; ++i) {
          acc += fit[i];
          if (u <= acc) {
            pick = i;
            break;
          }
        }
      }
      probe(pick);
    }

    for (int i = 0; i < n; ++i) {
      if (trials[i] <= cfg.scout_limit) continue;
      x[i] = random_point(obj, rng);
      fx[i] = evaluate(obj, x[i], rec.evaluations);
      trials[i] = 0;
      if (fx[i] < best_value) {
        best_value = fx[i];
        best_point = x[i];
      }
    }
    rec.trace.push_back(best_value);
  }

  rec.best_point = best_point;
  rec.best_value = best_value;
  rec.stage_labels.assign(rec.trace.size(), "abc");
  rec.wall_seconds = timer.seconds();
  return rec;
}

RunRecord pattern_search_minimize(const Objective& obj, const PatternSearchConfig& cfg,
                                  const std::vector<double>& x0) {
  check_objective(obj);
  if (cfg.max_polls < 1) throw std::invalid_argument("poll budget must be >= 1");
  if (!(cfg.delta0 > 0.0)) throw std::invalid_argument("initial mesh constant must be positive");
  if (static_cast<int>(x0.size()) != obj.dimension)
    throw std::invalid_argument("start point has wrong dimension");

  Timer timer;
  RunRecord rec;
  rec.seed = cfg.seed;

  const int d = obj.dimension;
  const bool mads =
      cfg.variant == PatternVariant::Mads2D || cfg.variant == PatternVariant::MadsDplus1;
  const bool two_d =
      cfg.variant == PatternVariant::Gps2D || cfg.variant == PatternVariant::Mads2D;
  Rng rng(split_seed(cfg.seed, 0));

  auto directions = [&]() {
    std::vector<std::vector<double>> dirs;
    std::vector<std::vector<double>> base(d, std::vector<double>(d, 0.0));
    if (mads) {
      for (int i = 0; i < d; ++i) {
        double norm2 = 0.0;
        for (int c = 0; c < d; ++c) {
          base[i][c] = rng.gaussian();
          norm2 += base[i][c] * base[i][c];
        }
        const double inv = 1.0 / std::sqrt(std::max(norm2, 1e-300));
        for (int c = 0; c < d; ++c) base[i][c] *= inv;
      }
    } else {
      for (int i = 0; i < d; ++i) base[i][i] = 1.0;
    }
    for (int i = 0; i < d; ++i) dirs.push_back(base[i]);
    if (two_d) {
      for (int i = 0; i < d; ++i) {
        std::vector<double> neg(d);
        for (int c = 0; c < d; ++c) neg[c] = -base[i][c];
        dirs.push_back(std::move(neg));
      }
    } else {
      std::vector<double> neg(d, 0.0);
      for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) neg[c] -= base[i][c];
      dirs.push_back(std::move(neg));
    }
    return dirs;
  };

  std::vector<double> center = x0;
  clip(obj, center);
  double fc = evaluate(obj, center, rec.evaluations);
  double delta = cfg.delta0;
  auto dirs = directions();

  for (int poll = 0; poll < cfg.max_polls && delta >= cfg.delta_min; ++poll) {
    int arg = -1;
    double fbest = fc;
    std::vector<double> xbest;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      std::vector<double> y = center;
      for (int c = 0; c < d; ++c) y[c] += delta * dirs[j][c];
      clip(obj, y);
      const double fy = evaluate(obj, y, rec.evaluations);
      if (fy < fbest) {
        fbest = fy;
        xbest = std::move(y);
        arg = static_cast<int>(j);
      }
    }
    if (arg >= 0) {
      center = std::move(xbest);
      fc = fbest;
      delta *= 2.0;
      if (mads) dirs = directions();
    } else {
      delta /= 2.0;
    }
    rec.trace.push_back(fc);
  }

  rec.best_point = center;
  rec.best_value = fc;
  rec.stage_labels.assign(rec.trace.size(), mads ? "mads" : "gps");
  rec.wall_seconds = timer.seconds();
  return rec;
}

RunRecord sga_minimize(const Objective& obj, const SgaConfig& cfg,
                       const std::vector<double>* warm_start) {
  check_objective(obj);
  if (cfg.iterations < 1) throw std::invalid_argument("iteration budget must be >= 1");
  if (cfg.population < 2 || cfg.population % 2 != 0)
    throw std::invalid_argument("population must be even and >= 2");
  if (!(cfg.crossover >= 0 && cfg.crossover <= 1 && cfg.mutation >= 0 && cfg.mutation <= 1))
    throw std::invalid_argument("probabilities must lie in [0, 1]");

  Timer timer;
  RunRecord rec;
  rec.seed = cfg.seed;

  const int n = cfg.population;
  const int d = obj.dimension;
  Rng rng(split_seed(cfg.seed, 0));

  std::vector<std::vector<double>> pop(n);
  std::vector<double> fp(n);
  for (int i = 0; i < n; ++i) {
    pop[i] = random_point(obj, rng);
    if (i == 0 && warm_start) {
      pop[i] = *warm_start;
      clip(obj, pop[i]);
    }
    fp[i] = evaluate(obj, pop[i], rec.evaluations);
  }

  auto mutate_gene = [&](double x, int c) {
    const auto [lo, hi] = obj.bounds[c];
    const double u = rng.uniform();
    double delta;
    if (u < 0.5)
      delta = std::pow(2.0 * u, 1.0 / (cfg.mutation_index + 1.0)) - 1.0;
    else
      delta = 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (cfg.mutation_index + 1.0));
    return std::clamp(x + delta * (hi - lo), lo, hi);
  };

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    // Tournament selection of n parents.
    std::vector<int> parents(n);
    for (int i = 0; i < n; ++i) {
      int winner = static_cast<int>(rng.index(n));
      for (int t = 1; t < cfg.tournament; ++t) {
        const int challenger = static_cast<int>(rng.index(n));
        if (fp[challenger] < fp[winner]) winner = challenger;
      }
      parents[i] = winner;
    }

    std::vector<std::vector<double>> children(n);
    for (int pair = 0; pair < n / 2; ++pair) {
      std::vector<double> a = pop[parents[2 * pair]];
      std::vector<double> b = pop[parents[2 * pair + 1]];
      for (int c = 0; c < d; ++c)
        if (rng.uniform() < cfg.crossover) std::swap(a[c], b[c]);
      children[2 * pair] = std::move(a);
      children[2 * pair + 1] = std::move(b);
    }
    for (auto& child : children)
      for (int c = 0; c < d; ++c)
        if (rng.uniform() < cfg.mutation) child[c] = mutate_gene(child[c], c);

    std::vector<double> fc(n);
    for (int i = 0; i < n; ++i) fc[i] = evaluate(obj, children[i], rec.evaluations);

    // Elitist reinsertion: keep the n fittest of parents and children.
    std::vector<int> order(2 * n);
    std::iota(order.begin(), order.end(), 0);
    auto value = [&](int idx) { return idx < n ? fp[idx] : fc[idx - n]; };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value(a) < value(b); });
    std::vector<std::vector<double>> next(n);
    std::vector<double> fnext(n);
    for (int i = 0; i < n; ++i) {
      const int idx = order[i];
      next[i] = idx < n ? pop[idx] : children[idx - n];
      fnext[i] = value(idx);
    }
    pop = std::move(next);
    fp = std::move(fnext);
    rec.trace.push_back(fp[0]);
  }

  rec.best_point = pop[0];
  rec.best_value = fp[0];
  rec.stage_labels.assign(rec.trace.size(), "sga");
  rec.wall_seconds = timer.seconds();
  return rec;
}

std::string algorithm_name(const StageConfig& config) {
  if (std::holds_alternative<PsoConfig>(config)) return "pso";
  if (std::holds_alternative<AbcConfig>(config)) return "abc";
  if (std::holds_alternative<SgaConfig>(config)) return "sga";
  const auto& ps = std::get<PatternSearchConfig>(config);
  const bool mads =
      ps.variant == PatternVariant::Mads2D || ps.variant == PatternVariant::MadsDplus1;
  return mads ? "mads" : "gps";
}

RunRecord chain(const Objective& obj, const std::vector<Stage>& stages) {
  if (stages.empty()) throw std::invalid_argument("chain needs at least one stage");
  check_objective(obj);

  Timer timer;
  RunRecord total;
  bool have_incumbent = false;
  std::vector<double> incumbent;
  double incumbent_value = kInf;

  for (const auto& stage : stages) {
    const std::string label = stage.label.empty() ? algorithm_name(stage.config) : stage.label;
    RunRecord r;
    if (const auto* ps = std::get_if<PatternSearchConfig>(&stage.config)) {
      std::vector<double> x0;
      if (have_incumbent) {
        x0 = incumbent;
      } else {
        x0.resize(obj.dimension);
        for (int c = 0; c < obj.dimension; ++c)
          x0[c] = 0.5 * (obj.bounds[c].first + obj.bounds[c].second);
      }
      r = pattern_search_minimize(obj, *ps, x0);
    } else if (const auto* pso = std::get_if<PsoConfig>(&stage.config)) {
      r = pso_minimize(obj, *pso, have_incumbent ? &incumbent : nullptr);
    } else if (const auto* abc = std::get_if<AbcConfig>(&stage.config)) {
      r = abc_minimize(obj, *abc, have_incumbent ? &incumbent : nullptr);
    } else {
      r = sga_minimize(obj, std::get<SgaConfig>(stage.config),
                       have_incumbent ? &incumbent : nullptr);
    }

    // Warm-started stages evaluate the incumbent up front, so each stage
    // trace starts at or below the previous stage's final value and the
    // concatenation stays non-increasing.
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      total.trace.push_back(r.trace[i]);
      total.stage_labels.push_back(label);
    }
    total.evaluations += r.evaluations;
    if (!have_incumbent || r.best_value < incumbent_value) {
      incumbent = r.best_point;
      incumbent_value = r.best_value;
      have_incumbent = true;
    }
  }

  total.best_point = incumbent;
  total.best_value = incumbent_value;
  total.wall_seconds = timer.seconds();
  total.seed = std::visit([](const auto& cfg) { return cfg.seed; }, stages.front().config);
  return total;
}

}  // namespace qci::optimize
