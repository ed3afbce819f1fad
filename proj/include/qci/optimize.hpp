#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace qci::optimize {

/// Box-constrained minimization target. evaluate must be deterministic in
/// its input; +infinity is the conventional penalty for invalid points.
struct Objective {
  int dimension = 0;
  std::vector<std::pair<double, double>> bounds;
  std::function<double(const std::vector<double>&)> evaluate;
};

Objective boxed(int dimension, double lo, double hi,
                std::function<double(const std::vector<double>&)> fn);

/// Outcome of one optimization run: incumbent point/value, the
/// per-iteration best-value trace (non-increasing) with a stage label per
/// entry, and bookkeeping.
struct RunRecord {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<double> trace;
  std::vector<std::string> stage_labels;
  std::int64_t evaluations = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

/// Particle swarm: v <- inertia*v + cognitive*r1*(p - x) + social*r2*(g - x)
/// with fresh scalar r1, r2 in [0,1] each step. neighborhood limits the
/// social attractor to a ring of that size (0 means the whole swarm).
struct PsoConfig {
  int swarm = 100;
  double inertia = 0.7298;
  double cognitive = 1.49618;
  double social = 1.49618;
  int neighborhood = 0;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

/// Artificial bee colony: employer/onlooker/scout cycle; a food source that
/// fails to improve scout_limit times is re-seeded at random.
struct AbcConfig {
  int employers = 30;
  int scout_limit = 50;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

enum class PatternVariant { Gps2D, GpsDplus1, Mads2D, MadsDplus1 };

/// Mesh/pattern search: poll the direction set scaled by the mesh constant,
/// double it after a successful poll, halve it after a failed one; stop at
/// delta_min or the poll budget. GPS uses fixed direction sets, MADS redraws
/// random ones after every successful poll.
struct PatternSearchConfig {
  PatternVariant variant = PatternVariant::Gps2D;
  double delta0 = 1.0;
  double delta_min = 1e-9;
  int max_polls = 100000;
  std::uint64_t seed = 0;
};

/// Simple genetic algorithm: tournament selection, gene-wise crossover,
/// polynomial mutation, elitist reinsertion.
struct SgaConfig {
  int population = 100;
  int tournament = 2;
  double crossover = 0.9;
  double mutation = 0.02;
  double mutation_index = 20.0;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

RunRecord pso_minimize(const Objective& obj, const PsoConfig& cfg,
                       const std::vector<double>* warm_start = nullptr);
RunRecord abc_minimize(const Objective& obj, const AbcConfig& cfg,
                       const std::vector<double>* warm_start = nullptr);
RunRecord pattern_search_minimize(const Objective& obj, const PatternSearchConfig& cfg,
                                  const std::vector<double>& x0);
RunRecord sga_minimize(const Objective& obj, const SgaConfig& cfg,
                       const std::vector<double>* warm_start = nullptr);

using StageConfig = std::variant<PsoConfig, AbcConfig, PatternSearchConfig, SgaConfig>;

struct Stage {
  std::string label;
  StageConfig config;
};

std::string algorithm_name(const StageConfig& config);

/// Run stages in sequence, seeding each one with the incumbent best of the
/// stages before it. A leading pattern-search stage starts from the box
/// center. The returned trace is the concatenation of the stage traces.
RunRecord chain(const Objective& obj, const std::vector<Stage>& stages);

/// Deterministic stream splitting for per-worker random number generators.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qci::optimize
