#include "qci/cli.hpp"

#include "qci/ame.hpp"
#include "qci/analytic.hpp"
#include "qci/ansatz.hpp"
#include "qci/channels.hpp"
#include "qci/cohinfo.hpp"
#include "qci/optimize.hpp"
#include "qci/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace qci::cli {

namespace fs = std::filesystem;
using serialize::json;

namespace {

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
  }
  fs::rename(tmp, path);
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing config field: ") + key);
  return j.at(key);
}

/// Coarse grid plus golden-section refinement of a smooth f over [0, 1];
/// returns (argmax, max).
std::pair<double, double> maximize_over_unit_interval(const std::function<double(double)>& f) {
  int best = 0;
  double fbest = f(0.0);
  constexpr int grid = 200;
  for (int i = 1; i <= grid; ++i) {
    const double v = f(static_cast<double>(i) / grid);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1.0) / grid);
  double hi = std::min(1.0, (best + 1.0) / grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 80; ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = f(a);
    }
  }
  double arg = static_cast<double>(best) / grid, value = fbest;
  if (fa > value) {
    arg = a;
    value = fa;
  }
  if (fb > value) {
    arg = b;
    value = fb;
  }
  return {arg, value};
}

struct LoadedCode {
  std::vector<cohinfo::TableEntry> entries;
  int k = 0;
  int dim_r = 0;
  int dim_a = 2;
};

LoadedCode load_code(const json& config) {
  json code_json;
  if (config.contains("code_file"))
    code_json = load_json_file(config.at("code_file").get<std::string>());
  else if (config.contains("code"))
    code_json = config.at("code");
  else
    throw ConfigError("eval/sweep need a \"code\" object or \"code_file\" path");

  LoadedCode code;
  try {
    code.k = require(code_json, "k").get<int>();
    code.dim_a = code_json.value("dim_A", 2);
    int dim_r_default = 1;
    for (int i = 0; i < code.k; ++i) dim_r_default *= code.dim_a;
    code.dim_r = code_json.value("dim_R", dim_r_default);
    code.entries = serialize::entries_from_json(require(code_json, "entries"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad code object: ") + e.what());
  }
  return code;
}

channels::KrausChannel parse_channel(const json& config) {
  try {
    return serialize::channel_from_json(require(config, "channel"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad channel descriptor: ") + e.what());
  }
}

std::vector<double> sweep_values(const json& config) {
  const double from = require(config, "from").get<double>();
  const double to = require(config, "to").get<double>();
  if (from == to) return {from};
  const double step = require(config, "step").get<double>();
  if (!(step > 0.0) || to < from) throw ConfigError("empty parameter range");
  std::vector<double> values;
  for (double v = from; v <= to + 1e-12; v += step) values.push_back(v);
  return values;
}

channels::KrausChannel with_param(const channels::KrausChannel& base, const std::string& name,
                                  double value) {
  auto params = base.params;
  bool found = false;
  for (auto& [key, val] : params)
    if (key == name) {
      val = value;
      found = true;
    }
  if (!found) throw ConfigError("channel has no parameter named " + name);
  json j = {{"kind", base.kind}};
  for (const auto& [key, val] : params) j[key] = val;
  return serialize::channel_from_json(j);
}

/// Best per-use rate over weighted repetition codes of blocklength <= k_max,
/// each optimized over its weight.
double best_weighted_rep_rate(const channels::KrausChannel& channel, int k_max) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    double value;
    if (channel.kind == "gadc") {
      const double gamma = channel.params[0].second;
      const double n_bath = channel.params[1].second;
      value = maximize_over_unit_interval(
                  [&](double lam) { return analytic::gadc_repcode_ci({k, lam}, gamma, n_bath); })
                  .second;
    } else if (channel.kind == "dephrasure") {
      const double p = channel.params[0].second;
      const double q = channel.params[1].second;
      value = maximize_over_unit_interval(
                  [&](double lam) { return analytic::dephrasure_repcode_ci({k, lam}, p, q); })
                  .second;
    } else {
      throw ConfigError("no repetition-code benchmark for channel kind " + channel.kind);
    }
    best = std::max(best, value / k);
  }
  return best;
}

int threads_or_default(const Overrides& overrides) {
  if (overrides.threads) return std::max(1, *overrides.threads);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct SearchSetup {
  channels::KrausChannel channel;
  int k = 1;
  ansatz::AnsatzSpec spec;
  std::vector<optimize::Stage> stages;
  int restarts = 1;
  std::uint64_t seed = 0;
};

SearchSetup parse_search(const json& config, const Overrides& overrides) {
  SearchSetup s;
  s.channel = parse_channel(config);
  s.k = require(config, "k").get<int>();
  try {
    s.spec = serialize::ansatz_from_json(require(config, "ansatz"));
    s.stages = serialize::chain_from_json(require(config, "chain"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad search config: ") + e.what());
  }
  s.restarts = overrides.restarts ? *overrides.restarts
                                  : config.value("restarts", 0);
  if (s.restarts < 1) throw ConfigError("search tasks need restarts >= 1");
  if (overrides.seed)
    s.seed = *overrides.seed;
  else if (config.contains("seed"))
    s.seed = config.at("seed").get<std::uint64_t>();
  else
    throw ConfigError("search tasks need a seed");
  return s;
}

std::vector<optimize::Stage> seeded_stages(const std::vector<optimize::Stage>& stages,
                                           std::uint64_t master, int restart) {
  std::vector<optimize::Stage> out = stages;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t seed = optimize::split_seed(master, restart * 256ull + i);
    std::visit([&](auto& cfg) { cfg.seed = seed; }, out[i].config);
  }
  return out;
}

std::string trace_csv(const optimize::RunRecord& rec) {
  std::ostringstream os;
  os << "iteration,stage,best_value\n";
  for (std::size_t i = 0; i < rec.trace.size(); ++i)
    os << i << "," << rec.stage_labels[i] << "," << serialize::format_double(rec.trace[i])
       << "\n";
  return os.str();
}

int run_eval(const json& config, const Overrides& overrides) {
  const channels::KrausChannel channel = parse_channel(config);
  const LoadedCode code = load_code(config);

  const cohinfo::CodeEvaluation ev =
      cohinfo::evaluate_table_code(code.entries, code.dim_r, code.dim_a, code.k, channel);
  const json out = serialize::evaluation_to_json(ev);
  std::cout << out.dump(2) << "\n";
  if (overrides.out) atomic_write(fs::path(*overrides.out) / "eval.json", out.dump(2) + "\n");
  return 0;
}

int run_search(const json& config, const Overrides& overrides) {
  const SearchSetup s = parse_search(config, overrides);
  const optimize::Objective obj = cohinfo::make_ci_objective(s.spec, s.channel, s.k);

  std::vector<optimize::RunRecord> records(s.restarts);
  parallel_for(s.restarts, threads_or_default(overrides), [&](int r) {
    records[r] = optimize::chain(obj, seeded_stages(s.stages, s.seed, r));
  });

  int best = 0;
  for (int r = 1; r < s.restarts; ++r)
    if (records[r].best_value < records[best].best_value) best = r;
  const optimize::RunRecord& winner = records[best];

  // Re-evaluate from the stored parameters; the artifact must reproduce
  // ci_per_use from spec + params alone.
  const linalg::StateVector state = ansatz::assemble_state(s.spec, winner.best_point);
  const cohinfo::CodeEvaluation ev = cohinfo::coherent_information(state, s.channel, s.k);

  json result;
  result["task"] = "search";
  result["channel"] = serialize::channel_to_json(s.channel);
  result["k"] = s.k;
  result["ansatz"] = serialize::ansatz_to_json(s.spec);
  result["chain"] = serialize::chain_to_json(s.stages);
  result["restarts"] = s.restarts;
  result["seed"] = s.seed;
  result["best"] = serialize::run_record_to_json(winner);
  result["best"]["restart"] = best;
  result["best"]["ci_per_use"] = ev.ci_per_use;
  result["best"]["ci_total"] = ev.ci_total;
  json all = json::array();
  for (int r = 0; r < s.restarts; ++r)
    all.push_back({{"restart", r}, {"objective", records[r].best_value}});
  result["restart_results"] = all;
  result["meta"] = {{"timestamp", timestamp_utc()}};

  const fs::path out_dir = overrides.out.value_or(".");
  atomic_write(out_dir / "search_result.json", result.dump(2) + "\n");
  atomic_write(out_dir / "trace.csv", trace_csv(winner));

  std::ostringstream table;
  emit_table(table, state, s.k, s.channel.in_dim, ev.ci_per_use,
             config.value("table_threshold", 1e-4));
  atomic_write(out_dir / "table.txt", table.str());

  std::cout << "search best ci_per_use = " << serialize::format_double(ev.ci_per_use) << " ("
            << s.restarts << " restarts)\n";
  return 0;
}

int run_ame(const json& config, const Overrides& overrides) {
  ame::AmeProblem prob;
  prob.n = require(config, "n").get<int>();
  prob.d = require(config, "d").get<int>();
  prob.m = config.value("m", prob.n / 2);
  try {
    ame::validate(prob);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  SearchSetup s;
  try {
    s.spec = serialize::ansatz_from_json(require(config, "ansatz"));
    s.stages = serialize::chain_from_json(require(config, "chain"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad ame config: ") + e.what());
  }
  s.restarts = overrides.restarts ? *overrides.restarts : config.value("restarts", 0);
  if (s.restarts < 1) throw ConfigError("ame search needs restarts >= 1");
  if (overrides.seed)
    s.seed = *overrides.seed;
  else if (config.contains("seed"))
    s.seed = config.at("seed").get<std::uint64_t>();
  else
    throw ConfigError("ame search needs a seed");

  optimize::Objective obj;
  try {
    obj = ame::ame_objective(s.spec, prob);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  std::vector<optimize::RunRecord> records(s.restarts);
  parallel_for(s.restarts, threads_or_default(overrides), [&](int r) {
    records[r] = optimize::chain(obj, seeded_stages(s.stages, s.seed, r));
  });
  int best = 0;
  for (int r = 1; r < s.restarts; ++r)
    if (records[r].best_value < records[best].best_value) best = r;
  const optimize::RunRecord& winner = records[best];

  const fs::path out_dir = overrides.out.value_or(".");
  std::ostringstream trace;
  trace << "stage,iteration,one_minus_Qm,dm_bound\n";
  for (std::size_t i = 0; i < winner.trace.size(); ++i) {
    const double one_minus_qm = winner.trace[i];
    double bound = std::numeric_limits<double>::infinity();
    if (std::isfinite(one_minus_qm))
      bound = ame::dm_upper_bound(1.0 - one_minus_qm, prob.d, prob.m);
    trace << winner.stage_labels[i] << "," << i << "," << serialize::format_double(one_minus_qm)
          << "," << serialize::format_double(bound) << "\n";
  }
  atomic_write(out_dir / "ame_trace.csv", trace.str());

  json result;
  result["task"] = "ame";
  result["n"] = prob.n;
  result["d"] = prob.d;
  result["m"] = prob.m;
  result["ansatz"] = serialize::ansatz_to_json(s.spec);
  result["chain"] = serialize::chain_to_json(s.stages);
  result["restarts"] = s.restarts;
  result["seed"] = s.seed;
  result["best"] = serialize::run_record_to_json(winner);
  result["best"]["restart"] = best;
  result["best"]["one_minus_Qm"] = winner.best_value;
  result["best"]["dm_bound"] = ame::dm_upper_bound(1.0 - winner.best_value, prob.d, prob.m);
  result["meta"] = {{"timestamp", timestamp_utc()}};
  atomic_write(out_dir / "ame_result.json", result.dump(2) + "\n");

  std::cout << "ame best 1 - Q_m = " << serialize::format_double(winner.best_value) << "\n";
  return 0;
}

int run_sweep(const json& config, const Overrides& overrides) {
  const channels::KrausChannel base = parse_channel(config);
  const LoadedCode code = load_code(config);
  const std::string param = require(config, "param").get<std::string>();
  const std::vector<double> values = sweep_values(config);

  std::ostringstream csv;
  csv << "param,ci_code,ci_phi1,ci_best_rep\n";
  for (double v : values) {
    const channels::KrausChannel channel = with_param(base, param, v);
    const cohinfo::CodeEvaluation ev =
        cohinfo::evaluate_table_code(code.entries, code.dim_r, code.dim_a, code.k, channel);
    double phi1, best_rep;
    if (channel.kind == "depolarizing") {
      const double p = channel.params[0].second;
      phi1 = analytic::depolarizing_single_letter_ci(p);
      best_rep = analytic::best_product_repcode(code.k, p).rate;
    } else {
      phi1 = best_weighted_rep_rate(channel, 1);
      best_rep = best_weighted_rep_rate(channel, channel.kind == "gadc" ? 16 : 10);
    }
    csv << serialize::format_double(v) << "," << serialize::format_double(ev.ci_per_use) << ","
        << serialize::format_double(phi1) << "," << serialize::format_double(best_rep) << "\n";
  }

  const fs::path out_dir = overrides.out.value_or(".");
  atomic_write(out_dir / "sweep.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int run_analytic(const json& config, const Overrides& overrides) {
  const channels::KrausChannel base = parse_channel(config);
  const std::string param = require(config, "param").get<std::string>();
  const std::vector<double> values = sweep_values(config);
  std::vector<int> k_values = config.value("k_values", std::vector<int>{1});
  if (k_values.empty()) throw ConfigError("k_values must be non-empty");

  std::ostringstream csv;
  csv << "channel";
  for (const auto& [name, unused] : base.params) csv << "," << name;
  csv << ",k,lambda_opt,ci_per_use\n";

  for (int k : k_values) {
    for (double v : values) {
      const channels::KrausChannel channel = with_param(base, param, v);
      double lambda_opt = 0.5, rate;
      if (channel.kind == "depolarizing") {
        rate = analytic::depolarizing_repetition_ci(k, channel.params[0].second);
      } else if (channel.kind == "gadc") {
        const double gamma = channel.params[0].second;
        const double n_bath = channel.params[1].second;
        const auto [arg, value] = maximize_over_unit_interval(
            [&](double lam) { return analytic::gadc_repcode_ci({k, lam}, gamma, n_bath); });
        lambda_opt = arg;
        rate = value / k;
      } else if (channel.kind == "dephrasure") {
        const double p = channel.params[0].second;
        const double q = channel.params[1].second;
        const auto [arg, value] = maximize_over_unit_interval(
            [&](double lam) { return analytic::dephrasure_repcode_ci({k, lam}, p, q); });
        lambda_opt = arg;
        rate = value / k;
      } else {
        throw ConfigError("no analytic benchmark for channel kind " + channel.kind);
      }

      csv << channel.kind;
      for (const auto& [unused, pv] : channel.params) csv << "," << serialize::format_double(pv);
      csv << "," << k << "," << serialize::format_double(lambda_opt) << ","
          << serialize::format_double(rate) << "\n";
    }
  }

  const fs::path out_dir = overrides.out.value_or(".");
  atomic_write(out_dir / "analytic.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

}  // namespace

void emit_table(std::ostream& os, const linalg::StateVector& code, int k, int dim_a,
                double ci_per_use, double threshold) {
  const int dim_r = code.subsystem_dims.empty() ? 1 : code.subsystem_dims[0];
  std::int64_t dim_ak = 1;
  for (int i = 0; i < k; ++i) dim_ak *= dim_a;
  const bool digit_r = dim_r == dim_ak;

  os << "# basis strings displayed as A^k|R (channel digits first); storage is R first\n";
  os << "# ci_per_use = " << serialize::format_double(ci_per_use) << "\n";
  auto digit_string = [&](std::int64_t value, int length) {
    std::string s(length, '0');
    for (int pos = length - 1; pos >= 0; --pos) {
      s[pos] = static_cast<char>('0' + value % dim_a);
      value /= dim_a;
    }
    return s;
  };

  int rows = 0;
  for (std::int64_t idx = 0; idx < code.dim(); ++idx) {
    const linalg::Complex amp = code.amplitudes(idx);
    if (std::abs(amp) <= threshold) continue;
    const std::int64_t r = idx / dim_ak;
    const std::int64_t a = idx % dim_ak;
    os << digit_string(a, k) << "|";
    if (digit_r)
      os << digit_string(r, k);
    else
      os << r;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "  %+.4f%+.4fi\n", amp.real(), amp.imag());
    os << buf;
    ++rows;
  }
  if (rows == 0) os << "# warning: no amplitudes above threshold\n";
}

int run_json(const json& config, const Overrides& overrides) {
  std::string task;
  try {
    task = require(config, "task").get<std::string>();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (task == "eval") return run_eval(config, overrides);
    if (task == "search") return run_search(config, overrides);
    if (task == "sweep") return run_sweep(config, overrides);
    if (task == "ame") return run_ame(config, overrides);
    if (task == "analytic") return run_analytic(config, overrides);
    throw ConfigError("unknown task: " + task);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"coherent-information code search and benchmarks"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string config_path;
  Overrides overrides;
  std::uint64_t seed = 0;
  int restarts = 0, threads = 0;
  std::string out;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  auto* seed_opt = app.add_option("--seed", seed, "master seed override");
  auto* restarts_opt = app.add_option("--restarts", restarts, "restart count override");
  auto* out_opt = app.add_option("--out", out, "output directory");
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads")->envname("QCI_THREADS");

  for (const char* name : {"eval", "search", "sweep", "ame", "analytic"})
    app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json config;
  try {
    config = load_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  if (config.contains("task") && config.at("task").get<std::string>() != task) {
    std::cerr << "config error: config task does not match subcommand\n";
    return 2;
  }
  config["task"] = task;

  if (seed_opt->count() > 0) overrides.seed = seed;
  if (restarts_opt->count() > 0) overrides.restarts = restarts;
  if (out_opt->count() > 0)
    overrides.out = out;
  else if (config.contains("out"))
    overrides.out = config.at("out").get<std::string>();
  if (threads_opt->count() > 0) overrides.threads = threads;

  return run_json(config, overrides);
}

}  // namespace qci::cli
