#include "qci/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace qci::serialize {

namespace {

std::string activation_name(ansatz::Activation a) {
  switch (a) {
    case ansatz::Activation::Cos: return "cos";
    case ansatz::Activation::Tanh: return "tanh";
    case ansatz::Activation::Relu: return "relu";
    case ansatz::Activation::Sigmoid: return "sigmoid";
  }
  throw std::logic_error("unknown activation");
}

ansatz::Activation activation_from_name(const std::string& s) {
  if (s == "cos") return ansatz::Activation::Cos;
  if (s == "tanh") return ansatz::Activation::Tanh;
  if (s == "relu") return ansatz::Activation::Relu;
  if (s == "sigmoid") return ansatz::Activation::Sigmoid;
  throw std::invalid_argument("unknown activation: " + s);
}

std::string kind_name(ansatz::AnsatzKind k) {
  switch (k) {
    case ansatz::AnsatzKind::FF: return "ff";
    case ansatz::AnsatzKind::RBM: return "rbm";
    case ansatz::AnsatzKind::DBM: return "dbm";
    case ansatz::AnsatzKind::FFSchmidt: return "ff_schmidt";
    case ansatz::AnsatzKind::RBMSchmidt: return "rbm_schmidt";
    case ansatz::AnsatzKind::Raw: return "raw";
  }
  throw std::logic_error("unknown ansatz kind");
}

ansatz::AnsatzKind kind_from_name(const std::string& s) {
  if (s == "ff") return ansatz::AnsatzKind::FF;
  if (s == "rbm") return ansatz::AnsatzKind::RBM;
  if (s == "dbm") return ansatz::AnsatzKind::DBM;
  if (s == "ff_schmidt") return ansatz::AnsatzKind::FFSchmidt;
  if (s == "rbm_schmidt") return ansatz::AnsatzKind::RBMSchmidt;
  if (s == "raw") return ansatz::AnsatzKind::Raw;
  throw std::invalid_argument("unknown ansatz kind: " + s);
}

}  // namespace

json channel_to_json(const channels::KrausChannel& channel) {
  json j;
  j["kind"] = channel.kind;
  for (const auto& [name, value] : channel.params) j[name] = value;
  return j;
}

channels::KrausChannel channel_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "depolarizing") return channels::depolarizing(j.at("p").get<double>());
  if (kind == "gadc") return channels::gadc(j.at("gamma").get<double>(), j.at("N").get<double>());
  if (kind == "dephrasure")
    return channels::dephrasure(j.at("p").get<double>(), j.at("q").get<double>());
  if (kind == "identity") return channels::identity_channel(j.value("dim", 2));
  throw std::invalid_argument("unknown channel kind: " + kind);
}

json encoding_to_json(const ansatz::Encoding& enc) {
  switch (enc.kind) {
    case ansatz::EncodingKind::Scaled: return "scaled";
    case ansatz::EncodingKind::Binary: return "binary";
    case ansatz::EncodingKind::OneHot: return "one_hot";
  }
  throw std::logic_error("unknown encoding");
}

ansatz::Encoding encoding_from_json(const json& j, int d) {
  const std::string s = j.get<std::string>();
  ansatz::Encoding enc;
  enc.d = d;
  if (s == "scaled")
    enc.kind = ansatz::EncodingKind::Scaled;
  else if (s == "binary")
    enc.kind = ansatz::EncodingKind::Binary;
  else if (s == "one_hot")
    enc.kind = ansatz::EncodingKind::OneHot;
  else
    throw std::invalid_argument("unknown encoding: " + s);
  return enc;
}

json ansatz_to_json(const ansatz::AnsatzSpec& spec) {
  json j;
  j["kind"] = kind_name(spec.kind);
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["reference_qudits"] = spec.reference_qudits;
  j["encoding"] = encoding_to_json(spec.encoding);
  j["box_bound"] = spec.box_bound;
  if (spec.kind == ansatz::AnsatzKind::FF || spec.kind == ansatz::AnsatzKind::FFSchmidt) {
    j["hidden"] = spec.ff.hidden_widths;
    json acts = json::array();
    for (auto a : spec.ff.activations) acts.push_back(activation_name(a));
    j["activations"] = acts;
    j["output"] = spec.ff.output == ansatz::OutputMode::Cartesian ? "cartesian" : "polar";
  }
  if (spec.kind == ansatz::AnsatzKind::RBM || spec.kind == ansatz::AnsatzKind::DBM ||
      spec.kind == ansatz::AnsatzKind::RBMSchmidt)
    j["hidden"] = spec.boltzmann_hidden;
  return j;
}

ansatz::AnsatzSpec ansatz_from_json(const json& j) {
  ansatz::AnsatzSpec spec;
  spec.kind = kind_from_name(j.at("kind").get<std::string>());
  spec.n = j.at("n").get<int>();
  spec.d = j.value("d", 2);
  spec.reference_qudits = j.value("reference_qudits", 0);
  spec.box_bound = j.value("box_bound", 10.0);
  spec.encoding = j.contains("encoding") ? encoding_from_json(j.at("encoding"), spec.d)
                                         : ansatz::Encoding{ansatz::EncodingKind::Scaled, spec.d};
  if (spec.kind == ansatz::AnsatzKind::FF || spec.kind == ansatz::AnsatzKind::FFSchmidt) {
    spec.ff.hidden_widths = j.at("hidden").get<std::vector<int>>();
    for (const auto& a : j.at("activations"))
      spec.ff.activations.push_back(activation_from_name(a.get<std::string>()));
    const std::string mode = j.value("output", "cartesian");
    if (mode != "cartesian" && mode != "polar")
      throw std::invalid_argument("output mode must be cartesian or polar");
    spec.ff.output =
        mode == "cartesian" ? ansatz::OutputMode::Cartesian : ansatz::OutputMode::Polar;
  }
  if (spec.kind == ansatz::AnsatzKind::RBM || spec.kind == ansatz::AnsatzKind::DBM ||
      spec.kind == ansatz::AnsatzKind::RBMSchmidt)
    spec.boltzmann_hidden = j.at("hidden").get<int>();
  ansatz::validate(spec);
  return spec;
}

namespace {

template <typename Cfg>
void read_common(const json& j, Cfg& cfg) {
  cfg.iterations = j.value("iterations", cfg.iterations);
  cfg.seed = j.value("seed", cfg.seed);
}

}  // namespace

json stage_to_json(const optimize::Stage& stage) {
  json j;
  j["algorithm"] = optimize::algorithm_name(stage.config);
  if (!stage.label.empty()) j["label"] = stage.label;
  if (const auto* pso = std::get_if<optimize::PsoConfig>(&stage.config)) {
    j["particles"] = pso->swarm;
    j["inertia"] = pso->inertia;
    j["cognitive"] = pso->cognitive;
    j["social"] = pso->social;
    j["neighborhood"] = pso->neighborhood;
    j["iterations"] = pso->iterations;
    j["seed"] = pso->seed;
  } else if (const auto* abc = std::get_if<optimize::AbcConfig>(&stage.config)) {
    j["employers"] = abc->employers;
    j["scout_limit"] = abc->scout_limit;
    j["iterations"] = abc->iterations;
    j["seed"] = abc->seed;
  } else if (const auto* ps = std::get_if<optimize::PatternSearchConfig>(&stage.config)) {
    switch (ps->variant) {
      case optimize::PatternVariant::Gps2D: j["variant"] = "gps_2d"; break;
      case optimize::PatternVariant::GpsDplus1: j["variant"] = "gps_d_plus_1"; break;
      case optimize::PatternVariant::Mads2D: j["variant"] = "mads_2d"; break;
      case optimize::PatternVariant::MadsDplus1: j["variant"] = "mads_d_plus_1"; break;
    }
    j["delta0"] = ps->delta0;
    j["delta_min"] = ps->delta_min;
    j["max_polls"] = ps->max_polls;
    j["seed"] = ps->seed;
  } else {
    const auto& sga = std::get<optimize::SgaConfig>(stage.config);
    j["population"] = sga.population;
    j["tournament"] = sga.tournament;
    j["crossover"] = sga.crossover;
    j["mutation"] = sga.mutation;
    j["mutation_index"] = sga.mutation_index;
    j["iterations"] = sga.iterations;
    j["seed"] = sga.seed;
  }
  return j;
}

optimize::Stage stage_from_json(const json& j) {
  optimize::Stage stage;
  stage.label = j.value("label", "");
  const std::string algo = j.at("algorithm").get<std::string>();
  if (algo == "pso") {
    optimize::PsoConfig cfg;
    cfg.swarm = j.value("particles", cfg.swarm);
    cfg.inertia = j.value("inertia", cfg.inertia);
    cfg.cognitive = j.value("cognitive", cfg.cognitive);
    cfg.social = j.value("social", cfg.social);
    cfg.neighborhood = j.value("neighborhood", cfg.neighborhood);
    read_common(j, cfg);
    stage.config = cfg;
  } else if (algo == "abc") {
    optimize::AbcConfig cfg;
    cfg.employers = j.value("employers", cfg.employers);
    cfg.scout_limit = j.value("scout_limit", cfg.scout_limit);
    read_common(j, cfg);
    stage.config = cfg;
  } else if (algo == "gps" || algo == "mads" || algo == "pattern_search") {
    optimize::PatternSearchConfig cfg;
    const std::string variant = j.value("variant", algo == "mads" ? "mads_2d" : "gps_2d");
    if (variant == "gps_2d")
      cfg.variant = optimize::PatternVariant::Gps2D;
    else if (variant == "gps_d_plus_1")
      cfg.variant = optimize::PatternVariant::GpsDplus1;
    else if (variant == "mads_2d")
      cfg.variant = optimize::PatternVariant::Mads2D;
    else if (variant == "mads_d_plus_1")
      cfg.variant = optimize::PatternVariant::MadsDplus1;
    else
      throw std::invalid_argument("unknown pattern search variant: " + variant);
    cfg.delta0 = j.value("delta0", cfg.delta0);
    cfg.delta_min = j.value("delta_min", cfg.delta_min);
    cfg.max_polls = j.value("max_polls", cfg.max_polls);
    cfg.seed = j.value("seed", cfg.seed);
    stage.config = cfg;
  } else if (algo == "sga") {
    optimize::SgaConfig cfg;
    cfg.population = j.value("population", cfg.population);
    cfg.tournament = j.value("tournament", cfg.tournament);
    cfg.crossover = j.value("crossover", cfg.crossover);
    cfg.mutation = j.value("mutation", cfg.mutation);
    cfg.mutation_index = j.value("mutation_index", cfg.mutation_index);
    read_common(j, cfg);
    stage.config = cfg;
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo);
  }
  return stage;
}

json chain_to_json(const std::vector<optimize::Stage>& stages) {
  json j = json::array();
  for (const auto& stage : stages) j.push_back(stage_to_json(stage));
  return j;
}

std::vector<optimize::Stage> chain_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("optimizer chain must be a non-empty array");
  std::vector<optimize::Stage> stages;
  for (const auto& s : j) stages.push_back(stage_from_json(s));
  return stages;
}

json evaluation_to_json(const cohinfo::CodeEvaluation& ev) {
  return json{{"k", ev.k},
              {"ci_total", ev.ci_total},
              {"ci_per_use", ev.ci_per_use},
              {"entropy_B", ev.entropy_B},
              {"entropy_RB", ev.entropy_RB}};
}

json run_record_to_json(const optimize::RunRecord& rec) {
  json j;
  j["best_point"] = rec.best_point;
  j["best_value"] = rec.best_value;
  j["evaluations"] = rec.evaluations;
  j["seed"] = rec.seed;
  return j;
}

std::vector<cohinfo::TableEntry> entries_from_json(const json& j) {
  if (!j.is_object() || j.empty())
    throw std::invalid_argument("code entries must be a non-empty object");
  std::vector<cohinfo::TableEntry> entries;
  for (const auto& [basis, value] : j.items()) {
    if (!value.is_array() || value.size() != 2)
      throw std::invalid_argument("amplitude must be a [re, im] pair");
    entries.push_back({basis, {value[0].get<double>(), value[1].get<double>()}});
  }
  return entries;
}

json entries_to_json(const std::vector<cohinfo::TableEntry>& entries) {
  json j = json::object();
  for (const auto& e : entries) j[e.basis] = {e.amplitude.real(), e.amplitude.imag()};
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qci::serialize
