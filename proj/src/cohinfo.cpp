#include "qci/cohinfo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace qci::cohinfo {

CodeEvaluation coherent_information(const StateVector& code, const KrausChannel& channel, int k) {
  linalg::DensityMatrix sigma_rb = channels::apply_joint(channel, k, code);
  std::vector<int> keep(k);
  for (int i = 0; i < k; ++i) keep[i] = i + 1;
  linalg::DensityMatrix sigma_b = linalg::partial_trace(sigma_rb, keep);

  CodeEvaluation ev;
  ev.k = k;
  ev.entropy_RB = linalg::von_neumann_entropy(sigma_rb);
  ev.entropy_B = linalg::von_neumann_entropy(sigma_b);
  ev.ci_total = ev.entropy_B - ev.entropy_RB;
  ev.ci_per_use = ev.ci_total / k;
  return ev;
}

namespace {

std::int64_t parse_digits(const std::string& s, int base) {
  std::int64_t v = 0;
  for (char c : s) {
    int d = c - '0';
    if (d < 0 || d >= base) throw std::invalid_argument("basis string digit out of range");
    v = v * base + d;
  }
  return v;
}

}  // namespace

StateVector table_code_state(const std::vector<TableEntry>& entries, int dim_r, int dim_a, int k) {
  if (entries.empty()) throw std::invalid_argument("code has no entries");
  std::int64_t dim_ak = 1;
  for (int i = 0; i < k; ++i) dim_ak *= dim_a;
  // Reference digits use the same alphabet as the channel inputs; the tables
  // all have dim_r = dim_a^k.
  if (dim_r != dim_ak)
    throw std::invalid_argument("table codes require dim_r = dim_a^k");

  StateVector psi;
  psi.amplitudes = linalg::ComplexVector::Zero(dim_r * dim_ak);
  psi.subsystem_dims.assign(1, dim_r);
  psi.subsystem_dims.insert(psi.subsystem_dims.end(), k, dim_a);

  std::set<std::string> seen;
  for (const auto& entry : entries) {
    std::string s = entry.basis;
    s.erase(std::remove(s.begin(), s.end(), '|'), s.end());
    if (static_cast<int>(s.size()) != 2 * k)
      throw std::invalid_argument("basis string must have 2k digits");
    if (!seen.insert(s).second)
      throw std::invalid_argument("duplicate basis string: " + entry.basis);
    // Display order is A^k then R; storage order is R then A^k.
    const std::int64_t a = parse_digits(s.substr(0, k), dim_a);
    const std::int64_t r = parse_digits(s.substr(k), dim_a);
    psi.amplitudes(r * dim_ak + a) = entry.amplitude;
  }
  return linalg::normalize(psi);
}

CodeEvaluation evaluate_table_code(const std::vector<TableEntry>& entries, int dim_r, int dim_a,
                                   int k, const KrausChannel& channel) {
  return coherent_information(table_code_state(entries, dim_r, dim_a, k), channel, k);
}

optimize::Objective make_ci_objective(const ansatz::AnsatzSpec& spec, const KrausChannel& channel,
                                      int k) {
  ansatz::validate(spec);
  if (spec.n - spec.reference_qudits != k)
    throw std::invalid_argument("ansatz must expose k channel-input qudits");
  if (spec.d != channel.in_dim)
    throw std::invalid_argument("ansatz local dimension must match channel input");

  optimize::Objective obj;
  obj.dimension = static_cast<int>(ansatz::param_count(spec));
  obj.bounds.assign(obj.dimension, {-spec.box_bound, spec.box_bound});
  obj.evaluate = [spec, channel, k](const std::vector<double>& params) {
    try {
      const StateVector psi = ansatz::assemble_state(spec, params);
      return -coherent_information(psi, channel, k).ci_per_use;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  return obj;
}

}  // namespace qci::cohinfo
