#include "qci/ame.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qci::ame {

void validate(const AmeProblem& prob) {
  if (prob.d < 2) throw std::invalid_argument("local dimension must be >= 2");
  if (prob.m < 1 || prob.m > prob.n / 2)
    throw std::invalid_argument("marginal size must satisfy 1 <= m <= floor(n/2)");
}

namespace {

void check_state(const StateVector& psi, const AmeProblem& prob) {
  validate(prob);
  if (static_cast<int>(psi.subsystem_dims.size()) != prob.n)
    throw std::invalid_argument("state must have n subsystems");
  for (int d : psi.subsystem_dims)
    if (d != prob.d) throw std::invalid_argument("state must have uniform local dimension d");
}

// Visit all m-element subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(int n, int m, F&& visit) {
  std::vector<int> subset(m);
  for (int i = 0; i < m; ++i) subset[i] = i;
  while (true) {
    visit(subset);
    int i = m - 1;
    while (i >= 0 && subset[i] == n - m + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
  }
}

double subset_count(int n, int m) {
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
  return c;
}

}  // namespace

double average_linear_entropy(const StateVector& psi, const AmeProblem& prob) {
  check_state(psi, prob);
  const double dm = std::pow(static_cast<double>(prob.d), prob.m);
  double sum = 0.0;
  for_each_subset(prob.n, prob.m, [&](const std::vector<int>& subset) {
    const double pur = linalg::purity(linalg::marginal(psi, subset));
    sum += dm / (dm - 1.0) * (1.0 - pur);
  });
  return sum / subset_count(prob.n, prob.m);
}

double average_trace_distance(const StateVector& psi, const AmeProblem& prob) {
  check_state(psi, prob);
  const auto dim = static_cast<Eigen::Index>(std::llround(std::pow(prob.d, prob.m)));
  const linalg::ComplexMatrix mixed =
      linalg::ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  double sum = 0.0;
  for_each_subset(prob.n, prob.m, [&](const std::vector<int>& subset) {
    sum += linalg::trace_norm(linalg::marginal(psi, subset).matrix - mixed);
  });
  return sum / subset_count(prob.n, prob.m);
}

double dm_upper_bound(double qm, int d, int m) {
  const double dm = std::pow(static_cast<double>(d), m);
  const double arg = dm - (dm - 1.0) * qm;
  // qm can exceed 1 only through rounding; anything beyond jitter means the
  // caller fed an invalid average linear entropy.
  if (arg < 1.0 - 1e-9) throw std::domain_error("bound undefined: average linear entropy > 1");
  return std::sqrt(2.0 * std::log2(std::max(arg, 1.0)));
}

StateVector ame_reference_state(int n, int d) {
  StateVector psi;
  if (n == 3 && d == 2) {
    psi.amplitudes = linalg::ComplexVector::Zero(8);
    psi.subsystem_dims = {2, 2, 2};
    psi.amplitudes(0) = 1.0;
    psi.amplitudes(7) = 1.0;
    return linalg::normalize(psi);
  }
  if (n == 4 && d == 3) {
    psi.amplitudes = linalg::ComplexVector::Zero(81);
    psi.subsystem_dims = {3, 3, 3, 3};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const std::vector<int> digits = {i, j, (i + j) % 3, (i + 2 * j) % 3};
        psi.amplitudes(linalg::digits_index(digits, psi.subsystem_dims)) = 1.0 / 3.0;
      }
    return psi;
  }
  throw std::invalid_argument("no reference state for this (n, d)");
}

optimize::Objective ame_objective(const ansatz::AnsatzSpec& spec, const AmeProblem& prob) {
  validate(prob);
  ansatz::validate(spec);
  if (spec.n != prob.n || spec.d != prob.d || spec.reference_qudits != 0)
    throw std::invalid_argument("ansatz must produce n ungrouped qudits of dimension d");

  optimize::Objective obj;
  obj.dimension = static_cast<int>(ansatz::param_count(spec));
  obj.bounds.assign(obj.dimension, {-spec.box_bound, spec.box_bound});
  obj.evaluate = [spec, prob](const std::vector<double>& params) {
    try {
      return 1.0 - average_linear_entropy(ansatz::assemble_state(spec, params), prob);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  return obj;
}

}  // namespace qci::ame
