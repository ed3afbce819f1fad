#include "qci/analytic.hpp"

#include "qci/channels.hpp"
#include "qci/cohinfo.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qci::analytic {

using linalg::binary_entropy;
using linalg::xlog2;

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

std::vector<double> binomials(int k) {
  std::vector<double> c(k + 1);
  c[0] = 1.0;
  for (int m = 1; m <= k; ++m) c[m] = c[m - 1] * (k - m + 1) / m;
  return c;
}

void check_rep_spec(const RepCodeSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("blocklength must be >= 1");
  if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0))
    throw std::invalid_argument("weight must lie in [0, 1]");
}

}  // namespace

StateVector weighted_repetition_state(const RepCodeSpec& spec) {
  check_rep_spec(spec);
  const std::int64_t dim_a = std::int64_t{1} << spec.k;
  StateVector psi;
  psi.amplitudes = linalg::ComplexVector::Zero(2 * dim_a);
  psi.subsystem_dims.assign(1, 2);
  psi.subsystem_dims.insert(psi.subsystem_dims.end(), spec.k, 2);
  psi.amplitudes(0) = std::sqrt(spec.lambda);
  psi.amplitudes(2 * dim_a - 1) = std::sqrt(1.0 - spec.lambda);
  return linalg::normalize(psi);
}

StateVector product_repetition_state(const ProductRepSpec& spec) {
  if (spec.blocks.empty()) throw std::invalid_argument("partition must have at least one block");
  int total = 0;
  for (int b : spec.blocks) {
    if (b < 1) throw std::invalid_argument("block lengths must be >= 1");
    total += b;
  }
  if (2 * total > 20) throw std::invalid_argument("product code exceeds the 20-qubit guard");

  const int l = static_cast<int>(spec.blocks.size());
  const std::int64_t dim_half = std::int64_t{1} << total;
  StateVector psi;
  psi.amplitudes = linalg::ComplexVector::Zero(dim_half * dim_half);
  psi.subsystem_dims.assign(1, static_cast<int>(dim_half));
  psi.subsystem_dims.insert(psi.subsystem_dims.end(), total, 2);

  const double amp = std::pow(2.0, -0.5 * l);
  for (int pattern = 0; pattern < (1 << l); ++pattern) {
    // Reference and channel halves repeat the same per-block bit.
    std::int64_t half = 0;
    for (int i = 0; i < l; ++i) {
      const std::int64_t bit = (pattern >> i) & 1;
      for (int j = 0; j < spec.blocks[i]; ++j) half = (half << 1) | bit;
    }
    psi.amplitudes(half * dim_half + half) = amp;
  }
  return psi;
}

double gadc_repcode_ci(const RepCodeSpec& spec, double gamma, double n_bath) {
  check_rep_spec(spec);
  if (!(gamma >= 0.0 && gamma <= 1.0 && n_bath >= 0.0 && n_bath <= 1.0))
    throw std::invalid_argument("gadc parameters must lie in [0, 1]");
  const int k = spec.k;
  const double lam = spec.lambda;
  // Single-qubit action on the diagonal: |0><0| -> a|0><0| + b|1><1|,
  // |1><1| -> c|0><0| + d|1><1|; coherences shrink by sqrt(1-gamma).
  const double a = 1.0 - gamma * n_bath;
  const double b = gamma * n_bath;
  const double c = gamma - gamma * n_bath;
  const double d = 1.0 - gamma + gamma * n_bath;
  const std::vector<double> binom = binomials(k);

  double entropy_b = 0.0;
  for (int m = 0; m <= k; ++m) {
    const double r_m = lam * ipow(a, k - m) * ipow(b, m) + (1 - lam) * ipow(c, k - m) * ipow(d, m);
    entropy_b -= binom[m] * xlog2(r_m);
  }

  // The joint state is diagonal except for a 2x2 block spanned by
  // |0>|0..0> and |1>|1..1>.
  const double p00 = lam * ipow(a, k);
  const double p11 = (1 - lam) * ipow(d, k);
  const double off = std::sqrt(lam * (1 - lam)) * std::pow(1.0 - gamma, 0.5 * k);
  const double mean = 0.5 * (p00 + p11);
  const double disc = std::sqrt(0.25 * (p00 - p11) * (p00 - p11) + off * off);
  double entropy_rb = -xlog2(std::max(mean + disc, 0.0)) - xlog2(std::max(mean - disc, 0.0));
  for (int m = 1; m <= k; ++m) entropy_rb -= binom[m] * xlog2(lam * ipow(a, k - m) * ipow(b, m));
  for (int m = 0; m <= k - 1; ++m)
    entropy_rb -= binom[m] * xlog2((1 - lam) * ipow(c, k - m) * ipow(d, m));

  return entropy_b - entropy_rb;
}

double dephrasure_repcode_ci(const RepCodeSpec& spec, double p, double q) {
  check_rep_spec(spec);
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("dephrasure parameters must lie in [0, 1]");
  const int k = spec.k;
  const double lam = spec.lambda;
  const double keep = ipow(1.0 - q, k);
  const double erased = ipow(q, k);
  const double u2 = 1.0 - 4.0 * lam * (1.0 - lam) * (1.0 - ipow(1.0 - 2.0 * p, 2 * k));
  const double u = std::sqrt(std::clamp(u2, 0.0, 1.0));
  // 1 - u artanh(u) - (1/2) log(1 - u^2) is the binary entropy of (1+u)/2,
  // which also settles the u -> 1 limit.
  return (keep - erased) * binary_entropy(lam) - keep * binary_entropy(0.5 * (1.0 + u));
}

double depolarizing_single_letter_ci(double p) {
  if (!(p >= 0.0 && p <= 4.0 / 3.0))
    throw std::invalid_argument("depolarizing parameter must lie in [0, 4/3]");
  const double term = p > 0.0 ? 0.75 * p * std::log2(0.25 * p) : 0.0;
  return 1.0 + xlog2(1.0 - 0.75 * p) + term;
}

double depolarizing_repetition_ci(int k, double p) {
  const StateVector code = weighted_repetition_state({k, 0.5});
  return cohinfo::coherent_information(code, channels::depolarizing(p), k).ci_per_use;
}

namespace {

void enumerate_partitions(int remaining, int max_part, std::vector<int>& current,
                          const std::function<void(const std::vector<int>&)>& visit) {
  visit(current);
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    enumerate_partitions(remaining - part, part, current, visit);
    current.pop_back();
  }
}

}  // namespace

ProductRepSearch best_product_repcode(int k, double p) {
  if (k < 1 || k > 10) throw std::invalid_argument("search supports 1 <= k <= 10");
  std::map<int, double> block_value;  // total CI of one m-repetition block
  auto value_of = [&](int m) {
    auto it = block_value.find(m);
    if (it != block_value.end()) return it->second;
    const StateVector code = weighted_repetition_state({m, 0.5});
    const double v = cohinfo::coherent_information(code, channels::depolarizing(p), m).ci_total;
    block_value[m] = v;
    return v;
  };

  ProductRepSearch best;
  best.frozen = k;
  best.rate = 0.0;  // freezing everything is always available
  std::vector<int> current;
  enumerate_partitions(k, k, current, [&](const std::vector<int>& parts) {
    double total = 0.0;
    int used = 0;
    for (int m : parts) {
      total += value_of(m);
      used += m;
    }
    const double rate = total / k;
    if (rate > best.rate + 1e-15) {
      best.partition.blocks = parts;
      best.frozen = k - used;
      best.rate = rate;
    }
  });
  return best;
}

FFParams ff_repetition_construction(const ProductRepSpec& spec) {
  if (spec.blocks.empty()) throw std::invalid_argument("partition must have at least one block");
  const int l = static_cast<int>(spec.blocks.size());
  int total = 0;
  for (int b : spec.blocks) total += b;
  const int width = 2 * total;

  FFParams p;
  p.activations = {ansatz::Activation::Cos, ansatz::Activation::Relu, ansatz::Activation::Relu};
  p.output = ansatz::OutputMode::Cartesian;

  // One cosine node per block, reading that block's reference and channel
  // bits; the node is 1 exactly when the bit sum is 0 mod the block size.
  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(l, width);
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(l);
  int offset = 0;
  for (int i = 0; i < l; ++i) {
    const double angle = 2.0 * M_PI / (2 * spec.blocks[i]);
    for (int j = 0; j < spec.blocks[i]; ++j) {
      w1(i, offset + j) = angle;          // reference half
      w1(i, total + offset + j) = angle;  // channel half
    }
    offset += spec.blocks[i];
  }

  // Threshold (y - cos t)/(1 - cos t) keeps only y = 1.
  Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(l, l);
  Eigen::VectorXd b2(l);
  for (int i = 0; i < l; ++i) {
    const double ct = std::cos(2.0 * M_PI / (2 * spec.blocks[i]));
    w2(i, i) = 1.0 / (1.0 - ct);
    b2(i) = -ct / (1.0 - ct);
  }

  // AND across blocks.
  Eigen::MatrixXd w3 = Eigen::MatrixXd::Ones(1, l);
  Eigen::VectorXd b3 = Eigen::VectorXd::Constant(1, -(l - 1.0));

  Eigen::MatrixXd w4 = Eigen::MatrixXd::Zero(2, 1);
  w4(0, 0) = 1.0;
  Eigen::VectorXd b4 = Eigen::VectorXd::Zero(2);

  p.weights = {w1, w2, w3, w4};
  p.biases = {b1, b2, b3, b4};
  return p;
}

RBMParams rbm_repetition_construction(const ProductRepSpec& spec) {
  if (spec.blocks.empty()) throw std::invalid_argument("partition must have at least one block");
  int total = 0;
  for (int b : spec.blocks) total += b;
  const int width = 2 * total;

  RBMParams p;
  p.visible_bias = linalg::ComplexVector::Constant(width, 10.0);
  p.hidden_bias = linalg::ComplexVector::Constant(width, 10.0);
  p.coupling = linalg::ComplexMatrix::Zero(width, width);
  int offset = 0, node = 0;
  for (int b : spec.blocks) {
    const double w = -10.0 / b;  // -2c with c = 10 / (2b) per node, 2b nodes
    for (int j = 0; j < 2 * b; ++j, ++node) {
      for (int pos = 0; pos < b; ++pos) {
        p.coupling(node, offset + pos) = w;
        p.coupling(node, total + offset + pos) = w;
      }
    }
    offset += b;
  }
  return p;
}

double find_threshold(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("no sign change on the bracket");
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qci::analytic
