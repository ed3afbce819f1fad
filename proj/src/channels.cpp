#include "qci/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qci::channels {

namespace {

void check_completeness(const KrausChannel& ch) {
  ComplexMatrix acc = ComplexMatrix::Zero(ch.in_dim, ch.in_dim);
  for (const auto& a : ch.kraus_ops) acc += a.adjoint() * a;
  if ((acc - ComplexMatrix::Identity(ch.in_dim, ch.in_dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::logic_error("Kraus operators do not satisfy sum A^dagger A = I");
}

// Operators with vanishing norm contribute nothing to any Kraus sum; dropping
// them shrinks the tuple enumeration in apply_joint (e.g. gadc at n_bath = 0).
void prune_zero_ops(KrausChannel& ch) {
  std::vector<ComplexMatrix> kept;
  for (auto& a : ch.kraus_ops)
    if (a.cwiseAbs().maxCoeff() > 1e-14) kept.push_back(std::move(a));
  ch.kraus_ops = std::move(kept);
}

}  // namespace

KrausChannel depolarizing(double p) {
  if (!(p >= 0.0 && p <= 4.0 / 3.0))
    throw std::invalid_argument("depolarizing parameter must lie in [0, 4/3]");
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;

  KrausChannel ch;
  ch.in_dim = ch.out_dim = 2;
  ch.kind = "depolarizing";
  ch.params = {{"p", p}};
  ch.kraus_ops = {std::sqrt(1.0 - 3.0 * p / 4.0) * id, std::sqrt(p / 4.0) * x,
                  std::sqrt(p / 4.0) * y, std::sqrt(p / 4.0) * z};
  check_completeness(ch);
  prune_zero_ops(ch);
  return ch;
}

KrausChannel gadc(double gamma, double n_bath) {
  if (!(gamma >= 0.0 && gamma <= 1.0 && n_bath >= 0.0 && n_bath <= 1.0))
    throw std::invalid_argument("gadc parameters must lie in [0, 1]");
  const double g = gamma, n = n_bath;
  ComplexMatrix a1(2, 2), a2(2, 2), a3(2, 2), a4(2, 2);
  a1 << std::sqrt(1 - n), 0, 0, std::sqrt(1 - n) * std::sqrt(1 - g);
  a2 << 0, std::sqrt(g * (1 - n)), 0, 0;
  a3 << std::sqrt(n) * std::sqrt(1 - g), 0, 0, std::sqrt(n);
  a4 << 0, 0, std::sqrt(g * n), 0;

  KrausChannel ch;
  ch.in_dim = ch.out_dim = 2;
  ch.kind = "gadc";
  ch.params = {{"gamma", gamma}, {"N", n_bath}};
  ch.kraus_ops = {a1, a2, a3, a4};
  check_completeness(ch);
  prune_zero_ops(ch);
  return ch;
}

KrausChannel dephrasure(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("dephrasure parameters must lie in [0, 1]");
  ComplexMatrix embed = ComplexMatrix::Zero(3, 2);  // qubit into qutrit
  embed(0, 0) = 1;
  embed(1, 1) = 1;
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  ComplexMatrix e0 = ComplexMatrix::Zero(3, 2), e1 = ComplexMatrix::Zero(3, 2);
  e0(2, 0) = 1;  // |e><0|
  e1(2, 1) = 1;  // |e><1|

  KrausChannel ch;
  ch.in_dim = 2;
  ch.out_dim = 3;
  ch.kind = "dephrasure";
  ch.params = {{"p", p}, {"q", q}};
  ch.kraus_ops = {std::sqrt((1 - q) * (1 - p)) * embed, std::sqrt((1 - q) * p) * embed * z,
                  std::sqrt(q) * e0, std::sqrt(q) * e1};
  check_completeness(ch);
  prune_zero_ops(ch);
  return ch;
}

KrausChannel identity_channel(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  KrausChannel ch;
  ch.in_dim = ch.out_dim = dim;
  ch.kind = "identity";
  ch.kraus_ops = {ComplexMatrix::Identity(dim, dim)};
  return ch;
}

ComplexMatrix apply_channel(const KrausChannel& channel, const ComplexMatrix& rho) {
  if (rho.rows() != channel.in_dim || rho.cols() != channel.in_dim)
    throw std::invalid_argument("density operator dimension does not match channel input");
  ComplexMatrix out = ComplexMatrix::Zero(channel.out_dim, channel.out_dim);
  for (const auto& a : channel.kraus_ops) out += a * rho * a.adjoint();
  return out;
}

namespace {

// Apply a local operator (rows x cols) to one slot of a flat amplitude
// vector whose current layout is [left, cols, right].
linalg::ComplexVector apply_slot(const linalg::ComplexVector& v, std::int64_t left,
                                 std::int64_t right, const ComplexMatrix& op) {
  const auto rows = op.rows(), cols = op.cols();
  linalg::ComplexVector out = linalg::ComplexVector::Zero(left * rows * right);
  for (std::int64_t l = 0; l < left; ++l)
    for (Eigen::Index r = 0; r < rows; ++r) {
      Complex* dst = out.data() + (l * rows + r) * right;
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Complex w = op(r, c);
        if (w == Complex(0.0)) continue;
        const Complex* src = v.data() + (l * cols + c) * right;
        for (std::int64_t j = 0; j < right; ++j) dst[j] += w * src[j];
      }
    }
  return out;
}

}  // namespace

DensityMatrix apply_joint(const KrausChannel& channel, int k, const StateVector& code) {
  if (k < 1) throw std::invalid_argument("channel copy count must be >= 1");
  if (static_cast<int>(code.subsystem_dims.size()) != k + 1)
    throw std::invalid_argument("code must have 1 + k subsystems");
  for (int i = 1; i <= k; ++i)
    if (code.subsystem_dims[i] != channel.in_dim)
      throw std::invalid_argument("code subsystem dimension does not match channel input");
  if (linalg::dims_product(code.subsystem_dims) != code.dim())
    throw std::invalid_argument("subsystem dims inconsistent with state size");
  if (std::abs(code.amplitudes.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("code state must be normalized");

  const std::int64_t dim_r = code.subsystem_dims[0];
  const int num_ops = static_cast<int>(channel.kraus_ops.size());
  std::int64_t out_dim = dim_r;
  for (int i = 0; i < k; ++i) out_dim *= channel.out_dim;

  DensityMatrix sigma;
  sigma.matrix = ComplexMatrix::Zero(out_dim, out_dim);

  // Columns of V are (I_R ⊗ A_{i1} ⊗ ... ⊗ A_{ik}) |psi>, built along a
  // depth-first tuple enumeration so each prefix application is shared.
  // Accumulation happens in column batches: one rank-b update per batch
  // keeps the matrix product large while bounding memory.
  const Eigen::Index batch = 256;
  ComplexMatrix v(out_dim, batch);
  Eigen::Index col = 0;
  auto flush = [&]() {
    if (col == 0) return;
    sigma.matrix.selfadjointView<Eigen::Lower>().rankUpdate(v.leftCols(col), 1.0);
    col = 0;
  };
  // stack[t] holds the vector after t slots have been transformed.
  std::vector<linalg::ComplexVector> stack(static_cast<std::size_t>(k) + 1);
  stack[0] = code.amplitudes;
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      v.col(col++) = stack[k];
      if (col == batch) flush();
      return;
    }
    // Slot depth+1 of the current layout [R, out^depth, in^(k-depth)].
    std::int64_t left = dim_r, right = 1;
    for (int i = 0; i < depth; ++i) left *= channel.out_dim;
    for (int i = depth + 1; i < k; ++i) right *= channel.in_dim;
    for (const auto& op : channel.kraus_ops) {
      stack[depth + 1] = apply_slot(stack[depth], left, right, op);
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  flush();
  sigma.matrix = sigma.matrix.selfadjointView<Eigen::Lower>();
  sigma.subsystem_dims.assign(1, static_cast<int>(dim_r));
  sigma.subsystem_dims.insert(sigma.subsystem_dims.end(), k, channel.out_dim);
  return sigma;
}

}  // namespace qci::channels
