#include "qci/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qci::linalg {

std::int64_t dims_product(const std::vector<int>& dims) {
  std::int64_t p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

std::vector<int> index_digits(std::int64_t index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % dims[i]);
    index /= dims[i];
  }
  return digits;
}

std::int64_t digits_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
  return idx;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  StateVector out;
  out.amplitudes.resize(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    out.amplitudes.segment(i * b.dim(), b.dim()) = a.amplitudes(i) * b.amplitudes;
  out.subsystem_dims = a.subsystem_dims;
  out.subsystem_dims.insert(out.subsystem_dims.end(), b.subsystem_dims.begin(),
                            b.subsystem_dims.end());
  return out;
}

namespace {

// Flat offsets contributed by the kept and traced subsystems separately;
// a full index is always keep_base[a] + trace_base[t].
struct SplitIndex {
  std::vector<std::int64_t> keep_base;
  std::vector<std::int64_t> trace_base;
  std::vector<int> keep_dims;
};

SplitIndex split_index(const std::vector<int>& dims, const std::vector<int>& keep) {
  const int s = static_cast<int>(dims.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= s) throw std::invalid_argument("subsystem index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("keep indices must be strictly increasing");
  }
  std::vector<std::int64_t> strides(s, 1);
  for (int i = s - 2; i >= 0; --i) strides[i] = strides[i + 1] * dims[i + 1];

  std::vector<char> kept(s, 0);
  for (int k : keep) kept[k] = 1;
  std::vector<int> keep_dims, trace_dims;
  std::vector<std::int64_t> keep_strides, trace_strides;
  for (int i = 0; i < s; ++i) {
    if (kept[i]) {
      keep_dims.push_back(dims[i]);
      keep_strides.push_back(strides[i]);
    } else {
      trace_dims.push_back(dims[i]);
      trace_strides.push_back(strides[i]);
    }
  }

  auto bases = [](const std::vector<int>& ds, const std::vector<std::int64_t>& ss) {
    std::int64_t total = 1;
    for (int d : ds) total *= d;
    std::vector<std::int64_t> base(total, 0);
    for (std::int64_t x = 0; x < total; ++x) {
      std::int64_t rem = x, off = 0;
      for (std::size_t i = ds.size(); i-- > 0;) {
        off += (rem % ds[i]) * ss[i];
        rem /= ds[i];
      }
      base[x] = off;
    }
    return base;
  };

  SplitIndex si;
  si.keep_base = bases(keep_dims, keep_strides);
  si.trace_base = bases(trace_dims, trace_strides);
  si.keep_dims = keep_dims;
  return si;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (dims_product(rho.subsystem_dims) != rho.dim())
    throw std::invalid_argument("subsystem dims inconsistent with matrix size");
  SplitIndex si = split_index(rho.subsystem_dims, keep);
  const auto nk = static_cast<Eigen::Index>(si.keep_base.size());

  DensityMatrix out;
  out.matrix = ComplexMatrix::Zero(nk, nk);
  out.subsystem_dims = si.keep_dims;
  for (Eigen::Index a = 0; a < nk; ++a)
    for (Eigen::Index b = 0; b < nk; ++b) {
      Complex acc = 0.0;
      for (std::int64_t t : si.trace_base) acc += rho.matrix(si.keep_base[a] + t, si.keep_base[b] + t);
      out.matrix(a, b) = acc;
    }
  return out;
}

DensityMatrix marginal(const StateVector& psi, const std::vector<int>& keep) {
  if (dims_product(psi.subsystem_dims) != psi.dim())
    throw std::invalid_argument("subsystem dims inconsistent with state size");
  SplitIndex si = split_index(psi.subsystem_dims, keep);
  const auto nk = static_cast<Eigen::Index>(si.keep_base.size());
  const auto nt = static_cast<Eigen::Index>(si.trace_base.size());

  // Gather into an nk x nt matrix M, then rho = M M^dagger.
  ComplexMatrix m(nk, nt);
  for (Eigen::Index a = 0; a < nk; ++a)
    for (Eigen::Index t = 0; t < nt; ++t)
      m(a, t) = psi.amplitudes(si.keep_base[a] + si.trace_base[t]);

  DensityMatrix out;
  out.matrix = m * m.adjoint();
  out.subsystem_dims = si.keep_dims;
  return out;
}

StateVector reorder_subsystems(const StateVector& psi, const std::vector<int>& new_to_old) {
  const auto& dims = psi.subsystem_dims;
  if (new_to_old.size() != dims.size())
    throw std::invalid_argument("permutation size mismatch");
  std::vector<int> new_dims(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) new_dims[p] = dims[new_to_old[p]];

  StateVector out;
  out.amplitudes.resize(psi.dim());
  out.subsystem_dims = new_dims;
  std::vector<int> old_digits(dims.size());
  for (std::int64_t i = 0; i < psi.dim(); ++i) {
    std::vector<int> nd = index_digits(i, new_dims);
    for (std::size_t p = 0; p < dims.size(); ++p) old_digits[new_to_old[p]] = nd[p];
    out.amplitudes(i) = psi.amplitudes(digits_index(old_digits, dims));
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (!is_hermitian(m, 1e-9)) throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double binary_entropy(double p) { return -xlog2(p) - xlog2(1.0 - p); }

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.matrix)) {
    if (lambda < -1e-10)
      throw std::domain_error("density matrix has eigenvalue below -1e-10");
    if (lambda > 0.0) s -= xlog2(lambda);
  }
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(m)) s += std::abs(lambda);
  return s;
}

StateVector normalize(const StateVector& psi) {
  const double n = psi.amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::domain_error("cannot normalize a zero or non-finite state vector");
  StateVector out;
  out.amplitudes = psi.amplitudes / n;
  out.subsystem_dims = psi.subsystem_dims;
  return out;
}

double purity(const DensityMatrix& rho) { return rho.matrix.cwiseAbs2().sum(); }

}  // namespace qci::linalg
