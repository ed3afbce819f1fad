#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace qci::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Pure state amplitudes over a computational basis of qudits.
/// subsystem_dims lists the local dimensions; the first subsystem is the
/// most significant index digit.
struct StateVector {
  ComplexVector amplitudes;
  std::vector<int> subsystem_dims;

  Eigen::Index dim() const { return amplitudes.size(); }
};

/// Square complex matrix with subsystem dimension metadata.
struct DensityMatrix {
  ComplexMatrix matrix;
  std::vector<int> subsystem_dims;

  Eigen::Index dim() const { return matrix.rows(); }
};

std::int64_t dims_product(const std::vector<int>& dims);

/// Decompose a flat basis index into per-subsystem digits (first subsystem
/// most significant) and back.
std::vector<int> index_digits(std::int64_t index, const std::vector<int>& dims);
std::int64_t digits_index(const std::vector<int>& digits, const std::vector<int>& dims);

/// Kronecker product, (A⊗B)[(i*rB+k),(j*cB+l)] = A[i,j]*B[k,l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor product of two states; subsystem dimension lists concatenate.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Trace out every subsystem not listed in `keep` (strictly increasing
/// indices into subsystem_dims). Trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Marginal of a pure state on the `keep` subsystems, computed as a Gram
/// matrix of the reshaped amplitude vector.
DensityMatrix marginal(const StateVector& psi, const std::vector<int>& keep);

/// Rearrange subsystems; new_to_old[p] is the old position of new slot p.
StateVector reorder_subsystems(const StateVector& psi, const std::vector<int>& new_to_old);

/// Real eigenvalues of a Hermitian matrix, ascending.
/// Throws if the input deviates from Hermiticity by more than 1e-9.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0) are clamped to
/// zero; anything more negative signals a corrupt density matrix and throws.
double von_neumann_entropy(const DensityMatrix& rho);

/// Sum of absolute eigenvalues (Hermitian input).
double trace_norm(const ComplexMatrix& m);

/// Scale to unit 2-norm. An all-zero vector throws (degenerate ansatz
/// output is an error, not a silent NaN).
StateVector normalize(const StateVector& psi);

/// tr(rho^2) from the matrix entries directly.
double purity(const DensityMatrix& rho);

/// x*log2(x) with the 0*log(0) = 0 convention.
double xlog2(double x);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

bool is_hermitian(const ComplexMatrix& m, double tol);

}  // namespace qci::linalg
