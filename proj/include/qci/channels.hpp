#pragma once

#include "qci/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qci::channels {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using linalg::StateVector;

/// Completely positive trace-preserving map given by Kraus operators
/// (each out_dim x in_dim, sum of A^dagger A equal to the identity).
struct KrausChannel {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<ComplexMatrix> kraus_ops;
  std::string kind;
  std::vector<std::pair<std::string, double>> params;
};

/// rho -> (1-p) rho + p tr(rho) I/2, valid for p in [0, 4/3].
KrausChannel depolarizing(double p);

/// Generalized amplitude damping with decay gamma and bath temperature n_bath,
/// both in [0, 1].
KrausChannel gadc(double gamma, double n_bath);

/// Qubit-to-qutrit map: dephase with probability p, then erase to the flag
/// state |e> (third basis vector) with probability q.
KrausChannel dephrasure(double p, double q);

/// Noiseless channel on a given dimension.
KrausChannel identity_channel(int dim);

/// Apply the channel once to a density operator.
ComplexMatrix apply_channel(const KrausChannel& channel, const ComplexMatrix& rho);

/// Joint output sigma_{RB^k} of id_R tensor channel^{tensor k} on a pure code
/// state with subsystem dims [dim_R, in_dim, ..., in_dim]. Accumulates one
/// rank-1 outer product per Kraus index tuple; the joint Kraus matrix is
/// never materialized.
DensityMatrix apply_joint(const KrausChannel& channel, int k, const StateVector& code);

}  // namespace qci::channels
