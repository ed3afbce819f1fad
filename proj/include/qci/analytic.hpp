#pragma once

#include "qci/ansatz.hpp"
#include "qci/linalg.hpp"

#include <functional>
#include <vector>

namespace qci::analytic {

using ansatz::FFParams;
using ansatz::RBMParams;
using linalg::StateVector;

/// Weighted repetition code sqrt(lambda)|0>_R|0..0> + sqrt(1-lambda)|1>_R|1..1>
/// on 1 + k qubits.
struct RepCodeSpec {
  int k = 1;
  double lambda = 0.5;
};

/// Product of unweighted repetition codes, one block per entry. Each block of
/// n_i channel qubits carries n_i purifying qubits, so the state lives on
/// 2*sum(n_i) qubits, reordered to [all reference][all channel] slots.
struct ProductRepSpec {
  std::vector<int> blocks;
};

StateVector weighted_repetition_state(const RepCodeSpec& spec);
StateVector product_repetition_state(const ProductRepSpec& spec);

/// Closed form for the coherent information of a weighted repetition code
/// through k copies of the generalized amplitude damping channel. Valid for
/// blocklengths up to at least k = 20.
double gadc_repcode_ci(const RepCodeSpec& spec, double gamma, double n_bath);

/// Closed form for the dephrasure channel, in terms of the binary entropy of
/// (1+u)/2 with u = sqrt(1 - 4 lambda (1-lambda) (1 - (1-2p)^(2k))).
double dephrasure_repcode_ci(const RepCodeSpec& spec, double p, double q);

/// 1 + (1-3p/4) log2(1-3p/4) + (3p/4) log2(p/4): the Bell-code value, which
/// is the optimal single-letter coherent information of the depolarizing
/// channel.
double depolarizing_single_letter_ci(double p);

/// Coherent information per use of the unweighted k-repetition code through
/// k copies of the depolarizing channel (numerically evaluated).
double depolarizing_repetition_ci(int k, double p);

struct ProductRepSearch {
  ProductRepSpec partition;
  int frozen = 0;
  double rate = 0.0;
};

/// Exhaustive search over integer partitions of j <= k channel uses into
/// repetition blocks, the remaining k - j inputs frozen. Block values add;
/// the rate denominator is always k.
ProductRepSearch best_product_repcode(int k, double p);

/// Feed-forward network whose amplitude is the exact indicator of a product
/// repetition code: a cosine node per block (angle 2*pi/block_bits), a relu
/// threshold layer, and a final relu AND node.
FFParams ff_repetition_construction(const ProductRepSpec& spec);

/// Restricted Boltzmann machine for the same code family with every
/// parameter magnitude at most 10. Each block of b bits gets b hidden nodes
/// with bias 10 and coupling -20/b, under visible biases of 10; the code
/// amplitudes match exactly and off-code strings are suppressed by about
/// e^-10 per unit of Hamming distance from the nearer code word.
RBMParams rbm_repetition_construction(const ProductRepSpec& spec);

/// Bisection for a sign change of f on [lo, hi] to absolute precision 1e-6.
double find_threshold(const std::function<double(double)>& f, double lo, double hi);

}  // namespace qci::analytic
