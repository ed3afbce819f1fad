#pragma once

#include "qci/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qci::ansatz {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::StateVector;

enum class Activation { Cos, Tanh, Relu, Sigmoid };
enum class OutputMode { Cartesian, Polar };
enum class EncodingKind { Scaled, Binary, OneHot };

double activate(Activation f, double x);

/// Input encoding of d-ary symbols.
///   scaled : one node per symbol, value i/(d-1)
///   binary : ceil(log2 d) nodes per symbol, most significant bit first
///   one_hot: d nodes per symbol, the bit for symbol i sits at slot d-1-i
struct Encoding {
  EncodingKind kind = EncodingKind::Scaled;
  int d = 2;

  int nodes_per_symbol() const;
};

std::vector<double> encode_input(const std::vector<int>& symbols, const Encoding& enc);

/// Feed-forward amplitude network. weights/biases hold the hidden layers
/// followed by the linear output layer (two rows: real and imaginary parts
/// in Cartesian mode, log-modulus and phase in Polar mode). activations has
/// one entry per hidden layer.
struct FFParams {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::vector<Activation> activations;
  OutputMode output = OutputMode::Cartesian;
};

Complex ff_amplitude(const FFParams& params, const Eigen::VectorXd& x);

/// Restricted Boltzmann machine with complex biases a (visible), b (hidden)
/// and full bipartite coupling W (hidden x visible). Amplitudes come from
/// tracing out the hidden layer, which factorizes:
///   psi(x) = exp(-a.x) * prod_j (1 + exp(-b_j - (W x)_j)).
/// The partition function is absorbed by state normalization.
struct RBMParams {
  ComplexVector visible_bias;
  ComplexVector hidden_bias;
  ComplexMatrix coupling;

  int visible() const { return static_cast<int>(visible_bias.size()); }
  int hidden() const { return static_cast<int>(hidden_bias.size()); }
};

Complex rbm_amplitude(const RBMParams& params, const std::vector<int>& bits);
/// Same energy function on an arbitrary real input (used with the d-ary
/// encodings, whose outputs are not always 0/1).
Complex rbm_amplitude(const RBMParams& params, const Eigen::VectorXd& x);

/// Boltzmann machine with additional intra-layer couplings (strictly upper
/// triangular parts of C for visible pairs and D for hidden pairs). The
/// hidden layer no longer factorizes; amplitudes sum over all 2^m hidden
/// configurations, guarded to m <= 20.
struct DBMParams {
  RBMParams core;
  ComplexMatrix visible_coupling;
  ComplexMatrix hidden_coupling;
};

Complex dbm_amplitude(const DBMParams& params, const std::vector<int>& bits);
Complex dbm_amplitude(const DBMParams& params, const Eigen::VectorXd& x);

struct FFArchitecture {
  std::vector<int> hidden_widths;
  std::vector<Activation> activations;
  OutputMode output = OutputMode::Cartesian;
};

enum class AnsatzKind { FF, RBM, DBM, FFSchmidt, RBMSchmidt, Raw };

/// Variational parametrization of an n-qudit state. reference_qudits groups
/// the leading qudits into one reference subsystem for code evaluation
/// (dim_R = d^reference_qudits); the Schmidt kinds require d = 2, even n,
/// and place the network value psi(i) on |i>_R |i>_A.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::Raw;
  int n = 2;
  int d = 2;
  int reference_qudits = 0;
  Encoding encoding;
  FFArchitecture ff;
  int boltzmann_hidden = 0;
  double box_bound = 10.0;

  int input_symbols() const;
  int input_width() const;
  std::int64_t state_dim() const;
};

void validate(const AnsatzSpec& spec);

std::int64_t param_count(const AnsatzSpec& spec);

/// Structured views of a flat parameter vector. Layout, in order: FF layers
/// (weights row-major, then biases, hidden layers first, output layer last);
/// RBM a, b, W row-major with each complex entry as (re, im); DBM appends the
/// strictly upper triangles of C then D, row by row.
FFParams ff_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat);
RBMParams rbm_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat);
DBMParams dbm_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat);
std::vector<double> flatten(const AnsatzSpec& spec, const FFParams& params);
std::vector<double> flatten(const AnsatzSpec& spec, const RBMParams& params);
std::vector<double> flatten(const AnsatzSpec& spec, const DBMParams& params);

/// Evaluate the amplitude of every basis string and normalize. Throws
/// std::domain_error if every amplitude vanishes.
StateVector assemble_state(const AnsatzSpec& spec, const std::vector<double>& params);

}  // namespace qci::ansatz
