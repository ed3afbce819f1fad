#include "qci/ansatz.hpp"

#include "qci/analytic.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace qci;
using namespace qci::ansatz;

TEST_SUITE_BEGIN("ansatz");

TEST_CASE("input encodings") {
  Encoding binary{EncodingKind::Binary, 6};
  CHECK(encode_input({5}, binary) == std::vector<double>{1, 0, 1});
  CHECK(encode_input({0}, binary) == std::vector<double>{0, 0, 0});

  Encoding one_hot{EncodingKind::OneHot, 6};
  CHECK(encode_input({0}, one_hot) == std::vector<double>{0, 0, 0, 0, 0, 1});
  CHECK(encode_input({5}, one_hot) == std::vector<double>{1, 0, 0, 0, 0, 0});

  Encoding scaled{EncodingKind::Scaled, 2};
  CHECK(encode_input({0, 1}, scaled) == std::vector<double>{0.0, 1.0});

  CHECK_THROWS_AS(encode_input({6}, binary), std::invalid_argument);
}

TEST_CASE("encodings are injective over all strings") {
  for (EncodingKind kind : {EncodingKind::Scaled, EncodingKind::Binary, EncodingKind::OneHot})
    for (int d : {2, 3, 6}) {
      Encoding enc{kind, d};
      std::set<std::vector<double>> seen;
      std::vector<int> symbols(2);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          symbols = {a, b};
          CHECK(seen.insert(encode_input(symbols, enc)).second);
        }
    }
}

TEST_CASE("activation reference values") {
  CHECK(activate(Activation::Cos, 0.0) == doctest::Approx(1.0));
  CHECK(activate(Activation::Tanh, 0.0) == doctest::Approx(0.0));
  CHECK(activate(Activation::Relu, -1.0) == doctest::Approx(0.0));
  CHECK(activate(Activation::Sigmoid, 0.0) == doctest::Approx(0.5));
}

namespace {

FFParams zero_ff(int in, std::vector<int> widths, OutputMode mode) {
  FFParams p;
  p.output = mode;
  int fan_in = in;
  widths.push_back(2);
  for (std::size_t j = 0; j < widths.size(); ++j) {
    p.weights.push_back(Eigen::MatrixXd::Zero(widths[j], fan_in));
    p.biases.push_back(Eigen::VectorXd::Zero(widths[j]));
    if (j + 1 < widths.size()) p.activations.push_back(Activation::Relu);
    fan_in = widths[j];
  }
  return p;
}

}  // namespace

TEST_CASE("feed-forward amplitudes in both output modes") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  CHECK(std::abs(ff_amplitude(zero_ff(3, {4}, OutputMode::Cartesian), x)) == doctest::Approx(0.0));
  CHECK(ff_amplitude(zero_ff(3, {4}, OutputMode::Polar), x) == Complex(1.0, 0.0));

  FFParams bad = zero_ff(3, {4}, OutputMode::Cartesian);
  Eigen::VectorXd wrong = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(ff_amplitude(bad, wrong), std::invalid_argument);
}

TEST_CASE("constructed repetition network is an exact indicator") {
  const FFParams net = analytic::ff_repetition_construction({{3}});
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(6);
  Eigen::VectorXd zeros = Eigen::VectorXd::Zero(6);
  Eigen::VectorXd alternating(6);
  alternating << 0, 1, 0, 1, 0, 1;
  CHECK(ff_amplitude(net, ones) == Complex(1.0, 0.0));
  CHECK(ff_amplitude(net, zeros) == Complex(1.0, 0.0));
  CHECK(ff_amplitude(net, alternating) == Complex(0.0, 0.0));
}

TEST_CASE("rbm amplitude basics") {
  RBMParams p;
  p.visible_bias = ComplexVector::Zero(2);
  p.hidden_bias = ComplexVector::Zero(2);
  p.coupling = ComplexMatrix::Zero(2, 2);
  CHECK(rbm_amplitude(p, std::vector<int>{0, 0}) == Complex(4.0, 0.0));

  // a saturated hidden unit contributes a factor of one
  RBMParams frozen;
  frozen.visible_bias = ComplexVector::Zero(2);
  frozen.hidden_bias = ComplexVector::Constant(1, 40.0);
  frozen.coupling = ComplexMatrix::Zero(1, 2);
  CHECK(std::abs(rbm_amplitude(frozen, std::vector<int>{1, 0}) - Complex(1.0)) < 1e-15);

  CHECK_THROWS_AS(rbm_amplitude(p, std::vector<int>{0, 2}), std::invalid_argument);
}

TEST_CASE("rbm factorization against hidden-configuration enumeration") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  const int n = 3, m = 3;
  for (int trial = 0; trial < 100; ++trial) {
    RBMParams p;
    p.visible_bias.resize(n);
    p.hidden_bias.resize(m);
    p.coupling.resize(m, n);
    for (int i = 0; i < n; ++i) p.visible_bias(i) = Complex(dist(rng), dist(rng));
    for (int j = 0; j < m; ++j) p.hidden_bias(j) = Complex(dist(rng), dist(rng));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < n; ++i) p.coupling(j, i) = Complex(dist(rng), dist(rng));

    std::vector<int> x = {trial % 2, (trial / 2) % 2, (trial / 4) % 2};
    // independent oracle: explicit sum over all 2^m hidden configurations
    Complex oracle = 0.0;
    for (int h = 0; h < (1 << m); ++h) {
      Complex energy = 0.0;
      for (int i = 0; i < n; ++i) energy += p.visible_bias(i) * static_cast<double>(x[i]);
      for (int j = 0; j < m; ++j) {
        if (!((h >> j) & 1)) continue;
        energy += p.hidden_bias(j);
        for (int i = 0; i < n; ++i) energy += p.coupling(j, i) * static_cast<double>(x[i]);
      }
      oracle += std::exp(-energy);
    }
    const Complex fast = rbm_amplitude(p, x);
    CHECK(std::abs(fast - oracle) <= 1e-10 * std::abs(oracle));
  }
}

TEST_CASE("dbm reduces to rbm and penalizes couplings") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  const int n = 3, m = 2;
  DBMParams p;
  p.core.visible_bias.resize(n);
  p.core.hidden_bias.resize(m);
  p.core.coupling.resize(m, n);
  for (int i = 0; i < n; ++i) p.core.visible_bias(i) = Complex(dist(rng), dist(rng));
  for (int j = 0; j < m; ++j) p.core.hidden_bias(j) = Complex(dist(rng), dist(rng));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) p.core.coupling(j, i) = Complex(dist(rng), dist(rng));
  p.visible_coupling = ComplexMatrix::Zero(n, n);
  p.hidden_coupling = ComplexMatrix::Zero(m, m);

  for (const std::vector<int>& x : {std::vector<int>{0, 1, 1}, std::vector<int>{1, 0, 1}})
    CHECK(std::abs(dbm_amplitude(p, x) - rbm_amplitude(p.core, x)) < 1e-12);

  // a strong visible-visible coupling suppresses strings activating the pair
  DBMParams penal;
  penal.core.visible_bias = ComplexVector::Zero(2);
  penal.core.hidden_bias = ComplexVector::Zero(1);
  penal.core.coupling = ComplexMatrix::Zero(1, 2);
  penal.visible_coupling = ComplexMatrix::Zero(2, 2);
  penal.visible_coupling(0, 1) = 6.0;
  penal.hidden_coupling = ComplexMatrix::Zero(1, 1);
  const double ratio = std::abs(dbm_amplitude(penal, std::vector<int>{1, 1})) /
                       std::abs(dbm_amplitude(penal, std::vector<int>{0, 0}));
  CHECK(ratio == doctest::Approx(std::exp(-6.0)).epsilon(1e-12));
}

TEST_CASE("dbm against an independent double-loop enumeration") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  const int n = 3, m = 3;
  DBMParams p;
  p.core.visible_bias.resize(n);
  p.core.hidden_bias.resize(m);
  p.core.coupling.resize(m, n);
  p.visible_coupling = ComplexMatrix::Zero(n, n);
  p.hidden_coupling = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < n; ++i) p.core.visible_bias(i) = Complex(dist(rng), dist(rng));
  for (int j = 0; j < m; ++j) p.core.hidden_bias(j) = Complex(dist(rng), dist(rng));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) p.core.coupling(j, i) = Complex(dist(rng), dist(rng));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) p.visible_coupling(a, b) = Complex(dist(rng), dist(rng));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) p.hidden_coupling(a, b) = Complex(dist(rng), dist(rng));

  const std::vector<int> x = {1, 0, 1};
  Complex oracle = 0.0;
  for (int h = 0; h < (1 << m); ++h) {
    Complex energy = 0.0;
    for (int i = 0; i < n; ++i) energy += p.core.visible_bias(i) * static_cast<double>(x[i]);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        energy += p.visible_coupling(a, b) * static_cast<double>(x[a] * x[b]);
    for (int j = 0; j < m; ++j)
      if ((h >> j) & 1) {
        energy += p.core.hidden_bias(j);
        for (int i = 0; i < n; ++i) energy += p.core.coupling(j, i) * static_cast<double>(x[i]);
        for (int l = j + 1; l < m; ++l)
          if ((h >> l) & 1) energy += p.hidden_coupling(j, l);
      }
    oracle += std::exp(-energy);
  }
  CHECK(std::abs(dbm_amplitude(p, x) - oracle) < 1e-12 * std::abs(oracle));
}

TEST_CASE("parameter counts match the published architectures") {
  AnsatzSpec gadc_k3;
  gadc_k3.kind = AnsatzKind::FF;
  gadc_k3.n = 6;
  gadc_k3.reference_qudits = 3;
  gadc_k3.ff.hidden_widths = {6, 6, 6, 6};
  gadc_k3.ff.activations = {Activation::Cos, Activation::Tanh, Activation::Tanh,
                            Activation::Tanh};
  CHECK(param_count(gadc_k3) == 182);

  AnsatzSpec gadc_k4 = gadc_k3;
  gadc_k4.n = 8;
  gadc_k4.reference_qudits = 4;
  gadc_k4.ff.hidden_widths = {8, 8, 8, 8};
  CHECK(param_count(gadc_k4) == 306);

  AnsatzSpec gadc_k5 = gadc_k3;
  gadc_k5.n = 10;
  gadc_k5.reference_qudits = 5;
  gadc_k5.ff.hidden_widths = {10, 10, 10, 10};
  CHECK(param_count(gadc_k5) == 462);

  AnsatzSpec raw;
  raw.kind = AnsatzKind::Raw;
  raw.n = 6;
  raw.reference_qudits = 3;
  CHECK(param_count(raw) == 128);

  AnsatzSpec rbm;
  rbm.kind = AnsatzKind::RBM;
  rbm.n = 2;
  rbm.boltzmann_hidden = 2;
  CHECK(param_count(rbm) == 16);
}

TEST_CASE("flatten and unflatten round-trip") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);

  AnsatzSpec ff_spec;
  ff_spec.kind = AnsatzKind::FF;
  ff_spec.n = 4;
  ff_spec.reference_qudits = 2;
  ff_spec.ff.hidden_widths = {5, 3};
  ff_spec.ff.activations = {Activation::Cos, Activation::Relu};
  std::vector<double> flat(param_count(ff_spec));
  for (auto& v : flat) v = dist(rng);
  CHECK(flatten(ff_spec, ff_from_flat(ff_spec, flat)) == flat);

  AnsatzSpec rbm_spec;
  rbm_spec.kind = AnsatzKind::RBM;
  rbm_spec.n = 3;
  rbm_spec.boltzmann_hidden = 4;
  flat.assign(param_count(rbm_spec), 0.0);
  for (auto& v : flat) v = dist(rng);
  CHECK(flatten(rbm_spec, rbm_from_flat(rbm_spec, flat)) == flat);

  AnsatzSpec dbm_spec = rbm_spec;
  dbm_spec.kind = AnsatzKind::DBM;
  flat.assign(param_count(dbm_spec), 0.0);
  for (auto& v : flat) v = dist(rng);
  CHECK(flatten(dbm_spec, dbm_from_flat(dbm_spec, flat)) == flat);

  CHECK_THROWS_AS(ff_from_flat(ff_spec, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("raw assembly and rescaling invariance") {
  AnsatzSpec raw;
  raw.kind = AnsatzKind::Raw;
  raw.n = 1;
  std::vector<double> params = {1, 0, 0, 0};
  const StateVector psi = assemble_state(raw, params);
  CHECK(std::abs(psi.amplitudes(0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(psi.amplitudes(1)) == 0.0);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  raw.n = 3;
  params.assign(param_count(raw), 0.0);
  for (auto& v : params) v = dist(rng);
  const StateVector base = assemble_state(raw, params);
  for (double scale : {0.5, 2.0, 7.3}) {
    std::vector<double> scaled = params;
    for (auto& v : scaled) v *= scale;
    CHECK((assemble_state(raw, scaled).amplitudes - base.amplitudes).norm() < 1e-12);
  }

  params.assign(param_count(raw), 0.0);
  CHECK_THROWS_AS(assemble_state(raw, params), std::domain_error);
}

TEST_CASE("Schmidt assembly pairs reference and channel strings") {
  AnsatzSpec spec;
  spec.kind = AnsatzKind::FFSchmidt;
  spec.n = 2;
  spec.reference_qudits = 1;
  spec.ff.hidden_widths = {2};
  spec.ff.activations = {Activation::Relu};
  spec.ff.output = OutputMode::Polar;  // zero parameters give constant amplitude 1
  const std::vector<double> params(param_count(spec), 0.0);
  const StateVector psi = assemble_state(spec, params);
  CHECK(std::abs(psi.amplitudes(0) - Complex(M_SQRT1_2)) < 1e-12);
  CHECK(std::abs(psi.amplitudes(3) - Complex(M_SQRT1_2)) < 1e-12);
  CHECK(std::abs(psi.amplitudes(1)) == 0.0);
  CHECK(std::abs(psi.amplitudes(2)) == 0.0);
  CHECK(psi.subsystem_dims == std::vector<int>{2, 2});
}

TEST_CASE("rbm Schmidt assembly") {
  // zero parameters make every hidden factor 2: a uniform Schmidt diagonal,
  // i.e. the maximally entangled pairing of the two halves
  AnsatzSpec spec;
  spec.kind = AnsatzKind::RBMSchmidt;
  spec.n = 4;
  spec.reference_qudits = 2;
  spec.boltzmann_hidden = 3;
  const StateVector psi = assemble_state(spec, std::vector<double>(param_count(spec), 0.0));
  CHECK(psi.subsystem_dims == std::vector<int>{4, 2, 2});
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(psi.amplitudes(i * 4 + i) - Complex(0.5)) < 1e-12);
  CHECK(psi.amplitudes.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("assembled states are unit norm") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  AnsatzSpec spec;
  spec.kind = AnsatzKind::RBM;
  spec.n = 4;
  spec.boltzmann_hidden = 3;
  std::vector<double> params(param_count(spec));
  for (int trial = 0; trial < 5; ++trial) {
    for (auto& v : params) v = dist(rng);
    CHECK(assemble_state(spec, params).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rbm repetition construction assembles the target code") {
  AnsatzSpec spec;
  spec.kind = AnsatzKind::RBM;
  spec.n = 6;
  spec.reference_qudits = 3;
  spec.boltzmann_hidden = 6;
  const RBMParams params = analytic::rbm_repetition_construction({{3}});
  const StateVector psi = assemble_state(spec, flatten(spec, params));
  StateVector target;
  target.amplitudes = linalg::ComplexVector::Zero(64);
  target.subsystem_dims = {8, 2, 2, 2};
  target.amplitudes(0) = M_SQRT1_2;
  target.amplitudes(63) = M_SQRT1_2;
  const double fidelity = std::norm(target.amplitudes.dot(psi.amplitudes));
  CHECK(fidelity >= 1.0 - 1e-6);
}

TEST_CASE("spec validation rejects inconsistent settings") {
  AnsatzSpec spec;
  spec.kind = AnsatzKind::FFSchmidt;
  spec.n = 3;  // odd
  spec.reference_qudits = 1;
  spec.ff.hidden_widths = {2};
  spec.ff.activations = {Activation::Relu};
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);

  AnsatzSpec rbm;
  rbm.kind = AnsatzKind::RBM;
  rbm.n = 2;
  rbm.boltzmann_hidden = 0;
  CHECK_THROWS_AS(validate(rbm), std::invalid_argument);

  AnsatzSpec enc;
  enc.kind = AnsatzKind::Raw;
  enc.n = 2;
  enc.d = 3;
  enc.encoding = {EncodingKind::Scaled, 2};
  CHECK_THROWS_AS(validate(enc), std::invalid_argument);
}

TEST_SUITE_END();
