#include "qci/ansatz.hpp"

#include <cmath>
#include <stdexcept>

namespace qci::ansatz {

double activate(Activation f, double x) {
  switch (f) {
    case Activation::Cos: return std::cos(x);
    case Activation::Tanh: return std::tanh(x);
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
  }
  throw std::logic_error("unknown activation");
}

int Encoding::nodes_per_symbol() const {
  switch (kind) {
    case EncodingKind::Scaled: return 1;
    case EncodingKind::Binary: {
      int bits = 1;
      while ((1 << bits) < d) ++bits;
      return bits;
    }
    case EncodingKind::OneHot: return d;
  }
  throw std::logic_error("unknown encoding");
}

std::vector<double> encode_input(const std::vector<int>& symbols, const Encoding& enc) {
  const int w = enc.nodes_per_symbol();
  std::vector<double> out;
  out.reserve(symbols.size() * w);
  for (int s : symbols) {
    if (s < 0 || s >= enc.d) throw std::invalid_argument("symbol out of range for encoding");
    switch (enc.kind) {
      case EncodingKind::Scaled:
        out.push_back(static_cast<double>(s) / (enc.d - 1));
        break;
      case EncodingKind::Binary:
        for (int b = w - 1; b >= 0; --b) out.push_back((s >> b) & 1);
        break;
      case EncodingKind::OneHot:
        for (int j = 0; j < enc.d; ++j) out.push_back(j == enc.d - 1 - s ? 1.0 : 0.0);
        break;
    }
  }
  return out;
}

Complex ff_amplitude(const FFParams& params, const Eigen::VectorXd& x) {
  if (params.weights.size() != params.biases.size() ||
      params.weights.size() != params.activations.size() + 1)
    throw std::invalid_argument("inconsistent layer counts");
  Eigen::VectorXd h = x;
  for (std::size_t j = 0; j < params.weights.size(); ++j) {
    if (params.weights[j].cols() != h.size())
      throw std::invalid_argument("layer shape mismatch");
    Eigen::VectorXd z = params.weights[j] * h + params.biases[j];
    if (j + 1 < params.weights.size()) {
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = activate(params.activations[j], z(i));
    }
    h = std::move(z);
  }
  if (h.size() != 2) throw std::invalid_argument("output layer must have two nodes");
  if (params.output == OutputMode::Cartesian) return {h(0), h(1)};
  // Log-moduli beyond 30 are indistinguishable after normalization; clamp
  // to keep exp finite.
  return std::exp(Complex(std::min(h(0), 30.0), h(1)));
}

Complex rbm_amplitude(const RBMParams& params, const Eigen::VectorXd& x) {
  if (x.size() != params.visible())
    throw std::invalid_argument("input length does not match visible layer");
  const ComplexVector xc = x.cast<Complex>();
  Complex log_env = -(params.visible_bias.transpose() * xc)(0);
  ComplexVector wx = params.coupling * xc;
  Complex amp = std::exp(log_env);
  for (int j = 0; j < params.hidden(); ++j)
    amp *= 1.0 + std::exp(-params.hidden_bias(j) - wx(j));
  return amp;
}

Complex rbm_amplitude(const RBMParams& params, const std::vector<int>& bits) {
  Eigen::VectorXd x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("input must be a bit string");
    x(i) = bits[i];
  }
  return rbm_amplitude(params, x);
}

Complex dbm_amplitude(const DBMParams& params, const Eigen::VectorXd& x) {
  const int n = params.core.visible();
  const int m = params.core.hidden();
  if (x.size() != n) throw std::invalid_argument("input length does not match visible layer");
  if (m > 20) throw std::invalid_argument("hidden layer too large for exact enumeration");
  if (params.visible_coupling.rows() != n || params.visible_coupling.cols() != n ||
      params.hidden_coupling.rows() != m || params.hidden_coupling.cols() != m)
    throw std::invalid_argument("coupling shape mismatch");

  const ComplexVector xc = x.cast<Complex>();
  Complex base = (params.core.visible_bias.transpose() * xc)(0);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) base += params.visible_coupling(k, l) * xc(k) * xc(l);
  ComplexVector field = params.core.hidden_bias + params.core.coupling * xc;

  Complex amp = 0.0;
  for (std::uint32_t h = 0; h < (1u << m); ++h) {
    Complex energy = base;
    for (int j = 0; j < m; ++j) {
      if (!((h >> j) & 1)) continue;
      energy += field(j);
      for (int l = j + 1; l < m; ++l)
        if ((h >> l) & 1) energy += params.hidden_coupling(j, l);
    }
    amp += std::exp(-energy);
  }
  return amp;
}

Complex dbm_amplitude(const DBMParams& params, const std::vector<int>& bits) {
  Eigen::VectorXd x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("input must be a bit string");
    x(i) = bits[i];
  }
  return dbm_amplitude(params, x);
}

int AnsatzSpec::input_symbols() const {
  return (kind == AnsatzKind::FFSchmidt || kind == AnsatzKind::RBMSchmidt) ? n / 2 : n;
}

int AnsatzSpec::input_width() const { return input_symbols() * encoding.nodes_per_symbol(); }

std::int64_t AnsatzSpec::state_dim() const {
  std::int64_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;
  return dim;
}

void validate(const AnsatzSpec& spec) {
  if (spec.n < 1 || spec.d < 2) throw std::invalid_argument("need n >= 1 qudits of dimension >= 2");
  if (spec.encoding.d != spec.d) throw std::invalid_argument("encoding dimension must match d");
  if (spec.reference_qudits < 0 || spec.reference_qudits >= spec.n + 1)
    throw std::invalid_argument("reference qudit count out of range");
  if (spec.state_dim() > (std::int64_t{1} << 24))
    throw std::invalid_argument("state dimension too large for exact assembly");
  const bool schmidt = spec.kind == AnsatzKind::FFSchmidt || spec.kind == AnsatzKind::RBMSchmidt;
  if (schmidt) {
    if (spec.d != 2 || spec.n % 2 != 0)
      throw std::invalid_argument("Schmidt kinds require an even number of qubits");
    if (spec.reference_qudits != spec.n / 2)
      throw std::invalid_argument("Schmidt kinds pair the first n/2 qudits with the rest");
  }
  if (spec.kind == AnsatzKind::FF || spec.kind == AnsatzKind::FFSchmidt) {
    if (spec.ff.activations.size() != spec.ff.hidden_widths.size())
      throw std::invalid_argument("one activation per hidden layer required");
    for (int w : spec.ff.hidden_widths)
      if (w < 1) throw std::invalid_argument("hidden widths must be positive");
  }
  if (spec.kind == AnsatzKind::RBM || spec.kind == AnsatzKind::DBM ||
      spec.kind == AnsatzKind::RBMSchmidt) {
    if (spec.boltzmann_hidden < 1)
      throw std::invalid_argument("Boltzmann machines need at least one hidden node");
  }
}

std::int64_t param_count(const AnsatzSpec& spec) {
  validate(spec);
  const int in = spec.input_width();
  const int m = spec.boltzmann_hidden;
  switch (spec.kind) {
    case AnsatzKind::FF:
    case AnsatzKind::FFSchmidt: {
      std::int64_t count = 0;
      int fan_in = in;
      for (int w : spec.ff.hidden_widths) {
        count += static_cast<std::int64_t>(fan_in + 1) * w;
        fan_in = w;
      }
      return count + static_cast<std::int64_t>(fan_in + 1) * 2;
    }
    case AnsatzKind::RBM:
    case AnsatzKind::RBMSchmidt:
      return 2ll * (in + m + static_cast<std::int64_t>(in) * m);
    case AnsatzKind::DBM:
      return 2ll * (in + m + static_cast<std::int64_t>(in) * m) +
             static_cast<std::int64_t>(in) * (in - 1) + static_cast<std::int64_t>(m) * (m - 1);
    case AnsatzKind::Raw:
      return 2 * spec.state_dim();
  }
  throw std::logic_error("unknown ansatz kind");
}

namespace {

void check_length(const AnsatzSpec& spec, const std::vector<double>& flat) {
  if (static_cast<std::int64_t>(flat.size()) != param_count(spec))
    throw std::invalid_argument("flat parameter vector has wrong length");
}

}  // namespace

FFParams ff_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat) {
  check_length(spec, flat);
  FFParams p;
  p.activations = spec.ff.activations;
  p.output = spec.ff.output;
  std::size_t pos = 0;
  int fan_in = spec.input_width();
  std::vector<int> widths = spec.ff.hidden_widths;
  widths.push_back(2);
  for (int w : widths) {
    Eigen::MatrixXd weight(w, fan_in);
    for (int r = 0; r < w; ++r)
      for (int c = 0; c < fan_in; ++c) weight(r, c) = flat[pos++];
    Eigen::VectorXd bias(w);
    for (int r = 0; r < w; ++r) bias(r) = flat[pos++];
    p.weights.push_back(std::move(weight));
    p.biases.push_back(std::move(bias));
    fan_in = w;
  }
  return p;
}

std::vector<double> flatten(const AnsatzSpec& spec, const FFParams& params) {
  std::vector<double> flat;
  flat.reserve(param_count(spec));
  for (std::size_t j = 0; j < params.weights.size(); ++j) {
    for (Eigen::Index r = 0; r < params.weights[j].rows(); ++r)
      for (Eigen::Index c = 0; c < params.weights[j].cols(); ++c)
        flat.push_back(params.weights[j](r, c));
    for (Eigen::Index r = 0; r < params.biases[j].size(); ++r)
      flat.push_back(params.biases[j](r));
  }
  check_length(spec, flat);
  return flat;
}

namespace {

ComplexVector complex_segment(const std::vector<double>& flat, std::size_t& pos, int count) {
  ComplexVector v(count);
  for (int i = 0; i < count; ++i) {
    v(i) = Complex(flat[pos], flat[pos + 1]);
    pos += 2;
  }
  return v;
}

void push_complex(std::vector<double>& flat, const Complex& z) {
  flat.push_back(z.real());
  flat.push_back(z.imag());
}

}  // namespace

RBMParams rbm_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat) {
  check_length(spec, flat);
  const int n = spec.input_width();
  const int m = spec.boltzmann_hidden;
  std::size_t pos = 0;
  RBMParams p;
  p.visible_bias = complex_segment(flat, pos, n);
  p.hidden_bias = complex_segment(flat, pos, m);
  p.coupling.resize(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      p.coupling(r, c) = Complex(flat[pos], flat[pos + 1]);
      pos += 2;
    }
  return p;
}

std::vector<double> flatten(const AnsatzSpec& spec, const RBMParams& params) {
  std::vector<double> flat;
  flat.reserve(param_count(spec));
  for (Eigen::Index i = 0; i < params.visible_bias.size(); ++i)
    push_complex(flat, params.visible_bias(i));
  for (Eigen::Index i = 0; i < params.hidden_bias.size(); ++i)
    push_complex(flat, params.hidden_bias(i));
  for (Eigen::Index r = 0; r < params.coupling.rows(); ++r)
    for (Eigen::Index c = 0; c < params.coupling.cols(); ++c)
      push_complex(flat, params.coupling(r, c));
  check_length(spec, flat);
  return flat;
}

DBMParams dbm_from_flat(const AnsatzSpec& spec, const std::vector<double>& flat) {
  check_length(spec, flat);
  const int n = spec.input_width();
  const int m = spec.boltzmann_hidden;
  AnsatzSpec core_spec = spec;
  core_spec.kind = AnsatzKind::RBM;
  const std::size_t core_len = static_cast<std::size_t>(param_count(core_spec));
  DBMParams p;
  p.core = rbm_from_flat(core_spec, {flat.begin(), flat.begin() + core_len});
  p.visible_coupling = ComplexMatrix::Zero(n, n);
  p.hidden_coupling = ComplexMatrix::Zero(m, m);
  std::size_t pos = core_len;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      p.visible_coupling(k, l) = Complex(flat[pos], flat[pos + 1]);
      pos += 2;
    }
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      p.hidden_coupling(k, l) = Complex(flat[pos], flat[pos + 1]);
      pos += 2;
    }
  return p;
}

std::vector<double> flatten(const AnsatzSpec& spec, const DBMParams& params) {
  AnsatzSpec core_spec = spec;
  core_spec.kind = AnsatzKind::RBM;
  std::vector<double> flat = flatten(core_spec, params.core);
  const int n = spec.input_width();
  const int m = spec.boltzmann_hidden;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) push_complex(flat, params.visible_coupling(k, l));
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) push_complex(flat, params.hidden_coupling(k, l));
  check_length(spec, flat);
  return flat;
}

StateVector assemble_state(const AnsatzSpec& spec, const std::vector<double>& params) {
  check_length(spec, params);
  const std::int64_t dim = spec.state_dim();

  StateVector psi;
  psi.amplitudes = ComplexVector::Zero(dim);
  if (spec.reference_qudits > 0) {
    int dim_r = 1;
    for (int i = 0; i < spec.reference_qudits; ++i) dim_r *= spec.d;
    psi.subsystem_dims.assign(1, dim_r);
    psi.subsystem_dims.insert(psi.subsystem_dims.end(), spec.n - spec.reference_qudits, spec.d);
  } else {
    psi.subsystem_dims.assign(spec.n, spec.d);
  }

  const std::vector<int> qudit_dims(spec.n, spec.d);
  switch (spec.kind) {
    case AnsatzKind::Raw:
      for (std::int64_t i = 0; i < dim; ++i)
        psi.amplitudes(i) = Complex(params[2 * i], params[2 * i + 1]);
      break;
    case AnsatzKind::FF:
    case AnsatzKind::RBM:
    case AnsatzKind::DBM: {
      FFParams ff;
      RBMParams rbm;
      DBMParams dbm;
      if (spec.kind == AnsatzKind::FF) ff = ff_from_flat(spec, params);
      if (spec.kind == AnsatzKind::RBM) rbm = rbm_from_flat(spec, params);
      if (spec.kind == AnsatzKind::DBM) dbm = dbm_from_flat(spec, params);
      for (std::int64_t i = 0; i < dim; ++i) {
        std::vector<double> enc = encode_input(linalg::index_digits(i, qudit_dims), spec.encoding);
        Eigen::Map<const Eigen::VectorXd> x(enc.data(), static_cast<Eigen::Index>(enc.size()));
        if (spec.kind == AnsatzKind::FF)
          psi.amplitudes(i) = ff_amplitude(ff, x);
        else if (spec.kind == AnsatzKind::RBM)
          psi.amplitudes(i) = rbm_amplitude(rbm, x);
        else
          psi.amplitudes(i) = dbm_amplitude(dbm, x);
      }
      break;
    }
    case AnsatzKind::FFSchmidt:
    case AnsatzKind::RBMSchmidt: {
      const int l = spec.n / 2;
      const std::int64_t half = std::int64_t{1} << l;
      FFParams ff;
      RBMParams rbm;
      if (spec.kind == AnsatzKind::FFSchmidt) ff = ff_from_flat(spec, params);
      if (spec.kind == AnsatzKind::RBMSchmidt) rbm = rbm_from_flat(spec, params);
      const std::vector<int> half_dims(l, 2);
      for (std::int64_t i = 0; i < half; ++i) {
        std::vector<double> enc = encode_input(linalg::index_digits(i, half_dims), spec.encoding);
        Eigen::Map<const Eigen::VectorXd> x(enc.data(), static_cast<Eigen::Index>(enc.size()));
        const Complex amp = spec.kind == AnsatzKind::FFSchmidt ? ff_amplitude(ff, x)
                                                               : rbm_amplitude(rbm, x);
        psi.amplitudes(i * half + i) = amp;
      }
      break;
    }
  }
  return linalg::normalize(psi);
}

}  // namespace qci::ansatz
