#include "qbattery/channels.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace qbattery {

namespace {

void require_unit_interval(double x, const char* name) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, std::string(name) + " must lie in [0, 1]");
}

void require_energy(double e, const char* where) {
  require(std::isfinite(e) && e >= 0.0 && e <= 1.0, std::string(where) + ": energy must lie in [0, 1]");
}

// sqrt of a discriminant that can dip below zero by rounding only
double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, const std::string& key) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  require(ec == std::errc() && ptr == last, "parse_channel: bad number for '" + key + "': '" + text + "'");
  return value;
}

}  // namespace

QubitChannel QubitChannel::amplitude_damping(double gamma) {
  require_unit_interval(gamma, "gamma");
  return {ChannelKind::kAmplitudeDamping, gamma, 0.0, 0.0};
}

QubitChannel QubitChannel::generalized_amplitude_damping(double gamma, double eta) {
  require_unit_interval(gamma, "gamma");
  require(std::isfinite(eta) && eta >= 0.0 && eta <= 0.5, "eta must lie in [0, 1/2]");
  return {ChannelKind::kGeneralizedAmplitudeDamping, gamma, eta, 0.0};
}

QubitChannel QubitChannel::dephased_amplitude_damping(double kappa, double gamma) {
  require_unit_interval(kappa, "kappa");
  require_unit_interval(gamma, "gamma");
  return {ChannelKind::kDephasedAmplitudeDamping, gamma, 0.0, kappa};
}

double QubitChannel::coherence_factor() const { return std::sqrt(1.0 - kappa_) * std::sqrt(1.0 - gamma_); }

std::string QubitChannel::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case ChannelKind::kAmplitudeDamping: os << "adc:gamma=" << gamma_; break;
    case ChannelKind::kGeneralizedAmplitudeDamping: os << "gadc:gamma=" << gamma_ << ",eta=" << eta_; break;
    case ChannelKind::kDephasedAmplitudeDamping: os << "dephadc:kappa=" << kappa_ << ",gamma=" << gamma_; break;
  }
  return os.str();
}

QubitChannel parse_channel(std::string_view spec) {
  const auto colon = spec.find(':');
  require(colon != std::string_view::npos, "parse_channel: expected '<family>:<key>=<value>,...'");
  const std::string family = trim(spec.substr(0, colon));

  std::map<std::string, double> params;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    require(eq != std::string::npos, "parse_channel: expected key=value, got '" + item + "'");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    require(!params.contains(key), "parse_channel: duplicate key '" + key + "'");
    params[key] = parse_number(trim(std::string_view(item).substr(eq + 1)), key);
  }

  auto take = [&](const std::string& key) {
    const auto it = params.find(key);
    require(it != params.end(), "parse_channel: missing '" + key + "' for " + family);
    const double v = it->second;
    params.erase(it);
    return v;
  };

  QubitChannel channel = [&] {
    if (family == "adc") return QubitChannel::amplitude_damping(take("gamma"));
    if (family == "gadc") {
      const double gamma = take("gamma");
      return QubitChannel::generalized_amplitude_damping(gamma, take("eta"));
    }
    if (family == "dephadc") {
      const double kappa = take("kappa");
      return QubitChannel::dephased_amplitude_damping(kappa, take("gamma"));
    }
    throw ValidationError("parse_channel: unknown channel family '" + family + "'");
  }();
  require(params.empty(), "parse_channel: unexpected key '" + (params.empty() ? "" : params.begin()->first) + "'");
  return channel;
}

ComplexVector CoherentInputState::vector() const {
  require_energy(energy, "CoherentInputState");
  ComplexVector psi(2);
  psi << std::sqrt(1.0 - energy), std::polar(std::sqrt(energy), phase);
  return psi;
}

Matrix CoherentInputState::density() const { return projector(vector()); }

namespace {

// The linear extension used both for states and for the basis |i><j|.
Matrix apply_linear(const QubitChannel& ch, const Matrix& m) {
  const double up = ch.up_rate();
  const double down = ch.down_rate();
  const double c = ch.coherence_factor();
  Matrix out(2, 2);
  out(0, 0) = (1.0 - up) * m(0, 0) + down * m(1, 1);
  out(1, 1) = up * m(0, 0) + (1.0 - down) * m(1, 1);
  out(0, 1) = c * m(0, 1);
  out(1, 0) = c * m(1, 0);
  return out;
}

}  // namespace

Matrix apply_channel(const QubitChannel& channel, const Matrix& rho) {
  require(rho.rows() == 2 && rho.cols() == 2, "apply: input must be a 2x2 density matrix");
  require_hermitian(rho, "apply");
  return apply_linear(channel, rho);
}

Superoperator superoperator(const QubitChannel& channel) {
  Matrix s = Matrix::Zero(4, 4);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      Matrix basis = Matrix::Zero(2, 2);
      basis(i, j) = 1.0;
      const Matrix image = apply_linear(channel, basis);
      s.col(i + 2 * j) = Eigen::Map<const ComplexVector>(image.data(), 4);
    }
  }
  return Superoperator(std::move(s));
}

Superoperator pure_dephasing_superoperator(double kappa) {
  require_unit_interval(kappa, "kappa");
  Matrix s = Matrix::Identity(4, 4);
  s(1, 1) = s(2, 2) = std::sqrt(1.0 - kappa);
  return Superoperator(std::move(s));
}

double output_energy(const QubitChannel& channel, double e_in) {
  require_energy(e_in, "output_energy");
  const double g = channel.gamma();
  switch (channel.kind()) {
    case ChannelKind::kGeneralizedAmplitudeDamping: return (1.0 - g) * e_in + g * channel.eta();
    case ChannelKind::kAmplitudeDamping:
    case ChannelKind::kDephasedAmplitudeDamping: return (1.0 - g) * e_in;
  }
  return 0.0;
}

OutputSpectrum output_eigenvalues(const QubitChannel& channel, double e) {
  require_energy(e, "output_eigenvalues");
  const double g = channel.gamma();
  double root = 0.0;
  switch (channel.kind()) {
    case ChannelKind::kAmplitudeDamping: root = safe_sqrt(1.0 - 4.0 * e * e * g * (1.0 - g)); break;
    case ChannelKind::kGeneralizedAmplitudeDamping: {
      const double eta = channel.eta();
      const double a = 1.0 - 2.0 * eta * g;
      root = safe_sqrt(a * a + 4.0 * g * (1.0 - g) * (2.0 * eta - e) * e);
      break;
    }
    case ChannelKind::kDephasedAmplitudeDamping: {
      const double k = channel.kappa();
      root = safe_sqrt(1.0 - 4.0 * (1.0 - g) * e * (e * (g - k) + k));
      break;
    }
  }
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

double output_entropy(const QubitChannel& channel, double e, EntropyBase base) {
  const auto [plus, minus] = output_eigenvalues(channel, e);
  const double lambda[] = {plus, minus};
  const double nats = von_neumann_entropy(lambda);
  return base == EntropyBase::kNats ? nats : nats / std::log(2.0);
}

double ground_image_beta(const QubitChannel& channel) {
  const double p = channel.up_rate();
  if (p == 0.0) return kInfiniteBeta;
  return -std::log(p / (1.0 - p));
}

ErgotropyReport evaluate_output(const QubitChannel& channel, const Matrix& input) {
  const Matrix h = qubit_hamiltonian();
  auto report = ergotropy(apply_channel(channel, input), h);
  report.input_energy = input(1, 1).real();
  return report;
}

}  // namespace qbattery
