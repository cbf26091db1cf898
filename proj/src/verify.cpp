#include "qbattery/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qbattery/capacitance.hpp"
#include "qbattery/mawer.hpp"
#include "qbattery/multicell.hpp"

namespace qbattery {

namespace {

using Rng = std::mt19937_64;

std::string describe(const QubitChannel& ch, const std::string& extra = {}) {
  return extra.empty() ? ch.to_string() : ch.to_string() + " " + extra;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Records one checked value; the outcome fails on the first value above
// the threshold and keeps that case as witness.
void record(SuiteOutcome& out, double value, const std::string& where) {
  ++out.checks;
  if (!(value <= out.threshold)) {
    if (out.passed) out.witness = where + ": " + num(value) + " > " + num(out.threshold);
    out.passed = false;
  }
  if (std::isnan(value) || value > out.max_deviation) out.max_deviation = value;
}

Matrix random_qubit_state(Rng& rng) {
  std::normal_distribution<double> g;
  Matrix a(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

QubitChannel random_channel(Rng& rng) {
  std::uniform_real_distribution<double> u;
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return QubitChannel::amplitude_damping(u(rng));
    case 1: return QubitChannel::generalized_amplitude_damping(u(rng), 0.5 * u(rng));
    default: return QubitChannel::dephased_amplitude_damping(u(rng), u(rng));
  }
}

std::vector<QubitChannel> gadc_cells() {
  std::vector<QubitChannel> v;
  for (double g : {0.2, 0.5, 0.8})
    for (double eta : {0.0, 0.2, 0.4}) v.push_back(QubitChannel::generalized_amplitude_damping(g, eta));
  return v;
}

std::vector<QubitChannel> monotonicity_channels() {
  return {QubitChannel::amplitude_damping(0.3),
          QubitChannel::amplitude_damping(0.7),
          QubitChannel::generalized_amplitude_damping(0.5, 0.3),
          QubitChannel::generalized_amplitude_damping(0.2, 0.1),
          QubitChannel::dephased_amplitude_damping(0.3, 0.2),
          QubitChannel::dephased_amplitude_damping(0.8, 0.4)};
}

SuiteOutcome covariance(const VerifyOptions& o) {
  SuiteOutcome out{"covariance", true, 0.0, 1e-12, 0, {}};
  Rng rng(o.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (int s = 0; s < o.samples; ++s) {
    const QubitChannel ch = o.channel.value_or(random_channel(rng));
    const Matrix rho = random_qubit_state(rng);
    Matrix u = Matrix::Identity(2, 2);
    u(1, 1) = std::polar(1.0, phase(rng));
    const Matrix lhs = apply_channel(ch, u * rho * u.adjoint());
    const Matrix rhs = u * apply_channel(ch, rho) * u.adjoint();
    record(out, (lhs - rhs).cwiseAbs().maxCoeff(), describe(ch, "phase covariance"));

    const Matrix choi = superoperator(ch).choi();
    record(out, -eigenvalues_hermitian(choi).minCoeff(), describe(ch, "Choi positivity"));
    const int dims[] = {2, 2};
    const int keep[] = {0};
    record(out, (partial_trace(choi, dims, keep) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
           describe(ch, "trace preservation"));
  }
  return out;
}

SuiteOutcome additivity(const VerifyOptions& o) {
  SuiteOutcome out{"additivity", true, 0.0, 1e-8, 0, {}};
  const int n_max = o.n.value_or(8);
  require(n_max >= 1 && n_max <= kMaxQubits, "additivity: n out of range");
  Rng rng(o.seed);
  std::vector<Matrix> hamiltonians;
  for (int n = 1; n <= n_max; ++n) hamiltonians.push_back(hamming_hamiltonian(n));
  for (int s = 0; s < o.samples; ++s) {
    const Matrix rho = random_qubit_state(rng);
    const double single = ergotropy(rho, qubit_hamiltonian()).ergotropy;
    Matrix power = rho;
    for (int n = 1; n <= n_max; ++n) {
      if (n > 1) power = tensor(power, rho).eval();
      const double many = ergotropy(power, hamiltonians[n - 1]).ergotropy;
      record(out, std::abs(many - n * single), "sample " + std::to_string(s) + " n=" + std::to_string(n));
    }
  }
  return out;
}

SuiteOutcome monotonicity(const VerifyOptions& o) {
  SuiteOutcome out{"monotonicity", true, 0.0, 1e-6, 0, {}};
  MonotonicityOptions mo;
  mo.seed = o.seed;
  mo.tolerance = out.threshold;
  const int n_max = o.n.value_or(3);
  const auto channels = o.channel ? std::vector<QubitChannel>{*o.channel} : monotonicity_channels();
  const auto energies = o.energy ? std::vector<double>{*o.energy} : std::vector<double>{0.5, 1.0};
  for (const auto& ch : channels) {
    for (double e : energies) {
      const auto report = monotonicity_check(ch, e, n_max, mo);
      double drop = 0.0;
      for (std::size_t k = 1; k < report.estimates.size(); ++k)
        drop = std::max(drop, report.estimates[k - 1] - report.estimates[k]);
      record(out, drop, describe(ch, "E=" + num(e) + (report.witness.empty() ? "" : " " + report.witness)));
    }
  }
  return out;
}

// Brute-force mixture optimum at each grid point: best single point or
// two-point mixture with mean energy at most grid[k].
std::vector<double> two_point_optimum(const std::vector<double>& x, const std::vector<double>& f) {
  std::vector<double> best(x.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      best[k] = std::max(best[k], f[i]);
      for (std::size_t j = k + 1; j < x.size(); ++j)
        best[k] = std::max(best[k], f[i] + (f[j] - f[i]) * (x[k] - x[i]) / (x[j] - x[i]));
    }
  }
  return best;
}

SuiteOutcome envelope(const VerifyOptions& o) {
  SuiteOutcome out{"envelope", true, 0.0, 1e-8, 0, {}};
  Rng rng(o.seed);
  std::uniform_real_distribution<double> u;
  for (int s = 0; s < o.samples; ++s) {
    const int m = std::uniform_int_distribution<int>(3, 40)(rng);
    std::vector<double> x{0.0};
    std::vector<double> f{0.0};
    for (int i = 1; i < m; ++i) {
      x.push_back(u(rng));
      f.push_back(u(rng));
    }
    std::sort(x.begin() + 1, x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    f.resize(x.size());
    const auto hull = concave_envelope(x, f);
    const auto oracle = two_point_optimum(x, f);
    for (std::size_t k = 0; k < x.size(); ++k)
      record(out, std::abs(hull[k] - oracle[k]), "random curve " + std::to_string(s) + " point " + std::to_string(k));
  }

  // chi agrees with the hull of the sampled single-shot curve
  const auto grid = uniform_grid(kDefaultCurvePoints);
  std::vector<QubitChannel> channels = {QubitChannel::amplitude_damping(0.6),
                                        QubitChannel::generalized_amplitude_damping(0.5, 0.3),
                                        QubitChannel::dephased_amplitude_damping(0.9, 0.4),
                                        QubitChannel::dephased_amplitude_damping(0.1, 0.6)};
  if (o.channel) channels = {*o.channel};
  for (const auto& ch : channels) {
    std::vector<double> values;
    for (double e : grid) values.push_back(max_output_ergotropy(ch, e));
    const auto hull = concave_envelope(grid, values);
    for (std::size_t k = 0; k < grid.size(); ++k)
      record(out, std::abs(hull[k] - chi(ch, grid[k])), describe(ch, "chi at e=" + num(grid[k])));
  }
  return out;
}

SuiteOutcome theorem1(const VerifyOptions& o) {
  SuiteOutcome out{"theorem1", true, 0.0, 1e-6, 0, {}};
  const auto [na, nb] = o.grid.value_or(std::pair{20, 10});
  require(na >= 2 && nb >= 2, "theorem1: grid axes need at least two points");
  auto check = [&](const QubitChannel& ch, ChiRoute route) {
    MawerNumericOptions mo;
    mo.route = route;
    const double closed = mawer_closed_form(ch, MawerFlavor::kLocalSeparable);
    record(out, std::abs(mawer_numeric(ch, mo) - closed),
           describe(ch, route == ChiRoute::kEnvelope ? "envelope route" : "closed-form route"));
  };
  if (o.channel) {
    check(*o.channel, ChiRoute::kClosedForm);
    return out;
  }
  for (double g : uniform_grid(na)) {
    check(QubitChannel::amplitude_damping(g), ChiRoute::kClosedForm);
    for (double eta : uniform_grid(nb, 0.0, 0.5))
      check(QubitChannel::generalized_amplitude_damping(g, eta), ChiRoute::kClosedForm);
    for (double k : uniform_grid(nb)) {
      // skip a narrow band around the curvature boundary kappa = gamma / (1 - gamma)
      if (g < 1.0 && std::abs(k - g / (1.0 - g)) < 1e-3) continue;
      check(QubitChannel::dephased_amplitude_damping(k, g), ChiRoute::kClosedForm);
      check(QubitChannel::dephased_amplitude_damping(k, g), ChiRoute::kEnvelope);
    }
  }
  return out;
}

SuiteOutcome superadditivity(const VerifyOptions& o) {
  SuiteOutcome out{"superadditivity", true, -std::numeric_limits<double>::infinity(), kGapThreshold, 0, {}};
  const auto channels = o.channel ? std::vector<QubitChannel>{*o.channel} : gadc_cells();
  const auto energies = o.energy ? std::vector<double>{*o.energy} : std::vector<double>{0.3, 0.6, 0.9};
  for (const auto& ch : channels) {
    for (double e : energies) {
      const auto r = superadditivity_search(ch, e, o.resolution);
      std::ostringstream where;
      where.precision(17);
      where << "e=" << e << " argmax c=(" << r.coefficients[0] << ", " << r.coefficients[1] << ", "
            << r.coefficients[2] << ", " << r.coefficients[3] << ")";
      record(out, r.best_gap, describe(ch, where.str()));
    }
  }
  return out;
}

const std::map<std::string, SuiteOutcome (*)(const VerifyOptions&)>& registry() {
  static const std::map<std::string, SuiteOutcome (*)(const VerifyOptions&)> r = {
      {"covariance", covariance}, {"additivity", additivity},   {"monotonicity", monotonicity},
      {"envelope", envelope},     {"theorem1", theorem1},       {"superadditivity", superadditivity},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"covariance", "additivity", "monotonicity",
                                                 "envelope",   "theorem1",   "superadditivity"};
  return names;
}

SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options) {
  const auto it = registry().find(name);
  require(it != registry().end(), "unknown suite '" + name + "'");
  require(options.samples >= 1, "verify: samples must be positive");
  return it->second(options);
}

std::string verify_report_json(const std::vector<SuiteOutcome>& outcomes, const VerifyOptions& options) {
  nlohmann::ordered_json doc;
  doc["seed"] = options.seed;
  bool all = true;
  doc["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : outcomes) {
    all = all && s.passed;
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["passed"] = s.passed;
    j["max_deviation"] = s.max_deviation;
    j["threshold"] = s.threshold;
    j["checks"] = s.checks;
    if (!s.witness.empty()) j["witness"] = s.witness;
    doc["suites"].push_back(std::move(j));
  }
  doc["passed"] = all;
  return doc.dump(2);
}

}  // namespace qbattery
