#include "qbattery/mawer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "qbattery/capacitance.hpp"

namespace qbattery {

namespace {

constexpr double kDivergenceThreshold = 1e-12;

constexpr double kMinStart = 1e-6;

// Distance from e = 0 to the nearest complex zero of the output-spectrum
// discriminant q2 e^2 + q1 e + q0; chi(e)/e is analytic inside that disc.
double branch_radius(const QubitChannel& ch) {
  const double g = ch.gamma();
  double q2 = 0.0;
  double q1 = 0.0;
  double q0 = 1.0;
  switch (ch.kind()) {
    case ChannelKind::kAmplitudeDamping: q2 = -4.0 * g * (1.0 - g); break;
    case ChannelKind::kGeneralizedAmplitudeDamping: {
      const double a = 1.0 - 2.0 * ch.eta() * g;
      q2 = -4.0 * g * (1.0 - g);
      q1 = -2.0 * q2 * ch.eta();
      q0 = a * a;
      break;
    }
    case ChannelKind::kDephasedAmplitudeDamping:
      q2 = -4.0 * (1.0 - g) * (g - ch.kappa());
      q1 = -4.0 * (1.0 - g) * ch.kappa();
      break;
  }
  if (q0 == 0.0) return 0.0;
  if (q2 == 0.0) return q1 == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(q0 / q1);
  const std::complex<double> d = std::sqrt(std::complex<double>(q1 * q1 - 4.0 * q2 * q0));
  // the product of the roots is q0 / q2; take the smaller root without cancellation
  const std::complex<double> big = (q1 >= 0.0 ? -q1 - d : -q1 + d) / (2.0 * q2);
  return std::abs(q0 / q2) / std::abs(big);
}

std::vector<double> sample_energies(const QubitChannel& ch, const MawerNumericOptions& o) {
  const double start = std::clamp(branch_radius(ch) / 8.0, kMinStart, o.start);
  std::vector<double> e(static_cast<std::size_t>(o.halvings) + 1);
  for (int k = 0; k <= o.halvings; ++k) e[k] = std::ldexp(start, -k);
  return e;
}

// chi at each requested energy via the hull of max_output_ergotropy on a
// uniform grid merged with the requested points.
std::vector<double> chi_by_envelope(const QubitChannel& ch, const std::vector<double>& at, int points) {
  std::vector<double> grid = uniform_grid(points);
  grid.insert(grid.end(), at.begin(), at.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = max_output_ergotropy(ch, grid[i]);
  const auto hull = concave_envelope(grid, values, EnvelopeBudget::kAtMost);

  std::vector<double> out;
  out.reserve(at.size());
  for (double e : at) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), e);
    out.push_back(hull[static_cast<std::size_t>(it - grid.begin())]);
  }
  return out;
}

}  // namespace

double mawer_closed_form(const QubitChannel& channel, MawerFlavor flavor) {
  const double g = channel.gamma();
  switch (channel.kind()) {
    case ChannelKind::kAmplitudeDamping: return 1.0 - g;
    case ChannelKind::kGeneralizedAmplitudeDamping:
      if (flavor == MawerFlavor::kUnrestricted)
        throw NotEstablishedError("unrestricted MAWER of generalized amplitude damping: only bounded below by " +
                                  to_string(MawerFlavor::kLocalSeparable));
      // chi vanishes identically at gamma = 1, including the 0/0 point eta = 1/2
      if (g == 1.0) return 0.0;
      return (1.0 - g) / (1.0 - 2.0 * channel.eta() * g);
    case ChannelKind::kDephasedAmplitudeDamping:
      if (flavor == MawerFlavor::kUnrestricted || flavor == MawerFlavor::kSeparable)
        throw NotEstablishedError("MAWER flavor " + to_string(flavor) + " of dephased amplitude damping is open");
      if (channel.kappa() * (1.0 - g) >= g) return std::max(0.0, 1.0 - 2.0 * g);
      return (1.0 - g) * (1.0 - channel.kappa());
  }
  return 0.0;
}

double mawer_numeric(const QubitChannel& channel, const MawerNumericOptions& options) {
  require(options.start > 0.0 && options.start <= 1.0, "mawer_numeric: start energy must lie in (0, 1]");
  require(options.halvings >= 0 && options.halvings <= 30, "mawer_numeric: halvings out of range");

  const auto energies = sample_energies(channel, options);
  std::vector<double> chis;
  if (options.route == ChiRoute::kClosedForm) {
    if (chi(channel, 0.0) > kDivergenceThreshold) return std::numeric_limits<double>::infinity();
    for (double e : energies) chis.push_back(chi(channel, e));
  } else {
    std::vector<double> at = energies;
    at.push_back(0.0);
    chis = chi_by_envelope(channel, at, options.envelope_points);
    if (chis.back() > kDivergenceThreshold) return std::numeric_limits<double>::infinity();
    chis.pop_back();
  }

  // Neville-style table: row k holds estimates from e_0..e_k, column j has
  // the first j error orders removed.
  const std::size_t m = energies.size();
  std::vector<double> row(m);
  for (std::size_t k = 0; k < m; ++k) row[k] = chis[k] / energies[k];
  for (std::size_t j = 1; j < m; ++j) {
    const double factor = std::ldexp(1.0, static_cast<int>(j));
    for (std::size_t k = m - 1; k >= j; --k) row[k] = (factor * row[k] - row[k - 1]) / (factor - 1.0);
  }
  return row[m - 1];
}

double classical_strategy_ratio(const QubitChannel& channel, Extraction extraction) {
  require(channel.kind() != ChannelKind::kDephasedAmplitudeDamping,
          "classical_strategy_ratio: supported for amplitude damping families only");
  const Matrix excited = CoherentInputState{1.0, 0.0}.density();
  const Matrix out = apply_channel(channel, excited);
  const Matrix h = qubit_hamiltonian();
  if (extraction == Extraction::kLocal) return ergotropy(out, h).ergotropy;

  const double beta = ground_image_beta(channel);
  // beta = 0 only when the channel maps everything to the maximally mixed state
  if (beta == 0.0) return 0.0;
  return thermal_extractable_work(out, h, beta);
}

std::optional<double> relative_gap(const QubitChannel& channel) {
  require(channel.kind() == ChannelKind::kGeneralizedAmplitudeDamping,
          "relative_gap: defined for generalized amplitude damping only");
  // at gamma = 1 the output ignores the input and r vanishes up to rounding
  if (channel.gamma() == 1.0) return std::nullopt;
  const double r = max_output_ergotropy(channel, 1.0) / optimal_input_energy(channel, 1.0);
  if (r <= 0.0) return std::nullopt;
  return (mawer_closed_form(channel, MawerFlavor::kLocalSeparable) - r) / r;
}

MawerResult analyze_mawer(const QubitChannel& channel, MawerFlavor flavor) {
  MawerResult result{channel, flavor, mawer_closed_form(channel, flavor), mawer_numeric(channel), std::nullopt};
  if (channel.kind() != ChannelKind::kDephasedAmplitudeDamping)
    result.classical_ratio = classical_strategy_ratio(channel, Extraction::kNonlocal);
  return result;
}

std::string to_string(MawerFlavor flavor) {
  switch (flavor) {
    case MawerFlavor::kUnrestricted: return "unrestricted";
    case MawerFlavor::kSeparable: return "sep";
    case MawerFlavor::kLocal: return "loc";
    case MawerFlavor::kLocalSeparable: return "loc_sep";
  }
  return "?";
}

}  // namespace qbattery
