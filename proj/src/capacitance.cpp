#include "qbattery/capacitance.hpp"

#include <algorithm>
#include <cmath>

namespace qbattery {

namespace {

void require_energy(double e, const char* where) {
  require(std::isfinite(e) && e >= 0.0 && e <= 1.0, std::string(where) + ": energy must lie in [0, 1]");
}

bool strong_dephasing(const QubitChannel& ch) {
  // kappa >= gamma / (1 - gamma), written without the division
  return ch.kind() == ChannelKind::kDephasedAmplitudeDamping && ch.kappa() * (1.0 - ch.gamma()) >= ch.gamma();
}

}  // namespace

double max_output_ergotropy_fixed(const QubitChannel& channel, double e) {
  require_energy(e, "max_output_ergotropy_fixed");
  return output_energy(channel, e) - output_eigenvalues(channel, e).minus;
}

double peak_input_energy(const QubitChannel& channel) {
  const double g = channel.gamma();
  if (g == 0.0) return 1.0;
  switch (channel.kind()) {
    case ChannelKind::kAmplitudeDamping: return std::min(1.0, 1.0 / (2.0 * std::sqrt(g)));
    case ChannelKind::kGeneralizedAmplitudeDamping: {
      const double eta = channel.eta();
      return std::min(1.0, eta + std::sqrt(1.0 - 4.0 * g * eta * (1.0 - eta)) / (2.0 * std::sqrt(g)));
    }
    case ChannelKind::kDephasedAmplitudeDamping: {
      const double k = channel.kappa();
      if (k >= 4.0 * g - 1.0) return 1.0;
      // (-k + sqrt(g - k(1-g))) / (2(g - k)) with the numerator rationalized,
      // which stays finite at g == k.
      return std::min(1.0, (1.0 + k) / (2.0 * (k + std::sqrt(g - k * (1.0 - g)))));
    }
  }
  return 1.0;
}

double optimal_input_energy(const QubitChannel& channel, double budget) {
  require_energy(budget, "optimal_input_energy");
  return std::min(budget, peak_input_energy(channel));
}

double max_output_ergotropy(const QubitChannel& channel, double e) {
  return max_output_ergotropy_fixed(channel, optimal_input_energy(channel, e));
}

std::vector<double> concave_envelope(std::span<const double> grid, std::span<const double> values,
                                     EnvelopeBudget budget) {
  require(!grid.empty(), "concave_envelope: empty grid");
  require(grid.size() == values.size(), "concave_envelope: grid and values differ in length");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(std::isfinite(grid[i]) && std::isfinite(values[i]), "concave_envelope: non-finite sample");
    require(grid[i] >= 0.0 && grid[i] <= 1.0, "concave_envelope: grid must lie in [0, 1]");
    require(i == 0 || grid[i] > grid[i - 1], "concave_envelope: grid must be strictly ascending");
  }

  // Monotone chain, upper half only: drop the middle point whenever the
  // turn is not strictly clockwise.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      const double cross = (grid[a] - grid[o]) * (values[i] - values[o]) - (values[a] - values[o]) * (grid[i] - grid[o]);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  std::vector<double> out(grid.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (seg + 1 < hull.size() && hull[seg + 1] < i) ++seg;
    const std::size_t a = hull[seg];
    if (a == i || seg + 1 == hull.size()) {
      out[i] = values[a];
      continue;
    }
    const std::size_t b = hull[seg + 1];
    if (b == i) {
      out[i] = values[b];
      continue;
    }
    const double t = (grid[i] - grid[a]) / (grid[b] - grid[a]);
    out[i] = values[a] + t * (values[b] - values[a]);
  }

  if (budget == EnvelopeBudget::kAtMost) {
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
  }
  return out;
}

double chi(const QubitChannel& channel, double e) {
  require_energy(e, "chi");
  if (strong_dephasing(channel)) return e * std::max(0.0, 1.0 - 2.0 * channel.gamma());
  return max_output_ergotropy(channel, e);
}

CapacitanceBounds capacitance_bounds(const QubitChannel& channel, double e) {
  return {chi(channel, e), output_energy(channel, e)};
}

Curvature fixed_energy_curvature(const QubitChannel& channel) {
  if (channel.kind() != ChannelKind::kDephasedAmplitudeDamping) return Curvature::kConcave;
  const double lhs = channel.kappa() * (1.0 - channel.gamma());
  if (lhs < channel.gamma()) return Curvature::kConcave;
  if (lhs == channel.gamma()) return Curvature::kLinear;
  return Curvature::kConvex;
}

std::string regime_label(const QubitChannel& channel, double e) {
  const std::string cap = e <= peak_input_energy(channel) ? "uncapped" : "capped";
  if (channel.kind() != ChannelKind::kDephasedAmplitudeDamping) return cap;
  return to_string(fixed_energy_curvature(channel)) + "-" + cap;
}

CapacitanceCurve sample_curve(const QubitChannel& channel, CurveKind kind, std::vector<double> grid) {
  CapacitanceCurve curve{channel, kind, std::move(grid), {}, {}};
  curve.values.reserve(curve.grid.size());
  curve.branch_labels.reserve(curve.grid.size());
  for (double e : curve.grid) {
    switch (kind) {
      case CurveKind::kFixedEnergy: curve.values.push_back(max_output_ergotropy_fixed(channel, e)); break;
      case CurveKind::kMaxErgotropy: curve.values.push_back(max_output_ergotropy(channel, e)); break;
      case CurveKind::kChi: curve.values.push_back(chi(channel, e)); break;
      case CurveKind::kUpperBound: curve.values.push_back(output_energy(channel, e)); break;
    }
    curve.branch_labels.push_back(regime_label(channel, e));
  }
  return curve;
}

std::vector<double> uniform_grid(int points, double lo, double hi) {
  require(points >= 2, "uniform_grid: need at least two points");
  require(hi > lo, "uniform_grid: empty interval");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kFixedEnergy: return "E_bar";
    case CurveKind::kMaxErgotropy: return "E_max";
    case CurveKind::kChi: return "chi";
    case CurveKind::kUpperBound: return "upper_bound";
  }
  return "?";
}

std::string to_string(Curvature curvature) {
  switch (curvature) {
    case Curvature::kConcave: return "concave";
    case Curvature::kLinear: return "linear";
    case Curvature::kConvex: return "convex";
  }
  return "?";
}

}  // namespace qbattery
