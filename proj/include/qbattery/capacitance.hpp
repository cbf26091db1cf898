#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbattery/channels.hpp"

namespace qbattery {

inline constexpr int kDefaultCurvePoints = 1001;

/// Single-shot output ergotropy maximized over inputs of energy exactly e
/// (pure coherent inputs suffice): output_energy(e) - lambda_minus(e).
double max_output_ergotropy_fixed(const QubitChannel& channel, double e);

/// Maximizer of max_output_ergotropy_fixed over the whole interval [0, 1].
double peak_input_energy(const QubitChannel& channel);

/// Input energy in [0, budget] that maximizes the fixed-energy curve.
double optimal_input_energy(const QubitChannel& channel, double budget);

/// Single-shot output ergotropy with input energy at most e.
double max_output_ergotropy(const QubitChannel& channel, double e);

enum class EnvelopeBudget {
  kAtMost,  ///< mixtures with mean energy <= e (non-decreasing envelope)
  kExact,   ///< mixtures with mean energy == e (plain upper concave hull)
};

/// Upper concave envelope of sampled points (grid[i], values[i]) evaluated
/// back on the grid. The first sample anchors the envelope.
std::vector<double> concave_envelope(std::span<const double> grid, std::span<const double> values,
                                     EnvelopeBudget budget = EnvelopeBudget::kAtMost);

/// Local (and separable-input local) work capacitance: concave envelope of
/// max_output_ergotropy under the mean-energy budget, in closed form.
double chi(const QubitChannel& channel, double e);

struct CapacitanceBounds {
  double lower = 0.0;  ///< chi
  double upper = 0.0;  ///< mean output energy
};

/// Bracket on the unrestricted ergotropic capacitance.
CapacitanceBounds capacitance_bounds(const QubitChannel& channel, double e);

enum class Curvature { kConcave, kLinear, kConvex };

/// Curvature class of the fixed-energy curve. Amplitude damping and its
/// thermal generalization are always concave; with extra dephasing the sign
/// flips at kappa = gamma / (1 - gamma).
Curvature fixed_energy_curvature(const QubitChannel& channel);

enum class CurveKind { kFixedEnergy, kMaxErgotropy, kChi, kUpperBound };

struct CapacitanceCurve {
  QubitChannel channel;
  CurveKind kind;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<std::string> branch_labels;
};

/// Regime tag at energy e: "uncapped"/"capped" with respect to the peak
/// input energy, prefixed by the curvature class for dephased channels.
std::string regime_label(const QubitChannel& channel, double e);

CapacitanceCurve sample_curve(const QubitChannel& channel, CurveKind kind, std::vector<double> grid);

/// points equally spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(int points, double lo = 0.0, double hi = 1.0);

std::string to_string(CurveKind kind);
std::string to_string(Curvature curvature);

}  // namespace qbattery
