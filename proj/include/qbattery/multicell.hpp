#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qbattery/channels.hpp"

namespace qbattery {

inline constexpr int kMaxProductSites = 20;
inline constexpr double kGapThreshold = 1e-9;

/// Factorized pure input: site j in sqrt(1-e_j)|0> + exp(i phi_j) sqrt(e_j)|1>.
/// An empty phase list means all phases are zero.
struct ProductInputSpec {
  std::vector<double> energies;
  std::vector<double> phases;

  int sites() const { return static_cast<int>(energies.size()); }
};

/// Ergotropy of the n-fold product output under the Hamming-weight
/// Hamiltonian, from sorted products of the per-site output eigenvalues.
double product_output_ergotropy(const QubitChannel& channel, const ProductInputSpec& spec);

/// Same quantity from the full 2^n x 2^n output matrix (n <= 12).
double product_output_ergotropy_dense(const QubitChannel& channel, const ProductInputSpec& spec);

/// channel applied to every qubit of an n-qubit operator.
Matrix apply_channel_all_sites(const QubitChannel& channel, const Matrix& rho);

struct ClassicalStateResult {
  double ergotropy = 0.0;        ///< global ergotropy under the Hamming Hamiltonian
  double local_ergotropy = 0.0;  ///< sum of single-site marginal ergotropies
};

/// Output of the coherence-free input with floor(E) excited cells and the
/// remaining n - floor(E) cells in the ground state (dense, n <= 12).
ClassicalStateResult classical_state_analysis(const QubitChannel& channel, double total_energy, int n);

struct MonotonicityOptions {
  int product_grid = 21;          ///< per-site energy grid points on [0, 1]
  int entangled_samples = 10000;  ///< accepted Haar samples per n >= 2
  std::uint64_t seed = 42;
  double tolerance = 1e-6;
  double shell_width = 2e-3;  ///< accepted energies lie in [E - shell_width, E]
  long long max_draws_per_sample = 2000;
};

struct MonotonicityReport {
  bool non_decreasing = true;
  std::vector<double> estimates;         ///< estimates[n - 1]
  std::vector<long long> accepted;       ///< Haar samples accepted per n
  std::vector<std::string> best_source;  ///< "product" or "entangled" per n
  std::string witness;                   ///< first violation, empty if none
};

/// Sampled lower estimate of the n-cell maximum output ergotropy at total
/// input energy <= E, for n = 1..n_max (n_max <= 8), and whether it is
/// non-decreasing in n within tolerance.
MonotonicityReport monotonicity_check(const QubitChannel& channel, double total_energy, int n_max,
                                      const MonotonicityOptions& options = {});

/// Real two-qubit amplitudes on |00>, |01>, |10>, |11>.
using TwoQubitCoefficients = std::array<double, 4>;

/// ergotropy(channel^{⊗2}(psi), H^(2)) - 2 max_output_ergotropy(channel, <H^(2)>/2).
double two_qubit_gap(const QubitChannel& channel, const TwoQubitCoefficients& c);

struct SearchResult {
  double best_gap = 0.0;
  TwoQubitCoefficients coefficients{};
  double energy = 0.0;  ///< per-cell input energy e
  int resolution = 0;
  long long evaluated = 0;
  double family_gap = 0.0;  ///< gap of sqrt(1-e)|00> + sqrt(e)|11>
};

/// Deterministic grid over real two-qubit pure states with <H^(2)> = 2e:
/// w = c11^2 over [max(0, 2e-1), e] and theta over [0, pi] with
/// c01 = sqrt(2e - 2w) cos(theta), c10 = sqrt(2e - 2w) sin(theta),
/// c00 = sqrt(1 - 2e + w). resolution points per axis, no early exit.
SearchResult superadditivity_search(const QubitChannel& channel, double e, int resolution = 500);

}  // namespace qbattery
