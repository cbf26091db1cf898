#pragma once

#include <limits>
#include <span>
#include <vector>

#include "qbattery/hermitian.hpp"

namespace qbattery {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Ascending Hamiltonian levels measured from the ground level (the minimum
/// is shifted to zero on construction). Degeneracies are kept.
class EnergySpectrum {
 public:
  explicit EnergySpectrum(std::vector<double> levels);

  static EnergySpectrum of(const Matrix& hamiltonian);
  /// h = |1><1|
  static EnergySpectrum qubit();
  /// Spectrum of h_1 + ... + h_n: level k with multiplicity C(n, k).
  static EnergySpectrum hamming(int n);

  std::span<const double> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t i) const { return levels_[i]; }

 private:
  std::vector<double> levels_;
};

/// Single-cell Hamiltonian |1><1|.
Matrix qubit_hamiltonian();
/// H^(n) = sum_i h_i on n qubits (diagonal, Hamming weight of the index).
Matrix hamming_hamiltonian(int n);

struct ErgotropyReport {
  double input_energy = 0.0;   ///< energy before the channel; equals output_energy for a bare state
  double output_energy = 0.0;  ///< Tr[rho H] measured from the ground level
  double ergotropy = 0.0;
  double passive_energy = 0.0;
  double entropy_nats = 0.0;
};

/// sum_l lambda_l E_l with lambda sorted descending and E ascending.
double passive_energy(std::span<const double> state_spectrum, const EnergySpectrum& hamiltonian);

/// -sum p ln p, with eigenvalues clipped at zero and 0 ln 0 = 0.
double von_neumann_entropy(std::span<const double> spectrum);
double von_neumann_entropy(const Matrix& rho);

ErgotropyReport ergotropy(const Matrix& rho, const Matrix& hamiltonian);

/// Qubit shortcut <1|rho|1> - lambda_min for h = |1><1|.
double ergotropy_qubit(double rho11, double lambda_min);

struct GibbsState {
  std::vector<double> populations;  ///< ordered as the spectrum levels
  double energy = 0.0;
  double entropy_nats = 0.0;
};

/// Thermal state exp(-beta H)/Z. beta = kInfiniteBeta selects the ground space.
GibbsState gibbs_state(double beta, const EnergySpectrum& hamiltonian);

/// Inverse temperature whose Gibbs entropy equals `entropy_nats`. Returns
/// kInfiniteBeta when the target does not exceed the ground-space entropy and
/// 0 when it reaches ln d.
double entropy_matched_beta(double entropy_nats, const EnergySpectrum& hamiltonian);

/// Tr[rho H] minus the energy of the Gibbs state with the same entropy.
double total_ergotropy(const Matrix& rho, const Matrix& hamiltonian);

/// Sum of single-site ergotropies of the marginals of an n-qubit state under
/// the non-interacting Hamiltonian h_1 + ... + h_n.
double local_ergotropy_product(const Matrix& rho, const Matrix& site_hamiltonian);

/// Work extractable with a perfect bath at inverse temperature beta:
/// Tr[rho H] - (S(rho) - ln Z_beta) / beta, entropies in nats.
double thermal_extractable_work(const Matrix& rho, const Matrix& hamiltonian, double beta);

}  // namespace qbattery
