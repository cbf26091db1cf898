#pragma once

#include <string>
#include <string_view>

#include "qbattery/ergotropy.hpp"
#include "qbattery/hermitian.hpp"

namespace qbattery {

enum class ChannelKind {
  kAmplitudeDamping,             ///< Phi_gamma
  kGeneralizedAmplitudeDamping,  ///< Phi_{gamma,eta}
  kDephasedAmplitudeDamping,     ///< D_{kappa,gamma}: amplitude damping followed by extra dephasing
};

/// One of the three phase-covariant qubit noise families. Immutable.
///
/// Every family acts in the energy basis as
///   rho00' = (1 - up) rho00 + down rho11
///   rho11' = up rho00 + (1 - down) rho11
///   rho01' = coherence rho01
/// with (up, down, coherence) fixed by the family parameters.
class QubitChannel {
 public:
  static QubitChannel amplitude_damping(double gamma);
  /// eta is restricted to [0, 1/2] (finite positive temperature).
  static QubitChannel generalized_amplitude_damping(double gamma, double eta);
  static QubitChannel dephased_amplitude_damping(double kappa, double gamma);

  ChannelKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double eta() const { return eta_; }
  double kappa() const { return kappa_; }

  double up_rate() const { return gamma_ * eta_; }
  double down_rate() const { return gamma_ * (1.0 - eta_); }
  double coherence_factor() const;

  /// Text form accepted by parse_channel, e.g. "gadc:gamma=0.5,eta=0.3".
  std::string to_string() const;

  friend bool operator==(const QubitChannel&, const QubitChannel&) = default;

 private:
  QubitChannel(ChannelKind kind, double gamma, double eta, double kappa)
      : kind_(kind), gamma_(gamma), eta_(eta), kappa_(kappa) {}

  ChannelKind kind_;
  double gamma_;
  double eta_;
  double kappa_;
};

/// Parses `adc:gamma=G`, `gadc:gamma=G,eta=H`, `dephadc:kappa=K,gamma=G`.
QubitChannel parse_channel(std::string_view spec);

/// Pure state sqrt(1-e)|0> + exp(i phase) sqrt(e)|1>.
struct CoherentInputState {
  double energy = 0.0;
  double phase = 0.0;

  ComplexVector vector() const;
  Matrix density() const;
};

Matrix apply_channel(const QubitChannel& channel, const Matrix& rho);

/// Built column by column from the action on |i><j|; see hermitian.hpp for
/// the vectorization convention.
Superoperator superoperator(const QubitChannel& channel);

/// Coherences scaled by sqrt(1 - kappa), populations untouched.
Superoperator pure_dephasing_superoperator(double kappa);

/// Mean output energy for a state of input energy e_in.
double output_energy(const QubitChannel& channel, double e_in);

struct OutputSpectrum {
  double plus = 0.0;   ///< larger eigenvalue
  double minus = 0.0;  ///< smaller eigenvalue
};

/// Closed-form eigenvalues of channel(|psi_e><psi_e|); independent of the phase.
OutputSpectrum output_eigenvalues(const QubitChannel& channel, double e);

enum class EntropyBase { kNats, kBits };

/// Von Neumann entropy of channel(|psi_e><psi_e|).
double output_entropy(const QubitChannel& channel, double e, EntropyBase base = EntropyBase::kNats);

/// Inverse temperature of channel(|0><0|) = Gibbs state; kInfiniteBeta when
/// the ground state is a fixed point.
double ground_image_beta(const QubitChannel& channel);

/// Ergotropy bookkeeping for channel(input) under h = |1><1|.
ErgotropyReport evaluate_output(const QubitChannel& channel, const Matrix& input);

}  // namespace qbattery
