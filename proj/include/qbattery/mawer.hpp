#pragma once

#include <optional>
#include <string>

#include "qbattery/channels.hpp"

namespace qbattery {

enum class MawerFlavor { kUnrestricted, kSeparable, kLocal, kLocalSeparable };

/// Closed-form maximal asymptotic work/energy ratio. Throws
/// NotEstablishedError where no closed form is known (unrestricted flavor
/// beyond pure amplitude damping; separable flavor with extra dephasing).
double mawer_closed_form(const QubitChannel& channel, MawerFlavor flavor);

/// How mawer_numeric evaluates chi at the sample energies.
enum class ChiRoute {
  kClosedForm,  ///< chi() directly
  kEnvelope,    ///< concave envelope of sampled max_output_ergotropy values
};

struct MawerNumericOptions {
  /// Largest first sample energy. The actual start is reduced to 1/8 of the
  /// distance to the nearest branch point of the output spectrum, which is
  /// close to zero for strong damping at high temperature.
  double start = 1e-2;
  int halvings = 4;
  ChiRoute route = ChiRoute::kClosedForm;
  int envelope_points = 1001;
};

/// lim_{e -> 0} chi(e) / e by Richardson extrapolation over e = start / 2^k.
/// Returns +infinity when chi does not vanish at e = 0.
double mawer_numeric(const QubitChannel& channel, const MawerNumericOptions& options = {});

enum class Extraction { kLocal, kNonlocal };

/// Work per unit input energy from coherence-free inputs (each used cell
/// fully excited). Local: ergotropy of channel(|1><1|). Nonlocal: the
/// free-energy bound at the inverse temperature of channel(|0><0|), which is
/// exact for amplitude damping. Throws ValidationError for dephased channels.
double classical_strategy_ratio(const QubitChannel& channel, Extraction extraction = Extraction::kNonlocal);

/// (J_loc,sep - r) / r with r = max_output_ergotropy(ch, 1) / optimal_input_energy(ch, 1),
/// for the generalized amplitude damping family. Empty when r = 0.
std::optional<double> relative_gap(const QubitChannel& channel);

struct MawerResult {
  QubitChannel channel;
  MawerFlavor flavor;
  double closed_form;
  double numeric_limit;
  std::optional<double> classical_ratio;  ///< nonlocal extraction; empty if unsupported
};

MawerResult analyze_mawer(const QubitChannel& channel, MawerFlavor flavor = MawerFlavor::kLocalSeparable);

std::string to_string(MawerFlavor flavor);

}  // namespace qbattery
