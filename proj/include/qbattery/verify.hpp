#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/channels.hpp"

namespace qbattery {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::optional<std::pair<int, int>> grid;  ///< theorem1 parameter grid (default 20x10)
  std::optional<int> n;                     ///< additivity / monotonicity site bound
  std::optional<QubitChannel> channel;      ///< restricts channel-driven suites
  std::optional<double> energy;             ///< superadditivity / monotonicity energy
  int resolution = 500;                     ///< superadditivity grid per axis
  int samples = 100;                        ///< random states or curves per suite
};

struct SuiteOutcome {
  std::string name;
  bool passed = true;
  double max_deviation = 0.0;  ///< worst observed value of the suite's checked quantity
  double threshold = 0.0;
  long long checks = 0;
  std::string witness;  ///< first failing case, empty on success
};

const std::vector<std::string>& suite_names();

/// Runs one named property suite. Throws ValidationError for an unknown name.
SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options = {});

/// JSON document {"seed":..., "passed":..., "suites":[...]}.
std::string verify_report_json(const std::vector<SuiteOutcome>& outcomes, const VerifyOptions& options);

}  // namespace qbattery
