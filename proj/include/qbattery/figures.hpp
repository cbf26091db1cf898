#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/capacitance.hpp"
#include "qbattery/csv.hpp"

namespace qbattery {

/// Parameters shared by the figure tables; unset fields take per-figure
/// defaults (see README for the table of subcommands and columns).
struct FigureOptions {
  std::optional<std::vector<double>> gammas;
  std::optional<std::vector<double>> etas;
  std::optional<int> points;                  ///< 1-D grid size
  std::optional<std::pair<int, int>> grid2d;  ///< heatmap size (first axis x second axis)
  CurveKind kind = CurveKind::kFixedEnergy;
  double energy = 1.0;
  EntropyBase base = EntropyBase::kBits;
};

const std::vector<std::string>& figure_names();

/// Builds the table for one figure. Throws ValidationError for an unknown
/// name or out-of-domain parameters.
CsvTable make_figure(const std::string& name, const FigureOptions& options = {});

/// Parses "AxB" into (A, B).
std::pair<int, int> parse_grid2d(const std::string& text);

}  // namespace qbattery
