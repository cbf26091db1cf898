#include "qbattery/figures.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "qbattery/mawer.hpp"

namespace qbattery {

namespace {

const std::vector<double> kFigureGammas = {0.0, 0.2, 0.4, 0.6, 0.8};
const std::vector<double> kGadcEtas = {0.0, 0.15, 0.25, 0.35, 0.5};
const std::vector<double> kEntropyEtas = {0.1, 0.4};
const std::vector<double> kEntropyGammas = {0.2, 0.4, 0.6, 0.8};

std::string label(const std::string& key, double v) { return key + "=" + format_number(v); }

int points_or(const FigureOptions& o, int fallback) {
  const int p = o.points.value_or(fallback);
  require(p >= 2, "figure: grid needs at least two points");
  return p;
}

std::pair<int, int> grid2d_or(const FigureOptions& o, std::pair<int, int> fallback) {
  const auto g = o.grid2d.value_or(fallback);
  require(g.first >= 2 && g.second >= 2, "figure: heatmap axes need at least two points");
  return g;
}

// gamma-major heatmap over gamma in [0, 1] and a second parameter in [0, hi].
CsvTable heatmap(const FigureOptions& o, std::pair<int, int> fallback, const std::string& second, double hi,
                 std::vector<std::string> value_columns,
                 const std::function<std::vector<double>(double, double)>& cell) {
  const auto [ng, ns] = grid2d_or(o, fallback);
  CsvTable t;
  t.header = {"gamma", second};
  t.header.insert(t.header.end(), value_columns.begin(), value_columns.end());
  for (double g : uniform_grid(ng)) {
    for (double s : uniform_grid(ns, 0.0, hi)) {
      std::vector<double> row{g, s};
      const auto values = cell(g, s);
      row.insert(row.end(), values.begin(), values.end());
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// e-column table with one series per channel.
CsvTable curves(const FigureOptions& o, const std::vector<std::pair<std::string, QubitChannel>>& series,
                const std::function<double(const QubitChannel&, double)>& f) {
  CsvTable t;
  t.header.push_back("e");
  for (const auto& s : series) t.header.push_back(s.first);
  for (double e : uniform_grid(points_or(o, kDefaultCurvePoints))) {
    std::vector<double> row{e};
    for (const auto& s : series) row.push_back(f(s.second, e));
    t.rows.push_back(std::move(row));
  }
  return t;
}

double curve_value(CurveKind kind, const QubitChannel& ch, double e) {
  switch (kind) {
    case CurveKind::kFixedEnergy: return max_output_ergotropy_fixed(ch, e);
    case CurveKind::kMaxErgotropy: return max_output_ergotropy(ch, e);
    case CurveKind::kChi: return chi(ch, e);
    case CurveKind::kUpperBound: return output_energy(ch, e);
  }
  return 0.0;
}

CsvTable adc_ergotropy(const FigureOptions& o) {
  std::vector<std::pair<std::string, QubitChannel>> series;
  for (double g : o.gammas.value_or(kFigureGammas)) series.emplace_back(label("gamma", g), QubitChannel::amplitude_damping(g));
  return curves(o, series, [&](const QubitChannel& ch, double e) { return curve_value(o.kind, ch, e); });
}

CsvTable adc_optimal_energy(const FigureOptions& o) {
  CsvTable t{{"gamma", "optimal_energy", "max_ergotropy"}, {}};
  for (double g : uniform_grid(points_or(o, kDefaultCurvePoints))) {
    const auto ch = QubitChannel::amplitude_damping(g);
    t.rows.push_back({g, optimal_input_energy(ch, o.energy), max_output_ergotropy(ch, o.energy)});
  }
  return t;
}

std::vector<std::pair<std::string, QubitChannel>> gadc_series(const FigureOptions& o, const std::vector<double>& gammas,
                                                              const std::vector<double>& etas) {
  std::vector<std::pair<std::string, QubitChannel>> series;
  for (double eta : o.etas.value_or(etas))
    for (double g : o.gammas.value_or(gammas))
      series.emplace_back(label("gamma", g) + ";" + label("eta", eta), QubitChannel::generalized_amplitude_damping(g, eta));
  return series;
}

CsvTable gadc_ergotropy(const FigureOptions& o) {
  return curves(o, gadc_series(o, {0.5}, kGadcEtas),
                [&](const QubitChannel& ch, double e) { return curve_value(o.kind, ch, e); });
}

CsvTable gadc_entropy(const FigureOptions& o) {
  return curves(o, gadc_series(o, kEntropyGammas, kEntropyEtas),
                [&](const QubitChannel& ch, double e) { return output_entropy(ch, e, o.base); });
}

CsvTable gadc_optimal_energy(const FigureOptions& o) {
  return heatmap(o, {100, 50}, "eta", 0.5, {"optimal_energy"}, [&](double g, double eta) {
    return std::vector<double>{optimal_input_energy(QubitChannel::generalized_amplitude_damping(g, eta), o.energy)};
  });
}

CsvTable gadc_chi_full(const FigureOptions& o) {
  return heatmap(o, {100, 50}, "eta", 0.5, {"value"}, [&](double g, double eta) {
    return std::vector<double>{chi(QubitChannel::generalized_amplitude_damping(g, eta), o.energy)};
  });
}

CsvTable gadc_mawer_gap(const FigureOptions& o) {
  return heatmap(o, {100, 50}, "eta", 0.5, {"value"}, [](double g, double eta) {
    const auto ch = QubitChannel::generalized_amplitude_damping(g, eta);
    return std::vector<double>{mawer_closed_form(ch, MawerFlavor::kLocalSeparable) - classical_strategy_ratio(ch)};
  });
}

CsvTable gadc_delta(const FigureOptions& o) {
  return heatmap(o, {100, 50}, "eta", 0.5, {"value"}, [](double g, double eta) {
    const auto d = relative_gap(QubitChannel::generalized_amplitude_damping(g, eta));
    return std::vector<double>{d.value_or(std::numeric_limits<double>::quiet_NaN())};
  });
}

CsvTable dephadc_heatmap(const FigureOptions& o) {
  return heatmap(o, {100, 100}, "kappa", 1.0, {"max_ergotropy", "optimal_energy"}, [&](double g, double k) {
    const auto ch = QubitChannel::dephased_amplitude_damping(k, g);
    return std::vector<double>{max_output_ergotropy(ch, o.energy), optimal_input_energy(ch, o.energy)};
  });
}

CsvTable dephadc_mawer_diff(const FigureOptions& o) {
  return heatmap(o, {100, 100}, "kappa", 1.0, {"value"}, [](double g, double k) {
    return std::vector<double>{(1.0 - g) * (1.0 - k) - std::max(0.0, 1.0 - 2.0 * g)};
  });
}

const std::map<std::string, CsvTable (*)(const FigureOptions&)>& registry() {
  static const std::map<std::string, CsvTable (*)(const FigureOptions&)> r = {
      {"adc-ergotropy", adc_ergotropy},           {"adc-optimal-energy", adc_optimal_energy},
      {"gadc-ergotropy", gadc_ergotropy},         {"gadc-optimal-energy", gadc_optimal_energy},
      {"gadc-chi-full", gadc_chi_full},           {"gadc-entropy", gadc_entropy},
      {"gadc-mawer-gap", gadc_mawer_gap},         {"gadc-delta", gadc_delta},
      {"dephadc-heatmap", dephadc_heatmap},       {"dephadc-mawer-diff", dephadc_mawer_diff},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

CsvTable make_figure(const std::string& name, const FigureOptions& options) {
  const auto it = registry().find(name);
  require(it != registry().end(), "unknown figure '" + name + "'");
  require(options.energy >= 0.0 && options.energy <= 1.0, "figure: energy must lie in [0, 1]");
  return it->second(options);
}

std::pair<int, int> parse_grid2d(const std::string& text) {
  const auto x = text.find('x');
  require(x != std::string::npos, "grid must look like AxB, got '" + text + "'");
  int a = 0;
  int b = 0;
  const char* s = text.data();
  const auto r1 = std::from_chars(s, s + x, a);
  const auto r2 = std::from_chars(s + x + 1, s + text.size(), b);
  require(r1.ec == std::errc() && r1.ptr == s + x && r2.ec == std::errc() && r2.ptr == s + text.size(),
          "grid must look like AxB, got '" + text + "'");
  require(a >= 2 && b >= 2, "grid axes need at least two points, got '" + text + "'");
  return {a, b};
}

}  // namespace qbattery
