// qbattery: figure tables and property verification from the command line.
//
//   qbattery fig <name> [--gammas ..] [--etas ..] [--grid N | AxB] [--kind E_bar|E_max|chi|upper_bound]
//                       [--energy e] [--base bits|nats] [--out file]
//   qbattery verify --suite <name>|all [--grid AxB] [--n N] [--channel spec] [--energy e]
//                   [--resolution R] [--samples S] [--seed S] [--out file]
//
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qbattery/figures.hpp"
#include "qbattery/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    qbattery::require(ec == std::errc() && ptr == item.data() + item.size() && !item.empty(),
                      "bad number in list: '" + item + "'");
    out.push_back(v);
  }
  qbattery::require(!out.empty(), "empty list");
  return out;
}

qbattery::CurveKind parse_kind(const std::string& s) {
  using qbattery::CurveKind;
  for (CurveKind k : {CurveKind::kFixedEnergy, CurveKind::kMaxErgotropy, CurveKind::kChi, CurveKind::kUpperBound})
    if (qbattery::to_string(k) == s) return k;
  throw qbattery::ValidationError("unknown curve kind '" + s + "'");
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  qbattery::require(static_cast<bool>(file), "cannot open '" + path + "' for writing");
  write(file);
  qbattery::require(static_cast<bool>(file), "failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work extraction from noisy qubit batteries: figure tables and verification suites"};
  app.require_subcommand(1);

  std::string out_path;

  auto* fig = app.add_subcommand("fig", "Write the CSV table for one figure");
  std::string fig_name;
  std::string gammas;
  std::string etas;
  std::string grid;
  std::string kind = "E_bar";
  double energy = 1.0;
  std::string base = "bits";
  fig->add_option("name", fig_name, "Figure table")->required()->check(CLI::IsMember(qbattery::figure_names()));
  fig->add_option("--gammas", gammas, "Comma-separated gamma values");
  fig->add_option("--etas", etas, "Comma-separated eta values");
  fig->add_option("--grid", grid, "Points N for curves, AxB for heatmaps");
  fig->add_option("--kind", kind, "Curve kind: E_bar, E_max, chi, upper_bound");
  fig->add_option("--energy", energy, "Input energy per cell for heatmaps");
  fig->add_option("--base", base, "Entropy unit")->check(CLI::IsMember({"bits", "nats"}));
  fig->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run property suites and print a JSON report");
  std::string suite = "all";
  std::string vgrid;
  std::optional<int> n;
  std::string channel;
  std::optional<double> venergy;
  qbattery::VerifyOptions vopts;
  std::vector<std::string> suite_choices = qbattery::suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", suite, "Suite name or 'all'")->check(CLI::IsMember(suite_choices));
  verify->add_option("--grid", vgrid, "Parameter grid AxB (theorem1)");
  verify->add_option("--n", n, "Maximum number of cells");
  verify->add_option("--channel", channel, "Channel spec, e.g. gadc:gamma=0.5,eta=0.3");
  verify->add_option("--energy", venergy, "Input energy per cell");
  verify->add_option("--resolution", vopts.resolution, "Superadditivity grid points per axis");
  verify->add_option("--samples", vopts.samples, "Random samples per suite");
  verify->add_option("--seed", vopts.seed, "Random seed");
  verify->add_option("--out", out_path, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (fig->parsed()) {
      qbattery::FigureOptions o;
      if (!gammas.empty()) o.gammas = parse_list(gammas);
      if (!etas.empty()) o.etas = parse_list(etas);
      if (!grid.empty()) {
        if (grid.find('x') != std::string::npos) {
          o.grid2d = qbattery::parse_grid2d(grid);
        } else {
          o.points = static_cast<int>(parse_list(grid).front());
        }
      }
      o.kind = parse_kind(kind);
      o.energy = energy;
      o.base = base == "nats" ? qbattery::EntropyBase::kNats : qbattery::EntropyBase::kBits;
      const auto table = qbattery::make_figure(fig_name, o);
      emit(out_path, [&](std::ostream& os) { qbattery::write_csv(os, table); });
      return 0;
    }

    if (!vgrid.empty()) vopts.grid = qbattery::parse_grid2d(vgrid);
    vopts.n = n;
    if (!channel.empty()) vopts.channel = qbattery::parse_channel(channel);
    vopts.energy = venergy;

    std::vector<qbattery::SuiteOutcome> outcomes;
    const auto names = suite == "all" ? qbattery::suite_names() : std::vector<std::string>{suite};
    for (const auto& name : names) outcomes.push_back(qbattery::run_suite(name, vopts));
    emit(out_path, [&](std::ostream& os) { os << qbattery::verify_report_json(outcomes, vopts) << '\n'; });
    bool ok = true;
    for (const auto& o : outcomes) {
      ok = ok && o.passed;
      if (!o.passed) std::cerr << "FAILED " << o.name << ": " << o.witness << '\n';
    }
    return ok ? 0 : kExitFailure;
  } catch (const qbattery::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
