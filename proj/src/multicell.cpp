#include "qbattery/multicell.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qbattery/capacitance.hpp"
#include "qbattery/parallel.hpp"

namespace qbattery {

namespace {

// In-place action of the channel on one site of an n-qubit operator. For
// each pair (row, col) with the site bit clear, the 2x2 block addressed by
// that bit transforms exactly like a single-qubit density matrix.
template <typename Mat>
void apply_site_inplace(const QubitChannel& ch, Mat& rho, int n, int site) {
  const double up = ch.up_rate();
  const double down = ch.down_rate();
  const double coh = ch.coherence_factor();
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
    if (c0 & mask) continue;
    const Eigen::Index c1 = c0 | mask;
    for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
      if (r0 & mask) continue;
      const Eigen::Index r1 = r0 | mask;
      const auto p00 = rho(r0, c0);
      const auto p11 = rho(r1, c1);
      rho(r0, c0) = (1.0 - up) * p00 + down * p11;
      rho(r1, c1) = up * p00 + (1.0 - down) * p11;
      rho(r0, c1) *= coh;
      rho(r1, c0) *= coh;
    }
  }
}

void require_sites(int n, int max_sites, const char* where) {
  require(n >= 1 && n <= max_sites, std::string(where) + ": site count out of range");
}

// Ergotropy under the Hamming Hamiltonian without the validation overhead of
// ergotropy(); for internally generated states only.
double hamming_ergotropy(const Matrix& rho, const EnergySpectrum& levels) {
  double energy = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    energy += rho(i, i).real() * std::popcount(static_cast<unsigned long>(i));
  const Eigen::VectorXd lambda = eigenvalues_hermitian(rho);  // ascending
  double passive = 0.0;
  const auto n = static_cast<std::size_t>(lambda.size());
  for (std::size_t l = 0; l < n; ++l) passive += lambda[static_cast<Eigen::Index>(n - 1 - l)] * levels[l];
  return energy - passive;
}

double phase_of(const ProductInputSpec& spec, std::size_t j) { return spec.phases.empty() ? 0.0 : spec.phases[j]; }

void require_spec(const ProductInputSpec& spec, int max_sites, const char* where) {
  require_sites(spec.sites(), max_sites, where);
  require(spec.phases.empty() || spec.phases.size() == spec.energies.size(),
          std::string(where) + ": phase list length differs from energy list");
}

// Non-decreasing index tuples into values with sum <= budget.
void enumerate_multisets(const std::vector<double>& values, int n, double budget, std::size_t start,
                         std::vector<double>& current, const std::function<void(const std::vector<double>&)>& visit) {
  if (static_cast<int>(current.size()) == n) {
    visit(current);
    return;
  }
  for (std::size_t i = start; i < values.size(); ++i) {
    if (values[i] > budget + 1e-12) break;
    current.push_back(values[i]);
    enumerate_multisets(values, n, budget - values[i], i, current, visit);
    current.pop_back();
  }
}

double two_qubit_output_ergotropy(const QubitChannel& ch, const TwoQubitCoefficients& c) {
  const Eigen::Vector4d psi(c[0], c[1], c[2], c[3]);
  Eigen::Matrix4d rho = psi * psi.transpose();
  apply_site_inplace(ch, rho, 2, 0);
  apply_site_inplace(ch, rho, 2, 1);
  const double energy = rho(1, 1) + rho(2, 2) + 2.0 * rho(3, 3);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho, Eigen::EigenvaluesOnly);
  const auto& l = es.eigenvalues();  // ascending; levels 0, 1, 1, 2
  return energy - (l[2] + l[1] + 2.0 * l[0]);
}

}  // namespace

Matrix apply_channel_all_sites(const QubitChannel& channel, const Matrix& rho) {
  require(rho.rows() == rho.cols(), "apply_channel_all_sites: matrix is not square");
  const int n = qubit_count(rho.rows());
  Matrix out = rho;
  for (int site = 0; site < n; ++site) apply_site_inplace(channel, out, n, site);
  return out;
}

double product_output_ergotropy(const QubitChannel& channel, const ProductInputSpec& spec) {
  require_spec(spec, kMaxProductSites, "product_output_ergotropy");
  const int n = spec.sites();

  std::vector<double> products{1.0};
  products.reserve(std::size_t{1} << n);
  double energy = 0.0;
  for (std::size_t j = 0; j < spec.energies.size(); ++j) {
    const Matrix out = apply_channel(channel, CoherentInputState{spec.energies[j], phase_of(spec, j)}.density());
    const double a = out(0, 0).real();
    const double d = out(1, 1).real();
    const double r = std::hypot(0.5 * (a - d), std::abs(out(0, 1)));
    const double plus = 0.5 * (a + d) + r;
    const double minus = 0.5 * (a + d) - r;
    energy += d;
    const std::size_t size = products.size();
    products.resize(2 * size);
    for (std::size_t k = 0; k < size; ++k) {
      products[size + k] = products[k] * minus;
      products[k] *= plus;
    }
  }
  return energy - passive_energy(products, EnergySpectrum::hamming(n));
}

double product_output_ergotropy_dense(const QubitChannel& channel, const ProductInputSpec& spec) {
  require_spec(spec, kMaxQubits, "product_output_ergotropy_dense");
  std::vector<Matrix> factors;
  for (std::size_t j = 0; j < spec.energies.size(); ++j)
    factors.push_back(apply_channel(channel, CoherentInputState{spec.energies[j], phase_of(spec, j)}.density()));
  const Matrix rho = tensor_all<Complex>(factors);
  return ergotropy(rho, hamming_hamiltonian(spec.sites())).ergotropy;
}

ClassicalStateResult classical_state_analysis(const QubitChannel& channel, double total_energy, int n) {
  require(std::isfinite(total_energy) && total_energy > 0.0, "classical_state_analysis: energy must be positive");
  const int excited = static_cast<int>(std::floor(total_energy));
  require(n >= excited, "classical_state_analysis: need n >= floor(E)");
  require_sites(n, kMaxQubits, "classical_state_analysis");

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Index index = 0;
  for (int s = 0; s < excited; ++s) index |= Eigen::Index{1} << (n - 1 - s);
  Matrix rho = Matrix::Zero(dim, dim);
  rho(index, index) = 1.0;
  const Matrix out = apply_channel_all_sites(channel, rho);

  return {ergotropy(out, hamming_hamiltonian(n)).ergotropy, local_ergotropy_product(out, qubit_hamiltonian())};
}

MonotonicityReport monotonicity_check(const QubitChannel& channel, double total_energy, int n_max,
                                      const MonotonicityOptions& options) {
  require(std::isfinite(total_energy) && total_energy > 0.0, "monotonicity_check: energy must be positive");
  require_sites(n_max, 8, "monotonicity_check");
  require(options.product_grid >= 2, "monotonicity_check: product grid needs two points");
  require(options.entangled_samples >= 0 && options.shell_width > 0.0, "monotonicity_check: bad sampling options");

  std::vector<double> site_values = uniform_grid(options.product_grid);
  site_values.push_back(optimal_input_energy(channel, std::min(total_energy, 1.0)));
  std::sort(site_values.begin(), site_values.end());
  site_values.erase(std::unique(site_values.begin(), site_values.end()), site_values.end());

  MonotonicityReport report;
  ComplexVector previous_witness;  // best entangled input found at n - 1
  for (int n = 1; n <= n_max; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    std::string source = "product";

    std::vector<double> current;
    enumerate_multisets(site_values, n, total_energy, 0, current, [&](const std::vector<double>& energies) {
      best = std::max(best, product_output_ergotropy(channel, {energies, {}}));
    });

    const EnergySpectrum levels = EnergySpectrum::hamming(n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexVector witness;
    double best_entangled = -std::numeric_limits<double>::infinity();
    auto consider = [&](const ComplexVector& psi) {
      const double value = hamming_ergotropy(apply_channel_all_sites(channel, projector(psi)), levels);
      if (value > best_entangled) {
        best_entangled = value;
        witness = psi;
      }
    };

    if (previous_witness.size() > 0) {
      // the n-1 witness with one more cell in the ground state
      ComplexVector padded = ComplexVector::Zero(dim);
      for (Eigen::Index i = 0; i < previous_witness.size(); ++i) padded(2 * i) = previous_witness(i);
      consider(padded);
    }

    long long accepted = 0;
    if (n >= 2 && total_energy <= n) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(n)};
      std::mt19937_64 rng(seq);
      std::exponential_distribution<double> expo(1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      const long long max_draws = options.max_draws_per_sample * std::max(options.entangled_samples, 1);
      std::vector<double> weights(static_cast<std::size_t>(dim));
      // |c_i|^2 of a Haar-random state is flat-Dirichlet; phases are drawn
      // only for accepted weights.
      for (long long draw = 0; draw < max_draws && accepted < options.entangled_samples; ++draw) {
        double norm = 0.0;
        double energy = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
          weights[i] = expo(rng);
          norm += weights[i];
          energy += weights[i] * std::popcount(static_cast<unsigned long>(i));
        }
        energy /= norm;
        if (energy > total_energy || energy < total_energy - options.shell_width) continue;
        ++accepted;
        ComplexVector psi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) psi(i) = std::polar(std::sqrt(weights[i] / norm), phase(rng));
        consider(psi);
      }
    }

    if (best_entangled > best) {
      best = best_entangled;
      source = "entangled";
    }
    previous_witness = witness;

    report.estimates.push_back(best);
    report.accepted.push_back(accepted);
    report.best_source.push_back(source);
    if (n >= 2 && report.non_decreasing) {
      const double prev = report.estimates[n - 2];
      if (best < prev - options.tolerance) {
        report.non_decreasing = false;
        std::ostringstream os;
        os.precision(17);
        os << "n=" << n << " estimate " << best << " < n=" << n - 1 << " estimate " << prev;
        report.witness = os.str();
      }
    }
  }
  return report;
}

double two_qubit_gap(const QubitChannel& channel, const TwoQubitCoefficients& c) {
  double norm = 0.0;
  for (double x : c) {
    require(std::isfinite(x), "two_qubit_gap: non-finite coefficient");
    norm += x * x;
  }
  require(std::abs(norm - 1.0) <= 1e-9, "two_qubit_gap: coefficients are not normalized");
  const double e = std::clamp(0.5 * (c[1] * c[1] + c[2] * c[2] + 2.0 * c[3] * c[3]) / norm, 0.0, 1.0);
  return two_qubit_output_ergotropy(channel, c) - 2.0 * max_output_ergotropy(channel, e);
}

SearchResult superadditivity_search(const QubitChannel& channel, double e, int resolution) {
  require(std::isfinite(e) && e > 0.0 && e <= 1.0, "superadditivity_search: energy must lie in (0, 1]");
  require(resolution >= 2, "superadditivity_search: resolution must be at least 2");

  const double rhs = 2.0 * max_output_ergotropy(channel, e);
  const double w_lo = std::max(0.0, 2.0 * e - 1.0);
  const auto r = static_cast<std::size_t>(resolution);

  auto coefficients = [&](std::size_t i, std::size_t j) {
    const double w = i + 1 == r ? e : w_lo + (e - w_lo) * static_cast<double>(i) / static_cast<double>(r - 1);
    const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(r - 1);
    const double s = std::sqrt(std::max(0.0, 2.0 * e - 2.0 * w));
    return TwoQubitCoefficients{std::sqrt(std::max(0.0, 1.0 - 2.0 * e + w)), s * std::cos(theta), s * std::sin(theta),
                                std::sqrt(w)};
  };

  struct RowBest {
    double gap = -std::numeric_limits<double>::infinity();
    std::size_t j = 0;
  };
  std::vector<RowBest> rows(r);
  parallel_for(r, [&](std::size_t i) {
    RowBest best;
    for (std::size_t j = 0; j < r; ++j) {
      const double gap = two_qubit_output_ergotropy(channel, coefficients(i, j)) - rhs;
      if (gap > best.gap) best = {gap, j};
    }
    rows[i] = best;
  });

  SearchResult result;
  result.best_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].gap > result.best_gap) {
      result.best_gap = rows[i].gap;
      result.coefficients = coefficients(i, rows[i].j);
    }
  }
  result.energy = e;
  result.resolution = resolution;
  result.evaluated = static_cast<long long>(r) * static_cast<long long>(r);
  result.family_gap = two_qubit_output_ergotropy(channel, {std::sqrt(1.0 - e), 0.0, 0.0, std::sqrt(e)}) - rhs;
  return result;
}

}  // namespace qbattery
