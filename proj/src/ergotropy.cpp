#include "qbattery/ergotropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

namespace qbattery {

namespace {

constexpr double kDegeneracyTolerance = 1e-12;

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Real part of Tr[rho H] with the ground level of H shifted to zero.
double relative_energy(const Matrix& rho, const Matrix& hamiltonian, double ground) {
  return (rho.cwiseProduct(hamiltonian.transpose())).sum().real() - ground * rho.trace().real();
}

}  // namespace

EnergySpectrum::EnergySpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  require(!levels_.empty(), "EnergySpectrum: no levels");
  std::sort(levels_.begin(), levels_.end());
  const double ground = levels_.front();
  for (double& e : levels_) e -= ground;
}

EnergySpectrum EnergySpectrum::of(const Matrix& hamiltonian) {
  return EnergySpectrum(to_std(eigenvalues_hermitian(hamiltonian)));
}

EnergySpectrum EnergySpectrum::qubit() { return EnergySpectrum({0.0, 1.0}); }

EnergySpectrum EnergySpectrum::hamming(int n) {
  require(n >= 1 && n <= 30, "EnergySpectrum::hamming: n out of range");
  std::vector<double> levels(std::size_t{1} << n);
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = std::popcount(i);
  return EnergySpectrum(std::move(levels));
}

Matrix qubit_hamiltonian() {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;
  return h;
}

Matrix hamming_hamiltonian(int n) {
  require(n >= 1 && n <= kMaxQubits, "hamming_hamiltonian: n out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) h(i, i) = std::popcount(static_cast<unsigned long>(i));
  return h;
}

double passive_energy(std::span<const double> state_spectrum, const EnergySpectrum& hamiltonian) {
  require(state_spectrum.size() == hamiltonian.size(), "passive_energy: spectrum lengths differ");
  const double total = std::accumulate(state_spectrum.begin(), state_spectrum.end(), 0.0);
  require(std::abs(total - 1.0) <= 1e-9, "passive_energy: state spectrum does not sum to one");
  std::vector<double> lambda(state_spectrum.begin(), state_spectrum.end());
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  double e = 0.0;
  for (std::size_t l = 0; l < lambda.size(); ++l) e += lambda[l] * hamiltonian[l];
  return e;
}

double von_neumann_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum) s -= xlogx(std::max(p, 0.0));
  return s;
}

double von_neumann_entropy(const Matrix& rho) {
  require_hermitian(rho, "von_neumann_entropy");
  return von_neumann_entropy(to_std(eigenvalues_hermitian(rho)));
}

ErgotropyReport ergotropy(const Matrix& rho, const Matrix& hamiltonian) {
  require(rho.rows() == hamiltonian.rows() && rho.cols() == hamiltonian.cols(),
          "ergotropy: state and Hamiltonian dimensions differ");
  require_hermitian(rho, "ergotropy");
  const auto spectrum = to_std(eigenvalues_hermitian(rho));
  require(std::abs(rho.trace().real() - 1.0) <= kTraceTolerance, "ergotropy: state does not have unit trace");
  require(spectrum.front() >= -kPositivityTolerance, "ergotropy: state has a negative eigenvalue");

  const auto h_levels = eigenvalues_hermitian(hamiltonian);
  const EnergySpectrum levels(to_std(h_levels));

  ErgotropyReport report;
  report.output_energy = relative_energy(rho, hamiltonian, h_levels.minCoeff());
  report.input_energy = report.output_energy;
  report.passive_energy = passive_energy(spectrum, levels);
  report.ergotropy = report.output_energy - report.passive_energy;
  report.entropy_nats = von_neumann_entropy(spectrum);
  return report;
}

double ergotropy_qubit(double rho11, double lambda_min) {
  require(rho11 >= 0.0 && rho11 <= 1.0, "ergotropy_qubit: rho11 outside [0, 1]");
  require(lambda_min >= 0.0 && lambda_min <= 0.5, "ergotropy_qubit: lambda_min outside [0, 1/2]");
  return rho11 - lambda_min;
}

GibbsState gibbs_state(double beta, const EnergySpectrum& hamiltonian) {
  require(beta >= 0.0, "gibbs_state: beta must be non-negative");
  const auto levels = hamiltonian.levels();
  GibbsState g;
  g.populations.resize(levels.size());
  if (std::isinf(beta)) {
    auto in_ground = [](double e) { return e <= kDegeneracyTolerance; };
    const auto ground = static_cast<double>(std::count_if(levels.begin(), levels.end(), in_ground));
    for (std::size_t l = 0; l < levels.size(); ++l) g.populations[l] = in_ground(levels[l]) ? 1.0 / ground : 0.0;
  } else {
    // levels start at zero, so every weight is in (0, 1] and Z >= 1
    double z = 0.0;
    for (std::size_t l = 0; l < levels.size(); ++l) z += g.populations[l] = std::exp(-beta * levels[l]);
    for (double& p : g.populations) p /= z;
  }
  for (std::size_t l = 0; l < levels.size(); ++l) g.energy += g.populations[l] * levels[l];
  g.entropy_nats = von_neumann_entropy(g.populations);
  return g;
}

double entropy_matched_beta(double entropy_nats, const EnergySpectrum& hamiltonian) {
  const double s_max = std::log(static_cast<double>(hamiltonian.size()));
  const double s_ground = gibbs_state(kInfiniteBeta, hamiltonian).entropy_nats;
  if (entropy_nats <= s_ground) return kInfiniteBeta;
  if (entropy_nats >= s_max) return 0.0;

  auto entropy_at = [&](double beta) { return gibbs_state(beta, hamiltonian).entropy_nats; };
  double lo = 0.0;
  double hi = 1.0;
  while (entropy_at(hi) >= entropy_nats) {
    hi *= 2.0;
    if (hi > 1e300) throw ConvergenceError("entropy_matched_beta: failed to bracket the root");
  }
  // S_beta is strictly decreasing in beta. Bisect until the bracket collapses:
  // near beta = 0 the entropy is flat, and stopping at a fixed entropy
  // residual would leave the Gibbs energy visibly off.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    (entropy_at(mid) > entropy_nats ? lo : hi) = mid;
  }
  throw ConvergenceError("entropy_matched_beta: bisection did not converge");
}

double total_ergotropy(const Matrix& rho, const Matrix& hamiltonian) {
  const auto report = ergotropy(rho, hamiltonian);
  const EnergySpectrum levels = EnergySpectrum::of(hamiltonian);
  const double beta = entropy_matched_beta(report.entropy_nats, levels);
  return report.output_energy - gibbs_state(beta, levels).energy;
}

double local_ergotropy_product(const Matrix& rho, const Matrix& site_hamiltonian) {
  require(site_hamiltonian.rows() == 2 && site_hamiltonian.cols() == 2,
          "local_ergotropy_product: site Hamiltonian must be 2x2");
  const int n = qubit_count(rho.rows());
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  double total = 0.0;
  for (int site = 0; site < n; ++site) {
    const int keep[] = {site};
    total += ergotropy(partial_trace(rho, dims, keep), site_hamiltonian).ergotropy;
  }
  return total;
}

double thermal_extractable_work(const Matrix& rho, const Matrix& hamiltonian, double beta) {
  require(beta > 0.0, "thermal_extractable_work: beta must be positive");
  const auto report = ergotropy(rho, hamiltonian);
  if (std::isinf(beta)) return report.output_energy;
  const EnergySpectrum levels = EnergySpectrum::of(hamiltonian);
  double z = 0.0;
  for (double e : levels.levels()) z += std::exp(-beta * e);
  return report.output_energy - (report.entropy_nats - std::log(z)) / beta;
}

}  // namespace qbattery
