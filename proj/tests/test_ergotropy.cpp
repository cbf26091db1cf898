#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbattery/ergotropy.hpp"

using namespace qbattery;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST_CASE("energy spectra") {
  const EnergySpectrum s({3.0, 1.0, 2.0});
  CHECK(s[0] == 0.0);
  CHECK(s[2] == 2.0);
  const auto h = EnergySpectrum::hamming(3);
  CHECK(h.size() == 8);
  CHECK(h[0] == 0.0);
  CHECK(h[3] == 1.0);
  CHECK(h[4] == 2.0);
  CHECK(h[7] == 3.0);
  CHECK(hamming_hamiltonian(2)(3, 3) == Complex(2));
}

TEST_CASE("passive energy pairs descending populations with ascending levels") {
  const double p[] = {0.2, 0.5, 0.3};
  CHECK(passive_energy(p, EnergySpectrum({0, 1, 2})) == doctest::Approx(0.7));
  const double bad[] = {0.2, 0.5};
  CHECK_THROWS_AS(passive_energy(bad, EnergySpectrum({0, 1, 2})), ValidationError);
  const double unnormalized[] = {0.2, 0.5, 0.5};
  CHECK_THROWS_AS(passive_energy(unnormalized, EnergySpectrum({0, 1, 2})), ValidationError);
}

TEST_CASE("qutrit ergotropy") {
  // populations 0.2, 0.3, 0.5 on levels 0, 1, 2: energy 1.3, passive 0.7
  const auto r = ergotropy(diag({0.2, 0.3, 0.5}), diag({0, 1, 2}));
  CHECK(r.output_energy == doctest::Approx(1.3));
  CHECK(r.passive_energy == doctest::Approx(0.7));
  CHECK(r.ergotropy == doctest::Approx(0.6));
}

TEST_CASE("pure states give their full energy; passive states give nothing") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXcd psi = oracle::haar_unitary(rng, 4).col(0);
    const Matrix rho = psi * psi.adjoint();
    const auto r = ergotropy(rho, hamming_hamiltonian(2));
    CHECK(r.ergotropy == doctest::Approx(r.output_energy).epsilon(1e-12));
  }
  CHECK(ergotropy(diag({0.6, 0.4}), qubit_hamiltonian()).ergotropy == doctest::Approx(0.0));
}

TEST_CASE("ergotropy against the oracle and random unitaries") {
  std::mt19937_64 rng(12);
  const Matrix h = hamming_hamiltonian(2);
  const auto hd = oracle::hamming_diag(2);
  for (int t = 0; t < 50; ++t) {
    const Matrix rho = oracle::random_density(rng, 4);
    const double e = ergotropy(rho, h).ergotropy;
    CHECK(e == doctest::Approx(oracle::ergotropy(rho, hd)).epsilon(1e-12));
    // any unitary extracts at most the ergotropy
    const Matrix u = oracle::haar_unitary(rng, 4);
    const double extracted = (rho * h).trace().real() - (u * rho * u.adjoint() * h).trace().real();
    CHECK(extracted <= e + 1e-12);
  }
}

TEST_CASE("non-diagonal Hamiltonians are measured from the ground level") {
  Matrix h(2, 2);
  h << 1.0, 0.5, 0.5, 1.0;  // levels 0.5 and 1.5
  Eigen::VectorXcd excited(2);
  excited << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const auto r = ergotropy(excited * excited.adjoint(), h);
  CHECK(r.output_energy == doctest::Approx(1.0));
  CHECK(r.ergotropy == doctest::Approx(1.0));
}

TEST_CASE("ergotropy validation") {
  CHECK_THROWS_AS(ergotropy(diag({0.5, 0.6}), qubit_hamiltonian()), ValidationError);
  CHECK_THROWS_AS(ergotropy(diag({1.2, -0.2}), qubit_hamiltonian()), ValidationError);
  CHECK_THROWS_AS(ergotropy(diag({0.5, 0.5}), hamming_hamiltonian(2)), ValidationError);
  CHECK(ergotropy_qubit(0.7, 0.2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ergotropy_qubit(0.7, 0.6), ValidationError);
}

TEST_CASE("entropy in nats") {
  const double p[] = {0.5, 0.5, 0.0};
  CHECK(von_neumann_entropy(p) == doctest::Approx(std::log(2.0)));
  CHECK(von_neumann_entropy(diag({0.25, 0.75})) ==
        doctest::Approx(-0.25 * std::log(0.25) - 0.75 * std::log(0.75)));
}

TEST_CASE("Gibbs states") {
  const auto g = gibbs_state(std::log(3.0), EnergySpectrum::qubit());
  CHECK(g.populations[1] == doctest::Approx(0.25));
  CHECK(g.energy == doctest::Approx(0.25));
  const auto ground = gibbs_state(kInfiniteBeta, EnergySpectrum({0, 0, 1}));
  CHECK(ground.populations[0] == doctest::Approx(0.5));
  CHECK(ground.populations[2] == 0.0);
  CHECK(ground.entropy_nats == doctest::Approx(std::log(2.0)));
  const auto flat = gibbs_state(0.0, EnergySpectrum::hamming(2));
  CHECK(flat.energy == doctest::Approx(1.0));
  CHECK_THROWS_AS(gibbs_state(-1.0, EnergySpectrum::qubit()), ValidationError);
}

TEST_CASE("entropy-matched inverse temperature") {
  const auto spec = EnergySpectrum::hamming(3);
  for (double beta : {0.05, 0.7, 2.0, 9.0}) {
    const double s = gibbs_state(beta, spec).entropy_nats;
    CHECK(entropy_matched_beta(s, spec) == doctest::Approx(beta).epsilon(1e-9));
  }
  CHECK(entropy_matched_beta(0.0, spec) == kInfiniteBeta);
  CHECK(entropy_matched_beta(std::log(8.0), spec) == 0.0);
}

TEST_CASE("total ergotropy") {
  std::mt19937_64 rng(13);
  // every passive qubit state is a Gibbs state, so the two notions coincide
  for (int t = 0; t < 50; ++t) {
    const Matrix rho = oracle::random_density(rng, 2);
    CHECK(total_ergotropy(rho, qubit_hamiltonian()) ==
          doctest::Approx(ergotropy(rho, qubit_hamiltonian()).ergotropy).epsilon(1e-9));
  }
  // in general it dominates the ergotropy
  for (int t = 0; t < 20; ++t) {
    const Matrix rho = oracle::random_density(rng, 4);
    const Matrix h = hamming_hamiltonian(2);
    CHECK(total_ergotropy(rho, h) >= ergotropy(rho, h).ergotropy - 1e-12);
  }
}

TEST_CASE("local ergotropy of a product sums the marginals") {
  std::mt19937_64 rng(14);
  const Matrix a = oracle::random_density(rng, 2);
  const Matrix b = oracle::random_density(rng, 2);
  const double expected = oracle::qubit_ergotropy(a) + oracle::qubit_ergotropy(b);
  CHECK(local_ergotropy_product(tensor(a, b), qubit_hamiltonian()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("thermal extractable work") {
  // |1><1| at beta = ln 3: E = 1, S = 0, Z = 4/3
  const double w = thermal_extractable_work(diag({0, 1}), qubit_hamiltonian(), std::log(3.0));
  CHECK(w == doctest::Approx(1.0 + std::log(4.0 / 3.0) / std::log(3.0)));
  CHECK(thermal_extractable_work(diag({0.3, 0.7}), qubit_hamiltonian(), kInfiniteBeta) == doctest::Approx(0.7));
  // vanishes on the Gibbs state itself
  CHECK(thermal_extractable_work(diag({0.75, 0.25}), qubit_hamiltonian(), std::log(3.0)) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(thermal_extractable_work(diag({0, 1}), qubit_hamiltonian(), 0.0), ValidationError);
}
