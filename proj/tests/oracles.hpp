#pragma once

// Reference implementations used only by the tests. They deliberately take
// different routes from the library: Kraus operators instead of the
// population/coherence update, a general (non-Hermitian) eigensolver, index
// summation for partial traces, and brute-force searches.

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qbattery/channels.hpp"

namespace oracle {

using qbattery::Complex;
using qbattery::Matrix;

inline Matrix random_density(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Matrix haar_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

/// Kraus operators of the three families written in textbook form.
inline std::vector<Matrix> kraus(const qbattery::QubitChannel& ch) {
  using qbattery::ChannelKind;
  const double g = ch.gamma();
  auto m = [](Complex a, Complex b, Complex c, Complex d) {
    Matrix k(2, 2);
    k << a, b, c, d;
    return k;
  };
  std::vector<Matrix> ks;
  if (ch.kind() == ChannelKind::kGeneralizedAmplitudeDamping) {
    const double eta = ch.eta();
    const double a = std::sqrt(1.0 - eta);
    const double b = std::sqrt(eta);
    ks.push_back(a * m(1, 0, 0, std::sqrt(1 - g)));
    ks.push_back(a * m(0, std::sqrt(g), 0, 0));
    ks.push_back(b * m(std::sqrt(1 - g), 0, 0, 1));
    ks.push_back(b * m(0, 0, std::sqrt(g), 0));
    return ks;
  }
  const std::vector<Matrix> damping = {m(1, 0, 0, std::sqrt(1 - g)), m(0, std::sqrt(g), 0, 0)};
  if (ch.kind() == ChannelKind::kAmplitudeDamping) return damping;
  const double s = std::sqrt(1.0 - ch.kappa());
  const std::vector<Matrix> dephase = {std::sqrt((1 + s) / 2) * m(1, 0, 0, 1), std::sqrt((1 - s) / 2) * m(1, 0, 0, -1)};
  for (const auto& d : dephase)
    for (const auto& k : damping) ks.push_back(d * k);
  return ks;
}

inline Matrix apply_kraus(const std::vector<Matrix>& ks, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks) out += k * rho * k.adjoint();
  return out;
}

/// Channel on every qubit through the Kronecker product of Kraus operators.
inline Matrix apply_kraus_all(const qbattery::QubitChannel& ch, const Matrix& rho, int n) {
  const auto single = kraus(ch);
  std::vector<Matrix> ks = {Matrix::Identity(1, 1)};
  for (int s = 0; s < n; ++s) {
    std::vector<Matrix> next;
    for (const auto& a : ks)
      for (const auto& b : single) next.push_back(Eigen::kroneckerProduct(a, b).eval());
    ks = std::move(next);
  }
  return apply_kraus(ks, rho);
}

inline Matrix kron_all(const std::vector<Matrix>& fs) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : fs) out = Eigen::kroneckerProduct(out, f).eval();
  return out;
}

/// Eigenvalues (descending) from the general complex eigensolver.
inline std::vector<double> spectrum_desc(const Matrix& rho) {
  Eigen::ComplexEigenSolver<Matrix> es(rho, false);
  std::vector<double> v;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) v.push_back(es.eigenvalues()(i).real());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

/// Ergotropy for a diagonal Hamiltonian given by its diagonal.
inline double ergotropy(const Matrix& rho, const std::vector<double>& h_diag) {
  double energy = 0.0;
  for (std::size_t i = 0; i < h_diag.size(); ++i) energy += rho(i, i).real() * h_diag[i];
  std::vector<double> levels = h_diag;
  std::sort(levels.begin(), levels.end());
  const auto lambda = spectrum_desc(rho);
  double passive = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) passive += lambda[i] * levels[i];
  return energy - passive;
}

inline std::vector<double> hamming_diag(int n) {
  std::vector<double> d(std::size_t{1} << n);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<double>(__builtin_popcountll(i));
  return d;
}

/// Single-qubit ergotropy rho11 - lambda_min from the 2x2 characteristic polynomial.
inline double qubit_ergotropy(const Matrix& rho) {
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double b2 = std::norm(rho(0, 1));
  const double lambda_min = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return d - lambda_min;
}

inline Matrix coherent(double e, double phase = 0.0) {
  qbattery::ComplexVector psi(2);
  psi << std::sqrt(1 - e), std::polar(std::sqrt(e), phase);
  return psi * psi.adjoint();
}

/// Fixed-energy output ergotropy through Kraus operators and the generic solver.
inline double fixed_energy_ergotropy(const qbattery::QubitChannel& ch, double e) {
  return ergotropy(apply_kraus(kraus(ch), coherent(e)), {0.0, 1.0});
}

/// Partial trace over qubits by explicit index summation. keep lists the
/// retained sites (site 0 is the most significant bit), in order.
inline Matrix partial_trace(const Matrix& rho, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  Matrix out = Matrix::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  const Eigen::Index dim = Eigen::Index{1} << n;
  auto bit = [n](Eigen::Index idx, int site) { return (idx >> (n - 1 - site)) & 1; };
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      bool same_traced = true;
      for (int s = 0; s < n && same_traced; ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end() && bit(r, s) != bit(c, s)) same_traced = false;
      if (!same_traced) continue;
      Eigen::Index rr = 0;
      Eigen::Index cc = 0;
      for (int s : keep) {
        rr = 2 * rr + bit(r, s);
        cc = 2 * cc + bit(c, s);
      }
      out(rr, cc) += rho(r, c);
    }
  }
  return out;
}

/// Best single point or two-point mixture with mean energy <= x[k].
inline std::vector<double> two_point_optimum(const std::vector<double>& x, const std::vector<double>& f) {
  std::vector<double> best(x.size(), -INFINITY);
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > x[k]) continue;
      best[k] = std::max(best[k], f[i]);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] <= x[k]) continue;
        const double p = (x[j] - x[k]) / (x[j] - x[i]);  // weight on x[i], mean exactly x[k]
        best[k] = std::max(best[k], p * f[i] + (1 - p) * f[j]);
      }
    }
  }
  return best;
}

/// Golden-section maximizer of a unimodal function on [lo, hi]; returns (x, f(x)).
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                            double tol = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    }
  }
  double best_x = 0.5 * (a + b);
  double best_f = f(best_x);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return {best_x, best_f};
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

}  // namespace oracle
