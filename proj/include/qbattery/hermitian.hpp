#pragma once

// Dense Hermitian algebra on multi-qubit registers: eigendecomposition,
// Kronecker products, partial traces and single-site superoperators.
//
// Conventions
//   * Site 0 is the leftmost tensor factor, i.e. the most significant bit of
//     a computational-basis index (|q0 q1 ... q_{n-1}>).
//   * Superoperators act on column-stacked density matrices:
//     vec(rho)[i + d*j] = rho(i, j). This is Eigen's native storage order for
//     column-major matrices, so vec/unvec are zero-copy maps.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qbattery/errors.hpp"

namespace qbattery {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexMatrix = DenseMatrix<std::complex<Real>>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = ComplexMatrix<double>;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  RealOf<Derived> tolerance = RealOf<Derived>(kHermitianTolerance)) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const char* where) {
  if (!is_hermitian(m)) {
    throw ValidationError(std::string(where) + ": matrix is not Hermitian within tolerance");
  }
}

/// Number of qubits for a register of dimension `dim`; rejects non powers of
/// two and registers larger than kMaxQubits.
inline int qubit_count(Eigen::Index dim) {
  require(dim >= 1, "qubit_count: empty register");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    require(d % 2 == 0, "qubit_count: dimension " + std::to_string(dim) + " is not a power of two");
    d /= 2;
    ++n;
  }
  require(n <= kMaxQubits, "qubit_count: " + std::to_string(n) + " qubits exceeds the maximum of " +
                               std::to_string(kMaxQubits));
  return n;
}

template <typename Scalar>
struct Eigensystem {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  RealVector<Real> values;       ///< ascending
  DenseMatrix<Scalar> vectors;   ///< orthonormal columns, vectors.col(k) <-> values(k)
};

/// Full eigendecomposition M = V diag(values) V^dagger of a Hermitian matrix.
/// Eigenvalues are ascending; the order among exact ties is whatever the
/// tridiagonal QR produces, which is deterministic for a given input.
template <typename Derived>
Eigensystem<typename Derived::Scalar> eig_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m.derived().eval(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
RealVector<RealOf<Derived>> eigenvalues_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_hermitian(m, "eigenvalues_hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m.derived().eval(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenvalues_hermitian: eigensolver did not converge");
  return solver.eigenvalues();
}

template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return DenseMatrix<typename DerivedA::Scalar>(Eigen::kroneckerProduct(a.derived(), b.derived()));
}

/// factors[0] ⊗ factors[1] ⊗ ... (site 0 leftmost).
template <typename Scalar>
DenseMatrix<Scalar> tensor_all(std::span<const DenseMatrix<Scalar>> factors) {
  require(!factors.empty(), "tensor_all: no factors");
  DenseMatrix<Scalar> out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

template <typename Derived>
auto tensor_power(const Eigen::MatrixBase<Derived>& m, int n) {
  require(n >= 1, "tensor_power: exponent must be positive");
  DenseMatrix<typename Derived::Scalar> out = m;
  for (int k = 1; k < n; ++k) out = tensor(out, m);
  return out;
}

/// Trace over every site not listed in `keep`. `site_dims` gives the local
/// dimension of each site (site 0 leftmost); the kept sites appear in the
/// output in ascending site order.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& rho,
                                                    std::span<const int> site_dims,
                                                    std::span<const int> keep) {
  using Scalar = typename Derived::Scalar;
  const auto sites = static_cast<int>(site_dims.size());
  require(rho.rows() == rho.cols(), "partial_trace: matrix is not square");
  Eigen::Index total = 1;
  for (int d : site_dims) {
    require(d >= 1, "partial_trace: site dimensions must be positive");
    total *= d;
  }
  require(total == rho.rows(), "partial_trace: product of site dimensions does not match matrix dimension");

  std::vector<bool> kept(site_dims.size(), false);
  for (int s : keep) {
    require(s >= 0 && s < sites, "partial_trace: kept site index out of range");
    require(!kept[s], "partial_trace: duplicate kept site");
    kept[s] = true;
  }

  // Row-major mixed radix: site 0 has the largest stride.
  std::vector<Eigen::Index> stride(site_dims.size(), 1);
  for (int s = sites - 2; s >= 0; --s) stride[s] = stride[s + 1] * site_dims[s + 1];

  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
  for (int s = 0; s < sites; ++s) (kept[s] ? kept_dim : traced_dim) *= site_dims[s];

  // groups[t] lists the full indices sharing traced multi-index t, ordered by kept index.
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(traced_dim),
                                                std::vector<Eigen::Index>(static_cast<std::size_t>(kept_dim)));
  for (Eigen::Index full = 0; full < total; ++full) {
    Eigen::Index k = 0, t = 0;
    for (int s = 0; s < sites; ++s) {
      const Eigen::Index digit = (full / stride[s]) % site_dims[s];
      if (kept[s]) k = k * site_dims[s] + digit;
      else t = t * site_dims[s] + digit;
    }
    groups[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = full;
  }

  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(kept_dim, kept_dim);
  for (const auto& idx : groups) out += rho.derived()(idx, idx);
  return out;
}

/// Linear map on d x d matrices stored as a d^2 x d^2 matrix acting on
/// column-stacked vectors.
template <typename Real>
class BasicSuperoperator {
 public:
  using MatrixType = ComplexMatrix<Real>;

  explicit BasicSuperoperator(MatrixType matrix) : matrix_(std::move(matrix)) {
    require(matrix_.rows() == matrix_.cols(), "Superoperator: matrix must be square");
    dim_ = 0;
    while (static_cast<Eigen::Index>(dim_) * dim_ < matrix_.rows()) ++dim_;
    require(static_cast<Eigen::Index>(dim_) * dim_ == matrix_.rows(),
            "Superoperator: size must be a perfect square");
  }

  static BasicSuperoperator identity(int dim) {
    return BasicSuperoperator(MatrixType::Identity(dim * dim, dim * dim));
  }

  int dim() const { return dim_; }
  const MatrixType& matrix() const { return matrix_; }

  template <typename Derived>
  MatrixType operator()(const Eigen::MatrixBase<Derived>& rho) const {
    require(rho.rows() == dim_ && rho.cols() == dim_, "Superoperator: input dimension mismatch");
    const MatrixType in = rho;
    Eigen::Map<const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>> v(in.data(), in.size());
    MatrixType out(dim_, dim_);
    Eigen::Map<Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>>(out.data(), out.size()) = matrix_ * v;
    return out;
  }

  /// (*this) ∘ other
  BasicSuperoperator compose(const BasicSuperoperator& other) const {
    require(other.dim_ == dim_, "Superoperator::compose: dimension mismatch");
    return BasicSuperoperator(matrix_ * other.matrix_);
  }

  /// Choi matrix sum_{ij} |i><j| ⊗ S(|i><j|).
  MatrixType choi() const {
    MatrixType c = MatrixType::Zero(dim_ * dim_, dim_ * dim_);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        MatrixType e = MatrixType::Zero(dim_, dim_);
        e(i, j) = 1;
        c.block(i * dim_, j * dim_, dim_, dim_) = (*this)(e);
      }
    }
    return c;
  }

 private:
  MatrixType matrix_;
  int dim_ = 0;
};

using Superoperator = BasicSuperoperator<double>;

/// Apply a single-qubit superoperator to one site of an n-qubit register.
template <typename Real, typename Derived>
ComplexMatrix<Real> apply_on_site(const BasicSuperoperator<Real>& op, const Eigen::MatrixBase<Derived>& rho,
                                  int site) {
  require(op.dim() == 2, "apply_on_site: superoperator must act on a single qubit");
  require(rho.rows() == rho.cols(), "apply_on_site: matrix is not square");
  const int n = qubit_count(rho.rows());
  require(site >= 0 && site < n, "apply_on_site: site index out of range");

  const Eigen::Index dim = rho.rows();
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - site);
  const auto& s = op.matrix();
  ComplexMatrix<Real> out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const int b = (c & mask) ? 1 : 0;
    const Eigen::Index c0 = c & ~mask;
    const Eigen::Index c1 = c | mask;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const int a = (r & mask) ? 1 : 0;
      const Eigen::Index r0 = r & ~mask;
      const Eigen::Index r1 = r | mask;
      const Eigen::Index row = a + 2 * b;
      // vec index of |a'><b'| is a' + 2 b'
      out(r, c) = s(row, 0) * rho(r0, c0) + s(row, 1) * rho(r1, c0) + s(row, 2) * rho(r0, c1) +
                  s(row, 3) * rho(r1, c1);
    }
  }
  return out;
}

/// Apply the same single-qubit superoperator on every site.
template <typename Real, typename Derived>
ComplexMatrix<Real> apply_on_all_sites(const BasicSuperoperator<Real>& op, const Eigen::MatrixBase<Derived>& rho) {
  ComplexMatrix<Real> out = rho;
  const int n = qubit_count(rho.rows());
  for (int site = 0; site < n; ++site) out = apply_on_site(op, out, site);
  return out;
}

/// Validates unit trace, Hermiticity and positivity of a density matrix.
template <typename Derived>
void require_density_matrix(const Eigen::MatrixBase<Derived>& rho, const char* where) {
  require_hermitian(rho, where);
  const auto tr = rho.trace();
  if (std::abs(tr - typename Derived::Scalar(1)) > kTraceTolerance) {
    throw ValidationError(std::string(where) + ": density matrix does not have unit trace");
  }
  if (eigenvalues_hermitian(rho).minCoeff() < -kPositivityTolerance) {
    throw ValidationError(std::string(where) + ": density matrix has a negative eigenvalue");
  }
}

/// |psi><psi| for a (not necessarily normalized) vector.
template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& psi) {
  return DenseMatrix<typename Derived::Scalar>(psi * psi.adjoint());
}

}  // namespace qbattery
