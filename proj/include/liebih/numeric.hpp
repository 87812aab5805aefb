#pragma once

// Dense linear-algebra kernel shared by the rest of the library.
//
// Every routine is templated on the scalar type. `double` is the working
// type; `Rational` gives exact answers for the operations that stay inside
// the rationals (no square roots, no SVD).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "liebih/error.hpp"
#include "liebih/rational.hpp"

namespace liebih {

using Index = Eigen::Index;

template <class S = double>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S = double>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

/// Absolute + relative tolerance. A quantity q with natural magnitude
/// `scale` is treated as zero when |q| <= abs + rel * scale.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  [[nodiscard]] double bound(double scale = 0.0) const { return abs + rel * scale; }
  [[nodiscard]] Tolerance scaled(double k) const { return Tolerance{abs * k, rel * k}; }
  [[nodiscard]] bool valid() const { return abs >= 0.0 && rel >= 0.0 && std::isfinite(abs) && std::isfinite(rel); }
};

template <class S>
double to_double(const S& s) {
  if constexpr (is_exact_v<S>) return s.to_double();
  else return static_cast<double>(s);
}

template <class S>
S from_double(double d) {
  if constexpr (is_exact_v<S>) return Rational::from_double(d);
  else return static_cast<S>(d);
}

template <class Derived>
Matrix<double> to_double_matrix(const Eigen::MatrixBase<Derived>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

template <class S, class Derived>
Matrix<S> cast_matrix(const Eigen::MatrixBase<Derived>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      using From = typename Derived::Scalar;
      if constexpr (std::is_same_v<From, S>) out(i, j) = m(i, j);
      else if constexpr (is_exact_v<S>) out(i, j) = Rational::from_double(to_double(m(i, j)));
      else out(i, j) = static_cast<S>(to_double(m(i, j)));
    }
  return out;
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  double out = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out = std::max(out, std::abs(to_double(m(i, j))));
  return out;
}

/// True when every entry is zero (exact scalars) or within tol.bound(scale).
template <class Derived>
bool negligible(const Eigen::MatrixBase<Derived>& m, double scale, const Tolerance& tol) {
  using S = typename Derived::Scalar;
  if constexpr (is_exact_v<S>) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) return false;
    return true;
  } else {
    return max_abs(m) <= tol.bound(scale);
  }
}

template <class S>
bool negligible_scalar(const S& s, double scale, const Tolerance& tol) {
  if constexpr (is_exact_v<S>) return s.is_zero();
  else return std::abs(to_double(s)) <= tol.bound(scale);
}

namespace numeric {

namespace detail {

/// Reduced row echelon form by exact Gauss-Jordan; returns pivot columns.
inline std::vector<Index> rref(Matrix<Rational>& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    const Rational inv = Rational(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline double rank_threshold(const Eigen::VectorXd& sigma, const Tolerance& tol) {
  const double smax = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
  return tol.rel * smax + tol.abs;
}

}  // namespace detail

/// Orthonormal (Euclidean) basis of the numerical kernel of `m`, one vector
/// per column. Singular values below tol.rel * sigma_max + tol.abs count as
/// zero.
inline Matrix<double> nullspace(const Matrix<double>& m, const Tolerance& tol = {}) {
  const Index n = m.cols();
  if (n == 0) return Matrix<double>(0, 0);
  if (m.rows() == 0) return Matrix<double>::Identity(n, n);
  Eigen::JacobiSVD<Matrix<double>> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double thr = detail::rank_threshold(sigma, tol);
  Index rank = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) >= thr && sigma(i) > 0.0) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

/// Exact kernel basis from the reduced row echelon form.
inline Matrix<Rational> nullspace(const Matrix<Rational>& m, const Tolerance& = {}) {
  const Index n = m.cols();
  Matrix<Rational> r = m;
  const auto pivots = detail::rref(r);
  std::vector<Index> free_cols;
  for (Index c = 0, p = 0; c < n; ++c) {
    if (p < static_cast<Index>(pivots.size()) && pivots[p] == c) ++p;
    else free_cols.push_back(c);
  }
  Matrix<Rational> out = Matrix<Rational>::Zero(n, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Index fc = free_cols[k];
    out(fc, static_cast<Index>(k)) = Rational(1);
    for (std::size_t p = 0; p < pivots.size(); ++p) out(pivots[p], static_cast<Index>(k)) = -r(static_cast<Index>(p), fc);
  }
  return out;
}

inline Index rank(const Matrix<double>& m, const Tolerance& tol = {}) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix<double>> svd(m);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double thr = detail::rank_threshold(sigma, tol);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) >= thr && sigma(i) > 0.0) ++r;
  return r;
}

inline Index rank(const Matrix<Rational>& m, const Tolerance& = {}) {
  Matrix<Rational> r = m;
  return static_cast<Index>(detail::rref(r).size());
}

/// Basis of the column space of `m`. Floating point returns orthonormal
/// left singular vectors; exact scalars return the pivot columns of `m`.
inline Matrix<double> column_space(const Matrix<double>& m, const Tolerance& tol = {}) {
  if (m.size() == 0) return Matrix<double>(m.rows(), 0);
  Eigen::JacobiSVD<Matrix<double>> svd(m, Eigen::ComputeFullU);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double thr = detail::rank_threshold(sigma, tol);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) >= thr && sigma(i) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

inline Matrix<Rational> column_space(const Matrix<Rational>& m, const Tolerance& = {}) {
  Matrix<Rational> r = m;
  const auto piv = detail::rref(r);
  Matrix<Rational> out(m.rows(), static_cast<Index>(piv.size()));
  for (std::size_t k = 0; k < piv.size(); ++k) out.col(static_cast<Index>(k)) = m.col(piv[k]);
  return out;
}

/// Expression arguments are evaluated to a plain matrix first.
template <class Derived>
auto nullspace(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  return nullspace(Matrix<typename Derived::Scalar>(m), tol);
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  return rank(Matrix<typename Derived::Scalar>(m), tol);
}

template <class Derived>
auto column_space(const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  return column_space(Matrix<typename Derived::Scalar>(m), tol);
}

/// Column-major flattening of a matrix into a vector.
template <class S>
Vector<S> flatten(const Matrix<S>& m) {
  Vector<S> out(m.size());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(j * m.rows() + i) = m(i, j);
  return out;
}

template <class S>
Matrix<S> unflatten(const Vector<S>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unflatten: size mismatch");
  Matrix<S> out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = v(j * rows + i);
  return out;
}

/// Inverse of a square matrix; throws ValidationError when singular.
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  if (m.rows() == 0) return m;
  if constexpr (is_exact_v<S>) {
    Matrix<Rational> aug(m.rows(), 2 * m.cols());
    aug << m, Matrix<Rational>::Identity(m.rows(), m.cols());
    const auto piv = detail::rref(aug);
    if (static_cast<Index>(piv.size()) < m.rows() || piv.back() >= m.cols())
      throw ValidationError("matrix is singular");
    return aug.rightCols(m.cols());
  } else {
    Eigen::FullPivLU<Matrix<S>> lu(m);
    if (!lu.isInvertible()) throw ValidationError("matrix is singular");
    return lu.inverse();
  }
}

/// Least-squares solution of m x = b; nullopt when the residual exceeds
/// tol.bound(|m| |x| + |b|) (exact scalars: when the system is inconsistent).
template <class S>
std::optional<Vector<S>> solve_linear(const Matrix<S>& m, const Vector<S>& b, const Tolerance& tol = {}) {
  if (b.size() != m.rows()) throw DimensionError("solve_linear: right-hand side length differs from row count");
  if constexpr (is_exact_v<S>) {
    Matrix<Rational> aug(m.rows(), m.cols() + 1);
    aug << m, b;
    const auto piv = detail::rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    Vector<Rational> x = Vector<Rational>::Zero(m.cols());
    for (std::size_t p = 0; p < piv.size(); ++p) x(piv[p]) = aug(static_cast<Index>(p), m.cols());
    return x;
  } else {
    if (m.cols() == 0) {
      if (negligible(b, 0.0, tol)) return Vector<S>(0);
      return std::nullopt;
    }
    const Vector<S> x = m.completeOrthogonalDecomposition().solve(b);
    const double residual = (m * x - b).norm();
    const double scale = m.norm() * x.norm() + b.norm();
    if (!(residual <= tol.bound(scale))) return std::nullopt;
    return x;
  }
}

template <class S>
bool is_symmetric(const Matrix<S>& m, const Tolerance& tol = {}) {
  if (m.rows() != m.cols()) return false;
  return negligible(m - m.transpose(), max_abs(m), tol);
}

/// True iff the symmetric matrix has all eigenvalues above tol.abs. Exact
/// scalars use Sylvester's criterion on the leading principal minors.
template <class S>
bool is_positive_definite(const Matrix<S>& m, const Tolerance& tol = {}) {
  if (!is_symmetric(m, tol)) throw ValidationError("is_positive_definite: matrix is not symmetric");
  if (m.rows() == 0) return true;
  if constexpr (is_exact_v<S>) {
    // Leading pivots of symmetric Gaussian elimination equal ratios of
    // consecutive leading minors.
    Matrix<Rational> a = m;
    for (Index k = 0; k < a.rows(); ++k) {
      if (a(k, k) <= Rational(0)) return false;
      for (Index i = k + 1; i < a.rows(); ++i) {
        const Rational f = a(i, k) / a(k, k);
        for (Index j = k; j < a.cols(); ++j) a(i, j) -= f * a(k, j);
      }
    }
    return true;
  } else {
    const Matrix<double> sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix<double>> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol.abs;
  }
}

/// Matrix exponential. Nilpotent inputs use the finite power series, which
/// is exact up to rounding; everything else uses scaling and squaring with
/// a Taylor kernel.
inline Matrix<double> matrix_exp(const Matrix<double>& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_exp of a non-square matrix");
  const Index n = m.rows();
  if (n == 0) return m;
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) return Matrix<double>::Identity(n, n);

  // m^n == 0 identifies nilpotent input.
  Matrix<double> power = m;
  for (Index k = 1; k < n; ++k) power = power * m;
  if (max_abs(power) <= 1e-14 * std::pow(norm, static_cast<double>(n))) {
    Matrix<double> out = Matrix<double>::Identity(n, n);
    Matrix<double> term = Matrix<double>::Identity(n, n);
    for (Index k = 1; k < n; ++k) {
      term = term * m / static_cast<double>(k);
      out += term;
    }
    return out;
  }

  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const Matrix<double> a = m / std::ldexp(1.0, squarings);
  Matrix<double> out = Matrix<double>::Identity(n, n);
  Matrix<double> term = Matrix<double>::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * a / static_cast<double>(k);
    out += term;
  }
  for (int s = 0; s < squarings; ++s) out = out * out;
  return out;
}

/// Columns b_i with b_i^T gram b_j = delta_ij, from the Cholesky factor
/// gram = L L^T (B = L^{-T}).
inline Matrix<double> orthonormal_basis(const Matrix<double>& gram, const Tolerance& tol = {}) {
  if (!is_positive_definite(gram, tol)) throw ValidationError("orthonormal_basis: Gram matrix is not positive definite");
  const Index n = gram.rows();
  Eigen::LLT<Matrix<double>> llt(0.5 * (gram + gram.transpose()));
  if (llt.info() != Eigen::Success) throw ValidationError("orthonormal_basis: Cholesky factorization failed");
  const Matrix<double> lower = llt.matrixL();
  return lower.transpose().triangularView<Eigen::Upper>().solve(Matrix<double>::Identity(n, n));
}

/// Sum of f(b_i, b_i) over a gram-orthonormal frame (b_i), for f bilinear.
///
/// Floating point evaluates on the Cholesky frame. Exact scalars use the
/// equivalent frame-free contraction sum_ab (gram^{-1})_ab f(e_a, e_b).
template <class S, class Result, class F>
Result frame_sum(const Matrix<S>& gram, Result zero, F&& f) {
  const Index n = gram.rows();
  Result acc = std::move(zero);
  if constexpr (is_exact_v<S>) {
    const Matrix<S> co = inverse(gram);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        if (co(a, b).is_zero()) continue;
        acc += co(a, b) * f(Vector<S>::Unit(n, a), Vector<S>::Unit(n, b));
      }
  } else {
    const Matrix<S> frame = orthonormal_basis(gram);
    for (Index i = 0; i < n; ++i) {
      const Vector<S> b = frame.col(i);
      acc += f(b, b);
    }
  }
  return acc;
}

}  // namespace numeric
}  // namespace liebih
