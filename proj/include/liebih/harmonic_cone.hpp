#pragma once

// Harmonic inner automorphisms and the harmonic cone CH(g): metrics h with
// Id : (g, <,>) -> (g, h) harmonic, written h(u, v) = <J u, v>.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "liebih/maps.hpp"

namespace liebih {

/// An automorphism Ad of a Euclidean Lie algebra, checked at 100 tol.
template <class S = double>
class AdjointElement {
 public:
  AdjointElement(EuclideanLieAlgebra<S> base, Matrix<S> ad, const Tolerance& tol = {})
      : base_(std::move(base)), ad_(std::move(ad)) {
    const Index n = base_.dim();
    if (ad_.rows() != n || ad_.cols() != n) throw DimensionError("Ad matrix has wrong shape");
    const LieAlgebraMap<S> self(base_, base_, ad_);
    if (!validate_hom(self, tol.scaled(100.0))) throw ValidationError("Ad is not an automorphism");
    if (numeric::rank(ad_, tol) != n) throw ValidationError("Ad is not invertible");
  }

  [[nodiscard]] const EuclideanLieAlgebra<S>& base() const { return base_; }
  [[nodiscard]] const Matrix<S>& ad() const { return ad_; }
  [[nodiscard]] LieAlgebraMap<S> as_map() const { return LieAlgebraMap<S>(base_, base_, ad_); }

 private:
  EuclideanLieAlgebra<S> base_;
  Matrix<S> ad_;
};

/// alpha(u) = tr(Ad* ad_u Ad), as a covector in the dual basis.
template <class S>
Vector<S> alpha(const AdjointElement<S>& adj) {
  const auto& g = adj.base();
  const Index n = g.dim();
  const Matrix<S> ads = adjoint(g, adj.ad());
  Vector<S> out(n);
  for (Index k = 0; k < n; ++k) out(k) = (ads * g.algebra().ad_basis(k) * adj.ad()).trace();
  return out;
}

/// Tension of Ad as a self-map with equal metrics.
template <class S>
Vector<S> inner_tension(const AdjointElement<S>& adj, const Tolerance& tol = {}) {
  return tension(adj.as_map(), tol);
}

/// Ad_A on sl(2) in the basis (h, e, f): X -> A X A^{-1}.
template <class S = double>
Matrix<S> sl2_adjoint(const S& a, const S& b, const S& c, const S& d) {
  const S det = a * d - b * c;
  if (det == S(0)) throw ValidationError("sl2_adjoint: matrix is singular");
  Eigen::Matrix<S, 2, 2> m;
  m << a, b, c, d;
  Eigen::Matrix<S, 2, 2> inv;
  inv << d / det, -b / det, -c / det, a / det;
  std::array<Eigen::Matrix<S, 2, 2>, 3> basis;
  basis[0] << S(1), S(0), S(0), S(-1);
  basis[1] << S(0), S(1), S(0), S(0);
  basis[2] << S(0), S(0), S(1), S(0);
  Matrix<S> out(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const Eigen::Matrix<S, 2, 2> x = m * basis[k] * inv;
    const Index col = static_cast<Index>(k);
    out(0, col) = x(0, 0);
    out(1, col) = x(0, 1);
    out(2, col) = x(1, 0);
  }
  return out;
}

/// The three polynomial conditions for A = [[a, b], [c, d]] in SL(2) to give
/// a harmonic inner automorphism for the metric diag(a1, a2, a3) on (h, e, f).
template <class S = double>
std::array<S, 3> sl2_system(const S& a, const S& b, const S& c, const S& d, const S& a1, const S& a2, const S& a3,
                            const Tolerance& tol = {}) {
  const S det = a * d - b * c;
  if constexpr (is_exact_v<S>) {
    if (det != S(1)) throw ValidationError("sl2_system: determinant is " + det.str() + ", expected 1");
  } else {
    if (std::abs(det - 1.0) > tol.bound(std::abs(a * d) + std::abs(b * c)))
      throw ValidationError("sl2_system: determinant is " + std::to_string(det) + ", expected 1");
  }
  if (!(a1 > S(0) && a2 > S(0) && a3 > S(0))) throw ValidationError("sl2_system: metric weights must be positive");
  const S a12 = a1 / a2, a13 = a1 / a3, a21 = a2 / a1, a23 = a2 / a3, a31 = a3 / a1, a32 = a3 / a2;
  const S a2_ = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
  std::array<S, 3> r;
  r[0] = S(8) * (a2_ * b2 * a21 - c2 * d2 * a31) + S(2) * (a2_ * a2_ - d2 * d2 + b2 * b2 * a23 - c2 * c2 * a32);
  r[1] = S(2) * (a * d + b * c) * (S(2) * a * b * a21 + c * d) + a * c * (c2 * a12 + S(2) * a2_) +
         b * d * (d2 * a13 + S(2) * b2 * a23);
  r[2] = S(2) * (a * d + b * c) * (a * b + S(2) * c * d * a31) + a * c * (a2_ * a12 + S(2) * c2 * a32) +
         b * d * (b2 * a13 + S(2) * d2);
  return r;
}

template <class S = double>
struct ConeResult {
  /// Basis of the linear hull of CH(g), as endomorphisms J with h = <J., .>.
  std::vector<Matrix<S>> sym_basis;
  Index dimension = 0;
  Matrix<S> sample_interior;
};

namespace detail {

/// Rows of the linear system in vec(J) (column-major): metric symmetry
/// G J = J^T G, then tr(J ad_i) = tr(ad_{J e_i}).
template <class S>
Matrix<S> cone_system(const EuclideanLieAlgebra<S>& ela) {
  const Index n = ela.dim();
  const Matrix<S>& g = ela.gram();
  const Vector<S> traces = ela.algebra().ad_traces();
  Matrix<S> sys = Matrix<S>::Zero(n * n + n, n * n);
  const auto var = [n](Index row, Index col) { return col * n + row; };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index eq = var(i, j);
      for (Index k = 0; k < n; ++k) {
        sys(eq, var(k, j)) += g(i, k);
        sys(eq, var(k, i)) -= g(k, j);
      }
    }
  for (Index i = 0; i < n; ++i) {
    const Matrix<S>& ad = ela.algebra().ad_basis(i);
    const Index eq = n * n + i;
    for (Index k = 0; k < n; ++k)
      for (Index l = 0; l < n; ++l) sys(eq, var(k, l)) += ad(l, k);
    for (Index k = 0; k < n; ++k) sys(eq, var(k, i)) -= traces(k);
  }
  return sys;
}

}  // namespace detail

/// max_i |tr(J ad_i) - tr(ad_{J e_i})|.
template <class S>
double cone_defect(const EuclideanLieAlgebra<S>& ela, const Matrix<S>& j) {
  const Vector<S> traces = ela.algebra().ad_traces();
  double worst = 0.0;
  for (Index i = 0; i < ela.dim(); ++i) {
    const S r = (j * ela.algebra().ad_basis(i)).trace() - traces.dot(j.col(i));
    worst = std::max(worst, std::abs(to_double(r)));
  }
  return worst;
}

template <class S>
ConeResult<S> harmonic_cone(const EuclideanLieAlgebra<S>& ela, const Tolerance& tol = {}) {
  const Index n = ela.dim();
  const Matrix<S> kernel = numeric::nullspace(detail::cone_system(ela), tol);
  ConeResult<S> out;
  for (Index c = 0; c < kernel.cols(); ++c) out.sym_basis.push_back(numeric::unflatten(Vector<S>(kernel.col(c)), n, n));
  out.dimension = kernel.cols();
  out.sample_interior = Matrix<S>::Identity(n, n);
  const Vector<S> id = numeric::flatten(out.sample_interior);
  if (kernel.cols() == 0 || !numeric::solve_linear(kernel, id, tol.scaled(10.0)))
    throw OracleMismatch("harmonic_cone: identity is not in the solution space");
  return out;
}

struct DimensionCheck {
  Index measured = 0;
  Index predicted = 0;
};

/// dim CH(g) against n(n-1)/2 + dim Kill(g) for unimodular g.
template <class S>
DimensionCheck harmonic_dimension_check(const EuclideanLieAlgebra<S>& ela, const Tolerance& tol = {}) {
  if (!is_unimodular(ela.algebra(), tol)) throw ValidationError("harmonic_dimension_check: algebra is not unimodular");
  const Index n = ela.dim();
  DimensionCheck out;
  out.measured = harmonic_cone(ela, tol).dimension;
  out.predicted = n * (n - 1) / 2 + killing_subalgebra(ela, tol).cols();
  if (out.measured != out.predicted)
    throw OracleMismatch("harmonic dimension " + std::to_string(out.measured) + " differs from the predicted " +
                         std::to_string(out.predicted));
  return out;
}

/// Gram matrix of h(u, v) = <J u, v>.
template <class S>
Matrix<S> metric_from_cone(const EuclideanLieAlgebra<S>& ela, const Matrix<S>& j) {
  return ela.gram() * j;
}

/// J metric-symmetric; true iff the trace identity holds and J is positive.
template <class S>
bool ch_membership(const EuclideanLieAlgebra<S>& ela, const Matrix<S>& j, const Tolerance& tol = {}) {
  const Index n = ela.dim();
  if (j.rows() != n || j.cols() != n) throw DimensionError("J has wrong shape");
  const Matrix<S> h = metric_from_cone(ela, j);
  if (!numeric::is_symmetric(h, tol)) throw ValidationError("J is not symmetric for the metric");
  const double scale = max_abs(j) * (1.0 + ela.algebra().scale()) * static_cast<double>(n);
  if constexpr (is_exact_v<S>) {
    if (cone_defect(ela, j) != 0.0) return false;
  } else {
    if (cone_defect(ela, j) > tol.bound(scale)) return false;
  }
  const Matrix<S> hs = (h + h.transpose()) / S(2);
  return numeric::is_positive_definite(hs, tol);
}

}  // namespace liebih
