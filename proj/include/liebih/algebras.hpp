#pragma once

// Named Lie algebras in their standard bases.

#include <vector>

#include "liebih/lie_algebra.hpp"

namespace liebih::algebras {

template <class S = double>
LieAlgebra<S> abelian(Index n) {
  return LieAlgebra<S>(n);
}

namespace detail {

template <class S>
Vector<S> vec(Index n, std::initializer_list<std::pair<Index, S>> entries) {
  Vector<S> v = Vector<S>::Zero(n);
  for (const auto& [k, x] : entries) v(k) = x;
  return v;
}

}  // namespace detail

/// Non-abelian 2-dimensional algebra, basis (e, f), [e, f] = a e.
template <class S = double>
LieAlgebra<S> e1(S a = S(1)) {
  return LieAlgebra<S>(2, {BracketEntry<S>{0, 1, detail::vec<S>(2, {{0, a}})}});
}

/// Heisenberg algebra, basis (z, f, g), [f, g] = alpha z.
template <class S = double>
LieAlgebra<S> heis3(S alpha = S(1)) {
  return LieAlgebra<S>(3, {BracketEntry<S>{1, 2, detail::vec<S>(3, {{0, alpha}})}});
}

/// sl(2,R), basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
template <class S = double>
LieAlgebra<S> sl2() {
  return LieAlgebra<S>(3, {BracketEntry<S>{0, 1, detail::vec<S>(3, {{1, S(2)}})},
                           BracketEntry<S>{0, 2, detail::vec<S>(3, {{2, S(-2)}})},
                           BracketEntry<S>{1, 2, detail::vec<S>(3, {{0, S(1)}})}});
}

/// so(3), basis (X1, X2, X3): [X1,X2] = c X3, [X2,X3] = c X1, [X3,X1] = c X2.
template <class S = double>
LieAlgebra<S> so3(S c = S(1)) {
  return LieAlgebra<S>(3, {BracketEntry<S>{0, 1, detail::vec<S>(3, {{2, c}})},
                           BracketEntry<S>{1, 2, detail::vec<S>(3, {{0, c}})},
                           BracketEntry<S>{0, 2, detail::vec<S>(3, {{1, S(-c)}})}});
}

/// 5-dimensional nilpotent algebra: [e1,e2] = e3, [e1,e3] = e5, [e2,e4] = e5
/// (0-based indices in code).
template <class S = double>
LieAlgebra<S> nilp5() {
  return LieAlgebra<S>(5, {BracketEntry<S>{0, 1, detail::vec<S>(5, {{2, S(1)}})},
                           BracketEntry<S>{0, 2, detail::vec<S>(5, {{4, S(1)}})},
                           BracketEntry<S>{1, 3, detail::vec<S>(5, {{4, S(1)}})}});
}

/// Columns spanning span{e1, e2, e3, e5} inside nilp5.
template <class S = double>
Matrix<S> nilp5_subalgebra_basis() {
  Matrix<S> b = Matrix<S>::Zero(5, 4);
  b(0, 0) = S(1);
  b(1, 1) = S(1);
  b(2, 2) = S(1);
  b(4, 3) = S(1);
  return b;
}

/// Euclidean motions of the plane: [e0,e1] = e2, [e0,e2] = -e1. Flat for the
/// identity metric.
template <class S = double>
LieAlgebra<S> e2() {
  return LieAlgebra<S>(3, {BracketEntry<S>{0, 1, detail::vec<S>(3, {{2, S(1)}})},
                           BracketEntry<S>{0, 2, detail::vec<S>(3, {{1, S(-1)}})}});
}

/// R acting on R^m through d: [e0, e_j] = sum_k d(k-1, j-1) e_k.
template <class S = double>
LieAlgebra<S> almost_abelian(const Matrix<S>& d) {
  if (d.rows() != d.cols()) throw DimensionError("almost_abelian: derivation must be square");
  const Index n = d.rows() + 1;
  std::vector<Matrix<S>> ad(static_cast<std::size_t>(n), Matrix<S>::Zero(n, n));
  ad[0].bottomRightCorner(n - 1, n - 1) = d;
  for (Index j = 1; j < n; ++j) ad[static_cast<std::size_t>(j)].col(0) = -ad[0].col(j);
  return LieAlgebra<S>::from_ad(ad, Tolerance{0.0, 0.0});
}

/// Direct product a x b, basis of a followed by basis of b.
template <class S = double>
LieAlgebra<S> product(const LieAlgebra<S>& a, const LieAlgebra<S>& b) {
  const Index n = a.dim() + b.dim();
  std::vector<Matrix<S>> ad(static_cast<std::size_t>(n), Matrix<S>::Zero(n, n));
  for (Index i = 0; i < a.dim(); ++i) ad[static_cast<std::size_t>(i)].topLeftCorner(a.dim(), a.dim()) = a.ad_basis(i);
  for (Index i = 0; i < b.dim(); ++i)
    ad[static_cast<std::size_t>(a.dim() + i)].bottomRightCorner(b.dim(), b.dim()) = b.ad_basis(i);
  return LieAlgebra<S>::from_ad(ad, Tolerance{0.0, 0.0});
}

/// Block-diagonal Gram matrix.
template <class S = double>
Matrix<S> block_diag(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out = Matrix<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace liebih::algebras
