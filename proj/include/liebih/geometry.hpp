#pragma once

// Left-invariant geometry of a Euclidean Lie algebra: metric adjoints,
// unimodularity vector, curvature, Ricci operator, Killing subalgebra,
// subalgebras with their second fundamental form, and quotients by ideals.

#include <string>
#include <utility>
#include <vector>

#include "liebih/lie_algebra.hpp"

namespace liebih {

/// Metric adjoint of ad_u: the matrix M with <ad_u v, w> = <v, M w>.
template <class S>
Matrix<S> ad_star(const EuclideanLieAlgebra<S>& ela, const Vector<S>& u) {
  return ela.cometric() * ela.algebra().ad(u).transpose() * ela.gram();
}

/// Metric adjoint of an arbitrary operator on the algebra.
template <class S>
Matrix<S> adjoint(const EuclideanLieAlgebra<S>& ela, const Matrix<S>& op) {
  return ela.cometric() * op.transpose() * ela.gram();
}

/// U with <U, v> = tr(ad_v).
template <class S>
Vector<S> unimodular_vector_trace(const EuclideanLieAlgebra<S>& ela) {
  return ela.raise(ela.algebra().ad_traces());
}

/// U = sum_i A_{b_i} b_i over an orthonormal frame.
template <class S>
Vector<S> unimodular_vector_frame(const EuclideanLieAlgebra<S>& ela) {
  const auto& lc = ela.levi_civita();
  return numeric::frame_sum(ela.gram(), Vector<S>(Vector<S>::Zero(ela.dim())),
                            [&](const Vector<S>& a, const Vector<S>& b) { return Vector<S>(lc.apply(a, b)); });
}

/// Unimodularity vector. Both defining formulas are evaluated; they must agree
/// within 10 tol or OracleMismatch is thrown.
template <class S>
Vector<S> unimodular_vector(const EuclideanLieAlgebra<S>& ela, const Tolerance& tol = {}) {
  const Vector<S> trace_form = unimodular_vector_trace(ela);
  const Vector<S> frame_form = unimodular_vector_frame(ela);
  const double scale = ela.algebra().scale() * (1.0 + max_abs(ela.cometric())) * (1.0 + max_abs(ela.gram()));
  if (!negligible(Vector<S>(trace_form - frame_form), scale, tol.scaled(10.0)))
    throw OracleMismatch("unimodularity vector: trace form and frame sum disagree");
  return trace_form;
}

template <class S>
bool is_unimodular(const LieAlgebra<S>& alg, const Tolerance& tol = {}) {
  return negligible(alg.ad_traces(), alg.scale(), tol);
}

/// Largest torsion defect |A_u v - A_v u - [u,v]| over basis pairs.
template <class S>
double torsion_defect(const EuclideanLieAlgebra<S>& ela) {
  const Index n = ela.dim();
  const auto& lc = ela.levi_civita();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Vector<S> d = lc.basis_op(i).col(j) - lc.basis_op(j).col(i) - ela.algebra().structure(i, j);
      worst = std::max(worst, max_abs(d));
    }
  return worst;
}

/// Largest metric-compatibility defect |<A_u v, w> + <v, A_u w>| over basis triples.
template <class S>
double compatibility_defect(const EuclideanLieAlgebra<S>& ela) {
  const auto& lc = ela.levi_civita();
  double worst = 0.0;
  for (Index i = 0; i < ela.dim(); ++i) {
    const Matrix<S> lowered = ela.gram() * lc.basis_op(i);
    worst = std::max(worst, max_abs(Matrix<S>(lowered + lowered.transpose())));
  }
  return worst;
}

/// K(u,v) = [A_u, A_v] - A_{[u,v]}.
template <class S>
Matrix<S> curvature(const EuclideanLieAlgebra<S>& ela, const Vector<S>& u, const Vector<S>& v) {
  const auto& lc = ela.levi_civita();
  const Matrix<S> au = lc.op(u);
  const Matrix<S> av = lc.op(v);
  return au * av - av * au - lc.op(ela.algebra().bracket(u, v));
}

/// ric(u) = sum_i K(u, b_i) b_i over an orthonormal frame.
template <class S>
Matrix<S> ricci_operator(const EuclideanLieAlgebra<S>& ela) {
  const Index n = ela.dim();
  Matrix<S> out(n, n);
  for (Index k = 0; k < n; ++k) {
    const Vector<S> ek = Vector<S>::Unit(n, k);
    out.col(k) = numeric::frame_sum(ela.gram(), Vector<S>(Vector<S>::Zero(n)),
                                    [&](const Vector<S>& a, const Vector<S>& b) {
                                      return Vector<S>(curvature(ela, ek, a) * b);
                                    });
  }
  return out;
}

/// True when every bracket of basis columns stays in their span.
template <class S>
bool span_closed(const LieAlgebra<S>& alg, const Matrix<S>& basis, const Tolerance& tol = {}) {
  const Index k = basis.cols();
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b) {
      const Vector<S> w = alg.bracket(basis.col(a), basis.col(b));
      if (!numeric::solve_linear(basis, w, tol)) return false;
    }
  return true;
}

/// Kill(g) = {u : ad_u + ad_u^* = 0}, one basis vector per column.
template <class S>
Matrix<S> killing_subalgebra(const EuclideanLieAlgebra<S>& ela, const Tolerance& tol = {}) {
  const Index n = ela.dim();
  Matrix<S> system(n * n, n);
  for (Index i = 0; i < n; ++i) {
    const Vector<S> ei = Vector<S>::Unit(n, i);
    system.col(i) = numeric::flatten(Matrix<S>(ela.algebra().ad(ei) + ad_star(ela, ei)));
  }
  Matrix<S> kill = numeric::nullspace(system, tol);
  if (!span_closed(ela.algebra(), kill, tol.scaled(10.0)))
    throw OracleMismatch("Killing subalgebra is not closed under the bracket");
  return kill;
}

template <class S>
bool is_biinvariant(const EuclideanLieAlgebra<S>& ela, const Tolerance& tol = {}) {
  return killing_subalgebra(ela, tol).cols() == ela.dim();
}

/// Span of all brackets [e_i, e_j].
template <class S>
Matrix<S> derived_algebra(const LieAlgebra<S>& alg, const Tolerance& tol = {}) {
  const Index n = alg.dim();
  Matrix<S> all(n, n * n);
  for (Index i = 0; i < n; ++i) all.middleCols(i * n, n) = alg.ad_basis(i);
  return numeric::column_space(all, tol);
}

/// Center {u : ad_u = 0}.
template <class S>
Matrix<S> center(const LieAlgebra<S>& alg, const Tolerance& tol = {}) {
  const Index n = alg.dim();
  Matrix<S> system(n * n, n);
  for (Index i = 0; i < n; ++i) system.col(i) = numeric::flatten(alg.ad_basis(i));
  return numeric::nullspace(system, tol);
}

/// Derivation defect of an endomorphism: max |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|.
template <class S>
double derivation_defect(const LieAlgebra<S>& alg, const Matrix<S>& d) {
  const Index n = alg.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionError("derivation has wrong shape");
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vector<S> ei = Vector<S>::Unit(n, i);
      const Vector<S> ej = Vector<S>::Unit(n, j);
      const Vector<S> r = d * alg.structure(i, j) - alg.bracket(d.col(i), ej) - alg.bracket(ei, d.col(j));
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

template <class S>
bool exact_derivation(const LieAlgebra<S>& alg, const Matrix<S>& d) {
  const Index n = alg.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vector<S> r = d * alg.structure(i, j) - alg.bracket(d.col(i), Vector<S>::Unit(n, j)) -
                          alg.bracket(Vector<S>::Unit(n, i), d.col(j));
      if (!negligible(r, 0.0, Tolerance{0.0, 0.0})) return false;
    }
  return true;
}

template <class S>
bool is_derivation(const LieAlgebra<S>& alg, const Matrix<S>& d, const Tolerance& tol = {}) {
  if constexpr (is_exact_v<S>) return exact_derivation(alg, d);
  else return derivation_defect(alg, d) <= tol.bound(alg.scale() * (1.0 + max_abs(d)));
}

/// Basis of Der(alg).
template <class S>
std::vector<Matrix<S>> derivations(const LieAlgebra<S>& alg, const Tolerance& tol = {}) {
  const Index n = alg.dim();
  const Index pairs = n * (n - 1) / 2;
  Matrix<S> system = Matrix<S>::Zero(std::max<Index>(pairs * n, 1), n * n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      Matrix<S> d = Matrix<S>::Zero(n, n);
      d(p, q) = S(1);
      Index row = 0;
      for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, row += n) {
          const Vector<S> r = d * alg.structure(i, j) - alg.bracket(d.col(i), Vector<S>::Unit(n, j)) -
                              alg.bracket(Vector<S>::Unit(n, i), d.col(j));
          system.block(row, q * n + p, n, 1) = r;
        }
    }
  const Matrix<S> kernel = numeric::nullspace(system, tol);
  std::vector<Matrix<S>> out;
  for (Index c = 0; c < kernel.cols(); ++c) out.push_back(numeric::unflatten(Vector<S>(kernel.col(c)), n, n));
  return out;
}

/// A subalgebra of a Euclidean Lie algebra, spanned by the columns of
/// `basis` (stored as given).
template <class S = double>
class Subalgebra {
 public:
  Subalgebra(EuclideanLieAlgebra<S> parent, Matrix<S> basis, const Tolerance& tol = {})
      : parent_(std::move(parent)), basis_(std::move(basis)) {
    if (basis_.rows() != parent_.dim()) throw DimensionError("subalgebra basis has wrong length");
    if (numeric::rank(basis_, tol) != basis_.cols()) throw ValidationError("subalgebra basis is not independent");
    if (!span_closed(parent_.algebra(), basis_, tol)) throw ValidationError("subspace is not closed under the bracket");
  }

  [[nodiscard]] const EuclideanLieAlgebra<S>& parent() const { return parent_; }
  [[nodiscard]] const Matrix<S>& basis() const { return basis_; }
  [[nodiscard]] Index dim() const { return basis_.cols(); }

  [[nodiscard]] Matrix<S> induced_gram() const { return basis_.transpose() * parent_.gram() * basis_; }

  /// Orthogonal projector onto the complement: I - B (B^T G B)^{-1} B^T G.
  [[nodiscard]] Matrix<S> normal_projector() const {
    const Index n = parent_.dim();
    if (dim() == 0) return Matrix<S>::Identity(n, n);
    return Matrix<S>::Identity(n, n) -
           basis_ * numeric::inverse(induced_gram()) * basis_.transpose() * parent_.gram();
  }

  [[nodiscard]] bool contains(const Vector<S>& v, const Tolerance& tol = {}) const {
    if (dim() == 0) return negligible(v, 0.0, tol);
    return numeric::solve_linear(basis_, v, tol).has_value();
  }

  [[nodiscard]] bool is_ideal(const Tolerance& tol = {}) const {
    const Index n = parent_.dim();
    for (Index i = 0; i < n; ++i)
      for (Index c = 0; c < dim(); ++c)
        if (!contains(parent_.algebra().bracket(Vector<S>::Unit(n, i), basis_.col(c)), tol)) return false;
    return true;
  }

  /// The subalgebra as an algebra of its own in the given basis, with the
  /// induced metric.
  [[nodiscard]] EuclideanLieAlgebra<S> intrinsic(const Tolerance& tol = {}) const {
    const Index k = dim();
    std::vector<Matrix<S>> ads;
    for (Index a = 0; a < k; ++a) {
      Matrix<S> m(k, k);
      for (Index b = 0; b < k; ++b) {
        const auto coords = numeric::solve_linear(basis_, Vector<S>(parent_.algebra().bracket(basis_.col(a), basis_.col(b))), tol);
        if (!coords) throw ValidationError("subspace is not closed under the bracket");
        m.col(b) = *coords;
      }
      ads.push_back(m);
    }
    return EuclideanLieAlgebra<S>(LieAlgebra<S>::from_ad(ads, tol.scaled(10.0)), induced_gram());
  }

 private:
  EuclideanLieAlgebra<S> parent_;
  Matrix<S> basis_;
};

template <class S>
struct SecondFundamentalForm {
  /// h[a][b] = normal part of A_{b_a} b_b for the stored basis (b_a).
  std::vector<std::vector<Vector<S>>> h;
  /// Trace of h over an induced-orthonormal frame.
  Vector<S> mean_curvature;
};

template <class S>
SecondFundamentalForm<S> second_fundamental(const Subalgebra<S>& sub) {
  const auto& parent = sub.parent();
  const Index n = parent.dim();
  const Index k = sub.dim();
  const Matrix<S> q = sub.normal_projector();
  const auto& lc = parent.levi_civita();
  SecondFundamentalForm<S> out;
  out.h.assign(static_cast<std::size_t>(k), std::vector<Vector<S>>(static_cast<std::size_t>(k)));
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      out.h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          q * lc.apply(sub.basis().col(a), sub.basis().col(b));
  out.mean_curvature = Vector<S>::Zero(n);
  if (k > 0) {
    const Matrix<S>& basis = sub.basis();
    out.mean_curvature = numeric::frame_sum(sub.induced_gram(), Vector<S>(Vector<S>::Zero(n)),
                                            [&](const Vector<S>& x, const Vector<S>& y) {
                                              return Vector<S>(q * lc.apply(Vector<S>(basis * x), Vector<S>(basis * y)));
                                            });
  }
  return out;
}

/// g / ideal with the metric carried by the orthogonal complement.
///
/// `projection` (q x n) is the quotient map in the chosen quotient basis and
/// `section` (n x q) its inverse restricted to the orthogonal complement, so
/// that projection * section = I.
template <class S>
struct Quotient {
  EuclideanLieAlgebra<S> algebra;
  Matrix<S> projection;
  Matrix<S> section;
};

template <class S>
Quotient<S> quotient_metric(const Subalgebra<S>& ideal, const Tolerance& tol = {}) {
  if (!ideal.is_ideal(tol)) throw ValidationError("quotient_metric: subalgebra is not an ideal");
  const auto& parent = ideal.parent();
  const Index n = parent.dim();
  const Index k = ideal.dim();
  // Complement basis W: columns spanning {w : B^T G w = 0}.
  Matrix<S> w;
  if (k == 0) {
    w = Matrix<S>::Identity(n, n);
  } else {
    const Matrix<S> constraint = ideal.basis().transpose() * parent.gram();
    w = numeric::nullspace(constraint, tol);
  }
  const Index q = w.cols();
  // Quotient coordinates: x = P v where v = B y + W x.
  Matrix<S> full(n, n);
  full << ideal.basis(), w;
  const Matrix<S> coords = numeric::inverse(full);
  const Matrix<S> projection = coords.bottomRows(q);
  std::vector<Matrix<S>> ads;
  for (Index a = 0; a < q; ++a) ads.push_back(projection * parent.algebra().ad(w.col(a)) * w);
  LieAlgebra<S> alg = LieAlgebra<S>::from_ad(ads, tol.scaled(10.0));
  Matrix<S> gram = w.transpose() * parent.gram() * w;
  return Quotient<S>{EuclideanLieAlgebra<S>(std::move(alg), std::move(gram)), projection, w};
}

}  // namespace liebih
