#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liebih/numeric.hpp"

namespace liebih {

/// One structure-constant entry: [e_i, e_j] = value, with i < j.
template <class S = double>
struct BracketEntry {
  Index i = 0;
  Index j = 0;
  Vector<S> value;
};

/// Finite-dimensional real Lie algebra given by structure constants in a
/// fixed basis (e_0, ..., e_{n-1}).
///
/// Internally the algebra stores ad(e_i) for every basis vector; column j of
/// ad(e_i) holds [e_i, e_j]. Only pairs i < j are taken from the input and
/// reflected, so antisymmetry holds by construction. The Jacobi identity is
/// not enforced here; see jacobi_defect().
template <class S = double>
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Abelian algebra of the given dimension.
  explicit LieAlgebra(Index dim) : ad_(static_cast<std::size_t>(dim), Matrix<S>::Zero(dim, dim)) {
    if (dim < 0) throw DimensionError("negative Lie algebra dimension");
  }

  LieAlgebra(Index dim, std::span<const BracketEntry<S>> entries) : LieAlgebra(dim) {
    for (const auto& e : entries) {
      if (e.i < 0 || e.j < 0 || e.i >= dim || e.j >= dim)
        throw DimensionError("bracket index out of range");
      if (e.i >= e.j) throw ValidationError("bracket entries must satisfy i < j");
      if (e.value.size() != dim) throw DimensionError("bracket value has wrong length");
      ad_[static_cast<std::size_t>(e.i)].col(e.j) = e.value;
      ad_[static_cast<std::size_t>(e.j)].col(e.i) = -e.value;
    }
  }

  LieAlgebra(Index dim, std::initializer_list<BracketEntry<S>> entries)
      : LieAlgebra(dim, std::span<const BracketEntry<S>>(entries.begin(), entries.size())) {}

  /// Builds from ad(e_i) matrices. The strict upper part (i < j) is kept and
  /// reflected; input whose lower part disagrees beyond tolerance is rejected.
  static LieAlgebra from_ad(const std::vector<Matrix<S>>& ad, const Tolerance& tol = {}) {
    const auto n = static_cast<Index>(ad.size());
    LieAlgebra out(n);
    double scale = 0.0;
    for (const auto& m : ad) {
      if (m.rows() != n || m.cols() != n) throw DimensionError("from_ad: ad matrix has wrong shape");
      scale = std::max(scale, max_abs(m));
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Vector<S> lhs = ad[static_cast<std::size_t>(i)].col(j);
        const Vector<S> rhs = ad[static_cast<std::size_t>(j)].col(i);
        if (!negligible(Vector<S>(lhs + rhs), scale, tol))
          throw ValidationError("from_ad: structure constants are not antisymmetric");
      }
    }
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        out.ad_[static_cast<std::size_t>(i)].col(j) = ad[static_cast<std::size_t>(i)].col(j);
        out.ad_[static_cast<std::size_t>(j)].col(i) = -ad[static_cast<std::size_t>(i)].col(j);
      }
    return out;
  }

  [[nodiscard]] Index dim() const { return static_cast<Index>(ad_.size()); }

  /// ad(e_i).
  [[nodiscard]] const Matrix<S>& ad_basis(Index i) const { return ad_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const std::vector<Matrix<S>>& ad_matrices() const { return ad_; }

  /// [e_i, e_j].
  [[nodiscard]] Vector<S> structure(Index i, Index j) const { return ad_basis(i).col(j); }

  /// Matrix of v -> [u, v].
  [[nodiscard]] Matrix<S> ad(const Vector<S>& u) const {
    check_length(u);
    Matrix<S> out = Matrix<S>::Zero(dim(), dim());
    for (Index i = 0; i < dim(); ++i)
      if (!is_zero_coeff(u(i))) out += u(i) * ad_[static_cast<std::size_t>(i)];
    return out;
  }

  [[nodiscard]] Vector<S> bracket(const Vector<S>& u, const Vector<S>& v) const {
    check_length(v);
    return ad(u) * v;
  }

  /// tr(ad(e_i)) for every i.
  [[nodiscard]] Vector<S> ad_traces() const {
    Vector<S> t(dim());
    for (Index i = 0; i < dim(); ++i) t(i) = ad_[static_cast<std::size_t>(i)].trace();
    return t;
  }

  /// Largest structure constant in absolute value.
  [[nodiscard]] double scale() const {
    double s = 0.0;
    for (const auto& m : ad_) s = std::max(s, max_abs(m));
    return s;
  }

  [[nodiscard]] bool is_abelian() const {
    for (const auto& m : ad_)
      if (!negligible(m, 0.0, Tolerance{0.0, 0.0})) return false;
    return true;
  }

  /// Same algebra written in the basis e'_i = sum_k p(k, i) e_k.
  [[nodiscard]] LieAlgebra change_basis(const Matrix<S>& p) const {
    if (p.rows() != dim() || p.cols() != dim()) throw DimensionError("change_basis: wrong matrix shape");
    const Matrix<S> pinv = numeric::inverse(p);
    std::vector<Matrix<S>> ad_new;
    ad_new.reserve(ad_.size());
    for (Index i = 0; i < dim(); ++i) ad_new.push_back(pinv * ad(p.col(i)) * p);
    return from_ad(ad_new, Tolerance{1e-9, 1e-9});
  }

 private:
  static bool is_zero_coeff(const S& s) {
    if constexpr (is_exact_v<S>) return s.is_zero();
    else return s == S(0);
  }

  void check_length(const Vector<S>& v) const {
    if (v.size() != dim()) throw DimensionError("vector length " + std::to_string(v.size()) +
                                                " does not match algebra dimension " + std::to_string(dim()));
  }

  std::vector<Matrix<S>> ad_;
};

/// Largest norm of the cyclic Jacobi sum over basis triples.
template <class S>
double jacobi_defect(const LieAlgebra<S>& alg) {
  const Index n = alg.dim();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        const Vector<S> ei = Vector<S>::Unit(n, i);
        const Vector<S> ej = Vector<S>::Unit(n, j);
        const Vector<S> ek = Vector<S>::Unit(n, k);
        const Vector<S> cyc = alg.bracket(alg.structure(i, j), ek) + alg.bracket(alg.structure(j, k), ei) +
                              alg.bracket(alg.structure(k, i), ej);
        worst = std::max(worst, max_abs(cyc));
      }
  return worst;
}

template <class S>
bool exact_jacobi(const LieAlgebra<S>& alg) {
  const Index n = alg.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        const Vector<S> cyc = alg.bracket(alg.structure(i, j), Vector<S>::Unit(n, k)) +
                              alg.bracket(alg.structure(j, k), Vector<S>::Unit(n, i)) +
                              alg.bracket(alg.structure(k, i), Vector<S>::Unit(n, j));
        if (!negligible(cyc, 0.0, Tolerance{0.0, 0.0})) return false;
      }
  return true;
}

/// Jacobi identity on all basis triples, within tol (exact scalars: exactly).
template <class S>
bool check_jacobi(const LieAlgebra<S>& alg, const Tolerance& tol = {}) {
  if constexpr (is_exact_v<S>) return exact_jacobi(alg);
  else return jacobi_defect(alg) <= tol.bound(alg.scale() * alg.scale());
}

/// Scalar product on the algebra, given by its Gram matrix in the basis.
template <class S = double>
class InnerProduct {
 public:
  InnerProduct() = default;

  explicit InnerProduct(Matrix<S> gram, const Tolerance& tol = {}) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw DimensionError("Gram matrix must be square");
    if (!numeric::is_symmetric(gram_, tol)) throw ValidationError("Gram matrix is not symmetric");
    if (!numeric::is_positive_definite(gram_, tol)) throw ValidationError("Gram matrix is not positive definite");
    if constexpr (!is_exact_v<S>) gram_ = (0.5 * (gram_ + gram_.transpose())).eval();
  }

  static InnerProduct identity(Index n) { return InnerProduct(Matrix<S>::Identity(n, n)); }

  [[nodiscard]] const Matrix<S>& gram() const { return gram_; }
  [[nodiscard]] Index dim() const { return gram_.rows(); }

  [[nodiscard]] S operator()(const Vector<S>& u, const Vector<S>& v) const { return u.dot(gram_ * v); }

  [[nodiscard]] double norm(const Vector<S>& u) const {
    return std::sqrt(std::max(0.0, to_double(u.dot(gram_ * u))));
  }

 private:
  Matrix<S> gram_;
};

/// The Levi-Civita product A of a Euclidean Lie algebra, stored as the
/// matrices A_{e_i} (column j = A_{e_i} e_j).
template <class S = double>
class LeviCivitaProduct {
 public:
  LeviCivitaProduct() = default;
  explicit LeviCivitaProduct(std::vector<Matrix<S>> ops) : ops_(std::move(ops)) {}

  [[nodiscard]] Index dim() const { return static_cast<Index>(ops_.size()); }
  [[nodiscard]] const Matrix<S>& basis_op(Index i) const { return ops_.at(static_cast<std::size_t>(i)); }

  /// Matrix of v -> A_u v.
  [[nodiscard]] Matrix<S> op(const Vector<S>& u) const {
    if (u.size() != dim()) throw DimensionError("Levi-Civita operand has wrong length");
    Matrix<S> out = Matrix<S>::Zero(dim(), dim());
    for (Index i = 0; i < dim(); ++i) out += u(i) * ops_[static_cast<std::size_t>(i)];
    return out;
  }

  [[nodiscard]] Vector<S> apply(const Vector<S>& u, const Vector<S>& v) const { return op(u) * v; }

 private:
  std::vector<Matrix<S>> ops_;
};

/// Solves the Koszul identity
///   2<A_u v, w> = <[u,v], w> + <[w,u], v> + <[w,v], u>
/// on basis triples.
template <class S>
LeviCivitaProduct<S> koszul(const LieAlgebra<S>& alg, const Matrix<S>& gram, const Matrix<S>& cometric) {
  const Index n = alg.dim();
  std::vector<Matrix<S>> ops;
  ops.reserve(static_cast<std::size_t>(n));
  const S half = S(1) / S(2);
  // lowered(i) = G * ad(e_i): entry (k, j) = <[e_i, e_j], e_k>.
  std::vector<Matrix<S>> lowered;
  lowered.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) lowered.push_back(gram * alg.ad_basis(i));
  for (Index i = 0; i < n; ++i) {
    Matrix<S> cov(n, n);  // cov(k, j) = <A_{e_i} e_j, e_k>
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        cov(k, j) = half * (lowered[static_cast<std::size_t>(i)](k, j) + lowered[static_cast<std::size_t>(k)](j, i) +
                            lowered[static_cast<std::size_t>(k)](i, j));
    ops.push_back(cometric * cov);
  }
  return LeviCivitaProduct<S>(std::move(ops));
}

/// A Lie algebra together with a scalar product: the data at the identity of
/// a Lie group carrying a left-invariant Riemannian metric.
///
/// The inverse Gram matrix and the Levi-Civita product are computed once at
/// construction; the object is immutable afterwards, so sharing it between
/// threads is safe.
template <class S = double>
class EuclideanLieAlgebra {
 public:
  EuclideanLieAlgebra() = default;

  EuclideanLieAlgebra(LieAlgebra<S> algebra, InnerProduct<S> metric)
      : algebra_(std::move(algebra)), metric_(std::move(metric)) {
    if (algebra_.dim() != metric_.dim())
      throw DimensionError("algebra dimension " + std::to_string(algebra_.dim()) + " differs from metric dimension " +
                           std::to_string(metric_.dim()));
    cometric_ = numeric::inverse(metric_.gram());
    levi_civita_ = koszul(algebra_, metric_.gram(), cometric_);
  }

  /// Metric given directly as a Gram matrix.
  EuclideanLieAlgebra(LieAlgebra<S> algebra, Matrix<S> gram)
      : EuclideanLieAlgebra(std::move(algebra), InnerProduct<S>(std::move(gram))) {}

  [[nodiscard]] Index dim() const { return algebra_.dim(); }
  [[nodiscard]] const LieAlgebra<S>& algebra() const { return algebra_; }
  [[nodiscard]] const InnerProduct<S>& metric() const { return metric_; }
  [[nodiscard]] const Matrix<S>& gram() const { return metric_.gram(); }
  [[nodiscard]] const Matrix<S>& cometric() const { return cometric_; }
  [[nodiscard]] const LeviCivitaProduct<S>& levi_civita() const { return levi_civita_; }

  [[nodiscard]] S inner(const Vector<S>& u, const Vector<S>& v) const { return metric_(u, v); }
  [[nodiscard]] double norm(const Vector<S>& u) const { return metric_.norm(u); }

  /// Metric dual of a covector: the vector w with <w, v> = c(v).
  [[nodiscard]] Vector<S> raise(const Vector<S>& covector) const { return cometric_ * covector; }

  [[nodiscard]] EuclideanLieAlgebra with_metric(Matrix<S> gram) const {
    return EuclideanLieAlgebra(algebra_, InnerProduct<S>(std::move(gram)));
  }

 private:
  LieAlgebra<S> algebra_;
  InnerProduct<S> metric_;
  Matrix<S> cometric_;
  LeviCivitaProduct<S> levi_civita_;
};

/// Bracket of two vectors in a Euclidean Lie algebra.
template <class S>
Vector<S> bracket(const EuclideanLieAlgebra<S>& ela, const Vector<S>& u, const Vector<S>& v) {
  return ela.algebra().bracket(u, v);
}

template <class S>
Matrix<S> ad(const LieAlgebra<S>& alg, const Vector<S>& u) {
  return alg.ad(u);
}

}  // namespace liebih
