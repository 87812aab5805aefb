#pragma once

// Extensions g = n (+) h from data (rho, omega), the projection g -> h and
// recipes producing harmonic or biharmonic submersions.
//
// Bracket on n (+) h:
//   [u, v] = [u, v]_n                  u, v in n
//   [a, b] = [a, b]_h + omega(a, b)    a, b in h
//   [a, u] = rho(a) u                  a in h, u in n

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "liebih/algebras.hpp"
#include "liebih/maps.hpp"

namespace liebih {

template <class S = double>
class SemidirectData {
 public:
  /// rho[a] is rho(h_a) on n; omega[a * k + b] = omega(h_a, h_b), k = dim h.
  SemidirectData(EuclideanLieAlgebra<S> n, LieAlgebra<S> h, Matrix<S> gram1, Matrix<S> gram2, std::vector<Matrix<S>> rho,
                 std::vector<Vector<S>> omega_values, const Tolerance& tol = {})
      : n_(std::move(n)),
        h_(std::move(h)),
        gram1_(std::move(gram1)),
        gram2_(std::move(gram2)),
        rho_(std::move(rho)),
        omega_(std::move(omega_values)) {
    const Index k = h_.dim();
    const Index m = n_.dim();
    if (gram1_.rows() != k || gram1_.cols() != k || gram2_.rows() != k || gram2_.cols() != k)
      throw DimensionError("semidirect: metrics on h have wrong shape");
    if (!numeric::is_positive_definite(gram1_, tol) || !numeric::is_positive_definite(gram2_, tol))
      throw ValidationError("semidirect: metrics on h must be positive definite");
    if (static_cast<Index>(rho_.size()) != k) throw DimensionError("semidirect: rho needs one matrix per basis vector of h");
    for (const auto& r : rho_)
      if (r.rows() != m || r.cols() != m) throw DimensionError("semidirect: rho values must be square of size dim n");
    if (omega_.empty()) omega_.assign(static_cast<std::size_t>(k * k), Vector<S>::Zero(m));
    if (static_cast<Index>(omega_.size()) != k * k) throw DimensionError("semidirect: omega needs dim(h)^2 entries");
    for (const auto& w : omega_)
      if (w.size() != m) throw DimensionError("semidirect: omega values must lie in n");
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        if (!negligible(Vector<S>(omega(a, b) + omega(b, a)), max_abs(omega(a, b)), tol))
          throw ValidationError("semidirect: omega is not antisymmetric");
    for (Index a = 0; a < k; ++a)
      if (!is_derivation(n_.algebra(), rho_[static_cast<std::size_t>(a)], tol))
        throw ValidationError("semidirect: rho(h_" + std::to_string(a) + ") is not a derivation of n");
  }

  [[nodiscard]] const EuclideanLieAlgebra<S>& n() const { return n_; }
  [[nodiscard]] const LieAlgebra<S>& h() const { return h_; }
  [[nodiscard]] const Matrix<S>& gram1() const { return gram1_; }
  [[nodiscard]] const Matrix<S>& gram2() const { return gram2_; }
  [[nodiscard]] const std::vector<Matrix<S>>& rho() const { return rho_; }
  [[nodiscard]] const std::vector<Vector<S>>& omega_table() const { return omega_; }
  [[nodiscard]] const Vector<S>& omega(Index a, Index b) const { return omega_.at(static_cast<std::size_t>(a * h_.dim() + b)); }

  [[nodiscard]] Matrix<S> rho_of(const Vector<S>& x) const {
    Matrix<S> out = Matrix<S>::Zero(n_.dim(), n_.dim());
    for (Index a = 0; a < h_.dim(); ++a) out += x(a) * rho_[static_cast<std::size_t>(a)];
    return out;
  }

  [[nodiscard]] Vector<S> omega_of(const Vector<S>& x, const Vector<S>& y) const {
    Vector<S> out = Vector<S>::Zero(n_.dim());
    for (Index a = 0; a < h_.dim(); ++a)
      for (Index b = 0; b < h_.dim(); ++b) out += (x(a) * y(b)) * omega(a, b);
    return out;
  }

  [[nodiscard]] bool omega_is_zero() const {
    for (const auto& w : omega_)
      if (!negligible(w, 0.0, Tolerance{0.0, 0.0})) return false;
    return true;
  }

 private:
  EuclideanLieAlgebra<S> n_;
  LieAlgebra<S> h_;
  Matrix<S> gram1_;
  Matrix<S> gram2_;
  std::vector<Matrix<S>> rho_;
  std::vector<Vector<S>> omega_;
};

struct ConditionReport {
  bool ok = false;
  /// max |rho([a,b]) - [rho(a), rho(b)] + ad_{omega(a,b)}|.
  double representation_defect = 0.0;
  /// max |d_rho omega(a,b,c)|.
  double cocycle_defect = 0.0;
};

template <class S>
ConditionReport check_condition(const SemidirectData<S>& sd, const Tolerance& tol = {}) {
  const Index k = sd.h().dim();
  const auto& nalg = sd.n().algebra();
  ConditionReport rep;
  double scale = 1.0 + nalg.scale() + sd.h().scale();
  for (const auto& r : sd.rho()) scale += max_abs(r);
  for (const auto& w : sd.omega_table()) scale += max_abs(w);
  const Tolerance zero{0.0, 0.0};
  bool exact_ok = true;
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b) {
      const Matrix<S>& ra = sd.rho()[static_cast<std::size_t>(a)];
      const Matrix<S>& rb = sd.rho()[static_cast<std::size_t>(b)];
      const Matrix<S> d = sd.rho_of(sd.h().structure(a, b)) - (ra * rb - rb * ra) + nalg.ad(sd.omega(a, b));
      rep.representation_defect = std::max(rep.representation_defect, max_abs(d));
      if constexpr (is_exact_v<S>) exact_ok = exact_ok && negligible(d, 0.0, zero);
    }
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b)
      for (Index c = b + 1; c < k; ++c) {
        const Index t[3] = {a, b, c};
        Vector<S> sum = Vector<S>::Zero(sd.n().dim());
        for (int s = 0; s < 3; ++s) {
          const Index x = t[s], y = t[(s + 1) % 3], z = t[(s + 2) % 3];
          sum += sd.rho()[static_cast<std::size_t>(x)] * sd.omega(y, z);
          sum -= sd.omega_of(sd.h().structure(x, y), Vector<S>::Unit(k, z));
        }
        rep.cocycle_defect = std::max(rep.cocycle_defect, max_abs(sum));
        if constexpr (is_exact_v<S>) exact_ok = exact_ok && negligible(sum, 0.0, zero);
      }
  if constexpr (is_exact_v<S>) {
    rep.ok = exact_ok;
  } else {
    rep.ok = rep.representation_defect <= tol.bound(scale * scale) && rep.cocycle_defect <= tol.bound(scale * scale);
  }
  return rep;
}

/// <H^rho, u>_1 = tr(rho(u)).
template <class S>
Vector<S> h_rho(const SemidirectData<S>& sd) {
  const Index k = sd.h().dim();
  Vector<S> cov(k);
  for (Index a = 0; a < k; ++a) cov(a) = sd.rho()[static_cast<std::size_t>(a)].trace();
  return numeric::inverse(sd.gram1()) * cov;
}

/// tau(Id_h) - H^rho for Id_h : (h, <,>_1) -> (h, <,>_2).
template <class S>
Vector<S> predicted_tension(const SemidirectData<S>& sd, const Tolerance& tol = {}) {
  return tension(identity_map(sd.h(), sd.gram1(), sd.gram2()), tol) - h_rho(sd);
}

template <class S = double>
struct SemidirectResult {
  EuclideanLieAlgebra<S> algebra;
  /// Projection onto (h, <,>_2); basis of g is the basis of n followed by h.
  LieAlgebraMap<S> projection;
};

template <class S>
SemidirectResult<S> build_semidirect(const SemidirectData<S>& sd, const Tolerance& tol = {}) {
  const auto rep = check_condition(sd, tol);
  if (!rep.ok)
    throw ValidationError("semidirect: compatibility conditions fail (representation defect " +
                          std::to_string(rep.representation_defect) + ", cocycle defect " + std::to_string(rep.cocycle_defect) + ")");
  const Index m = sd.n().dim();
  const Index k = sd.h().dim();
  const Index dim = m + k;
  const auto& nalg = sd.n().algebra();
  std::vector<Matrix<S>> ads(static_cast<std::size_t>(dim), Matrix<S>::Zero(dim, dim));
  for (Index i = 0; i < m; ++i) {
    Matrix<S>& ad = ads[static_cast<std::size_t>(i)];
    ad.topLeftCorner(m, m) = nalg.ad_basis(i);
    for (Index a = 0; a < k; ++a) ad.block(0, m + a, m, 1) = -sd.rho()[static_cast<std::size_t>(a)].col(i);
  }
  for (Index a = 0; a < k; ++a) {
    Matrix<S>& ad = ads[static_cast<std::size_t>(m + a)];
    ad.topLeftCorner(m, m) = sd.rho()[static_cast<std::size_t>(a)];
    for (Index b = 0; b < k; ++b) {
      ad.block(m, m + b, k, 1) = sd.h().structure(a, b);
      ad.block(0, m + b, m, 1) = sd.omega(a, b);
    }
  }
  LieAlgebra<S> g = LieAlgebra<S>::from_ad(ads, tol.scaled(10.0));
  if (!check_jacobi(g, tol.scaled(10.0))) throw OracleMismatch("semidirect: bracket fails the Jacobi identity");
  Matrix<S> gram = Matrix<S>::Zero(dim, dim);
  gram.topLeftCorner(m, m) = sd.n().gram();
  gram.bottomRightCorner(k, k) = sd.gram1();
  Matrix<S> proj = Matrix<S>::Zero(k, dim);
  proj.rightCols(k) = Matrix<S>::Identity(k, k);
  EuclideanLieAlgebra<S> ela(std::move(g), std::move(gram));
  LieAlgebraMap<S> map(ela, EuclideanLieAlgebra<S>(sd.h(), sd.gram2()), std::move(proj));
  if (!validate_hom(map, tol.scaled(10.0))) throw OracleMismatch("semidirect: projection is not a homomorphism");
  return SemidirectResult<S>{std::move(ela), std::move(map)};
}

/// |tension(proj) - (tau(Id_h) - H^rho)|.
template <class S>
double tension_oracle_defect(const SemidirectData<S>& sd, const SemidirectResult<S>& built, const Tolerance& tol = {}) {
  return max_abs(Vector<S>(tension(built.projection, tol) - predicted_tension(sd, tol)));
}

/// Lie-algebra data of the tangent group: n = h as an abelian algebra with
/// the same metric, rho = ad, omega = 0, <,>_1 = <,>_2.
template <class S>
SemidirectData<S> tangent_data(const EuclideanLieAlgebra<S>& h, const Tolerance& tol = {}) {
  const Index k = h.dim();
  return SemidirectData<S>(EuclideanLieAlgebra<S>(LieAlgebra<S>(k), h.gram()), h.algebra(), h.gram(), h.gram(),
                           h.algebra().ad_matrices(), {}, tol);
}

/// rho(u) = ad_{F u}, omega(u, v) = [F u, F v] - F [u, v] + omega0(u, v), with
/// omega0 central and closed. F is dim n x dim h.
template <class S>
SemidirectData<S> lef_builder(const EuclideanLieAlgebra<S>& n, const LieAlgebra<S>& h, const Matrix<S>& gram1,
                              const Matrix<S>& gram2, const Matrix<S>& f, std::vector<Vector<S>> omega0 = {},
                              const Tolerance& tol = {}) {
  const Index k = h.dim();
  const Index m = n.dim();
  if (f.rows() != m || f.cols() != k) throw DimensionError("lef_builder: F must be dim n x dim h");
  if (omega0.empty()) omega0.assign(static_cast<std::size_t>(k * k), Vector<S>::Zero(m));
  if (static_cast<Index>(omega0.size()) != k * k) throw DimensionError("lef_builder: omega0 needs dim(h)^2 entries");
  const auto& nalg = n.algebra();
  const auto w0 = [&](Index a, Index b) -> const Vector<S>& { return omega0[static_cast<std::size_t>(a * k + b)]; };
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) {
      if (w0(a, b).size() != m) throw DimensionError("lef_builder: omega0 values must lie in n");
      if (!negligible(Matrix<S>(nalg.ad(w0(a, b))), max_abs(w0(a, b)) * (1.0 + nalg.scale()), tol))
        throw ValidationError("lef_builder: omega0 is not valued in the center of n");
    }
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b)
      for (Index c = b + 1; c < k; ++c) {
        const Index t[3] = {a, b, c};
        Vector<S> sum = Vector<S>::Zero(m);
        for (int s = 0; s < 3; ++s) {
          const Vector<S> br = h.structure(t[s], t[(s + 1) % 3]);
          for (Index x = 0; x < k; ++x) sum += br(x) * w0(x, t[(s + 2) % 3]);
        }
        if (!negligible(sum, 1.0 + h.scale(), tol)) throw ValidationError("lef_builder: omega0 is not closed");
      }
  std::vector<Matrix<S>> rho;
  for (Index a = 0; a < k; ++a) rho.push_back(nalg.ad(Vector<S>(f.col(a))));
  std::vector<Vector<S>> omega(static_cast<std::size_t>(k * k), Vector<S>::Zero(m));
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      omega[static_cast<std::size_t>(a * k + b)] =
          nalg.bracket(Vector<S>(f.col(a)), Vector<S>(f.col(b))) - f * h.structure(a, b) + w0(a, b);
  return SemidirectData<S>(n, h, gram1, gram2, std::move(rho), std::move(omega), tol);
}

/// Unique (x, y) with G2 (x, y)^T = (2 alpha r, alpha (s - p)): the
/// coefficients of tau(Id) for [e1, e2] = alpha e1, G1 = I and
/// G2 = [[p, r], [r, s]].
template <class S>
std::pair<S, S> solve_system_s(const S& alpha, const S& p, const S& r, const S& s) {
  const S det = p * s - r * r;
  if (det == S(0)) throw ValidationError("solve_system_s: singular metric");
  const S b1 = S(2) * alpha * r;
  const S b2 = alpha * (s - p);
  return {(s * b1 - r * b2) / det, (p * b2 - r * b1) / det};
}

/// The same system with the right-hand side ((alpha + 1) r, s - alpha p),
/// which matches tau(Id) only for alpha = 1.
template <class S>
std::pair<S, S> solve_system_s_paper(const S& alpha, const S& p, const S& r, const S& s) {
  const S det = p * s - r * r;
  if (det == S(0)) throw ValidationError("solve_system_s_paper: singular metric");
  const S b1 = (alpha + S(1)) * r;
  const S b2 = s - alpha * p;
  return {(s * b1 - r * b2) / det, (p * b2 - r * b1) / det};
}

enum class RiemannianVariant { parallel, unimodular_n, killing_form };

struct RecipeOptions {
  std::uint64_t seed = 0;
  int budget = 32;
};

namespace detail {

template <class S>
S random_scalar(std::mt19937_64& rng) {
  const int num = std::uniform_int_distribution<int>(-4, 4)(rng);
  const int den = std::uniform_int_distribution<int>(1, 3)(rng);
  if constexpr (is_exact_v<S>) {
    return S(num, den);
  } else {
    return static_cast<S>(num) / static_cast<S>(den);
  }
}

template <class S>
Matrix<S> random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  Matrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = random_scalar<S>(rng);
  return m;
}

/// Random member of the span of the columns of `basis`, nonzero when possible.
template <class S>
Vector<S> random_member(std::mt19937_64& rng, const Matrix<S>& basis) {
  if (basis.cols() == 0) return Vector<S>::Zero(basis.rows());
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Vector<S> v = basis * random_matrix<S>(rng, basis.cols(), 1);
    if (!negligible(v, 0.0, Tolerance{0.0, 0.0})) return v;
  }
  return basis.col(0);
}

/// Covectors annihilating every column of `vectors`.
template <class S>
Matrix<S> annihilator(const Matrix<S>& vectors, Index dim, const Tolerance& tol) {
  if (vectors.cols() == 0) return Matrix<S>::Identity(dim, dim);
  return numeric::nullspace(Matrix<S>(vectors.transpose()), tol);
}

/// Covectors l with l(A_u v) = 0 for the Levi-Civita product of (h, gram).
template <class S>
Matrix<S> parallel_covectors(const EuclideanLieAlgebra<S>& h, const Tolerance& tol) {
  const Index k = h.dim();
  Matrix<S> v(k, k * k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) v.col(a * k + b) = h.levi_civita().basis_op(a).col(b);
  return annihilator(v, k, tol);
}

/// Covectors l with l(ad_u* v + ad_v* u) = 0.
template <class S>
Matrix<S> killing_covectors(const EuclideanLieAlgebra<S>& h, const Tolerance& tol) {
  const Index k = h.dim();
  Matrix<S> v(k, k * k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      v.col(a * k + b) = ad_star(h, Vector<S>(Vector<S>::Unit(k, a))).col(b) + ad_star(h, Vector<S>(Vector<S>::Unit(k, b))).col(a);
  return annihilator(v, k, tol);
}

/// F with tr(ad_{F u}) = l(u): F = F0 + U (l^T - w^T F0) / <U, U>, w = G U.
template <class S>
std::optional<Matrix<S>> trace_route_f(std::mt19937_64& rng, const EuclideanLieAlgebra<S>& n, const Vector<S>& l, Index k,
                                       const Tolerance& tol) {
  const Vector<S> w = n.algebra().ad_traces();
  const Vector<S> u = unimodular_vector(n, tol);
  const S uu = w.dot(u);
  const Matrix<S> f0 = random_matrix<S>(rng, n.dim(), k);
  if (negligible_scalar(uu, 0.0, tol)) {
    if (!negligible(l, 0.0, tol)) return std::nullopt;
    if (n.dim() == 0) return f0;
    return f0;
  }
  const Vector<S> fix = l - f0.transpose() * w;
  return Matrix<S>(f0 + u * fix.transpose() / uu);
}

/// A derivation of n with trace 1, if one exists.
template <class S>
std::optional<Matrix<S>> unit_trace_derivation(std::mt19937_64& rng, const LieAlgebra<S>& n, const Tolerance& tol) {
  const auto ders = derivations(n, tol);
  std::optional<std::size_t> pivot;
  for (std::size_t i = 0; i < ders.size(); ++i)
    if (!negligible_scalar(S(ders[i].trace()), 1.0, tol)) {
      pivot = i;
      break;
    }
  if (!pivot) return std::nullopt;
  Matrix<S> d = Matrix<S>::Zero(n.dim(), n.dim());
  for (const auto& x : ders) d += random_scalar<S>(rng) * x;
  const S t = d.trace();
  d += ((S(1) - t) / S(ders[*pivot].trace())) * ders[*pivot];
  return d;
}

/// rho(u) = l(u) D with tr D = 1, omega = 0. Needs l to vanish on [h, h].
template <class S>
std::optional<SemidirectData<S>> scalar_route(std::mt19937_64& rng, const EuclideanLieAlgebra<S>& n, const LieAlgebra<S>& h,
                                              const Matrix<S>& gram1, const Matrix<S>& gram2, const Vector<S>& l,
                                              const Tolerance& tol) {
  const Index k = h.dim();
  const Matrix<S> derived = derived_algebra(h, tol);
  if (derived.cols() > 0 && !negligible(Vector<S>(derived.transpose() * l), max_abs(l) * (1.0 + h.scale()), tol))
    return std::nullopt;
  Matrix<S> d;
  if (negligible(l, 0.0, tol)) {
    d = Matrix<S>::Zero(n.dim(), n.dim());
  } else {
    auto unit = unit_trace_derivation(rng, n.algebra(), tol);
    if (!unit) return std::nullopt;
    d = *unit;
  }
  std::vector<Matrix<S>> rho;
  for (Index a = 0; a < k; ++a) rho.push_back(l(a) * d);
  return SemidirectData<S>(n, h, gram1, gram2, std::move(rho), {}, tol);
}

enum class Goal { harmonic, biharmonic };

template <class S>
bool certify(const SemidirectData<S>& sd, Goal goal, const Tolerance& tol) {
  if (!check_condition(sd, tol).ok) return false;
  const auto built = build_semidirect(sd, tol);
  const auto c = classify(built.projection, tol);
  const double scale = 1.0 + detail::map_scale(built.projection);
  if (tension_oracle_defect(sd, built, tol) > tol.scaled(10.0).bound(scale))
    throw OracleMismatch("semidirect: projection tension differs from tau(Id) - H^rho");
  return goal == Goal::harmonic ? c.harmonic : c.biharmonic;
}

/// Samples constructions with tr o rho = l until one certifies.
template <class S>
SemidirectData<S> search(const EuclideanLieAlgebra<S>& n, const LieAlgebra<S>& h, const Matrix<S>& gram1,
                         const Matrix<S>& gram2, const Matrix<S>& l_space, const std::optional<Vector<S>>& fixed_l,
                         bool allow_omega, Goal goal, const RecipeOptions& opts, const Tolerance& tol) {
  std::mt19937_64 rng(opts.seed);
  const Index k = h.dim();
  for (int attempt = 0; attempt < opts.budget; ++attempt) {
    const Vector<S> l = fixed_l ? *fixed_l : random_member(rng, l_space);
    if (allow_omega) {
      if (auto f = trace_route_f(rng, n, l, k, tol)) {
        const auto sd = lef_builder(n, h, gram1, gram2, *f, {}, tol);
        if (certify(sd, goal, tol)) return sd;
      }
    }
    if (auto sd = scalar_route(rng, n, h, gram1, gram2, l, tol)) {
      if (certify(*sd, goal, tol)) return *sd;
    }
  }
  throw InfeasibleError("no certified construction within a budget of " + std::to_string(opts.budget) + " samples");
}

}  // namespace detail

/// tr(rho(u)) = <u, tau(Id_h)>_1, so that the projection onto (h, <,>_2) is harmonic.
template <class S>
SemidirectData<S> recipe_harmonic_submersion(const LieAlgebra<S>& h, const Matrix<S>& gram1, const Matrix<S>& gram2,
                                             const EuclideanLieAlgebra<S>& n, const RecipeOptions& opts = {},
                                             const Tolerance& tol = {}) {
  const Vector<S> l = gram1 * tension(identity_map(h, gram1, gram2), tol);
  return detail::search(n, h, gram1, gram2, Matrix<S>(h.dim(), 0), std::optional<Vector<S>>(l), true,
                        detail::Goal::harmonic, opts, tol);
}

/// Id_h biharmonic and tr o rho = 0.
template <class S>
SemidirectData<S> recipe_biharmonic_submersion(const LieAlgebra<S>& h, const Matrix<S>& gram1, const Matrix<S>& gram2,
                                               const EuclideanLieAlgebra<S>& n, const RecipeOptions& opts = {},
                                               const Tolerance& tol = {}) {
  if (!classify(identity_map(h, gram1, gram2), tol).biharmonic)
    throw ValidationError("recipe_biharmonic_submersion: Id_h is not biharmonic for these metrics");
  return detail::search(n, h, gram1, gram2, Matrix<S>(h.dim(), 0),
                        std::optional<Vector<S>>(Vector<S>::Zero(h.dim())), true, detail::Goal::biharmonic, opts, tol);
}

/// Riemannian submersions (<,>_2 = <,>_1) with tr o rho parallel (parallel,
/// unimodular_n) or Killing (killing_form).
template <class S>
SemidirectData<S> recipe_riemannian_biharmonic(const LieAlgebra<S>& h, const Matrix<S>& gram1,
                                               const EuclideanLieAlgebra<S>& n, RiemannianVariant variant,
                                               const RecipeOptions& opts = {}, const Tolerance& tol = {}) {
  const EuclideanLieAlgebra<S> h1(h, gram1);
  Matrix<S> space;
  bool allow_omega = true;
  switch (variant) {
    case RiemannianVariant::parallel:
      space = detail::parallel_covectors(h1, tol);
      allow_omega = false;
      break;
    case RiemannianVariant::unimodular_n:
      if (!is_unimodular(n.algebra(), tol)) throw ValidationError("recipe: the unimodular_n variant needs n unimodular");
      space = detail::parallel_covectors(h1, tol);
      break;
    case RiemannianVariant::killing_form:
      if (!is_unimodular(h, tol)) throw ValidationError("recipe: the killing_form variant needs h unimodular");
      space = detail::killing_covectors(h1, tol);
      break;
  }
  return detail::search(n, h, gram1, gram1, space, std::optional<Vector<S>>(), allow_omega, detail::Goal::biharmonic, opts, tol);
}

/// max over basis pairs of |K(e_a, e_b)|.
template <class S>
double curvature_norm(const EuclideanLieAlgebra<S>& h) {
  const Index k = h.dim();
  double worst = 0.0;
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b)
      worst = std::max(worst, max_abs(curvature(h, Vector<S>(Vector<S>::Unit(k, a)), Vector<S>(Vector<S>::Unit(k, b)))));
  return worst;
}

/// Riemannian submersion onto a flat target with omega = 0 and a
/// representation rho(u) = l(u) D, l vanishing on [h, h].
template <class S>
SemidirectData<S> theo2_builder(const EuclideanLieAlgebra<S>& h_flat, const EuclideanLieAlgebra<S>& n,
                                const RecipeOptions& opts = {}, const Tolerance& tol = {}) {
  const double scale = 1.0 + h_flat.algebra().scale() * h_flat.algebra().scale() * max_abs(h_flat.cometric()) *
                                 max_abs(h_flat.gram());
  if constexpr (is_exact_v<S>) {
    if (curvature_norm(h_flat) != 0.0) throw ValidationError("theo2_builder: target metric is not flat");
  } else {
    if (curvature_norm(h_flat) > tol.bound(scale)) throw ValidationError("theo2_builder: target metric is not flat");
  }
  const Index k = h_flat.dim();
  std::mt19937_64 rng(opts.seed);
  const Matrix<S> chars = detail::annihilator(derived_algebra(h_flat.algebra(), tol), k, tol);
  const auto ders = derivations(n.algebra(), tol);
  for (int attempt = 0; attempt < opts.budget; ++attempt) {
    const Vector<S> l = detail::random_member(rng, chars);
    Matrix<S> d = Matrix<S>::Zero(n.dim(), n.dim());
    for (const auto& x : ders) d += detail::random_scalar<S>(rng) * x;
    std::vector<Matrix<S>> rho;
    for (Index a = 0; a < k; ++a) rho.push_back(l(a) * d);
    SemidirectData<S> sd(n, h_flat.algebra(), h_flat.gram(), h_flat.gram(), std::move(rho), {}, tol);
    if (detail::certify(sd, detail::Goal::biharmonic, tol)) return sd;
  }
  throw InfeasibleError("theo2_builder: no certified construction within the budget");
}

/// Harmonic submersion onto (e1(alpha), gram2) from an extension of e1 by a
/// non-unimodular n, following the F : n -> h route: F(U^n) solves the
/// corrected system and rho(h) = ad_{F* h} with F* the adjoint for
/// (<,>_1 = I, <,>_n).
template <class S>
SemidirectData<S> e1_harmonic_example(const S& alpha, const Matrix<S>& gram2, const EuclideanLieAlgebra<S>& n,
                                      std::uint64_t seed = 0, const Tolerance& tol = {}) {
  if (gram2.rows() != 2 || gram2.cols() != 2) throw DimensionError("e1_harmonic_example: gram2 must be 2x2");
  const Vector<S> u = unimodular_vector(n, tol);
  const S uu = u.dot(u);
  if (negligible_scalar(uu, 0.0, tol)) throw ValidationError("e1_harmonic_example: n must be non-unimodular");
  const auto [x0, y0] = solve_system_s(alpha, gram2(0, 0), gram2(0, 1), gram2(1, 1));
  Vector<S> target(2);
  target << x0, y0;
  std::mt19937_64 rng(seed);
  const Matrix<S> f0 = detail::random_matrix<S>(rng, 2, n.dim());
  const Matrix<S> f = f0 + (target - f0 * u) * u.transpose() / uu;
  const Matrix<S> g1 = Matrix<S>::Identity(2, 2);
  const Matrix<S> f_star = n.cometric() * f.transpose() * g1;
  return lef_builder(n, algebras::e1<S>(alpha), g1, gram2, f_star, {}, tol);
}

}  // namespace liebih
