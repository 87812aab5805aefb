#pragma once

// Homomorphisms between Euclidean Lie algebras: tension and bitension
// fields, harmonic/biharmonic classification, Riemannian immersions and
// submersions, Kahler structures.

#include <string>
#include <utility>

#include "liebih/geometry.hpp"

namespace liebih {

/// A linear map xi : source -> target, stored as a (dim target) x (dim
/// source) matrix. The homomorphism property is not enforced; see
/// validate_hom().
template <class S = double>
class LieAlgebraMap {
 public:
  LieAlgebraMap(EuclideanLieAlgebra<S> source, EuclideanLieAlgebra<S> target, Matrix<S> xi)
      : source_(std::move(source)), target_(std::move(target)), xi_(std::move(xi)) {
    if (xi_.rows() != target_.dim() || xi_.cols() != source_.dim())
      throw DimensionError("map matrix is " + std::to_string(xi_.rows()) + "x" + std::to_string(xi_.cols()) +
                           ", expected " + std::to_string(target_.dim()) + "x" + std::to_string(source_.dim()));
  }

  [[nodiscard]] const EuclideanLieAlgebra<S>& source() const { return source_; }
  [[nodiscard]] const EuclideanLieAlgebra<S>& target() const { return target_; }
  [[nodiscard]] const Matrix<S>& xi() const { return xi_; }

  /// Metric adjoint xi* = G_source^{-1} xi^T G_target.
  [[nodiscard]] Matrix<S> adjoint() const { return source_.cometric() * xi_.transpose() * target_.gram(); }

 private:
  EuclideanLieAlgebra<S> source_;
  EuclideanLieAlgebra<S> target_;
  Matrix<S> xi_;
};

/// Id : (alg, gram1) -> (alg, gram2).
template <class S>
LieAlgebraMap<S> identity_map(const LieAlgebra<S>& alg, const Matrix<S>& gram1, const Matrix<S>& gram2) {
  return LieAlgebraMap<S>(EuclideanLieAlgebra<S>(alg, gram1), EuclideanLieAlgebra<S>(alg, gram2),
                          Matrix<S>::Identity(alg.dim(), alg.dim()));
}

/// psi o phi. The target metric of phi must equal the source metric of psi.
template <class S>
LieAlgebraMap<S> compose(const LieAlgebraMap<S>& psi, const LieAlgebraMap<S>& phi, const Tolerance& tol = {}) {
  if (phi.target().dim() != psi.source().dim()) throw DimensionError("maps are not composable");
  if (!negligible(Matrix<S>(phi.target().gram() - psi.source().gram()), max_abs(phi.target().gram()), tol))
    throw ValidationError("compose: intermediate metrics differ");
  return LieAlgebraMap<S>(phi.source(), psi.target(), psi.xi() * phi.xi());
}

/// max over source basis pairs of |xi[e_i,e_j] - [xi e_i, xi e_j]|.
template <class S>
double hom_defect(const LieAlgebraMap<S>& map) {
  const Index n = map.source().dim();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Vector<S> lhs = map.xi() * map.source().algebra().structure(i, j);
      const Vector<S> rhs = map.target().algebra().bracket(map.xi().col(i), map.xi().col(j));
      worst = std::max(worst, max_abs(Vector<S>(lhs - rhs)));
    }
  return worst;
}

template <class S>
bool validate_hom(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  if constexpr (is_exact_v<S>) {
    const Index n = map.source().dim();
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const Vector<S> d = map.xi() * map.source().algebra().structure(i, j) -
                            map.target().algebra().bracket(map.xi().col(i), map.xi().col(j));
        if (!negligible(d, 0.0, Tolerance{0.0, 0.0})) return false;
      }
    return true;
  } else {
    const double x = max_abs(map.xi());
    const double scale = map.source().algebra().scale() * x + map.target().algebra().scale() * x * x;
    return hom_defect(map) <= tol.bound(scale);
  }
}

namespace detail {

/// Natural magnitude of the terms entering U^xi and the bitension.
template <class S>
double map_scale(const LieAlgebraMap<S>& map) {
  const double x = max_abs(map.xi());
  const double cond = (1.0 + max_abs(map.target().gram())) * (1.0 + max_abs(map.target().cometric())) *
                      (1.0 + max_abs(map.source().cometric()));
  return (1.0 + x * x) * (1.0 + map.target().algebra().scale()) * cond;
}

}  // namespace detail

/// U^xi = sum_i B_{xi b_i} xi b_i over an orthonormal frame of the source.
template <class S>
Vector<S> u_xi_levi_civita(const LieAlgebraMap<S>& map) {
  const auto& lc = map.target().levi_civita();
  const Matrix<S>& xi = map.xi();
  return numeric::frame_sum(map.source().gram(), Vector<S>(Vector<S>::Zero(map.target().dim())),
                            [&](const Vector<S>& a, const Vector<S>& b) {
                              return Vector<S>(lc.apply(Vector<S>(xi * a), Vector<S>(xi * b)));
                            });
}

/// U^xi from <U^xi, u> = tr(xi* ad_u xi).
template <class S>
Vector<S> u_xi_trace(const LieAlgebraMap<S>& map) {
  const Index m = map.target().dim();
  const Matrix<S> xs = map.adjoint();
  Vector<S> cov(m);
  for (Index k = 0; k < m; ++k) cov(k) = (xs * map.target().algebra().ad_basis(k) * map.xi()).trace();
  return map.target().raise(cov);
}

/// U^xi; both formulas are evaluated and must agree within 10 tol.
template <class S>
Vector<S> u_xi(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  const Vector<S> lc = u_xi_levi_civita(map);
  const Vector<S> tr = u_xi_trace(map);
  if (!negligible(Vector<S>(lc - tr), detail::map_scale(map), tol.scaled(10.0)))
    throw OracleMismatch("U^xi: Levi-Civita sum and trace formula disagree");
  return lc;
}

/// tau(xi) = U^xi - xi(U^g).
template <class S>
Vector<S> tension(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  return u_xi(map, tol) - map.xi() * unimodular_vector(map.source(), tol);
}

/// tau_2 = -sum_i (B_{xi e_i} B_{xi e_i} tau + K(tau, xi e_i) xi e_i) + B_{xi U^g} tau.
template <class S>
Vector<S> bitension_vector(const LieAlgebraMap<S>& map, const Vector<S>& tau, const Vector<S>& source_u) {
  const auto& tgt = map.target();
  const auto& lc = tgt.levi_civita();
  const Matrix<S>& xi = map.xi();
  const Vector<S> sum = numeric::frame_sum(map.source().gram(), Vector<S>(Vector<S>::Zero(tgt.dim())),
                                           [&](const Vector<S>& a, const Vector<S>& b) {
                                             const Vector<S> xa = xi * a;
                                             const Vector<S> xb = xi * b;
                                             return Vector<S>(lc.op(xa) * (lc.op(xb) * tau) + curvature(tgt, tau, xa) * xb);
                                           });
  return Vector<S>(-sum + lc.apply(Vector<S>(xi * source_u), tau));
}

/// tau_2 from <tau_2, u> = tr(xi* (ad_u + ad_u*) ad_tau xi) - <[u,tau],tau> - <[tau,U^xi],u>.
template <class S>
Vector<S> bitension_dual(const LieAlgebraMap<S>& map, const Vector<S>& tau, const Vector<S>& uxi) {
  const auto& tgt = map.target();
  const Index m = tgt.dim();
  const Matrix<S> xs = map.adjoint();
  const Matrix<S> ad_tau = tgt.algebra().ad(tau);
  const Vector<S> t_u = tgt.algebra().bracket(tau, uxi);
  Vector<S> cov(m);
  for (Index k = 0; k < m; ++k) {
    const Vector<S> ek = Vector<S>::Unit(m, k);
    const Matrix<S> sym = tgt.algebra().ad_basis(k) + ad_star(tgt, ek);
    cov(k) = (xs * sym * ad_tau * map.xi()).trace() - tgt.inner(tgt.algebra().bracket(ek, tau), tau) - tgt.inner(t_u, ek);
  }
  return tgt.raise(cov);
}

/// Bitension field; the vector and dual formulas must agree within 10 tol.
template <class S>
Vector<S> bitension(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  const Vector<S> ug = unimodular_vector(map.source(), tol);
  const Vector<S> uxi = u_xi(map, tol);
  const Vector<S> tau = uxi - map.xi() * ug;
  const Vector<S> vec = bitension_vector(map, tau, ug);
  const Vector<S> dual = bitension_dual(map, tau, uxi);
  const double scale = detail::map_scale(map) * (1.0 + max_abs(tau)) * (1.0 + max_abs(tau)) *
                       (1.0 + map.target().algebra().scale()) * (1.0 + max_abs(ug));
  if (!negligible(Vector<S>(vec - dual), scale, tol.scaled(10.0)))
    throw OracleMismatch("bitension: vector formula and trace formula disagree");
  return vec;
}

/// xi^T G_h xi = G_g.
template <class S>
bool is_riemannian_immersion(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  const Matrix<S> pull = map.xi().transpose() * map.target().gram() * map.xi();
  return negligible(Matrix<S>(pull - map.source().gram()), max_abs(map.source().gram()), tol);
}

/// xi G_g^{-1} xi^T = G_h^{-1}: xi is onto and isometric on (ker xi)^perp.
template <class S>
bool is_riemannian_submersion(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  const Matrix<S> push = map.xi() * map.source().cometric() * map.xi().transpose();
  return negligible(Matrix<S>(push - map.target().cometric()), max_abs(map.target().cometric()), tol);
}

template <class S>
bool is_surjective(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  return numeric::rank(map.xi(), tol) == map.target().dim();
}

template <class S = double>
struct MapClassification {
  Vector<S> tension;
  Vector<S> bitension;
  Vector<S> u_xi;
  double tension_norm = 0.0;
  double bitension_norm = 0.0;
  bool harmonic = false;
  bool biharmonic = false;
  bool riemannian_immersion = false;
  bool riemannian_submersion = false;
};

template <class S>
MapClassification<S> classify(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  MapClassification<S> out;
  const Vector<S> ug = unimodular_vector(map.source(), tol);
  out.u_xi = u_xi(map, tol);
  out.tension = out.u_xi - map.xi() * ug;
  out.bitension = bitension(map, tol);
  out.tension_norm = map.target().norm(out.tension);
  out.bitension_norm = map.target().norm(out.bitension);
  const double xnorm = to_double_matrix(map.xi()).norm();
  const double ugnorm = to_double_matrix(ug).norm();
  const double uxinorm = to_double_matrix(out.u_xi).norm();
  if constexpr (is_exact_v<S>) {
    out.harmonic = negligible(out.tension, 0.0, tol);
    out.biharmonic = out.harmonic || negligible(out.bitension, 0.0, tol);
  } else {
    out.harmonic = to_double_matrix(out.tension).norm() <= tol.abs + tol.rel * (xnorm * ugnorm + uxinorm);
    const double b = 1.0 + max_abs(map.target().cometric()) * map.target().algebra().scale() * max_abs(map.target().gram());
    const double scale2 = to_double_matrix(out.tension).norm() * b * (b * (1.0 + xnorm * xnorm) + ugnorm * xnorm);
    out.biharmonic = out.harmonic || to_double_matrix(out.bitension).norm() <= tol.abs + tol.rel * scale2;
  }
  out.riemannian_immersion = is_riemannian_immersion(map, tol);
  out.riemannian_submersion = is_riemannian_submersion(map, tol);
  return out;
}

template <class S = double>
struct SubmersionSplit {
  Subalgebra<S> kernel;
  Vector<S> mean_curvature;
  Quotient<S> quotient;
  /// Induced isomorphism from the quotient to the target.
  LieAlgebraMap<S> quotient_map;
  /// |tau(xi) - tau(xi bar) + xi(H)|.
  double defect = 0.0;
};

/// Splits a surjective xi through g / ker xi with the quotient metric, and
/// checks tau(xi) = tau(xi bar) - xi(H^{ker xi}).
template <class S>
SubmersionSplit<S> submersion_split(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  if (!is_surjective(map, tol)) throw ValidationError("submersion_split: map is not surjective");
  Matrix<S> kernel_basis = numeric::nullspace(map.xi(), tol);
  Subalgebra<S> kernel(map.source(), kernel_basis, tol.scaled(10.0));
  const auto sf = second_fundamental(kernel);
  Quotient<S> quotient = quotient_metric(kernel, tol.scaled(10.0));
  LieAlgebraMap<S> bar(quotient.algebra, map.target(), Matrix<S>(map.xi() * quotient.section));
  const Vector<S> lhs = tension(map, tol);
  const Vector<S> rhs = tension(bar, tol) - map.xi() * sf.mean_curvature;
  const double defect = max_abs(Vector<S>(lhs - rhs));
  if (!negligible(Vector<S>(lhs - rhs), detail::map_scale(map) * (1.0 + max_abs(sf.mean_curvature)), tol.scaled(10.0)))
    throw OracleMismatch("submersion_split: tension does not split through the quotient");
  return SubmersionSplit<S>{std::move(kernel), sf.mean_curvature, std::move(quotient), std::move(bar), defect};
}

/// |tau(psi o phi) - tau(psi) - psi(tau(phi))| for a Riemannian submersion phi.
template <class S>
double check_composition(const LieAlgebraMap<S>& phi, const LieAlgebraMap<S>& psi, const Tolerance& tol = {}) {
  if (phi.target().dim() != psi.source().dim()) throw DimensionError("check_composition: maps are not composable");
  if (!is_riemannian_submersion(phi, tol)) throw ValidationError("check_composition: phi is not a Riemannian submersion");
  const auto composed = compose(psi, phi, tol);
  const Vector<S> d = tension(composed, tol) - tension(psi, tol) - psi.xi() * tension(phi, tol);
  return max_abs(d);
}

template <class S = double>
struct KahlerStructure {
  EuclideanLieAlgebra<S> base;
  Matrix<S> j;
};

/// J^2 = -1, J orthogonal, and A_u J = J A_u for every basis u.
template <class S>
bool check_kahler(const KahlerStructure<S>& ks, const Tolerance& tol = {}) {
  const Index n = ks.base.dim();
  if (ks.j.rows() != n || ks.j.cols() != n) throw DimensionError("complex structure has wrong shape");
  const Matrix<S> id = Matrix<S>::Identity(n, n);
  const double jn = max_abs(ks.j);
  if (!negligible(Matrix<S>(ks.j * ks.j + id), jn * jn, tol)) return false;
  const Matrix<S> g = ks.base.gram();
  if (!negligible(Matrix<S>(ks.j.transpose() * g * ks.j - g), jn * jn * max_abs(g), tol)) return false;
  const auto& lc = ks.base.levi_civita();
  for (Index i = 0; i < n; ++i) {
    const Matrix<S>& a = lc.basis_op(i);
    if (!negligible(Matrix<S>(a * ks.j - ks.j * a), max_abs(a) * jn, tol)) return false;
  }
  return true;
}

/// xi J_src = J_tgt xi.
template <class S>
bool is_holomorphic(const LieAlgebraMap<S>& map, const Matrix<S>& j_src, const Matrix<S>& j_tgt, const Tolerance& tol = {}) {
  if (j_src.rows() != map.source().dim() || j_tgt.rows() != map.target().dim())
    throw DimensionError("complex structures do not match the map");
  const Matrix<S> d = map.xi() * j_src - j_tgt * map.xi();
  return negligible(d, max_abs(map.xi()) * (max_abs(j_src) + max_abs(j_tgt)), tol);
}

template <class S = double>
struct Theo1Criteria {
  double killing_defect = 0.0;
  double parallel_defect = 0.0;
};

/// For a Riemannian submersion: |ad_tau + ad_tau*| and max_i |B_{b_i} tau|
/// over an orthonormal frame of the target.
template <class S>
Theo1Criteria<S> theo1_criteria(const LieAlgebraMap<S>& map, const Tolerance& tol = {}) {
  if (!is_riemannian_submersion(map, tol)) throw ValidationError("theo1_criteria: map is not a Riemannian submersion");
  const auto& tgt = map.target();
  const Vector<S> tau = tension(map, tol);
  Theo1Criteria<S> out;
  out.killing_defect = max_abs(Matrix<S>(tgt.algebra().ad(tau) + ad_star(tgt, tau)));
  const Matrix<double> frame = numeric::orthonormal_basis(to_double_matrix(tgt.gram()));
  const auto& lc = tgt.levi_civita();
  for (Index i = 0; i < frame.cols(); ++i) {
    Matrix<double> op = Matrix<double>::Zero(tgt.dim(), tgt.dim());
    for (Index k = 0; k < tgt.dim(); ++k) op += frame(k, i) * to_double_matrix(lc.basis_op(k));
    const Vector<double> v = op * to_double_matrix(tau);
    out.parallel_defect = std::max(out.parallel_defect, std::sqrt(std::max(0.0, v.dot(to_double_matrix(tgt.gram()) * v))));
  }
  return out;
}

}  // namespace liebih
