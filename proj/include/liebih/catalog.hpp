#pragma once

// Named Euclidean Lie algebras with known quantities, and a suite that
// recomputes every known quantity.

#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liebih/algebras.hpp"
#include "liebih/harmonic_cone.hpp"
#include "liebih/maps.hpp"
#include "liebih/semidirect.hpp"

namespace liebih::catalog {

template <class S = double>
struct Expected {
  std::optional<Vector<S>> unimodular_vector;
  std::optional<bool> unimodular;
  std::optional<Index> kill_dim;
  std::optional<Index> ch_dim;
  /// Named maps out of the entry, with their expected tension.
  std::map<std::string, std::pair<LieAlgebraMap<S>, Vector<S>>> tensions;
};

template <class S = double>
struct CatalogEntry {
  std::string name;
  EuclideanLieAlgebra<S> ela;
  Expected<S> expected;
};

/// Scalar parameters by name, an optional Gram matrix replacing the default
/// metric, and the base entry for "tangent".
template <class S = double>
struct Params {
  std::map<std::string, S> values;
  std::optional<Matrix<S>> metric;
  std::string base = "heis3";
};

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> all = {"e1", "heis3", "sl2", "so3", "nilp5", "tangent", "abelian"};
  return all;
}

namespace detail {

template <class S>
S param(const Params<S>& p, const std::string& key, S fallback) {
  const auto it = p.values.find(key);
  return it == p.values.end() ? fallback : it->second;
}

template <class S>
Matrix<S> metric_or(const Params<S>& p, Matrix<S> fallback) {
  if (!p.metric) return fallback;
  if (p.metric->rows() != fallback.rows() || p.metric->cols() != fallback.cols())
    throw DimensionError("catalog: metric has wrong shape");
  return *p.metric;
}

template <class S>
Matrix<S> diag3(const S& a, const S& b, const S& c) {
  Matrix<S> g = Matrix<S>::Zero(3, 3);
  g(0, 0) = a;
  g(1, 1) = b;
  g(2, 2) = c;
  return g;
}

}  // namespace detail

template <class S = double>
CatalogEntry<S> get(const std::string& name, const Params<S>& p = {}) {
  using detail::param;
  Expected<S> ex;
  if (name == "e1") {
    const S a = param(p, "a", S(1));
    if (a == S(0)) throw ValidationError("catalog e1: a must be nonzero");
    EuclideanLieAlgebra<S> ela(algebras::e1<S>(a), detail::metric_or(p, Matrix<S>(Matrix<S>::Identity(2, 2))));
    ex.unimodular = false;
    ex.ch_dim = 1;
    ex.kill_dim = 0;
    if (!p.metric) {
      Vector<S> u(2);
      u << S(0), -a;
      ex.unimodular_vector = u;
      Matrix<S> chi(1, 2);
      chi << S(0), S(1);
      Vector<S> tau(1);
      tau << a;
      LieAlgebraMap<S> character(ela, EuclideanLieAlgebra<S>(LieAlgebra<S>(1), Matrix<S>::Identity(1, 1)), chi);
      ex.tensions.emplace("character", std::make_pair(std::move(character), tau));
    }
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "heis3") {
    const S alpha = param(p, "alpha", S(1));
    if (alpha == S(0)) throw ValidationError("catalog heis3: alpha must be nonzero");
    EuclideanLieAlgebra<S> ela(algebras::heis3<S>(alpha), detail::metric_or(p, Matrix<S>(Matrix<S>::Identity(3, 3))));
    ex.unimodular = true;
    ex.unimodular_vector = Vector<S>::Zero(3);
    ex.kill_dim = 1;
    ex.ch_dim = 4;
    Matrix<S> id = Matrix<S>::Identity(3, 3);
    ex.tensions.emplace("identity", std::make_pair(LieAlgebraMap<S>(ela, ela, id), Vector<S>(Vector<S>::Zero(3))));
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "sl2") {
    EuclideanLieAlgebra<S> ela(algebras::sl2<S>(), detail::metric_or(p, Matrix<S>(Matrix<S>::Identity(3, 3))));
    ex.unimodular = true;
    ex.unimodular_vector = Vector<S>::Zero(3);
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "so3") {
    const S c = param(p, "c", S(1));
    const S a1 = param(p, "a1", S(1)), a2 = param(p, "a2", S(1)), a3 = param(p, "a3", S(1));
    if (c == S(0)) throw ValidationError("catalog so3: c must be nonzero");
    if (!(a1 > S(0) && a2 > S(0) && a3 > S(0))) throw ValidationError("catalog so3: weights must be positive");
    EuclideanLieAlgebra<S> ela(algebras::so3<S>(c), detail::metric_or(p, detail::diag3(a1, a2, a3)));
    ex.unimodular = true;
    ex.unimodular_vector = Vector<S>::Zero(3);
    if (!p.metric) {
      const int equal_pairs = int(a1 == a2) + int(a2 == a3) + int(a1 == a3);
      if (equal_pairs == 3) {
        ex.kill_dim = 3;
        ex.ch_dim = 6;
      } else if (equal_pairs == 1) {
        ex.kill_dim = 1;
        ex.ch_dim = 5;
      } else {
        ex.kill_dim = 0;
        ex.ch_dim = 3;
      }
    }
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "nilp5") {
    EuclideanLieAlgebra<S> ela(algebras::nilp5<S>(), detail::metric_or(p, Matrix<S>(Matrix<S>::Identity(5, 5))));
    ex.unimodular = true;
    ex.unimodular_vector = Vector<S>::Zero(5);
    const Matrix<S> b = algebras::nilp5_subalgebra_basis<S>();
    const Subalgebra<S> sub(ela, b, Tolerance{});
    const EuclideanLieAlgebra<S> inner = sub.intrinsic();
    ex.tensions.emplace("inclusion",
                        std::make_pair(LieAlgebraMap<S>(inner, ela, b), Vector<S>(Vector<S>::Zero(5))));
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "abelian") {
    const S n_value = param(p, "n", S(3));
    const auto n = static_cast<Index>(to_double(n_value));
    if (n < 1 || S(static_cast<int>(n)) != n_value) throw ValidationError("catalog abelian: n must be a positive integer");
    EuclideanLieAlgebra<S> ela(algebras::abelian<S>(n), detail::metric_or(p, Matrix<S>(Matrix<S>::Identity(n, n))));
    ex.unimodular = true;
    ex.unimodular_vector = Vector<S>::Zero(n);
    ex.kill_dim = n;
    ex.ch_dim = n * (n + 1) / 2;
    return {name, std::move(ela), std::move(ex)};
  }
  if (name == "tangent") {
    if (p.base == "tangent") throw ValidationError("catalog tangent: base must not be tangent");
    Params<S> base_params = p;
    base_params.base.clear();
    const auto base = get<S>(p.base, base_params);
    const auto sd = tangent_data(base.ela);
    auto built = build_semidirect(sd);
    ex.unimodular = base.expected.unimodular;
    const Vector<S> tau = -unimodular_vector(base.ela);
    ex.tensions.emplace("projection", std::make_pair(built.projection, tau));
    return {name, std::move(built.algebra), std::move(ex)};
  }
  throw ValidationError("catalog: unknown entry '" + name + "'");
}

struct SuiteItem {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
};

struct SuiteReport {
  std::vector<SuiteItem> items;
  [[nodiscard]] bool all_passed() const {
    for (const auto& i : items)
      if (!i.passed) return false;
    return true;
  }
};

namespace detail {

template <class Derived>
std::string show(const Eigen::MatrixBase<Derived>& v) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    if constexpr (is_exact_v<typename Derived::Scalar>) {
      os << v(i).str();
    } else {
      os << v(i);
    }
  }
  os << "]";
  return os.str();
}

inline std::string show(bool b) { return b ? "true" : "false"; }
inline std::string show(Index i) { return std::to_string(i); }

class Recorder {
 public:
  template <class T>
  void check(const std::string& name, const T& measured, const T& expected) {
    report.items.push_back({name, measured == expected, show(measured), show(expected)});
  }
  void check_true(const std::string& name, bool ok, const std::string& measured, const std::string& expected) {
    report.items.push_back({name, ok, measured, expected});
  }
  SuiteReport report;
};

/// Every stored expectation of an entry, recomputed.
template <class S>
void check_entry(Recorder& rec, const std::string& label, const CatalogEntry<S>& e, const Tolerance& tol) {
  const auto& ex = e.expected;
  if (ex.unimodular) rec.check(label + " unimodular", is_unimodular(e.ela.algebra(), tol), *ex.unimodular);
  if (ex.unimodular_vector) {
    const Vector<S> u = unimodular_vector(e.ela, tol);
    rec.check_true(label + " U^g", negligible(Vector<S>(u - *ex.unimodular_vector), 1.0, tol), show(u),
                   show(*ex.unimodular_vector));
  }
  if (ex.kill_dim) rec.check(label + " dim Kill", killing_subalgebra(e.ela, tol).cols(), *ex.kill_dim);
  if (ex.ch_dim) rec.check(label + " dim CH", harmonic_cone(e.ela, tol).dimension, *ex.ch_dim);
  for (const auto& [map_name, entry] : ex.tensions) {
    const Vector<S> tau = tension(entry.first, tol);
    rec.check_true(label + " tension(" + map_name + ")", negligible(Vector<S>(tau - entry.second), 1.0, tol), show(tau),
                   show(entry.second));
  }
}

}  // namespace detail

/// Recomputes every expected value of the catalog and the worked examples.
inline SuiteReport run_paper_suite(const Tolerance& tol = {}) {
  using Q = Rational;
  using M = Matrix<double>;
  detail::Recorder rec;
  const auto with = [](std::map<std::string, Q> v) {
    Params<Q> p;
    p.values = std::move(v);
    return p;
  };

  detail::check_entry(rec, "e1(a=1)", get<Q>("e1"), tol);
  detail::check_entry(rec, "e1(a=3/2)", get<Q>("e1", with({{"a", Q(3, 2)}})), tol);
  detail::check_entry(rec, "heis3(alpha=1)", get<Q>("heis3"), tol);
  detail::check_entry(rec, "sl2", get<Q>("sl2"), tol);
  detail::check_entry(rec, "so3(distinct)", get<Q>("so3", with({{"a1", Q(1)}, {"a2", Q(2)}, {"a3", Q(3)}})), tol);
  detail::check_entry(rec, "so3(two equal)", get<Q>("so3", with({{"a1", Q(1)}, {"a2", Q(1)}, {"a3", Q(2)}})), tol);
  detail::check_entry(rec, "so3(all equal)", get<Q>("so3"), tol);
  detail::check_entry(rec, "nilp5", get<Q>("nilp5"), tol);
  detail::check_entry(rec, "abelian(3)", get<Q>("abelian"), tol);

  {
    const auto e1 = get<Q>("e1");
    const auto& ch = e1.expected.tensions.at("character").first;
    const auto c = classify(ch, tol);
    rec.check("e1 character biharmonic", c.biharmonic, true);
    rec.check("e1 character harmonic", c.harmonic, false);
  }
  {
    const auto nil = get<Q>("nilp5");
    rec.check("nilp5 inclusion harmonic", classify(nil.expected.tensions.at("inclusion").first, tol).harmonic, true);
  }
  for (const std::string base : {"heis3", "e1"}) {
    Params<Q> p;
    p.base = base;
    const auto t = get<Q>("tangent", p);
    detail::check_entry(rec, "tangent(" + base + ")", t, tol);
    const auto c = classify(t.expected.tensions.at("projection").first, tol);
    rec.check("tangent(" + base + ") harmonic", c.harmonic, base == "heis3");
    rec.check("tangent(" + base + ") biharmonic", c.biharmonic, base == "heis3");
  }
  {
    const auto r = sl2_system(Q(1), Q(0), Q(0), Q(1), Q(1), Q(2), Q(3), tol);
    rec.check_true("sl2 system at A = I", r[0].is_zero() && r[1].is_zero() && r[2].is_zero(),
                   r[0].str() + ", " + r[1].str() + ", " + r[2].str(), "0, 0, 0");
  }
  {
    const auto [x, y] = solve_system_s(Q(1), Q(1), Q(0), Q(1));
    rec.check_true("system (S) at p=1, r=0, s=1, alpha=1", x.is_zero() && y.is_zero(), x.str() + ", " + y.str(), "0, 0");
  }

  // Harmonic E(1) self-maps are homothetic; biharmonic non-harmonic ones
  // factor as xi(e) = 0, xi(f) = q f' with f' orthogonal to e.
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const auto random_gram = [&]() {
    M a(2, 2);
    a << unif(rng), unif(rng), unif(rng), unif(rng);
    return M(a * a.transpose() + 0.5 * M::Identity(2, 2));
  };
  const Tolerance loose{1e-8, 1e-8};
  {
    int checked = 0;
    double worst = 0.0;
    const M basis[3] = {(M(2, 2) << 1, 0, 0, 0).finished(), (M(2, 2) << 0, 1, 1, 0).finished(),
                        (M(2, 2) << 0, 0, 0, 1).finished()};
    for (int k = 0; k < 200; ++k) {
      const auto alg = algebras::e1<double>(1.0 + unif(rng) * 0.5);
      const M g1 = random_gram();
      M xi(2, 2);
      xi << 0.5 + 1.5 * std::abs(unif(rng)), unif(rng), 0.0, 1.0;
      const EuclideanLieAlgebra<double> src(alg, g1);
      const Vector<double> ug = unimodular_vector(src);
      M sys(2, 3);
      for (int b = 0; b < 3; ++b) {
        const M xs = numeric::inverse(g1) * xi.transpose() * basis[b];
        for (Index i = 0; i < 2; ++i) sys(i, b) = (xs * alg.ad_basis(i) * xi).trace() - (basis[b] * xi * ug)(i);
      }
      const M kernel = numeric::nullspace(sys);
      if (kernel.cols() == 0) continue;
      const Vector<double> c = kernel * Vector<double>::Constant(kernel.cols(), 1.0 + unif(rng) * 0.1);
      M g2 = c(0) * basis[0] + c(1) * basis[1] + c(2) * basis[2];
      if (!numeric::is_positive_definite(g2)) g2 = -g2;
      if (!numeric::is_positive_definite(g2)) continue;
      const LieAlgebraMap<double> map(src, EuclideanLieAlgebra<double>(alg, g2), xi);
      if (!classify(map, loose).harmonic) continue;
      const M pull = xi.transpose() * g2 * xi;
      const double lambda = pull(0, 0) / g1(0, 0);
      worst = std::max(worst, max_abs(M(pull - lambda * g1)) / max_abs(pull));
      ++checked;
    }
    rec.check_true("E(1) harmonic self-maps homothetic", checked >= 20 && worst < 1e-7,
                   std::to_string(checked) + " maps, residual " + std::to_string(worst), ">= 20 maps, residual < 1e-7");
  }
  {
    int biharmonic_only = 0;
    int factorised = 0;
    for (int k = 0; k < 200; ++k) {
      const auto alg = algebras::e1<double>(1.0);
      const M g1 = random_gram();
      const M g2 = random_gram();
      // f' is g2-orthogonal to e; half of the samples point xi(f) along it.
      Vector<double> fp(2);
      fp << -g2(0, 1), g2(0, 0);
      M xi = M::Zero(2, 2);
      const double q = 0.5 + std::abs(unif(rng));
      if (k % 2 == 0) {
        xi.col(1) = q * fp;
      } else {
        xi(0, 1) = unif(rng);
        xi(1, 1) = unif(rng);
        if (k % 4 == 1) {
          xi(0, 0) = unif(rng);
          xi(0, 1) = unif(rng);
          xi(1, 1) = 1.0;
        }
      }
      const LieAlgebraMap<double> map(EuclideanLieAlgebra<double>(alg, g1), EuclideanLieAlgebra<double>(alg, g2), xi);
      if (!validate_hom(map, loose)) continue;
      const auto c = classify(map, loose);
      if (!c.biharmonic || c.harmonic) continue;
      ++biharmonic_only;
      const Vector<double> e = Vector<double>::Unit(2, 0);
      const Vector<double> xf = xi.col(1);
      const bool kills_e = max_abs(Vector<double>(xi * e)) < 1e-8;
      const bool along_fp = std::abs(xf.dot(g2 * e)) < 1e-8 * (1.0 + max_abs(xf));
      if (kills_e && along_fp) ++factorised;
    }
    rec.check_true("E(1) biharmonic non-harmonic maps factor through R", biharmonic_only >= 20 && factorised == biharmonic_only,
                   std::to_string(factorised) + " of " + std::to_string(biharmonic_only), "all of >= 20");
  }
  {
    int zero = 0;
    for (int k = 0; k < 100; ++k) {
      const EuclideanLieAlgebra<double> h(algebras::e1<double>(0.5 + std::abs(unif(rng))), random_gram());
      Matrix<double> stacked(4, 2);
      stacked.topRows(2) = h.levi_civita().basis_op(0);
      stacked.bottomRows(2) = h.levi_civita().basis_op(1);
      if (numeric::nullspace(stacked).cols() == 0) ++zero;
    }
    rec.check_true("2-dim non-abelian: no nonzero parallel vector", zero == 100, std::to_string(zero) + " of 100",
                   "100 of 100");
  }
  return rec.report;
}

}  // namespace liebih::catalog
