#include <gtest/gtest.h>

#include <optional>

#include "liebih/algebras.hpp"
#include "liebih/maps.hpp"
#include "support/homs.hpp"

using namespace liebih;
namespace tk = liebih::testkit;

namespace {

using M = Matrix<double>;
using V = Vector<double>;
using Q = Rational;

EuclideanLieAlgebra<double> ela(const LieAlgebra<double>& a, const M& g) { return EuclideanLieAlgebra<double>(a, g); }
EuclideanLieAlgebra<double> ela(const LieAlgebra<double>& a) {
  return EuclideanLieAlgebra<double>(a, M::Identity(a.dim(), a.dim()));
}

M mat2(double a, double b, double c, double d) {
  M m(2, 2);
  m << a, b, c, d;
  return m;
}

double hs_norm2(const LieAlgebraMap<double>& map) { return (map.adjoint() * map.xi()).trace(); }

/// E(1) self-map e -> alpha e, f -> p e + q f.
M e1_self(double alpha, double p, double q) { return mat2(alpha, p, 0.0, q); }

}  // namespace

TEST(ValidateHom, Identity) {
  tk::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto a = tk::random_algebra(rng);
    const LieAlgebraMap<double> map(ela(a), ela(a), M::Identity(a.dim(), a.dim()));
    EXPECT_TRUE(validate_hom(map));
  }
}

TEST(ValidateHom, E1SelfMaps) {
  const auto a = algebras::e1<double>(1.5);
  EXPECT_TRUE(validate_hom(LieAlgebraMap<double>(ela(a), ela(a), e1_self(2.0, 0.3, 1.0))));
  EXPECT_TRUE(validate_hom(LieAlgebraMap<double>(ela(a), ela(a), e1_self(0.0, 0.3, 4.0))));
  EXPECT_FALSE(validate_hom(LieAlgebraMap<double>(ela(a), ela(a), e1_self(2.0, 0.3, 3.0))));
}

TEST(ValidateHom, HeisenbergSwap) {
  const auto h = algebras::heis3<double>(1.0);
  M swap = M::Zero(3, 3);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  EXPECT_FALSE(validate_hom(LieAlgebraMap<double>(ela(h), ela(h), swap)));
  swap(0, 0) = -1.0;
  EXPECT_TRUE(validate_hom(LieAlgebraMap<double>(ela(h), ela(h), swap)));
}

TEST(ValidateHom, RejectsWrongShape) {
  const auto a = algebras::e1<double>();
  EXPECT_THROW(LieAlgebraMap<double>(ela(a), ela(a), M::Identity(3, 2)), DimensionError);
}

TEST(ValidateHom, RandomSamplesAreHomomorphisms) {
  tk::Rng rng(2);
  for (int k = 0; k < 300; ++k) EXPECT_TRUE(validate_hom(tk::random_map(rng)));
}

TEST(UXi, ZeroMap) {
  tk::Rng rng(3);
  const auto g = tk::random_ela(rng);
  const auto h = tk::random_ela(rng);
  const LieAlgebraMap<double> map(g, h, M::Zero(h.dim(), g.dim()));
  EXPECT_LT(max_abs(u_xi(map)), 1e-12);
}

TEST(UXi, BiinvariantTargetVanishes) {
  tk::Rng rng(4);
  const auto h = ela(algebras::so3<double>(1.3));
  for (int k = 0; k < 50; ++k) {
    const auto g = ela(algebras::so3<double>(1.3), tk::random_gram(rng, 3));
    const M xi = numeric::matrix_exp(M(h.algebra().ad(tk::random_vector(rng, 3))));
    EXPECT_LT(max_abs(u_xi(LieAlgebraMap<double>(g, h, xi))), 1e-10);
  }
}

TEST(UXi, E1IdentityEqualsUnimodularVector) {
  const double a = 1.7;
  const auto g = ela(algebras::e1<double>(a));
  const LieAlgebraMap<double> map(g, g, M::Identity(2, 2));
  const V u = u_xi(map);
  EXPECT_NEAR(u(0), 0.0, 1e-12);
  EXPECT_NEAR(u(1), -a, 1e-12);
}

TEST(UXi, ExactE1Identity) {
  const Q a(3, 2);
  const EuclideanLieAlgebra<Q> g(algebras::e1<Q>(a), Matrix<Q>::Identity(2, 2));
  const LieAlgebraMap<Q> map(g, g, Matrix<Q>::Identity(2, 2));
  const Vector<Q> u = u_xi(map, Tolerance{0.0, 0.0});
  EXPECT_EQ(u(0), Q(0));
  EXPECT_EQ(u(1), -a);
}

TEST(UXi, DualFormulaAgreement) {
  tk::Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto map = tk::random_map(rng);
    const V lc = u_xi_levi_civita(map);
    const V tr = u_xi_trace(map);
    ASSERT_LE(max_abs(V(lc - tr)), 1e-8 * (1.0 + max_abs(lc))) << "sample " << k;
    const V ug = unimodular_vector(map.source());
    const V tau = lc - map.xi() * ug;
    const V vec = bitension_vector(map, tau, ug);
    const V dual = bitension_dual(map, tau, lc);
    ASSERT_LE(max_abs(V(vec - dual)), 1e-8 * (1.0 + max_abs(vec))) << "sample " << k;
    EXPECT_NO_THROW(bitension(map));
  }
}

TEST(Tension, IdentitySameMetricIsZero) {
  tk::Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto g = tk::random_ela(rng);
    EXPECT_LT(max_abs(tension(LieAlgebraMap<double>(g, g, M::Identity(g.dim(), g.dim())))), 1e-10);
  }
}

TEST(Tension, E1Character) {
  const double a = 0.8;
  const LieAlgebraMap<double> map(ela(algebras::e1<double>(a)), ela(algebras::abelian<double>(1)), M{{0.0, 1.0}});
  const V tau = tension(map);
  ASSERT_EQ(tau.size(), 1);
  EXPECT_NEAR(tau(0), a, 1e-12);
  EXPECT_FALSE(classify(map).harmonic);
}

TEST(Tension, ExactE1Character) {
  const Q a(5, 3);
  const LieAlgebraMap<Q> map(EuclideanLieAlgebra<Q>(algebras::e1<Q>(a), Matrix<Q>::Identity(2, 2)),
                             EuclideanLieAlgebra<Q>(algebras::abelian<Q>(1), Matrix<Q>::Identity(1, 1)),
                             Matrix<Q>{{Q(0), Q(1)}});
  const Tolerance exact{0.0, 0.0};
  EXPECT_EQ(tension(map, exact)(0), a);
  EXPECT_EQ(bitension(map, exact)(0), Q(0));
}

TEST(Bitension, HarmonicMapsHaveZeroBitension) {
  tk::Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const auto g = tk::random_ela(rng);
    const LieAlgebraMap<double> map(g, g, M::Identity(g.dim(), g.dim()));
    EXPECT_LT(max_abs(bitension(map)), 1e-10);
    const auto c = classify(map);
    EXPECT_TRUE(c.harmonic);
    EXPECT_TRUE(c.biharmonic);
  }
}

TEST(Bitension, AbelianTargetVanishes) {
  tk::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const auto g = tk::random_ela(rng);
    const Index m = 1 + static_cast<Index>(rng() % 3);
    const M chi = tk::characters(g.algebra());
    const M xi = tk::random_matrix(rng, m, chi.rows()) * chi;
    const LieAlgebraMap<double> map(g, ela(algebras::abelian<double>(m), tk::random_gram(rng, m)), xi);
    EXPECT_LT(max_abs(bitension(map)), 1e-10);
    EXPECT_TRUE(classify(map).biharmonic);
  }
}

TEST(Bitension, BiinvariantTargetVanishes) {
  tk::Rng rng(9);
  const auto h = ela(algebras::so3<double>(0.7), 2.5 * M::Identity(3, 3));
  for (int k = 0; k < 100; ++k) {
    const auto g = ela(algebras::so3<double>(0.7), tk::random_gram(rng, 3));
    const M xi = numeric::matrix_exp(M(h.algebra().ad(tk::random_vector(rng, 3))));
    const LieAlgebraMap<double> map(g, h, xi);
    EXPECT_LT(max_abs(bitension(map)), 1e-10);
    EXPECT_TRUE(classify(map).biharmonic);
  }
}

TEST(Classify, HarmonicImpliesBiharmonic) {
  tk::Rng rng(10);
  for (int k = 0; k < 500; ++k) {
    const auto c = classify(tk::random_map(rng));
    if (c.harmonic) {
      EXPECT_TRUE(c.biharmonic);
      EXPECT_LT(max_abs(c.bitension), 1e-9);
    }
  }
}

TEST(Classify, E1LineInclusion) {
  const auto g = ela(algebras::e1<double>(1.2));
  const LieAlgebraMap<double> f_line(ela(algebras::abelian<double>(1)), g, M{{0.0}, {1.0}});
  const auto c = classify(f_line);
  EXPECT_TRUE(c.riemannian_immersion);
  EXPECT_TRUE(c.harmonic);
  const LieAlgebraMap<double> e_line(ela(algebras::abelian<double>(1)), g, M{{1.0}, {0.0}});
  const auto d = classify(e_line);
  EXPECT_TRUE(d.riemannian_immersion);
  EXPECT_FALSE(d.harmonic);
}

TEST(Classify, NonMinimalKernelSubmersion) {
  const LieAlgebraMap<double> map(ela(algebras::e1<double>(1.0)), ela(algebras::abelian<double>(1)), M{{0.0, 1.0}});
  const auto c = classify(map);
  EXPECT_TRUE(c.riemannian_submersion);
  EXPECT_FALSE(c.riemannian_immersion);
  EXPECT_FALSE(c.harmonic);
  EXPECT_TRUE(c.biharmonic);
}

TEST(Classify, ImmersionSubmersionPredicates) {
  tk::Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto g = tk::random_ela(rng);
    const Index n = g.dim();
    const M p = tk::random_invertible(rng, n);
    const auto target = ela(g.algebra().change_basis(p), M(p.transpose() * g.gram() * p));
    const LieAlgebraMap<double> iso(g, target, numeric::inverse(p));
    EXPECT_TRUE(is_riemannian_immersion(iso));
    EXPECT_TRUE(is_riemannian_submersion(iso));
    const LieAlgebraMap<double> scaled(g, ela(g.algebra(), M(4.0 * g.gram())), M::Identity(n, n));
    EXPECT_FALSE(is_riemannian_immersion(scaled));
    EXPECT_FALSE(is_riemannian_submersion(scaled));
  }
}

TEST(Classify, ImmersionMinimalityNilpotentPair) {
  tk::Rng rng(12);
  const auto n5 = algebras::nilp5<double>();
  const M basis = algebras::nilp5_subalgebra_basis<double>();
  for (int k = 0; k < 100; ++k) {
    const auto g = ela(n5, tk::random_gram(rng, 5));
    const Subalgebra<double> sub(g, basis);
    const auto source = sub.intrinsic();
    const LieAlgebraMap<double> inc(source, g, basis);
    ASSERT_TRUE(validate_hom(inc));
    const auto c = classify(inc);
    EXPECT_TRUE(c.riemannian_immersion);
    EXPECT_TRUE(c.harmonic) << "metric " << k;
    EXPECT_LT(max_abs(second_fundamental(sub).mean_curvature), 1e-9);
  }
}

TEST(Classify, BiinvariantSourceSurjective) {
  tk::Rng rng(13);
  const auto src_alg = algebras::product(algebras::so3<double>(1.0), algebras::abelian<double>(2));
  const M g_src = algebras::block_diag<double>(M(2.0 * M::Identity(3, 3)), tk::random_gram(rng, 2));
  const auto g = ela(src_alg, g_src);
  ASSERT_TRUE(is_biinvariant(g));
  for (int k = 0; k < 50; ++k) {
    M to_so3 = M::Zero(3, 5);
    to_so3.leftCols(3) = numeric::matrix_exp(M(algebras::so3<double>(1.0).ad(tk::random_vector(rng, 3))));
    const LieAlgebraMap<double> m1(g, ela(algebras::so3<double>(1.0), tk::random_gram(rng, 3)), to_so3);
    EXPECT_LT(max_abs(tension(m1)), 1e-9);
    M to_r2 = M::Zero(2, 5);
    to_r2.rightCols(2) = tk::random_invertible(rng, 2);
    const LieAlgebraMap<double> m2(g, ela(algebras::abelian<double>(2), tk::random_gram(rng, 2)), to_r2);
    EXPECT_LT(max_abs(tension(m2)), 1e-9);
  }
}

TEST(SubmersionSplit, Identity) {
  tk::Rng rng(14);
  for (int k = 0; k < 30; ++k) {
    const auto g = tk::random_ela(rng);
    const LieAlgebraMap<double> map(g, ela(g.algebra(), tk::random_gram(rng, g.dim())), M::Identity(g.dim(), g.dim()));
    const auto split = submersion_split(map);
    EXPECT_EQ(split.kernel.dim(), 0);
    EXPECT_LT(max_abs(V(tension(split.quotient_map) - tension(map))), 1e-9);
  }
}

TEST(SubmersionSplit, HeisenbergOverCenter) {
  tk::Rng rng(15);
  const auto h = algebras::heis3<double>(1.0);
  for (int k = 0; k < 30; ++k) {
    const auto g = ela(h, tk::random_gram(rng, 3));
    M xi = M::Zero(2, 3);
    xi(0, 1) = 1.0;
    xi(1, 2) = 1.0;
    const LieAlgebraMap<double> map(g, ela(algebras::abelian<double>(2), tk::random_gram(rng, 2)), xi);
    const auto split = submersion_split(map);
    EXPECT_EQ(split.kernel.dim(), 1);
    EXPECT_LT(split.defect, 1e-9);
    const V direct = tension(map);
    const V via = tension(split.quotient_map) - xi * split.mean_curvature;
    EXPECT_LT(max_abs(V(direct - via)), 1e-9);
  }
}

TEST(SubmersionSplit, RandomSurjections) {
  tk::Rng rng(16);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const auto map = tk::random_map(rng);
    if (!is_surjective(map)) {
      EXPECT_THROW(submersion_split(map), ValidationError);
      continue;
    }
    const auto split = submersion_split(map);
    EXPECT_LT(split.defect, 1e-8);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(SubmersionSplit, NonMinimalKernel) {
  const double a = 1.3;
  const LieAlgebraMap<double> map(ela(algebras::e1<double>(a)), ela(algebras::abelian<double>(1)), M{{0.0, 1.0}});
  const auto split = submersion_split(map);
  EXPECT_LT(max_abs(tension(split.quotient_map)), 1e-12);
  EXPECT_NEAR(split.mean_curvature(1), -a, 1e-12);
}

TEST(Composition, IdentityPhi) {
  tk::Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto psi = tk::random_map(rng);
    const LieAlgebraMap<double> phi(psi.source(), psi.source(), M::Identity(psi.source().dim(), psi.source().dim()));
    EXPECT_LT(check_composition(phi, psi), 1e-9);
  }
}

TEST(Composition, QuotientThenCharacter) {
  tk::Rng rng(18);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const auto g = tk::random_ela(rng);
    const M d = derived_algebra(g.algebra());
    if (d.cols() == 0 || d.cols() == g.dim()) continue;
    const auto q = quotient_metric(Subalgebra<double>(g, d));
    const LieAlgebraMap<double> phi(g, q.algebra, q.projection);
    ASSERT_TRUE(is_riemannian_submersion(phi));
    const Index m = 1 + static_cast<Index>(rng() % 2);
    const LieAlgebraMap<double> psi(q.algebra, ela(algebras::abelian<double>(m), tk::random_gram(rng, m)),
                                    tk::random_matrix(rng, m, q.algebra.dim()));
    EXPECT_LT(check_composition(phi, psi), 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Composition, RejectsNonSubmersion) {
  const auto g = ela(algebras::e1<double>());
  const LieAlgebraMap<double> phi(g, ela(algebras::e1<double>(), M(3.0 * M::Identity(2, 2))), M::Identity(2, 2));
  const LieAlgebraMap<double> psi(phi.target(), phi.target(), M::Identity(2, 2));
  EXPECT_THROW(check_composition(phi, psi), ValidationError);
  const LieAlgebraMap<double> bad(ela(algebras::abelian<double>(3)), ela(algebras::abelian<double>(1)), M::Zero(1, 3));
  EXPECT_THROW(check_composition(psi, bad), DimensionError);
}

namespace {

const M kJ = mat2(0.0, -1.0, 1.0, 0.0);

struct KBlock {
  bool e1;
  double a;
  double lambda;
};

std::pair<LieAlgebra<double>, M> kahler_product(const std::vector<KBlock>& blocks) {
  std::optional<LieAlgebra<double>> alg;
  M g(0, 0);
  for (const auto& b : blocks) {
    const auto piece = b.e1 ? algebras::e1<double>(b.a) : algebras::abelian<double>(2);
    alg = alg ? algebras::product(*alg, piece) : piece;
    g = algebras::block_diag<double>(g, M(b.lambda * M::Identity(2, 2)));
  }
  return {*alg, g};
}

M block_j(std::size_t k) {
  M j = M::Zero(2 * static_cast<Index>(k), 2 * static_cast<Index>(k));
  for (std::size_t i = 0; i < k; ++i) j.block(2 * static_cast<Index>(i), 2 * static_cast<Index>(i), 2, 2) = kJ;
  return j;
}

}  // namespace

TEST(Kahler, AbelianPlane) {
  const auto g = ela(algebras::abelian<double>(2));
  EXPECT_TRUE(check_kahler(KahlerStructure<double>{g, kJ}));
  const LieAlgebraMap<double> id(g, g, M::Identity(2, 2));
  EXPECT_TRUE(is_holomorphic(id, kJ, kJ));
  EXPECT_TRUE(classify(id).harmonic);
}

TEST(Kahler, ValidationRejects) {
  const auto g = ela(algebras::e1<double>(1.0), mat2(1.0, 0.0, 0.0, 2.0));
  EXPECT_FALSE(check_kahler(KahlerStructure<double>{g, kJ}));
  EXPECT_FALSE(check_kahler(KahlerStructure<double>{ela(algebras::abelian<double>(2)), M(2.0 * kJ)}));
  EXPECT_TRUE(check_kahler(KahlerStructure<double>{ela(algebras::e1<double>(2.0), M(3.0 * M::Identity(2, 2))), kJ}));
}

TEST(Kahler, NonHolomorphic) {
  const auto g = ela(algebras::abelian<double>(2));
  EXPECT_FALSE(is_holomorphic(LieAlgebraMap<double>(g, g, mat2(1.0, 0.0, 0.0, 2.0)), kJ, kJ));
}

TEST(Kahler, HolomorphicMapsAreHarmonic) {
  tk::Rng rng(19);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    std::vector<KBlock> src, tgt;
    const std::size_t ns = 1 + rng() % 2;
    const std::size_t nt = 1 + rng() % 2;
    for (std::size_t i = 0; i < ns; ++i) src.push_back({rng() % 2 == 0, tk::uniform(rng, 0.5, 2.0), tk::uniform(rng, 0.5, 2.0)});
    for (std::size_t i = 0; i < nt; ++i) tgt.push_back({rng() % 2 == 0, tk::uniform(rng, 0.5, 2.0), tk::uniform(rng, 0.5, 2.0)});
    const auto [sa, sg] = kahler_product(src);
    const auto [ta, tg] = kahler_product(tgt);
    M xi = M::Zero(ta.dim(), sa.dim());
    std::vector<bool> used(nt, false);
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        const Index r = 2 * static_cast<Index>(j);
        const Index c = 2 * static_cast<Index>(i);
        if (src[i].e1 && tgt[j].e1 && !used[j] && rng() % 2 == 0) {
          xi.block(r, c, 2, 2) = (src[i].a / tgt[j].a) * M::Identity(2, 2);
          used[j] = true;
        } else if (!src[i].e1 && !tgt[j].e1) {
          xi.block(r, c, 2, 2) = tk::uniform(rng, -1.0, 1.0) * M::Identity(2, 2) + tk::uniform(rng, -1.0, 1.0) * kJ;
        }
      }
    }
    const EuclideanLieAlgebra<double> sg_ela(sa, sg);
    const EuclideanLieAlgebra<double> tg_ela(ta, tg);
    const M js = block_j(ns);
    const M jt = block_j(nt);
    ASSERT_TRUE(check_kahler(KahlerStructure<double>{sg_ela, js}));
    ASSERT_TRUE(check_kahler(KahlerStructure<double>{tg_ela, jt}));
    const LieAlgebraMap<double> map(sg_ela, tg_ela, xi);
    ASSERT_TRUE(validate_hom(map));
    ASSERT_TRUE(is_holomorphic(map, js, jt));
    const auto c = classify(map);
    EXPECT_TRUE(c.harmonic);
    EXPECT_LT(c.tension_norm, 1e-8);
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Theo1, HarmonicSubmersion) {
  tk::Rng rng(20);
  for (int k = 0; k < 30; ++k) {
    const auto g = tk::random_ela(rng);
    const auto t = theo1_criteria(LieAlgebraMap<double>(g, g, M::Identity(g.dim(), g.dim())));
    EXPECT_LT(t.killing_defect, 1e-10);
    EXPECT_LT(t.parallel_defect, 1e-10);
  }
}

TEST(Theo1, ProductProjection) {
  const auto src = ela(algebras::product(algebras::abelian<double>(1), algebras::e1<double>(1.0)));
  M xi = M::Zero(2, 3);
  xi.rightCols(2).setIdentity();
  const LieAlgebraMap<double> map(src, ela(algebras::e1<double>(1.0), mat2(1.0, 0.0, 0.0, 1.0)), xi);
  const auto t = theo1_criteria(map);
  EXPECT_LT(t.parallel_defect, 1e-10);
  EXPECT_THROW(theo1_criteria(LieAlgebraMap<double>(src, ela(algebras::e1<double>(1.0), M(2.0 * M::Identity(2, 2))), xi)),
               ValidationError);
}

TEST(Theo1, E1ParallelFieldsVanish) {
  tk::Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto h = ela(algebras::e1<double>(tk::random_signed_scale(rng, 0.3, 2.0)(0)), tk::random_gram(rng, 2));
    const V u = tk::random_vector(rng, 2);
    double worst = 0.0;
    for (Index i = 0; i < 2; ++i) worst = std::max(worst, max_abs(V(h.levi_civita().basis_op(i) * u)));
    EXPECT_GT(worst, 1e-3 * max_abs(u));
  }
}

TEST(Properties, TwoStepNilpotentTarget) {
  // For a unimodular source and 2-step nilpotent target, |tau|^3 <= |xi|^2 |tau_2|.
  tk::Rng rng(22);
  int nontrivial = 0;
  for (int k = 0; k < 500; ++k) {
    const double alpha = tk::random_signed_scale(rng, 0.3, 2.0)(0);
    LieAlgebra<double> tgt_alg = algebras::heis3<double>(alpha);
    if (rng() % 2 == 0) tgt_alg = algebras::product(tgt_alg, algebras::abelian<double>(1));
    const Index m = tgt_alg.dim();
    LieAlgebra<double> src_alg(1);
    M xi;
    switch (rng() % 3) {
      case 0:
        src_alg = tgt_alg;
        xi = numeric::matrix_exp(M(tgt_alg.ad(tk::random_vector(rng, m))));
        break;
      case 1: {
        src_alg = algebras::abelian<double>(1 + static_cast<Index>(rng() % 3));
        xi = tk::unit_vector(rng, m) * tk::unit_vector(rng, src_alg.dim()).transpose();
        break;
      }
      default:
        src_alg = algebras::product(algebras::heis3<double>(alpha), algebras::abelian<double>(1));
        xi = M::Zero(m, 4);
        xi.leftCols(3).setIdentity();
        if (m == 4) xi(3, 3) = tk::uniform(rng, -1.0, 1.0);
        break;
    }
    const M p = tk::random_invertible(rng, src_alg.dim());
    src_alg = src_alg.change_basis(p);
    xi = M(xi * p);
    const LieAlgebraMap<double> map(ela(src_alg, tk::random_gram(rng, src_alg.dim())), ela(tgt_alg, tk::random_gram(rng, m)), xi);
    ASSERT_TRUE(validate_hom(map));
    ASSERT_TRUE(is_unimodular(src_alg));
    const auto c = classify(map);
    const double t = c.tension_norm;
    EXPECT_LE(t * t * t, hs_norm2(map) * c.bitension_norm * (1.0 + 1e-8) + 1e-12) << "sample " << k;
    if (c.biharmonic) EXPECT_TRUE(c.harmonic);
    if (t > 1e-6) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 100);
}

TEST(Properties, E1TargetUnimodularSource) {
  // Nonpositive curvature target: |tau|^3 <= |xi|^2 |tau_2|.
  tk::Rng rng(23);
  int nontrivial = 0;
  for (int k = 0; k < 500; ++k) {
    const auto h = ela(algebras::e1<double>(tk::random_signed_scale(rng, 0.3, 2.0)(0)), tk::random_gram(rng, 2));
    LieAlgebra<double> src_alg(1);
    switch (rng() % 4) {
      case 0: src_alg = algebras::abelian<double>(1 + static_cast<Index>(rng() % 3)); break;
      case 1: src_alg = algebras::heis3<double>(1.0); break;
      case 2: src_alg = algebras::e2<double>(); break;
      default: src_alg = algebras::sl2<double>(); break;
    }
    src_alg = src_alg.change_basis(tk::random_invertible(rng, src_alg.dim()));
    const M chi = tk::characters(src_alg);
    M xi = M::Zero(2, src_alg.dim());
    if (chi.rows() > 0) {
      const V w = chi.transpose() * tk::random_vector(rng, chi.rows());
      xi = tk::unit_vector(rng, 2) * (w.transpose() / w.norm());
    }
    const LieAlgebraMap<double> map(ela(src_alg, tk::random_gram(rng, src_alg.dim())), h, xi);
    ASSERT_TRUE(validate_hom(map));
    const auto c = classify(map);
    const double t = c.tension_norm;
    EXPECT_LE(t * t * t, hs_norm2(map) * c.bitension_norm * (1.0 + 1e-8) + 1e-12) << "sample " << k;
    if (c.biharmonic) EXPECT_TRUE(c.harmonic);
    if (t > 1e-6) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 100);
}

namespace {

/// Symmetric G2 making e1 self-map xi harmonic from (G1) to (G2); the
/// tension covector is linear in G2.
std::optional<M> harmonic_target_metric(const LieAlgebra<double>& alg, const M& g1, const M& xi, tk::Rng& rng) {
  const M basis[3] = {mat2(1, 0, 0, 0), mat2(0, 1, 1, 0), mat2(0, 0, 0, 1)};
  const EuclideanLieAlgebra<double> src(alg, g1);
  const V ug = unimodular_vector(src);
  M sys(2, 3);
  for (int b = 0; b < 3; ++b) {
    const M xs = numeric::inverse(g1) * xi.transpose() * basis[b];
    for (Index k = 0; k < 2; ++k) sys(k, b) = (xs * alg.ad_basis(k) * xi).trace() - (basis[b] * xi * ug)(k);
  }
  const M kernel = numeric::nullspace(sys);
  for (int attempt = 0; attempt < 50 && kernel.cols() > 0; ++attempt) {
    const V c = kernel * tk::random_vector(rng, kernel.cols());
    const M g2 = c(0) * basis[0] + c(1) * basis[1] + c(2) * basis[2];
    if (numeric::is_positive_definite(g2)) return g2;
    if (numeric::is_positive_definite(M(-g2))) return M(-g2);
  }
  return std::nullopt;
}

}  // namespace

TEST(Properties, E1HarmonicSelfMapsAreHomothetic) {
  tk::Rng rng(24);
  int found = 0;
  for (int k = 0; k < 300; ++k) {
    const double a = tk::random_signed_scale(rng, 0.3, 2.0)(0);
    const auto alg = algebras::e1<double>(a);
    const M g1 = tk::random_gram(rng, 2);
    const M xi = e1_self(tk::random_signed_scale(rng, 0.3, 2.0)(0), tk::uniform(rng, -1.0, 1.0), 1.0);
    const auto g2 = harmonic_target_metric(alg, g1, xi, rng);
    if (!g2) continue;
    const LieAlgebraMap<double> map(ela(alg, g1), ela(alg, *g2), xi);
    ASSERT_TRUE(validate_hom(map));
    ASSERT_TRUE(classify(map).harmonic);
    const M pull = xi.transpose() * *g2 * xi;
    const double lambda = pull(0, 0) / g1(0, 0);
    EXPECT_GT(lambda, 0.0);
    EXPECT_LT(max_abs(M(pull - lambda * g1)), 1e-7 * max_abs(pull));
    ++found;
  }
  EXPECT_GT(found, 30);
}
