#include <array>
#include <cstdio>

#include "liebih/liebih.hpp"

using namespace liebih;
using M = Matrix<double>;

int main() {
  for (const auto& w : {std::array{1.0, 2.0, 3.0}, std::array{1.0, 1.0, 2.0}, std::array{2.0, 2.0, 2.0}}) {
    const M g = Vector<double>((Vector<double>(3) << w[0], w[1], w[2]).finished()).asDiagonal();
    const EuclideanLieAlgebra<double> so3(algebras::so3<double>(), g);
    std::printf("so(3) diag(%g, %g, %g): dim CH = %ld\n", w[0], w[1], w[2],
                static_cast<long>(harmonic_cone(so3).dimension));
  }

  M g2(2, 2);
  g2 << 2.0, 0.5, 0.5, 1.0;
  const double alpha = 1.5;
  const auto id = identity_map(algebras::e1<double>(alpha), M(M::Identity(2, 2)), g2);
  const auto t = tension(id);
  std::printf("tau(Id) on E(1): (%g, %g)\n", t(0), t(1));

  const EuclideanLieAlgebra<double> n(algebras::e1<double>(1.0), M::Identity(2, 2));
  const auto sd = e1_harmonic_example(alpha, g2, n, 7);
  const auto built = build_semidirect(sd);
  const auto c = classify(built.projection);
  std::printf("extension of dim %ld, projection harmonic: %s, |tau| = %.2e, oracle defect = %.2e\n",
              static_cast<long>(built.algebra.dim()), c.harmonic ? "yes" : "no", c.tension_norm,
              tension_oracle_defect(sd, built));
}
