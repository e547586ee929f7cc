#include "malevich/sampling.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace malevich {

ProbabilityTriple random_box_triple(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p1 = u(rng);
  const double p2 = u(rng);
  return {p1, p2, u(rng)};
}

ProbabilityTriple random_admissible_triple(Rng& rng) {
  for (;;) {
    const ProbabilityTriple p = random_box_triple(rng);
    if (uncertainty_functional(p) <= 0.25) return p;
  }
}

ProbabilityTriple random_pure_triple(Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v;
  do {
    for (int k = 0; k < 3; ++k) v(k) = g(rng);
  } while (v.norm() < 1e-8);
  v.normalize();
  return probabilities_from_bloch({v(0), v(1), v(2)});
}

EulerUnitary random_euler(Rng& rng) {
  std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> half(0.0, std::numbers::pi);
  EulerUnitary e;
  e.psi = turn(rng);
  e.theta = half(rng);
  e.phi = turn(rng);
  return e;
}

Matrix2c random_unitary(Rng& rng) { return unitary_from_euler(random_euler(rng)); }

KrausSet random_kraus_set(Rng& rng, std::size_t count) {
  std::normal_distribution<double> g;
  std::vector<Matrix2c> ops(count);
  Matrix2c gram;
  Eigen::SelfAdjointEigenSolver<Matrix2c> solver;
  // Redraw nearly singular Gram matrices; their inverse root loses digits.
  do {
    gram.setZero();
    for (Matrix2c& a : ops) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const double re = g(rng);
          a(i, j) = Complex{re, g(rng)};
        }
      }
      gram += a.adjoint() * a;
    }
    solver.compute(gram);
  } while (solver.eigenvalues()(0) < 1e-3 * solver.eigenvalues()(1));
  const Matrix2c inv_sqrt = solver.eigenvectors() *
                            solver.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                            solver.eigenvectors().adjoint();
  for (Matrix2c& a : ops) a = a * inv_sqrt;
  return KrausSet(std::move(ops));
}

Hamiltonian2 random_hamiltonian(Rng& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  const double h11 = g(rng);
  const double h22 = g(rng);
  const double re = g(rng);
  const double im = g(rng);
  Hamiltonian2 h;
  h.entries << h11, Complex{re, -im},
               Complex{re, im}, h22;
  return h;
}

}  // namespace malevich
