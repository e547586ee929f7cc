#pragma once

// Qubit state representations: density matrix, Bloch vector and the
// probability triple (p1, p2, p3) of spin projection +1/2 along x, y, z.
//
// A probability triple is a point of the unit cube. Every point of the cube
// describes three classical coins; only points inside the ball
//   sum_k (p_k - 1/2)^2 <= 1/4
// describe qubit states. Triples outside the ball are representable and are
// flagged by is_quantum_admissible(), never silently clipped.

#include <array>
#include <complex>
#include <utility>

#include <Eigen/Core>

#include "malevich/tolerances.hpp"

namespace malevich {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
  Eigen::Vector3d as_vector() const { return {x, y, z}; }
};

struct ProbabilityTriple {
  double p1 = 0.5;
  double p2 = 0.5;
  double p3 = 0.5;

  // Zero-based access, index 0 -> p1.
  double operator[](int k) const;
  double& operator[](int k);

  Eigen::Vector3d as_vector() const { return {p1, p2, p3}; }
  static ProbabilityTriple from_vector(const Eigen::Vector3d& v) {
    return {v(0), v(1), v(2)};
  }

  bool in_box(double eps = kDefaultTolerances.box) const;
  bool is_quantum_admissible(double eps = kDefaultTolerances.ball) const;

  friend bool operator==(const ProbabilityTriple&,
                         const ProbabilityTriple&) = default;
};

// Measurement direction n = (sin b cos a, sin b sin a, cos b).
struct Direction {
  double alpha = 0.0;
  double beta = 0.0;

  Eigen::Vector3d unit_vector() const;
};

struct SpectralData {
  double lambda1 = 0.5;  // larger eigenvalue
  double lambda2 = 0.5;
  double entropy = 0.0;  // nats
};

// 2x2 complex matrix with the checks a qubit state must pass. Construction
// does not validate: matrices built from non-admissible triples are
// legitimately non-positive.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix2c::Identity() * 0.5) {}
  explicit DensityMatrix(const Matrix2c& m) : m_(m) {}

  const Matrix2c& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double hermiticity_residual() const;
  double trace_residual() const;
  // Eigenvalues of the Hermitian part, ascending.
  std::array<double, 2> eigenvalues() const;
  double purity() const;  // Tr(rho^2)

  bool is_hermitian(double eps = kDefaultTolerances.hermitian) const {
    return hermiticity_residual() <= eps;
  }
  bool has_unit_trace(double eps = kDefaultTolerances.trace) const {
    return trace_residual() <= eps;
  }
  bool is_positive(double eps = kDefaultTolerances.psd) const {
    return eigenvalues()[0] >= -eps;
  }
  bool is_physical(const Tolerances& tol = kDefaultTolerances) const {
    return is_hermitian(tol.hermitian) && has_unit_trace(tol.trace) &&
           is_positive(tol.psd);
  }

  // Throws ValidationError naming the first violated invariant.
  void validate(const Tolerances& tol = kDefaultTolerances) const;

 private:
  Matrix2c m_;
};

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
}  // namespace pauli

// Throws ValidationError if p leaves [0,1]^3 by more than tol.box.
void require_in_box(const ProbabilityTriple& p,
                    const Tolerances& tol = kDefaultTolerances);

DensityMatrix rho_from_probabilities(const ProbabilityTriple& p,
                                     const Tolerances& tol = kDefaultTolerances);

// p_k = (Tr(rho sigma_k) + 1) / 2. Rejects non-physical rho.
ProbabilityTriple probabilities_from_rho(
    const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

BlochVector bloch_from_probabilities(const ProbabilityTriple& p,
                                     const Tolerances& tol = kDefaultTolerances);
ProbabilityTriple probabilities_from_bloch(const BlochVector& r);

// sum_k (p_k - 1/2)^2. At most 1/4 for qubit states, equal to 1/4 for pure ones.
double uncertainty_functional(const ProbabilityTriple& p);

// lambda_{1,2} = 1/2 +- sqrt(uncertainty_functional(p)) and the von Neumann
// entropy, with 0 ln 0 = 0. Rejects non-admissible p.
SpectralData spectral_data(const ProbabilityTriple& p,
                           const Tolerances& tol = kDefaultTolerances);

// Qubit tomogram w(+-1/2, n) = (1 +- n.r) / 2.
std::pair<double, double> tomogram(const ProbabilityTriple& p,
                                   const Direction& n,
                                   const Tolerances& tol = kDefaultTolerances);

}  // namespace malevich
