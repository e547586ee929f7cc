#pragma once

// Quantum channels acting on the probability triple.
//
// Every trace-preserving map of a qubit acts on (p1, p2, p3) as an affine map
// p -> M p + shift. Maps are extracted by probing the channel with four states
// (the maximally mixed state and the +x, +y, +z eigenstates) and solving for M
// and the shift. The closed-form expressions in the complex basis
// (p3, p, p*), p = p1 + i p2, are kept alongside as an independent route.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "malevich/qubit_core.hpp"
#include "malevich/triangle_geometry.hpp"

namespace malevich {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

class KrausSet {
 public:
  KrausSet() = default;
  explicit KrausSet(std::vector<Matrix2c> operators)
      : operators_(std::move(operators)) {}

  const std::vector<Matrix2c>& operators() const { return operators_; }
  std::size_t size() const { return operators_.size(); }
  bool empty() const { return operators_.empty(); }

  // max |(sum_k V_k^dag V_k - I)_{ij}|
  double completeness_residual() const;
  // Throws CompletenessError when the residual exceeds tol.kraus.
  void require_complete(const Tolerances& tol = kDefaultTolerances) const;

  // Kraus set of "this after first": {V_k W_j}.
  KrausSet after(const KrausSet& first) const;

 private:
  std::vector<Matrix2c> operators_;
};

struct AffineProbabilityMap {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();

  ProbabilityTriple apply(const ProbabilityTriple& p) const;
  // The map "this after first".
  AffineProbabilityMap after(const AffineProbabilityMap& first) const;

  static AffineProbabilityMap identity() { return {}; }
};

// Block matrix [[M, shift], [0, 1]] acting on (p1, p2, p3, 1).
struct HomogeneousMap4 {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();

  HomogeneousMap4 operator*(const HomogeneousMap4& rhs) const {
    return {matrix * rhs.matrix};
  }
  AffineProbabilityMap affine() const;
};

// Same map in the complex coordinates (p3, p, p*).
struct ComplexAffineMap {
  Matrix3c matrix = Matrix3c::Identity();
  Vector3c shift = Vector3c::Zero();
};

struct Hamiltonian2 {
  Matrix2c entries = Matrix2c::Zero();

  void validate(const Tolerances& tol = kDefaultTolerances) const;
};

struct EulerUnitary {
  double psi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// Change of basis between (p1, p2, p3) and (p3, p1 + i p2, p1 - i p2).
const Matrix3c& complex_basis();
const Matrix3c& complex_basis_inverse();
ComplexAffineMap to_complex_basis(const AffineProbabilityMap& map);

struct RealPart {
  AffineProbabilityMap map;
  double imaginary_residue = 0.0;
};
RealPart to_real_basis(const ComplexAffineMap& map);

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus,
                          const Tolerances& tol = kDefaultTolerances);

// Affine map obtained by probing the channel with four states.
AffineProbabilityMap affine_from_kraus(const KrausSet& kraus,
                                       const Tolerances& tol = kDefaultTolerances);

// Whether the "+gamma" constant of the shift is added once per channel or once
// per Kraus operator (as it appears inside the sum in the printed formula).
enum class GammaPlacement { once, per_operator };

// Closed-form M_V and shift in the complex basis, summed over the operators.
ComplexAffineMap kraus_formula_complex(std::span<const Matrix2c> operators,
                                       GammaPlacement gamma = GammaPlacement::per_operator);

struct CrossCheckReport {
  AffineProbabilityMap probe;
  AffineProbabilityMap formula;          // printed formula, real basis
  AffineProbabilityMap formula_gamma_once;
  double residual = 0.0;                 // max-norm probe vs printed formula
  double residual_gamma_once = 0.0;
  double imaginary_residue = 0.0;
  bool agrees = false;                   // residual <= tol.cross_check
};

CrossCheckReport cross_check_kraus(const KrausSet& kraus,
                                   const Tolerances& tol = kDefaultTolerances);

double unitarity_residual(const Matrix2c& u);
void require_unitary(const Matrix2c& u, const Tolerances& tol = kDefaultTolerances);

AffineProbabilityMap affine_from_unitary(const Matrix2c& u,
                                         const Tolerances& tol = kDefaultTolerances);

HomogeneousMap4 homogeneous4(const AffineProbabilityMap& map);

// exp(-i t H) in closed form. The unit axis is n = (H - tr(H)/2)/h; for h = 0
// the result is the global phase times the identity.
Matrix2c propagator(const Hamiltonian2& h, double t,
                    const Tolerances& tol = kDefaultTolerances);

// Transposition rho -> rho^T: (p1, p2, p3) -> (p1, 1 - p2, p3).
ProbabilityTriple transposition_map(const ProbabilityTriple& p,
                                    const Tolerances& tol = kDefaultTolerances);
AffineProbabilityMap transposition_affine();

// cos^2(mu) * K(p) + sin^2(mu) * K2(p^T).
ProbabilityTriple generic_positive_map(const ProbabilityTriple& p,
                                       const KrausSet& kraus,
                                       const KrausSet& kraus_transposed,
                                       double mu,
                                       const Tolerances& tol = kDefaultTolerances);

Matrix2c unitary_from_euler(const EulerUnitary& e);

struct TrajectoryPoint {
  double t = 0.0;
  ProbabilityTriple p;
  double square_area_sum = 0.0;
  double triangle_area = 0.0;
};

std::vector<TrajectoryPoint> evolve_trajectory(const Hamiltonian2& h,
                                               const ProbabilityTriple& p0,
                                               std::span<const double> times,
                                               const Tolerances& tol = kDefaultTolerances);

}  // namespace malevich
