#include "malevich/channel_algebra.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "malevich/errors.hpp"

namespace malevich {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr Complex kGamma{0.5, 0.5};

double max_abs(const auto& m) { return m.cwiseAbs().maxCoeff(); }

// (Tr(rho sigma_k) + 1) / 2 without any validity checks.
ProbabilityTriple pauli_expectations(const Matrix2c& rho) {
  return {0.5 * ((rho * pauli::x()).trace().real() + 1.0),
          0.5 * ((rho * pauli::y()).trace().real() + 1.0),
          0.5 * ((rho * pauli::z()).trace().real() + 1.0)};
}

Matrix2c conjugate_by_kraus(const Matrix2c& rho, const KrausSet& kraus) {
  Matrix2c out = Matrix2c::Zero();
  for (const Matrix2c& v : kraus.operators()) out += v * rho * v.adjoint();
  return out;
}

}  // namespace

double KrausSet::completeness_residual() const {
  Matrix2c sum = Matrix2c::Zero();
  for (const Matrix2c& v : operators_) sum += v.adjoint() * v;
  return max_abs(sum - Matrix2c::Identity());
}

void KrausSet::require_complete(const Tolerances& tol) const {
  if (operators_.empty()) throw CompletenessError("Kraus set is empty", 1.0);
  for (const Matrix2c& v : operators_) {
    if (!v.allFinite()) throw ValidationError("Kraus operator has non-finite entries");
  }
  const double residual = completeness_residual();
  if (residual > tol.kraus) {
    throw CompletenessError(
        fmt::format("Kraus set is not trace preserving: max|sum V^dag V - I| = {:.12g}",
                    residual),
        residual);
  }
}

KrausSet KrausSet::after(const KrausSet& first) const {
  std::vector<Matrix2c> product;
  product.reserve(operators_.size() * first.operators_.size());
  for (const Matrix2c& v : operators_) {
    for (const Matrix2c& w : first.operators_) product.push_back(v * w);
  }
  return KrausSet(std::move(product));
}

ProbabilityTriple AffineProbabilityMap::apply(const ProbabilityTriple& p) const {
  return ProbabilityTriple::from_vector(matrix * p.as_vector() + shift);
}

AffineProbabilityMap AffineProbabilityMap::after(const AffineProbabilityMap& first) const {
  return {matrix * first.matrix, matrix * first.shift + shift};
}

AffineProbabilityMap HomogeneousMap4::affine() const {
  return {matrix.topLeftCorner<3, 3>(), matrix.topRightCorner<3, 1>()};
}

void Hamiltonian2::validate(const Tolerances& tol) const {
  if (!entries.allFinite()) throw ValidationError("Hamiltonian has non-finite entries");
  const double residual = max_abs(entries - entries.adjoint());
  if (residual > tol.hermitian) {
    throw ValidationError(
        fmt::format("Hamiltonian is not Hermitian (residual {:.3g})", residual));
  }
}

const Matrix3c& complex_basis() {
  static const Matrix3c t = [] {
    Matrix3c m;
    m << 0.0, 0.0, 1.0,
         1.0, kI, 0.0,
         1.0, -kI, 0.0;
    return m;
  }();
  return t;
}

const Matrix3c& complex_basis_inverse() {
  static const Matrix3c t = [] {
    Matrix3c m;
    m << 0.0, 0.5, 0.5,
         0.0, -0.5 * kI, 0.5 * kI,
         1.0, 0.0, 0.0;
    return m;
  }();
  return t;
}

ComplexAffineMap to_complex_basis(const AffineProbabilityMap& map) {
  const Matrix3c& t = complex_basis();
  return {t * map.matrix.cast<Complex>() * complex_basis_inverse(),
          t * map.shift.cast<Complex>()};
}

RealPart to_real_basis(const ComplexAffineMap& map) {
  const Matrix3c& t_inv = complex_basis_inverse();
  const Matrix3c m = t_inv * map.matrix * complex_basis();
  const Vector3c s = t_inv * map.shift;
  RealPart out;
  out.map.matrix = m.real();
  out.map.shift = s.real();
  out.imaginary_residue = std::max(max_abs(m.imag()), max_abs(s.imag()));
  return out;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus,
                          const Tolerances& tol) {
  kraus.require_complete(tol);
  rho.validate(tol);
  return DensityMatrix(conjugate_by_kraus(rho.matrix(), kraus));
}

AffineProbabilityMap affine_from_kraus(const KrausSet& kraus, const Tolerances& tol) {
  kraus.require_complete(tol);
  const ProbabilityTriple center{0.5, 0.5, 0.5};
  const Eigen::Vector3d image_center =
      pauli_expectations(conjugate_by_kraus(rho_from_probabilities(center).matrix(), kraus))
          .as_vector();

  AffineProbabilityMap map;
  for (int k = 0; k < 3; ++k) {
    ProbabilityTriple probe = center;
    probe[k] = 1.0;
    const Eigen::Vector3d image =
        pauli_expectations(conjugate_by_kraus(rho_from_probabilities(probe).matrix(), kraus))
            .as_vector();
    map.matrix.col(k) = 2.0 * (image - image_center);
  }
  map.shift = image_center - map.matrix * center.as_vector();
  return map;
}

ComplexAffineMap kraus_formula_complex(std::span<const Matrix2c> operators,
                                       GammaPlacement gamma) {
  ComplexAffineMap out;
  out.matrix.setZero();
  out.shift.setZero();
  for (const Matrix2c& v : operators) {
    const Complex v11 = v(0, 0), v12 = v(0, 1), v21 = v(1, 0), v22 = v(1, 1);
    Matrix3c m;
    m << std::norm(v11) - std::norm(v12), std::conj(v11) * v12, std::conj(v12) * v11,
         std::conj(v11) * v21 - std::conj(v12) * v22, std::conj(v11) * v22, std::conj(v12) * v21,
         std::conj(v21) * v11 - std::conj(v22) * v12, std::conj(v21) * v12, std::conj(v22) * v11;
    out.matrix += m;

    const Complex delta3 = std::norm(v12) - kGamma * std::conj(v11) * v12 -
                           std::conj(kGamma) * std::conj(v12) * v11;
    Complex delta = std::conj(v12) * v22 - kGamma * std::conj(v11) * v22 -
                    std::conj(kGamma) * std::conj(v12) * v21;
    if (gamma == GammaPlacement::per_operator) delta += kGamma;
    out.shift += Vector3c(delta3, delta, std::conj(delta));
  }
  if (gamma == GammaPlacement::once) {
    out.shift(1) += kGamma;
    out.shift(2) += std::conj(kGamma);
  }
  return out;
}

CrossCheckReport cross_check_kraus(const KrausSet& kraus, const Tolerances& tol) {
  CrossCheckReport report;
  report.probe = affine_from_kraus(kraus, tol);

  const RealPart printed =
      to_real_basis(kraus_formula_complex(kraus.operators(), GammaPlacement::per_operator));
  const RealPart once =
      to_real_basis(kraus_formula_complex(kraus.operators(), GammaPlacement::once));
  report.formula = printed.map;
  report.formula_gamma_once = once.map;
  report.imaginary_residue = std::max(printed.imaginary_residue, once.imaginary_residue);

  const auto distance = [](const AffineProbabilityMap& a, const AffineProbabilityMap& b) {
    return std::max(max_abs(a.matrix - b.matrix), max_abs(a.shift - b.shift));
  };
  report.residual = distance(report.probe, report.formula);
  report.residual_gamma_once = distance(report.probe, report.formula_gamma_once);
  report.agrees = report.residual <= tol.cross_check;
  return report;
}

double unitarity_residual(const Matrix2c& u) {
  return max_abs(u * u.adjoint() - Matrix2c::Identity());
}

void require_unitary(const Matrix2c& u, const Tolerances& tol) {
  if (!u.allFinite()) throw ValidationError("matrix has non-finite entries");
  const double residual = unitarity_residual(u);
  if (residual > tol.unitary) {
    throw ValidationError(
        fmt::format("matrix is not unitary: max|u u^dag - I| = {:.3g}", residual));
  }
}

AffineProbabilityMap affine_from_unitary(const Matrix2c& u, const Tolerances& tol) {
  require_unitary(u, tol);
  // A unitary's completeness residual equals its unitarity residual.
  return affine_from_kraus(KrausSet({u}), tol);
}

HomogeneousMap4 homogeneous4(const AffineProbabilityMap& map) {
  HomogeneousMap4 out;
  out.matrix.setZero();
  out.matrix.topLeftCorner<3, 3>() = map.matrix;
  out.matrix.topRightCorner<3, 1>() = map.shift;
  out.matrix(3, 3) = 1.0;
  return out;
}

Matrix2c propagator(const Hamiltonian2& hamiltonian, double t, const Tolerances& tol) {
  hamiltonian.validate(tol);
  const Matrix2c& m = hamiltonian.entries;
  const Complex h11 = m(0, 0), h12 = m(0, 1), h21 = m(1, 0), h22 = m(1, 1);

  const Complex phase = std::exp(-kI * t * 0.5 * (h11 + h22));
  const Complex a = 0.5 * (h11 - h22);
  const Complex b = 0.5 * (h12 + h21);
  const Complex c = 0.5 * (kI * h12 - kI * h21);
  const Complex h = std::sqrt(a * a + b * b + c * c);
  if (std::abs(h) <= std::numeric_limits<double>::min()) {
    return phase * Matrix2c::Identity();
  }

  const Complex n1 = b / h;
  const Complex n2 = kI * (h12 - h21) / (2.0 * h);
  const Complex n3 = a / h;
  const Complex alpha = -kI * t * h;

  Matrix2c axis;
  axis << n3, n1 - kI * n2,
          n1 + kI * n2, -n3;
  return (std::cosh(alpha) * Matrix2c::Identity() + std::sinh(alpha) * axis) * phase;
}

ProbabilityTriple transposition_map(const ProbabilityTriple& p, const Tolerances& tol) {
  require_in_box(p, tol);
  return {p.p1, 1.0 - p.p2, p.p3};
}

AffineProbabilityMap transposition_affine() {
  AffineProbabilityMap map;
  map.matrix = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  map.shift = Eigen::Vector3d(0.0, 1.0, 0.0);
  return map;
}

ProbabilityTriple generic_positive_map(const ProbabilityTriple& p, const KrausSet& kraus,
                                       const KrausSet& kraus_transposed, double mu,
                                       const Tolerances& tol) {
  require_in_box(p, tol);
  const Eigen::Vector3d direct = affine_from_kraus(kraus, tol).apply(p).as_vector();
  const Eigen::Vector3d mirrored =
      affine_from_kraus(kraus_transposed, tol).apply(transposition_map(p, tol)).as_vector();
  const double c = std::cos(mu);
  const double s = std::sin(mu);
  return ProbabilityTriple::from_vector(c * c * direct + s * s * mirrored);
}

Matrix2c unitary_from_euler(const EulerUnitary& e) {
  const double c = std::cos(0.5 * e.theta);
  const double s = std::sin(0.5 * e.theta);
  const double sum = 0.5 * (e.phi + e.psi);
  const double diff = 0.5 * (e.phi - e.psi);
  Matrix2c u;
  u << c * std::exp(kI * sum), s * std::exp(kI * diff),
       -s * std::exp(-kI * diff), c * std::exp(-kI * sum);
  return u;
}

std::vector<TrajectoryPoint> evolve_trajectory(const Hamiltonian2& h,
                                               const ProbabilityTriple& p0,
                                               std::span<const double> times,
                                               const Tolerances& tol) {
  h.validate(tol);
  require_in_box(p0, tol);
  if (!p0.is_quantum_admissible(tol.ball)) {
    throw ValidationError("initial state is not quantum-admissible");
  }
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!std::isfinite(t)) throw ValidationError("trajectory time is not finite");
    TrajectoryPoint point;
    point.t = t;
    point.p = affine_from_unitary(propagator(h, t, tol), tol).apply(p0);
    point.square_area_sum = malevich_area_sum(point.p, tol);
    point.triangle_area = triangle_area(point.p, tol);
    out.push_back(point);
  }
  return out;
}

}  // namespace malevich
