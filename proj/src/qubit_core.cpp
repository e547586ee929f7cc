#include "malevich/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "malevich/errors.hpp"

namespace malevich {

namespace {

constexpr Complex kI{0.0, 1.0};

double entropy_term(double lambda) {
  return lambda > 0.0 ? -lambda * std::log(lambda) : 0.0;
}

}  // namespace

double ProbabilityTriple::operator[](int k) const {
  switch (k) {
    case 0: return p1;
    case 1: return p2;
    case 2: return p3;
  }
  throw std::out_of_range("probability index must be 0, 1 or 2");
}

double& ProbabilityTriple::operator[](int k) {
  switch (k) {
    case 0: return p1;
    case 1: return p2;
    case 2: return p3;
  }
  throw std::out_of_range("probability index must be 0, 1 or 2");
}

bool ProbabilityTriple::in_box(double eps) const {
  for (double v : {p1, p2, p3}) {
    if (!std::isfinite(v) || v < -eps || v > 1.0 + eps) return false;
  }
  return true;
}

bool ProbabilityTriple::is_quantum_admissible(double eps) const {
  return in_box(eps) && uncertainty_functional(*this) <= 0.25 + eps;
}

Eigen::Vector3d Direction::unit_vector() const {
  return {std::sin(beta) * std::cos(alpha), std::sin(beta) * std::sin(alpha),
          std::cos(beta)};
}

double DensityMatrix::hermiticity_residual() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_residual() const {
  return std::abs(m_.trace() - 1.0);
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
  const Matrix2c h = 0.5 * (m_ + m_.adjoint());
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(h(1, 0)));
  return {mean - radius, mean + radius};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

void DensityMatrix::validate(const Tolerances& tol) const {
  if (!m_.allFinite()) throw ValidationError("density matrix has non-finite entries");
  if (!is_hermitian(tol.hermitian)) {
    throw ValidationError(fmt::format(
        "density matrix is not Hermitian (residual {:.3g})", hermiticity_residual()));
  }
  if (!has_unit_trace(tol.trace)) {
    throw ValidationError(fmt::format(
        "density matrix trace differs from 1 by {:.3g}", trace_residual()));
  }
  if (!is_positive(tol.psd)) {
    throw ValidationError(fmt::format(
        "density matrix has negative eigenvalue {:.6g}", eigenvalues()[0]));
  }
}

namespace pauli {
Matrix2c identity() { return Matrix2c::Identity(); }
Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2c y() {
  Matrix2c m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

void require_in_box(const ProbabilityTriple& p, const Tolerances& tol) {
  if (!p.in_box(tol.box)) {
    throw ValidationError(fmt::format(
        "probabilities ({}, {}, {}) lie outside [0,1]^3", p.p1, p.p2, p.p3));
  }
}

DensityMatrix rho_from_probabilities(const ProbabilityTriple& p,
                                     const Tolerances& tol) {
  require_in_box(p, tol);
  const Complex off = Complex{p.p1 - 0.5, p.p2 - 0.5};
  Matrix2c m;
  m << p.p3, std::conj(off),
       off, 1.0 - p.p3;
  return DensityMatrix(m);
}

ProbabilityTriple probabilities_from_rho(const DensityMatrix& rho,
                                         const Tolerances& tol) {
  rho.validate(tol);
  const Matrix2c& m = rho.matrix();
  const auto expect = [&m](const Matrix2c& sigma) {
    return 0.5 * ((m * sigma).trace().real() + 1.0);
  };
  return {expect(pauli::x()), expect(pauli::y()), expect(pauli::z())};
}

BlochVector bloch_from_probabilities(const ProbabilityTriple& p,
                                     const Tolerances& tol) {
  require_in_box(p, tol);
  return {2.0 * p.p1 - 1.0, 2.0 * p.p2 - 1.0, 2.0 * p.p3 - 1.0};
}

ProbabilityTriple probabilities_from_bloch(const BlochVector& r) {
  return {0.5 * (r.x + 1.0), 0.5 * (r.y + 1.0), 0.5 * (r.z + 1.0)};
}

double uncertainty_functional(const ProbabilityTriple& p) {
  const double a = p.p1 - 0.5;
  const double b = p.p2 - 0.5;
  const double c = p.p3 - 0.5;
  return a * a + b * b + c * c;
}

SpectralData spectral_data(const ProbabilityTriple& p, const Tolerances& tol) {
  require_in_box(p, tol);
  const double f = uncertainty_functional(p);
  if (f > 0.25 + tol.ball) {
    throw ValidationError(fmt::format(
        "probabilities violate the qubit bound: sum (p_k - 1/2)^2 = {} > 1/4", f));
  }
  const double r = std::sqrt(std::min(f, 0.25));
  SpectralData out;
  out.lambda1 = 0.5 + r;
  out.lambda2 = 0.5 - r;
  out.entropy = entropy_term(out.lambda1) + entropy_term(out.lambda2);
  return out;
}

std::pair<double, double> tomogram(const ProbabilityTriple& p,
                                   const Direction& n, const Tolerances& tol) {
  if (!p.is_quantum_admissible(tol.ball)) {
    throw ValidationError("tomogram requires a quantum-admissible triple");
  }
  const double projection = n.unit_vector().dot(bloch_from_probabilities(p, tol).as_vector());
  const double w_plus = std::clamp(0.5 * (1.0 + projection), 0.0, 1.0);
  return {w_plus, 1.0 - w_plus};
}

}  // namespace malevich
