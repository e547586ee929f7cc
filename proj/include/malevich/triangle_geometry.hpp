#pragma once

// Triangle picture of a probability triple.
//
// The outer triangle is equilateral with side sqrt(2):
//   V1 = (0, 0), V2 = (sqrt 2, 0), V3 = (sqrt 2 / 2, sqrt 6 / 2).
// Side k runs from V_k to V_{k+1} (cyclic) and is the simplex line of the k-th
// coin. A_k sits on side k at distance d_k = p_k sqrt(2) from V_k. The inner
// triangle A1 A2 A3 has sides y_k = |A_k A_{k+1}|, and the three squares on
// those sides have total area S = y1^2 + y2^2 + y3^2.

#include <array>
#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "malevich/qubit_core.hpp"

namespace malevich {

using Point2 = Eigen::Vector2d;

struct TriangleFigure {
  std::array<Point2, 3> vertices;      // A1, A2, A3
  std::array<double, 3> side_lengths;  // y_k = |A_k A_{k+1}|
  std::array<double, 3> distances;     // d_k = p_k sqrt 2
};

enum class StateClass { classical_only, quantum_admissible };

struct AreaReport {
  double square_area_sum = 0.0;  // S
  double triangle_area = 0.0;    // S_tr
  StateClass classification = StateClass::classical_only;
};

const std::array<Point2, 3>& outer_triangle();

TriangleFigure place_vertices(const ProbabilityTriple& p,
                              const Tolerances& tol = kDefaultTolerances);

// y_k = (2 + 2p_k^2 - 4p_k - 2p_{k+1} + 2p_{k+1}^2 + 2p_k p_{k+1})^{1/2}, p_4 = p_1.
std::array<double, 3> side_lengths_closed_form(
    const ProbabilityTriple& p, const Tolerances& tol = kDefaultTolerances);

// S = 2[3(1 - p1 - p2 - p3) + 2(p1^2 + p2^2 + p3^2) + p1p2 + p2p3 + p3p1].
double malevich_area_sum(const ProbabilityTriple& p,
                         const Tolerances& tol = kDefaultTolerances);

// Heron's formula on the closed-form side lengths, evaluated in the
// cancellation-free ordering; degenerate triangles give 0.
double triangle_area(const ProbabilityTriple& p,
                     const Tolerances& tol = kDefaultTolerances);
double heron_area(std::array<double, 3> sides);

AreaReport area_report(const ProbabilityTriple& p,
                       const Tolerances& tol = kDefaultTolerances);

struct AreaBoundsOptions {
  std::size_t directions = 4096;  // Fibonacci lattice on the unit sphere
  std::size_t radial_steps = 32;  // shells at r = (i / radial_steps) / 2, i = 0..radial_steps
  double refine_step = 1e-2;      // initial pattern-search step in (r, theta, phi)
  double refine_tolerance = 1e-13;
};

struct AreaBounds {
  double s_min = 0.0;
  double s_max = 0.0;
  ProbabilityTriple argmin;
  ProbabilityTriple argmax;
  std::size_t samples = 0;
};

// Extrema of S over the qubit ball sum (p_k - 1/2)^2 <= 1/4: dense grid
// followed by compass search from the best grid points.
AreaBounds quantum_area_bounds(const AreaBoundsOptions& options = {});

}  // namespace malevich
