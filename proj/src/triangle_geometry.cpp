#include "malevich/triangle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "malevich/errors.hpp"

namespace malevich {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

// Point of the qubit ball at radius r (in p-space) and polar angles.
ProbabilityTriple ball_point(double r, double theta, double phi) {
  return {0.5 + r * std::sin(theta) * std::cos(phi),
          0.5 + r * std::sin(theta) * std::sin(phi),
          0.5 + r * std::cos(theta)};
}

struct SphericalCoord {
  double r;
  double theta;
  double phi;
};

// Compass search on a scalar objective over (r, theta, phi), r in [0, 1/2].
SphericalCoord compass_refine(const std::function<double(const SphericalCoord&)>& f,
                              SphericalCoord x, double step, double tol) {
  double best = f(x);
  while (step > tol) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis) {
      for (double sign : {1.0, -1.0}) {
        SphericalCoord trial = x;
        double* coord = axis == 0 ? &trial.r : axis == 1 ? &trial.theta : &trial.phi;
        *coord += sign * step;
        trial.r = std::clamp(trial.r, 0.0, 0.5);
        const double value = f(trial);
        if (value < best) {
          best = value;
          x = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

}  // namespace

const std::array<Point2, 3>& outer_triangle() {
  static const std::array<Point2, 3> vertices{
      Point2{0.0, 0.0}, Point2{kSqrt2, 0.0},
      Point2{kSqrt2 / 2.0, std::sqrt(6.0) / 2.0}};
  return vertices;
}

TriangleFigure place_vertices(const ProbabilityTriple& p, const Tolerances& tol) {
  require_in_box(p, tol);
  const auto& outer = outer_triangle();
  TriangleFigure fig;
  for (int k = 0; k < 3; ++k) {
    const Point2& from = outer[k];
    const Point2& to = outer[(k + 1) % 3];
    fig.vertices[k] = from + p[k] * (to - from);
    fig.distances[k] = p[k] * kSqrt2;
  }
  for (int k = 0; k < 3; ++k) {
    fig.side_lengths[k] = (fig.vertices[(k + 1) % 3] - fig.vertices[k]).norm();
  }
  return fig;
}

std::array<double, 3> side_lengths_closed_form(const ProbabilityTriple& p,
                                               const Tolerances& tol) {
  require_in_box(p, tol);
  std::array<double, 3> y{};
  for (int k = 0; k < 3; ++k) {
    const double a = p[k];
    const double b = p[(k + 1) % 3];
    const double radicand = 2.0 + 2.0 * a * a - 4.0 * a - 2.0 * b + 2.0 * b * b + 2.0 * a * b;
    y[k] = std::sqrt(std::max(radicand, 0.0));
  }
  return y;
}

double malevich_area_sum(const ProbabilityTriple& p, const Tolerances& tol) {
  require_in_box(p, tol);
  const double p1 = p.p1, p2 = p.p2, p3 = p.p3;
  return 2.0 * (3.0 * (1.0 - p1 - p2 - p3) + 2.0 * p1 * p1 + 2.0 * p2 * p2 +
                2.0 * p3 * p3 + p1 * p2 + p2 * p3 + p3 * p1);
}

double heron_area(std::array<double, 3> sides) {
  std::sort(sides.begin(), sides.end(), std::greater<>());
  const double a = sides[0], b = sides[1], c = sides[2];
  // a >= b >= c; parentheses matter.
  const double product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(product, 0.0));
}

double triangle_area(const ProbabilityTriple& p, const Tolerances& tol) {
  return heron_area(side_lengths_closed_form(p, tol));
}

AreaReport area_report(const ProbabilityTriple& p, const Tolerances& tol) {
  AreaReport report;
  report.square_area_sum = malevich_area_sum(p, tol);
  report.triangle_area = triangle_area(p, tol);
  report.classification = p.is_quantum_admissible(tol.ball)
                              ? StateClass::quantum_admissible
                              : StateClass::classical_only;
  return report;
}

AreaBounds quantum_area_bounds(const AreaBoundsOptions& options) {
  const auto area_at = [](const SphericalCoord& c) {
    return malevich_area_sum(ball_point(c.r, c.theta, c.phi));
  };

  AreaBounds bounds;
  SphericalCoord lo{0.0, 0.0, 0.0};
  SphericalCoord hi{0.0, 0.0, 0.0};
  bounds.s_min = area_at(lo);
  bounds.s_max = bounds.s_min;
  bounds.samples = 1;

  const std::size_t n = std::max<std::size_t>(options.directions, 1);
  const std::size_t shells = std::max<std::size_t>(options.radial_steps, 1);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const SphericalCoord dir{0.0, std::acos(z), golden * static_cast<double>(i)};
    for (std::size_t s = 1; s <= shells; ++s) {
      SphericalCoord c = dir;
      c.r = 0.5 * static_cast<double>(s) / static_cast<double>(shells);
      const double value = area_at(c);
      ++bounds.samples;
      if (value < bounds.s_min) {
        bounds.s_min = value;
        lo = c;
      }
      if (value > bounds.s_max) {
        bounds.s_max = value;
        hi = c;
      }
    }
  }

  lo = compass_refine(area_at, lo, options.refine_step, options.refine_tolerance);
  hi = compass_refine([&](const SphericalCoord& c) { return -area_at(c); }, hi,
                      options.refine_step, options.refine_tolerance);
  bounds.s_min = std::min(bounds.s_min, area_at(lo));
  bounds.s_max = std::max(bounds.s_max, area_at(hi));
  bounds.argmin = ball_point(lo.r, lo.theta, lo.phi);
  bounds.argmax = ball_point(hi.r, hi.theta, hi.phi);
  return bounds;
}

}  // namespace malevich
