#pragma once

// Deterministic SVG 1.1 figures of a probability triple:
//   simplex  - the three coin vectors ending on the simplex line p + p' = 1
//   triangle - A1 A2 A3 inscribed in the outer equilateral triangle
//   triada   - the three squares erected outward on the sides of A1 A2 A3

#include <array>
#include <string>

#include "malevich/triangle_geometry.hpp"

namespace malevich {

enum class FigureKind { simplex, triangle, triada };

FigureKind parse_figure_kind(const std::string& name);
std::string to_string(FigureKind kind);

struct FigureSpec {
  FigureKind kind = FigureKind::triada;
  int width_px = 480;
  int height_px = 480;
  // Square fills for sides 1, 2, 3.
  std::array<std::string, 3> colors{"black", "red", "white"};

  static constexpr int kMinSize = 64;
  void validate() const;
};

// Uniform world -> pixel transform with the y axis pointing up in world space.
struct Viewport {
  double scale = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  int height_px = 0;

  Point2 to_pixel(const Point2& world) const;
  Point2 to_world(const Point2& pixel) const;
};

using Square = std::array<Point2, 4>;

// Squares on sides A_k A_{k+1}, erected away from the triangle's centroid.
std::array<Square, 3> malevich_squares(const TriangleFigure& figure);

// Viewport used by render() for this input.
Viewport figure_viewport(const ProbabilityTriple& p, const FigureSpec& spec);

std::string render(const ProbabilityTriple& p, const FigureSpec& spec = {});

}  // namespace malevich
