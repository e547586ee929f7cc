#include "malevich/render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <vector>

#include <fmt/format.h>

#include "malevich/errors.hpp"

namespace malevich {

namespace {

constexpr double kMarginFraction = 0.08;
constexpr std::array<const char*, 3> kVectorStroke{"#000000", "#c0392b", "#2c7fb8"};

struct Bounds {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void add(const Point2& q) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
};

Viewport fit(const Bounds& b, int width, int height) {
  const double margin = kMarginFraction * std::min(width, height);
  const double span_x = std::max(b.hi.x() - b.lo.x(), 1e-9);
  const double span_y = std::max(b.hi.y() - b.lo.y(), 1e-9);
  Viewport v;
  v.height_px = height;
  v.scale = std::min((width - 2.0 * margin) / span_x, (height - 2.0 * margin) / span_y);
  v.offset_x = 0.5 * width - v.scale * 0.5 * (b.lo.x() + b.hi.x());
  v.offset_y = 0.5 * height - v.scale * 0.5 * (b.lo.y() + b.hi.y());
  return v;
}

Bounds world_bounds(const ProbabilityTriple& p, FigureKind kind) {
  Bounds b;
  if (kind == FigureKind::simplex) {
    b.add({-0.1, -0.1});
    b.add({1.15, 1.15});
    return b;
  }
  for (const Point2& v : outer_triangle()) b.add(v);
  if (kind == FigureKind::triada) {
    for (const Square& sq : malevich_squares(place_vertices(p))) {
      for (const Point2& q : sq) b.add(q);
    }
  }
  // room for vertex labels
  b.lo -= Point2{0.12, 0.12};
  b.hi += Point2{0.12, 0.12};
  return b;
}

std::string fmt_point(const Point2& q) { return fmt::format("{:.3f},{:.3f}", q.x(), q.y()); }

template <typename Range>
std::string points_attr(const Viewport& v, const Range& pts) {
  std::string out;
  for (const Point2& q : pts) {
    if (!out.empty()) out += ' ';
    out += fmt_point(v.to_pixel(q));
  }
  return out;
}

void text(std::string& out, const Point2& px, const std::string& label, double size) {
  fmt::format_to(std::back_inserter(out),
                 "  <text x=\"{:.3f}\" y=\"{:.3f}\" font-family=\"sans-serif\" "
                 "font-size=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                 px.x(), px.y(), size, label);
}

void vertex_markers(std::string& out, const Viewport& v, const TriangleFigure& fig,
                    double font) {
  for (int k = 0; k < 3; ++k) {
    const Point2 px = v.to_pixel(fig.vertices[k]);
    fmt::format_to(std::back_inserter(out),
                   "  <circle id=\"A{}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.1f}\" "
                   "fill=\"#1f1f1f\"/>\n",
                   k + 1, px.x(), px.y(), std::max(2.0, 0.3 * font));
  }
}

void outer_labels(std::string& out, const Viewport& v, double font) {
  const auto& outer = outer_triangle();
  const Point2 centroid = (outer[0] + outer[1] + outer[2]) / 3.0;
  for (int k = 0; k < 3; ++k) {
    const Point2 dir = (outer[k] - centroid).normalized();
    text(out, v.to_pixel(outer[k] + 0.08 * dir), std::to_string(k + 1), font);
  }
}

void draw_simplex(std::string& out, const Viewport& v, const ProbabilityTriple& p,
                  double font) {
  fmt::format_to(std::back_inserter(out),
                 "  <polyline points=\"{}\" fill=\"none\" stroke=\"#000000\" "
                 "stroke-width=\"1.5\"/>\n",
                 points_attr(v, std::array<Point2, 3>{Point2{0, 1.1}, Point2{0, 0},
                                                      Point2{1.1, 0}}));
  fmt::format_to(std::back_inserter(out),
                 "  <line x1=\"{0:.3f}\" y1=\"{1:.3f}\" x2=\"{2:.3f}\" y2=\"{3:.3f}\" "
                 "stroke=\"#7f7f7f\" stroke-width=\"1.5\"/>\n",
                 v.to_pixel({1, 0}).x(), v.to_pixel({1, 0}).y(), v.to_pixel({0, 1}).x(),
                 v.to_pixel({0, 1}).y());
  text(out, v.to_pixel({1.1, -0.06}), "p", font);
  text(out, v.to_pixel({-0.06, 1.1}), "p'", font);
  const Point2 origin = v.to_pixel({0, 0});
  for (int k = 0; k < 3; ++k) {
    const Point2 end = v.to_pixel({p[k], 1.0 - p[k]});
    fmt::format_to(std::back_inserter(out),
                   "  <line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" "
                   "stroke=\"{}\" stroke-width=\"2\"/>\n",
                   origin.x(), origin.y(), end.x(), end.y(), kVectorStroke[k]);
    fmt::format_to(std::back_inserter(out),
                   "  <circle id=\"A{}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.1f}\" fill=\"{}\"/>\n",
                   k + 1, end.x(), end.y(), std::max(2.0, 0.3 * font), kVectorStroke[k]);
    text(out, v.to_pixel(Point2{p[k], 1.0 - p[k]} + Point2{0.05, 0.05}),
         fmt::format("A{}", k + 1), font);
  }
}

void draw_outer(std::string& out, const Viewport& v) {
  fmt::format_to(std::back_inserter(out),
                 "  <polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" "
                 "stroke-width=\"1.5\"/>\n",
                 points_attr(v, outer_triangle()));
}

void draw_inner(std::string& out, const Viewport& v, const TriangleFigure& fig) {
  fmt::format_to(std::back_inserter(out),
                 "  <polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" "
                 "stroke-width=\"1.2\" stroke-dasharray=\"6 4\"/>\n",
                 points_attr(v, fig.vertices));
}

}  // namespace

FigureKind parse_figure_kind(const std::string& name) {
  if (name == "simplex") return FigureKind::simplex;
  if (name == "triangle") return FigureKind::triangle;
  if (name == "triada") return FigureKind::triada;
  throw ValidationError("unknown figure kind '" + name + "'");
}

std::string to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::simplex: return "simplex";
    case FigureKind::triangle: return "triangle";
    case FigureKind::triada: return "triada";
  }
  return "unknown";
}

void FigureSpec::validate() const {
  if (width_px < kMinSize || height_px < kMinSize) {
    throw ValidationError(fmt::format("figure size {}x{} below the {} px minimum", width_px,
                                      height_px, kMinSize));
  }
}

Point2 Viewport::to_pixel(const Point2& world) const {
  return {offset_x + scale * world.x(), height_px - (offset_y + scale * world.y())};
}

Point2 Viewport::to_world(const Point2& pixel) const {
  return {(pixel.x() - offset_x) / scale, (height_px - pixel.y() - offset_y) / scale};
}

std::array<Square, 3> malevich_squares(const TriangleFigure& figure) {
  const auto& a = figure.vertices;
  const Point2 centroid = (a[0] + a[1] + a[2]) / 3.0;
  const auto& outer = outer_triangle();
  const Point2 outer_centroid = (outer[0] + outer[1] + outer[2]) / 3.0;

  std::array<Square, 3> squares;
  for (int k = 0; k < 3; ++k) {
    const Point2& from = a[k];
    const Point2& to = a[(k + 1) % 3];
    const Point2 edge = to - from;
    const Point2 mid = 0.5 * (from + to);
    Point2 normal{edge.y(), -edge.x()};  // |normal| == |edge|
    double side = normal.dot(mid - centroid);
    if (std::abs(side) <= 1e-12 * std::max(1.0, normal.norm())) {
      side = normal.dot(mid - outer_centroid);  // collinear A_k
    }
    if (side < 0.0) normal = -normal;
    squares[k] = {from, to, to + normal, from + normal};
  }
  return squares;
}

Viewport figure_viewport(const ProbabilityTriple& p, const FigureSpec& spec) {
  spec.validate();
  require_in_box(p);
  return fit(world_bounds(p, spec.kind), spec.width_px, spec.height_px);
}

std::string render(const ProbabilityTriple& p, const FigureSpec& spec) {
  const Viewport v = figure_viewport(p, spec);
  const double font = std::max(8.0, 0.035 * std::min(spec.width_px, spec.height_px));

  std::string out;
  fmt::format_to(std::back_inserter(out),
                 "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                 "width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
                 "  <title>{2} p=({3:.6f}, {4:.6f}, {5:.6f})</title>\n"
                 "  <rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"#ffffff\"/>\n",
                 spec.width_px, spec.height_px, to_string(spec.kind), p.p1, p.p2, p.p3);

  if (spec.kind == FigureKind::simplex) {
    draw_simplex(out, v, p, font);
  } else {
    const TriangleFigure fig = place_vertices(p);
    draw_outer(out, v);
    if (spec.kind == FigureKind::triada) {
      const auto squares = malevich_squares(fig);
      for (int k = 0; k < 3; ++k) {
        fmt::format_to(std::back_inserter(out),
                       "  <polygon id=\"square{}\" points=\"{}\" fill=\"{}\" "
                       "stroke=\"#000000\" stroke-width=\"1\"/>\n",
                       k + 1, points_attr(v, squares[k]), spec.colors[k]);
      }
    }
    draw_inner(out, v, fig);
    vertex_markers(out, v, fig, font);
    outer_labels(out, v, font);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace malevich
