#include "malevich/render_svg.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "malevich/errors.hpp"
#include "malevich/sampling.hpp"

using namespace malevich;

namespace {

Point2 circle_center(const std::string& svg, const std::string& id) {
  const std::regex re("<circle id=\"" + id + "\" cx=\"([-0-9.]+)\" cy=\"([-0-9.]+)\"");
  std::smatch m;
  EXPECT_TRUE(std::regex_search(svg, m, re)) << id;
  return {std::stod(m[1]), std::stod(m[2])};
}

std::vector<Point2> polygon_points(const std::string& svg, const std::string& id) {
  const std::regex re("<polygon id=\"" + id + "\" points=\"([^\"]+)\"");
  std::smatch m;
  EXPECT_TRUE(std::regex_search(svg, m, re)) << id;
  std::vector<Point2> pts;
  std::stringstream ss(m[1].str());
  std::string pair;
  while (ss >> pair) {
    const auto comma = pair.find(',');
    pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  return pts;
}

double polygon_area(const std::vector<Point2>& pts) {
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % pts.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

bool balanced_svg(const std::string& svg) {
  return svg.rfind("<?xml", 0) == 0 && svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") != std::string::npos &&
         svg.size() > 7 && svg.substr(svg.size() - 7) == "</svg>\n";
}

}  // namespace

TEST(FigureSpec, size_limits) {
  FigureSpec spec;
  spec.width_px = 64;
  spec.height_px = 64;
  EXPECT_NO_THROW(spec.validate());
  spec.width_px = 32;
  EXPECT_THROW(spec.validate(), ValidationError);
  EXPECT_THROW(render({0.5, 0.5, 0.5}, spec), ValidationError);
}

TEST(FigureKind, parse) {
  EXPECT_EQ(parse_figure_kind("simplex"), FigureKind::simplex);
  EXPECT_EQ(to_string(parse_figure_kind("triada")), "triada");
  EXPECT_THROW(parse_figure_kind("square"), ValidationError);
}

TEST(Render, well_formed_for_all_kinds) {
  for (FigureKind kind : {FigureKind::simplex, FigureKind::triangle, FigureKind::triada}) {
    FigureSpec spec;
    spec.kind = kind;
    const std::string svg = render({0.3, 0.8, 0.6}, spec);
    EXPECT_TRUE(balanced_svg(svg)) << to_string(kind);
    EXPECT_EQ(svg.find("font-face"), std::string::npos);
    EXPECT_EQ(svg.find("url("), std::string::npos);
  }
}

TEST(Render, deterministic) {
  FigureSpec spec;
  const std::string a = render({0.21, 0.64, 0.33}, spec);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(render({0.21, 0.64, 0.33}, spec), a);
}

TEST(Render, inscribed_triangle_coincides_with_outer_at_origin) {
  FigureSpec spec;
  spec.kind = FigureKind::triangle;
  const ProbabilityTriple p{0, 0, 0};
  const std::string svg = render(p, spec);
  const Viewport v = figure_viewport(p, spec);
  for (int k = 0; k < 3; ++k) {
    const Point2 px = circle_center(svg, "A" + std::to_string(k + 1));
    EXPECT_LE((px - v.to_pixel(outer_triangle()[k])).norm(), 0.5);
  }
}

TEST(Render, vertex_pixels_invert_to_placed_vertices) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const ProbabilityTriple p = random_box_triple(rng);
    for (FigureKind kind : {FigureKind::triangle, FigureKind::triada}) {
      FigureSpec spec;
      spec.kind = kind;
      spec.width_px = 300 + 10 * i;
      const std::string svg = render(p, spec);
      const Viewport v = figure_viewport(p, spec);
      const TriangleFigure fig = place_vertices(p);
      for (int k = 0; k < 3; ++k) {
        const Point2 px = circle_center(svg, "A" + std::to_string(k + 1));
        const Point2 world = v.to_world(px);
        ASSERT_LE((v.to_pixel(world) - v.to_pixel(fig.vertices[k])).norm(), 0.5);
        ASSERT_LE((px - v.to_pixel(fig.vertices[k])).norm(), 0.5);
      }
    }
  }
}

TEST(Render, pure_z_state_places_a3_at_vertex_1) {
  // d_3 = sqrt 2: A3 reaches the far end of side 3, which is outer vertex 1.
  FigureSpec spec;
  spec.kind = FigureKind::triangle;
  const ProbabilityTriple p{0.5, 0.5, 1.0};
  const std::string svg = render(p, spec);
  const Viewport v = figure_viewport(p, spec);
  EXPECT_LE((circle_center(svg, "A3") - v.to_pixel(outer_triangle()[0])).norm(), 0.5);
  const auto& o = outer_triangle();
  EXPECT_LE((circle_center(svg, "A1") - v.to_pixel(0.5 * (o[0] + o[1]))).norm(), 0.5);
}

TEST(Render, triada_square_areas_follow_y_squared) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const ProbabilityTriple p = random_box_triple(rng);
    FigureSpec spec;
    const std::string svg = render(p, spec);
    const Viewport v = figure_viewport(p, spec);
    const auto y = side_lengths_closed_form(p);
    for (int k = 0; k < 3; ++k) {
      const double area = polygon_area(polygon_points(svg, "square" + std::to_string(k + 1)));
      const double expected = y[k] * y[k] * v.scale * v.scale;
      ASSERT_NEAR(area, expected, 0.01 * expected + 2.0);
    }
  }
}

TEST(Render, congruent_squares_for_maximally_mixed) {
  FigureSpec spec;
  const std::string svg = render({0.5, 0.5, 0.5}, spec);
  const double a1 = polygon_area(polygon_points(svg, "square1"));
  EXPECT_NEAR(polygon_area(polygon_points(svg, "square2")), a1, 0.01 * a1);
  EXPECT_NEAR(polygon_area(polygon_points(svg, "square3")), a1, 0.01 * a1);
  EXPECT_NE(svg.find("fill=\"black\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"red\""), std::string::npos);
  EXPECT_NE(svg.find("fill=\"white\""), std::string::npos);
}

TEST(MalevichSquares, erected_away_from_centroid) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const TriangleFigure fig = place_vertices(random_box_triple(rng));
    const Point2 centroid = (fig.vertices[0] + fig.vertices[1] + fig.vertices[2]) / 3.0;
    const auto squares = malevich_squares(fig);
    for (int k = 0; k < 3; ++k) {
      const Square& s = squares[k];
      const Point2 mid = 0.5 * (s[0] + s[1]);
      const Point2 far_mid = 0.5 * (s[2] + s[3]);
      ASSERT_NEAR((s[1] - s[0]).norm(), fig.side_lengths[k], 1e-10);
      ASSERT_NEAR((far_mid - mid).norm(), fig.side_lengths[k], 1e-10);
      ASSERT_GE((far_mid - centroid).norm(), (mid - centroid).norm() - 1e-12);
    }
  }
}

TEST(Render, simplex_vectors_end_on_simplex_line) {
  FigureSpec spec;
  spec.kind = FigureKind::simplex;
  const ProbabilityTriple p{0.2, 0.5, 0.9};
  const std::string svg = render(p, spec);
  const Viewport v = figure_viewport(p, spec);
  for (int k = 0; k < 3; ++k) {
    const Point2 world = v.to_world(circle_center(svg, "A" + std::to_string(k + 1)));
    EXPECT_NEAR(world.x() + world.y(), 1.0, 0.01);
    EXPECT_NEAR(world.x(), p[k], 0.01);
  }
}
