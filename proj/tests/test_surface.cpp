#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conedet/errors.hpp"
#include "conedet/surface.hpp"

using namespace conedet;

namespace {
constexpr double kPi = std::numbers::pi;
std::string fixture(const std::string& name) {
  return std::string(CONEDET_FIXTURE_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("unit square torus: genus 1, no cones") {
  PolyhedralSurface s = load_surface_file(fixture("torus_unit.json"));
  CHECK(s.genus() == 1);
  CHECK(s.num_vertex_classes() == 1);
  CHECK(s.area() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.cone_points().empty());
  CHECK(s.class_angle(0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-10);
}

TEST_CASE("cube: genus 0, eight 3pi/2 cones, sum of orders -2") {
  PolyhedralSurface s = load_surface_file(fixture("cube.json"));
  CHECK(s.genus() == 0);
  CHECK(s.area() == doctest::Approx(6.0));
  const auto cones = s.cone_points();
  REQUIRE(cones.size() == 8);
  double bsum = 0.0;
  for (const auto& c : cones) {
    CHECK(c.angle == doctest::Approx(1.5 * kPi).epsilon(1e-12));
    CHECK(c.order == doctest::Approx(-0.25).epsilon(1e-12));
    bsum += c.order;
  }
  CHECK(bsum == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-10);
}

TEST_CASE("pillowcase: four pi cones") {
  PolyhedralSurface s = load_surface_file(fixture("pillowcase.json"));
  CHECK(s.genus() == 0);
  CHECK(s.area() == doctest::Approx(2.0));
  const auto cones = s.cone_points();
  REQUIRE(cones.size() == 4);
  for (const auto& c : cones) {
    CHECK(c.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(c.order == doctest::Approx(-0.5).epsilon(1e-12));
  }
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-10);
}

TEST_CASE("L-shaped surface: genus 2, one 6pi cone") {
  PolyhedralSurface s = load_surface_file(fixture("lshape.json"));
  CHECK(s.genus() == 2);
  CHECK(s.area() == doctest::Approx(3.0));
  const auto cones = s.cone_points();
  REQUIRE(cones.size() == 1);
  CHECK(cones[0].angle == doctest::Approx(6.0 * kPi).epsilon(1e-12));
  CHECK(cones[0].order == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-10);
}

TEST_CASE("JSON round trip preserves the surface") {
  PolyhedralSurface s = load_surface_file(fixture("cube.json"));
  PolyhedralSurface s2 = load_surface(surface_to_json(s));
  CHECK(s2.genus() == s.genus());
  CHECK(s2.area() == doctest::Approx(s.area()));
  CHECK(s2.num_vertex_classes() == s.num_vertex_classes());
  CHECK(s2.cone_points().size() == s.cone_points().size());
}

TEST_CASE("loader error taxonomy") {
  SurfaceDocument doc;
  doc.triangles.push_back({{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1)}});
  doc.triangles.push_back({{Vec2(0, 0), Vec2(1, 1), Vec2(0, 1)}});
  doc.gluings = {{{0, 2}, {1, 0}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}};

  SUBCASE("valid baseline") {
    CHECK_NOTHROW(PolyhedralSurface::from_document(doc));
  }
  SUBCASE("length mismatch") {
    doc.triangles[1].p[2] = Vec2(0, 1.001);
    try {
      PolyhedralSurface::from_document(doc);
      FAIL("expected LengthMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthMismatch);
    }
  }
  SUBCASE("dangling edge") {
    doc.gluings.pop_back();
    try {
      PolyhedralSurface::from_document(doc);
      FAIL("expected DanglingEdge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DanglingEdge);
    }
  }
  SUBCASE("clockwise chart is an orientation error") {
    std::swap(doc.triangles[0].p[1], doc.triangles[0].p[2]);
    try {
      PolyhedralSurface::from_document(doc);
      FAIL("expected NonOrientable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonOrientable);
    }
  }
  SUBCASE("degenerate triangle") {
    doc.triangles[0].p[2] = Vec2(2, 0);
    try {
      PolyhedralSurface::from_document(doc);
      FAIL("expected DegenerateTriangle");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateTriangle);
    }
  }
  SUBCASE("self-glued edge") {
    doc.gluings[0] = {{0, 2}, {0, 2}};
    try {
      PolyhedralSurface::from_document(doc);
      FAIL("expected NonOrientable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonOrientable);
    }
  }
}

TEST_CASE("build_flat_torus") {
  PolyhedralSurface t1 = build_flat_torus(cplx(0, 1), 1);
  CHECK(t1.genus() == 1);
  CHECK(t1.area() == doctest::Approx(1.0).epsilon(1e-14));
  PolyhedralSurface t2 = build_flat_torus(cplx(0, 2), 3);
  CHECK(t2.area() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(t2.num_triangles() == 18);
  CHECK_THROWS_AS(build_flat_torus(cplx(0.5, -1.0), 2), Error);
  CHECK_THROWS_AS(build_flat_torus(cplx(0.5, 0.0), 2), Error);
}

TEST_CASE("translation surface: torus without cuts") {
  TranslationSurfaceSpec spec;
  spec.parallelograms = {{cplx(1, 0), cplx(0.3, 1.2)}};
  PolyhedralSurface s = build_translation_surface(spec);
  CHECK(s.genus() == 1);
  CHECK(s.area() == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(s.cone_points().empty());
}

TEST_CASE("translation surface: genus 2 from one shared cut") {
  TranslationSurfaceSpec spec = load_translation_spec_file(fixture("genus2_cut.json"));
  PolyhedralSurface s = build_translation_surface(spec);
  CHECK(s.genus() == 2);
  CHECK(s.area() == doctest::Approx(spec.area()).epsilon(1e-10));
  const auto cones = s.cone_points();
  REQUIRE(cones.size() == 2);
  double bsum = 0.0;
  for (const auto& c : cones) {
    // stratum orders are integers: one 4 pi cone at each cut endpoint
    CHECK(c.angle == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    CHECK(c.order == doctest::Approx(1.0).epsilon(1e-9));
    bsum += c.order;
  }
  CHECK(bsum == doctest::Approx(2.0).epsilon(1e-9));  // 2g - 2
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-10);
}

TEST_CASE("translation surface: period area formula") {
  TranslationSurfaceSpec spec;
  spec.parallelograms = {{cplx(1, 0), cplx(0, 1)}, {cplx(1, 0), cplx(0, 2)}};
  spec.cuts = {{cplx(0.3, 0.3), cplx(0.6, 0.6), 0, 1}};
  CHECK(spec.area() == doctest::Approx(3.0).epsilon(1e-14));
  PolyhedralSurface s = build_translation_surface(spec);
  CHECK(s.area() == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("translation surface cut validation") {
  TranslationSurfaceSpec spec;
  spec.parallelograms = {{cplx(1, 0), cplx(0, 1)}, {cplx(1, 0), cplx(0, 1)}};
  SUBCASE("cut endpoint outside") {
    spec.cuts = {{cplx(0.3, 0.3), cplx(1.4, 0.6), 0, 1}};
    try {
      build_translation_surface(spec);
      FAIL("expected CutOutsideParallelogram");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CutOutsideParallelogram);
    }
  }
  SUBCASE("crossing cuts") {
    spec.cuts = {{cplx(0.2, 0.2), cplx(0.8, 0.8), 0, 1},
                 {cplx(0.2, 0.8), cplx(0.8, 0.2), 0, 1}};
    try {
      build_translation_surface(spec);
      FAIL("expected CutOverlap");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CutOverlap);
    }
  }
}

TEST_CASE("marked torus insertion keeps topology and area") {
  MarkedTorus mt =
      build_flat_torus_marked(cplx(0.1, 1.2), 4, {cplx(0.23, 0.31), cplx(0.61, 0.72)});
  CHECK(mt.surface.genus() == 1);
  CHECK(mt.surface.area() == doctest::Approx(1.2).epsilon(1e-12));
  REQUIRE(mt.marked_classes.size() == 2);
  // the marked classes are flat interior vertices of the chart triangulation
  for (int cls : mt.marked_classes)
    CHECK(mt.surface.class_angle(cls) == doctest::Approx(2.0 * kPi).epsilon(1e-9));
}
