#include "conedet/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

int mod(int a, int m) { return ((a % m) + m) % m; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double TriangleChart::signed_area() const {
  return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

double TriangleChart::edge_length(int e) const {
  return (p[(e + 1) % 3] - p[e]).norm();
}

double TriangleChart::corner_angle(int c) const {
  const Vec2 u = p[(c + 1) % 3] - p[c];
  const Vec2 v = p[(c + 2) % 3] - p[c];
  return std::atan2(std::abs(cross(u, v)), u.dot(v));
}

PolyhedralSurface PolyhedralSurface::from_document(const SurfaceDocument& doc) {
  PolyhedralSurface s;
  s.triangles_ = doc.triangles;
  s.gluings_ = doc.gluings;
  const int nt = static_cast<int>(doc.triangles.size());
  require(nt > 0, ErrorCode::InvalidDocument, "no triangles");

  double scale = 0.0;
  for (const auto& tri : doc.triangles)
    for (const auto& q : tri.p) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  scale = std::max(scale, 1e-30);

  for (int t = 0; t < nt; ++t) {
    const double a = doc.triangles[t].signed_area();
    require(std::abs(a) > 1e-14 * scale * scale, ErrorCode::DegenerateTriangle,
            "triangle " + std::to_string(t) + " has (near) zero area");
    require(a > 0.0, ErrorCode::NonOrientable,
            "triangle " + std::to_string(t) +
                " is clockwise in its chart; gluing orientation requires "
                "counterclockwise charts");
  }

  s.partner_.assign(nt, {EdgeRef{}, EdgeRef{}, EdgeRef{}});
  auto& partner = s.partner_;
  for (std::size_t g = 0; g < doc.gluings.size(); ++g) {
    const auto& [a, b] = doc.gluings[g];
    for (const EdgeRef& e : {a, b})
      require(e.tri >= 0 && e.tri < nt && e.edge >= 0 && e.edge < 3,
              ErrorCode::InvalidDocument,
              "gluing " + std::to_string(g) + " references a missing edge");
    require(!(a == b), ErrorCode::NonOrientable,
            "gluing " + std::to_string(g) + " identifies an edge with itself");
    require(partner[a.tri][a.edge].tri < 0 && partner[b.tri][b.edge].tri < 0,
            ErrorCode::DanglingEdge,
            "gluing " + std::to_string(g) + " re-glues an already glued edge");
    partner[a.tri][a.edge] = b;
    partner[b.tri][b.edge] = a;

    const double la = doc.triangles[a.tri].edge_length(a.edge);
    const double lb = doc.triangles[b.tri].edge_length(b.edge);
    require(std::abs(la - lb) <= 1e-12 * std::max(la, lb),
            ErrorCode::LengthMismatch,
            "glued edges of gluing " + std::to_string(g) +
                " differ in length: " + std::to_string(la) + " vs " +
                std::to_string(lb));
  }
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e)
      require(partner[t][e].tri >= 0, ErrorCode::DanglingEdge,
              "edge (" + std::to_string(t) + "," + std::to_string(e) +
                  ") has no gluing partner");

  // Corner identification: edge a reversed onto edge b means
  // start(a) ~ end(b) and end(a) ~ start(b).
  UnionFind uf(3 * nt);
  auto corner_id = [](int t, int c) { return 3 * t + c; };
  for (const auto& [a, b] : doc.gluings) {
    uf.unite(corner_id(a.tri, a.edge), corner_id(b.tri, mod(b.edge + 1, 3)));
    uf.unite(corner_id(a.tri, mod(a.edge + 1, 3)), corner_id(b.tri, b.edge));
  }

  std::vector<int> root_to_class(3 * nt, -1);
  s.corner_class_.assign(nt, {-1, -1, -1});
  int num_classes = 0;
  for (int t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c) {
      const int r = uf.find(corner_id(t, c));
      if (root_to_class[r] < 0) root_to_class[r] = num_classes++;
      s.corner_class_[t][c] = root_to_class[r];
    }

  s.class_angle_.assign(num_classes, 0.0);
  for (int t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c)
      s.class_angle_[s.corner_class_[t][c]] += doc.triangles[t].corner_angle(c);

  const int V = num_classes;
  const int F = nt;
  require(F % 2 == 0, ErrorCode::InvalidDocument,
          "odd triangle count cannot close up");
  const int E = 3 * F / 2;
  const int chi = V - E + F;
  require(chi <= 2 && (2 - chi) % 2 == 0, ErrorCode::InvalidDocument,
          "Euler characteristic " + std::to_string(chi) +
              " is not that of a closed orientable surface");
  s.genus_ = (2 - chi) / 2;

  s.area_ = 0.0;
  for (const auto& tri : doc.triangles) s.area_ += tri.signed_area();
  return s;
}

EdgeRef PolyhedralSurface::partner(EdgeRef e) const {
  return partner_[e.tri][e.edge];
}

int PolyhedralSurface::corner_class(int tri, int corner) const {
  return corner_class_[tri][corner];
}

std::vector<ConePoint> PolyhedralSurface::cone_points() const {
  std::vector<ConePoint> cones;
  for (int k = 0; k < num_vertex_classes(); ++k) {
    const double beta = class_angle_[k];
    if (std::abs(beta - 2.0 * kPi) > 1e-9)
      cones.push_back({k, beta, beta / (2.0 * kPi) - 1.0});
  }
  return cones;
}

double PolyhedralSurface::gauss_bonnet_residual() const {
  double sum = 0.0;
  for (double beta : class_angle_) sum += beta / (2.0 * kPi) - 1.0;
  return sum - (2.0 * genus_ - 2.0);
}

// ---------------------------------------------------------------------------
// JSON surface schema

namespace {

SurfaceDocument document_from_json(const json& j) {
  require(j.contains("triangles") && j["triangles"].is_array(),
          ErrorCode::InvalidDocument, "missing 'triangles' array");
  require(j.contains("gluings") && j["gluings"].is_array(),
          ErrorCode::InvalidDocument, "missing 'gluings' array");
  SurfaceDocument doc;
  for (const auto& jt : j["triangles"]) {
    require(jt.is_array() && jt.size() == 3, ErrorCode::InvalidDocument,
            "triangle needs exactly three vertices");
    TriangleChart tri;
    for (int c = 0; c < 3; ++c) {
      require(jt[c].is_array() && jt[c].size() == 2, ErrorCode::InvalidDocument,
              "vertex needs [x, y] coordinates");
      tri.p[c] = Vec2(jt[c][0].get<double>(), jt[c][1].get<double>());
    }
    doc.triangles.push_back(tri);
  }
  for (const auto& jg : j["gluings"]) {
    require(jg.is_array() && jg.size() == 2 && jg[0].is_array() &&
                jg[1].is_array() && jg[0].size() == 2 && jg[1].size() == 2,
            ErrorCode::InvalidDocument, "gluing needs [[t,e],[t,e]]");
    Gluing g;
    g.a = {jg[0][0].get<int>(), jg[0][1].get<int>()};
    g.b = {jg[1][0].get<int>(), jg[1][1].get<int>()};
    doc.gluings.push_back(g);
  }
  return doc;
}

}  // namespace

PolyhedralSurface load_surface(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidDocument, std::string("JSON parse error: ") + e.what());
  }
  return PolyhedralSurface::from_document(document_from_json(j));
}

PolyhedralSurface load_surface_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_surface(ss.str());
}

PolyhedralSurface load_any_surface_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidDocument, std::string("JSON parse error: ") + e.what());
  }
  if (j.contains("parallelograms"))
    return build_translation_surface(load_translation_spec(text));
  return load_surface(text);
}

std::string surface_to_json(const PolyhedralSurface& s) {
  json j;
  j["triangles"] = json::array();
  for (int t = 0; t < s.num_triangles(); ++t) {
    json jt = json::array();
    for (int c = 0; c < 3; ++c)
      jt.push_back({s.chart(t).p[c].x(), s.chart(t).p[c].y()});
    j["triangles"].push_back(jt);
  }
  j["gluings"] = json::array();
  for (const auto& g : s.gluings())
    j["gluings"].push_back({{g.a.tri, g.a.edge}, {g.b.tri, g.b.edge}});
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Builders

PolyhedralSurface build_flat_torus(cplx sigma, int n, Vec2 grid_offset) {
  require(sigma.imag() > 0.0, ErrorCode::LowerHalfPlane,
          "torus modulus needs Im(sigma) > 0");
  require(n >= 1, ErrorCode::InvalidArgument, "need at least one subdivision");

  SurfaceDocument doc;
  auto node = [&](int i, int j) {
    const double u = (i + grid_offset.x()) / n;
    const double v = (j + grid_offset.y()) / n;
    const cplx z = u + v * sigma;
    return Vec2(z.real(), z.imag());
  };
  auto lower = [&](int i, int j) { return 2 * (i + n * j); };
  auto upper = [&](int i, int j) { return 2 * (i + n * j) + 1; };

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 z00 = node(i, j), z10 = node(i + 1, j);
      const Vec2 z11 = node(i + 1, j + 1), z01 = node(i, j + 1);
      doc.triangles.push_back({{z00, z10, z11}});
      doc.triangles.push_back({{z00, z11, z01}});
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      doc.gluings.push_back({{lower(i, j), 2}, {upper(i, j), 0}});
      doc.gluings.push_back({{lower(i, j), 0}, {upper(i, mod(j - 1, n)), 1}});
      doc.gluings.push_back({{upper(i, j), 2}, {lower(mod(i - 1, n), j), 1}});
    }
  return PolyhedralSurface::from_document(doc);
}

namespace {

// Split triangle t of the document at interior point q (chart coords).
// Triangle t becomes (p0, p1, q); two children are appended. Gluings that
// referenced the outer edges of t are redirected.
void split_triangle_at_point(SurfaceDocument& doc, int t, const Vec2& q) {
  const TriangleChart tri = doc.triangles[t];
  const int a = static_cast<int>(doc.triangles.size());
  const int b = a + 1;
  doc.triangles[t] = {{tri.p[0], tri.p[1], q}};
  doc.triangles.push_back({{tri.p[1], tri.p[2], q}});
  doc.triangles.push_back({{tri.p[2], tri.p[0], q}});
  for (auto& g : doc.gluings)
    for (EdgeRef* e : {&g.a, &g.b}) {
      if (e->tri != t) continue;
      if (e->edge == 1) *e = {a, 0};
      if (e->edge == 2) *e = {b, 0};
    }
  doc.gluings.push_back({{t, 1}, {a, 2}});
  doc.gluings.push_back({{a, 1}, {b, 2}});
  doc.gluings.push_back({{b, 1}, {t, 2}});
}

// Smallest distance of q to the edge lines of tri, normalized by sqrt(area);
// positive only strictly inside.
double interior_clearance(const TriangleChart& tri, const Vec2& q) {
  double c = 1e300;
  for (int e = 0; e < 3; ++e) {
    const Vec2 u = tri.p[(e + 1) % 3] - tri.p[e];
    c = std::min(c, cross(u, q - tri.p[e]) / u.norm());
  }
  return c / std::sqrt(std::abs(tri.signed_area()));
}

}  // namespace

MarkedTorus build_flat_torus_marked(cplx sigma, int n,
                                    const std::vector<cplx>& points) {
  require(n >= 2 || points.empty(), ErrorCode::InvalidArgument,
          "marked torus needs n >= 2");

  auto worst_clearance = [&](const PolyhedralSurface& torus) {
    double worst = 1e300;
    for (const cplx& p : points) {
      double best_tri = -1e300;
      for (int t = 0; t < torus.num_triangles(); ++t)
        for (int du = -1; du <= 1; ++du)
          for (int dv = -1; dv <= 1; ++dv) {
            const cplx rep = p + static_cast<double>(du) +
                             static_cast<double>(dv) * sigma;
            best_tri = std::max(
                best_tri,
                interior_clearance(torus.chart(t), Vec2(rep.real(), rep.imag())));
          }
      worst = std::min(worst, best_tri);
    }
    return worst;
  };

  // Pick the grid offset giving the marks the most room.
  Vec2 best_offset = Vec2::Zero();
  double best_clear = points.empty() ? 1.0 : -1e300;
  const int scan = points.empty() ? 1 : 8;
  for (int oi = 0; oi < scan && !points.empty(); ++oi)
    for (int oj = 0; oj < scan; ++oj) {
      const Vec2 off(oi / static_cast<double>(scan),
                     oj / static_cast<double>(scan));
      const double c = worst_clearance(build_flat_torus(sigma, n, off));
      if (c > best_clear) {
        best_clear = c;
        best_offset = off;
      }
    }
  require(best_clear > 1e-3, ErrorCode::InvalidArgument,
          "marked points sit too close to every candidate grid");

  PolyhedralSurface torus = build_flat_torus(sigma, n, best_offset);
  SurfaceDocument doc;
  for (int t = 0; t < torus.num_triangles(); ++t)
    doc.triangles.push_back(torus.chart(t));
  doc.gluings = torus.gluings();

  std::vector<int> mark_tri;
  for (const cplx& p : points) {
    int found_tri = -1;
    Vec2 found_rep = Vec2::Zero();
    double found_clear = -1e300;
    for (std::size_t t = 0; t < doc.triangles.size(); ++t)
      for (int du = -1; du <= 1; ++du)
        for (int dv = -1; dv <= 1; ++dv) {
          const cplx rep = p + static_cast<double>(du) +
                           static_cast<double>(dv) * sigma;
          const Vec2 q(rep.real(), rep.imag());
          const double c = interior_clearance(doc.triangles[t], q);
          if (c > found_clear) {
            found_clear = c;
            found_tri = static_cast<int>(t);
            found_rep = q;
          }
        }
    require(found_clear > 1e-4, ErrorCode::InvalidArgument,
            "marked point could not be inserted strictly inside a triangle");
    split_triangle_at_point(doc, found_tri, found_rep);
    mark_tri.push_back(found_tri);  // corner 2 of the reused triangle is the mark
  }

  MarkedTorus out{PolyhedralSurface::from_document(doc), {}};
  for (int t : mark_tri) out.marked_classes.push_back(out.surface.corner_class(t, 2));
  return out;
}

// ---------------------------------------------------------------------------
// Translation surfaces

double TranslationSurfaceSpec::area() const {
  double a = 0.0;
  for (const auto& pg : parallelograms) a += (std::conj(pg.A) * pg.B).imag();
  return a;
}

namespace {

// Edge labels used while triangulating a slit parallelogram:
//   0..3                      outer sides (bottom, right, top, left), one edge each
//   100 + 4*cut + 2*member    plus bank (from -> to), one edge
//   101 + 4*cut + 2*member    minus bank (to -> from), one edge
//   negative                  paired labels: the two edges carrying the same
//                             negative label are glued to each other
struct WalkVertex {
  Vec2 p;
  int out_label;  // label of the edge from this vertex to the next one
};

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return cross(q - p, r - p);
  };
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

double point_segment_distance(const Vec2& q, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double t = std::clamp((q - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (q - (a + t * d)).norm();
}

struct LabeledTriangle {
  std::array<Vec2, 3> p;
  std::array<int, 3> labels;
};

// Ear clip a weakly simple polygon walk (keyholed slits produce duplicate
// vertices; those are skipped in the blocking test). Every clipped diagonal
// gets a fresh paired label shared by its two sides.
std::vector<LabeledTriangle> ear_clip(std::vector<WalkVertex> walk, double scale,
                                      int& next_pair_label) {
  std::vector<LabeledTriangle> tris;
  const double eps_area = 1e-12 * scale * scale;
  int guard = 0;
  while (walk.size() > 3) {
    require(++guard < 100000, ErrorCode::InvalidDocument,
            "slit triangulation did not terminate");
    const int n = static_cast<int>(walk.size());
    int ear = -1;
    double best_quality = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec2& u = walk[mod(i - 1, n)].p;
      const Vec2& v = walk[i].p;
      const Vec2& w = walk[mod(i + 1, n)].p;
      const double a2 = cross(v - u, w - v);
      if (a2 <= eps_area) continue;
      bool blocked = false;
      for (int k = 0; k < n && !blocked; ++k) {
        if (k == mod(i - 1, n) || k == i || k == mod(i + 1, n)) continue;
        const Vec2& q = walk[k].p;
        if ((q - u).norm() < 1e-12 * scale || (q - v).norm() < 1e-12 * scale ||
            (q - w).norm() < 1e-12 * scale)
          continue;  // keyhole duplicate, not a blocker
        const double s0 = cross(v - u, q - u);
        const double s1 = cross(w - v, q - v);
        const double s2 = cross(u - w, q - w);
        if (s0 >= -eps_area && s1 >= -eps_area && s2 >= -eps_area) blocked = true;
      }
      if (blocked) continue;
      const double lmax =
          std::max({(v - u).norm(), (w - v).norm(), (u - w).norm()});
      const double quality = a2 / (lmax * lmax);
      if (quality > best_quality) {
        best_quality = quality;
        ear = i;
      }
    }
    require(ear >= 0, ErrorCode::InvalidDocument,
            "no ear found while triangulating a slit parallelogram");
    const int im = mod(ear - 1, n);
    const int ip = mod(ear + 1, n);
    const int diag = next_pair_label--;
    LabeledTriangle t;
    t.p = {walk[im].p, walk[ear].p, walk[ip].p};
    t.labels = {walk[im].out_label, walk[ear].out_label, diag};
    tris.push_back(t);
    walk[im].out_label = diag;
    walk.erase(walk.begin() + ear);
  }
  LabeledTriangle t;
  t.p = {walk[0].p, walk[1].p, walk[2].p};
  t.labels = {walk[0].out_label, walk[1].out_label, walk[2].out_label};
  require(cross(t.p[1] - t.p[0], t.p[2] - t.p[0]) > eps_area,
          ErrorCode::InvalidDocument, "degenerate final ear");
  tris.push_back(t);
  return tris;
}

}  // namespace

TranslationSurfaceSpec load_translation_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidDocument, std::string("JSON parse error: ") + e.what());
  }
  require(j.contains("parallelograms"), ErrorCode::InvalidDocument,
          "missing 'parallelograms'");
  TranslationSurfaceSpec spec;
  for (const auto& jp : j["parallelograms"]) {
    Parallelogram pg;
    pg.A = cplx(jp["A"][0].get<double>(), jp["A"][1].get<double>());
    pg.B = cplx(jp["B"][0].get<double>(), jp["B"][1].get<double>());
    spec.parallelograms.push_back(pg);
  }
  if (j.contains("cuts"))
    for (const auto& jc : j["cuts"]) {
      Cut cut;
      cut.from = cplx(jc["from"][0].get<double>(), jc["from"][1].get<double>());
      cut.to = cplx(jc["to"][0].get<double>(), jc["to"][1].get<double>());
      cut.on_first = jc["on"][0].get<int>();
      cut.on_second = jc["on"][1].get<int>();
      spec.cuts.push_back(cut);
    }
  return spec;
}

TranslationSurfaceSpec load_translation_spec_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_translation_spec(ss.str());
}

PolyhedralSurface build_translation_surface(const TranslationSurfaceSpec& spec) {
  const int g = static_cast<int>(spec.parallelograms.size());
  require(g >= 1, ErrorCode::InvalidDocument, "need at least one parallelogram");

  for (const auto& pg : spec.parallelograms)
    require((std::conj(pg.A) * pg.B).imag() > 0.0, ErrorCode::InvalidDocument,
            "parallelogram is degenerate or negatively oriented");

  std::vector<std::vector<int>> cuts_on(g);
  for (std::size_t m = 0; m < spec.cuts.size(); ++m) {
    const Cut& cut = spec.cuts[m];
    require(cut.on_first >= 0 && cut.on_first < g && cut.on_second >= 0 &&
                cut.on_second < g,
            ErrorCode::InvalidDocument, "cut references a missing parallelogram");
    require(cut.on_first != cut.on_second, ErrorCode::InvalidDocument,
            "a cut must join two different parallelograms");
    require(std::abs(cut.to - cut.from) > 1e-12, ErrorCode::InvalidDocument,
            "zero length cut");
    for (int side : {cut.on_first, cut.on_second}) {
      const auto& pg = spec.parallelograms[side];
      const double det = (std::conj(pg.A) * pg.B).imag();
      for (const cplx& z : {cut.from, cut.to}) {
        // coordinates in the (A, B) frame: z = u A + v B
        const double v = (std::conj(pg.A) * z).imag() / det;
        const double u = (std::conj(pg.B) * z).imag() / -det;
        require(u > 1e-9 && u < 1.0 - 1e-9 && v > 1e-9 && v < 1.0 - 1e-9,
                ErrorCode::CutOutsideParallelogram,
                "cut endpoint is not strictly inside parallelogram " +
                    std::to_string(side));
      }
      cuts_on[side].push_back(static_cast<int>(m));
    }
  }
  for (int a = 0; a < g; ++a)
    for (std::size_t i = 0; i < cuts_on[a].size(); ++i)
      for (std::size_t k = i + 1; k < cuts_on[a].size(); ++k) {
        const Cut& c1 = spec.cuts[cuts_on[a][i]];
        const Cut& c2 = spec.cuts[cuts_on[a][k]];
        const Vec2 a1(c1.from.real(), c1.from.imag()), b1(c1.to.real(), c1.to.imag());
        const Vec2 a2(c2.from.real(), c2.from.imag()), b2(c2.to.real(), c2.to.imag());
        const bool crossing = segments_properly_intersect(a1, b1, a2, b2);
        const double min_sep =
            std::min({point_segment_distance(a1, a2, b2),
                      point_segment_distance(b1, a2, b2),
                      point_segment_distance(a2, a1, b1),
                      point_segment_distance(b2, a1, b1)});
        require(!crossing && min_sep > 1e-9, ErrorCode::CutOverlap,
                "cuts overlap on parallelogram " + std::to_string(a));
      }

  SurfaceDocument doc;
  std::vector<std::array<EdgeRef, 4>> side_edges(g);
  std::vector<std::array<EdgeRef, 2>> cut_plus(spec.cuts.size());
  std::vector<std::array<EdgeRef, 2>> cut_minus(spec.cuts.size());
  int next_pair_label = -100;

  for (int a = 0; a < g; ++a) {
    const auto& pg = spec.parallelograms[a];
    const Vec2 c0(0, 0);
    const Vec2 c1(pg.A.real(), pg.A.imag());
    const Vec2 c2(pg.A.real() + pg.B.real(), pg.A.imag() + pg.B.imag());
    const Vec2 c3(pg.B.real(), pg.B.imag());
    const double scale = std::max({c1.norm(), c2.norm(), c3.norm()});

    std::vector<WalkVertex> walk = {{c0, 0}, {c1, 1}, {c2, 2}, {c3, 3}};

    for (int m : cuts_on[a]) {
      const Cut& cut = spec.cuts[m];
      const int member = (cut.on_first == a) ? 0 : 1;
      const Vec2 pa(cut.from.real(), cut.from.imag());
      const Vec2 pb(cut.to.real(), cut.to.imag());

      int anchor = -1;
      for (std::size_t i = 0; i < walk.size() && anchor < 0; ++i) {
        if ((walk[i].p - pa).norm() < 1e-9 * scale) continue;
        bool visible = true;
        const int nw = static_cast<int>(walk.size());
        for (int k = 0; k < nw && visible; ++k) {
          if (segments_properly_intersect(walk[i].p, pa, walk[k].p,
                                          walk[(k + 1) % nw].p))
            visible = false;
        }
        for (int m2 : cuts_on[a]) {
          const Cut& other = spec.cuts[m2];
          const Vec2 oa(other.from.real(), other.from.imag());
          const Vec2 ob(other.to.real(), other.to.imag());
          if (segments_properly_intersect(walk[i].p, pa, oa, ob)) visible = false;
          // keep the bridge clear of slit endpoints it does not own
          for (const Vec2& q : {oa, ob})
            if ((q - pa).norm() > 1e-12 * scale &&
                (q - walk[i].p).norm() > 1e-12 * scale &&
                point_segment_distance(q, walk[i].p, pa) < 1e-9 * scale)
              visible = false;
        }
        if (visible) anchor = static_cast<int>(i);
      }
      require(anchor >= 0, ErrorCode::CutOverlap,
              "no visible anchor found to open a slit");

      const int lp = 100 + 4 * m + 2 * member;      // plus bank from->to
      const int lm = lp + 1;                        // minus bank to->from
      const int bridge = next_pair_label--;

      std::vector<WalkVertex> spliced;
      spliced.reserve(walk.size() + 4);
      for (int idx = 0; idx <= anchor; ++idx) spliced.push_back(walk[idx]);
      const int orig_out = walk[anchor].out_label;
      spliced.back().out_label = bridge;            // anchor -> a
      spliced.push_back({pa, lp});                  // a -> b (plus bank)
      spliced.push_back({pb, lm});                  // b -> a (minus bank)
      spliced.push_back({pa, bridge});              // a -> anchor twin
      spliced.push_back({walk[anchor].p, orig_out});  // anchor twin
      for (std::size_t idx = anchor + 1; idx < walk.size(); ++idx)
        spliced.push_back(walk[idx]);
      walk = std::move(spliced);
    }

    const auto tris = ear_clip(walk, scale, next_pair_label);
    const int base = static_cast<int>(doc.triangles.size());
    std::map<int, std::vector<EdgeRef>> by_label;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      doc.triangles.push_back({tris[t].p});
      for (int e = 0; e < 3; ++e)
        by_label[tris[t].labels[e]].push_back(
            EdgeRef{base + static_cast<int>(t), e});
    }
    for (const auto& [lbl, refs] : by_label) {
      if (lbl < 0) {
        require(refs.size() == 2, ErrorCode::InvalidDocument,
                "paired edge label does not occur exactly twice");
        doc.gluings.push_back({refs[0], refs[1]});
      } else {
        require(refs.size() == 1, ErrorCode::InvalidDocument,
                "boundary label occurs more than once");
      }
    }
    for (int sidx = 0; sidx < 4; ++sidx) {
      require(by_label.count(sidx) == 1, ErrorCode::InvalidDocument,
              "outer side lost in triangulation");
      side_edges[a][sidx] = by_label[sidx][0];
    }
    for (int m : cuts_on[a]) {
      const int member = (spec.cuts[m].on_first == a) ? 0 : 1;
      const int lp = 100 + 4 * m + 2 * member;
      require(by_label.count(lp) == 1 && by_label.count(lp + 1) == 1,
              ErrorCode::InvalidDocument, "slit bank lost in triangulation");
      cut_plus[m][member] = by_label[lp][0];
      cut_minus[m][member] = by_label[lp + 1][0];
    }
  }

  // bottom <-> top (z ~ z + B) and right <-> left (z ~ z - A) of each sheet
  for (int a = 0; a < g; ++a) {
    doc.gluings.push_back({side_edges[a][0], side_edges[a][2]});
    doc.gluings.push_back({side_edges[a][1], side_edges[a][3]});
  }
  // plus bank of one sheet to minus bank of the other
  for (std::size_t m = 0; m < spec.cuts.size(); ++m) {
    doc.gluings.push_back({cut_plus[m][0], cut_minus[m][1]});
    doc.gluings.push_back({cut_plus[m][1], cut_minus[m][0]});
  }

  return PolyhedralSurface::from_document(doc);
}

}  // namespace conedet
