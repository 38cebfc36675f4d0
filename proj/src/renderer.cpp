#include "bladeseg/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bladeseg/rng.hpp"

namespace bladeseg {

namespace {

struct Rgb {
  double r, g, b;
};

Rgb structure_albedo(MeshPart part) {
  switch (part) {
    case MeshPart::Tower: return {0.80, 0.82, 0.85};
    case MeshPart::Nacelle: return {0.68, 0.70, 0.73};
    case MeshPart::Hub: return {0.74, 0.75, 0.78};
    case MeshPart::Blade: return {0.91, 0.92, 0.94};
  }
  return {0.5, 0.5, 0.5};
}

Rgb defect_albedo(DefectKind kind) {
  switch (kind) {
    case DefectKind::Crack: return {0.09, 0.08, 0.08};
    case DefectKind::Erosion: return {0.38, 0.27, 0.17};
    case DefectKind::Delamination: return {0.62, 0.54, 0.47};
    case DefectKind::Lightning: return {0.12, 0.10, 0.09};
    case DefectKind::None: break;
  }
  return {0.5, 0.5, 0.5};
}

uint8_t to_byte(double v) {
  long q = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
  return static_cast<uint8_t>(std::clamp(q, 0L, 255L));
}

// Camera-space vertex for clipping.
struct CamVert {
  double x, y, z;  // right, up, forward
};

}  // namespace

std::vector<ScreenTri> prepare_screen_triangles(const LabeledMesh& mesh, const SceneSpec& scene) {
  scene.validate();
  const CameraBasis cam = make_camera_basis(scene.camera);
  std::vector<ScreenTri> out;
  out.reserve(mesh.tris.size());

  auto to_cam = [&](const Vec3& p) -> CamVert {
    Vec3 d = p - cam.eye;
    return {dot(d, cam.right), dot(d, cam.up), dot(d, cam.forward)};
  };
  auto to_screen = [&](const CamVert& v, double& sx, double& sy) {
    sx = cam.width / 2.0 + cam.focal_px * v.x / v.z;
    sy = cam.height / 2.0 - cam.focal_px * v.y / v.z;
  };

  for (size_t ti = 0; ti < mesh.tris.size(); ++ti) {
    const Triangle& tri = mesh.tris[ti];

    // Flat Lambert shade, surface treated as double-sided: the face normal
    // is flipped toward the camera before n.l.
    Vec3 n = cross(tri.b - tri.a, tri.c - tri.a);
    double nn = norm(n);
    if (nn < 1e-12) continue;  // degenerate
    n = n * (1.0 / nn);
    Vec3 centroid = (tri.a + tri.b + tri.c) * (1.0 / 3.0);
    if (dot(n, cam.eye - centroid) < 0.0) n = -n;
    double shade = scene.ambient + scene.light_intensity * std::max(0.0, dot(n, scene.light_dir));
    double grime = 0.86 + 0.14 * (static_cast<double>(mix64(static_cast<uint64_t>(ti) * 0x9e3779b97f4a7c15ULL) >> 11) *
                                  0x1.0p-53);
    Rgb albedo = tri.label == TriLabel::Defect ? defect_albedo(scene.defect.kind) : structure_albedo(tri.part);
    uint8_t cr = to_byte(albedo.r * shade * grime);
    uint8_t cg = to_byte(albedo.g * shade * grime);
    uint8_t cb = to_byte(albedo.b * shade * grime);

    // Near-plane clip in camera space (Sutherland-Hodgman on one plane).
    CamVert verts[3] = {to_cam(tri.a), to_cam(tri.b), to_cam(tri.c)};
    CamVert poly[4];
    int n_poly = 0;
    for (int i = 0; i < 3; ++i) {
      const CamVert& cur = verts[i];
      const CamVert& nxt = verts[(i + 1) % 3];
      bool cur_in = cur.z >= kNearClip;
      bool nxt_in = nxt.z >= kNearClip;
      if (cur_in) poly[n_poly++] = cur;
      if (cur_in != nxt_in) {
        double t = (kNearClip - cur.z) / (nxt.z - cur.z);
        poly[n_poly++] = {cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y), kNearClip};
      }
    }
    if (n_poly < 3) continue;

    for (int k = 2; k < n_poly; ++k) {
      ScreenTri st;
      double sx[3], sy[3];
      const CamVert* tv[3] = {&poly[0], &poly[k - 1], &poly[k]};
      for (int j = 0; j < 3; ++j) to_screen(*tv[j], sx[j], sy[j]);
      st.x0 = sx[0]; st.y0 = sy[0];
      st.x1 = sx[1]; st.y1 = sy[1];
      st.x2 = sx[2]; st.y2 = sy[2];
      st.inv_z0 = 1.0 / tv[0]->z;
      st.inv_z1 = 1.0 / tv[1]->z;
      st.inv_z2 = 1.0 / tv[2]->z;
      st.r = cr; st.g = cg; st.b = cb;
      st.defect = tri.label == TriLabel::Defect;

      // Wind so the interior is on the positive side of every edge.
      double area2 = (st.x1 - st.x0) * (st.y2 - st.y0) - (st.y1 - st.y0) * (st.x2 - st.x0);
      if (area2 == 0.0) continue;
      if (area2 < 0.0) {
        std::swap(st.x1, st.x2);
        std::swap(st.y1, st.y2);
        std::swap(st.inv_z1, st.inv_z2);
      }
      out.push_back(st);
    }
  }
  return out;
}

namespace {

struct Edge {
  double a_x, a_y, dx, dy;  // directed edge a->b, d = b - a

  double eval(double px, double py) const { return dx * (py - a_y) - dy * (px - a_x); }
  // Top-left tie rule for the zero set.
  bool accepts_zero() const { return (dy == 0.0 && dx > 0.0) || dy < 0.0; }
};

struct TriSetup {
  Edge e01, e12, e20;
  double inv_area2;
  double inv_z0, inv_z1, inv_z2;
  int x_lo, x_hi, y_lo, y_hi;  // inclusive pixel bounds
  uint8_t r, g, b;
  bool defect;
};

bool setup_tri(const ScreenTri& t, int width, int height, TriSetup& s) {
  s.e01 = {t.x0, t.y0, t.x1 - t.x0, t.y1 - t.y0};
  s.e12 = {t.x1, t.y1, t.x2 - t.x1, t.y2 - t.y1};
  s.e20 = {t.x2, t.y2, t.x0 - t.x2, t.y0 - t.y2};
  double area2 = s.e01.eval(t.x2, t.y2);
  if (area2 <= 0.0) return false;
  s.inv_area2 = 1.0 / area2;
  s.inv_z0 = t.inv_z0;
  s.inv_z1 = t.inv_z1;
  s.inv_z2 = t.inv_z2;
  double min_x = std::min({t.x0, t.x1, t.x2}), max_x = std::max({t.x0, t.x1, t.x2});
  double min_y = std::min({t.y0, t.y1, t.y2}), max_y = std::max({t.y0, t.y1, t.y2});
  s.x_lo = std::max(0, static_cast<int>(std::ceil(min_x - 0.5)));
  s.x_hi = std::min(width - 1, static_cast<int>(std::floor(max_x - 0.5)));
  s.y_lo = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
  s.y_hi = std::min(height - 1, static_cast<int>(std::floor(max_y - 0.5)));
  s.r = t.r; s.g = t.g; s.b = t.b;
  s.defect = t.defect;
  return s.x_lo <= s.x_hi && s.y_lo <= s.y_hi;
}

inline bool edge_in(const Edge& e, double px, double py) {
  double v = e.eval(px, py);
  return v > 0.0 || (v == 0.0 && e.accepts_zero());
}

// Rasterizes one row of one triangle. Both drivers funnel through here, so
// per-pixel arithmetic is shared and results match bit-for-bit.
inline void raster_row(const TriSetup& s, int py, int width, float* zbuf, uint8_t* rgb, uint8_t* mask) {
  const double cy = py + 0.5;
  float* zrow = zbuf + static_cast<size_t>(py) * width;
  uint8_t* crow = rgb + static_cast<size_t>(py) * width * 3;
  uint8_t* mrow = mask + static_cast<size_t>(py) * width;
  for (int px = s.x_lo; px <= s.x_hi; ++px) {
    const double cx = px + 0.5;
    if (!edge_in(s.e01, cx, cy) || !edge_in(s.e12, cx, cy) || !edge_in(s.e20, cx, cy)) continue;
    // Barycentric weights: vertex i gets the edge function opposite it.
    double w0 = s.e12.eval(cx, cy) * s.inv_area2;
    double w1 = s.e20.eval(cx, cy) * s.inv_area2;
    double w2 = s.e01.eval(cx, cy) * s.inv_area2;
    double inv_z = w0 * s.inv_z0 + w1 * s.inv_z1 + w2 * s.inv_z2;
    float zf = static_cast<float>(1.0 / inv_z);
    if (zf < zrow[px]) {
      zrow[px] = zf;
      crow[3 * px] = s.r;
      crow[3 * px + 1] = s.g;
      crow[3 * px + 2] = s.b;
      mrow[px] = s.defect ? 255 : 0;
    }
  }
}

RenderOutput make_output(const SceneSpec& scene) {
  RenderOutput out;
  out.width = scene.camera.image_width;
  out.height = scene.camera.image_height;
  out.rgb = synth_background(scene.background_mode, scene.background_seed, scene.camera);
  out.mask.width = out.width;
  out.mask.height = out.height;
  out.mask.pixels.assign(static_cast<size_t>(out.width) * out.height, 0);
  out.depth.assign(static_cast<size_t>(out.width) * out.height, std::numeric_limits<float>::infinity());
  return out;
}

}  // namespace

RenderOutput rasterize_ref(const LabeledMesh& mesh, const SceneSpec& scene) {
  RenderOutput out = make_output(scene);
  const std::vector<ScreenTri> tris = prepare_screen_triangles(mesh, scene);
  TriSetup s;
  for (const ScreenTri& t : tris) {
    if (!setup_tri(t, out.width, out.height, s)) continue;
    for (int py = s.y_lo; py <= s.y_hi; ++py)
      raster_row(s, py, out.width, out.depth.data(), out.rgb.pixels.data(), out.mask.pixels.data());
  }
  return out;
}

RenderOutput rasterize(const LabeledMesh& mesh, const SceneSpec& scene) {
  RenderOutput out = make_output(scene);
  const std::vector<ScreenTri> tris = prepare_screen_triangles(mesh, scene);

  std::vector<TriSetup> setups(tris.size());
  std::vector<uint8_t> live(tris.size(), 0);
  for (size_t i = 0; i < tris.size(); ++i) live[i] = setup_tri(tris[i], out.width, out.height, setups[i]);

  // Per-row triangle lists, ascending triangle index (= tie-break order).
  std::vector<std::vector<int32_t>> bins(static_cast<size_t>(out.height));
  for (size_t i = 0; i < tris.size(); ++i) {
    if (!live[i]) continue;
    for (int py = setups[i].y_lo; py <= setups[i].y_hi; ++py) bins[static_cast<size_t>(py)].push_back(static_cast<int32_t>(i));
  }

#pragma omp parallel for schedule(dynamic, 8)
  for (int py = 0; py < out.height; ++py) {
    for (int32_t idx : bins[static_cast<size_t>(py)])
      raster_row(setups[static_cast<size_t>(idx)], py, out.width, out.depth.data(), out.rgb.pixels.data(),
                 out.mask.pixels.data());
  }
  return out;
}

bool pixel_covered(const ScreenTri& t, double px, double py) {
  Edge e01{t.x0, t.y0, t.x1 - t.x0, t.y1 - t.y0};
  Edge e12{t.x1, t.y1, t.x2 - t.x1, t.y2 - t.y1};
  Edge e20{t.x2, t.y2, t.x0 - t.x2, t.y0 - t.y2};
  if (e01.eval(t.x2, t.y2) <= 0.0) return false;
  return edge_in(e01, px, py) && edge_in(e12, px, py) && edge_in(e20, px, py);
}

float pixel_depth(const ScreenTri& t, double px, double py) {
  Edge e01{t.x0, t.y0, t.x1 - t.x0, t.y1 - t.y0};
  Edge e12{t.x1, t.y1, t.x2 - t.x1, t.y2 - t.y1};
  Edge e20{t.x2, t.y2, t.x0 - t.x2, t.y0 - t.y2};
  double inv_area2 = 1.0 / e01.eval(t.x2, t.y2);
  double w0 = e12.eval(px, py) * inv_area2;
  double w1 = e20.eval(px, py) * inv_area2;
  double w2 = e01.eval(px, py) * inv_area2;
  double inv_z = w0 * t.inv_z0 + w1 * t.inv_z1 + w2 * t.inv_z2;
  return static_cast<float>(1.0 / inv_z);
}

}  // namespace bladeseg
