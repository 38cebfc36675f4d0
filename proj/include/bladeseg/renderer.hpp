#pragma once

#include <cstdint>
#include <vector>

#include "bladeseg/camera.hpp"
#include "bladeseg/image_io.hpp"
#include "bladeseg/mesh.hpp"
#include "bladeseg/scene.hpp"

namespace bladeseg {

struct RenderOutput {
  ImageRGB rgb;
  MaskImage mask;               // 255 exactly where the z-winner is Defect
  std::vector<float> depth;     // camera-forward distance; +inf = background
  int width = 0, height = 0;

  float depth_at(int y, int x) const { return depth[static_cast<size_t>(y) * width + x]; }
};

// A near-clipped, projected, flat-shaded triangle ready for scan conversion.
struct ScreenTri {
  double x0, y0, x1, y1, x2, y2;      // continuous pixel coords, y down
  double inv_z0, inv_z1, inv_z2;      // 1/depth at each vertex
  uint8_t r, g, b;
  bool defect;
};

constexpr double kNearClip = 0.05;

// Projection + near clipping + per-triangle Lambert shading. Exposed so
// tests can re-derive pixel winners independently of the scan converter.
// Output order follows mesh triangle order (clip pieces stay adjacent),
// which is the z-tie-break order.
std::vector<ScreenTri> prepare_screen_triangles(const LabeledMesh& mesh, const SceneSpec& scene);

// Fill convention (testable, documented):
//   Pixel centers sit at (px+0.5, py+0.5). With y growing downward,
//   vertices are wound so E01(v2) > 0 where
//     E_ab(p) = (b.x-a.x)*(p.y-a.y) - (b.y-a.y)*(p.x-a.x).
//   A center is covered iff for every directed edge a->b either E > 0, or
//   E == 0 and the edge is "top" (a.y == b.y and b.x > a.x) or "left"
//   (b.y < a.y). Shared edges therefore belong to exactly one triangle.
// Depth test: strict less-than on float depth, ties keep the earlier
// triangle (lower index).
bool pixel_covered(const ScreenTri& t, double px, double py);

// Interpolated depth at a pixel center, same arithmetic as the scan
// converter (perspective-correct via linear 1/z).
float pixel_depth(const ScreenTri& t, double px, double py);

// Serial reference: per-triangle bounding-box scan.
RenderOutput rasterize_ref(const LabeledMesh& mesh, const SceneSpec& scene);

// Production path: triangles binned per row, rows rasterized in parallel.
// Byte-identical to rasterize_ref.
RenderOutput rasterize(const LabeledMesh& mesh, const SceneSpec& scene);

// Procedural backdrop, deterministic in (mode, seed, camera).
ImageRGB synth_background(BackgroundMode mode, uint64_t seed, const CameraSpec& camera);

}  // namespace bladeseg
