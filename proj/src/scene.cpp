#include "bladeseg/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bladeseg/rng.hpp"

namespace bladeseg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Blade surface tessellation. Span rows x chord columns of quad cells; fine
// enough that cell-level defect carving reads correctly at 128px renders.
constexpr int kSpanCells = 64;
constexpr int kChordCells = 8;

void require(bool ok, const char* field) {
  if (!ok) throw InvalidSpec(std::string("invalid field: ") + field);
}

}  // namespace

void TurbineSpec::validate() const {
  require(tower_height > 0.0, "tower_height");
  require(tower_base_radius > 0.0, "tower_base_radius");
  require(tower_top_radius > 0.0, "tower_top_radius");
  require(nacelle_dims.x > 0.0 && nacelle_dims.y > 0.0 && nacelle_dims.z > 0.0, "nacelle_dims");
  require(tower_height > nacelle_dims.z, "tower_height");
  require(hub_radius > 0.0, "hub_radius");
  require(blade_length > 0.0, "blade_length");
  require(blade_root_chord > 0.0, "blade_root_chord");
  require(blade_tip_chord > 0.0, "blade_tip_chord");
  require(blade_tip_chord <= blade_root_chord, "blade_tip_chord");
  require(std::isfinite(rotor_phase), "rotor_phase");
}

void DefectSpec::validate() const {
  require(blade_index >= 0 && blade_index <= 2, "blade_index");
  require(span_position >= 0.0 && span_position <= 1.0, "span_position");
  require(extent > 0.0 && extent <= 1.0, "extent");
  require(severity > 0.0 && severity <= 1.0, "severity");
  require(span_position + extent <= 1.05, "span_position+extent");
}

void SceneSpec::validate() const {
  turbine.validate();
  defect.validate();
  camera.validate();
  require(std::abs(norm(light_dir) - 1.0) <= 1e-6, "light_dir");
  require(light_intensity >= 0.3 && light_intensity <= 1.2, "light_intensity");
  require(ambient >= 0.1 && ambient <= 0.5, "ambient");
}

const char* defect_kind_name(DefectKind k) {
  switch (k) {
    case DefectKind::None: return "none";
    case DefectKind::Crack: return "crack";
    case DefectKind::Erosion: return "erosion";
    case DefectKind::Delamination: return "delamination";
    case DefectKind::Lightning: return "lightning";
  }
  return "none";
}

DefectKind defect_kind_from_name(const std::string& name) {
  for (int i = 0; i < kDefectKindCount; ++i)
    if (name == defect_kind_name(static_cast<DefectKind>(i))) return static_cast<DefectKind>(i);
  throw InvalidSpec("unknown defect kind: " + name);
}

void GenerationConfig::validate() const {
  auto chk_range = [](const Range& r, const char* field) {
    if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
      throw InvalidConfig(std::string("GenerationConfig: empty or inverted range: ") + field);
  };
  if (width < 16 || height < 16 || width % 2 || height % 2)
    throw InvalidConfig("GenerationConfig: width/height must be even and >= 16");
  chk_range(cam_distance, "cam_distance");
  if (cam_distance.lo <= 0.0) throw InvalidConfig("GenerationConfig: cam_distance must be positive");
  chk_range(cam_elevation, "cam_elevation");
  chk_range(cam_azimuth_span, "cam_azimuth_span");
  chk_range(fov, "fov");
  if (fov.lo <= 0.1 || fov.hi >= 2.8) throw InvalidConfig("GenerationConfig: fov outside (0.1, 2.8)");
  chk_range(light_elevation, "light_elevation");
  chk_range(light_intensity, "light_intensity");
  if (light_intensity.lo < 0.3 || light_intensity.hi > 1.2)
    throw InvalidConfig("GenerationConfig: light_intensity outside [0.3, 1.2]");
  chk_range(ambient, "ambient");
  if (ambient.lo < 0.1 || ambient.hi > 0.5) throw InvalidConfig("GenerationConfig: ambient outside [0.1, 0.5]");
  if (cam_back_prob < 0.0 || cam_back_prob > 1.0 || terrain_prob < 0.0 || terrain_prob > 1.0)
    throw InvalidConfig("GenerationConfig: probabilities must be in [0,1]");
  chk_range(span_position, "span_position");
  chk_range(delam_span_position, "delam_span_position");
  if (delam_span_position.lo < 0.15)
    throw InvalidConfig("GenerationConfig: delam_span_position.lo < 0.15 breaks the defect-area bound");
  chk_range(extent, "extent");
  if (extent.lo <= 0.0) throw InvalidConfig("GenerationConfig: extent must be positive");
  if (span_position.hi + extent.hi > 1.05 + 1e-12)
    throw InvalidConfig("GenerationConfig: span_position.hi + extent.hi exceeds 1.05");
  chk_range(severity, "severity");
  if (severity.lo <= 0.0 || severity.hi > 1.0) throw InvalidConfig("GenerationConfig: severity outside (0,1]");
  double wsum = 0.0;
  for (double w : defect_mix) {
    if (w < 0.0) throw InvalidConfig("GenerationConfig: negative defect_mix weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw InvalidConfig("GenerationConfig: defect_mix weights must sum to 1");
  turbine.validate();
}

// ---------------------------------------------------------------------------
// primitive builders

namespace {

void add_quad(std::vector<Triangle>& tris, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
              MeshPart part, TriLabel label = TriLabel::Structure) {
  tris.push_back({a, b, c, label, part});
  tris.push_back({a, c, d, label, part});
}

// Open frustum around +Z from z0 to z1.
void add_frustum(std::vector<Triangle>& tris, double r0, double r1, double z0, double z1, int segments,
                 MeshPart part) {
  for (int i = 0; i < segments; ++i) {
    double a0 = 2.0 * kPi * i / segments;
    double a1 = 2.0 * kPi * (i + 1) / segments;
    Vec3 b0{r0 * std::cos(a0), r0 * std::sin(a0), z0};
    Vec3 b1{r0 * std::cos(a1), r0 * std::sin(a1), z0};
    Vec3 t0{r1 * std::cos(a0), r1 * std::sin(a0), z1};
    Vec3 t1{r1 * std::cos(a1), r1 * std::sin(a1), z1};
    add_quad(tris, b0, b1, t1, t0, part);
  }
}

void add_box(std::vector<Triangle>& tris, const Vec3& center, const Vec3& dims, MeshPart part) {
  double hx = dims.x / 2, hy = dims.y / 2, hz = dims.z / 2;
  Vec3 p[8];
  for (int i = 0; i < 8; ++i)
    p[i] = {center.x + ((i & 1) ? hx : -hx), center.y + ((i & 2) ? hy : -hy), center.z + ((i & 4) ? hz : -hz)};
  add_quad(tris, p[0], p[1], p[3], p[2], part);  // bottom
  add_quad(tris, p[4], p[6], p[7], p[5], part);  // top
  add_quad(tris, p[0], p[4], p[5], p[1], part);  // -y
  add_quad(tris, p[2], p[3], p[7], p[6], part);  // +y
  add_quad(tris, p[0], p[2], p[6], p[4], part);  // -x
  add_quad(tris, p[1], p[5], p[7], p[3], part);  // +x
}

void add_sphere(std::vector<Triangle>& tris, const Vec3& center, double radius, MeshPart part) {
  const int az_steps = 12, el_steps = 6;
  auto at = [&](int e, int a) {
    double el = kPi * e / el_steps - kPi / 2;
    double azm = 2.0 * kPi * a / az_steps;
    return center + Vec3{radius * std::cos(el) * std::cos(azm), radius * std::cos(el) * std::sin(azm),
                         radius * std::sin(el)};
  };
  for (int e = 0; e < el_steps; ++e)
    for (int a = 0; a < az_steps; ++a) {
      Vec3 p00 = at(e, a), p01 = at(e, a + 1), p10 = at(e + 1, a), p11 = at(e + 1, a + 1);
      if (e == 0) {
        tris.push_back({p00, p11, p10, TriLabel::Structure, part});  // p00 == pole
      } else if (e == el_steps - 1) {
        tris.push_back({p00, p01, p10, TriLabel::Structure, part});  // p10 == pole
      } else {
        add_quad(tris, p00, p01, p11, p10, part);
      }
    }
}

// ---------------------------------------------------------------------------
// blade construction in local coordinates: chord along X, span along +Y from
// r_root to r_tip, surface normal +Z. The leading edge sits at +chord/2.

enum class CellState : uint8_t { Normal, Defect, Removed };

struct BladeGrid {
  double r_root, r_tip;
  // Vertex z displacement (grooves), indexed (row, col) = (span, chord).
  std::vector<double> vz;
  std::vector<CellState> cells;

  double span_len() const { return r_tip - r_root; }
  double& z_at(int i, int j) { return vz[static_cast<size_t>(i) * (kChordCells + 1) + j]; }
  CellState& cell(int i, int j) { return cells[static_cast<size_t>(i) * kChordCells + j]; }
  CellState cell(int i, int j) const { return cells[static_cast<size_t>(i) * kChordCells + j]; }
};

double chord_at(const TurbineSpec& t, double s) {
  return t.blade_root_chord + (t.blade_tip_chord - t.blade_root_chord) * s;
}

Vec3 grid_vertex(const TurbineSpec& t, const BladeGrid& g, int i, int j) {
  double s = static_cast<double>(i) / kSpanCells;
  double y = g.r_root + s * g.span_len();
  double c = chord_at(t, s);
  double u = static_cast<double>(j) / kChordCells;
  return {(u - 0.5) * c, y, g.vz[static_cast<size_t>(i) * (kChordCells + 1) + j]};
}

void carve_crack(const DefectSpec& d, BladeGrid& g) {
  Rng rng(hash_combine(d.variant_seed, 0xC4ACULL));
  bool from_leading = rng.bernoulli(0.5);
  double slant_sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
  int width_cells = 1 + static_cast<int>(std::floor(d.severity * 1.8));
  double groove = 0.2 + 0.5 * d.severity;

  // Zigzag offsets, one per chord column crossed.
  std::array<double, kChordCells + 1> zig{};
  for (auto& z : zig) z = (rng.uniform() - 0.5) * 0.35;

  const int samples = 256;
  for (int k = 0; k <= samples; ++k) {
    double q = static_cast<double>(k) / samples;
    double u = from_leading ? 1.0 - q : q;
    double zseg = zig[static_cast<size_t>(std::min(kChordCells, static_cast<int>(u * kChordCells)))];
    double s = d.span_position + d.extent * (slant_sign > 0 ? q : 1.0 - q) + zseg * d.extent;
    s = std::clamp(s, 0.0, 1.0 - 1e-9);
    int i = std::min(kSpanCells - 1, static_cast<int>(s * kSpanCells));
    int j = std::min(kChordCells - 1, static_cast<int>(u * kChordCells));
    for (int w = 0; w < width_cells; ++w) {
      int iw = i + w;
      if (iw >= 0 && iw < kSpanCells) g.cell(iw, j) = CellState::Defect;
    }
  }
  // Recess the strip.
  for (int i = 0; i < kSpanCells; ++i)
    for (int j = 0; j < kChordCells; ++j)
      if (g.cell(i, j) == CellState::Defect) {
        g.z_at(i, j) = -groove;
        g.z_at(i + 1, j) = -groove;
        g.z_at(i, j + 1) = -groove;
        g.z_at(i + 1, j + 1) = -groove;
      }
}

void carve_erosion(const DefectSpec& d, BladeGrid& g) {
  Rng rng(hash_combine(d.variant_seed, 0xE705ULL));
  const double max_cut = 0.45 * kChordCells;  // never bite past mid-chord
  int i_lo = std::clamp(static_cast<int>(std::floor(d.span_position * kSpanCells)), 0, kSpanCells - 1);
  int i_hi = std::clamp(static_cast<int>(std::ceil((d.span_position + d.extent) * kSpanCells)) - 1, i_lo,
                        kSpanCells - 1);
  for (int i = i_lo; i <= i_hi; ++i) {
    double jag = 0.35 + 0.65 * rng.uniform();
    int cut = std::max(1, static_cast<int>(std::lround(max_cut * d.severity * jag)));
    cut = std::min(cut, kChordCells - 2);
    for (int j = kChordCells - cut; j < kChordCells; ++j) g.cell(i, j) = CellState::Removed;
    // Weathered rim just inside the notch.
    for (int j = std::max(0, kChordCells - cut - 2); j < kChordCells - cut; ++j)
      g.cell(i, j) = CellState::Defect;
  }
}

void carve_lightning(const TurbineSpec& t, const DefectSpec& d, BladeGrid& g) {
  Rng rng(hash_combine(d.variant_seed, 0x115ULL));
  double s0 = std::clamp(d.span_position + d.extent / 2.0, 0.05, 0.95);
  double y0 = g.r_root + s0 * g.span_len();
  double c0 = chord_at(t, s0);
  double x0 = (rng.uniform(0.3, 0.7) - 0.5) * c0;
  double cell_h = g.span_len() / kSpanCells;
  double r_hole = 0.5 * d.extent * g.span_len() * (0.35 + 0.4 * d.severity);
  r_hole = std::min(r_hole, 0.38 * c0);
  r_hole = std::max(r_hole, 1.3 * cell_h);
  double r_scorch = 1.8 * r_hole;

  for (int i = 0; i < kSpanCells; ++i)
    for (int j = 0; j < kChordCells; ++j) {
      double s = (i + 0.5) / kSpanCells;
      double y = g.r_root + s * g.span_len();
      double c = chord_at(t, s);
      double x = ((j + 0.5) / kChordCells - 0.5) * c;
      double dist = std::hypot(x - x0, y - y0);
      if (dist < r_hole)
        g.cell(i, j) = CellState::Removed;
      else if (dist < r_scorch)
        g.cell(i, j) = CellState::Defect;
    }

  // Degenerate proportions can leave the radii between cell centroids;
  // guarantee a visible strike regardless.
  int i0 = std::clamp(static_cast<int>(s0 * kSpanCells), 1, kSpanCells - 2);
  int j0 = std::clamp(static_cast<int>(((x0 / c0) + 0.5) * kChordCells), 1, kChordCells - 2);
  bool any_removed = false, any_defect = false;
  for (const CellState& cs : g.cells) {
    any_removed |= cs == CellState::Removed;
    any_defect |= cs == CellState::Defect;
  }
  if (!any_removed) g.cell(i0, j0) = CellState::Removed;
  if (!any_defect) {
    if (g.cell(i0 - 1, j0) != CellState::Removed) g.cell(i0 - 1, j0) = CellState::Defect;
    if (g.cell(i0 + 1, j0) != CellState::Removed) g.cell(i0 + 1, j0) = CellState::Defect;
    if (g.cell(i0, j0 - 1) != CellState::Removed) g.cell(i0, j0 - 1) = CellState::Defect;
  }
}

LabeledMesh triangulate_blade(const TurbineSpec& t, const BladeGrid& g) {
  LabeledMesh mesh;
  for (int i = 0; i < kSpanCells; ++i)
    for (int j = 0; j < kChordCells; ++j) {
      CellState st = g.cell(i, j);
      if (st == CellState::Removed) continue;
      TriLabel label = st == CellState::Defect ? TriLabel::Defect : TriLabel::Structure;
      Vec3 v00 = grid_vertex(t, g, i, j);
      Vec3 v01 = grid_vertex(t, g, i, j + 1);
      Vec3 v10 = grid_vertex(t, g, i + 1, j);
      Vec3 v11 = grid_vertex(t, g, i + 1, j + 1);
      mesh.tris.push_back({v00, v10, v11, label, MeshPart::Blade});
      mesh.tris.push_back({v00, v11, v01, label, MeshPart::Blade});
    }
  return mesh;
}

// Builds one blade in local coordinates with the defect applied (if this is
// the defective blade).
LabeledMesh build_blade_local(const TurbineSpec& t, const DefectSpec& d, bool defective) {
  BladeGrid g;
  g.r_root = t.hub_radius;
  g.r_tip = t.hub_radius + t.blade_length;
  g.vz.assign(static_cast<size_t>(kSpanCells + 1) * (kChordCells + 1), 0.0);
  g.cells.assign(static_cast<size_t>(kSpanCells) * kChordCells, CellState::Normal);

  if (defective) {
    switch (d.kind) {
      case DefectKind::Crack:
        carve_crack(d, g);
        break;
      case DefectKind::Erosion:
        carve_erosion(d, g);
        break;
      case DefectKind::Lightning:
        carve_lightning(t, d, g);
        break;
      default:
        break;
    }
  }
  LabeledMesh mesh = triangulate_blade(t, g);
  if (defective && d.kind == DefectKind::Delamination) {
    Rng rng(hash_combine(d.variant_seed, 0xDE1AULL));
    double bend_sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    double twist_sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    double angle = bend_sign * (kPi / 3.0) * (0.2 + 0.75 * d.severity);
    double twist = twist_sign * (kPi / 4.0) * std::min(1.0, 2.2 * d.extent) * 0.8;
    // Cap the pivot so a span_position of 1.0 still deforms (and labels)
    // a few tip rows.
    mesh = apply_bend(mesh, std::min(d.span_position, 0.92), angle, twist);
  }
  return mesh;
}

}  // namespace

LabeledMesh apply_bend(const LabeledMesh& mesh, double pivot, double angle, double twist) {
  if (!(pivot >= 0.0 && pivot <= 1.0)) throw InvalidSpec("invalid field: pivot");
  if (!(std::abs(angle) <= kPi / 3.0 + 1e-12)) throw InvalidSpec("invalid field: angle (|angle| <= pi/3)");
  if (!(std::abs(twist) <= kPi / 4.0 + 1e-12)) throw InvalidSpec("invalid field: twist (|twist| <= pi/4)");
  if (mesh.tris.empty()) return mesh;

  double y_min = mesh.tris[0].a.y, y_max = y_min;
  for (const auto& t : mesh.tris)
    for (const Vec3* v : {&t.a, &t.b, &t.c}) {
      y_min = std::min(y_min, v->y);
      y_max = std::max(y_max, v->y);
    }
  double span = y_max - y_min;
  if (span <= 0.0) return mesh;
  double y_pivot = y_min + pivot * span;
  Vec3 pivot_pt{0.0, y_pivot, 0.0};
  const Vec3 chord_axis{1.0, 0.0, 0.0};
  const Vec3 span_axis{0.0, 1.0, 0.0};

  LabeledMesh out = mesh;
  auto bend_vertex = [&](Vec3& v) {
    if (v.y <= y_pivot) return;
    v = rotate_about_axis(v, pivot_pt, chord_axis, angle);
    v = rotate_about_axis(v, pivot_pt, span_axis, twist);
  };
  for (auto& t : out.tris) {
    double cy = (t.a.y + t.b.y + t.c.y) / 3.0;
    bend_vertex(t.a);
    bend_vertex(t.b);
    bend_vertex(t.c);
    if ((cy - y_min) / span > pivot) t.label = TriLabel::Defect;
  }
  return out;
}

LabeledMesh build_mesh(const TurbineSpec& turbine, const DefectSpec& defect) {
  turbine.validate();
  defect.validate();

  LabeledMesh mesh;
  const double H = turbine.tower_height;
  add_frustum(mesh.tris, turbine.tower_base_radius, turbine.tower_top_radius, 0.0,
              H - turbine.nacelle_dims.z / 2.0, 24, MeshPart::Tower);
  add_box(mesh.tris, {0.0, 0.0, H}, turbine.nacelle_dims, MeshPart::Nacelle);

  const double hub_x = turbine.nacelle_dims.x / 2.0;
  add_sphere(mesh.tris, {hub_x, 0.0, H}, turbine.hub_radius, MeshPart::Hub);
  const Vec3 rotor_center{hub_x + 0.45 * turbine.hub_radius, 0.0, H};

  for (int k = 0; k < 3; ++k) {
    bool defective = defect.kind != DefectKind::None && k == defect.blade_index;
    LabeledMesh blade = build_blade_local(turbine, defect, defective);
    double theta = turbine.rotor_phase + k * (2.0 * kPi / 3.0);
    Vec3 w_span{0.0, std::sin(theta), std::cos(theta)};
    Vec3 w_chord{0.0, std::cos(theta), -std::sin(theta)};
    Vec3 w_norm{1.0, 0.0, 0.0};
    for (auto& t : blade.tris) {
      for (Vec3* v : {&t.a, &t.b, &t.c})
        *v = rotor_center + w_chord * v->x + w_span * v->y + w_norm * v->z;
      mesh.tris.push_back(t);
    }
  }
  return mesh;
}

// World-space point the camera aims at: the middle of the defect patch, or a
// spot partway along blade 0 for defect-free scenes.
static Vec3 defect_anchor(const TurbineSpec& t, const DefectSpec& d) {
  const double H = t.tower_height;
  const Vec3 rotor_center{t.nacelle_dims.x / 2.0 + 0.45 * t.hub_radius, 0.0, H};
  double s;
  int blade;
  if (d.kind == DefectKind::None) {
    s = 0.55;
    blade = 0;
  } else if (d.kind == DefectKind::Delamination) {
    s = std::min(1.0, (d.span_position + 1.0) / 2.0);
    blade = d.blade_index;
  } else {
    s = std::min(1.0, d.span_position + d.extent / 2.0);
    blade = d.blade_index;
  }
  double theta = t.rotor_phase + blade * (2.0 * kPi / 3.0);
  Vec3 w_span{0.0, std::sin(theta), std::cos(theta)};
  double y = t.hub_radius + s * t.blade_length;
  return rotor_center + w_span * y;
}

SceneSpec sample_scene(uint64_t master_seed, int64_t index, const GenerationConfig& config) {
  config.validate();
  Rng rng(hash_combine(master_seed, static_cast<uint64_t>(index)));

  SceneSpec scene;
  scene.master_seed = hash_combine(master_seed, static_cast<uint64_t>(index));
  scene.turbine = config.turbine;
  scene.turbine.rotor_phase = rng.uniform(0.0, 2.0 * kPi);

  // Defect kind from the mix weights.
  double u = rng.uniform();
  double acc = 0.0;
  int picked = -1;
  for (int i = 0; i < kDefectKindCount; ++i) {
    acc += config.defect_mix[static_cast<size_t>(i)];
    if (u < acc) {
      picked = i;
      break;
    }
  }
  if (picked < 0) {  // u landed in the rounding slack past the last weight
    for (int i = kDefectKindCount - 1; i >= 0; --i)
      if (config.defect_mix[static_cast<size_t>(i)] > 0.0) {
        picked = i;
        break;
      }
  }
  scene.defect.kind = static_cast<DefectKind>(std::max(picked, 0));
  scene.defect.blade_index = rng.uniform_int(0, 2);
  const Range& span_r = kind == DefectKind::Delamination ? config.delam_span_position : config.span_position;
  scene.defect.span_position = rng.uniform(span_r.lo, span_r.hi);
  scene.defect.extent = rng.uniform(config.extent.lo, config.extent.hi);
  if (scene.defect.span_position + scene.defect.extent > 1.05)
    scene.defect.extent = 1.05 - scene.defect.span_position;
  scene.defect.severity = rng.uniform(config.severity.lo, config.severity.hi);
  scene.defect.variant_seed = rng.next_u64();

  // Camera: orbit the defect anchor.
  Vec3 anchor = defect_anchor(scene.turbine, scene.defect);
  double jr = 0.04 * scene.turbine.blade_length;
  Vec3 look_at = anchor + Vec3{rng.uniform(-jr, jr), rng.uniform(-jr, jr), rng.uniform(-jr, jr)};
  double az = rng.uniform(config.cam_azimuth_span.lo, config.cam_azimuth_span.hi);
  if (rng.bernoulli(config.cam_back_prob)) az += kPi;
  double elev = rng.uniform(config.cam_elevation.lo, config.cam_elevation.hi);
  double dist = rng.uniform(config.cam_distance.lo, config.cam_distance.hi);
  Vec3 dir{std::cos(elev) * std::cos(az), std::cos(elev) * std::sin(az), std::sin(elev)};
  scene.camera.eye = look_at + dir * dist;
  scene.camera.look_at = look_at;
  scene.camera.up = {0.0, 0.0, 1.0};
  scene.camera.vertical_fov = rng.uniform(config.fov.lo, config.fov.hi);
  scene.camera.image_width = config.width;
  scene.camera.image_height = config.height;

  double laz = rng.uniform(0.0, 2.0 * kPi);
  double lel = rng.uniform(config.light_elevation.lo, config.light_elevation.hi);
  scene.light_dir = normalized({std::cos(lel) * std::cos(laz), std::cos(lel) * std::sin(laz), std::sin(lel)});
  scene.light_intensity = rng.uniform(config.light_intensity.lo, config.light_intensity.hi);
  scene.ambient = rng.uniform(config.ambient.lo, config.ambient.hi);
  scene.background_mode = rng.bernoulli(config.terrain_prob) ? BackgroundMode::Terrain : BackgroundMode::Panorama;
  scene.background_seed = rng.next_u64();
  return scene;
}

// ---------------------------------------------------------------------------
// presets

const std::vector<DefectSpec>& default_presets() {
  // 10 variants per kind. Severities step by 0.06 so same-kind pairs always
  // differ by more than 0.05 in at least one field.
  static const std::vector<DefectSpec> presets = [] {
    std::vector<DefectSpec> p;
    const DefectKind kinds[4] = {DefectKind::Crack, DefectKind::Erosion, DefectKind::Delamination,
                                 DefectKind::Lightning};
    for (int ki = 0; ki < 4; ++ki) {
      DefectKind kind = kinds[ki];
      for (int v = 0; v < 10; ++v) {
        DefectSpec d;
        d.kind = kind;
        d.blade_index = v % 3;
        double sp_lo = kind == DefectKind::Delamination ? 0.35 : 0.10;
        double sp_hi = kind == DefectKind::Delamination ? 0.72 : 0.68;
        // Walk span back and forth so consecutive variants sit apart.
        double frac = (v % 2 == 0) ? v / 9.0 : 1.0 - v / 9.0;
        d.span_position = std::round((sp_lo + frac * (sp_hi - sp_lo)) * 100.0) / 100.0;
        d.extent = std::round((0.14 + 0.02 * ((v * 3) % 10)) * 100.0) / 100.0;
        d.severity = 0.25 + 0.06 * v;
        d.variant_seed = 1000ULL * (ki + 1) + static_cast<uint64_t>(v);
        p.push_back(d);
      }
    }
    return p;
  }();
  return presets;
}

std::string format_preset_table(const std::vector<DefectSpec>& presets) {
  std::string out = "# defect presets: kind blade_index span_position extent severity variant_seed\n";
  char buf[160];
  for (const auto& d : presets) {
    std::snprintf(buf, sizeof(buf), "%s %d %.4f %.4f %.4f %llu\n", defect_kind_name(d.kind), d.blade_index,
                  d.span_position, d.extent, d.severity, static_cast<unsigned long long>(d.variant_seed));
    out += buf;
  }
  return out;
}

std::vector<DefectSpec> parse_preset_table(const std::string& text) {
  std::vector<DefectSpec> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kind_name;
    if (!(ls >> kind_name)) continue;  // blank line
    DefectSpec d;
    d.kind = defect_kind_from_name(kind_name);
    unsigned long long seed = 0;
    if (!(ls >> d.blade_index >> d.span_position >> d.extent >> d.severity >> seed))
      throw InvalidSpec("preset table line " + std::to_string(lineno) + ": expected 6 fields");
    d.variant_seed = seed;
    d.validate();
    out.push_back(d);
  }
  return out;
}

}  // namespace bladeseg
