#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bladeseg/camera.hpp"
#include "bladeseg/mesh.hpp"

namespace bladeseg {

// Lengths are abstract units; defaults follow the reference turbine
// (hub center at 380, rotor diameter 200).
struct TurbineSpec {
  double tower_height = 380.0;  // height of the hub center
  double tower_base_radius = 14.0;
  double tower_top_radius = 9.0;
  Vec3 nacelle_dims{36.0, 14.0, 14.0};  // x along the rotor axis
  double hub_radius = 6.0;
  double blade_length = 94.0;  // measured from the hub surface
  double blade_root_chord = 13.0;
  double blade_tip_chord = 4.5;
  double rotor_phase = 0.0;  // radians; blades at phase + {0, 2pi/3, 4pi/3}

  void validate() const;
};

enum class DefectKind : uint8_t { None = 0, Crack = 1, Erosion = 2, Delamination = 3, Lightning = 4 };

constexpr int kDefectKindCount = 5;

const char* defect_kind_name(DefectKind k);
DefectKind defect_kind_from_name(const std::string& name);

struct DefectSpec {
  DefectKind kind = DefectKind::None;
  int blade_index = 0;          // {0,1,2}
  double span_position = 0.4;   // fraction along the blade span
  double extent = 0.2;          // span fraction the defect occupies
  double severity = 0.5;        // depth/width/bend magnitude, in (0,1]
  uint64_t variant_seed = 0;    // fully determines the defect's jitter

  void validate() const;
};

enum class BackgroundMode : uint8_t { Terrain = 0, Panorama = 1 };

struct SceneSpec {
  TurbineSpec turbine;
  DefectSpec defect;
  CameraSpec camera;
  Vec3 light_dir{0.3, 0.2, 0.93};  // unit, surface-to-light
  double light_intensity = 0.9;    // [0.3, 1.2]
  double ambient = 0.25;           // [0.1, 0.5]
  BackgroundMode background_mode = BackgroundMode::Terrain;
  uint64_t background_seed = 0;
  uint64_t master_seed = 0;  // the per-sample seed this scene was drawn with

  void validate() const;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Randomization policy for sample_scene. The paper leaves Unity's camera and
// lighting setup unstated; these defaults are the documented stand-in.
struct GenerationConfig {
  int width = 128;
  int height = 128;
  Range cam_distance{60.0, 200.0};
  Range cam_elevation{-0.12, 0.55};     // radians above horizontal
  Range cam_azimuth_span{-1.25, 1.25};  // offset around the rotor axis
  double cam_back_prob = 0.30;          // chance of viewing from behind the rotor plane
  Range fov{0.55, 1.05};
  Range light_elevation{0.35, 1.40};
  Range light_intensity{0.55, 1.20};
  Range ambient{0.15, 0.40};
  double terrain_prob = 0.5;
  Range span_position{0.10, 0.70};
  Range delam_span_position{0.35, 0.75};  // bends start further out; keeps defect area bounded
  Range extent{0.12, 0.35};
  Range severity{0.25, 0.90};
  // Draw weights indexed by DefectKind, summing to 1.
  std::array<double, kDefectKindCount> defect_mix{0.0, 0.25, 0.25, 0.25, 0.25};
  TurbineSpec turbine;

  void validate() const;
};

// Builds the full turbine as a labeled triangle soup and applies the defect
// to the selected blade. Pure function of its arguments.
LabeledMesh build_mesh(const TurbineSpec& turbine, const DefectSpec& defect);

// Bends/twists the outboard part of a blade-local mesh (span along +Y).
// Vertices with span fraction > pivot rotate rigidly about the chord axis
// through the pivot cross-section (bend), then about the span axis (twist).
// Triangles whose centroid lies beyond the pivot are relabeled Defect.
LabeledMesh apply_bend(const LabeledMesh& mesh, double pivot, double angle, double twist);

// Draws one randomized scene. Per-sample seed = hash(master_seed, index),
// so samples are independent and order-insensitive.
SceneSpec sample_scene(uint64_t master_seed, int64_t index, const GenerationConfig& config);

// The 40 shipped defect presets: 10 variants per kind.
const std::vector<DefectSpec>& default_presets();

// Text table, one preset per line:
//   kind blade_index span_position extent severity variant_seed
std::string format_preset_table(const std::vector<DefectSpec>& presets);
std::vector<DefectSpec> parse_preset_table(const std::string& text);

}  // namespace bladeseg
