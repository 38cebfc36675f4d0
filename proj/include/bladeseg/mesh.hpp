#pragma once

#include <cstdint>
#include <vector>

#include "bladeseg/geom.hpp"

namespace bladeseg {

enum class TriLabel : uint8_t { Structure = 0, Defect = 1 };

// Which turbine component a triangle came from. Drives the base albedo and
// lets tests measure blade area without re-deriving geometry.
enum class MeshPart : uint8_t { Tower = 0, Nacelle = 1, Hub = 2, Blade = 3 };

struct Triangle {
  Vec3 a, b, c;
  TriLabel label = TriLabel::Structure;
  MeshPart part = MeshPart::Blade;
};

inline double triangle_area(const Triangle& t) {
  return 0.5 * norm(cross(t.b - t.a, t.c - t.a));
}

struct LabeledMesh {
  std::vector<Triangle> tris;

  double total_area() const {
    double a = 0.0;
    for (const auto& t : tris) a += triangle_area(t);
    return a;
  }

  double area_where(TriLabel label) const {
    double a = 0.0;
    for (const auto& t : tris)
      if (t.label == label) a += triangle_area(t);
    return a;
  }

  double area_where(MeshPart part) const {
    double a = 0.0;
    for (const auto& t : tris)
      if (t.part == part) a += triangle_area(t);
    return a;
  }

  size_t count_where(TriLabel label) const {
    size_t n = 0;
    for (const auto& t : tris) n += (t.label == label);
    return n;
  }
};

}  // namespace bladeseg
