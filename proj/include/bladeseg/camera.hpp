#pragma once

#include <string>

#include "bladeseg/errors.hpp"
#include "bladeseg/geom.hpp"

namespace bladeseg {

struct CameraSpec {
  Vec3 eye;
  Vec3 look_at;
  Vec3 up{0.0, 0.0, 1.0};
  double vertical_fov = 0.8;  // radians
  int image_width = 128;
  int image_height = 128;

  void validate() const {
    if (norm(look_at - eye) < 1e-12) throw InvalidSpec("CameraSpec: eye equals look_at");
    if (vertical_fov <= 0.1 || vertical_fov >= 2.8)
      throw InvalidSpec("CameraSpec: vertical_fov " + std::to_string(vertical_fov) + " outside (0.1, 2.8)");
    if (image_width < 16 || image_height < 16 || image_width % 2 || image_height % 2)
      throw InvalidSpec("CameraSpec: image_width/image_height must be even and >= 16");
    if (norm(up) < 1e-12) throw InvalidSpec("CameraSpec: up vector is zero");
  }
};

// Right-handed orthonormal camera basis; world up is +Z.
struct CameraBasis {
  Vec3 eye;
  Vec3 right, up, forward;
  double focal_px;  // (H/2) / tan(fov/2); square pixels
  int width, height;
};

inline CameraBasis make_camera_basis(const CameraSpec& cam) {
  cam.validate();
  CameraBasis b;
  b.eye = cam.eye;
  b.forward = normalized(cam.look_at - cam.eye);
  Vec3 r = cross(b.forward, normalized(cam.up));
  if (norm(r) < 1e-9) throw InvalidSpec("CameraSpec: up is parallel to the view direction");
  b.right = normalized(r);
  b.up = cross(b.right, b.forward);
  b.focal_px = (cam.image_height / 2.0) / std::tan(cam.vertical_fov / 2.0);
  b.width = cam.image_width;
  b.height = cam.image_height;
  return b;
}

struct Projected {
  double x, y;    // continuous pixel coordinates, origin top-left
  double depth;   // distance along camera forward; negative = behind eye
};

// Perspective projection. Points behind the eye get a negative depth and
// must be clipped before rasterization.
inline Projected project(const Vec3& point, const CameraBasis& b) {
  Vec3 d = point - b.eye;
  double zc = dot(d, b.forward);
  if (zc <= 0.0) return {0.0, 0.0, zc == 0.0 ? -1e-300 : zc};
  double xc = dot(d, b.right);
  double yc = dot(d, b.up);
  return {b.width / 2.0 + b.focal_px * xc / zc, b.height / 2.0 - b.focal_px * yc / zc, zc};
}

inline Projected project(const Vec3& point, const CameraSpec& cam) {
  return project(point, make_camera_basis(cam));
}

}  // namespace bladeseg
