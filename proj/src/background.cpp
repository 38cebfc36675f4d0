#include <algorithm>
#include <cmath>

#include "bladeseg/renderer.hpp"
#include "bladeseg/rng.hpp"

namespace bladeseg {

namespace {

double hash01(uint64_t seed, int64_t ix, int64_t iy, int64_t iz) {
  uint64_t h = hash_combine(seed, static_cast<uint64_t>(ix) * 0x8da6b343ULL ^
                                      static_cast<uint64_t>(iy) * 0xd8163841ULL ^
                                      static_cast<uint64_t>(iz) * 0xcb1ab31fULL);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise2(uint64_t seed, double x, double y) {
  double fx = std::floor(x), fy = std::floor(y);
  int64_t ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy);
  double tx = smooth(x - fx), ty = smooth(y - fy);
  double v00 = hash01(seed, ix, iy, 0), v10 = hash01(seed, ix + 1, iy, 0);
  double v01 = hash01(seed, ix, iy + 1, 0), v11 = hash01(seed, ix + 1, iy + 1, 0);
  double a = v00 + (v10 - v00) * tx;
  double b = v01 + (v11 - v01) * tx;
  return a + (b - a) * ty;
}

double value_noise3(uint64_t seed, double x, double y, double z) {
  double fx = std::floor(x), fy = std::floor(y), fz = std::floor(z);
  int64_t ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy), iz = static_cast<int64_t>(fz);
  double tx = smooth(x - fx), ty = smooth(y - fy), tz = smooth(z - fz);
  double v[2];
  for (int k = 0; k < 2; ++k) {
    double v00 = hash01(seed, ix, iy, iz + k), v10 = hash01(seed, ix + 1, iy, iz + k);
    double v01 = hash01(seed, ix, iy + 1, iz + k), v11 = hash01(seed, ix + 1, iy + 1, iz + k);
    double a = v00 + (v10 - v00) * tx;
    double b = v01 + (v11 - v01) * tx;
    v[k] = a + (b - a) * ty;
  }
  return v[0] + (v[1] - v[0]) * tz;
}

double fbm2(uint64_t seed, double x, double y) {
  return 0.5714285714285714 * (value_noise2(seed, x, y) + 0.5 * value_noise2(seed ^ 0x51ed, 2 * x, 2 * y) +
                               0.25 * value_noise2(seed ^ 0xa3c9, 4 * x, 4 * y));
}

double fbm3(uint64_t seed, double x, double y, double z) {
  return 0.5714285714285714 *
         (value_noise3(seed, x, y, z) + 0.5 * value_noise3(seed ^ 0x51ed, 2 * x, 2 * y, 2 * z) +
          0.25 * value_noise3(seed ^ 0xa3c9, 4 * x, 4 * y, 4 * z));
}

struct Rgb {
  double r, g, b;
};

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

Rgb scale(const Rgb& a, double s) { return {a.r * s, a.g * s, a.b * s}; }

double smoothstep(double lo, double hi, double x) {
  double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
  return smooth(t);
}

// Seed-jittered palette. Blues stay clearly above reds in the sky and below
// greens on the ground so palette membership is testable.
struct Palette {
  Rgb zenith, horizon, grass, mud, cloud;
};

Palette make_palette(uint64_t seed) {
  Rng rng(hash_combine(seed, 0xBA1E77EULL));
  Palette p;
  p.zenith = {0.22 + 0.12 * rng.uniform(), 0.37 + 0.12 * rng.uniform(), 0.72 + 0.14 * rng.uniform()};
  p.horizon = {0.70 + 0.08 * rng.uniform(), 0.77 + 0.08 * rng.uniform(), 0.85 + 0.08 * rng.uniform()};
  p.grass = {0.18 + 0.08 * rng.uniform(), 0.34 + 0.12 * rng.uniform(), 0.12 + 0.06 * rng.uniform()};
  p.mud = {0.38 + 0.10 * rng.uniform(), 0.30 + 0.08 * rng.uniform(), 0.18 + 0.06 * rng.uniform()};
  p.cloud = {0.90 + 0.06 * rng.uniform(), 0.90 + 0.06 * rng.uniform(), 0.92 + 0.06 * rng.uniform()};
  return p;
}

uint8_t to_byte(double v) {
  long q = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
  return static_cast<uint8_t>(std::clamp(q, 0L, 255L));
}

Rgb terrain_pixel(const Palette& pal, uint64_t seed, const Vec3& eye, const Vec3& d) {
  if (d.z >= 0.0) {
    double t = std::pow(std::clamp(d.z, 0.0, 1.0), 0.65);
    return lerp(pal.horizon, pal.zenith, t);
  }
  if (eye.z <= 0.0) return scale(pal.mud, 0.8);
  double t_hit = -eye.z / d.z;
  double gx = eye.x + d.x * t_hit;
  double gy = eye.y + d.y * t_hit;
  double patch = fbm2(hash_combine(seed, 1), gx * 0.025, gy * 0.025);
  double bright = fbm2(hash_combine(seed, 2), gx * 0.11 + 7.3, gy * 0.11 - 3.1);
  Rgb ground = scale(lerp(pal.grass, pal.mud, patch), 0.82 + 0.36 * bright);
  double fade = std::exp(-t_hit / 900.0);  // aerial haze toward the horizon
  return lerp(pal.horizon, ground, fade);
}

Rgb panorama_pixel(const Palette& pal, uint64_t seed, const Vec3& d) {
  double el = std::asin(std::clamp(d.z, -1.0, 1.0));
  // Sky with noise clouds.
  double t = std::pow(std::clamp(el, 0.0, 1.5707963267948966) / 1.5707963267948966, 0.8);
  Rgb sky = lerp(pal.horizon, pal.zenith, t);
  double cn = fbm3(hash_combine(seed, 3), d.x * 2.4, d.y * 2.4, d.z * 1.6 + 10.0);
  sky = lerp(sky, pal.cloud, smoothstep(0.52, 0.72, cn));
  // Distant rolling ground.
  double hn = fbm3(hash_combine(seed, 4), d.x * 1.8, d.y * 1.8, 3.7);
  Rgb hills = scale(lerp(pal.grass, pal.mud, hn), 0.62 + 0.38 * std::min(1.0, -el / 0.8));
  if (el >= 0.02) return sky;
  if (el <= -0.02) return hills;
  return lerp(hills, sky, (el + 0.02) / 0.04);
}

}  // namespace

ImageRGB synth_background(BackgroundMode mode, uint64_t seed, const CameraSpec& camera) {
  const CameraBasis cam = make_camera_basis(camera);
  const Palette pal = make_palette(seed);
  ImageRGB img;
  img.width = cam.width;
  img.height = cam.height;
  img.pixels.assign(static_cast<size_t>(cam.width) * cam.height * 3, 0);

#pragma omp parallel for schedule(static)
  for (int py = 0; py < cam.height; ++py) {
    uint8_t* row = img.pixels.data() + static_cast<size_t>(py) * cam.width * 3;
    for (int px = 0; px < cam.width; ++px) {
      Vec3 d = normalized(cam.forward + cam.right * ((px + 0.5 - cam.width / 2.0) / cam.focal_px) +
                          cam.up * ((cam.height / 2.0 - (py + 0.5)) / cam.focal_px));
      Rgb c = mode == BackgroundMode::Terrain ? terrain_pixel(pal, seed, cam.eye, d)
                                              : panorama_pixel(pal, seed, d);
      row[3 * px] = to_byte(c.r);
      row[3 * px + 1] = to_byte(c.g);
      row[3 * px + 2] = to_byte(c.b);
    }
  }
  return img;
}

}  // namespace bladeseg
