#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bladeseg/errors.hpp"

namespace bladeseg {

struct ImageRGB {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major, interleaved RGB

  uint8_t& at(int y, int x, int ch) { return pixels[(static_cast<size_t>(y) * width + x) * 3 + ch]; }
  uint8_t at(int y, int x, int ch) const { return pixels[(static_cast<size_t>(y) * width + x) * 3 + ch]; }
};

struct MaskImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // 0 = non-defect, 255 = defect

  uint8_t& at(int y, int x) { return pixels[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int y, int x) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

// Binary PPM (P6, maxval 255) / PGM (P5, maxval 255). Writers emit the
// canonical header "P6\n<w> <h>\n255\n"; readers accept comments and any
// whitespace. Round trips are byte-exact.
std::vector<uint8_t> write_image_ppm(const ImageRGB& img);
ImageRGB read_image_ppm(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> write_mask_pgm(const MaskImage& mask);
MaskImage read_mask_pgm(const std::vector<uint8_t>& bytes);

// File helpers. Throw IoError with the path in the message.
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);
std::vector<uint8_t> read_file(const std::string& path);

inline void write_image_ppm_file(const ImageRGB& img, const std::string& path) {
  write_file(path, write_image_ppm(img));
}
inline ImageRGB read_image_ppm_file(const std::string& path) { return read_image_ppm(read_file(path)); }
inline void write_mask_pgm_file(const MaskImage& mask, const std::string& path) {
  write_file(path, write_mask_pgm(mask));
}
inline MaskImage read_mask_pgm_file(const std::string& path) { return read_mask_pgm(read_file(path)); }

}  // namespace bladeseg
