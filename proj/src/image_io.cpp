#include "bladeseg/image_io.hpp"

#include <fstream>

namespace bladeseg {

namespace {

struct Parser {
  const std::vector<uint8_t>& bytes;
  size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }

  // Skips whitespace and '#' comments (to end of line).
  void skip_space() {
    while (!eof()) {
      uint8_t c = bytes[pos];
      if (c == '#') {
        while (!eof() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        break;
      }
    }
  }

  int read_int(const char* what) {
    skip_space();
    if (eof() || bytes[pos] < '0' || bytes[pos] > '9')
      throw MalformedHeader(std::string("netpbm header: expected integer for ") + what);
    long v = 0;
    while (!eof() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1 << 26) throw MalformedHeader(std::string("netpbm header: absurd value for ") + what);
      ++pos;
    }
    return static_cast<int>(v);
  }
};

// Header shared by P5/P6: magic, width, height, maxval, one whitespace byte.
void parse_header(Parser& p, char kind, int& w, int& h) {
  if (p.bytes.size() < 2 || p.bytes[0] != 'P' || p.bytes[1] != kind)
    throw MalformedHeader(std::string("netpbm header: magic is not P") + kind);
  p.pos = 2;
  w = p.read_int("width");
  h = p.read_int("height");
  int maxval = p.read_int("maxval");
  if (w < 1 || h < 1) throw MalformedHeader("netpbm header: non-positive dimensions");
  if (maxval != 255) throw MalformedHeader("netpbm header: maxval " + std::to_string(maxval) + ", want 255");
  if (p.eof()) throw TruncatedPayload("netpbm: missing payload");
  uint8_t c = p.bytes[p.pos];
  if (c != ' ' && c != '\t' && c != '\r' && c != '\n')
    throw MalformedHeader("netpbm header: maxval not followed by whitespace");
  ++p.pos;
}

std::vector<uint8_t> header_bytes(const char* magic, int w, int h) {
  std::string head = std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  return {head.begin(), head.end()};
}

}  // namespace

std::vector<uint8_t> write_image_ppm(const ImageRGB& img) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<size_t>(img.width) * img.height * 3)
    throw IoError("write_image_ppm: inconsistent image dimensions");
  std::vector<uint8_t> out = header_bytes("P6", img.width, img.height);
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

ImageRGB read_image_ppm(const std::vector<uint8_t>& bytes) {
  Parser p{bytes};
  ImageRGB img;
  parse_header(p, '6', img.width, img.height);
  size_t need = static_cast<size_t>(img.width) * img.height * 3;
  if (bytes.size() - p.pos < need)
    throw TruncatedPayload("P6 payload: have " + std::to_string(bytes.size() - p.pos) + " bytes, need " +
                           std::to_string(need));
  img.pixels.assign(bytes.begin() + static_cast<long>(p.pos), bytes.begin() + static_cast<long>(p.pos + need));
  return img;
}

std::vector<uint8_t> write_mask_pgm(const MaskImage& mask) {
  if (mask.width < 1 || mask.height < 1 ||
      mask.pixels.size() != static_cast<size_t>(mask.width) * mask.height)
    throw IoError("write_mask_pgm: inconsistent mask dimensions");
  for (uint8_t v : mask.pixels)
    if (v != 0 && v != 255) throw IoError("write_mask_pgm: mask value " + std::to_string(v) + " not in {0,255}");
  std::vector<uint8_t> out = header_bytes("P5", mask.width, mask.height);
  out.insert(out.end(), mask.pixels.begin(), mask.pixels.end());
  return out;
}

MaskImage read_mask_pgm(const std::vector<uint8_t>& bytes) {
  Parser p{bytes};
  MaskImage mask;
  parse_header(p, '5', mask.width, mask.height);
  size_t need = static_cast<size_t>(mask.width) * mask.height;
  if (bytes.size() - p.pos < need)
    throw TruncatedPayload("P5 payload: have " + std::to_string(bytes.size() - p.pos) + " bytes, need " +
                           std::to_string(need));
  mask.pixels.assign(bytes.begin() + static_cast<long>(p.pos), bytes.begin() + static_cast<long>(p.pos + need));
  return mask;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::streamsize n = f.tellg();
  f.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(n));
  if (n > 0 && !f.read(reinterpret_cast<char*>(bytes.data()), n)) throw IoError("read failed: " + path);
  return bytes;
}

}  // namespace bladeseg
