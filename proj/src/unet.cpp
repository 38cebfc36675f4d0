#include "bladeseg/unet.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace bladeseg {

std::vector<LayerPlanEntry> unet_layer_plan(const UNetConfig& cfg) {
  cfg.validate();
  std::vector<LayerPlanEntry> plan;
  auto width = [&](int lvl) { return cfg.base_channels << lvl; };

  for (int lvl = 0; lvl < cfg.depth; ++lvl) {
    int in = lvl == 0 ? cfg.in_channels : width(lvl - 1);
    plan.push_back({LayerKind::Conv3x3, in, width(lvl)});
    plan.push_back({LayerKind::Conv3x3, width(lvl), width(lvl)});
  }
  plan.push_back({LayerKind::Conv3x3, width(cfg.depth - 1), width(cfg.depth)});
  plan.push_back({LayerKind::Conv3x3, width(cfg.depth), width(cfg.depth)});
  for (int lvl = cfg.depth - 1; lvl >= 0; --lvl) {
    plan.push_back({LayerKind::UpConv2x2, width(lvl + 1), width(lvl)});
    plan.push_back({LayerKind::Conv3x3, 2 * width(lvl), width(lvl)});
    plan.push_back({LayerKind::Conv3x3, width(lvl), width(lvl)});
  }
  plan.push_back({LayerKind::Conv1x1, width(0), cfg.out_channels});
  return plan;
}

int64_t param_count(const UNetConfig& cfg) {
  int64_t n = 0;
  for (const auto& e : unet_layer_plan(cfg)) {
    int64_t w = 1;
    for (int d : detail::layer_weight_shape(e)) w *= d;
    n += w + e.out_ch;
  }
  return n;
}

namespace {

constexpr char kMagic[4] = {'U', 'N', 'E', 'T'};

void put_u32(std::ofstream& f, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::ifstream& f) {
  unsigned char b[4];
  if (!f.read(reinterpret_cast<char*>(b), 4)) throw TruncatedFile("model file: truncated header");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) | (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

void save_model(const UNetParams& params, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("save_model: cannot open " + path);
  f.write(kMagic, 4);
  put_u32(f, kModelFormatVersion);
  put_u32(f, static_cast<uint32_t>(params.config.depth));
  put_u32(f, static_cast<uint32_t>(params.config.base_channels));
  put_u32(f, static_cast<uint32_t>(params.config.in_channels));
  put_u32(f, static_cast<uint32_t>(params.config.out_channels));
  // Little-endian float32 payload. x86/aarch64 are both little-endian;
  // writing raw floats keeps save->load bit-exact.
  static_assert(sizeof(float) == 4);
  for (const auto& l : params.layers) {
    f.write(reinterpret_cast<const char*>(l.weight.data()), static_cast<std::streamsize>(l.weight.size() * 4));
    f.write(reinterpret_cast<const char*>(l.bias.data()), static_cast<std::streamsize>(l.bias.size() * 4));
  }
  if (!f) throw IoError("save_model: write failed for " + path);
}

UNetParams load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("load_model: cannot open " + path);
  char magic[4];
  if (!f.read(magic, 4)) throw TruncatedFile("model file: shorter than magic");
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw BadMagic("model file: bad magic '" + std::string(magic, 4) + "', want 'UNET'");
  uint32_t version = get_u32(f);
  if (version != kModelFormatVersion)
    throw VersionMismatch("model file: format version " + std::to_string(version) + ", want " +
                          std::to_string(kModelFormatVersion));
  UNetConfig cfg;
  cfg.depth = static_cast<int>(get_u32(f));
  cfg.base_channels = static_cast<int>(get_u32(f));
  cfg.in_channels = static_cast<int>(get_u32(f));
  cfg.out_channels = static_cast<int>(get_u32(f));
  cfg.validate();

  UNetParams p;
  p.config = cfg;
  for (const auto& e : unet_layer_plan(cfg)) {
    UNetLayer<float> layer;
    layer.kind = e.kind;
    layer.weight = Tensor<float>(detail::layer_weight_shape(e));
    layer.bias = Tensor<float>({e.out_ch});
    if (!f.read(reinterpret_cast<char*>(layer.weight.data()), static_cast<std::streamsize>(layer.weight.size() * 4)))
      throw TruncatedFile("model file: truncated weight tensor");
    if (!f.read(reinterpret_cast<char*>(layer.bias.data()), static_cast<std::streamsize>(layer.bias.size() * 4)))
      throw TruncatedFile("model file: truncated bias tensor");
    p.layers.push_back(std::move(layer));
  }
  // Reject trailing garbage so truncation tests cut from a canonical file.
  char extra;
  if (f.read(&extra, 1)) throw MalformedHeader("model file: trailing bytes after last tensor");
  return p;
}

}  // namespace bladeseg
