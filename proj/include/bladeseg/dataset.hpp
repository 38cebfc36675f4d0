#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bladeseg/optim.hpp"
#include "bladeseg/scene.hpp"

namespace bladeseg {

inline constexpr const char* kGeneratorVersion = "0.1.0";

struct SampleRecord {
  std::string id;          // zero-padded, unique, manifest is ordered by it
  std::string image_path;  // relative to the dataset dir
  std::string mask_path;
  DefectKind defect_kind = DefectKind::None;
  SceneSpec scene;  // embedded for exact replay
};

struct Manifest {
  std::vector<SampleRecord> records;
  uint64_t master_seed = 0;
  std::string generator_version = kGeneratorVersion;
  int width = 0, height = 0;
};

// Renders `count` scenes drawn from (master_seed, index) and persists them as
//   out_dir/img/<id>.ppm, out_dir/mask/<id>.pgm, out_dir/manifest.jsonl
// Sample generation is parallel across indices; the manifest (and therefore
// every byte on disk) is identical for any thread count.
Manifest generate_dataset(const GenerationConfig& config, int count, uint64_t master_seed,
                          const std::string& out_dir);

// Manifest serialization: JSON lines, UTF-8. First line is a header object
// (master_seed, generator_version, width, height); each following line is
// one record with keys in fixed order.
void save_manifest(const Manifest& manifest, const std::string& path);
Manifest load_manifest(const std::string& path);

// Scene (de)serialization used inside the manifest; doubles round-trip
// exactly.
std::string scene_to_json(const SceneSpec& scene);
SceneSpec scene_from_json(const std::string& json_text);

struct SplitResult {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// Deterministic shuffle of the id list; train gets floor(fraction * N).
SplitResult split(const Manifest& manifest, double train_fraction, uint64_t seed);

// k disjoint folds covering all ids; the first (N mod k) folds get the
// extra element.
std::vector<std::vector<std::string>> kfold(const Manifest& manifest, int k, uint64_t seed);

// Loads images/masks for the given ids (in the given order) into training
// samples: RGB scaled to [0,1], mask thresholded to {0,1}.
std::vector<TrainSample> load_samples(const Manifest& manifest, const std::string& dataset_dir,
                                      const std::vector<std::string>& ids);

inline std::vector<std::string> all_ids(const Manifest& m) {
  std::vector<std::string> ids;
  ids.reserve(m.records.size());
  for (const auto& r : m.records) ids.push_back(r.id);
  return ids;
}

}  // namespace bladeseg
