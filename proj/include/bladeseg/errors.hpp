#pragma once

#include <stdexcept>

namespace bladeseg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scene / config validation.
struct InvalidSpec : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };

// Tensor ops.
struct ShapeMismatch : Error { using Error::Error; };
struct OddSpatialDims : Error { using Error::Error; };

// Image decoding.
struct MalformedHeader : Error { using Error::Error; };
struct TruncatedPayload : Error { using Error::Error; };

// Model files.
struct BadMagic : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };
struct TruncatedFile : Error { using Error::Error; };

// Dataset / evaluation.
struct InvalidK : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace bladeseg
