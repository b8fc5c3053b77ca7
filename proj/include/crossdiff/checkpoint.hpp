#ifndef CROSSDIFF_CHECKPOINT_HPP
#define CROSSDIFF_CHECKPOINT_HPP

// Binary state snapshots:
//   "CDL1" | int32 nx | int32 ny | int32 m | float64 h | float64 t | m*(nx+1)*(ny+1) float64
// all little-endian, values in Field storage order.

#include <filesystem>
#include <string>

#include "crossdiff/grid.hpp"

namespace crossdiff {

struct Checkpoint {
  Field state;
  double t;
};

std::string encode_checkpoint(const Field& state, double t);
Checkpoint decode_checkpoint(const std::string& bytes);

/// Written atomically (temporary file, then rename).
void write_checkpoint(const std::filesystem::path& path, const Field& state, double t);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Replaces `path` with `contents` via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace crossdiff

#endif  // CROSSDIFF_CHECKPOINT_HPP
