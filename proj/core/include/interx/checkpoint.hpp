#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace interx {

/// Persisted progress of a scheme-1 campaign. Samples [0, completed) are done;
/// histogram[k] counts those whose highest survived level is k.
struct Checkpoint {
  std::uint64_t config_digest = 0;
  std::uint64_t base_seed = 0;
  std::uint64_t completed = 0;
  std::vector<std::uint64_t> histogram;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Writes atomically (temp file + rename). The file ends with a checksum line.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

/// Throws DataError on a malformed or corrupted file.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace interx
