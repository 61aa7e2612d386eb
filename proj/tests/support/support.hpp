#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interx/io.hpp"
#include "interx/multilevel.hpp"

namespace interx::testing {

inline constexpr unsigned kRight = 0;
inline constexpr unsigned kLeft = 1;
inline constexpr unsigned kUp = 2;
inline constexpr unsigned kDown = 3;

/// Replays a fixed list of directions; running past the end is a test bug.
class ScriptedSteps {
 public:
  ScriptedSteps() = default;
  explicit ScriptedSteps(std::vector<unsigned> script) : script_(std::move(script)) {}

  unsigned next_direction() {
    if (pos_ >= script_.size()) throw std::logic_error("step script exhausted");
    return script_[pos_++];
  }
  [[nodiscard]] std::size_t consumed() const noexcept { return pos_; }
  [[nodiscard]] bool exhausted() const noexcept { return pos_ == script_.size(); }

  ScriptedSteps& then(unsigned dir, std::size_t times = 1) {
    script_.insert(script_.end(), times, dir);
    return *this;
  }

 private:
  std::vector<unsigned> script_;
  std::size_t pos_ = 0;
};

inline std::filesystem::path data_dir() { return INTERX_TEST_DATA_DIR; }

/// One of the bundled published counts tables, e.g. "1_1".
inline SurvivalCounts published_counts(const std::string& name) {
  return io::parse_counts_tsv(io::read_text_file(data_dir() / ("counts_" + name + ".tsv")));
}

}  // namespace interx::testing
