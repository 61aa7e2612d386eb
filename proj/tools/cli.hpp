#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "interx/error.hpp"
#include "interx/multilevel.hpp"
#include "interx/packet.hpp"
#include "interx/schedule.hpp"

namespace interx::cli {

enum class Scheme { multilevel, twolevel, replay };

/// Command-line errors (bad flag, bad value). Exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kSuccess = 0, kUsage = 1, kData = 2, kRuntime = 3 };

struct CampaignConfig {
  Scheme scheme = Scheme::multilevel;
  std::optional<PacketSpec> packets;

  int l0 = 30;
  int l_max = 0;
  Rational growth{11, 10};
  std::uint64_t samples = 0;

  int l1 = 0;
  int l2 = 0;
  int trials = 1000;
  std::uint64_t masters = 0;
  int bins = 50;

  std::uint64_t base_seed = 0;
  std::string base_seed_text = "0";
  unsigned workers = 1;

  // kmin as a level index, or as a box half-length resolved against the
  // schedule; neither means automatic.
  std::optional<std::size_t> kmin_index;
  std::optional<int> kmin_length;

  std::filesystem::path input;    // replay counts table
  std::filesystem::path out_dir;  // empty: JSON to stdout only
  std::filesystem::path checkpoint;
  std::uint64_t checkpoint_every = 0;

  GridMode grid_mode = GridMode::automatic;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  WalkOptions walk;
  bool timing = true;
};

/// Parses and validates argv. Throws UsageError with the offending flag and
/// value. The INTERX_MEMORY_BUDGET environment variable overrides the default
/// memory budget; an explicit --memory-budget wins over both.
CampaignConfig parse_config(int argc, const char* const* argv);

/// Seeds are accepted as decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);

/// Resolves the configured kmin against a schedule. Automatic picks the level
/// closest to 5 * L_0.
std::size_t resolve_kmin(const CampaignConfig& config, const BoxSchedule& schedule);

/// Runs the configured scheme, writes the output files and prints the JSON
/// report to `out`. Returns the process exit code.
int run(const CampaignConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace interx::cli
