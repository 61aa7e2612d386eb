#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "interx/estimators.hpp"
#include "interx/multilevel.hpp"
#include "interx/reference.hpp"
#include "interx/twolevel.hpp"

namespace interx::io {

using Json = nlohmann::ordered_json;

/// `L_k<TAB>N_k` with a header row, one row per level.
std::string format_counts_tsv(const SurvivalCounts& counts);

/// Parses a two-column counts table. A leading header row, blank lines and
/// '#' comments are skipped. Throws DataError naming the offending line when
/// L is not strictly increasing, counts increase, or fewer than two rows exist.
SurvivalCounts parse_counts_tsv(std::string_view text);

/// `kmin<TAB>L_kmin<TAB>exponent<TAB>two_sigma`, admissible entries only.
std::string format_scan_tsv(const std::vector<ScanEntry>& scan);

/// `master_index<TAB>x<TAB>m`
std::string format_fractions_tsv(const TrialBatch& batch);

/// `bin_low<TAB>bin_high<TAB>count`
std::string format_histogram_tsv(const std::vector<std::uint64_t>& histogram);

Json to_json(const EstimateReport& report);
Json to_json(const SurvivalCounts& counts);
/// Exact value or interval plus the literal and published conjectured reductions.
Json reference_json(const PacketSpec& spec);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
/// Throws Error when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace interx::io
