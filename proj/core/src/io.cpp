#include "interx/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "interx/digest.hpp"
#include "interx/error.hpp"

namespace interx::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

Json interval_json(const Interval& iv) { return Json::array({iv.low, iv.high}); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_counts_tsv(const SurvivalCounts& counts) {
  counts.validate();
  std::string out = "L_k\tN_k\n";
  for (std::size_t k = 0; k < counts.n.size(); ++k) {
    out += std::to_string(counts.schedule.level(k));
    out += '\t';
    out += std::to_string(counts.n[k]);
    out += '\n';
  }
  return out;
}

SurvivalCounts parse_counts_tsv(std::string_view text) {
  std::vector<int> levels;
  std::vector<std::uint64_t> n;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto sep = line.find_first_of("\t ,");
    const std::string_view a = trim(line.substr(0, sep));
    const std::string_view b =
        sep == std::string_view::npos ? std::string_view{} : trim(line.substr(sep + 1));
    int l = 0;
    std::uint64_t count = 0;
    if (!parse_number(a, l) || !parse_number(b, count)) {
      if (!seen_data && levels.empty() && line_no == 1) continue;  // header
      throw DataError("line " + std::to_string(line_no) + ": expected two integer columns, got '" +
                      std::string(line) + "'");
    }
    seen_data = true;
    if (l < 1) throw DataError("line " + std::to_string(line_no) + ": L must be positive");
    if (!levels.empty() && l <= levels.back()) {
      throw DataError("line " + std::to_string(line_no) + ": L=" + std::to_string(l) +
                      " is not larger than the previous row");
    }
    if (!n.empty() && count > n.back()) {
      throw DataError("line " + std::to_string(line_no) + ": count " + std::to_string(count) +
                      " exceeds the previous row");
    }
    levels.push_back(l);
    n.push_back(count);
  }
  if (levels.size() < 2) throw DataError("counts table needs at least two data rows");
  return SurvivalCounts{BoxSchedule::from_levels(std::move(levels)), std::move(n), {}, {}};
}

std::string format_scan_tsv(const std::vector<ScanEntry>& scan) {
  std::string out = "kmin\tL_kmin\texponent\ttwo_sigma\n";
  for (const auto& e : scan) {
    if (!e.exponent) continue;
    out += std::to_string(e.kmin) + '\t' + std::to_string(e.l_kmin) + '\t' +
           format_double(*e.exponent) + '\t' + format_double(*e.two_sigma) + '\n';
  }
  return out;
}

std::string format_fractions_tsv(const TrialBatch& batch) {
  std::string out = "master_index\tx\tm\n";
  for (std::size_t i = 0; i < batch.masters(); ++i) {
    out += std::to_string(i) + '\t' + std::to_string(batch.survivors[i]) + '\t' +
           std::to_string(batch.trials_per_master) + '\n';
  }
  return out;
}

std::string format_histogram_tsv(const std::vector<std::uint64_t>& histogram) {
  std::string out = "bin_low\tbin_high\tcount\n";
  const auto bins = static_cast<double>(histogram.size());
  for (std::size_t i = 0; i < histogram.size(); ++i) {
    out += format_double(static_cast<double>(i) / bins) + '\t' +
           format_double(static_cast<double>(i + 1) / bins) + '\t' +
           std::to_string(histogram[i]) + '\n';
  }
  return out;
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["exponent"] = r.exponent;
  j["sigma"] = r.sigma;
  j["two_sigma"] = r.two_sigma();
  j["ci95"] = Json::array({r.ci_low, r.ci_high});
  if (r.kmin) {
    j["kmin"] = *r.kmin;
    j["L_kmin"] = *r.l_kmin;
  }
  j["input_digest"] = to_hex(r.input_digest);
  return j;
}

Json to_json(const SurvivalCounts& c) {
  Json j;
  j["L"] = c.schedule.levels();
  j["N"] = c.n;
  if (c.spec) j["packets"] = c.spec->to_string();
  if (c.base_seed) j["base_seed"] = *c.base_seed;
  return j;
}

Json reference_json(const PacketSpec& spec) {
  Json j;
  j["packets"] = spec.to_string();
  if (auto v = rigorous_interval(spec)) {
    j["status"] = to_string(v->status);
    j["expression"] = v->expression;
    if (v->value.low == v->value.high) {
      j["value"] = v->value.low;
    }
    j["interval"] = interval_json(v->value);
  } else {
    j["status"] = "not_known";
  }
  const ReductionNote note = reduction_note(spec);
  Json red;
  red["literal"] = note.literal.to_string();
  if (auto lit = exact_value(note.literal); lit && !(note.literal == spec)) {
    red["literal_value"] = lit->value.low;
  }
  if (note.published) {
    red["published_comparison"] = note.published->to_string();
    if (auto pub = exact_value(*note.published)) red["published_value"] = pub->value.low;
  }
  red["inconsistent"] = note.inconsistent;
  j["conjectured_reduction"] = red;
  return j;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out.flush()) throw Error("cannot write " + path.string());
}

}  // namespace interx::io
