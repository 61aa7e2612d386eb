#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "interx/digest.hpp"
#include "interx/estimators.hpp"
#include "interx/io.hpp"
#include "interx/reference.hpp"
#include "interx/twolevel.hpp"

#ifndef INTERX_BUILD_DESCRIBE
#define INTERX_BUILD_DESCRIBE "unknown"
#endif

namespace interx::cli {

namespace {

class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  [[nodiscard]] const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::multilevel: return "multilevel";
    case Scheme::twolevel: return "twolevel";
    case Scheme::replay: return "replay";
  }
  return "unknown";
}

const char* to_string(GridMode m) {
  switch (m) {
    case GridMode::automatic: return "auto";
    case GridMode::dense: return "dense";
    case GridMode::sparse: return "sparse";
  }
  return "unknown";
}

[[noreturn]] void bad(const std::string& flag, const std::string& value, const std::string& why) {
  throw UsageError(flag + " " + value + ": " + why);
}

std::uint64_t parse_bytes(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used, 0);
    if (used != text.size()) bad(flag, text, "not an integer byte count");
    return v;
  } catch (const std::logic_error&) {
    bad(flag, text, "not an integer byte count");
  }
}

io::Json config_json(const CampaignConfig& c) {
  io::Json j;
  j["scheme"] = to_string(c.scheme);
  if (c.packets) j["packets"] = c.packets->to_string();
  switch (c.scheme) {
    case Scheme::multilevel:
      j["L0"] = c.l0;
      j["Lmax"] = c.l_max;
      j["growth"] = c.growth.to_string();
      j["samples"] = c.samples;
      break;
    case Scheme::twolevel:
      j["L0"] = c.l0;
      j["L1"] = c.l1;
      j["L2"] = c.l2;
      j["masters"] = c.masters;
      j["trials"] = c.trials;
      j["bins"] = c.bins;
      break;
    case Scheme::replay:
      j["input"] = c.input.filename().string();
      break;
  }
  if (c.scheme != Scheme::replay) {
    j["base_seed"] = c.base_seed_text;
    j["record_entry_cell"] = c.walk.record_entry_cell;
    j["direction_rule"] =
        c.walk.direction_rule == DirectionRule::top_bits ? "top_bits" : "next_bits";
    j["grid"] = to_string(c.grid_mode);
  }
  if (c.kmin_index) j["kmin"] = *c.kmin_index;
  if (c.kmin_length) j["kmin_L"] = *c.kmin_length;
  return j;
}

io::Json report_header(const CampaignConfig& config) {
  io::Json j;
  j["tool"] = "interx";
  j["build"] = INTERX_BUILD_DESCRIBE;
  j["config"] = config_json(config);
  return j;
}

void write_output(const CampaignConfig& config, const std::string& name,
                  const std::string& content) {
  if (config.out_dir.empty()) return;
  io::write_text_file(config.out_dir / name, content);
}

// Adds MLE, regression and kmin scan of `counts` to `report`. Returns false
// when the MLE cannot be computed.
bool add_scheme1_estimates(const CampaignConfig& config, const SurvivalCounts& counts,
                           io::Json& report) {
  const std::size_t kmin = resolve_kmin(config, counts.schedule);
  report["counts"] = io::to_json(counts);
  bool ok = true;
  try {
    report["estimate"] = io::to_json(mle(counts, kmin));
  } catch (const EstimationError& e) {
    report["estimate"] = nullptr;
    report["estimate_error"] = interx::to_string(e.kind());
    ok = false;
  }
  try {
    report["regression"] = io::to_json(regression_estimate(counts, kmin));
  } catch (const EstimationError& e) {
    report["regression"] = nullptr;
  }
  const auto scan = kmin_scan(counts);
  write_output(config, "counts.tsv", io::format_counts_tsv(counts));
  write_output(config, "scan.tsv", io::format_scan_tsv(scan));
  return ok;
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    if (!hex && !text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t v = std::stoull(text, &used, hex ? 16 : 10);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    bad("--seed", text, "expected a decimal or 0x-hex 64-bit integer");
  }
}

CampaignConfig parse_config(int argc, const char* const* argv) {
  CampaignConfig c;
  CLI::App app{"Monte Carlo estimation of multiple intersection exponents of planar random walks",
               "interx"};
  app.set_config("--config", "", "Read options from a TOML/INI file");

  std::string scheme = "multilevel";
  std::string packets;
  std::string growth = "1.1";
  std::string seed = "0";
  std::string grid = "auto";
  std::string direction = "top";
  std::string memory_budget;
  std::optional<std::size_t> kmin;
  std::optional<int> kmin_l;
  std::optional<int> l2;
  bool entry_cell = false;
  bool no_timing = false;

  app.add_option("--scheme", scheme, "multilevel | twolevel | replay")->capture_default_str();
  app.add_option("--packets", packets, "Packet sizes n_1,...,n_p, e.g. 1,1,2");
  app.add_option("--l0", c.l0, "Half-length of the Step-1 box")->capture_default_str();
  app.add_option("--lmax", c.l_max, "Final box half-length (multilevel)");
  app.add_option("--growth", growth, "Box growth factor, decimal or a/b")->capture_default_str();
  app.add_option("--samples", c.samples, "Sample count N (multilevel)");
  app.add_option("--l1", c.l1, "Master box half-length (twolevel)");
  app.add_option("--l2", l2, "Trial box half-length (twolevel, default 2*L1)");
  app.add_option("--trials", c.trials, "Trials per master m (twolevel)")->capture_default_str();
  app.add_option("--masters", c.masters, "Surviving master samples n (twolevel)");
  app.add_option("--bins", c.bins, "Histogram bins (twolevel)")->capture_default_str();
  app.add_option("--seed", seed, "Base seed, decimal or 0x-hex")->capture_default_str();
  app.add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  app.add_option("--kmin", kmin, "First level index used in the fit");
  app.add_option("--kmin-l", kmin_l, "First box half-length used in the fit");
  app.add_option("--input", c.input, "Counts table to replay (L_k<TAB>N_k)");
  app.add_option("--out", c.out_dir, "Directory for report.json and TSV outputs");
  app.add_option("--checkpoint", c.checkpoint, "Checkpoint file (multilevel); resumes if present");
  app.add_option("--checkpoint-every", c.checkpoint_every, "Samples between checkpoints");
  app.add_option("--grid", grid, "Occupancy grid: auto | dense | sparse")->capture_default_str();
  app.add_option("--memory-budget", memory_budget, "Byte budget for a dense grid");
  app.add_option("--direction-rule", direction, "Step extraction: top | next")
      ->capture_default_str();
  app.add_flag("--entry-cell", entry_cell, "Also record each walker's cell at the start of a level");
  app.add_flag("--no-timing", no_timing, "Omit wall-clock time from report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (scheme == "multilevel") {
    c.scheme = Scheme::multilevel;
  } else if (scheme == "twolevel") {
    c.scheme = Scheme::twolevel;
  } else if (scheme == "replay") {
    c.scheme = Scheme::replay;
  } else {
    bad("--scheme", scheme, "expected multilevel, twolevel or replay");
  }

  if (!packets.empty()) {
    try {
      c.packets = PacketSpec::parse(packets);
    } catch (const ConfigError& e) {
      bad("--packets", packets, e.what());
    }
  }
  try {
    c.growth = Rational::parse(growth);
  } catch (const ConfigError& e) {
    bad("--growth", growth, e.what());
  }
  if (c.growth.num <= c.growth.den) bad("--growth", growth, "must exceed 1");
  c.base_seed = parse_seed(seed);
  c.base_seed_text = seed;

  if (grid == "auto") {
    c.grid_mode = GridMode::automatic;
  } else if (grid == "dense") {
    c.grid_mode = GridMode::dense;
  } else if (grid == "sparse") {
    c.grid_mode = GridMode::sparse;
  } else {
    bad("--grid", grid, "expected auto, dense or sparse");
  }
  if (direction == "top") {
    c.walk.direction_rule = DirectionRule::top_bits;
  } else if (direction == "next") {
    c.walk.direction_rule = DirectionRule::next_bits;
  } else {
    bad("--direction-rule", direction, "expected top or next");
  }
  c.walk.record_entry_cell = entry_cell;
  c.timing = !no_timing;

  if (const char* env = std::getenv("INTERX_MEMORY_BUDGET"); env && *env) {
    c.memory_budget = parse_bytes("INTERX_MEMORY_BUDGET", env);
  }
  if (!memory_budget.empty()) c.memory_budget = parse_bytes("--memory-budget", memory_budget);

  if (kmin && kmin_l) bad("--kmin", std::to_string(*kmin), "give either --kmin or --kmin-l");
  c.kmin_index = kmin;
  c.kmin_length = kmin_l;
  if (c.workers < 1) bad("--workers", std::to_string(c.workers), "must be >= 1");

  const bool simulating = c.scheme != Scheme::replay;
  if (simulating) {
    if (!c.packets) bad("--packets", "(missing)", "required for " + scheme);
    if (c.l0 < 2) bad("--l0", std::to_string(c.l0), "must be >= 2");
  }
  switch (c.scheme) {
    case Scheme::multilevel:
      if (c.l_max <= c.l0) bad("--lmax", std::to_string(c.l_max), "must exceed --l0");
      if (c.samples < 1) bad("--samples", std::to_string(c.samples), "must be >= 1");
      break;
    case Scheme::twolevel:
      c.l2 = l2.value_or(2 * c.l1);
      if (c.l1 <= c.l0) bad("--l1", std::to_string(c.l1), "must exceed --l0");
      if (c.l2 <= c.l1) bad("--l2", std::to_string(c.l2), "must exceed --l1");
      if (c.masters < 2) bad("--masters", std::to_string(c.masters), "must be >= 2");
      if (c.trials < 1) bad("--trials", std::to_string(c.trials), "must be >= 1");
      if (c.bins < 1) bad("--bins", std::to_string(c.bins), "must be >= 1");
      break;
    case Scheme::replay:
      if (c.input.empty()) bad("--input", "(missing)", "required for replay");
      break;
  }
  if (!c.checkpoint.empty() && c.scheme != Scheme::multilevel) {
    bad("--checkpoint", c.checkpoint.string(), "only supported for the multilevel scheme");
  }
  return c;
}

std::size_t resolve_kmin(const CampaignConfig& config, const BoxSchedule& schedule) {
  if (config.kmin_length) {
    try {
      return schedule.index_of(*config.kmin_length);
    } catch (const ConfigError&) {
      bad("--kmin-l", std::to_string(*config.kmin_length), "is not a level of the schedule");
    }
  }
  if (config.kmin_index) {
    if (*config.kmin_index >= schedule.last_index()) {
      bad("--kmin", std::to_string(*config.kmin_index),
          "must be below the last level index " + std::to_string(schedule.last_index()));
    }
    return *config.kmin_index;
  }
  const std::size_t k = schedule.nearest_index(5 * schedule.level(0));
  return std::min(k, schedule.last_index() - 1);
}

int run(const CampaignConfig& config, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);
  io::Json report = report_header(config);
  int code = kSuccess;

  switch (config.scheme) {
    case Scheme::replay: {
      SurvivalCounts counts = io::parse_counts_tsv(io::read_text_file(config.input));
      counts.spec = config.packets;
      if (!add_scheme1_estimates(config, counts, report)) code = kData;
      break;
    }
    case Scheme::multilevel: {
      MultilevelSetup setup{*config.packets,
                            BoxSchedule::build(config.l0, config.growth, config.l_max),
                            config.samples,
                            config.base_seed,
                            config.workers,
                            config.walk,
                            config.grid_mode,
                            config.memory_budget};
      CheckpointPolicy policy{config.checkpoint, config.checkpoint_every, 0};
      const CampaignResult result =
          run_campaign(setup, config.checkpoint.empty() ? nullptr : &policy);
      if (result.resumed) err << "resumed from checkpoint " << config.checkpoint << '\n';
      report["config_digest"] = to_hex(config_digest(setup));
      if (!add_scheme1_estimates(config, result.counts, report)) code = kData;
      break;
    }
    case Scheme::twolevel: {
      TwoLevelSetup setup{*config.packets, config.l0,         config.l1,
                          config.l2,       config.masters,    config.trials,
                          config.base_seed, config.workers,    config.walk,
                          config.grid_mode, config.memory_budget};
      const TwoLevelResult result = run_twolevel_campaign(setup);
      const FractionSummary summary = summarize(result.batch);
      io::Json tl;
      tl["masters"] = result.batch.masters();
      tl["trials_per_master"] = result.batch.trials_per_master;
      tl["master_attempts"] = result.attempts;
      tl["dead_attempts"] = result.dead_attempts;
      tl["p_hat"] = summary.p_hat;
      tl["sigma_p"] = summary.sigma_p;
      report["two_level"] = tl;
      try {
        report["estimate"] = io::to_json(two_level_estimate(
            result.batch, static_cast<double>(config.l2) / static_cast<double>(config.l1)));
      } catch (const EstimationError& e) {
        report["estimate"] = nullptr;
        report["estimate_error"] = interx::to_string(e.kind());
        code = kData;
      }
      write_output(config, "fractions.tsv", io::format_fractions_tsv(result.batch));
      write_output(config, "histogram.tsv",
                   io::format_histogram_tsv(fraction_histogram(result.batch, config.bins)));
      break;
    }
  }

  if (config.packets) report["reference"] = io::reference_json(*config.packets);
  if (config.timing) {
    report["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  const std::string text = report.dump(2) + "\n";
  write_output(config, "report.json", text);
  out << text;
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_config(argc, argv), out, err);
  } catch (const HelpRequested& h) {
    out << h.text();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const EstimationError& e) {
    err << "estimation error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace interx::cli
