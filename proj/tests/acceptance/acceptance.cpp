// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Set INTERX_ACCEPTANCE_ONLY=A1,A4 to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <unistd.h>

#include "interx/checkpoint.hpp"
#include "interx/estimators.hpp"
#include "interx/io.hpp"
#include "interx/lattice.hpp"
#include "interx/multilevel.hpp"
#include "interx/reference.hpp"
#include "interx/twolevel.hpp"
#include "support.hpp"

namespace {

using namespace interx;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned workers() { return std::max(1U, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- replays

struct ReplayCase {
  const char* table;
  int l_kmin;
  double exponent;
  double two_sigma;
};

void a1(Verdict& v) {
  const auto t0 = Clock::now();
  const auto c = testing::published_counts("1_1");
  const auto r = mle(c, c.schedule.index_of(1069));
  const double t = seconds_since(t0);
  v.detail << "(1,1) kmin L=1069: exponent=" << r.exponent << " 2sigma=" << r.two_sigma()
           << " time=" << t << "s";
  v.require(std::abs(r.exponent - 1.2502) <= 3e-3, "exponent within 1.2502 +- 0.003");
  v.require(std::abs(r.two_sigma() - 0.001) <= 5e-4, "2sigma within 0.001 +- 0.0005");
  v.require(t < 1.0, "runtime < 1 s");
}

void a2(Verdict& v) {
  const auto t0 = Clock::now();
  const auto c = testing::published_counts("2_2");
  const auto r = mle(c, c.schedule.index_of(605));
  const double t = seconds_since(t0);
  v.detail << "(2,2) kmin L=605: exponent=" << r.exponent << " 2sigma=" << r.two_sigma()
           << " time=" << t << "s";
  v.require(std::abs(r.exponent - 2.9188) <= 5e-3, "exponent within 2.9188 +- 0.005");
  v.require(std::abs(r.exponent - 35.0 / 12.0) <= 2.0 * r.two_sigma(),
            "35/12 within exponent +- 2*2sigma");
  v.require(t < 1.0, "runtime < 1 s");
}

void a3(Verdict& v) {
  const ReplayCase cases[] = {
      {"1_1_1", 18575, 1.027, 0.005},   {"1_1_2", 1069, 1.2503, 0.0011},
      {"1_1_1_1", 39813, 0.877, 0.006}, {"1_1_1_2", 27194, 1.02, 0.004},
      {"1_1_1_1_1", 27194, 0.74, 0.02},
  };
  const auto t0 = Clock::now();
  for (const auto& c : cases) {
    const auto counts = testing::published_counts(c.table);
    const auto r = mle(counts, counts.schedule.index_of(c.l_kmin));
    v.detail << c.table << ":" << r.exponent << " ";
    v.require(std::abs(r.exponent - c.exponent) <= 2.0 * c.two_sigma,
              std::string(c.table) + " within 2x printed 2sigma of " + std::to_string(c.exponent));
  }
  const double t = seconds_since(t0);
  v.detail << "time=" << t << "s";
  v.require(t < 5.0, "runtime < 5 s");
}

void a4(Verdict& v) {
  struct Case {
    double p_hat, sigma_p, exponent;
  };
  const Case cases[] = {
      {0.155202983425414, 0.000536918044881792, 2.6877718045551},
      {0.1449495, 0.000497221297799643, 2.78637773802317},
      {0.130559, 0.000444444142417374, 2.93722618256156},
      {0.073458, 0.00144828442088002, 3.76693657262376},
  };
  const double sigmas[] = {0.00499094143436367, 0.00494888703003405, 0.00491116935805033,
                           0.0284439101500224};
  const auto t0 = Clock::now();
  EstimateReport r[4];
  for (int i = 0; i < 4; ++i) r[i] = two_level_estimate(FractionSummary{cases[i].p_hat, cases[i].sigma_p});
  const double t = seconds_since(t0);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    worst = std::max({worst, std::abs(r[i].exponent - cases[i].exponent),
                      std::abs(r[i].sigma - sigmas[i])});
  }
  v.detail << "4 cases, max abs deviation=" << worst << " time=" << t * 1e3 << "ms";
  v.require(worst <= 1e-9, "agreement to 1e-9");
  v.require(t < 1e-3, "runtime < 1 ms");
}

// ---------------------------------------------------------------- desk-scale Monte Carlo

struct DeskRun {
  EstimateReport estimate;
  double seconds = 0.0;
};

DeskRun desk_run(const PacketSpec& spec, WalkOptions walk) {
  MultilevelSetup setup{spec, BoxSchedule::build(30, Rational{11, 10}, 2000), 200'000, 1};
  setup.workers = workers();
  setup.walk = walk;
  const auto t0 = Clock::now();
  const auto counts = run_campaign(setup).counts;
  DeskRun run;
  run.seconds = seconds_since(t0);
  run.estimate = mle(counts, counts.schedule.nearest_index(150));
  return run;
}

DeskRun a5_baseline;
bool a5_done = false;

const DeskRun& baseline() {
  if (!a5_done) {
    a5_baseline = desk_run(PacketSpec({1, 1}), WalkOptions{});
    a5_done = true;
  }
  return a5_baseline;
}

void describe(Verdict& v, const DeskRun& r) {
  v.detail << "exponent=" << r.estimate.exponent << " 2sigma=" << r.estimate.two_sigma()
           << " kmin L=" << r.estimate.l_kmin.value_or(0) << " time=" << r.seconds << "s on "
           << workers() << " worker(s)";
}

void a5(Verdict& v) {
  const auto& r = baseline();
  v.detail << "(1,1) N=2e5 Lmax=2000: ";
  describe(v, r);
  v.require(r.estimate.exponent >= 1.15 && r.estimate.exponent <= 1.35, "exponent in [1.15, 1.35]");
  v.require(r.seconds <= 20 * 60, "runtime <= 20 min");
}

void a6(Verdict& v) {
  const auto r = desk_run(PacketSpec({1, 2}), WalkOptions{});
  v.detail << "(1,2) N=2e5 Lmax=2000: ";
  describe(v, r);
  v.require(r.estimate.exponent >= 1.8 && r.estimate.exponent <= 2.2, "exponent in [1.8, 2.2]");
  v.require(r.seconds <= 30 * 60, "runtime <= 30 min");
}

void a7(Verdict& v) {
  const auto& base = baseline();
  WalkOptions entry;
  entry.record_entry_cell = !WalkOptions{}.record_entry_cell;
  WalkOptions rule;
  rule.direction_rule = DirectionRule::next_bits;
  const auto a = desk_run(PacketSpec({1, 1}), entry);
  const auto b = desk_run(PacketSpec({1, 1}), rule);
  const double da = std::abs(a.estimate.exponent - base.estimate.exponent);
  const double db = std::abs(b.estimate.exponent - base.estimate.exponent);
  v.detail << "baseline " << base.estimate.exponent << " 2sigma=" << base.estimate.two_sigma()
           << "; entry-cell " << (entry.record_entry_cell ? "on" : "off") << ": "
           << a.estimate.exponent << " (shift " << da << "); next-bits rule: "
           << b.estimate.exponent << " (shift " << db << ")";
  v.require(da < base.estimate.two_sigma(), "entry-cell toggle shift < 2sigma");
  v.require(db < base.estimate.two_sigma(), "direction rule shift < 2sigma");
}

// ---------------------------------------------------------------- property suites

bool rng_oracle() {
  using boost::multiprecision::cpp_int;
  const cpp_int a{"6364136223846793005"};
  const cpp_int mod = cpp_int(1) << 64;
  RngStream seeds(0xFEEDFACE);
  for (int k = 0; k < 10; ++k) {
    const std::uint64_t seed = seeds.next();
    RngStream s(seed);
    cpp_int r = seed;
    for (int i = 0; i < 10'000; ++i) {
      r = (a * r + 1) % mod;
      if (s.next() != r.convert_to<std::uint64_t>()) return false;
    }
  }
  return true;
}

bool online_offline() {
  RngStream rng(77);
  for (int i = 0; i < 200; ++i) {
    const std::size_t p = 2 + rng.next() % 3;
    DenseGrid grid(20, p);
    grid.reset();
    std::vector<std::vector<Cell>> visited(p);
    std::vector<Cell> pos(p);
    for (auto& c : pos) c = {static_cast<int>(rng.next() % 11) - 5, static_cast<int>(rng.next() % 11) - 5};
    bool online = false;
    const int steps = 10 + static_cast<int>(rng.next() % 150);
    for (int t = 0; t < steps; ++t) {
      for (std::size_t j = 0; j < p; ++j) {
        online |= grid.record_visit(pos[j], static_cast<unsigned>(j));
        visited[j].push_back(pos[j]);
        const Step s = kSteps[rng.step_direction()];
        pos[j].x = std::clamp(pos[j].x + s.dx, -20, 20);
        pos[j].y = std::clamp(pos[j].y + s.dy, -20, 20);
      }
    }
    if (online != intersection_nonempty(visited)) return false;
  }
  return true;
}

SurvivalCounts random_counts(RngStream& rng) {
  const std::size_t levels = 2 + rng.next() % 10;
  std::vector<int> l{static_cast<int>(5 + rng.next() % 100)};
  std::vector<std::uint64_t> n{100 + rng.next() % 1'000'000};
  for (std::size_t k = 1; k < levels; ++k) {
    l.push_back(l.back() + 1 + static_cast<int>(rng.next() % (l.back() / 2 + 1)));
    n.push_back(static_cast<std::uint64_t>(static_cast<double>(n.back()) *
                                           (0.3 + 0.7 * rng.unit_uniform())));
  }
  if (n.back() == 0) n.back() = 1;
  for (std::size_t k = n.size() - 1; k-- > 0;) n[k] = std::max(n[k], n[k + 1]);
  if (n.front() == n.back()) n.front() += 10;
  return SurvivalCounts{BoxSchedule::from_levels(l), n};
}

bool loglik_finite_differences() {
  RngStream rng(502);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_counts(rng);
    const long double s = 0.2L + 4.0L * rng.unit_uniform();
    const long double h = 1e-6L * s;
    const long double fd1 = (log_likelihood(c, 0, s + h) - log_likelihood(c, 0, s - h)) / (2 * h);
    const long double d1 = loglik_prime(c, 0, s);
    const long double fd2 = (loglik_prime(c, 0, s + h) - loglik_prime(c, 0, s - h)) / (2 * h);
    const long double d2 = loglik_double_prime(c, 0, s);
    if (std::fabs(fd1 - d1) > 1e-6L * std::fabs(d1)) return false;
    if (std::fabs(fd2 - d2) > 1e-6L * std::fabs(d2)) return false;
  }
  return true;
}

bool newton_root_and_concavity() {
  RngStream rng(505);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_counts(rng);
    const double s = mle(c, 0).exponent;
    if (!(std::fabs(loglik_prime(c, 0, s)) < 1e-9L)) return false;
    if (!(loglik_double_prime(c, 0, s) < 0.0L)) return false;
  }
  return true;
}

bool single_transition_closed_form() {
  RngStream rng(504);
  for (int i = 0; i < 100; ++i) {
    const int l1 = 10 + static_cast<int>(rng.next() % 20000);
    const std::uint64_t n1 = 2 + rng.next() % 10'000'000;
    const std::uint64_t n2 = 1 + rng.next() % (n1 - 1);
    const double closed = -std::log(static_cast<double>(n2) / static_cast<double>(n1)) / std::log(2.0);
    if (std::abs(mle(SurvivalCounts{BoxSchedule::from_levels({l1, 2 * l1}), {n1, n2}}, 0).exponent -
                 closed) > 1e-9) {
      return false;
    }
    const auto tl = two_level_estimate(FractionSummary{static_cast<double>(n2) / static_cast<double>(n1), 0.0});
    if (std::abs(tl.exponent - closed) > 1e-9) return false;
  }
  return true;
}

bool trial_count_brute_force() {
  RngStream rng(602);
  for (int i = 0; i < 100; ++i) {
    const double t1 = std::exp(10.0 * rng.unit_uniform());
    const double t2 = std::exp(-5.0 * rng.unit_uniform());
    const double e = 0.01 + 0.98 * rng.unit_uniform();
    const double var = e * std::exp(-8.0 * rng.unit_uniform());
    std::int64_t best = 1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 1; m <= 1'000'000; ++m) {
      const auto md = static_cast<double>(m);
      const double cost = (t1 + md * t2) * (var + e / md);
      if (cost < best_cost) {
        best_cost = cost;
        best = m;
      }
    }
    if (optimal_trial_count(t1, t2, var, e) != best) return false;
  }
  return true;
}

bool schedule_prefix() {
  const std::vector<int> expected{30, 33, 36, 39, 42, 46, 50, 55, 60, 66, 72, 79, 86, 94, 103};
  return BoxSchedule::build(30, Rational{11, 10}, 103).levels() == expected;
}

MultilevelSetup property_setup(unsigned w) {
  MultilevelSetup s{PacketSpec({1, 1, 2}), BoxSchedule::build(10, Rational{11, 10}, 80), 4000,
                    0xACCE97};
  s.workers = w;
  return s;
}

bool worker_invariance() {
  return run_campaign(property_setup(1)).counts == run_campaign(property_setup(8)).counts;
}

bool checkpoint_resume() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("interx-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto reference = run_campaign(property_setup(2)).counts;
  CheckpointPolicy policy{dir / "run.ckpt", 500, 2000};
  const auto partial = run_campaign(property_setup(2), &policy);
  policy.stop_after = 0;
  const auto resumed = run_campaign(property_setup(3), &policy);
  fs::remove_all(dir);
  return !partial.complete && resumed.resumed && resumed.counts == reference;
}

void a8(Verdict& v) {
  const std::pair<const char*, std::function<bool()>> suites[] = {
      {"rng-oracle", rng_oracle},
      {"online-offline", online_offline},
      {"loglik-fd", loglik_finite_differences},
      {"newton-root-concavity", newton_root_and_concavity},
      {"single-transition", single_transition_closed_form},
      {"trial-count-brute-force", trial_count_brute_force},
      {"schedule-prefix", schedule_prefix},
      {"worker-invariance", worker_invariance},
      {"checkpoint-resume", checkpoint_resume},
  };
  for (const auto& [name, check] : suites) {
    const bool ok = check();
    v.detail << name << "=" << (ok ? "ok" : "FAIL") << " ";
    v.require(ok, name);
  }
}

// ---------------------------------------------------------------- reference

void a9(Verdict& v) {
  const double r73 = std::sqrt(73.0);
  struct Row {
    std::vector<int> spec;
    double low, high;
  };
  const Row rows[] = {
      {{1, 1}, 1.25, 1.25},           {{2, 2}, 35.0 / 12, 35.0 / 12},
      {{1, 1, 1}, 0.5, 1.25},         {{1, 1, 2}, 1.0, 1.25},
      {{1, 1, 1, 1}, 0.25, 1.25},     {{1, 1, 1, 2}, 0.5, 1.25},
      {{1, 1, 1, 1, 1}, 0.125, 1.25}, {{1, 3, 3}, 2.0, (13 + r73) / 8},
      {{2, 2, 2}, 2.0, 35.0 / 12},    {{2, 2, 3}, 2.0, 35.0 / 12},
      {{2, 3, 3}, 2.0, 35.0 / 12},    {{2, 2, 2, 2}, 2.0, 35.0 / 12},
  };
  int matched = 0;
  for (const auto& row : rows) {
    const PacketSpec spec(row.spec);
    const auto r = rigorous_interval(spec);
    const bool ok = r && r->value.low == row.low && r->value.high == row.high;
    v.require(ok, "rigorous " + spec.to_string());
    matched += ok ? 1 : 0;
  }
  v.require(exact_value(PacketSpec({1, 1}))->value.low == 1.25, "exact (1,1)");
  v.require(exact_value(PacketSpec({2, 2}))->value.low == 35.0 / 12, "exact (2,2)");
  v.detail << matched << "/12 rigorous entries; ";

  const std::pair<std::vector<int>, std::vector<int>> reductions[] = {
      {{1, 1, 2}, {1, 1}}, {{2, 2, 3}, {2, 2}}, {{1, 1, 1, 2}, {1, 1, 1}}};
  for (const auto& [from, to] : reductions) {
    const auto got = conjectured_reduction(PacketSpec(from));
    v.detail << PacketSpec(from).to_string() << "->" << got.to_string() << " ";
    v.require(got == PacketSpec(to), "reduction of " + PacketSpec(from).to_string());
  }
  for (const auto& spec : {PacketSpec({1, 3, 3}), PacketSpec({2, 3, 3})}) {
    const auto j = io::reference_json(spec);
    const bool flagged = j.at("conjectured_reduction").at("inconsistent").get<bool>();
    v.detail << spec.to_string() << " flagged=" << (flagged ? "yes" : "no") << " ";
    v.require(flagged, "inconsistency flag for " + spec.to_string());
  }
}

bool selected(const std::string& id) {
  const char* only = std::getenv("INTERX_ACCEPTANCE_ONLY");
  if (only == nullptr || *only == '\0') return true;
  std::stringstream list(only);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item == id) return true;
  }
  return false;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Verdict&)>> criteria[] = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!selected(id)) continue;
    Verdict v;
    v.detail.precision(10);
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
