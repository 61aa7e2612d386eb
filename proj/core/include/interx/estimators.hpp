#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interx/error.hpp"
#include "interx/multilevel.hpp"

namespace interx {

enum class EstimateMethod { mle, regression, two_level };

const char* to_string(EstimateMethod m) noexcept;

/// Point estimate of an exponent with its standard error and the
/// mean +/- 2 sigma interval.
struct EstimateReport {
  double exponent = 0.0;
  double sigma = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  EstimateMethod method = EstimateMethod::mle;
  std::optional<std::size_t> kmin;  // scheme-1 estimates only
  std::optional<int> l_kmin;
  std::uint64_t input_digest = 0;

  [[nodiscard]] double two_sigma() const noexcept { return 2.0 * sigma; }
  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

EstimateReport make_report(double exponent, double sigma, EstimateMethod method,
                           std::uint64_t input_digest);

/// Content hash of schedule levels and counts.
std::uint64_t counts_digest(const SurvivalCounts& counts);

// Log-likelihood of the levels kmin..K under survival probability q_l^s per
// transition, without the data-only constant, and its first two derivatives
// in s. All three require kmin < K, n_kmin >= 1 and s > 0.
long double log_likelihood(const SurvivalCounts& counts, std::size_t kmin, long double exponent);
long double loglik_prime(const SurvivalCounts& counts, std::size_t kmin, long double exponent);
long double loglik_double_prime(const SurvivalCounts& counts, std::size_t kmin,
                                long double exponent);

/// Maximum-likelihood exponent over levels kmin..K, sigma from the observed
/// information. Throws EstimationError (no_deaths, all_dead_immediately).
EstimateReport mle(const SurvivalCounts& counts, std::size_t kmin);

/// The likelihood root behind mle(), before rounding to double.
long double mle_root(const SurvivalCounts& counts, std::size_t kmin);

/// Ordinary least squares of log N_k on log L_k over k >= kmin with N_k >= 1.
/// Diagnostic only; sigma is the standard error of the slope.
EstimateReport regression_estimate(const SurvivalCounts& counts, std::size_t kmin);

struct ScanEntry {
  std::size_t kmin = 0;
  int l_kmin = 0;
  std::optional<double> exponent;
  std::optional<double> two_sigma;
  std::optional<EstimationFailure> failure;
};

/// mle() for every kmin in 0..K-1; entries where it fails carry the failure.
std::vector<ScanEntry> kmin_scan(const SurvivalCounts& counts);

}  // namespace interx
