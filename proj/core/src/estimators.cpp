#include "interx/estimators.hpp"

#include <cmath>

#include "interx/digest.hpp"

namespace interx {

namespace {

constexpr long double kBracketLow = 1e-6L;
constexpr long double kBracketHigh = 64.0L;
constexpr long double kStepTolerance = 1e-12L;
constexpr long double kBracketTolerance = 1e-17L;
constexpr int kMaxIterations = 200;

void check_args(const SurvivalCounts& counts, std::size_t kmin) {
  counts.validate();
  const std::size_t last = counts.schedule.last_index();
  if (kmin >= last) {
    throw ConfigError("kmin must be below the last level index " + std::to_string(last) +
                      ", got " + std::to_string(kmin));
  }
  if (counts.n[kmin] < 1) {
    throw EstimationError(EstimationFailure::insufficient_data,
                          "no samples at level " + std::to_string(kmin));
  }
}

void check_exponent(long double s) {
  if (!(s > 0.0L)) throw DomainError("exponent must be positive");
}

// q^s / (1 - q^s) for log(q) = lq < 0.
long double odds(long double lq, long double s) { return 1.0L / std::expm1(-s * lq); }

}  // namespace

const char* to_string(EstimateMethod m) noexcept {
  switch (m) {
    case EstimateMethod::mle: return "mle";
    case EstimateMethod::regression: return "regression";
    case EstimateMethod::two_level: return "two_level";
  }
  return "unknown";
}

EstimateReport make_report(double exponent, double sigma, EstimateMethod method,
                           std::uint64_t input_digest) {
  EstimateReport r;
  r.exponent = exponent;
  r.sigma = sigma;
  r.ci_low = exponent - 2.0 * sigma;
  r.ci_high = exponent + 2.0 * sigma;
  r.method = method;
  r.input_digest = input_digest;
  return r;
}

std::uint64_t counts_digest(const SurvivalCounts& counts) {
  Fnv1a h;
  h.text("counts/v1");
  for (int l : counts.schedule.levels()) h.value(l);
  h.value(-1);
  for (auto n : counts.n) h.value(n);
  return h.digest();
}

long double log_likelihood(const SurvivalCounts& counts, std::size_t kmin, long double exponent) {
  check_args(counts, kmin);
  check_exponent(exponent);
  long double sum = 0.0L;
  for (std::size_t l = kmin; l < counts.schedule.last_index(); ++l) {
    const long double lq = counts.schedule.log_ratio(l);
    const auto survived = static_cast<long double>(counts.n[l + 1]);
    const auto died = static_cast<long double>(counts.n[l] - counts.n[l + 1]);
    sum += survived * exponent * lq;
    if (died > 0) sum += died * std::log1p(-std::exp(exponent * lq));
  }
  return sum;
}

long double loglik_prime(const SurvivalCounts& counts, std::size_t kmin, long double exponent) {
  check_args(counts, kmin);
  check_exponent(exponent);
  long double sum = 0.0L;
  for (std::size_t l = kmin; l < counts.schedule.last_index(); ++l) {
    const long double lq = counts.schedule.log_ratio(l);
    const auto survived = static_cast<long double>(counts.n[l + 1]);
    const auto died = static_cast<long double>(counts.n[l] - counts.n[l + 1]);
    sum += survived * lq;
    if (died > 0) sum -= died * lq * odds(lq, exponent);
  }
  return sum;
}

long double loglik_double_prime(const SurvivalCounts& counts, std::size_t kmin,
                                long double exponent) {
  check_args(counts, kmin);
  check_exponent(exponent);
  long double sum = 0.0L;
  for (std::size_t l = kmin; l < counts.schedule.last_index(); ++l) {
    const auto died = static_cast<long double>(counts.n[l] - counts.n[l + 1]);
    if (died == 0) continue;
    const long double lq = counts.schedule.log_ratio(l);
    // q^s / (1 - q^s)^2 = (t + 1) / t^2 with t = q^-s - 1
    const long double t = std::expm1(-exponent * lq);
    sum -= died * lq * lq * (t + 1.0L) / (t * t);
  }
  return sum;
}

long double mle_root(const SurvivalCounts& counts, std::size_t kmin) {
  check_args(counts, kmin);
  const std::size_t last = counts.schedule.last_index();
  if (counts.n[kmin] == counts.n[last]) {
    throw EstimationError(EstimationFailure::no_deaths,
                          "no deaths at or after level " + std::to_string(kmin) +
                              ": likelihood is maximal as the exponent tends to 0");
  }
  if (counts.n[kmin + 1] == 0) {
    throw EstimationError(EstimationFailure::all_dead_immediately,
                          "no survivors beyond level " + std::to_string(kmin) +
                              ": likelihood is maximal as the exponent tends to infinity");
  }

  auto f = [&](long double s) { return loglik_prime(counts, kmin, s); };

  // L' is strictly decreasing, positive near 0 and negative for large s.
  long double lo = kBracketLow;
  long double hi = kBracketHigh;
  while (f(hi) > 0.0L) {
    lo = hi;
    hi *= 2.0L;
    if (hi > 1e6L) {
      throw EstimationError(EstimationFailure::non_convergence, "root bracket not found");
    }
  }

  // Two-point starting guess from the outermost level with survivors.
  std::size_t far = last;
  while (counts.n[far] == 0) --far;
  long double s = std::log(static_cast<long double>(counts.n[kmin]) / counts.n[far]) /
                  std::log(static_cast<long double>(counts.schedule.level(far)) /
                           counts.schedule.level(kmin));
  if (!(s > lo && s < hi)) s = 0.5L * (lo + hi);

  bool converged = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    const long double g = f(s);
    if (g == 0.0L) {
      converged = true;
      break;
    }
    if (g > 0.0L) {
      lo = s;
    } else {
      hi = s;
    }
    long double next = s - g / loglik_double_prime(counts, kmin, s);
    const bool newton = next > lo && next < hi;
    if (!newton) next = 0.5L * (lo + hi);
    const long double step = std::fabs(next - s);
    s = next;
    if ((newton && step < kStepTolerance * s) || hi - lo < kBracketTolerance * s) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw EstimationError(EstimationFailure::non_convergence,
                          "Newton/bisection did not converge");
  }

  return s;
}

EstimateReport mle(const SurvivalCounts& counts, std::size_t kmin) {
  const long double s = mle_root(counts, kmin);
  const long double curvature = loglik_double_prime(counts, kmin, s);
  EstimateReport r = make_report(static_cast<double>(s),
                                 static_cast<double>(std::sqrt(-1.0L / curvature)),
                                 EstimateMethod::mle, counts_digest(counts));
  r.kmin = kmin;
  r.l_kmin = counts.schedule.level(kmin);
  return r;
}

EstimateReport regression_estimate(const SurvivalCounts& counts, std::size_t kmin) {
  counts.validate();
  std::vector<long double> xs;
  std::vector<long double> ys;
  for (std::size_t k = kmin; k < counts.n.size(); ++k) {
    if (counts.n[k] < 1) continue;
    xs.push_back(std::log(static_cast<long double>(counts.schedule.level(k))));
    ys.push_back(std::log(static_cast<long double>(counts.n[k])));
  }
  if (xs.size() < 2) {
    throw EstimationError(EstimationFailure::insufficient_data,
                          "regression needs at least two levels with survivors");
  }
  const auto n = static_cast<long double>(xs.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const long double slope = sxy / sxx;
  long double se = 0;
  if (xs.size() > 2) {
    long double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const long double resid = ys[i] - (my + slope * (xs[i] - mx));
      ssr += resid * resid;
    }
    se = std::sqrt(ssr / (n - 2) / sxx);
  }
  EstimateReport r = make_report(static_cast<double>(-slope) + 0.0, static_cast<double>(se),
                                 EstimateMethod::regression, counts_digest(counts));
  r.kmin = kmin;
  r.l_kmin = counts.schedule.level(kmin);
  return r;
}

std::vector<ScanEntry> kmin_scan(const SurvivalCounts& counts) {
  counts.validate();
  std::vector<ScanEntry> out;
  for (std::size_t k = 0; k < counts.schedule.last_index(); ++k) {
    ScanEntry e;
    e.kmin = k;
    e.l_kmin = counts.schedule.level(k);
    try {
      const EstimateReport r = mle(counts, k);
      e.exponent = r.exponent;
      e.two_sigma = r.two_sigma();
    } catch (const EstimationError& err) {
      e.failure = err.kind();
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace interx
