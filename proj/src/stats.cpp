#include "qcb/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qcb/errors.hpp"

namespace qcb::stats {

namespace {

// Lentz evaluation of the continued fraction for I_x(a, b).
double beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw UsageError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0)) throw UsageError("incomplete_beta: a and b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0)) throw UsageError("student_t: df must be positive");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t >= 0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw UsageError("student_t_quantile: p must be in (0, 1)");
  double lo = -1.0, hi = 1.0;
  while (student_t_cdf(lo, df) > p) lo *= 2.0;
  while (student_t_cdf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (student_t_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string to_string(TTestBranch b) {
  switch (b) {
    case TTestBranch::Regular: return "regular";
    case TTestBranch::Equal: return "equal";
    case TTestBranch::ZeroVariance: return "zero_variance";
  }
  return "?";
}

double mean(std::span<const double> v) {
  if (v.empty()) throw UsageError("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) throw UsageError("sample_sd: need at least two values");
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

PairedTTest paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("paired_ttest: length mismatch");
  if (a.size() < 2) throw UsageError("paired_ttest: need at least two pairs");
  std::vector<double> diff(a.size());
  bool all_zero = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff[i] = a[i] - b[i];
    all_zero = all_zero && diff[i] == 0.0;
  }
  PairedTTest r;
  r.df = static_cast<int>(a.size()) - 1;
  if (all_zero) {
    r.branch = TTestBranch::Equal;
    return r;
  }
  const double m = mean(diff);
  const double sd = sample_sd(diff);
  if (sd == 0.0) {
    r.branch = TTestBranch::ZeroVariance;
    r.t = r.cohens_d = std::copysign(std::numeric_limits<double>::infinity(), m);
    r.p = 0.0;
    return r;
  }
  r.t = m / (sd / std::sqrt(static_cast<double>(a.size())));
  r.p = student_t_two_sided_p(r.t, r.df);
  r.cohens_d = m / sd;
  return r;
}

ConfidenceInterval confidence_interval(std::span<const double> scores, double level) {
  if (scores.size() < 2) throw UsageError("confidence_interval: need at least two scores");
  if (!(level > 0.0 && level < 1.0)) throw UsageError("confidence_interval: level must be in (0, 1)");
  const double df = static_cast<double>(scores.size() - 1);
  const double tcrit = student_t_quantile((1.0 + level) / 2.0, df);
  return {mean(scores), tcrit * sample_sd(scores) / std::sqrt(static_cast<double>(scores.size()))};
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace qcb::stats
