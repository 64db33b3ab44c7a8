#include "qcb/classical/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qcb/errors.hpp"

namespace qcb::classical {

std::vector<double> quantile_edges(std::span<const double> v, int n_bins) {
  if (n_bins < 2) throw UsageError("quantile_edges: n_bins must be >= 2");
  if (v.empty()) return {};
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  const double last = static_cast<double>(sorted.size() - 1);
  std::vector<double> edges;
  for (int k = 1; k < n_bins; ++k) {
    const double pos = last * k / n_bins;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    edges.push_back(sorted[lo] + frac * (sorted[hi] - sorted[lo]));
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double mutual_information(std::span<const double> feature, const Labels& labels, int n_bins) {
  if (feature.size() != labels.size()) throw UsageError("mutual_information: length mismatch");
  if (n_bins < 2) throw UsageError("mutual_information: n_bins must be >= 2");
  if (feature.empty()) return 0.0;
  const auto edges = quantile_edges(feature, n_bins);
  std::map<std::pair<std::size_t, int>, double> joint;
  std::map<std::size_t, double> pb;
  std::map<int, double> pc;
  const double n = static_cast<double>(feature.size());
  for (std::size_t i = 0; i < feature.size(); ++i) {
    const auto bin = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), feature[i]) - edges.begin());
    joint[{bin, labels[i]}] += 1.0 / n;
    pb[bin] += 1.0 / n;
    pc[labels[i]] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [key, p] : joint) mi += p * std::log(p / (pb[key.first] * pc[key.second]));
  return std::max(0.0, mi);
}

}  // namespace qcb::classical
