#pragma once

#include <span>
#include <vector>

#include "qcb/matrix.hpp"

namespace qcb::classical {

/// Interior quantile edges with duplicates merged.
std::vector<double> quantile_edges(std::span<const double> v, int n_bins);

/// Mutual information (nats) between a quantile-binned feature and labels.
double mutual_information(std::span<const double> feature, const Labels& labels, int n_bins = 10);

}  // namespace qcb::classical
