#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "latinfo/measures.hpp"

namespace latinfo {

/// Benjamini-Hochberg adjusted p-values, same order as the input.
std::vector<double> benjamini_hochberg(const std::vector<double>& p);

struct ScanRow {
    std::vector<std::string> subset;
    int order = 0;
    double value = 0.0;
    double p_value = 1.0;
    double p_adjusted = 1.0;
    bool significant = false;
};

struct EmergenceResult {
    std::vector<ScanRow> rows;
    /// Top-order SI significant while no lower-order subset is.
    bool emergent = false;
};

/// SI with permutation nulls over every subset of orders 2..d (d <= 6). p-values are
/// BH-adjusted within each order; requires cfg.permutations > 0.
EmergenceResult emergence_scan(const SampleMatrix& data, const std::vector<std::string>& variables,
                               const EstimatorConfig& cfg, double threshold = 0.05);

struct FeatureSelection {
    std::vector<std::string> selected;
    /// One row per candidate set; subset lists the target first.
    std::vector<ScanRow> rows;
};

/// Scans SI({target} u S) for every non-empty S with |S| <= max_set and picks the
/// smallest significant set not dominated by a significant superset with lower p.
FeatureSelection select_features(const SampleMatrix& data, const std::string& target, std::size_t max_set,
                                 const EstimatorConfig& cfg, double threshold = 0.05);

}  // namespace latinfo
