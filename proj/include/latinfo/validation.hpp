#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "latinfo/sample_matrix.hpp"

namespace latinfo::validation {

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    /// One line per sub-check; failures are prefixed "FAIL".
    std::vector<std::string> details;
    double seconds = 0.0;
};

enum class Suite { lattice, analytic, estimator, all };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);

CheckResult check_lattice_exactness();
CheckResult check_estimation_cost();
CheckResult check_kl_equivalence();
CheckResult check_pythagorean();
CheckResult check_vanishing();
CheckResult check_estimator_accuracy();
CheckResult check_monotonicity();
CheckResult check_feature_selection();

/// Checks belonging to a suite, in run order. `all` also includes feature selection.
std::vector<std::function<CheckResult()>> suite_checks(Suite s);

/// Runs the suite, printing one status line per check (plus failing details) to out.
/// Output carries no timings, so repeated runs are byte-identical. Returns true iff every check passed.
bool run_suite(Suite s, std::ostream& out, bool verbose = false);

void print_result(const CheckResult& r, std::ostream& out, bool verbose, bool timing = true);

// Baselines used by the feature-selection comparison.

/// Kraskov-Stoegbauer-Grassberger estimator (variant 1, max-norm) of I(X; Y) in nats.
double ksg_mutual_information(const std::vector<double>& x, const std::vector<double>& y, std::size_t k = 3);

/// Mean squared error on the test rows of a k-nearest-neighbour regressor (Euclidean,
/// uniform weights) fitted on the train rows. Features are z-scored with train statistics.
double knn_regression_mse(const SampleMatrix& data, const std::vector<std::string>& features,
                          const std::string& target, std::size_t train_rows, std::size_t k = 10);

double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace latinfo::validation
