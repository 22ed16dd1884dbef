#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latinfo/divergence.hpp"
#include "latinfo/lattice.hpp"
#include "latinfo/sample_matrix.hpp"

namespace latinfo {

enum class MeasureKind { si, li, tc, ii };
enum class LatticeKind { full, lancaster, chain };
enum class Mode { empirical, analytic_gaussian };

MeasureKind parse_measure(const std::string& name);
std::string measure_name(MeasureKind m);
std::string mode_name(Mode m);
LatticeKind lattice_for(MeasureKind m);

struct TermPlan {
    SetPartition partition;
    std::int64_t coefficient = 0;
    /// Variables left after dropping singleton blocks, ascending.
    std::vector<int> reduced_support;
    /// Non-singleton blocks of the partition, ordered by smallest element.
    std::vector<std::vector<int>> reduced_blocks;
    std::size_t reduced_dim = 0;
};

TermPlan make_term(const SetPartition& partition, std::int64_t coefficient);
/// One plan per element of the chosen (sub)lattice, in canonical order.
std::vector<TermPlan> plan_terms(int d, LatticeKind kind);
/// Plans for sigma <= pi with coefficients mu(sigma, pi).
std::vector<TermPlan> plan_interval(const SetPartition& pi);

struct EstimationCost {
    std::size_t naive_total_dim = 0;
    std::size_t reduced_total_dim = 0;
};
EstimationCost estimation_cost(int d, LatticeKind kind);

struct TermValue {
    TermPlan plan;
    double divergence = 0.0;
};

struct NullStats {
    double mean = 0.0;
    double std = 0.0;
    double p_value = 1.0;
    std::size_t count = 0;
};

struct MeasureReport {
    MeasureKind measure = MeasureKind::si;
    int order = 0;
    std::vector<std::string> variables;
    double value = 0.0;
    std::vector<TermValue> terms;
    std::optional<NullStats> null;
    EstimatorConfig config;
    Mode mode = Mode::empirical;
    /// Set for interval measures SI(pi) with pi below the top element.
    std::optional<SetPartition> interval_top;
};

/// Coefficient-weighted compensated sum of the term breakdown.
double recompute_value(const MeasureReport& report);

// Analytic Gaussian oracle. variables index the Gaussian's coordinates; the reference
// product distribution is the identity, so the selected block needs a unit diagonal.
// alpha in (0, 1]; alpha = 1 gives KL.
MeasureReport streitberg_information(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha);
MeasureReport lancaster_information(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha);
MeasureReport total_correlation(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha);
MeasureReport generalized_si(const GaussianSpec& spec, const std::vector<std::size_t>& variables,
                             const SetPartition& pi, double alpha);
MeasureReport analytic_measure(MeasureKind kind, const GaussianSpec& spec, const std::vector<std::size_t>& variables,
                               double alpha);
/// Gaussian interaction information by inclusion-exclusion of subset entropies.
double interaction_information_gaussian(const GaussianSpec& spec, const std::vector<std::size_t>& variables);
/// |SI(d) - (D(top) - sum over pi != top of SI(pi))| on the first d coordinates.
double recursive_check(const GaussianSpec& spec, int d, double alpha);

// Empirical kNN estimates. Null statistics are attached when cfg.permutations > 0.
MeasureReport streitberg_information(const SampleMatrix& data, const std::vector<std::string>& variables,
                                     const EstimatorConfig& cfg);
MeasureReport lancaster_information(const SampleMatrix& data, const std::vector<std::string>& variables,
                                    const EstimatorConfig& cfg);
MeasureReport total_correlation(const SampleMatrix& data, const std::vector<std::string>& variables,
                                const EstimatorConfig& cfg);
MeasureReport generalized_si(const SampleMatrix& data, const std::vector<std::string>& variables,
                             const SetPartition& pi, const EstimatorConfig& cfg);
MeasureReport empirical_measure(MeasureKind kind, const SampleMatrix& data, const std::vector<std::string>& variables,
                                const EstimatorConfig& cfg);

/// Permutation null for an already computed report: every column shuffled
/// independently, the measure re-estimated cfg.permutations times.
NullStats permutation_null(MeasureKind kind, const SampleMatrix& data, const std::vector<std::string>& variables,
                           const EstimatorConfig& cfg, double observed, const std::optional<SetPartition>& pi = {});

}  // namespace latinfo
