#include "latinfo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "latinfo/errors.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/summation.hpp"

namespace latinfo {

namespace {

constexpr int kMaxEmpiricalOrder = 7;
constexpr std::size_t kNullPilot = 30;

std::uint32_t mask_of(const std::vector<int>& elements) {
    std::uint32_t m = 0;
    for (int e : elements) m |= 1u << e;
    return m;
}

std::int64_t signed_factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i < n; ++i) f *= i;
    return (n % 2 == 1) ? f : -f;
}

void check_plan_order(int d) {
    if (d < 2 || d > kMaxLatticeOrder) {
        throw InvalidArgument("measure order " + std::to_string(d) + " outside [2, " + std::to_string(kMaxLatticeOrder) + "]");
    }
}

// log of the integral of f^alpha g^(1-alpha) for f = N(0, cov), g = N(0, I).
double log_overlap_vs_identity(const Eigen::MatrixXd& cov, double alpha) {
    const auto n = cov.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::LLT<Eigen::MatrixXd> lf(cov);
    if (lf.info() != Eigen::Success) throw InvalidArgument("block covariance not positive definite");
    Eigen::MatrixXd blend = alpha * lf.solve(id) + (1.0 - alpha) * id;
    blend = 0.5 * (blend + blend.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> lb(blend);
    if (lb.info() != Eigen::Success) throw InvalidArgument("blend matrix not positive definite");
    double ld_f = 0.0, ld_b = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        ld_f += std::log(lf.matrixLLT()(i, i));
        ld_b += std::log(lb.matrixLLT()(i, i));
    }
    return -alpha * ld_f - ld_b;
}

Eigen::MatrixXd sub_covariance(const GaussianSpec& spec, const std::vector<std::size_t>& vars,
                               const std::vector<int>& block) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(block.size()), static_cast<Eigen::Index>(block.size()));
    for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = 0; b < block.size(); ++b) {
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                spec.covariance()(static_cast<Eigen::Index>(vars[static_cast<std::size_t>(block[a])]),
                                  static_cast<Eigen::Index>(vars[static_cast<std::size_t>(block[b])]));
        }
    }
    return m;
}

// D(p_pi || prod p_i) for a Gaussian with unit diagonal. Both sides factor over the
// blocks, so KL adds blockwise and the Tsallis overlap multiplies blockwise.
double analytic_term(const GaussianSpec& spec, const std::vector<std::size_t>& vars, const TermPlan& plan,
                     double alpha) {
    if (plan.reduced_dim == 0) return 0.0;
    if (alpha == 1.0) {
        double kl = 0.0;
        for (const auto& b : plan.reduced_blocks) {
            Eigen::LLT<Eigen::MatrixXd> llt(sub_covariance(spec, vars, b));
            if (llt.info() != Eigen::Success) throw InvalidArgument("block covariance not positive definite");
            double ld = 0.0;
            for (Eigen::Index i = 0; i < llt.matrixLLT().rows(); ++i) ld += std::log(llt.matrixLLT()(i, i));
            kl += -ld;  // -1/2 log|Sigma_b|
        }
        return kl;
    }
    double log_t = 0.0;
    for (const auto& b : plan.reduced_blocks) log_t += log_overlap_vs_identity(sub_covariance(spec, vars, b), alpha);
    return std::expm1(log_t) / (alpha - 1.0);
}

void check_analytic_inputs(const GaussianSpec& spec, const std::vector<std::size_t>& vars, double alpha,
                           int max_order) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("analytic alpha must lie in (0, 1]");
    const int d = static_cast<int>(vars.size());
    if (d < 2 || d > max_order) {
        throw InvalidArgument("analytic measure order " + std::to_string(d) + " outside [2, " + std::to_string(max_order) + "]");
    }
    std::vector<std::size_t> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidArgument("repeated variable");
    for (std::size_t v : vars) {
        if (v >= spec.dim()) throw InvalidArgument("variable index " + std::to_string(v) + " out of range");
        if (std::abs(spec.covariance()(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) - 1.0) > 1e-12) {
            throw InvalidArgument("analytic mode needs unit variances (variable " + std::to_string(v + 1) + ")");
        }
    }
}

std::vector<std::string> index_names(const std::vector<std::size_t>& vars) {
    std::vector<std::string> out;
    for (std::size_t v : vars) out.push_back("x" + std::to_string(v + 1));
    return out;
}

MeasureReport analytic_report(MeasureKind kind, const GaussianSpec& spec, const std::vector<std::size_t>& vars,
                              double alpha, std::vector<TermPlan> plans, std::optional<SetPartition> top) {
    MeasureReport r;
    r.measure = kind;
    r.order = static_cast<int>(vars.size());
    r.variables = index_names(vars);
    r.mode = Mode::analytic_gaussian;
    r.config.alpha = alpha;
    r.interval_top = std::move(top);
    for (auto& p : plans) {
        const double div = analytic_term(spec, vars, p, alpha);
        r.terms.push_back({std::move(p), div});
    }
    r.value = recompute_value(r);
    return r;
}

// Realises empirical divergence terms over one data table.
class TermEngine {
public:
    TermEngine(const SampleMatrix& data, const EstimatorConfig& cfg) : data_(data), cfg_(cfg) {}

    double divergence(const TermPlan& plan) {
        if (plan.reduced_dim == 0) return 0.0;
        const std::uint32_t support = mask_of(plan.reduced_support);
        NeumaierSum acc;
        for (std::size_t rep = 0; rep < cfg_.replicates; ++rep) {
            std::vector<const std::vector<std::size_t>*> x_perm(data_.cols(), nullptr);
            for (std::size_t bi = 0; bi < plan.reduced_blocks.size(); ++bi) {
                const auto& block = plan.reduced_blocks[bi];
                const auto* perm = bi == 0 ? nullptr : &permutation(tag("p-block"), rep, mask_of(block));
                for (int v : block) x_perm[static_cast<std::size_t>(v)] = perm;
            }
            const auto x = gather(plan.reduced_support, x_perm);
            const auto y = gather(plan.reduced_support, q_perms(rep, plan.reduced_support));
            EstimatorConfig est = cfg_;
            est.seed = derive_key(cfg_.seed, {tag("term"), rep, plan.partition.key()});
            const std::string context = plan.partition.to_string();
            acc.add(estimate_tsallis_knn(x, y, plan.reduced_dim, est, context).value);
            if (cfg_.null_correction) acc.add(-null_divergence(rep, support, plan));
        }
        return acc.value() / static_cast<double>(cfg_.replicates);
    }

private:
    const std::vector<std::size_t>& permutation(std::uint64_t kind, std::size_t rep, std::uint64_t id) {
        const auto key = std::make_tuple(kind, rep, id);
        auto it = perms_.find(key);
        if (it == perms_.end()) {
            auto rng = make_stream(cfg_.seed, {kind, rep, id});
            it = perms_.emplace(key, random_permutation(data_.rows(), rng)).first;
        }
        return it->second;
    }

    std::vector<const std::vector<std::size_t>*> q_perms(std::size_t rep, const std::vector<int>& support) {
        std::vector<const std::vector<std::size_t>*> out(data_.cols(), nullptr);
        for (int v : support) out[static_cast<std::size_t>(v)] = &permutation(tag("q-column"), rep, static_cast<std::uint64_t>(v));
        return out;
    }

    std::vector<double> gather(const std::vector<int>& support,
                               const std::vector<const std::vector<std::size_t>*>& perms) const {
        const std::size_t n = data_.rows(), s = support.size();
        std::vector<double> out(n * s);
        for (std::size_t j = 0; j < s; ++j) {
            const auto v = static_cast<std::size_t>(support[j]);
            const auto* perm = perms[v];
            for (std::size_t r = 0; r < n; ++r) out[r * s + j] = data_(perm ? (*perm)[r] : r, v);
        }
        return out;
    }

    double null_divergence(std::size_t rep, std::uint32_t support, const TermPlan& plan) {
        const auto key = std::make_pair(rep, support);
        auto it = null_cache_.find(key);
        if (it != null_cache_.end()) return it->second;
        std::vector<const std::vector<std::size_t>*> x_perm(data_.cols(), nullptr);
        for (int v : plan.reduced_support) {
            x_perm[static_cast<std::size_t>(v)] = &permutation(tag("null-column"), rep, static_cast<std::uint64_t>(v));
        }
        const auto x = gather(plan.reduced_support, x_perm);
        const auto y = gather(plan.reduced_support, q_perms(rep, plan.reduced_support));
        EstimatorConfig est = cfg_;
        est.seed = derive_key(cfg_.seed, {tag("null-term"), rep, support});
        const double v = estimate_tsallis_knn(x, y, plan.reduced_dim, est, "null reference on support of " +
                                                                              plan.partition.to_string()).value;
        null_cache_.emplace(key, v);
        return v;
    }

    const SampleMatrix& data_;
    const EstimatorConfig& cfg_;
    std::map<std::tuple<std::uint64_t, std::size_t, std::uint64_t>, std::vector<std::size_t>> perms_;
    std::map<std::pair<std::size_t, std::uint32_t>, double> null_cache_;
};

SampleMatrix select_variables(const SampleMatrix& data, const std::vector<std::string>& variables, int max_order) {
    const int d = static_cast<int>(variables.size());
    if (d < 2 || d > max_order) {
        throw InvalidArgument("empirical measure order " + std::to_string(d) + " outside [2, " + std::to_string(max_order) + "]");
    }
    const auto idx = data.column_indices(variables);
    std::vector<std::size_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("repeated variable");
    return data.select(idx);
}

MeasureReport empirical_report(MeasureKind kind, const SampleMatrix& data, const std::vector<std::string>& variables,
                               const EstimatorConfig& cfg, std::vector<TermPlan> plans,
                               std::optional<SetPartition> top) {
    cfg.validate();
    const SampleMatrix sel = select_variables(data, variables, kMaxEmpiricalOrder);
    MeasureReport r;
    r.measure = kind;
    r.order = static_cast<int>(variables.size());
    r.variables = variables;
    r.mode = Mode::empirical;
    r.config = cfg;
    r.interval_top = top;
    TermEngine engine(sel, cfg);
    for (auto& p : plans) {
        const double div = engine.divergence(p);
        r.terms.push_back({std::move(p), div});
    }
    r.value = recompute_value(r);
    if (cfg.permutations > 0) r.null = permutation_null(kind, data, variables, cfg, r.value, top);
    return r;
}

std::vector<TermPlan> plans_for(MeasureKind kind, int d) {
    if (kind == MeasureKind::ii) throw InvalidArgument("interaction information is available in analytic mode only");
    return plan_terms(d, lattice_for(kind));
}

}  // namespace

MeasureKind parse_measure(const std::string& name) {
    if (name == "si") return MeasureKind::si;
    if (name == "li") return MeasureKind::li;
    if (name == "tc") return MeasureKind::tc;
    if (name == "ii") return MeasureKind::ii;
    throw InvalidArgument("unknown measure '" + name + "' (expected si, li, tc or ii)");
}

std::string measure_name(MeasureKind m) {
    switch (m) {
        case MeasureKind::si: return "SI";
        case MeasureKind::li: return "LI";
        case MeasureKind::tc: return "TC";
        case MeasureKind::ii: return "II";
    }
    return "?";
}

std::string mode_name(Mode m) { return m == Mode::empirical ? "empirical" : "analytic_gaussian"; }

LatticeKind lattice_for(MeasureKind m) {
    switch (m) {
        case MeasureKind::li: return LatticeKind::lancaster;
        case MeasureKind::tc: return LatticeKind::chain;
        default: return LatticeKind::full;
    }
}

TermPlan make_term(const SetPartition& partition, std::int64_t coefficient) {
    TermPlan t;
    t.partition = partition;
    t.coefficient = coefficient;
    for (auto& b : partition.blocks()) {
        if (b.size() < 2) continue;
        t.reduced_support.insert(t.reduced_support.end(), b.begin(), b.end());
        t.reduced_blocks.push_back(std::move(b));
    }
    std::sort(t.reduced_support.begin(), t.reduced_support.end());
    t.reduced_dim = t.reduced_support.size();
    return t;
}

std::vector<TermPlan> plan_terms(int d, LatticeKind kind) {
    check_plan_order(d);
    std::vector<TermPlan> out;
    if (kind == LatticeKind::chain) {
        out.push_back(make_term(SetPartition::top(d), 1));
        out.push_back(make_term(SetPartition::bottom(d), -1));
        return out;
    }
    for (const auto& p : enumerate_partitions(d)) {
        const int r = p.block_count();
        if (kind == LatticeKind::full) {
            out.push_back(make_term(p, signed_factorial(r)));
        } else if (p.non_singleton_blocks() <= 1) {
            out.push_back(make_term(p, (r % 2 == 1) ? 1 : -1));
        }
    }
    return out;
}

std::vector<TermPlan> plan_interval(const SetPartition& pi) {
    check_plan_order(pi.order());
    std::vector<TermPlan> out;
    for (const auto& sigma : enumerate_partitions(pi.order())) {
        if (refines(sigma, pi)) out.push_back(make_term(sigma, mobius_interval(sigma, pi)));
    }
    return out;
}

EstimationCost estimation_cost(int d, LatticeKind kind) {
    const auto plans = plan_terms(d, kind);
    EstimationCost c;
    c.naive_total_dim = plans.size() * static_cast<std::size_t>(d);
    for (const auto& p : plans) c.reduced_total_dim += p.reduced_dim;
    return c;
}

double recompute_value(const MeasureReport& report) {
    NeumaierSum s;
    for (const auto& t : report.terms) s.add(static_cast<double>(t.plan.coefficient) * t.divergence);
    return s.value();
}

MeasureReport streitberg_information(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha) {
    return analytic_measure(MeasureKind::si, spec, variables, alpha);
}

MeasureReport lancaster_information(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha) {
    return analytic_measure(MeasureKind::li, spec, variables, alpha);
}

MeasureReport total_correlation(const GaussianSpec& spec, const std::vector<std::size_t>& variables, double alpha) {
    return analytic_measure(MeasureKind::tc, spec, variables, alpha);
}

MeasureReport analytic_measure(MeasureKind kind, const GaussianSpec& spec, const std::vector<std::size_t>& variables,
                               double alpha) {
    check_analytic_inputs(spec, variables, alpha, kMaxLatticeOrder);
    if (kind == MeasureKind::ii) {
        MeasureReport r;
        r.measure = kind;
        r.order = static_cast<int>(variables.size());
        r.variables = index_names(variables);
        r.mode = Mode::analytic_gaussian;
        r.config.alpha = 1.0;
        r.value = interaction_information_gaussian(spec, variables);
        return r;
    }
    return analytic_report(kind, spec, variables, alpha, plans_for(kind, static_cast<int>(variables.size())), {});
}

MeasureReport generalized_si(const GaussianSpec& spec, const std::vector<std::size_t>& variables,
                             const SetPartition& pi, double alpha) {
    check_analytic_inputs(spec, variables, alpha, kMaxLatticeOrder);
    if (pi.order() != static_cast<int>(variables.size())) throw InvalidArgument("partition order differs from variable count");
    return analytic_report(MeasureKind::si, spec, variables, alpha, plan_interval(pi), pi);
}

double interaction_information_gaussian(const GaussianSpec& spec, const std::vector<std::size_t>& variables) {
    const int d = static_cast<int>(variables.size());
    if (d < 1 || d > 20) throw InvalidArgument("interaction information order out of range");
    for (std::size_t v : variables) {
        if (v >= spec.dim()) throw InvalidArgument("variable index out of range");
    }
    const double log_2pie = std::log(2.0 * M_PI * std::exp(1.0));
    NeumaierSum s;
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
        std::vector<std::size_t> sub;
        for (int i = 0; i < d; ++i) {
            if (m >> i & 1u) sub.push_back(variables[static_cast<std::size_t>(i)]);
        }
        const int t = static_cast<int>(sub.size());
        const double h = 0.5 * (t * log_2pie + spec.marginal(sub).log_det());
        // -(-1)^(d - |T|) H(T)
        s.add(((d - t) % 2 == 0) ? -h : h);
    }
    return s.value();
}

double recursive_check(const GaussianSpec& spec, int d, double alpha) {
    if (d < 2 || d > 5 || static_cast<std::size_t>(d) > spec.dim()) throw InvalidArgument("recursive check needs 2 <= d <= 5");
    std::vector<std::size_t> vars(static_cast<std::size_t>(d));
    std::iota(vars.begin(), vars.end(), std::size_t{0});
    const SetPartition top = SetPartition::top(d);
    const double si = generalized_si(spec, vars, top, alpha).value;
    check_analytic_inputs(spec, vars, alpha, 5);
    NeumaierSum rhs;
    rhs.add(analytic_term(spec, vars, make_term(top, 1), alpha));
    for (const auto& pi : enumerate_partitions(d)) {
        if (pi == top) continue;
        rhs.add(-generalized_si(spec, vars, pi, alpha).value);
    }
    return std::abs(si - rhs.value());
}

MeasureReport streitberg_information(const SampleMatrix& data, const std::vector<std::string>& variables,
                                     const EstimatorConfig& cfg) {
    return empirical_measure(MeasureKind::si, data, variables, cfg);
}

MeasureReport lancaster_information(const SampleMatrix& data, const std::vector<std::string>& variables,
                                    const EstimatorConfig& cfg) {
    return empirical_measure(MeasureKind::li, data, variables, cfg);
}

MeasureReport total_correlation(const SampleMatrix& data, const std::vector<std::string>& variables,
                                const EstimatorConfig& cfg) {
    return empirical_measure(MeasureKind::tc, data, variables, cfg);
}

MeasureReport empirical_measure(MeasureKind kind, const SampleMatrix& data, const std::vector<std::string>& variables,
                                const EstimatorConfig& cfg) {
    const int d = static_cast<int>(variables.size());
    if (d < 2 || d > kMaxEmpiricalOrder) {
        throw InvalidArgument("empirical measure order " + std::to_string(d) + " outside [2, " +
                              std::to_string(kMaxEmpiricalOrder) + "]");
    }
    return empirical_report(kind, data, variables, cfg, plans_for(kind, d), {});
}

MeasureReport generalized_si(const SampleMatrix& data, const std::vector<std::string>& variables,
                             const SetPartition& pi, const EstimatorConfig& cfg) {
    if (pi.order() != static_cast<int>(variables.size())) throw InvalidArgument("partition order differs from variable count");
    return empirical_report(MeasureKind::si, data, variables, cfg, plan_interval(pi), pi);
}

NullStats permutation_null(MeasureKind kind, const SampleMatrix& data, const std::vector<std::string>& variables,
                           const EstimatorConfig& cfg, double observed, const std::optional<SetPartition>& pi) {
    const SampleMatrix sel = select_variables(data, variables, kMaxEmpiricalOrder);
    EstimatorConfig inner = cfg;
    inner.permutations = 0;
    std::vector<double> nulls;
    std::vector<std::vector<std::size_t>> singletons;
    for (std::size_t c = 0; c < sel.cols(); ++c) singletons.push_back({c});
    auto draw = [&](std::size_t b) {
        const SampleMatrix shuffled = permute_blocks(sel, singletons, derive_key(cfg.seed, {tag("null-resample"), b}));
        inner.seed = derive_key(cfg.seed, {tag("null-estimate"), b});
        const auto& names = sel.columns();
        return pi ? generalized_si(shuffled, names, *pi, inner).value : empirical_measure(kind, shuffled, names, inner).value;
    };
    // Two-sided around the null centre, fixed from a pilot so early stopping stays sequential.
    const std::size_t pilot = std::min(cfg.permutations, kNullPilot);
    for (std::size_t b = 0; b < pilot; ++b) nulls.push_back(draw(b));
    const double centre = compensated_sum(nulls) / static_cast<double>(std::max<std::size_t>(pilot, 1));
    const double dist = std::abs(observed - centre);
    std::size_t exceed = 0;
    bool stopped = false;
    auto count = [&](double v) {
        if (std::abs(v - centre) >= dist) ++exceed;
        if (cfg.early_stop > 0 && exceed >= cfg.early_stop) stopped = true;
    };
    for (std::size_t i = 0; i < nulls.size(); ++i) {
        count(nulls[i]);
        if (stopped) {
            nulls.resize(i + 1);
            break;
        }
    }
    for (std::size_t b = pilot; b < cfg.permutations && !stopped; ++b) {
        nulls.push_back(draw(b));
        count(nulls.back());
    }
    NullStats s;
    s.count = nulls.size();
    if (s.count == 0) return s;
    s.mean = compensated_sum(nulls) / static_cast<double>(s.count);
    NeumaierSum var;
    for (double v : nulls) var.add((v - s.mean) * (v - s.mean));
    s.std = s.count > 1 ? std::sqrt(var.value() / static_cast<double>(s.count - 1)) : 0.0;
    s.p_value = stopped ? static_cast<double>(exceed) / static_cast<double>(s.count)
                        : static_cast<double>(1 + exceed) / static_cast<double>(s.count + 1);
    return s;
}

}  // namespace latinfo
