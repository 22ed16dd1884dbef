#include "latinfo/cli.hpp"

#include <CLI11.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "latinfo/csv.hpp"
#include "latinfo/errors.hpp"
#include "latinfo/families.hpp"
#include "latinfo/lattice.hpp"
#include "latinfo/measures.hpp"
#include "latinfo/parallel.hpp"
#include "latinfo/report.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/significance.hpp"
#include "latinfo/synth.hpp"
#include "latinfo/validation.hpp"

namespace latinfo::cli {

namespace {

constexpr std::size_t kDefaultScanCap = 5000;
constexpr int kMaxScanOrder = 5;

struct EstimatorFlags {
    std::uint64_t seed = 0;
    double alpha = 0.5;
    std::size_t k = 30;
    std::size_t threads = 0;
    std::string tie_policy = "error";
    std::size_t permutations = 0;
    std::size_t replicates = 1;
    std::size_t early_stop = 0;
    bool no_whiten = false;
    bool no_null_correction = false;

    EstimatorConfig config() const {
        EstimatorConfig cfg;
        cfg.seed = seed;
        cfg.alpha = alpha;
        cfg.k = k;
        if (tie_policy == "error") {
            cfg.tie_policy = TiePolicy::error;
        } else if (tie_policy == "jitter") {
            cfg.tie_policy = TiePolicy::jitter;
        } else {
            throw InvalidArgument("unknown tie policy '" + tie_policy + "' (expected error or jitter)");
        }
        cfg.permutations = permutations;
        cfg.replicates = replicates;
        cfg.early_stop = early_stop;
        cfg.whiten = !no_whiten;
        cfg.null_correction = !no_null_correction;
        return cfg;
    }
};

void add_seed(CLI::App* app, EstimatorFlags& f) {
    app->add_option("--seed", f.seed, "Random seed")->envname("LATINFO_SEED");
    app->add_option("--threads", f.threads, "Worker threads (0 = automatic)")->envname("LATINFO_THREADS");
}

void add_estimator(CLI::App* app, EstimatorFlags& f) {
    add_seed(app, f);
    app->add_option("--alpha", f.alpha, "Tsallis order")->envname("LATINFO_ALPHA");
    app->add_option("--k", f.k, "Nearest neighbours")->envname("LATINFO_K");
    app->add_option("--tie-policy", f.tie_policy, "error or jitter");
    app->add_option("--permutations", f.permutations, "Permutation-null resamples");
    app->add_option("--replicates", f.replicates, "Independent realisations per term");
    app->add_option("--early-stop", f.early_stop, "Stop the null after this many exceedances (0 = off)");
    app->add_flag("--no-whiten", f.no_whiten, "Skip covariance whitening of term samples");
    app->add_flag("--no-null-correction", f.no_null_correction, "Skip shuffled-reference bias correction");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

// "12|34" for d <= 9, "1,2|3,4" otherwise; elements are 1-based.
SetPartition parse_partition(const std::string& text, int d) {
    std::vector<std::vector<int>> blocks;
    for (const auto& part : split(text, '|')) {
        if (part.empty()) throw InvalidArgument("empty block in partition '" + text + "'");
        std::vector<int> block;
        if (part.find(',') != std::string::npos) {
            for (const auto& e : split(part, ',')) block.push_back(std::stoi(e) - 1);
        } else {
            for (char c : part) {
                if (c < '1' || c > '9') throw InvalidArgument("bad element '" + std::string(1, c) + "' in partition");
                block.push_back(c - '1');
            }
        }
        blocks.push_back(std::move(block));
    }
    return SetPartition::from_blocks(d, blocks);
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw InputError("cannot open '" + path + "' for writing");
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* stream_;
};

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

GaussianSpec sample_correlation(const SampleMatrix& data, const std::vector<std::string>& columns) {
    const auto idx = data.column_indices(columns);
    const std::size_t n = data.rows(), d = idx.size();
    if (n < 2) throw InputError("need at least two rows for a sample correlation");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data(r, idx[c]);
    }
    const Eigen::MatrixXd centred = x.rowwise() - x.colwise().mean();
    Eigen::MatrixXd cov = centred.transpose() * centred / static_cast<double>(n - 1);
    const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
    for (Eigen::Index i = 0; i < cov.rows(); ++i) {
        if (!(sd(i) > 0.0)) throw InputError("column '" + columns[static_cast<std::size_t>(i)] + "' is constant");
    }
    Eigen::MatrixXd corr = sd.asDiagonal().inverse() * cov * sd.asDiagonal().inverse();
    for (Eigen::Index i = 0; i < corr.rows(); ++i) {
        corr(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) corr(i, j) = corr(j, i);
    }
    return GaussianSpec(corr);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Lexicographic k-subsets of 0..n-1.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Distinct uniform k-subsets (Floyd's algorithm per draw), returned in lexicographic order.
std::vector<std::vector<std::size_t>> sample_subsets(std::size_t n, std::size_t k, std::size_t count,
                                                     std::uint64_t seed) {
    auto rng = make_stream(seed, {tag("scan-sample")});
    std::set<std::vector<std::size_t>> chosen;
    while (chosen.size() < count) {
        std::set<std::size_t> s;
        for (std::size_t j = n - k; j < n; ++j) {
            const auto t = static_cast<std::size_t>(rng.bounded(j + 1));
            if (!s.insert(t).second) s.insert(j);
        }
        chosen.emplace(s.begin(), s.end());
    }
    return {chosen.begin(), chosen.end()};
}

int cmd_measure(const std::string& input, const std::string& output, const std::string& measure, int order,
                const std::string& columns_flag, const std::string& partition, const std::string& mode,
                const std::string& family, double rho, const std::string& format, const EstimatorFlags& flags,
                std::ostream& out) {
    const MeasureKind kind = parse_measure(measure);
    std::vector<std::string> columns = columns_flag.empty() ? std::vector<std::string>{} : split(columns_flag, ',');
    MeasureReport report;
    if (mode == "analytic-gaussian") {
        if (!(flags.alpha > 0.0 && flags.alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
        GaussianSpec spec = [&] {
            if (!input.empty()) {
                const auto data = read_csv(input);
                if (columns.empty()) {
                    if (order <= 0 || static_cast<std::size_t>(order) > data.cols()) throw InvalidArgument("give --columns or a valid --order");
                    columns.assign(data.columns().begin(), data.columns().begin() + order);
                }
                return sample_correlation(data, columns);
            }
            if (family.empty()) throw InvalidArgument("analytic mode needs --input or --family");
            if (!columns.empty()) throw InvalidArgument("--columns requires --input");
            return family_covariance(parse_family(family), rho, order > 0 ? order : 4);
        }();
        std::vector<std::size_t> vars(spec.dim());
        for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
        if (order > 0 && static_cast<std::size_t>(order) != vars.size()) throw InvalidArgument("--order does not match the variable count");
        if (!partition.empty()) {
            if (kind != MeasureKind::si) throw InvalidArgument("--partition applies to si only");
            report = generalized_si(spec, vars, parse_partition(partition, static_cast<int>(vars.size())), flags.alpha);
        } else {
            report = analytic_measure(kind, spec, vars, flags.alpha);
        }
        if (!columns.empty()) report.variables = columns;
    } else if (mode == "empirical") {
        if (input.empty()) throw InvalidArgument("empirical mode needs --input");
        const auto data = read_csv(input);
        if (columns.empty()) {
            if (order <= 0 || static_cast<std::size_t>(order) > data.cols()) throw InvalidArgument("give --columns or a valid --order");
            columns.assign(data.columns().begin(), data.columns().begin() + order);
        }
        if (order > 0 && static_cast<std::size_t>(order) != columns.size()) throw InvalidArgument("--order does not match the column count");
        const auto cfg = flags.config();
        if (!partition.empty()) {
            if (kind != MeasureKind::si) throw InvalidArgument("--partition applies to si only");
            report = generalized_si(data, columns, parse_partition(partition, static_cast<int>(columns.size())), cfg);
        } else {
            report = empirical_measure(kind, data, columns, cfg);
        }
    } else {
        throw InvalidArgument("unknown mode '" + mode + "' (expected empirical or analytic-gaussian)");
    }
    Output o(output, out);
    if (format == "csv") {
        write_scan_csv(o.stream(), {report});
    } else {
        write_json(o.stream(), to_json(report));
    }
    return kExitOk;
}

int cmd_scan(const std::string& input, const std::string& output, const std::string& measure, int order,
             const std::string& columns_flag, std::size_t cap, std::size_t sample, const std::string& format,
             const EstimatorFlags& flags, std::ostream& out) {
    const MeasureKind kind = parse_measure(measure);
    if (kind == MeasureKind::ii) throw InvalidArgument("scan supports si, li and tc");
    if (order < 2 || order > kMaxScanOrder) throw InvalidArgument("scan order must lie in [2, 5]");
    const auto data = read_csv(input);
    const std::vector<std::string> columns = columns_flag.empty() ? data.columns() : split(columns_flag, ',');
    data.column_indices(columns);
    const auto d = static_cast<std::size_t>(order);
    if (columns.size() < d) throw InvalidArgument("fewer columns than the scan order");
    const std::uint64_t total = binomial(columns.size(), d);
    std::vector<std::vector<std::size_t>> subsets;
    if (sample > 0 && sample < total) {
        subsets = sample_subsets(columns.size(), d, sample, flags.seed);
    } else if (sample > 0 || total <= cap) {
        subsets = all_subsets(columns.size(), d);
    } else {
        throw InvalidArgument(std::to_string(total) + " subsets exceed the cap of " + std::to_string(cap) +
                              "; pass --sample or raise --cap");
    }
    const auto cfg = flags.config();
    std::vector<MeasureReport> reports;
    reports.reserve(subsets.size());
    for (const auto& s : subsets) {
        std::vector<std::string> vars;
        for (std::size_t i : s) vars.push_back(columns[i]);
        reports.push_back(empirical_measure(kind, data, vars, cfg));
    }
    Output o(output, out);
    if (format == "json") {
        Json a = Json::array();
        for (const auto& r : reports) a.push_back(to_json(r));
        write_json(o.stream(), a);
    } else {
        write_scan_csv(o.stream(), reports);
    }
    return kExitOk;
}

int cmd_synth(const std::string& generator, std::size_t n, long long coupled, const std::string& family, double rho,
              int d, std::uint64_t seed, const std::string& output, std::ostream& out) {
    if (n == 0) throw InvalidArgument("--n must be positive");
    SampleMatrix data;
    const std::size_t c = coupled < 0 ? n : static_cast<std::size_t>(coupled);
    if (generator == "xor") {
        data = xor_gate(n, c, seed);
    } else if (generator == "copy") {
        data = copy_gate(n, c, seed);
    } else if (generator == "gaussian") {
        data = sample_gaussian(family_covariance(parse_family(family), rho, d), n, seed);
    } else if (generator == "table1") {
        data = table1_dataset(n, seed);
    } else {
        throw InvalidArgument("unknown generator '" + generator + "' (expected xor, copy, gaussian or table1)");
    }
    Output o(output, out);
    write_csv(o.stream(), data);
    if (!output.empty() && data.provenance()) {
        Output side(output + ".json", out);
        write_json(side.stream(), to_json(*data.provenance()));
    }
    return kExitOk;
}

int cmd_select(const std::string& input, const std::string& output, const std::string& target, std::size_t max_set,
               double threshold, const std::string& format, const EstimatorFlags& flags, std::ostream& out) {
    const auto data = read_csv(input);
    const auto cfg = flags.config();
    const auto sel = select_features(data, target, max_set, cfg, threshold);
    Output o(output, out);
    if (format == "csv") {
        o.stream() << "subset,order,value,p_value,p_adjusted,significant\n";
        for (const auto& r : sel.rows) {
            std::string subset;
            for (const auto& s : r.subset) subset += (subset.empty() ? "" : ";") + s;
            o.stream() << subset << ',' << r.order << ',' << format_double(r.value) << ',' << format_double(r.p_value)
                       << ',' << format_double(r.p_adjusted) << ',' << (r.significant ? 1 : 0) << '\n';
        }
    } else {
        Json j;
        j["target"] = target;
        j["max_set"] = max_set;
        j["threshold"] = threshold;
        j["alpha"] = cfg.alpha;
        j["k"] = cfg.k;
        j["seed"] = cfg.seed;
        j["permutations"] = cfg.permutations;
        j["selected"] = sel.selected;
        j["scan"] = to_json(sel.rows);
        write_json(o.stream(), j);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice-based information measures", "latinfo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    EstimatorFlags flags;
    std::string input, output, measure = "si", columns, partition, mode = "empirical", family, format, target;
    std::string generator, suite;
    int order = 0, d = 4;
    double rho = 0.0, threshold = 0.05;
    std::size_t cap = kDefaultScanCap, sample = 0, n = 0, max_set = 3;
    long long coupled = -1;
    bool verbose = false;

    auto* m = app.add_subcommand("measure", "Compute one measure on named columns");
    m->add_option("--input,-i", input, "CSV file");
    m->add_option("--output,-o", output, "Output file (default stdout)");
    m->add_option("--measure", measure, "si, li, tc or ii")->capture_default_str();
    m->add_option("--order", order, "Number of variables");
    m->add_option("--columns", columns, "Comma-separated column names");
    m->add_option("--partition", partition, "Interval top for SI, e.g. 12|34");
    m->add_option("--mode", mode, "empirical or analytic-gaussian")->capture_default_str();
    m->add_option("--family", family, "sigma1..sigma6 (analytic mode without input)");
    m->add_option("--rho", rho, "Family coupling");
    m->add_option("--format", format, "json or csv");
    add_estimator(m, flags);

    auto* s = app.add_subcommand("scan", "Measure every column subset of one order");
    s->add_option("--input,-i", input, "CSV file")->required();
    s->add_option("--output,-o", output, "Output file (default stdout)");
    s->add_option("--measure", measure, "si, li or tc")->capture_default_str();
    s->add_option("--order", order, "Subset size (2..5)")->required();
    s->add_option("--columns", columns, "Restrict to these columns");
    s->add_option("--cap", cap, "Refuse more subsets than this without --sample")->capture_default_str();
    s->add_option("--sample", sample, "Evaluate this many distinct random subsets");
    s->add_option("--format", format, "csv or json");
    add_estimator(s, flags);

    auto* y = app.add_subcommand("synth", "Generate a synthetic data set");
    y->add_option("generator", generator, "xor, copy, gaussian or table1")->required();
    y->add_option("--n", n, "Rows")->required();
    y->add_option("--coupled", coupled, "Coupled rows for xor/copy (default n)");
    y->add_option("--family", family, "sigma1..sigma6 for gaussian")->capture_default_str();
    y->add_option("--rho", rho, "Family coupling");
    y->add_option("--d", d, "Dimension (sigma1 only)")->capture_default_str();
    y->add_option("--output,-o", output, "CSV path; a provenance sidecar <path>.json is written next to it");
    add_seed(y, flags);

    auto* l = app.add_subcommand("lattice", "Export the partition lattice as JSON");
    l->add_option("--d", d, "Order (1..9)")->required();
    l->add_option("--output,-o", output, "Output file (default stdout)");

    auto* v = app.add_subcommand("validate", "Run a validation suite");
    v->add_option("suite", suite, "lattice, analytic, estimator or all")->required();
    v->add_flag("--verbose", verbose, "Print every sub-check");

    auto* f = app.add_subcommand("select-features", "Select the feature set interacting with a target");
    f->add_option("--input,-i", input, "CSV file")->required();
    f->add_option("--output,-o", output, "Output file (default stdout)");
    f->add_option("--target", target, "Target column")->required();
    f->add_option("--max-set", max_set, "Largest candidate set (1..4)")->capture_default_str();
    f->add_option("--threshold", threshold, "BH-adjusted significance level")->capture_default_str();
    f->add_option("--format", format, "json or csv");
    add_estimator(f, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kExitInputError;
    }

    try {
        if (flags.threads > 0) set_thread_count(flags.threads);
        if (m->parsed()) {
            return cmd_measure(input, output, measure, order, columns, partition, mode, family, rho,
                               format.empty() ? "json" : format, flags, out);
        }
        if (s->parsed()) {
            return cmd_scan(input, output, measure, order, columns, cap, sample, format.empty() ? "csv" : format, flags,
                            out);
        }
        if (y->parsed()) {
            return cmd_synth(generator, n, coupled, family.empty() ? "sigma1" : family, rho, d, flags.seed, output, out);
        }
        if (l->parsed()) {
            if (d < 1 || d > 9) throw InvalidArgument("--d must lie in [1, 9]");
            Output o(output, out);
            write_json(o.stream(), to_json(build_lattice(d)));
            return kExitOk;
        }
        if (v->parsed()) {
            return validation::run_suite(validation::parse_suite(suite), out, verbose) ? kExitOk : kExitValidationFailed;
        }
        if (f->parsed()) {
            return cmd_select(input, output, target, max_set, threshold, format.empty() ? "json" : format, flags, out);
        }
    } catch (const EstimationError& e) {
        err << "estimation error: " << e.what() << '\n';
        return kExitEstimationError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace latinfo::cli
