#include "latinfo/report.hpp"

#include <ostream>

#include "latinfo/csv.hpp"

namespace latinfo {

namespace {

std::string join_names(const std::vector<std::string>& names, char sep) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += sep;
        out += names[i];
    }
    return out;
}

}  // namespace

Json to_json(const MeasureReport& r) {
    Json j;
    j["measure"] = measure_name(r.measure);
    j["order"] = r.order;
    j["variables"] = r.variables;
    if (r.interval_top) j["interval_top"] = r.interval_top->to_string();
    j["value"] = r.value;
    j["alpha"] = r.config.alpha;
    j["mode"] = mode_name(r.mode);
    if (r.mode == Mode::empirical) {
        j["k"] = r.config.k;
        j["seed"] = r.config.seed;
        j["tie_policy"] = r.config.tie_policy == TiePolicy::error ? "error" : "jitter";
        j["whiten"] = r.config.whiten;
        j["null_correction"] = r.config.null_correction;
        j["replicates"] = r.config.replicates;
    }
    Json terms = Json::array();
    for (const auto& t : r.terms) {
        Json tj;
        tj["partition"] = t.plan.partition.to_string();
        tj["partition_rgs"] = t.plan.partition.rgs();
        tj["coefficient"] = t.plan.coefficient;
        std::vector<std::string> support;
        for (int v : t.plan.reduced_support) support.push_back(r.variables[static_cast<std::size_t>(v)]);
        tj["reduced_support"] = support;
        tj["divergence"] = t.divergence;
        terms.push_back(std::move(tj));
    }
    j["terms"] = std::move(terms);
    if (r.null) {
        j["null"] = {{"mean", r.null->mean}, {"std", r.null->std}, {"p_value", r.null->p_value}, {"count", r.null->count}};
    } else {
        j["null"] = nullptr;
    }
    return j;
}

Json to_json(const PartitionLattice& lattice) {
    Json j;
    j["order"] = lattice.order();
    Json elements = Json::array();
    for (const auto& e : lattice.elements()) elements.push_back(e.rgs());
    j["elements"] = std::move(elements);
    auto triplets = [](const SparseMatrix& m) {
        Json a = Json::array();
        for (const auto& e : m.entries()) a.push_back({e.row, e.col, e.value});
        return a;
    };
    j["zeta"] = triplets(lattice.zeta());
    j["mobius"] = triplets(lattice.mobius());
    Json lanc = Json::array();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        if (lattice.lancaster_mask()[i]) lanc.push_back(i);
    }
    j["lancaster"] = std::move(lanc);
    j["top_index"] = lattice.top_index();
    j["bottom_index"] = lattice.bottom_index();
    return j;
}

Json to_json(const Provenance& p) {
    Json params = Json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    return {{"generator", p.generator}, {"params", std::move(params)}, {"seed", p.seed}};
}

Json to_json(const std::vector<ScanRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) {
        a.push_back({{"subset", r.subset},
                     {"order", r.order},
                     {"value", r.value},
                     {"p_value", r.p_value},
                     {"p_adjusted", r.p_adjusted},
                     {"significant", r.significant}});
    }
    return a;
}

Json to_json(const FeatureSelection& s) {
    return {{"selected", s.selected}, {"scan", to_json(s.rows)}};
}

Json to_json(const EmergenceResult& e) {
    return {{"emergent", e.emergent}, {"scan", to_json(e.rows)}};
}

void write_scan_csv(std::ostream& out, const std::vector<MeasureReport>& reports) {
    out << "subset,measure,order,value,p_value,alpha,k,seed\n";
    for (const auto& r : reports) {
        out << join_names(r.variables, ';') << ',' << measure_name(r.measure) << ',' << r.order << ','
            << format_double(r.value) << ',' << (r.null ? format_double(r.null->p_value) : std::string()) << ','
            << format_double(r.config.alpha) << ',' << r.config.k << ',' << r.config.seed << '\n';
    }
}

}  // namespace latinfo
