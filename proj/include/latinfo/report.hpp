#pragma once

#include <iosfwd>
#include <json.hpp>
#include <vector>

#include "latinfo/lattice.hpp"
#include "latinfo/measures.hpp"
#include "latinfo/sample_matrix.hpp"
#include "latinfo/significance.hpp"

namespace latinfo {

using Json = nlohmann::ordered_json;

Json to_json(const MeasureReport& report);
Json to_json(const PartitionLattice& lattice);
Json to_json(const Provenance& provenance);
Json to_json(const std::vector<ScanRow>& rows);
Json to_json(const FeatureSelection& selection);
Json to_json(const EmergenceResult& result);

/// Long-format rows: subset,measure,order,value,p_value,alpha,k,seed.
void write_scan_csv(std::ostream& out, const std::vector<MeasureReport>& reports);

}  // namespace latinfo
