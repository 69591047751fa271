#pragma once

#include <json.hpp>

#include "betti/estimators.hpp"
#include "betti/oracle.hpp"
#include "betti/randgraphs.hpp"

namespace betti {

/// `elapsed_ms` is null unless `with_timing`, so repeated runs serialize
/// identically.
nlohmann::ordered_json to_json(const EstimateResult& r, bool with_timing = false);
nlohmann::ordered_json to_json(const OracleReport& r);
nlohmann::ordered_json to_json(const MomentBounds& b);
nlohmann::ordered_json to_json(const SpectralSummary& s);
nlohmann::ordered_json to_json(const DegreeDiagnostics& d);
nlohmann::ordered_json to_json(const RegimeReport& r);

}  // namespace betti
