#pragma once

#include <string>

#include "flatsurf/census.hpp"
#include "flatsurf/kz_monodromy.hpp"
#include "flatsurf/rel_deform.hpp"
#include "flatsurf/surface.hpp"
#include "json.hpp"

namespace flatsurf {

using Json = nlohmann::ordered_json;

// {"n": 3, "h": [2,1,3], "v": [3,2,1]}, one-based images. ParseError on bad shape.
Json to_json(const Origami& o);
Origami origami_from_json(const Json& j);

// {"cylinders": [{"bottom": [...], "top": [...]}, ...]} with the caller's labels
Json to_json(const CylDiagram& d);
CylDiagram diagram_from_json(const Json& j);

// diagram fields plus "lengths" (per label, in increasing label order), "heights", "twists"
// as rational strings "p/q"
Json to_json(const CylSurface& m);
CylSurface surface_from_json(const Json& j);

Json to_json(const Mat& m);  // row-major nested arrays
Mat mat_from_json(const Json& j);

Json to_json(const ForniReport& r);
ForniReport forni_report_from_json(const Json& j);
Json to_json(const LyapEstimate& e);
Json to_json(const CensusRecord& r);
CensusRecord census_record_from_json(const Json& j);

Json read_json_file(const std::string& path);
std::string stratum_string(const std::vector<int>& kappa);  // "H(2,1,1)"
std::vector<int> parse_stratum(const std::string& s);       // "H(2,1,1)", "2,1,1" or "(2,1,1)"

}  // namespace flatsurf
