#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "genein/search.hpp"

namespace genein {

using json = nlohmann::json;

// GENEIN_TOL if set and parseable, else kDefaultTol.
double default_tolerance();

// Text starting with '{' is parsed directly, anything else is read as a path.
GEProblem load_problem(const std::string& path_or_text);
GEProblem load_problem_json(const json& j);

json problem_to_json(const GEProblem& p);
std::string serialize(const GEProblem& p);

enum class Route { General, Trace, Both };

json verify_report(const GEProblem& p, Route route = Route::General);
json curvature_json(const GEProblem& p, bool bismut);
json scan_json(const std::string& family_id, const std::vector<ScanPoint>& pts);

// "a=1,2,3;b=0:1:5" (start:stop:count, evenly spaced).
Grid parse_grid(const std::string& text);

// argv without the program name. Exit codes: verify 0 (GE), 1 (not GE);
// 2 for any input or usage error; 0 otherwise.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genein
