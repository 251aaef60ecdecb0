#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "emgraph/graph.hpp"
#include "emgraph/jsonl.hpp"
#include "emgraph/tuples.hpp"

namespace emgraph {

// Names a JSON file holding the default effort policy.
inline constexpr const char* kPolicyEnvVar = "EMGRAPH_POLICY";

/// Command-line entry point; args excludes the program name. Returns 0 on
/// success, 1 on a usage error and 2 when the work itself fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV with header tuple,partner,modulus,residue,kind,inverse_density; one row
/// per record, the density taken over all records sharing its modulus.
std::string export_tables(const std::vector<PairRecord>& records);

Json to_json(const Node& node);
Node node_from_json(const Json& j);

}  // namespace emgraph
