#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "emgraph/factor.hpp"
#include "emgraph/tuples.hpp"

// JSON mappings. Every integer is written as a decimal string.
namespace emgraph {

using Json = nlohmann::json;

Json to_json(const ResidueClass& r);
ResidueClass residue_class_from_json(const Json& j);

Json to_json(const PairRecord& r);
PairRecord pair_record_from_json(const Json& j);

Json to_json(const EffortPolicy& p);
// Missing fields keep their defaults.
EffortPolicy effort_policy_from_json(const Json& j);

Json nat_array(const std::vector<Nat>& values);
std::vector<Nat> nat_array_from_json(const Json& j);
Nat nat_from_json(const Json& j);

// One compact JSON document per line. Blank lines are skipped; parse errors
// name the line number.
std::vector<Json> read_jsonl(std::istream& in);
void write_jsonl(std::ostream& out, const Json& j);

}  // namespace emgraph
