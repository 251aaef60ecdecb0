#include "emgraph/jsonl.hpp"

#include "emgraph/errors.hpp"

namespace emgraph {

Nat nat_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a decimal string, got " + j.dump());
  return parse_nat(j.get<std::string>());
}

Json nat_array(const std::vector<Nat>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_decimal(v));
  return arr;
}

std::vector<Nat> nat_array_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  std::vector<Nat> out;
  for (const auto& e : j) out.push_back(nat_from_json(e));
  return out;
}

Json to_json(const ResidueClass& r) { return {{"a", to_decimal(r.a)}, {"m", to_decimal(r.m)}}; }

ResidueClass residue_class_from_json(const Json& j) {
  try {
    ResidueClass r{nat_from_json(j.at("a")), nat_from_json(j.at("m"))};
    if (r.m < 1 || r.a < 0 || r.a >= r.m || gcd(r.a, r.m) != 1) {
      throw FormatError("invalid residue class " + j.dump());
    }
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("residue class: ") + e.what());
  }
}

Json to_json(const PairRecord& r) {
  Json residues = Json::array();
  for (const auto& c : r.residues) residues.push_back(to_json(c));
  return {{"p", nat_array(r.p.primes())},
          {"q", nat_array(r.q.primes())},
          {"modulus", to_decimal(r.modulus)},
          {"residues", residues},
          {"kind", to_string(r.kind)},
          {"irreducible", r.irreducible}};
}

PairRecord pair_record_from_json(const Json& j) {
  try {
    PairRecord r;
    r.p = PrimeTuple(nat_array_from_json(j.at("p")));
    r.q = PrimeTuple(nat_array_from_json(j.at("q")));
    r.modulus = nat_from_json(j.at("modulus"));
    for (const auto& c : j.at("residues")) r.residues.push_back(residue_class_from_json(c));
    r.kind = pair_kind_from_string(j.at("kind").get<std::string>());
    r.irreducible = j.value("irreducible", false);
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("pair record: ") + e.what());
  }
}

Json to_json(const EffortPolicy& p) {
  return {{"trial_bound", p.trial_bound},
          {"rho_iterations", p.rho_iterations},
          {"ecm_curves", p.ecm_curves},
          {"ecm_b1", p.ecm_b1},
          {"time_budget", p.time_budget}};
}

EffortPolicy effort_policy_from_json(const Json& j) {
  EffortPolicy p;
  try {
    p.trial_bound = j.value("trial_bound", p.trial_bound);
    p.rho_iterations = j.value("rho_iterations", p.rho_iterations);
    p.ecm_curves = j.value("ecm_curves", p.ecm_curves);
    p.ecm_b1 = j.value("ecm_b1", p.ecm_b1);
    p.time_budget = j.value("time_budget", p.time_budget);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("effort policy: ") + e.what());
  }
  if (p.time_budget < 0) throw FormatError("effort policy: negative time_budget");
  return p;
}

std::vector<Json> read_jsonl(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace emgraph
