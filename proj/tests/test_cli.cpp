#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "emgraph/cli.hpp"
#include "emgraph/modsearch.hpp"

using namespace emgraph;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("search-pairs emits JSONL records") {
  auto r = call({"search-pairs", "--lo", "2", "--hi", "1000", "--irreducible-only"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() >= 2);
  auto first = pair_record_from_json(Json::parse(ls[0]));
  CHECK(first.modulus == 30);
  CHECK(first.residues[0].a == 19);
  CHECK(ls[0].find("\"modulus\":\"30\"") != std::string::npos);
}

TEST_CASE("search-pairs resumes from its checkpoint") {
  auto out = temp("emgraph_cli_pairs.jsonl");
  auto cp = temp("emgraph_cli_pairs.cp");
  std::filesystem::remove(out);
  std::filesystem::remove(cp);
  auto whole = call({"search-pairs", "--hi", "100000"});
  REQUIRE(whole.code == 0);

  auto a = call({"search-pairs", "--hi", "40000", "--checkpoint", cp.string(), "--out", out.string()});
  REQUIRE(a.code == 0);
  // Simulate a crash that left a torn line after the checkpoint.
  { std::ofstream(out, std::ios::app) << "{\"partial"; }
  auto b = call({"search-pairs", "--hi", "100000", "--checkpoint", cp.string(), "--out", out.string()});
  REQUIRE(b.code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == whole.out);
  std::filesystem::remove(out);
  std::filesystem::remove(cp);
}

TEST_CASE("expand prints level summaries") {
  auto r = call({"expand", "--root", "1", "--max-level", "8"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 9);
  CHECK(ls.back() == "8, 24, 0");
  auto csv = call({"expand", "--max-level", "3", "--format", "csv"});
  CHECK(lines(csv.out)[0] == "level,nodes,composites");
}

TEST_CASE("verify-theorem") {
  auto r = call({"verify-theorem"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("sequence") {
  auto r = call({"sequence", "--rule", "least", "--steps", "8"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"2", "3", "7", "43", "13", "53", "5", "6221671"});
  auto big = call({"sequence", "--rule", "largest", "--steps", "6"});
  CHECK(lines(big.out).back() == "50207");
}

TEST_CASE("explore, chains and watch files") {
  auto watch = temp("emgraph_watch.jsonl");
  { std::ofstream(watch) << "{\"a\":\"19\",\"m\":\"30\"}\n"; }
  auto hits = call({"explore", "--root", "19", "--root", "20", "--bound", "7", "--max-level", "0",
                    "--watch", watch.string()});
  REQUIRE(hits.code == 0);
  auto ls = lines(hits.out);
  REQUIRE(ls.size() == 1);
  CHECK(node_from_json(Json::parse(ls[0]).at("node")).value == 19);
  std::filesystem::remove(watch);

  auto nodes = call({"explore", "--bound", "5", "--max-level", "3"});
  CHECK(lines(nodes.out).size() == 3);

  auto ch = call({"chains", "--ell", "4", "--value", "1", "--value", "1806"});
  REQUIRE(ch.code == 0);
  CHECK(lines(ch.out).size() == 1);
}

TEST_CASE("simulate is deterministic") {
  auto a = call({"simulate", "--k", "1000", "--trials", "3", "--seed", "5"});
  auto b = call({"simulate", "--k", "1000", "--trials", "3", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out).at("ratios").size() == 3);
}

TEST_CASE("triples and manypairs") {
  auto t = call({"triples", "--x-max", "2"});
  CHECK(lines(t.out).size() == 2);
  auto m = call({"manypairs", "--q", "5", "--x-max", "20", "--mode", "divisible"});
  CHECK(m.code == 0);
  for (const auto& l : lines(m.out)) {
    auto rec = pair_record_from_json(Json::parse(l));
    CHECK(equivalent(rec.p, rec.q));
  }
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 1);
  CHECK(call({"no-such-command"}).code == 1);
  CHECK(call({"search-pairs"}).code == 1);
  CHECK(call({"search-pairs", "--hi", "abc"}).code == 1);
  CHECK(call({"search-pairs", "--hi", "100", "--min-k", "2"}).code == 1);
  CHECK(call({"sequence", "--steps", "3", "--rule", "middle"}).code == 1);
  CHECK(call({"expand", "--max-level", "2", "--out", "/no/such/dir/x"}).code == 1);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("runtime errors") {
  auto bad = temp("emgraph_bad.jsonl");
  { std::ofstream(bad) << "{not json\n"; }
  CHECK(call({"tables", "--input", bad.string()}).code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("export_tables") {
  CHECK(export_tables({}) == "tuple,partner,modulus,residue,kind,inverse_density\n");
  auto r30 = search_modulus(Nat(30), factor(Nat(30)), true);
  auto csv = lines(export_tables(r30));
  REQUIRE(csv.size() == 3);
  CHECK(csv[1] == "\"(2,3,5)\",\"(5,3,2)\",30,19,triple,4");
  CHECK(csv[2] == "\"(3,2,5)\",\"(5,2,3)\",30,29,triple,4");
  auto r1722 = search_modulus(Nat(1722), factor(Nat(1722)), true);
  auto rows = lines(export_tables(r1722));
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].find(",quadruple-case-IV,") != std::string::npos);
  }
}

TEST_CASE("JSONL round trip through tables") {
  auto in = temp("emgraph_tables_in.jsonl");
  auto r = call({"search-pairs", "--hi", "2000", "--irreducible-only", "--out", in.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(in);
  std::vector<PairRecord> recs;
  for (const auto& j : read_jsonl(f)) {
    auto rec = pair_record_from_json(j);
    CHECK(pair_record_from_json(to_json(rec)) == rec);
    recs.push_back(rec);
  }
  auto t = call({"tables", "--input", in.string()});
  CHECK(t.code == 0);
  CHECK(t.out == export_tables(recs));
  std::filesystem::remove(in);
}
