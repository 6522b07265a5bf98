#include "fusionkit/cli.hpp"

#include "doctest.h"

#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fusionkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fuse") {
  const Run r = run({"fuse", "--level", "3/2", "--a", "E[1/3](1,1)", "--b", "E[-1/3](1,1)", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("status") == "NonSemisimple");
  REQUIRE(j.at("terms").size() == 1);
  CHECK(j.at("terms")[0].at("label") == "sf(-1).P(2,1)");
  CHECK(j.at("terms")[0].at("mult") == 1);

  const Run g = run({"fuse", "--a", "E[1/3](1,1)@3/2", "--b", "E[-1/3](1,1)", "--grothendieck", "--json"});
  REQUIRE(g.code == 0);
  int total = 0;
  const json gj = json::parse(g.out);
  for (const auto& t : gj.at("terms")) total += t.at("mult").get<int>();
  CHECK(total == 4);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"fuse", "--level", "4/2", "--a", "L(1)", "--b", "L(1)"}).code == 2);
  CHECK(run({"fuse", "--level", "3/2", "--a", "E[1/2](1,1)", "--b", "L(1)"}).code == 2);
  CHECK(run({"fuse", "--level", "3/2", "--a", "E[1/3](1,1", "--b", "L(1)"}).code == 2);
  CHECK(run({"verify", "--suite", "nope", "--level", "3/2"}).code == 2);
  CHECK(run({"verify-all", "--levels", "4/2"}).code == 2);
  CHECK(run({"reduce", "--form", "z1+"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("evaluation errors exit with 1") {
  const Run r = run({"fuse", "--level", "3/4", "--a", "D+(1,1)", "--b", "D+(1,1)"});
  CHECK(r.code == 1);
  CHECK(r.err.find("UnsupportedPair") != std::string::npos);
}

TEST_CASE("verify-all with no levels is an empty passing report") {
  const Run r = run({"verify-all", "--levels", "", "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("ok") == true);
  CHECK(j.at("checks").empty());
}

TEST_CASE("verify reports follow the schema and are deterministic") {
  const Run a = run({"verify", "--suite", "bpz", "--level", "3/4", "--json"});
  const Run b = run({"verify", "--suite", "bpz", "--level", "3/4", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  std::string prev;
  for (const auto& c : j.at("checks")) {
    for (const char* key : {"check", "params", "lhs", "rhs", "abs_err", "rel_err", "pass"}) CHECK(c.contains(key));
    const std::string name = c.at("check");
    CHECK(prev <= name);
    prev = name;
  }
}

TEST_CASE("a failing check exits with 1") {
  fk::cli::Report rep;
  rep.add({"a", fk::cli::Status::Pass, "", {}});
  rep.add({"b", fk::cli::Status::Skip, "", {}});
  CHECK(rep.ok());
  rep.add({"c", fk::cli::Status::Fail, "", {}});
  CHECK_FALSE(rep.ok());
  CHECK(rep.to_json().at("ok") == false);
}

TEST_CASE("reduce") {
  const Run r = run({"reduce", "--alpha", "1/3", "--beta", "1/4", "--gamma", "1/5", "--form", "z1*z2", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("c").get<std::string>().find('/') != std::string::npos);
  const Run s = run({"reduce", "--symbolic", "--form", "1"});
  CHECK(s.code == 0);
  CHECK(s.out == "c = 1\n");
  CHECK(run({"reduce", "--alpha", "1", "--beta", "1/4", "--gamma", "1/5", "--form", "z1"}).code == 2);
}

TEST_CASE("zhu, simples and coset") {
  const Run z = run({"zhu", "--level", "2/1", "--p1"});
  CHECK(z.code == 0);
  CHECK(z.out == "p1 = 2*eta\n");
  const Run s = run({"simples", "--level", "3/4", "--json"});
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j.at("discrete").size() == 18);
  CHECK(j.at("e_families").size() == 9);
  const Run c = run({"coset", "--level", "3/2", "--to-n2", "E[1/3](1,1)", "--p", "1/3", "--i", "0"});
  CHECK(c.code == 0);
  CHECK(c.out == "NL[2/9](1,1)\n");
  const Run n = run({"coset", "--level", "3/2", "--n2-fuse", "NL[1/5](1,1)", "NL[2/7](1,1)"});
  CHECK(n.code == 0);
}
