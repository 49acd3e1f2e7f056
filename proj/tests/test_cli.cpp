#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gquant/cli.hpp"
#include "gquant/io.hpp"

using namespace gquant;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "gquant_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("group and representation verbs") {
  Result r = call({"group", "info", "s3"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "order 6"));
  r = call({"rep", "cg", "--group", "A4"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "E0+E1+E2+2E3"));
  r = call({"rep", "table", "A4", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["dims"] == json::array({1, 1, 1, 3}));
  r = call({"fourier", "roundtrip", "S3xS3", "--samples", "5"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "5 elements"));
}

TEST_CASE("verify the trivial quantizer") {
  Result r = call({"quantizer", "trivial", "S3", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const std::string path = temp_file("one.json", r.out);
  r = call({"quantizer", "verify", "--in", path, "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j["accepted"] == true);
  CHECK(j["coherence"].get<double>() < 1e-12);

  // The element form of the same quantizer verifies too.
  r = call({"quantizer", "assemble", "--in", path});
  REQUIRE(r.code == cli::kOk);
  const std::string elem = temp_file("one_elem.json", r.out);
  CHECK(call({"quantizer", "verify", "--in", elem}).code == cli::kOk);
  r = call({"quantizer", "blocks", "--in", elem, "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["blocks"]["2,2,1"][0][0][0].get<double>() == Catch::Approx(1.0));
}

TEST_CASE("incoherent blocks fail verification with the check exit code") {
  const std::string path =
      temp_file("bad.json", R"({"group":"S3","blocks":{"1,1,0":[[[3,0]]]}})");
  const Result r = call({"quantizer", "verify", "--in", path});
  CHECK(r.code == cli::kFailedCheck);
  CHECK(has(r.out, "accepted no"));
  CHECK(json::parse(r.err)["error"] == "check-failed");
  CHECK(call({"quantizer", "canonicalize", "--in", path}).code == cli::kFailedCheck);
}

TEST_CASE("classification and relations") {
  Result r = call({"quantizer", "classify", "s3"});
  REQUIRE(r.code == cli::kOk);
  CHECK(has(r.out, "5 families"));
  CHECK(has(r.out, "reference rows"));
  CHECK(has(r.out, "a)"));
  r = call({"quantizer", "classify", "S3", "--model", "strict", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["families"].size() == 9);

  r = call({"quantizer", "relations", "a4"});
  REQUIRE(r.code == cli::kOk);
  CHECK(has(r.out, "(q_13)^2 = q_11 q_23"));
  CHECK(has(r.out, "same lattice yes"));
  r = call({"quantizer", "relations", "s3", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["relations"].size() == 3);
  CHECK(json::parse(r.out)["reference"]["agree"] == true);
}

TEST_CASE("output is byte-stable and the seed variable is honoured") {
  const Result a = call({"quantizer", "classify", "A4"});
  const Result b = call({"quantizer", "classify", "A4"});
  CHECK(a.out == b.out);
  ::setenv("QUANTIZER_SEED", "12345", 1);
  const Result c = call({"quantizer", "classify", "A4", "--seed", "1"});
  const Result d = call({"quantizer", "classify", "A4", "--seed", "2"});
  ::unsetenv("QUANTIZER_SEED");
  CHECK(c.code == cli::kOk);
  CHECK(c.out == d.out);
  ::setenv("QUANTIZER_SEED", "abc", 1);
  CHECK(call({"group", "info", "S3"}).code == cli::kUsage);
  ::unsetenv("QUANTIZER_SEED");
}

TEST_CASE("cocycle verbs") {
  const std::string good = temp_file(
      "quat.json",
      R"({"dual":"C2xC2","values":[[[1,0],[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0],[1,0]],)"
      R"([[1,0],[-1,0],[1,0],[-1,0]],[[1,0],[-1,0],[1,0],[-1,0]]]})");
  Result r = call({"cocycle", "check", "--in", good, "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["cohomologically_trivial"] == false);
  r = call({"cocycle", "quantize", "--in", good, "--out",
            (fs::temp_directory_path() / "gquant_cli_test" / "qz.json").string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.empty());

  r = call({"algebra", "quantize", "--builtin", "graded:C2xC2", "--quantizer",
            (fs::temp_directory_path() / "gquant_cli_test" / "qz.json").string(), "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const json alg = json::parse(r.out);
  CHECK(alg["checks"]["associativity_after"].get<double>() < 1e-12);
  CHECK(alg["dim"] == 4);

  const std::string bad =
      temp_file("badz.json", R"({"dual":"C3","values":[[[1,0],[1,0],[1,0]],[[1,0],[3,0],[1,0]],)"
                             R"([[1,0],[1,0],[1,0]]]})");
  CHECK(call({"cocycle", "check", "--in", bad}).code == cli::kFailedCheck);
  CHECK(call({"cocycle", "quantize", "--in", bad}).code == cli::kFailedCheck);
}

TEST_CASE("errors carry distinct exit codes") {
  CHECK(call({}).code == cli::kUsage);
  CHECK(call({"quantizer", "frobnicate"}).code == cli::kUsage);
  CHECK(call({"rep", "table", "S3", "--format", "xml"}).code == cli::kUsage);
  Result r = call({"group", "info", "Q8"});
  CHECK(r.code == cli::kBadGroup);
  CHECK(json::parse(r.err)["error"] == "bad-group");
  CHECK(call({"group", "info"}).code == cli::kBadGroup);
  const std::string junk = temp_file("junk.json", "{not json");
  r = call({"quantizer", "verify", "--in", junk});
  CHECK(r.code == cli::kBadInput);
  CHECK(json::parse(r.err)["error"] == "parse");
  CHECK(call({"quantizer", "verify", "--in", "/nonexistent/q.json"}).code == cli::kBadInput);
  const std::string wrong = temp_file("wrong.json", R"({"group":"S3","blocks":{"3,3,3":[[1]]}})");
  CHECK(call({"quantizer", "verify", "--in", wrong}).code == cli::kStructural);
  CHECK(call({"quantizer", "classify", "S4"}).code == cli::kUnsupported);
  CHECK(call({"group", "info", "S6"}).code == cli::kBadGroup);
  const std::string raw = temp_file("raw.json", R"({"group":"S3xS3","terms":[{"g":1,"re":1}]})");
  CHECK(call({"quantizer", "blocks", "--in", raw}).code == cli::kNumerical);
  CHECK(call({"--help"}).code == cli::kOk);
}
