#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gfrob/commands.hpp"
#include "gfrob/functors.hpp"

using namespace gfrob;

namespace {

const std::string kData = GFROB_DATA_DIR;
const std::string kZ2 = kData + "/z2-in-s3.bundle";
const std::string kConst = kData + "/constant-map.bundle";

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gfrob");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json report_of(const Outcome& r) { return Json::parse(r.out).at("report"); }

}  // namespace

TEST(Cli, ValidatePasses) {
  Outcome r = cli({"validate", "--bundle", kZ2, "--format", "json"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  Json rep = report_of(r);
  EXPECT_EQ(rep.at("status"), "pass");
  EXPECT_EQ(rep.at("groupoids").at("S3").at("associativity_triples_checked"), 216);
}

TEST(Cli, TextFormatListsTheReport) {
  Outcome r = cli({"info", "S3", "--bundle", kZ2});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("arrows: 6"), std::string::npos);
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
  EXPECT_EQ(r.out.find('{'), std::string::npos);
}

TEST(Cli, FrobeniusVerdicts) {
  Outcome yes = cli({"frobenius", "phi", "--bundle", kZ2, "--format", "json"});
  EXPECT_EQ(yes.code, kExitPass);
  EXPECT_TRUE(report_of(yes).at("applicable").get<bool>());

  Outcome undecided = cli({"frobenius", "f", "--bundle", kConst, "--format", "json"});
  EXPECT_EQ(undecided.code, kExitPass);
  Json rep = report_of(undecided);
  EXPECT_FALSE(rep.at("applicable").get<bool>());
  EXPECT_EQ(rep.at("verdict"), "undecided");
}

TEST(Cli, AlgebraMapFailureExitsOne) {
  Outcome r = cli({"algebra-map", "f", "--bundle", kConst, "--format", "json"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(report_of(r).at("status"), "pass");
  EXPECT_EQ(cli({"algebra-map", "phi", "--bundle", kZ2}).code, kExitPass);
}

TEST(Cli, InducedRepresentationIsALoadableBundle) {
  Outcome r = cli({"induce", "phi", "triv_Z2", "--bundle", kZ2, "--format", "json"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const std::string name = report_of(r).at("output");
  auto b = std::get<Bundle<Rational>>(parse_bundle(r.out));
  auto original = std::get<Bundle<Rational>>(load_bundle(kZ2));
  auto direct = induce<Rational>(original.morphism("phi"), original.representation("triv_Z2"));
  EXPECT_TRUE(*b.representation(name) == *direct.rep);
}

TEST(Cli, AdjointCheckBothSides) {
  for (const char* side : {"left", "right"}) {
    Outcome r = cli({"adjoint-check", "phi", "std_S3", "triv_Z2", "--side", side, "--bundle", kZ2});
    EXPECT_EQ(r.code, kExitPass) << side << ": " << r.err;
  }
  EXPECT_EQ(cli({"adjoint-check", "phi", "std_S3", "triv_Z2", "--bundle", kZ2}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"adjoint-check", "phi", "std_S3", "triv_Z2", "--side", "up", "--bundle", kZ2}).code,
            kExitInvalidInput);
}

TEST(Cli, OutFileReceivesTheReport) {
  auto path = std::filesystem::temp_directory_path() / "gfrob_cli_test_report.json";
  std::filesystem::remove(path);
  Outcome r = cli({"validate", "--bundle", kZ2, "--format", "json", "--out", path.string()});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(Json::parse(ss.str()).at("report").at("command"), "validate");
  std::filesystem::remove(path);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(cli({"validate"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"validate", "--bundle", kData + "/no-such.bundle"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"frobenius", "nope", "--bundle", kZ2}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"frobenius", "--bundle", kZ2}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"teleport", "--bundle", kZ2}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"validate", "--bundle", kZ2, "--format", "yaml"}).code, kExitInvalidInput);
}

TEST(Cli, MalformedBundleReportsPosition) {
  auto path = std::filesystem::temp_directory_path() / "gfrob_cli_test_broken.bundle";
  {
    std::ofstream f(path);
    f << "{\n  \"schema\": 1,\n  \"groupoids\": {,}\n}\n";
  }
  Outcome r = cli({"validate", "--bundle", path.string(), "--format", "json"});
  EXPECT_EQ(r.code, kExitInvalidInput);
  Json err = Json::parse(r.out).at("error");
  EXPECT_EQ(err.at("kind"), "ParseError");
  EXPECT_EQ(err.at("line"), 3);
  std::filesystem::remove(path);
}

TEST(Cli, InvalidComponentListsViolations) {
  auto path = std::filesystem::temp_directory_path() / "gfrob_cli_test_invalid.bundle";
  {
    std::ofstream f(path);
    f << R"({"schema": 1, "groupoids": {"G": {"objects": ["*"], "arrows": [{"name": "e", "src": "*", "tgt": "*"}],
            "compose": [], "identities": {"*": "e"}}}})";
  }
  Outcome r = cli({"validate", "--bundle", path.string(), "--format", "json"});
  EXPECT_EQ(r.code, kExitInvalidInput);
  Json v = Json::parse(r.out).at("error").at("violations");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].at("component"), "groupoids.G");
  EXPECT_EQ(v[0].at("kind"), "MissingComposite");
  std::filesystem::remove(path);
}
