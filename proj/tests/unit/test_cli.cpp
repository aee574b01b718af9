#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohdist/cli.hpp"
#include "cohdist/serialization.hpp"
#include "support/generators.hpp"

namespace cohdist::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "cohdist_cli_test";
    fs::create_directories(dir_);
    io::write_json(dir_ / "plus.json", io::to_json(PureState::maximally_coherent(2)));
    io::write_json(dir_ / "mixed.json", io::to_json(testing::diagonal_state({0.5, 0.5})));
    io::write_json(dir_ / "basis.json", io::to_json(PureState::basis(2, 0)));
    io::write_json(dir_ / "p.json", json{{"probs", {0.5, 0.3, 0.2}}});
    io::write_json(dir_ / "q.json", json{{"probs", {0.7, 0.2, 0.1}}});
    io::write_json(dir_ / "a.json", json{{"probs", {0.5, 0.25, 0.25}}});
    io::write_json(dir_ / "b.json", json{{"probs", {0.4, 0.4, 0.2}}});
    std::ofstream(dir_ / "broken.json") << "{ not json";
  }

  int invoke(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    std::vector<const char*> argv{"cohdist"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, AnalyzeText) {
  EXPECT_EQ(invoke({"analyze", path("plus.json")}), kExitOk);
  EXPECT_NE(out_.str().find("distillable_to_pure: true"), std::string::npos);
  EXPECT_EQ(invoke({"analyze", path("mixed.json")}), kExitOk);
  EXPECT_NE(out_.str().find("bound_state: true"), std::string::npos);
}

TEST_F(CliTest, DistillJson) {
  EXPECT_EQ(invoke({"--format", "json", "distill", path("plus.json"), path("plus.json"), path("plus.json")}), kExitOk);
  const auto j = json::parse(out_.str());
  EXPECT_EQ(j["n_max"], 3);
  EXPECT_EQ(j["dim"], 8);
}

TEST_F(CliTest, DimensionCapExitCode) {
  EXPECT_EQ(invoke({"--dim-cap", "4", "distill", path("plus.json"), path("plus.json"), path("plus.json")}),
            kExitDimensionOverflow);
}

TEST_F(CliTest, TransformExitCodesAndExport) {
  const auto channel = dir_ / "channel.json";
  fs::remove(channel);
  EXPECT_EQ(invoke({"--export-channel", channel.string(), "transform", path("plus.json"), path("basis.json")}),
            kExitOk);
  ASSERT_TRUE(fs::exists(channel));
  const auto ch = io::channel_from_json(io::read_json(channel));
  EXPECT_LT(ch.completeness_error(), 1e-9);

  EXPECT_EQ(invoke({"transform", path("mixed.json"), path("plus.json")}), kExitInfeasible);
  EXPECT_NE(out_.str().find("feasible: false"), std::string::npos);
  // Targets must use the amplitudes layout.
  EXPECT_EQ(invoke({"transform", path("plus.json"), path("mixed.json")}), kExitInvalidInput);
}

TEST_F(CliTest, Lattice) {
  EXPECT_EQ(invoke({"--format", "json", "lattice", "majorize", path("q.json"), path("p.json")}), kExitOk);
  EXPECT_EQ(json::parse(out_.str())["majorizes"], true);
  EXPECT_EQ(invoke({"--format", "json", "lattice", "meet", path("a.json"), path("b.json")}), kExitOk);
  const auto probs = json::parse(out_.str())["probs"].get<std::vector<double>>();
  ASSERT_EQ(probs.size(), 3u);
  EXPECT_NEAR(probs[0], 0.4, 1e-12);
  EXPECT_NEAR(probs[1], 0.35, 1e-12);
  EXPECT_NEAR(probs[2], 0.25, 1e-12);
  EXPECT_EQ(invoke({"lattice", "join", path("a.json"), path("b.json")}), kExitOk);
  EXPECT_NE(out_.str().find("join: [0.5, 0.3, 0.2]"), std::string::npos);
  EXPECT_EQ(invoke({"lattice", "majorize", path("q.json")}), kExitInvalidInput);
}

TEST_F(CliTest, InvalidInputs) {
  EXPECT_EQ(invoke({"analyze", path("broken.json")}), kExitInvalidInput);
  EXPECT_EQ(invoke({"analyze", path("nope.json")}), kExitInvalidInput);
  EXPECT_EQ(invoke({"--tol", "0.5", "analyze", path("plus.json")}), kExitInvalidInput);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}), kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}), kExitUsage);
  EXPECT_EQ(invoke({"--help"}), kExitOk);
}

TEST_F(CliTest, ToleranceFromEnvironment) {
  ::setenv("COHDIST_TOL", "0.5", 1);
  const int bad = invoke({"analyze", path("plus.json")});
  ::setenv("COHDIST_TOL", "1e-8", 1);
  const int good = invoke({"analyze", path("plus.json")});
  ::unsetenv("COHDIST_TOL");
  EXPECT_EQ(bad, kExitInvalidInput);
  EXPECT_EQ(good, kExitOk);
}

}  // namespace
}  // namespace cohdist::cli
