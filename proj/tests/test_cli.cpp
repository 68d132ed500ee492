// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pmp/fixture.hpp"

using namespace pmp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::path(::testing::TempDir()) / ("pmp_cli_" + name);
  fs::remove_all(p);
  return p;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = scratch(name + ".cfg");
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmall = "rows=2\ncols=4\nsrs_degree=8\npeers=12\nreplication=3\nlight_clients=2\nsamples=6\n";

}  // namespace

TEST(Config, ParsesKeysListsAndComments) {
  const auto c = cli::parse_config(
      "# sweep\n rows = 2 \ncols=4 # inline\n\nchurn=0.1, 0.3\nmodes=pmp,vanilla\nseed=9\nseeds=3\n"
      "timeout_ticks=250\nsrs_degree=8\n");
  EXPECT_EQ(c.experiment.dims.rows, 2u);
  EXPECT_EQ(c.experiment.dims.cols, 4u);
  EXPECT_EQ(c.experiment.retrieval.timeout_ticks, 250u);
  EXPECT_EQ(c.churn, (std::vector<double>{0.1, 0.3}));
  EXPECT_EQ(c.modes, (std::vector<ConfigMode>{ConfigMode::PMP, ConfigMode::Vanilla}));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.seeds, 3u);
}

TEST(Config, DefaultsMatchExperimentDefaults) {
  const auto c = cli::parse_config("");
  EXPECT_EQ(c.experiment.dims.extended_cells(), 64u);
  EXPECT_EQ(c.experiment.peers, 50u);
  EXPECT_EQ(c.experiment.replication, 5u);
  EXPECT_EQ(c.modes.size(), 4u);
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {"nonsense\n", "rows=two\n", "rows=-1\n", "bogus=1\n", "rows=2\nrows=3\n", "g=3\n",
                           "churn=1.0\n", "churn=0.1,0.1\n", "modes=fast\n", "modes=\n", "seeds=0\n",
                           "replication=60\n", "rows=99999999999\n", "srs_degree=2\n"})
    EXPECT_THROW(cli::parse_config(text), cli::ConfigError) << text;
}

TEST(StorageReportCmd, PublishedNumbers) {
  const auto r4 = run({"storage-report", "--entries", "64", "--group", "4"});
  EXPECT_EQ(r4.code, 0);
  EXPECT_NE(r4.out.find("2816"), std::string::npos);
  EXPECT_NE(r4.out.find("\n64,4,80,5120,176,16,2816,44,1,196,3136\n"), std::string::npos);

  const auto r1 = run({"storage-report", "--entries", "64", "--group", "1"});
  EXPECT_EQ(r1.code, 0);
  EXPECT_NE(r1.out.find("5120"), std::string::npos);

  const auto json = run({"storage-report", "--entries", "64", "--group", "4", "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["grouped_total_bytes"], 2816);
  EXPECT_EQ(j["amortized_numerator"], 44);
}

TEST(StorageReportCmd, AgreesWithLibraryForManySizes) {
  for (std::uint64_t g = 1; g <= 16; ++g) {
    const auto r = wire::storage_report(g * 8, g);
    const auto res = run({"storage-report", "--entries", std::to_string(g * 8), "--group", std::to_string(g),
                          "--format", "json"});
    ASSERT_EQ(res.code, 0);
    const auto j = nlohmann::json::parse(res.out);
    EXPECT_EQ(j["grouped_total_bytes"], r.grouped_total_bytes);
    EXPECT_EQ(j["baseline_total_bytes"], r.baseline_total_bytes);
    EXPECT_EQ(j["amortized_denominator"], r.amortized_denominator);
  }
}

TEST(StorageReportCmd, UsageErrors) {
  const auto r3 = run({"storage-report", "--entries", "64", "--group", "3"});
  EXPECT_EQ(r3.code, 2);
  EXPECT_NE(r3.err.find("divide"), std::string::npos);
  EXPECT_EQ(run({"storage-report", "--entries", "64", "--group", "0"}).code, 2);
  EXPECT_EQ(run({"storage-report", "--entries", "x", "--group", "4"}).code, 2);
  EXPECT_EQ(run({"storage-report", "--entries", "64"}).code, 2);
  EXPECT_EQ(run({"storage-report", "--entries", "64", "--group", "4", "--verbose"}).code, 2);
  EXPECT_EQ(run({"storage-report", "--entries", "64", "--group", "4", "--format", "xml"}).code, 2);
}

TEST(Cli, UsageAndHelp) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const auto help = run({"ablation", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("timeout_ticks=100"), std::string::npos);
}

TEST(AblationCmd, ChurnZeroHitsEverything) {
  const auto cfg = write_config("zero", std::string(kSmall) + "seeds=2\n");
  const auto r = run({"ablation", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("mode,seed,churn,objects_stored,proof_bytes,object_bytes,hit_rate,verify_failures,"
                       "g1_mults,g2_mults,pairings,interpolations",
                       0),
            0u);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",1.000000,0,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 8);
}

TEST(AblationCmd, PmpStoresSixteenObjectsOnSixtyFourCells) {
  const auto cfg = write_config("pmp16", "modes=pmp\nlight_clients=1\nsamples=4\n");
  const auto r = run({"ablation", cfg.string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["objects_stored"], 16);
  EXPECT_EQ(j[0]["mode"], "pmp");
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  EXPECT_EQ(keys[6], "hit_rate");
  EXPECT_EQ(keys[11], "interpolations");
}

TEST(AblationCmd, ByteIdenticalAcrossRunsAndJobCounts) {
  const auto cfg = write_config("det", std::string(kSmall) + "seeds=3\nchurn=0,0.25\n");
  const auto a = scratch("det_a.csv"), b = scratch("det_b.csv"), c = scratch("det_c.csv");
  ASSERT_EQ(run({"ablation", cfg.string(), "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"ablation", cfg.string(), "--out", b.string()}).code, 0);
  ASSERT_EQ(run({"ablation", cfg.string(), "--out", c.string(), "--jobs", "3"}).code, 0);
  const auto text = slurp(a);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(text, slurp(c));
}

TEST(AblationCmd, SeedOverrides) {
  const auto cfg = write_config("seed", std::string(kSmall) + "modes=vanilla\nseed=5\n");
  auto seed_of = [](const std::string& out) {
    const auto line = out.substr(out.find('\n') + 1);
    return line.substr(line.find(',') + 1, line.find(',', line.find(',') + 1) - line.find(',') - 1);
  };
  EXPECT_EQ(seed_of(run({"ablation", cfg.string()}).out), "5");
  ::setenv("PMP_SEED", "42", 1);
  EXPECT_EQ(seed_of(run({"ablation", cfg.string()}).out), "42");
  EXPECT_EQ(seed_of(run({"ablation", cfg.string(), "--seed", "7"}).out), "7");
  ::setenv("PMP_SEED", "forty", 1);
  EXPECT_EQ(run({"ablation", cfg.string()}).code, 2);
  ::unsetenv("PMP_SEED");
}

TEST(AblationCmd, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"ablation", scratch("missing.cfg").string()}).code, 2);
  const auto bad = write_config("bad", "g=3\n");
  const auto r = run({"ablation", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("g must divide"), std::string::npos);
}

class ProveVerify : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = scratch(::testing::UnitTest::GetInstance()->current_test_info()->name());
    const auto cfg = write_config("fixture", "rows=4\ncols=8\nsrs_degree=16\ndata_seed=3\n");
    ASSERT_EQ(run({"gen-fixture", "--config", cfg.string(), "--dir", dir_.string()}).code, 0);
  }

  fixture::MCellSet mcells() const { return fixture::decode_mcells(fixture::read_file(dir_ / "mcells.pmpd")); }
  void save(const fixture::MCellSet& s) const { fixture::write_file(dir_ / "mcells.pmpd", fixture::encode_mcells(s)); }
  Result verify() const { return run({"verify", "--dir", dir_.string()}); }

  fs::path dir_;
};

TEST_F(ProveVerify, RoundTrip) {
  for (const char* rpg : {"1", "2", "3"}) {
    for (const char* g : {"1", "4", "16"}) {
      const auto p = run({"prove", "--dir", dir_.string(), "--g", g, "--rows-per-group", rpg});
      ASSERT_EQ(p.code, 0) << p.err;
      const auto v = verify();
      EXPECT_EQ(v.code, 0) << g << "/" << rpg << ": " << v.err;
    }
  }
}

TEST_F(ProveVerify, FlippedScalarByteNamesGroup) {
  ASSERT_EQ(run({"prove", "--dir", dir_.string()}).code, 0);
  const auto original = mcells();
  ASSERT_EQ(original.records.size(), 16u);
  for (std::size_t rec : {0u, 5u, 15u}) {
    auto set = original;
    const auto block = wire::decode_block(std::span(set.records[rec]).subspan(48, 16));
    set.records[rec][68 + 32 * (rec % 4)] ^= 0x01;
    save(set);
    const auto v = verify();
    EXPECT_EQ(v.code, 1);
    const std::string name = "group (band " + std::to_string(block.rows_start) + ", micro " +
                             std::to_string(block.cols_start / 4) + ")";
    EXPECT_NE(v.err.find(name), std::string::npos) << v.err;
  }
}

TEST_F(ProveVerify, PermutedHeaderCommitmentsRejected) {
  for (const char* rpg : {"1", "2", "4"}) {
    ASSERT_EQ(run({"prove", "--dir", dir_.string(), "--rows-per-group", rpg}).code, 0);
    auto h = fixture::decode_header(fixture::read_file(dir_ / "header.pmpd"));
    std::swap(h.row_commitments[0], h.row_commitments[1]);
    const auto permuted = dir_ / "permuted.pmpd";
    fixture::write_file(permuted, fixture::encode_header(h));
    const auto v = run({"verify", "--dir", dir_.string(), "--header", permuted.string()});
    EXPECT_EQ(v.code, 1) << rpg;
    EXPECT_NE(v.err.find("group (band 0, micro 0)"), std::string::npos) << v.err;
  }
}

TEST_F(ProveVerify, MissingAndDuplicateGroupsRejected) {
  ASSERT_EQ(run({"prove", "--dir", dir_.string()}).code, 0);
  auto set = mcells();
  set.records.pop_back();
  save(set);
  const auto missing = verify();
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("missing"), std::string::npos);
  set.records.push_back(set.records.front());
  save(set);
  EXPECT_EQ(verify().code, 1);
}

TEST_F(ProveVerify, GarbledRecordAndFixtureErrors) {
  ASSERT_EQ(run({"prove", "--dir", dir_.string()}).code, 0);
  auto set = mcells();
  set.records[3].resize(10);
  save(set);
  EXPECT_EQ(verify().code, 1);

  auto bytes = fixture::read_file(dir_ / "mcells.pmpd");
  bytes[0] = 'Q';
  fixture::write_file(dir_ / "mcells.pmpd", bytes);
  EXPECT_EQ(verify().code, 2);
  EXPECT_EQ(run({"verify", "--dir", (dir_ / "nope").string()}).code, 2);
  EXPECT_EQ(run({"prove", "--dir", dir_.string(), "--g", "3"}).code, 2);
}

TEST_F(ProveVerify, HeaderFromAnotherGridRejectedByProve) {
  const auto other = scratch("other_fixture");
  ASSERT_EQ(run({"gen-fixture", "--dir", other.string()}).code, 0);
  fs::copy_file(other / "header.pmpd", dir_ / "header.pmpd", fs::copy_options::overwrite_existing);
  EXPECT_EQ(run({"prove", "--dir", dir_.string()}).code, 2);
}
