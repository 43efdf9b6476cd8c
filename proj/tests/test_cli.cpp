#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "gct/cli.hpp"

using namespace gct;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    cache_ = fs::temp_directory_path() / ("gct_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(cache_);
  }
  void TearDown() override { fs::remove_all(cache_); }

  Outcome run(std::vector<std::string> args) {
    args.push_back("--cache-dir");
    args.push_back(cache_.string());
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string data(const std::string& name) { return std::string(GCT_DATA_DIR) + "/" + name; }

  std::size_t cache_entries() const {
    if (!fs::exists(cache_)) return 0;
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(cache_), fs::directory_iterator()));
  }

  fs::path cache_;
};

}  // namespace

TEST_F(CliTest, Examples) {
  auto d = run({"geo", "discriminant"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "det(H(Δ)) = 3888·Δ²: PASS\n");
  auto h = run({"hhh", "rank", "3", "3", "3"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("rank: 220\n"), std::string::npos);
  EXPECT_EQ(run({"zoo", "verify", data("bad-witness.json"), data("perm3.json")}).code, 1);
  EXPECT_EQ(run({"zoo", "verify", data("ryser3.json"), data("perm3.json")}).code, 0);
  EXPECT_EQ(run({"zoo", "verify", data("perm2-det-witness.json"), data("perm2.json")}).code, 0);
  EXPECT_EQ(run({"zoo", "verify", data("fischer4.json"), data("chow4.json")}).code, 0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"hhh", "rank", "3"}).code, 2);
  EXPECT_EQ(run({"rep", "kron", "3,x", "3", "3"}).code, 2);
  EXPECT_EQ(run({"flatten", "rank", "no-such-file.json", "--k", "1"}).code, 2);
  auto cap = run({"latin", "count", "6"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_NE(cap.err.find("capacity"), std::string::npos);
  EXPECT_EQ(run({"hhh", "rank", "3", "3", "3", "--max-dim", "5"}).code, 3);
  EXPECT_EQ(run({"geo", "sfturbo", "3"}).code, 1);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliTest, MakeRoundTrips) {
  auto r = run({"zoo", "make", "det", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_polynomial(r.out), zoo::det(3));
  EXPECT_EQ(parse_polynomial(run({"zoo", "make", "discriminant"}).out), zoo::discriminant());
  EXPECT_EQ(read_file(data("det3.json")), r.out);
}

TEST_F(CliTest, CacheHitIsByteIdentical) {
  auto first = run({"rep", "pleth", "4,2", "2", "3"});
  ASSERT_EQ(first.code, 0);
  EXPECT_EQ(cache_entries(), 1u);
  auto second = run({"rep", "pleth", "4,2", "2", "3", "--threads", "3"});
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(cache_entries(), 1u);
  auto json1 = run({"--json", "rep", "pleth", "4,2", "2", "3"});
  auto json2 = run({"rep", "pleth", "4,2", "2", "3", "--json"});
  EXPECT_EQ(json1.out, json2.out);
  EXPECT_EQ(cache_entries(), 1u);
  run({"rep", "pleth", "4,2", "3", "2", "--no-cache"});
  EXPECT_EQ(cache_entries(), 1u);
  run({"geo", "dualdim", "det:3", "--rank", "2", "--seed", "2"});
  run({"geo", "dualdim", "det:3", "--rank", "2", "--seed", "3"});
  EXPECT_EQ(cache_entries(), 3u);
}

TEST_F(CliTest, ManifestDigestMatchesReport) {
  auto path = cache_ / "manifest.json";
  fs::create_directories(cache_);
  auto r = run({"latin", "pairing", "2", "--manifest", path.string()});
  ASSERT_EQ(r.code, 0);
  auto m = nlohmann::json::parse(read_file(path.string()));
  EXPECT_EQ(m.at("result_digest").get<std::string>(), sha256_hex(r.out));
  EXPECT_EQ(m.at("command").get<std::string>(), "latin pairing");
  EXPECT_EQ(m.at("code_version").get<std::string>(), cli::kVersion);
  EXPECT_EQ(r.out, "n: 2\npairing: perm-det\nvalue: 4\n");
}

TEST_F(CliTest, EveryCommandAcceptsJsonAndNoCache) {
  const std::vector<std::vector<std::string>> commands = {
      {"zoo", "list"},
      {"zoo", "make", "chow", "3"},
      {"zoo", "witness", "benor", "3", "2"},
      {"zoo", "verify", data("ryser3.json"), data("perm3.json")},
      {"flatten", "rank", data("det3.json"), "--k", "1"},
      {"flatten", "waring-lb", "chow:4"},
      {"flatten", "chow-lb", "elementary:2,4"},
      {"flatten", "shifted", "chow:3", "--k", "1", "--l", "1"},
      {"hhh", "rank", "2", "2", "2"},
      {"hhh", "rank", "3", "3", "3", "--weight", "3,3,3"},
      {"hhh", "kernel", "4", "3", "3"},
      {"hhh", "character", "4", "3", "4"},
      {"rep", "char", "3,1"},
      {"rep", "char", "3,1", "2,1,1"},
      {"rep", "kron", "2,1", "2,1", "2,1"},
      {"rep", "skron", "4,2", "3,3"},
      {"rep", "pleth", "4,2", "2", "3", "--characters"},
      {"rep", "obstruct", "4,2", "2", "3"},
      {"rep", "useful", "4,2", "2", "3", "2"},
      {"latin", "count", "3"},
      {"latin", "pairing", "2", "--all-vars"},
      {"geo", "hessian", "chow:3"},
      {"geo", "cp", "det:3", "3"},
      {"geo", "sfturbo", "4", "--coeffs", "1"},
      {"geo", "discriminant"},
      {"geo", "cayley", "2", "1"},
      {"geo", "sylfranke", "3", "2", "2"},
      {"geo", "dualdim", "perm:3", "--point", "-2,1,1,1,1,1,1,1,1"},
      {"geo", "stab", "chow:3"},
  };
  for (auto args : commands) {
    args.push_back("--json");
    args.push_back("--no-cache");
    auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[0] << " " << args[1] << ": " << r.err;
    EXPECT_NO_THROW(nlohmann::json::parse(r.out)) << args[0] << " " << args[1];
  }
  EXPECT_EQ(cache_entries(), 0u);
}

TEST_F(CliTest, Values) {
  auto k = nlohmann::json::parse(run({"--json", "hhh", "character", "4", "3", "4"}).out);
  EXPECT_TRUE(k["result"]["complete"].get<bool>());
  auto dd = nlohmann::json::parse(run({"--json", "geo", "dualdim", "perm:3", "--point", "-2,1,1,1,1,1,1,1,1"}).out);
  EXPECT_EQ(dd["result"]["dual_dim"], 7);
  auto st = nlohmann::json::parse(run({"--json", "geo", "stab", "det:3"}).out);
  EXPECT_EQ(st["result"]["stabilizer_dim"], 16);
  auto lc = nlohmann::json::parse(run({"--json", "latin", "count", "4"}).out);
  EXPECT_EQ(lc["result"]["total"], "576");
  auto wl = nlohmann::json::parse(run({"--json", "flatten", "waring-lb", data("chow4.json")}).out);
  EXPECT_EQ(wl["result"]["bound"], 6);
}

TEST_F(CliTest, LatinResumeKeepsCheckpoint) {
  auto a = run({"latin", "count", "4", "--resume", "--no-cache"});
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(fs::exists(cache_ / "latin-4.checkpoint.json"));
  auto b = run({"latin", "count", "4", "--resume", "--no-cache"});
  EXPECT_EQ(a.out, b.out);
}
