#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairbc/cli.hpp"
#include "support/random_graphs.hpp"

using namespace fairbc;

namespace {

std::string data(const std::string& name) { return std::string(FAIRBC_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fairbc_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fairbc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> k23_args() {
  return {"--edges", data("k23_edges.txt"), "--attrs-upper", data("k23_upper.txt"), "--attrs-lower",
          data("k23_lower.txt")};
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST(Cli, EnumerateK23) {
  const auto out = temp_path("k23.lines");
  const auto r = invoke(cat(cat({"enumerate"}, k23_args()), {"--model", "ssfbc", "--algo", "bcempp", "--alpha", "2",
                                                          "--beta", "1", "--delta", "0", "--out", out}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), "U:1,2|V:7,9\nU:1,2|V:8,9\n");
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  EXPECT_EQ(meta["algorithm"], "bcempp");
  EXPECT_EQ(meta["ordering"], "deg");
  EXPECT_EQ(meta["prune"], "cfcore");
}

TEST(Cli, ThetaNeedsProportionModel) {
  const auto r = invoke(cat(cat({"enumerate"}, k23_args()),
                         {"--model", "ssfbc", "--theta", "0.4", "--out", temp_path("x.lines")}));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("theta"), std::string::npos);
  EXPECT_NE(r.err.find("--edges"), std::string::npos);  // synopsis follows the diagnostic
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"enumerate"}).code, 1);
  EXPECT_EQ(invoke(cat(cat({"enumerate"}, k23_args()), {"--model", "nope", "--out", temp_path("x")})).code, 1);
  EXPECT_EQ(invoke(cat(cat({"enumerate"}, k23_args()), {"--alpha", "0", "--out", temp_path("x")})).code, 1);
  EXPECT_EQ(invoke(cat(cat({"enumerate"}, k23_args()),
                    {"--model", "pssfbc", "--theta", "0.6", "--out", temp_path("x")}))
                .code,
            1);
  EXPECT_EQ(invoke(cat(cat({"enumerate"}, k23_args()),
                    {"--model", "pssfbc", "--algo", "bcem", "--out", temp_path("x")}))
                .code,
            1);
  EXPECT_EQ(invoke({"enumerate", "--edges", data("k23_edges.txt"), "--rand-attrs", "2,2", "--out", temp_path("x")}).code,
            1);
  EXPECT_EQ(invoke({"enumerate", "--edges", data("k23_edges.txt"), "--out", temp_path("x")}).code, 1);
}

TEST(Cli, OracleAndEnumerateAgree) {
  for (const std::string model : {"ssfbc", "bsfbc", "pssfbc", "pbsfbc"}) {
    const auto a = temp_path("oracle_" + model + ".lines");
    const auto b = temp_path("enum_" + model + ".lines");
    const std::vector<std::string> common{"--edges", data("small_edges.txt"), "--attrs-upper", data("small_upper.txt"),
                                          "--attrs-lower", data("small_lower.txt"), "--model", model, "--alpha", "1",
                                          "--beta", "1", "--delta", "1"};
    ASSERT_EQ(invoke(cat(cat({"oracle"}, common), {"--out", a})).code, 0);
    ASSERT_EQ(invoke(cat(cat({"enumerate"}, common), {"--out", b})).code, 0);
    EXPECT_EQ(slurp(a), slurp(b)) << model;
    EXPECT_FALSE(slurp(a).empty()) << model;
  }
}

TEST(Cli, JsonLinesAndRandomAttributes) {
  const auto out = temp_path("rand.jsonl");
  const auto r = invoke({"enumerate", "--edges", data("small_edges.txt"), "--rand-attrs", "2,2", "--seed", "3",
                      "--format", "jsonl", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(out));
  std::string last;
  for (std::string l; std::getline(in, l);) last = l;
  const auto summary = nlohmann::json::parse(last);
  EXPECT_EQ(summary["seed"], 3);
  EXPECT_EQ(summary["delta"], 2);
}

TEST(Cli, Prune) {
  const auto r = invoke(cat(cat({"prune"}, k23_args()), {"--alpha", "2", "--beta", "1"}));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("input 5"), std::string::npos);
  EXPECT_NE(r.out.find("final 5"), std::string::npos);
  const auto gone = invoke(cat(cat({"prune"}, k23_args()), {"--alpha", "3", "--beta", "1", "--prune", "fcore"}));
  EXPECT_NE(gone.out.find("final 0"), std::string::npos);
}

TEST(Cli, Bench) {
  const auto out = temp_path("bench.csv");
  const auto r = invoke({"bench", "--grid", data("grid.json"), "--out", out, "--jobs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(out));
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  // 2 datasets x (ssfbc, bsfbc: 2 algorithms; pssfbc: bcempp only) x 2 prune x 2 alpha x 2 delta
  EXPECT_EQ(lines.size(), 1u + 2 * 5 * 2 * 2 * 2);
  EXPECT_EQ(lines[0].substr(0, 8), "dataset,");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cols;
    std::stringstream row(lines[i]);
    for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 15u);
    EXPECT_LE(std::stoul(cols[10]), std::stoul(cols[9]));
  }
  EXPECT_EQ(invoke({"bench", "--grid", "/nonexistent.json", "--out", out}).code, 1);
}

TEST(Cli, HelpDocumentsFlags) {
  const auto r = invoke({"enumerate", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--edges", "--model", "--algo", "--order", "--alpha", "--beta", "--delta", "--theta",
                           "--attrs-upper", "--attrs-lower", "--rand-attrs", "--seed", "--out", "--format",
                           "--time-limit"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  EXPECT_NE(invoke({"bench", "--help"}).out.find("--jobs"), std::string::npos);
  EXPECT_NE(invoke({"oracle", "--help"}).out.find("--naive"), std::string::npos);
  EXPECT_NE(invoke({"prune", "--help"}).out.find("--prune"), std::string::npos);
}

TEST(Cli, TimeLimitExitCode) {
  const auto edges = temp_path("dense_edges.txt");
  {
    std::ofstream f(edges);
    testkit::RandomGraphSpec s;
    s.n_upper = 60;
    s.n_lower = 60;
    s.edge_prob = 0.6;
    const auto g = testkit::random_graph(s, 4);
    for (VertexId u = 0; u < g.size(Side::Upper); ++u)
      for (VertexId v : g.neighbors(Side::Upper, u)) f << u << ' ' << v << '\n';
  }
  const auto out = temp_path("dense.lines");
  const auto r = invoke({"enumerate", "--edges", edges, "--rand-attrs", "2,2", "--seed", "1", "--algo", "baseline",
                      "--delta", "5", "--time-limit", "0.05", "--out", out});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_EQ(nlohmann::json::parse(slurp(out + ".meta.json"))["complete"], false);
}
