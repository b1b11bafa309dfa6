#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "iep/iep.hpp"

using namespace iep;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("iep-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(IEP_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + (dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

SuiteOptions out_dir(const fs::path& dir) {
  SuiteOptions o;
  o.output = dir / "out";
  return o;
}

Json suite_with(const std::vector<Json>& instances) { return Json{{"instances", instances}}; }

}  // namespace

TEST(JsonIo, ModelRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Multigraph g = random_connected_multigraph(5, 8, 2, seed);
    auto found = find_expansion(g, theta(2), ModelMode::kStrongImmersion);
    if (!found.model) continue;
    ImmersionModel back = model_from_json(Json::parse(model_to_json(*found.model).dump()));
    EXPECT_EQ(back.mode, found.model->mode);
    EXPECT_EQ(back.phi, found.model->phi);
    EXPECT_EQ(back.psi, found.model->psi);
  }
  EXPECT_THROW(model_from_json(Json{{"mode", "immersion"}}), Error);
  EXPECT_THROW(edge_from_json(Json::array({1, 1, 1})), Error);
}

TEST(JsonIo, DecompositionRoundTrip) {
  Multigraph g = random_connected_multigraph(6, 9, 2, 3);
  TreeCutDecomposition d = exact_tcw_small(g).decomposition;
  Json j = decomposition_to_json(g, d);
  EXPECT_EQ(decomposition_kind(j), "tree-cut");
  EXPECT_EQ(tcd_from_json(j, g), d);
  TreePartition p = exact_tpw_small(g).partition;
  EXPECT_EQ(partition_from_json(decomposition_to_json(g, p), g), p);
  EXPECT_THROW(partition_from_json(j, g), Error);
}

TEST(JsonIo, StoredWidthMustMatch) {
  Multigraph g = cycle_graph(4);
  Json j = decomposition_to_json(g, single_bag(g));
  j["width"] = 3;
  try {
    tcd_from_json(j, g);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidDecomposition);
  }
}

TEST(JsonIo, ReportCarriesChecks) {
  EPReport r = ep_edge_certify(cycle_graph(4), theta(2));
  Json j = ep_report_to_json(r);
  EXPECT_EQ(j.at("schema"), "iep.ep-report");
  EXPECT_EQ(j.at("cover").size(), r.cover.size());
  EXPECT_EQ(j.at("checks").at("cover_valid").at("status"), "pass");
  EXPECT_FALSE(j.contains("generated_at"));
}

TEST(Suite, EmptySuiteWritesHeaderOnly) {
  fs::path dir = scratch("empty");
  SuiteOutcome o = run_suite(suite_from_json(suite_with({}), dir), out_dir(dir));
  EXPECT_EQ(o.exit_code, 0);
  std::string csv = slurp(dir / "out" / "summary.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(csv.rfind("name,mode,", 0), 0u);
}

TEST(Suite, RandomThetaInstancesVerify) {
  fs::path dir = scratch("theta");
  std::vector<Json> items;
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + i % 4;
    items.push_back(Json{{"name", "r" + std::to_string(i)},
                         {"graph", Json{{"family", "random-connected"}, {"params", {n, n + 1 + i % 3, 2}}, {"seed", 100 + i}}},
                         {"pattern", Json{{"family", "theta"}, {"params", {2}}}}});
  }
  SuiteOutcome o = run_suite(suite_from_json(suite_with(items), dir), out_dir(dir));
  EXPECT_EQ(o.exit_code, 0);
  ASSERT_EQ(o.codes.size(), 20u);
  for (int i = 0; i < 20; ++i) {
    Json report = Json::parse(slurp(dir / "out" / ("r" + std::to_string(i) + ".json")));
    EXPECT_EQ(report.at("checks").at("cover_valid").at("status"), "pass") << i;
  }
  std::string csv = slurp(dir / "out" / "summary.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
}

TEST(Suite, SabotageFails) {
  fs::path dir = scratch("sabotage");
  Json item{{"name", "two-cycles"},
            {"graph", Json{{"family", "cycle"}, {"params", {5}}}},
            {"pattern", Json{{"family", "cycle"}, {"params", {3}}}}};
  SuiteOptions opt = out_dir(dir);
  opt.sabotage_drop_cover_edge = true;
  EXPECT_NE(run_suite(suite_from_json(suite_with({item}), dir), opt).exit_code, 0);
}

TEST(Suite, BadInstanceIsReportedNotThrown) {
  fs::path dir = scratch("bad");
  Json item{{"name", "missing"}, {"graph", Json{{"file", "nope.txt"}}}, {"pattern", Json{{"family", "theta"}, {"params", {2}}}}};
  SuiteOutcome o = run_suite(suite_from_json(suite_with({item}), dir), out_dir(dir));
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_TRUE(Json::parse(slurp(dir / "out" / "missing.json")).contains("error"));
  EXPECT_THROW(suite_from_json(Json{{"instances", {Json{{"name", "x"}}}}}, dir), Error);
}

TEST(Cli, GenThenDecompose) {
  fs::path dir = scratch("gen");
  CliRun g = cli("gen cycle 5", dir);
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(parse_graph(g.out), cycle_graph(5));
  spit(dir / "c5.txt", g.out);
  CliRun d = cli("decompose tcw " + (dir / "c5.txt").string() + " --exact --format json", dir);
  ASSERT_EQ(d.code, 0) << d.out;
  Json j = Json::parse(d.out);
  EXPECT_EQ(j.at("width"), exact_tcw_small(cycle_graph(5)).width);
  CliRun tw = cli("decompose tw " + (dir / "c5.txt").string(), dir);
  EXPECT_EQ(tw.code, 0);
  EXPECT_NE(tw.out.find("2"), std::string::npos);
}

TEST(Cli, CertifyIsDeterministicWithoutTimestamp) {
  fs::path dir = scratch("certify");
  spit(dir / "g.txt", serialize_graph(disjoint_union(cycle_graph(4), cycle_graph(3))));
  spit(dir / "h.txt", serialize_graph(theta(2)));
  const std::string args = "certify --G " + (dir / "g.txt").string() + " --H " + (dir / "h.txt").string() + " --no-timestamp --format json";
  CliRun a = cli(args, dir);
  CliRun b = cli(args, dir);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(Json::parse(a.out).contains("generated_at"));
  CliRun stamped = cli("certify --G " + (dir / "g.txt").string() + " --H " + (dir / "h.txt").string() + " --format json", dir);
  EXPECT_TRUE(Json::parse(stamped.out).contains("generated_at"));
}

TEST(Cli, ValidateModelReportsWitness) {
  fs::path dir = scratch("model");
  spit(dir / "g.txt", serialize_graph(cycle_graph(4)));
  spit(dir / "h.txt", serialize_graph(theta(2)));
  ImmersionModel m;
  m.mode = ModelMode::kImmersion;
  const VertexId a{1}, b{2}, c{3}, d{4};
  m.phi = {{a, a}, {b, c}};
  m.psi[make_edge(a, b, 1)] = {make_edge(a, b), make_edge(b, c)};
  m.psi[make_edge(a, b, 2)] = {make_edge(a, d), make_edge(c, d)};
  spit(dir / "ok.json", model_to_json(m).dump());
  const std::string base = "validate model --G " + (dir / "g.txt").string() + " --H " + (dir / "h.txt").string();
  EXPECT_EQ(cli(base + " --model " + (dir / "ok.json").string(), dir).code, 0);
  m.psi[make_edge(a, b, 2)] = {make_edge(a, b), make_edge(b, c)};
  spit(dir / "bad.json", model_to_json(m).dump());
  CliRun bad = cli(base + " --model " + (dir / "bad.json").string() + " --format json", dir);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("{1,2}_1"), std::string::npos) << bad.out;
}

TEST(Cli, ExitCodes) {
  fs::path dir = scratch("codes");
  EXPECT_EQ(cli("gen nosuchfamily 3", dir).code, 3);
  EXPECT_EQ(cli("validate graph " + (dir / "missing.txt").string(), dir).code, 3);
  spit(dir / "broken.txt", "p mgraph 2 1\ne 1 1 1\n");
  EXPECT_NE(cli("validate graph " + (dir / "broken.txt").string(), dir).code, 0);
  spit(dir / "k5.txt", serialize_graph(complete_graph(5)));
  spit(dir / "c3.txt", serialize_graph(cycle_graph(3)));
  EXPECT_EQ(cli("--budget 5 certify --G " + (dir / "k5.txt").string() + " --H " + (dir / "c3.txt").string(), dir).code, 2);
  EXPECT_EQ(cli("find --G " + (dir / "k5.txt").string() + " --H " + (dir / "c3.txt").string(), dir).code, 0);
}

TEST(Cli, SuiteRunWritesReports) {
  fs::path dir = scratch("suite");
  Json item{{"name", "c4"}, {"graph", Json{{"family", "cycle"}, {"params", {4}}}}, {"pattern", Json{{"family", "theta"}, {"params", {2}}}}};
  spit(dir / "suite.json", suite_with({item}).dump());
  CliRun r = cli("suite run " + (dir / "suite.json").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "c4.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.csv"));
  CliRun sab = cli("suite run " + (dir / "suite.json").string() + " --out " + (dir / "out2").string() + " --sabotage-drop-cover-edge", dir);
  EXPECT_EQ(sab.code, 1);
}

TEST(Cli, SamplesParse) {
  for (const auto& entry : fs::directory_iterator(IEP_SAMPLES_DIR)) {
    if (entry.path().extension() == ".txt") {
      EXPECT_NO_THROW(read_graph_file(entry.path())) << entry.path();
    }
  }
}
