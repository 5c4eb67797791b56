#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kData = LGCN_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

struct Sandbox {
  fs::path root;
  Sandbox() {
    static int counter = 0;
    root = fs::temp_directory_path() / ("lgcn_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(root);
  }
  ~Sandbox() { fs::remove_all(root); }

  std::string slurp(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Run lgcn(const std::string& args) const {
    const auto out = root / "stdout.txt";
    const auto err = root / "stderr.txt";
    const std::string cmd = std::string("'") + LGCN_BINARY + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
};

std::string tree_args() {
  return "--config '" + (kData / "tree_lp.json").string() + "' --edges '" + (kData / "tree_edges.csv").string() +
         "' --features '" + (kData / "tree_features.csv").string() + "'";
}

}  // namespace

TEST_CASE("train on the bundled tree fixture") {
  Sandbox box;
  const auto run = box.lgcn("train " + tree_args() + " --out '" + (box.root / "a").string() + "'");
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto report = nlohmann::json::parse(box.slurp(box.root / "a" / "report.json"));
  CHECK(report.contains("test_auc"));
  CHECK(report.at("seed") == 7);
  CHECK(report.at("best_epoch").get<int>() >= 1);
  CHECK(report.at("best_epoch").get<int>() <= 60);
  CHECK(report.at("config").at("max_epochs") == 60);
  CHECK(fs::exists(box.root / "a" / "checkpoint.json"));
  CHECK(fs::exists(box.root / "a" / "embeddings.json"));

  std::ifstream metrics(box.root / "a" / "metrics.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(metrics, line)) {
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec.at("epoch") == ++lines);
  }
  CHECK(lines == report.at("epochs_run").get<int>());

  SUBCASE("a second run gives a byte-identical report") {
    const auto again = box.lgcn("train " + tree_args() + " --out '" + (box.root / "b").string() + "'");
    REQUIRE(again.code == 0);
    CHECK(box.slurp(box.root / "a" / "report.json") == box.slurp(box.root / "b" / "report.json"));
    CHECK(box.slurp(box.root / "a" / "metrics.jsonl") == box.slurp(box.root / "b" / "metrics.jsonl"));
  }

  SUBCASE("flags override the config file") {
    const auto other = box.lgcn("train " + tree_args() + " --seed 8 --max-epochs 5 --out '" + (box.root / "c").string() + "'");
    REQUIRE(other.code == 0);
    const auto r = nlohmann::json::parse(box.slurp(box.root / "c" / "report.json"));
    CHECK(r.at("seed") == 8);
    CHECK(r.at("epochs_run") == 5);
  }

  SUBCASE("distortion of the trained embeddings") {
    const auto a = box.lgcn("analyze '" + (kData / "tree_edges.csv").string() + "' --hyperbolicity none --distortion '" +
                            (box.root / "a" / "embeddings.json").string() + "'");
    REQUIRE_MESSAGE(a.code == 0, a.err);
    CHECK(nlohmann::json::parse(a.out).at("distortion").get<double>() >= 0.0);
  }
}

TEST_CASE("train error exit codes") {
  Sandbox box;
  const auto missing = (box.root / "nope.csv").string();
  const auto run = box.lgcn("train --edges '" + missing + "' --out '" + box.root.string() + "'");
  CHECK(run.code == 2);
  CHECK(run.err.find("nope.csv") != std::string::npos);

  const auto edges = (kData / "tree_edges.csv").string();
  CHECK(box.lgcn("train --edges '" + edges + "' --lr -1 --out '" + box.root.string() + "'").code == 1);
  CHECK(box.lgcn("train --edges '" + edges + "' --task regression").code == 1);
  const auto bad_key = box.write("bad.json", R"({"learning_rate": 0.1})");
  CHECK(box.lgcn("train --config '" + bad_key + "' --edges '" + edges + "'").code == 1);
  const auto not_json = box.write("bad2.json", "{");
  CHECK(box.lgcn("train --config '" + not_json + "' --edges '" + edges + "'").code == 1);
  const auto garbled = box.write("e.csv", "0,1\n1,two\n");
  const auto g = box.lgcn("train --edges '" + garbled + "' --out '" + box.root.string() + "'");
  CHECK(g.code == 2);
  CHECK(g.err.find(":2") != std::string::npos);
  CHECK(box.lgcn("frobnicate").code == 1);
}

TEST_CASE("analyze") {
  Sandbox box;
  const auto c4 = box.write("c4.csv", "0,1\n1,2\n2,3\n3,0\n");
  auto run = box.lgcn("analyze '" + c4 + "'");
  REQUIRE_MESSAGE(run.code == 0, run.err);
  auto report = nlohmann::json::parse(run.out);
  CHECK(report.at("delta_avg") == 1.0);
  CHECK(report.at("delta_worst") == 1.0);
  CHECK(report.at("mode") == "exact");

  run = box.lgcn("analyze '" + (kData / "tree_edges.csv").string() + "' --hyperbolicity sampled:2000 --seed 3");
  REQUIRE(run.code == 0);
  report = nlohmann::json::parse(run.out);
  CHECK(report.at("delta_avg") == 0.0);
  CHECK(report.at("samples") == 2000);

  const auto p3 = box.write("p3.csv", "0,1\n1,2\n");
  CHECK(box.lgcn("analyze '" + p3 + "'").code == 3);
  CHECK(box.lgcn("analyze '" + c4 + "' --hyperbolicity sometimes").code == 1);
  CHECK(box.lgcn("analyze '" + (box.root / "missing.csv").string() + "'").code == 2);

  // Points along one geodesic at spacing 0.5 reproduce path distances up to scale.
  const auto p4 = box.write("p4.csv", "0,1\n1,2\n2,3\n");
  nlohmann::json emb = {{"geometry", "lorentz"}, {"beta", 1.0}, {"points", nlohmann::json::array()}};
  for (int i = 0; i < 4; ++i) emb["points"].push_back({std::cosh(0.5 * i), std::sinh(0.5 * i)});
  const auto path = box.write("emb.json", emb.dump());
  run = box.lgcn("analyze '" + p4 + "' --hyperbolicity none --distortion '" + path + "' --out '" +
                 (box.root / "r.json").string() + "'");
  REQUIRE_MESSAGE(run.code == 0, run.err);
  report = nlohmann::json::parse(box.slurp(box.root / "r.json"));
  CHECK(report.at("distortion").get<double>() <= 1e-20);
}

TEST_CASE("gen") {
  Sandbox box;
  const auto a = (box.root / "a").string(), b = (box.root / "b").string();
  REQUIRE(box.lgcn("gen blocks --n 60 --blocks 3 --p-in 0.3 --p-out 0.02 --features label --noise 0.2 --seed 4 --out '" + a + "'").code == 0);
  REQUIRE(box.lgcn("gen blocks --n 60 --blocks 3 --p-in 0.3 --p-out 0.02 --features label --noise 0.2 --seed 4 --out '" + b + "'").code == 0);
  for (const char* f : {"edges.csv", "features.csv", "labels.csv"})
    CHECK(box.slurp(fs::path(a) / f) == box.slurp(fs::path(b) / f));

  REQUIRE(box.lgcn("gen tree --depth 6 --branching 2 --out '" + a + "'").code == 0);
  const auto run = box.lgcn("analyze '" + (fs::path(a) / "edges.csv").string() + "' --hyperbolicity sampled:1000");
  CHECK(nlohmann::json::parse(run.out).at("delta_avg") == 0.0);

  CHECK(box.lgcn("gen blocks --n 10 --blocks 20 --out '" + a + "'").code == 1);
  CHECK(box.lgcn("gen tree --depth 0 --out '" + a + "'").code == 1);
}
