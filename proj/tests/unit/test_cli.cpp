#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "sentinf/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sentinf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / "sentinf_cli_test") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  fs::path operator/(const std::string& name) const { return dir_ / name; }
  std::string str(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

void generate(const Scratch& s) {
  const auto r = run({"generate", "--users", "12", "--classes", "2", "--cascades-per-class", "30",
                      "--influential-scale", "0.6", "--base-scale", "0.1", "--seed", "5", "--out",
                      s.str("gen")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
}

}  // namespace

TEST_CASE("help and version exit cleanly") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"train", "--help"}).code == 0);
  CHECK(run({"--version"}).out.find("1.0.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  Scratch s;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"train", "--out", s.str("x")}).code == 2);  // missing --cascades
  const auto missing = run({"train", "--cascades", s.str("nope.jsonl"), "--out", s.str("x")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nope.jsonl") != std::string::npos);
  generate(s);
  CHECK(run({"train", "--cascades", s.str("gen/cascades.jsonl"), "--model", "lstm", "--out",
             s.str("x")})
            .code == 2);
  CHECK(run({"train", "--cascades", s.str("gen/cascades.jsonl"), "--rho", "1.5", "--out",
             s.str("x")})
            .code == 2);
  CHECK(run({"evaluate", "--cascades", s.str("gen/cascades.jsonl"), "--task", "wbr", "--out",
             s.str("x")})
            .code == 2);  // no parents
}

TEST_CASE("generate writes data and a manifest") {
  Scratch s;
  generate(s);
  for (const auto* f : {"cascades.jsonl", "parents.jsonl", "planted.json", "manifest.json"}) {
    CHECK(fs::exists(s / "gen" / f));
  }
  const auto m = read_json(s / "gen" / "manifest.json");
  CHECK(m["tool"] == "sentinf");
  CHECK(m["command"] == json::array({"generate"}));
  CHECK(m["options"]["users"] == 12);
  CHECK(m["outputs"].size() == 3);
  const auto d = sentinf::load_dataset({s / "gen" / "cascades.jsonl", s / "gen" / "parents.jsonl"});
  CHECK(d.classes == 2);
  CHECK_FALSE(d.cascades.empty());
}

TEST_CASE("training for zero epochs returns the initialization") {
  Scratch s;
  generate(s);
  {
    auto in = sentinf::open_input(s / "gen" / "planted.json");
    const auto planted = sentinf::read_checkpoint(in);
    REQUIRE(planted.dim() == 2);
  }
  const auto r = run({"train", "--cascades", s.str("gen/cascades.jsonl"), "--users", "12", "--dim",
                      "2", "--max-epochs", "0", "--init", s.str("gen/planted.json"), "--out",
                      s.str("t0")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  auto a = sentinf::open_input(s / "gen" / "planted.json");
  auto b = sentinf::open_input(s / "t0" / "params.json");
  CHECK(sentinf::read_checkpoint(a) == sentinf::read_checkpoint(b));

  const auto bad_shape = run({"train", "--cascades", s.str("gen/cascades.jsonl"), "--dim", "3",
                              "--init", s.str("gen/planted.json"), "--out", s.str("t1")});
  CHECK(bad_shape.code == 2);
}

TEST_CASE("replay reproduces every output byte for byte") {
  Scratch s;
  generate(s);
  const auto r = run({"train", "--cascades", s.str("gen/cascades.jsonl"), "--dim", "2",
                      "--max-epochs", "3", "--out", s.str("train")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto e = run({"evaluate", "--cascades", s.str("gen/cascades.jsonl"), "--parents",
                      s.str("gen/parents.jsonl"), "--task", "wbr", "--model",
                      "ct-jaccard,ct-bernoulli", "--folds", "3", "--out", s.str("eval")});
  REQUIRE(e.code == 0);

  for (const auto* dir : {"gen", "train", "eval"}) {
    const auto replayed = std::string(dir) + "_replay";
    REQUIRE(run({"replay", s.str(std::string(dir) + "/manifest.json"), "--out", s.str(replayed)})
                .code == 0);
    const auto m = read_json(s / dir / "manifest.json");
    for (const auto& name : m["outputs"]) {
      const auto file = name.get<std::string>();
      CHECK_MESSAGE(slurp(s / dir / file) == slurp(s / replayed / file), dir << "/" << file);
    }
    auto m2 = read_json(s / replayed / "manifest.json");
    CHECK(m2["seeds"] == m["seeds"]);
    CHECK(m2["resolved"] == m["resolved"]);
  }
}

TEST_CASE("evaluate reports every requested model") {
  Scratch s;
  generate(s);
  const auto r = run({"evaluate", "--cascades", s.str("gen/cascades.jsonl"), "--task", "pcd",
                      "--model", "ct-jaccard,ct-bernoulli", "--folds", "2", "--out", s.str("eval")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto report = read_json(s / "eval" / "report.json");
  CHECK(report["task"] == "pcd");
  CHECK(report["folds"] == 2);
  REQUIRE(report["models"].size() == 2);
  CHECK(report["models"][0]["model"] == "ct-jaccard");
  CHECK(report["models"][0]["metrics"]["AUC"]["per_fold"].size() == 2);
  const auto table = slurp(s / "eval" / "report.txt");
  CHECK(table.find("ct-bernoulli") != std::string::npos);
  CHECK(table.find(" \n") == std::string::npos);
}

TEST_CASE("export writes norms and rates") {
  Scratch s;
  generate(s);
  REQUIRE(run({"export", "norms", "--params", s.str("gen/planted.json"), "--out", s.str("ex")}).code == 0);
  const auto norms = slurp(s / "ex" / "norms.csv");
  CHECK(std::count(norms.begin(), norms.end(), '\n') == 1 + 12 * 2);
  REQUIRE(run({"export", "rates", "--params", s.str("gen/planted.json"), "--sample", "10",
               "--sentiment", "1", "--out", s.str("ex2")})
              .code == 0);
  const auto rates = slurp(s / "ex2" / "rates.csv");
  CHECK(std::count(rates.begin(), rates.end(), '\n') == 11);
}

TEST_CASE("preprocess applies onion peeling and sentiment labels") {
  Scratch s;
  {
    std::ofstream c(s / "c.jsonl");
    for (int i = 0; i < 6; ++i) {
      c << R"({"id":"m)" << i << R"(","t_end":9,"events":[[0,0],[1,1],[2,2],[3,3],[4,4],[5,5],[6,6],[7,7]]})"
        << '\n';
    }
    c << R"({"id":"small","t_end":9,"events":[[0,0],[1,1]]})" << '\n';
    std::ofstream t(s / "t.jsonl");
    for (int i = 0; i < 6; ++i) t << R"({"id":"m)" << i << R"(","text":")" << (i % 2 ? ":(" : ":)") << "\"}\n";
    t << R"j({"id":"small","text":"ok :)"})j" << '\n';
    c << R"({"id":"unlabeled","t_end":9,"events":[[0,0],[1,1]]})" << '\n';
    std::ofstream l(s / "lex.tsv");
    l << ":)\tpos\n:(\tneg\n";
  }
  CHECK(run({"preprocess", "--cascades", s.str("c.jsonl"), "--texts", s.str("t.jsonl"), "--out",
             s.str("p")})
            .code == 2);  // --texts without --lexicon
  const auto r = run({"preprocess", "--cascades", s.str("c.jsonl"), "--texts", s.str("t.jsonl"),
                      "--lexicon", s.str("lex.tsv"), "--out", s.str("p")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto summary = read_json(s / "p" / "summary.json");
  CHECK(summary["cascades"] == 6);
  CHECK(summary["dropped_cascades"] == 1);
  CHECK(summary["unlabeled_cascades"] == 1);
  std::ifstream in(s / "p" / "cascades.jsonl");
  const auto cs = sentinf::read_cascades(in);
  REQUIRE(cs.size() == 6);
  CHECK(cs[0].sentiment == 0);
  CHECK(cs[1].sentiment == 1);
}
