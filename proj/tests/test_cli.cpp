#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treefree/cli_app.hpp"

using treefree::run_cli;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TESTS_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("validate: exit codes 0/1/2") {
  CHECK(cli({"validate", data("tree5.json")}).code == 0);

  CliResult dup = cli({"validate", data("dup.csv")});
  CHECK(dup.code == 1);
  CHECK(dup.err.find("DuplicatePoints") != std::string::npos);

  CliResult merged = cli({"validate", data("dup.csv"), "--merge-duplicates"});
  CHECK(merged.code == 0);
  CHECK(merged.out.find("merged") != std::string::npos);

  CHECK(cli({"validate", data("bad.json")}).code == 2);
  CHECK(cli({"validate", data("missing.json")}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
}

TEST_CASE("check4pt verdicts and witness output") {
  CliResult ok = cli({"check4pt", data("tree5.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("holds") != std::string::npos);

  CliResult fail = cli({"check4pt", data("square.csv"), "--mode", "float"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("pair sums") != std::string::npos);
  CHECK(fail.out.find("2.8284271247461") != std::string::npos);

  CliResult json_fail = cli({"check4pt", data("square.csv"), "--mode", "float", "--format", "json"});
  CHECK(json_fail.code == 1);
  auto j = nlohmann::json::parse(json_fail.out);
  CHECK(j["schema"] == "treefree/1");
  CHECK(j["holds"] == false);
  CHECK(j["witness"]["points"].size() == 4);
}

TEST_CASE("embed formats and refusal") {
  CliResult newick = cli({"embed", data("tree5.json"), "--tree-format", "newick"});
  CHECK(newick.code == 0);
  CHECK(newick.out.back() == '\n');
  CHECK(newick.out.find("(") == 0);

  CliResult dot = cli({"embed", data("tree5.json"), "--tree-format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("graph tree {") == 0);

  CliResult tree_json = cli({"embed", data("tree5.json")});
  CHECK(tree_json.code == 0);
  auto j = nlohmann::json::parse(tree_json.out);
  CHECK(j["root"] == "r");
  CHECK(j["vertices"].size() <= 2 * 5 - 2);

  CliResult refused = cli({"embed", data("square.csv"), "--mode", "float"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("FourPointViolation") != std::string::npos);
}

TEST_CASE("norm methods agree and verify") {
  CliResult lp = cli({"norm", data("tree5.json"), data("mol.json"), "--method", "lp"});
  CHECK(lp.code == 0);
  CHECK(lp.out.find("norm = ") == 0);

  CliResult flow = cli({"norm", data("tree5.json"), data("mol.json"), "--method", "flow"});
  CHECK(flow.code == 0);
  // same value line
  CHECK(lp.out.substr(0, lp.out.find('(')) == flow.out.substr(0, flow.out.find('(')));

  CliResult auto_verify =
      cli({"norm", data("tree5.json"), data("mol.json"), "--method", "auto", "--verify"});
  CHECK(auto_verify.code == 0);
  CHECK(auto_verify.out.find("(tree-cut)") != std::string::npos);
  CHECK(auto_verify.out.find("methods agree") != std::string::npos);

  CliResult line = cli({"norm", data("line.json"), data("linemol.json"), "--method", "line", "--verify"});
  CHECK(line.code == 0);
  CHECK(line.out.find("norm = 4 ") == 0);

  // line method without positions is an input error
  CliResult noline = cli({"norm", data("tree5.json"), data("mol.json"), "--method", "line"});
  CHECK(noline.code == 2);

  CliResult jr = cli({"norm", data("tree5.json"), data("mol.json"), "--method", "lp", "--format", "json"});
  auto j = nlohmann::json::parse(jr.out);
  CHECK(j["method"] == "lp");
  CHECK(j["certificate"]["type"] == "lipschitz-function");
}

TEST_CASE("classify4 per-labeling table") {
  CliResult ok = cli({"classify4", data("tree5.json"), "--quadruple", "r,a,b,c"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("holds on the quadruple") != std::string::npos);

  CliResult fail =
      cli({"classify4", data("square.csv"), "--mode", "float", "--quadruple", "p00,p10,p01,p11"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("asymmetric") != std::string::npos);

  CliResult jr = cli({"classify4", data("square.csv"), "--mode", "float", "--quadruple",
                      "p00,p10,p01,p11", "--format", "json"});
  auto j = nlohmann::json::parse(jr.out);
  CHECK(j["four_point_holds"] == false);
  CHECK(j["labelings"].size() == 3);

  CHECK(cli({"classify4", data("tree5.json"), "--quadruple", "r,a,b"}).code == 2);
  CHECK(cli({"classify4", data("tree5.json"), "--quadruple", "r,a,b,zz"}).code == 2);
}

TEST_CASE("glue-check reports bounds") {
  CliResult r = cli({"glue-check", data("glued.json"), data("gluedmol.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("alpha = 10") != std::string::npos);
  CHECK(r.out.find("beta = 11") != std::string::npos);
  CHECK(r.out.find(": ok") != std::string::npos);

  // a metric file without a partition is an input error
  CHECK(cli({"glue-check", data("tree5.json"), data("mol.json")}).code == 2);

  CliResult jr = cli({"glue-check", data("glued.json"), data("gluedmol.json"), "--format", "json"});
  auto j = nlohmann::json::parse(jr.out);
  CHECK(j["bounds_hold"] == true);
  CHECK(j["norm"] == "11");
  CHECK(j["decomposed_norm"] == "6");
}

TEST_CASE("gen produces loadable deterministic metrics") {
  CliResult t1 = cli({"gen", "--kind", "tree", "--n", "7", "--seed", "42"});
  CliResult t2 = cli({"gen", "--kind", "tree", "--n", "7", "--seed", "42"});
  CHECK(t1.code == 0);
  CHECK(t1.out == t2.out);
  CliResult other = cli({"gen", "--kind", "tree", "--n", "7", "--seed", "43"});
  CHECK(other.out != t1.out);

  auto j = nlohmann::json::parse(t1.out);
  CHECK(j["points"].size() == 7);

  CHECK(cli({"gen", "--kind", "discrete", "--n", "4"}).code == 0);
  CHECK(cli({"gen", "--kind", "euclidean", "--n", "5", "--seed", "1"}).code == 0);
}

TEST_CASE("byte determinism across runs and thread counts") {
  for (const char* threads : {"1", "4"}) {
    CliResult a = cli({"check4pt", data("square.csv"), "--mode", "float", "--threads", threads});
    CliResult b = cli({"check4pt", data("square.csv"), "--mode", "float", "--threads", threads});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  CliResult one = cli({"check4pt", data("square.csv"), "--mode", "float", "--threads", "1"});
  CliResult four = cli({"check4pt", data("square.csv"), "--mode", "float", "--threads", "4"});
  CHECK(one.out == four.out);

  CliResult e1 = cli({"embed", data("tree5.json")});
  CliResult e2 = cli({"embed", data("tree5.json")});
  CHECK(e1.out == e2.out);
}

TEST_CASE("help exits cleanly") {
  CHECK(cli({"--help"}).code == 0);
}
