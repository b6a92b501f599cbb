#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "indef/io.hpp"

namespace {

std::string g_cli;  // path of the command under test, from argv[1]

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout only
};

RunResult run_cli(const std::string& args) {
  RunResult res;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path temp_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "indef_cli_tests";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = temp_dir() / name;
  std::ofstream out(path);
  out << text;
  out.close();
  return path.string();
}

std::string sharp_triangle_path() {
  static std::string path = write_temp("triangle.json", R"({
  "schema_version": 1,
  "vertices": 3,
  "simplices": [[0, 1], [0, 2], [1, 2]],
  "metric": {
    "mode": "length",
    "edges": [[0, 1, 1], [0, 2, 1], [1, 2, 100]]
  }
})");
  return path;
}

std::string filled_triangle_path() {
  static std::string path = write_temp("filled_triangle.json", R"({
  "schema_version": 1,
  "vertices": 3,
  "simplices": [[0, 1, 2]],
  "metric": {
    "mode": "length",
    "edges": [[0, 1, 1], [0, 2, 1], [1, 2, 100]]
  }
})");
  return path;
}

std::string complete_graph_path() {
  static std::string path = [] {
    std::string simplices, edges;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        std::string pair = std::to_string(i) + ", " + std::to_string(j);
        if (!simplices.empty()) {
          simplices += ", ";
          edges += ", ";
        }
        simplices += "[" + pair + "]";
        edges += "[" + pair + ", 1]";
      }
    return write_temp("k5.json",
                      "{\"schema_version\": 1, \"vertices\": 5, \"simplices\": "
                      "[" + simplices +
                      "], \"metric\": {\"mode\": \"length\", \"edges\": [" +
                      edges + "]}}");
  }();
  return path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("embed greene writes a parseable document and exits 0") {
  auto out = temp_dir() / "tri_greene.json";
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method greene --seed 11 --output " + out.string());
  REQUIRE(r.exit_code == 0);
  indef::EmbeddingDocument doc =
      indef::parse_embedding_document(indef::read_file(out.string()));
  CHECK(doc.method == "greene");
  CHECK(doc.signature.p() == 3);
  CHECK(doc.signature.q() == 3);
  CHECK(doc.seed == 11);
  CHECK(doc.residual <= 1e-10);
  CHECK(doc.coordinates.cols() == 3);
}

TEST_CASE("embed writes the document to stdout when no output is given") {
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method spanning --seed 3");
  REQUIRE(r.exit_code == 0);
  indef::EmbeddingDocument doc = indef::parse_embedding_document(r.out);
  CHECK(doc.method == "spanning");
  CHECK(doc.signature.dim() == 6);
  CHECK(doc.has_alphas);
}

TEST_CASE("embed then verify round-trips through files") {
  auto out = temp_dir() / "tri_gluing.json";
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method gluing --seed 4 --output " + out.string());
  REQUIRE(r.exit_code == 0);
  RunResult v =
      run_cli("verify " + out.string() + " " + sharp_triangle_path());
  CHECK(v.exit_code == 0);
  CHECK(contains(v.out, "isometry: pass"));
  CHECK(contains(v.out, "embedding: pass"));
  CHECK(contains(v.out, "claimed mode (embedding): pass"));
}

TEST_CASE("verify rejects a corrupted embedding with exit code 4") {
  auto out = temp_dir() / "tri_corrupt.json";
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method greene --seed 5 --output " + out.string());
  REQUIRE(r.exit_code == 0);
  indef::EmbeddingDocument doc =
      indef::parse_embedding_document(indef::read_file(out.string()));
  doc.coordinates(0, 0) += 0.5;
  indef::write_file(out.string(), indef::serialize(doc));
  RunResult v =
      run_cli("verify " + out.string() + " " + sharp_triangle_path());
  CHECK(v.exit_code == 4);
  CHECK(contains(v.out, "isometry: FAIL"));
}

TEST_CASE("hand-written embedding documents verify too") {
  // signs (+,-): the long edge runs along the first axis, the short edges
  // close up through the second
  std::string doc = R"({
  "schema_version": 1,
  "method": "greene",
  "mode": "embedding",
  "seed": 0,
  "signature": {"signs": [1, -1], "p": 1, "q": 1},
  "residual": 0,
  "coordinates": [
    [0, 0],
    [50, 49.989998999799951],
    [-50, 49.989998999799951]
  ]
})";
  std::string path = write_temp("tri_hand.json", doc);
  RunResult v = run_cli("verify " + path + " " + sharp_triangle_path() +
                        " --tol 1e-6");
  CHECK(v.exit_code == 0);
  CHECK(contains(v.out, "isometry: pass"));
}

TEST_CASE("classify prints the class and per-simplex inertia") {
  RunResult r = run_cli("classify " + filled_triangle_path());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "class: Minkowski"));
  CHECK(contains(r.out, "margin:"));
  CHECK(contains(r.out, "simplex [0, 1, 2]: n+ 1, n0 0, n- 1"));

  // the graph triangle's maximal simplices are bare edges, all positive
  RunResult g = run_cli("classify " + sharp_triangle_path());
  CHECK(g.exit_code == 0);
  CHECK(contains(g.out, "class: Euclidean"));
}

TEST_CASE("obstruct reports Gram lower bounds") {
  RunResult r = run_cli("obstruct " + complete_graph_path());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "p_min = 4"));
  CHECK(contains(r.out, "q_min = 0"));
  CHECK(contains(r.out, "witness_plus = [0, 1, 2, 3, 4]"));

  RunResult s = run_cli("obstruct " + complete_graph_path() +
                        " --simplices-only");
  CHECK(s.exit_code == 0);
  CHECK(contains(s.out, "p_min = 1"));  // bare edges see only 1x1 forms
}

TEST_CASE("info summarizes the complex and the method dimensions") {
  RunResult r = run_cli("info " + complete_graph_path());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "vertices: 5"));
  CHECK(contains(r.out, "edges: 10"));
  CHECK(contains(r.out, "max degree: 4"));
  CHECK(contains(r.out, "greene q: embedding 4"));
  CHECK(contains(r.out, "spanning p+q: 13"));
}

TEST_CASE("spanning is an embedding-only method on the command line") {
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method spanning --mode local --seed 1");
  CHECK(r.exit_code == 3);
}

TEST_CASE("bad inputs exit with code 3") {
  CHECK(run_cli("embed /nonexistent.json").exit_code == 3);
  std::string bad = write_temp("bad.json", "{\"schema_version\": 1");
  CHECK(run_cli("embed " + bad).exit_code == 3);
  CHECK(run_cli("embed " + sharp_triangle_path() + " --method magic")
            .exit_code == 3);
  CHECK(run_cli("nonsense").exit_code == 3);
  CHECK(run_cli("").exit_code == 3);
}

TEST_CASE("export csv writes one row per vertex") {
  auto csv = temp_dir() / "tri.csv";
  auto out = temp_dir() / "tri_csv.json";
  RunResult r = run_cli("embed " + sharp_triangle_path() +
                        " --method greene --seed 2 --output " + out.string() +
                        " --export-csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(csv);
  std::string line;
  int lines = 0;
  std::getline(in, line);
  CHECK(contains(line, "vertex"));
  CHECK(contains(line, "c0"));
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 3);
}

TEST_CASE("the seed falls back to the environment variable") {
  std::string saved_cli = g_cli;
  g_cli = "INDEF_EMBED_SEED=99 " + g_cli;
  RunResult r = run_cli("embed " + sharp_triangle_path() + " --method greene");
  g_cli = saved_cli;
  REQUIRE(r.exit_code == 0);
  indef::EmbeddingDocument doc = indef::parse_embedding_document(r.out);
  CHECK(doc.seed == 99);
}

TEST_CASE("fixed seeds give byte-identical command output") {
  std::string args = "embed " + sharp_triangle_path() +
                     " --method gluing --seed 31";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("bench emits one csv row per method and size") {
  RunResult r = run_cli("bench --family skeleton --sizes 3,4 --seed 1");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "method,n,d,V,E,p,q,residual,iters,millis"));
  int rows = 0;
  for (char ch : r.out)
    if (ch == '\n') ++rows;
  CHECK(rows == 1 + 2 * 3);  // header, two sizes, three methods
  CHECK(contains(r.out, "greene,"));
  CHECK(contains(r.out, "spanning,"));
  CHECK(contains(r.out, "gluing,"));
}

namespace {

int run_doctest(int argc, char** argv) {
  doctest::Context ctx(argc, argv);
  return ctx.run();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') {
    g_cli = argv[1];
    argv[1] = argv[0];
    return run_doctest(argc - 1, argv + 1);
  }
  const char* env = std::getenv("INDEF_CLI");
  if (env && *env) {
    g_cli = env;
    return run_doctest(argc, argv);
  }
  std::fprintf(stderr,
               "usage: cli_tests <path-to-indef_embed> [doctest args]\n");
  return 1;
}
