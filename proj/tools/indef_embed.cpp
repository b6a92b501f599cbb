#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "indef/embed_gluing.hpp"
#include "indef/embed_greene.hpp"
#include "indef/embed_spanning.hpp"
#include "indef/error.hpp"
#include "indef/gram.hpp"
#include "indef/io.hpp"
#include "indef/rng.hpp"
#include "indef/verify.hpp"

namespace {

// 0 done, 2 solver gave up, 3 bad input or usage, 4 verification failed
int exit_code_for(indef::ErrorCode code) {
  switch (code) {
    case indef::ErrorCode::SolverDiverged:
    case indef::ErrorCode::RetriesExhausted:
    case indef::ErrorCode::SingularFamily:
      return 2;
    case indef::ErrorCode::VerificationFailed:
      return 4;
    default:
      return 3;
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("INDEF_EMBED_SEED");
  if (!env || !*env) return 0;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-')
    indef::fail(indef::ErrorCode::ParseError,
                std::string("INDEF_EMBED_SEED must be an unsigned integer, got \"") +
                    env + "\"");
  return v;
}

indef::EmbedMode parse_mode(const std::string& mode) {
  if (mode == "embedding") return indef::EmbedMode::Embedding;
  if (mode == "local") return indef::EmbedMode::LocalEmbedding;
  if (mode == "immersion") return indef::EmbedMode::Immersion;
  indef::fail(indef::ErrorCode::ParseError, "unknown mode \"" + mode + "\"");
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string coords_csv(const indef::EmbeddingDocument& doc,
                       const indef::SimplicialComplex& c) {
  std::string out = "vertex";
  for (int k = 0; k < doc.signature.dim(); ++k)
    out += ",c" + std::to_string(k);
  out += "\n";
  for (int v = 0; v < c.vertex_count; ++v) {
    out += csv_field(c.labels.empty() ? std::to_string(v) : c.labels[v]);
    for (Eigen::Index r = 0; r < doc.coordinates.rows(); ++r)
      out += "," + fmt_double(doc.coordinates(r, v));
    out += "\n";
  }
  return out;
}

std::string simplex_str(const indef::Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

struct EmbedArgs {
  std::string input, output, export_csv;
  std::string method = "greene";
  std::string mode = "embedding";
  std::uint64_t seed = 0;
  double tol = -1.0;
};

int run_embed(const EmbedArgs& a) {
  const auto cdoc = indef::parse_complex_document(indef::read_file(a.input));
  auto [c, m] = indef::instantiate(cdoc);
  const indef::EmbedMode mode = parse_mode(a.mode);

  indef::EmbeddingDocument doc;
  if (a.method == "greene") {
    indef::GreeneOptions opts;
    opts.seed = a.seed;
    opts.mode = mode;
    if (a.tol > 0) opts.tol = a.tol;
    doc = indef::make_document(indef::solve_greene(c, m, opts), mode, a.seed);
  } else if (a.method == "spanning") {
    if (mode != indef::EmbedMode::Embedding)
      indef::fail(indef::ErrorCode::ParseError,
                  "spanning supports --mode embedding only");
    indef::SpanningOptions opts;
    opts.seed = a.seed;
    if (a.tol > 0) opts.tol = a.tol;
    doc = indef::make_document(indef::solve_spanning(c, m, opts), a.seed);
  } else {
    indef::GluingOptions opts;
    opts.seed = a.seed;
    opts.mode = mode;
    if (a.tol > 0) opts.tol = a.tol;
    doc = indef::make_document(indef::solve_gluing(c, m, opts), mode, a.seed);
  }

  const std::string text = indef::serialize(doc);
  if (a.output.empty())
    std::cout << text;
  else
    indef::write_file(a.output, text);
  if (!a.export_csv.empty())
    indef::write_file(a.export_csv, coords_csv(doc, *c));
  std::cerr << a.method << " " << a.mode << ": signature (p=" << doc.signature.p()
            << ", q=" << doc.signature.q() << "), residual " << doc.residual
            << "\n";
  return 0;
}

struct VerifyArgs {
  std::string embedding, complex_path;
  double tol = 1e-8;
};

int run_verify(const VerifyArgs& a) {
  const auto edoc =
      indef::parse_embedding_document(indef::read_file(a.embedding));
  const auto cdoc =
      indef::parse_complex_document(indef::read_file(a.complex_path));
  auto [c, m] = indef::instantiate(cdoc);
  const indef::SimplicialMap f = indef::instantiate(edoc, c);

  indef::VerifyOptions vo;
  vo.tol = a.tol;
  const auto rep = indef::verify_all(f, m, vo);

  std::cout << "isometry: " << (rep.isometry.ok ? "pass" : "FAIL")
            << " (max residual " << fmt_double(rep.isometry.max_residual);
  if (rep.isometry.worst_edge >= 0) {
    const auto& e = c->edges[rep.isometry.worst_edge];
    std::cout << " at edge " << e.first << "-" << e.second;
  }
  std::cout << ", tol " << fmt_double(a.tol * rep.isometry.scale) << ")\n";
  std::cout << "immersion: " << (rep.immersion.ok ? "pass" : "FAIL") << "\n";
  std::cout << "local embedding: " << (rep.local_embedding.ok ? "pass" : "FAIL")
            << "\n";
  std::cout << "embedding: " << (rep.embedding.ok ? "pass" : "FAIL") << "\n";

  const bool mode_ok = edoc.mode == "embedding"   ? rep.embedding.ok
                       : edoc.mode == "local"     ? rep.local_embedding.ok
                                                  : rep.immersion.ok;
  std::cout << "claimed mode (" << edoc.mode << "): "
            << (mode_ok ? "pass" : "FAIL") << "\n";
  return rep.isometry.ok && mode_ok ? 0 : 4;
}

int run_classify(const std::string& input, double tol) {
  const auto cdoc = indef::parse_complex_document(indef::read_file(input));
  auto [c, m] = indef::instantiate(cdoc);
  const auto cls = indef::classify(*c, m, tol);
  std::cout << "class: " << indef::metric_class_name(cls.kind) << "\n";
  std::cout << "margin: " << fmt_double(cls.margin) << "\n";
  for (const auto& row : cls.table)
    std::cout << "simplex " << simplex_str(row.simplex) << ": n+ "
              << row.inertia.n_plus << ", n0 " << row.inertia.n_zero
              << ", n- " << row.inertia.n_minus << "\n";
  return 0;
}

int run_obstruct(const std::string& input, int clique_cap, bool simplices_only,
                 double tol) {
  const auto cdoc = indef::parse_complex_document(indef::read_file(input));
  auto [c, m] = indef::instantiate(cdoc);
  const auto ob = indef::obstruction(*c, m, clique_cap, !simplices_only, tol);
  std::cout << "p_min = " << ob.p_min << "\n";
  std::cout << "q_min = " << ob.q_min << "\n";
  std::cout << "witness_plus = " << simplex_str(ob.witness_plus) << "\n";
  std::cout << "witness_minus = " << simplex_str(ob.witness_minus) << "\n";
  std::cout << "forms_checked = " << ob.forms_checked << "\n";
  return 0;
}

int run_info(const std::string& input) {
  const auto cdoc = indef::parse_complex_document(indef::read_file(input));
  auto [c, m] = indef::instantiate(cdoc);
  std::cout << "vertices: " << c->vertex_count << "\n";
  std::cout << "edges: " << c->edge_count() << "\n";
  std::cout << "maximal simplices: " << c->maximal_simplices.size() << "\n";
  std::cout << "dimension: " << c->dimension << "\n";
  std::cout << "max degree: " << c->max_degree() << "\n";
  std::cout << "metric mode: "
            << (m.input_mode == indef::MetricMode::Length ? "length" : "squared")
            << "\n";
  if (c->edge_count() > 0)
    std::cout << "squared values in [" << fmt_double(m.squared.minCoeff())
              << ", " << fmt_double(m.squared.maxCoeff()) << "]\n";
  const int qe = indef::greene_target_q(*c, indef::EmbedMode::Embedding);
  const int ql = indef::greene_target_q(*c, indef::EmbedMode::LocalEmbedding);
  const int qi = indef::greene_target_q(*c, indef::EmbedMode::Immersion);
  std::cout << "greene q: embedding " << qe << ", local " << ql
            << ", immersion " << qi << "\n";
  const int n = std::max(c->dimension, 0);
  std::cout << "spanning p+q: " << 2 * n + 1 + c->edge_count() << " (base "
            << 2 * n + 1 << " + correction " << c->edge_count() << ")\n";
  const int d = c->max_degree();
  const int classes = d * d * d - d * d + d + 1;
  std::cout << "gluing: classes " << classes << ", q " << qe << ", embedding p "
            << 2 * qe * classes << "\n";
  return 0;
}

struct BenchArgs {
  std::string family, output;
  std::vector<int> sizes;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
  std::string csv = "method,n,d,V,E,p,q,residual,iters,millis\n";
  for (std::size_t si = 0; si < a.sizes.size(); ++si) {
    const auto fam = indef::make_family(a.family, a.sizes[si]);
    const int n = fam.complex->dimension;
    const int d = fam.complex->max_degree();
    static const char* const kMethods[] = {"greene", "spanning", "gluing"};
    for (int mi = 0; mi < 3; ++mi) {
      const std::uint64_t run_seed = indef::derive_seed(
          a.seed, static_cast<std::uint64_t>(a.sizes[si]) * 4 + mi);
      const auto t0 = std::chrono::steady_clock::now();
      int p = 0, q = 0;
      long long iters = 0;
      double residual = 0.0;
      if (mi == 0) {
        indef::GreeneOptions o;
        o.seed = run_seed;
        const auto r = indef::solve_greene(fam.complex, fam.metric, o);
        p = r.map.signature.p();
        q = r.map.signature.q();
        iters = r.newton_iters;
        residual = r.residual;
      } else if (mi == 1) {
        indef::SpanningOptions o;
        o.seed = run_seed;
        const auto r = indef::solve_spanning(fam.complex, fam.metric, o);
        p = r.p;
        q = r.q;
        iters = r.family_draws;
        residual = r.residual;
      } else {
        indef::GluingOptions o;
        o.seed = run_seed;
        const auto r = indef::solve_gluing(fam.complex, fam.metric, o);
        p = r.p;
        q = r.q;
        for (const auto& s : r.stars) iters += s.newton_iters;
        residual = r.residual;
      }
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      csv += std::string(kMethods[mi]) + "," + std::to_string(n) + "," +
             std::to_string(d) + "," + std::to_string(fam.complex->vertex_count) +
             "," + std::to_string(fam.complex->edge_count()) + "," +
             std::to_string(p) + "," + std::to_string(q) + "," +
             fmt_double(residual) + "," + std::to_string(iters) + "," +
             std::to_string(ms) + "\n";
    }
  }
  if (a.output.empty())
    std::cout << csv;
  else
    indef::write_file(a.output, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Isometric simplicial maps of metric complexes into flat indefinite "
      "space.\nExit codes: 0 success, 2 solver gave up, 3 bad input or "
      "usage, 4 verification failed."};
  app.require_subcommand(1);

  EmbedArgs ea;
  auto* embed = app.add_subcommand(
      "embed", "Solve for an isometric map and emit the result document");
  embed->add_option("input", ea.input, "complex document (JSON)")->required();
  embed->add_option("--method", ea.method, "solver to run")
      ->check(CLI::IsMember({"greene", "spanning", "gluing"}))
      ->capture_default_str();
  embed->add_option("--mode", ea.mode, "what the map must preserve")
      ->check(CLI::IsMember({"embedding", "local", "immersion"}))
      ->capture_default_str();
  auto* seed_opt = embed->add_option(
      "--seed", ea.seed, "RNG seed (default: $INDEF_EMBED_SEED, then 0)");
  embed->add_option("--tol", ea.tol,
                    "relative residual tolerance (default per method)")
      ->check(CLI::PositiveNumber);
  embed->add_option("-o,--output", ea.output,
                    "write the document here instead of stdout");
  embed->add_option("--export-csv", ea.export_csv,
                    "also write vertex coordinates as CSV");

  VerifyArgs va;
  auto* verify = app.add_subcommand(
      "verify", "Recheck an embedding document against its complex");
  verify->add_option("embedding", va.embedding, "embedding document (JSON)")
      ->required();
  verify->add_option("complex", va.complex_path, "complex document (JSON)")
      ->required();
  verify->add_option("--tol", va.tol, "relative isometry tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string classify_input;
  double classify_tol = 1e-9;
  auto* classify = app.add_subcommand(
      "classify", "Report whether the metric is Euclidean, Minkowski or "
                  "degenerate, with per-simplex inertia");
  classify->add_option("input", classify_input, "complex document (JSON)")
      ->required();
  classify->add_option("--tol", classify_tol, "relative zero-eigenvalue cut")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string obstruct_input;
  int clique_cap = 12;
  bool simplices_only = false;
  double obstruct_tol = 1e-9;
  auto* obstruct = app.add_subcommand(
      "obstruct", "Lower bounds (p_min, q_min) forced by clique Gram forms");
  obstruct->add_option("input", obstruct_input, "complex document (JSON)")
      ->required();
  obstruct->add_option("--clique-cap", clique_cap,
                       "largest clique size inspected")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  obstruct->add_flag("--simplices-only", simplices_only,
                     "inspect only the simplices of the complex");
  obstruct->add_option("--tol", obstruct_tol, "relative zero-eigenvalue cut")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string info_input;
  auto* info = app.add_subcommand(
      "info", "Combinatorics, metric range and target dimensions");
  info->add_option("input", info_input, "complex document (JSON)")->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand(
      "bench", "Run every solver over a generated family; CSV to stdout");
  bench->add_option("--family", ba.family, "skeleton | grid | glued-fan")
      ->required();
  bench->add_option("--sizes", ba.sizes, "comma-separated family sizes")
      ->delimiter(',');
  auto* bench_seed_opt = bench->add_option(
      "--seed", ba.seed, "RNG seed (default: $INDEF_EMBED_SEED, then 0)");
  bench->add_option("-o,--output", ba.output,
                    "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (embed->parsed()) {
      if (!seed_opt->count()) ea.seed = default_seed();
      return run_embed(ea);
    }
    if (verify->parsed()) return run_verify(va);
    if (classify->parsed()) return run_classify(classify_input, classify_tol);
    if (obstruct->parsed())
      return run_obstruct(obstruct_input, clique_cap, simplices_only,
                          obstruct_tol);
    if (info->parsed()) return run_info(info_input);
    if (bench->parsed()) {
      if (!bench_seed_opt->count()) ba.seed = default_seed();
      return run_bench(ba);
    }
  } catch (const indef::Error& err) {
    std::cerr << "error (" << indef::error_code_name(err.code())
              << "): " << err.what() << "\n";
    return exit_code_for(err.code());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 3;
}
