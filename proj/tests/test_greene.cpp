#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "indef/embed_greene.hpp"
#include "indef/verify.hpp"

using namespace indef;
using testutil::error_code_of;

TEST_CASE("target half-dimension per mode") {
  auto path = build_complex(3, {{0, 1}, {1, 2}});  // d = 2, n = 1
  CHECK(greene_target_q(*path, EmbedMode::Embedding) == 3);
  CHECK(greene_target_q(*path, EmbedMode::LocalEmbedding) == 2);
  CHECK(greene_target_q(*path, EmbedMode::Immersion) == 2);

  auto hub = build_complex(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK(greene_target_q(*hub, EmbedMode::Embedding) == 5);  // d = 5 wins
  CHECK(greene_target_q(*hub, EmbedMode::Immersion) == 5);

  auto tet = build_complex(4, {{0, 1, 2, 3}});  // d = 3, n = 3
  CHECK(greene_target_q(*tet, EmbedMode::Embedding) == 7);
  CHECK(greene_target_q(*tet, EmbedMode::LocalEmbedding) == 6);
  CHECK(greene_target_q(*tet, EmbedMode::Immersion) == 3);
}

TEST_CASE("free start resamples to edge independence") {
  auto c = testutil::complete_graph(5);
  GreeneOptions opts;
  opts.seed = 5;
  Rng rng(opts.seed);
  int retries = -1;
  SimplicialMap f = free_euclidean_start(c, 4, rng, opts, &retries);
  CHECK(retries >= 0);
  CHECK(f.dim() == 4);
  CHECK(edge_independence(f, opts.eps_rank).all);
  CHECK(verify_simplicial_embedding(f).ok);
}

TEST_CASE("free start gives up when the dimension cannot work") {
  // degree 4 hub in 3 dimensions: some vertex frame must be dependent
  auto c = testutil::complete_graph(5);
  GreeneOptions opts;
  opts.seed = 1;
  opts.max_start_retries = 8;
  Rng rng(opts.seed);
  CHECK(error_code_of([&] { return free_euclidean_start(c, 3, rng, opts); }) ==
        ErrorCode::RetriesExhausted);
}

TEST_CASE("sharp triangle lands in the split space of half-dimension 3") {
  auto c = testutil::triangle_graph();
  auto m = testutil::sharp_triangle_metric(*c);
  GreeneOptions opts;
  opts.seed = 17;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.q == 3);
  CHECK(r.map.dim() == 6);
  CHECK(r.map.signature.p() == 3);
  CHECK(r.map.signature.q() == 3);
  CHECK(r.residual <= 1e-10);
  CHECK(verify_isometry(r.map, m, 1e-8).ok);
  CHECK(verify_simplicial_embedding(r.map).ok);
  CHECK(r.lambda_final >= 1.0);
}

TEST_CASE("unit complete graph needs the split space of half-dimension 4") {
  auto c = testutil::complete_graph(5);
  auto m = testutil::constant_metric(*c, 1.0);
  GreeneOptions opts;
  opts.seed = 19;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.q == 4);
  CHECK(r.residual <= 1e-10);
  CHECK(verify_simplicial_embedding(r.map).ok);
}

TEST_CASE("mixed-sign metric on the eight vertex complex") {
  auto c = testutil::eight_vertex_complex();
  auto m = testutil::eight_vertex_metric(*c);
  GreeneOptions opts;
  opts.seed = 23;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.q == greene_target_q(*c, EmbedMode::Embedding));
  CHECK(r.residual <= 1e-6 * m.max_abs());
  CHECK(verify_simplicial_embedding(r.map).ok);
}

TEST_CASE("immersion mode only guarantees nondegeneracy") {
  auto c = testutil::triangle_graph();
  auto m = testutil::constant_metric(*c, 1.0);
  GreeneOptions opts;
  opts.seed = 3;
  opts.mode = EmbedMode::Immersion;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.q == 2);
  CHECK(verify_immersion(r.map).ok);
  CHECK(verify_isometry(r.map, m, 1e-8).ok);
}

TEST_CASE("force_q widens the target space") {
  auto c = testutil::triangle_graph();
  auto m = testutil::constant_metric(*c, 1.0);
  GreeneOptions opts;
  opts.seed = 9;
  opts.force_q = 5;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.q == 5);
  CHECK(r.map.dim() == 10);
  CHECK(r.residual <= 1e-8);
  CHECK(verify_simplicial_embedding(r.map).ok);
}

TEST_CASE("the zero metric is hit exactly by the doubled start") {
  auto c = build_complex(4, {{0, 1}, {1, 2}, {2, 3}});
  auto m = testutil::constant_metric(*c, 0.0);
  GreeneOptions opts;
  opts.seed = 31;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.residual == 0.0);
  CHECK(r.newton_iters == 0);
  CHECK(verify_simplicial_embedding(r.map).ok);
}

TEST_CASE("same seed, same coordinates, different seed, different ones") {
  auto c = testutil::complete_graph(4);
  auto m = testutil::constant_metric(*c, 1.0);
  GreeneOptions opts;
  opts.seed = 77;
  GreeneResult a = solve_greene(c, m, opts);
  GreeneResult b = solve_greene(c, m, opts);
  CHECK(a.map.coords == b.map.coords);
  CHECK(a.residual == b.residual);
  opts.seed = 78;
  GreeneResult d = solve_greene(c, m, opts);
  CHECK(a.map.coords != d.map.coords);
}

TEST_CASE("an edgeless complex embeds with nothing to solve") {
  auto c = build_complex(3, {});
  IndefiniteMetric m;
  m.squared.resize(0);
  GreeneOptions opts;
  opts.seed = 2;
  GreeneResult r = solve_greene(c, m, opts);
  CHECK(r.residual == 0.0);
  CHECK(verify_simplicial_embedding(r.map).ok);  // distinct points
}
