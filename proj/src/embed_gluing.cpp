#include "indef/embed_gluing.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "indef/error.hpp"
#include "indef/rng.hpp"
#include "indef/verify.hpp"

namespace indef {

namespace {

std::vector<std::vector<int>> adjacency(const SimplicialComplex& c) {
  std::vector<std::vector<int>> adj(c.vertex_count);
  for (const auto& e : c.edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  return adj;
}

// vertices at graph distance <= 3 from v, v included
std::vector<int> ball3(const std::vector<std::vector<int>>& adj, int v) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<int> frontier{v}, out{v};
  dist[v] = 0;
  for (int round = 1; round <= 3 && !frontier.empty(); ++round) {
    std::vector<int> next;
    for (int u : frontier)
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = round;
          next.push_back(w);
          out.push_back(w);
        }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

Partition partition_vertices(ComplexPtr c) {
  const int d = c->max_degree();
  Partition part;
  part.class_count = d * d * d - d * d + d + 1;
  part.vertex_class.assign(c->vertex_count, -1);
  const auto adj = adjacency(*c);
  std::vector<char> used(part.class_count);
  for (int v = 0; v < c->vertex_count; ++v) {
    std::fill(used.begin(), used.end(), 0);
    for (int u : ball3(adj, v))
      if (part.vertex_class[u] >= 0) used[part.vertex_class[u]] = 1;
    int cls = 0;
    while (cls < part.class_count && used[cls]) ++cls;
    if (cls == part.class_count)
      fail(ErrorCode::CombinatorialBlowup,
           "distance-3 ball exceeded its size bound");
    part.vertex_class[v] = cls;
  }
  return part;
}

StarComplex build_star_complex(ComplexPtr c, const IndefiniteMetric& m,
                               int v) {
  if (m.squared.size() != c->edge_count())
    fail(ErrorCode::LengthMismatch, "metric does not match the complex");
  const Star st = closed_star(*c, v, 1);

  StarComplex out;
  out.vertices = st.vertices;
  const int inside = static_cast<int>(out.vertices.size());
  std::unordered_map<int, int> local;
  for (int i = 0; i < inside; ++i) local[out.vertices[i]] = i;
  out.center_local = local.at(v);

  bool needs_apex = false;
  std::vector<Simplex> maximal;
  for (const auto& tau : c->maximal_simplices) {
    Simplex part;
    bool straddles = false;
    for (int u : tau) {
      auto it = local.find(u);
      if (it != local.end())
        part.push_back(it->second);
      else
        straddles = true;
    }
    if (part.empty()) continue;
    if (straddles) {
      part.push_back(inside);  // the apex takes the last local id
      needs_apex = true;
    }
    maximal.push_back(std::move(part));
  }
  out.apex_local = needs_apex ? inside : -1;
  out.complex = build_complex(inside + (needs_apex ? 1 : 0), maximal);

  const auto& s = *out.complex;
  MetricVector vals(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    const int la = s.edges[e].first, lb = s.edges[e].second;
    if (la == out.apex_local || lb == out.apex_local) {
      vals[e] = 0.0;
      continue;
    }
    const int ga = out.vertices[la], gb = out.vertices[lb];
    vals[e] =
        (ga == v || gb == v) ? m.squared[c->edge_index(ga, gb)] / 2.0 : 0.0;
  }
  out.metric = metric_from_squared_vector(s, std::move(vals));
  return out;
}

SimplicialMap iota(const SimplicialMap& f, int mu) {
  if (mu < 1) fail(ErrorCode::ParseError, "iota needs mu >= 1");
  const double wa = std::sqrt(1.0 / mu);
  const double wb = std::sqrt(1.0 - 1.0 / mu);
  SimplicialMap out;
  out.complex = f.complex;
  out.signature = Signature::doubled(f.signature);
  out.coords.resize(2 * f.coords.rows(), f.coords.cols());
  out.coords.topRows(f.coords.rows()) = wa * f.coords;
  out.coords.bottomRows(f.coords.rows()) = wb * f.coords;
  return out;
}

GluingResult solve_gluing(ComplexPtr c, const IndefiniteMetric& m,
                          const GluingOptions& opts) {
  if (m.squared.size() != c->edge_count())
    fail(ErrorCode::LengthMismatch, "metric does not match the complex");

  GluingResult res;
  res.partition = partition_vertices(c);
  const int classes = res.partition.class_count;
  res.star_q = greene_target_q(*c, opts.mode);
  const bool spread = opts.mode == EmbedMode::Embedding;
  res.block_rows = (spread ? 4 : 2) * res.star_q;
  const int rows2q = 2 * res.star_q;

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(res.block_rows) * classes, c->vertex_count);
  std::vector<int> owner(static_cast<std::size_t>(classes) * c->vertex_count,
                         -1);
  res.stars.reserve(c->vertex_count);

  for (int v = 0; v < c->vertex_count; ++v) {
    const StarComplex star = build_star_complex(c, m, v);
    GreeneOptions go = opts.star;
    go.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(v));
    go.mode = opts.mode;
    go.tol = opts.tol / classes;
    go.force_q = res.star_q;
    GreeneResult sol;
    try {
      sol = solve_greene(star.complex, star.metric, go);
    } catch (const Error& err) {
      fail(err.code(),
           "star of vertex " + std::to_string(v) + ": " + err.what());
    }

    Eigen::MatrixXd sc = sol.map.coords;
    if (star.apex_local >= 0) {
      const Eigen::VectorXd apex = sc.col(star.apex_local);
      sc.colwise() -= apex;  // outside vertices sit at the origin, exactly
    } else {
      sc.row(0).array() += 1.0 - sc.row(0).minCoeff();
    }

    const int mu0 = res.partition.vertex_class[v];
    const double wa = spread ? std::sqrt(1.0 / (mu0 + 1)) : 1.0;
    const double wb = spread ? std::sqrt(1.0 - 1.0 / (mu0 + 1)) : 0.0;
    const Eigen::Index base = static_cast<Eigen::Index>(mu0) * res.block_rows;
    for (int lu = 0; lu < static_cast<int>(star.vertices.size()); ++lu) {
      const int gu = star.vertices[lu];
      int& slot =
          owner[static_cast<std::size_t>(mu0) * c->vertex_count + gu];
      if (slot >= 0)
        fail(ErrorCode::VerificationFailed,
             "class " + std::to_string(mu0) + " covers vertex " +
                 std::to_string(gu) + " twice");
      slot = v;
      coords.block(base, gu, rows2q, 1) = wa * sc.col(lu);
      if (spread)
        coords.block(base + rows2q, gu, rows2q, 1) = wb * sc.col(lu);
    }

    res.stars.push_back(
        {v, mu0, sol.residual, sol.newton_iters, sol.lambda_doublings});
  }

  const Signature star_sig = Signature::split(res.star_q);
  const Signature block_sig =
      spread ? Signature::doubled(star_sig) : star_sig;
  res.map.complex = c;
  res.map.signature.signs.reserve(
      static_cast<std::size_t>(res.block_rows) * classes);
  for (int k = 0; k < classes; ++k)
    res.map.signature.signs.insert(res.map.signature.signs.end(),
                                   block_sig.signs.begin(),
                                   block_sig.signs.end());
  res.map.coords = std::move(coords);
  res.p = res.map.signature.p();
  res.q = res.map.signature.q();

  const double scale = std::max(1.0, m.max_abs());
  res.residual =
      c->edge_count() == 0
          ? 0.0
          : (phi(res.map) - m.squared).lpNorm<Eigen::Infinity>();
  if (res.residual > opts.tol * scale)
    fail(ErrorCode::SolverDiverged,
         "assembled residual " + std::to_string(res.residual) +
             " above tolerance");

  VerifyOptions vopts;
  vopts.eps_geo = opts.star.eps_geo;
  vopts.eps_rank = opts.star.eps_rank;
  bool ok = false;
  switch (opts.mode) {
    case EmbedMode::Embedding:
      ok = verify_simplicial_embedding(res.map, vopts).ok;
      break;
    case EmbedMode::LocalEmbedding:
      ok = verify_local_embedding(res.map, vopts).ok;
      break;
    case EmbedMode::Immersion:
      ok = verify_immersion(res.map, vopts.eps_rank).ok;
      break;
  }
  if (!ok)
    fail(ErrorCode::VerificationFailed,
         std::string(embed_mode_name(opts.mode)) +
             " verification failed after gluing");
  return res;
}

}  // namespace indef
