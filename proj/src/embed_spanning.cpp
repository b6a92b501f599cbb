#include "indef/embed_spanning.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "indef/error.hpp"
#include "indef/verify.hpp"

namespace indef {

namespace {

Eigen::VectorXd induced_metric(const SimplicialComplex& c,
                               const Eigen::VectorXd& h) {
  Eigen::VectorXd out(c.edge_count());
  for (int e = 0; e < c.edge_count(); ++e) {
    const double d = h[c.edges[e].first] - h[c.edges[e].second];
    out[e] = d * d;
  }
  return out;
}

}  // namespace

SpanningFamily spanning_family(ComplexPtr c, Rng& rng, double rank_tol,
                               int max_draws) {
  const int ecount = c->edge_count();
  if (ecount == 0)
    fail(ErrorCode::EmptyInput, "spanning family needs at least one edge");
  if (max_draws <= 0) max_draws = 100 * ecount;

  SpanningFamily fam;
  fam.induced.resize(ecount, ecount);
  Eigen::MatrixXd basis(ecount, ecount);
  int rank = 0;

  for (int draw = 0; draw < max_draws && rank < ecount; ++draw) {
    ++fam.draws;
    Eigen::VectorXd h(c->vertex_count);
    for (int v = 0; v < c->vertex_count; ++v) h[v] = rng.uniform(-1.0, 1.0);
    const Eigen::VectorXd col = induced_metric(*c, h);

    // two projection passes keep the basis orthonormal to working precision
    Eigen::VectorXd w = col;
    if (rank > 0)
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(rank) * (basis.leftCols(rank).transpose() * w);
    const double wn = w.norm();
    if (wn <= rank_tol * std::max(col.norm(), 1.0)) continue;

    basis.col(rank) = w / wn;
    fam.induced.col(rank) = col;
    fam.vertex_values.push_back(h);
    ++rank;
  }
  if (rank < ecount)
    fail(ErrorCode::RetriesExhausted,
         "spanning family stalled at rank " + std::to_string(rank) + " of " +
             std::to_string(ecount));
  return fam;
}

SpanningResult solve_spanning(ComplexPtr c, const IndefiniteMetric& m,
                              const SpanningOptions& opts) {
  const int ecount = c->edge_count();
  if (m.squared.size() != ecount)
    fail(ErrorCode::LengthMismatch, "metric does not match the complex");
  const int n = std::max(c->dimension, 0);
  const int base_dim = 2 * n + 1;

  Signature base_sig;
  if (opts.base_signs.empty()) {
    base_sig = Signature::euclidean(base_dim);
  } else {
    if (static_cast<int>(opts.base_signs.size()) != base_dim)
      fail(ErrorCode::LengthMismatch,
           "base_signs must have size " + std::to_string(base_dim));
    for (int s : opts.base_signs)
      if (s != 1 && s != -1)
        fail(ErrorCode::ParseError, "base_signs entries must be +1 or -1");
    base_sig.signs = opts.base_signs;
  }

  Rng rng(opts.seed);
  VerifyOptions vopts;
  vopts.eps_geo = opts.eps_geo;
  vopts.eps_rank = opts.eps_rank;

  // The base map comes out of the generator first, so a caller holding the
  // seed can reproduce f and feed phi(f) back in as the target metric.
  SpanningResult res;
  bool have_base = false;
  for (int attempt = 0; attempt < opts.max_start_retries; ++attempt) {
    res.base_map = random_map(c, base_sig, rng, opts.box);
    if (verify_simplicial_embedding(res.base_map, vopts).ok) {
      have_base = true;
      break;
    }
  }
  if (!have_base)
    fail(ErrorCode::RetriesExhausted, "no random base embedding found");

  const double scale = std::max(1.0, m.max_abs());

  if (ecount == 0) {
    res.map = res.base_map;
    res.alphas.resize(0);
    res.p = res.map.signature.p();
    res.q = res.map.signature.q();
    return res;
  }

  const Eigen::VectorXd rhs = m.squared - phi(res.base_map);

  SpanningFamily fam;
  Eigen::VectorXd sv;
  bool have_family = false;
  for (int attempt = 0; attempt < opts.max_family_retries; ++attempt) {
    fam = spanning_family(c, rng);
    res.family_draws += fam.draws;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fam.induced);
    sv = svd.singularValues();
    if (sv[ecount - 1] > 0.0 && sv[0] / sv[ecount - 1] < opts.cond_threshold) {
      have_family = true;
      break;
    }
  }
  if (!have_family)
    fail(ErrorCode::SingularFamily,
         "no spanning family below the condition threshold");
  res.cond = sv[0] / sv[ecount - 1];

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(fam.induced);
  Eigen::VectorXd alpha = qr.solve(rhs);
  // fixed-precision refinement drives the residual to rounding level
  for (int step = 0; step < 3; ++step) {
    const Eigen::VectorXd lin_res = rhs - fam.induced * alpha;
    if (lin_res.lpNorm<Eigen::Infinity>() <= 1e-15 * scale) break;
    alpha += qr.solve(lin_res);
  }
  res.alphas = alpha;

  std::vector<int> plus, minus;
  for (int k = 0; k < ecount; ++k) {
    const bool zero = alpha[k] == 0.0;
    if (zero && opts.drop_zero_blocks) continue;
    (alpha[k] >= 0.0 ? plus : minus).push_back(k);
  }

  SimplicialMap z;
  z.complex = c;
  z.signature.signs = base_sig.signs;
  z.signature.signs.insert(z.signature.signs.end(), plus.size(), 1);
  z.signature.signs.insert(z.signature.signs.end(), minus.size(), -1);
  z.coords.resize(z.signature.dim(), c->vertex_count);
  z.coords.topRows(base_dim) = res.base_map.coords;
  int row = base_dim;
  for (int k : plus)
    z.coords.row(row++) =
        std::sqrt(alpha[k]) * fam.vertex_values[k].transpose();
  for (int k : minus)
    z.coords.row(row++) =
        std::sqrt(-alpha[k]) * fam.vertex_values[k].transpose();
  res.map = std::move(z);
  res.p = res.map.signature.p();
  res.q = res.map.signature.q();

  res.residual = (phi(res.map) - m.squared).lpNorm<Eigen::Infinity>();
  if (res.residual > opts.tol * scale)
    fail(ErrorCode::SolverDiverged,
         "correction residual " + std::to_string(res.residual) +
             " above tolerance");
  if (!verify_simplicial_embedding(res.map, vopts).ok)
    fail(ErrorCode::VerificationFailed,
         "assembled spanning map is not an embedding");
  return res;
}

}  // namespace indef
