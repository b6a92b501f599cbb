#include "indef/gram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace indef {

namespace {

// All pairs must be edges of c; callers guarantee this (simplices do by
// definition, cliques by construction).
Eigen::MatrixXd gram_matrix(const SimplicialComplex& c, const IndefiniteMetric& m,
                            const Simplex& s) {
  const int k = static_cast<int>(s.size()) - 1;
  Eigen::MatrixXd G(k, k);
  auto g2 = [&](int a, int b) { return m.squared[c.edge_index(a, b)]; };
  for (int i = 1; i <= k; ++i) {
    G(i - 1, i - 1) = g2(s[0], s[i]);
    for (int j = i + 1; j <= k; ++j)
      G(i - 1, j - 1) = G(j - 1, i - 1) =
          0.5 * (g2(s[0], s[i]) + g2(s[0], s[j]) - g2(s[i], s[j]));
  }
  return G;
}

}  // namespace

GramForm gram_form(const SimplicialComplex& c, const IndefiniteMetric& m,
                   const Simplex& simplex) {
  if (simplex.empty()) fail(ErrorCode::EmptyInput, "empty simplex");
  Simplex s = simplex;
  std::sort(s.begin(), s.end());
  if (!c.contains_simplex(s)) fail(ErrorCode::UnknownSimplex, "not a simplex of the complex");
  GramForm g;
  g.matrix = gram_matrix(c, m, s);
  g.simplex = std::move(s);
  return g;
}

double segment_energy(const GramForm& g, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int k = static_cast<int>(g.matrix.rows());
  if (a.size() != k + 1 || b.size() != k + 1)
    fail(ErrorCode::LengthMismatch, "barycentric length differs from simplex size");
  if (std::abs(a.sum() - 1.0) > 1e-12 || std::abs(b.sum() - 1.0) > 1e-12)
    fail(ErrorCode::BadBarycentric, "barycentric coordinates must sum to 1");
  Eigen::VectorXd v = (a - b).tail(k);
  return v.dot(g.matrix * v);
}

Inertia inertia(const Eigen::MatrixXd& sym, double tol) {
  Inertia in;
  if (sym.rows() == 0) return in;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double radius = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  double cut = tol * std::max(1.0, radius);
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= cut)
      ++in.n_zero;
    else if (ev[i] > 0)
      ++in.n_plus;
    else
      ++in.n_minus;
  }
  return in;
}

Inertia inertia(const GramForm& g, double tol) { return inertia(g.matrix, tol); }

const char* metric_class_name(MetricClass k) {
  switch (k) {
    case MetricClass::Euclidean: return "Euclidean";
    case MetricClass::Minkowski: return "Minkowski";
    case MetricClass::Degenerate: return "Degenerate";
  }
  return "?";
}

namespace {

// Smallest |eigenvalue| relative to max(1, spectral radius).
double form_margin(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double radius = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ev.size(); ++i) lo = std::min(lo, std::abs(ev[i]));
  return lo / std::max(1.0, radius);
}

}  // namespace

Classification classify(const SimplicialComplex& c, const IndefiniteMetric& m, double tol) {
  Classification out;
  out.margin = std::numeric_limits<double>::infinity();

  bool all_pd = true;
  for (const Simplex& s : c.maximal_simplices) {
    if (s.size() < 2) continue;
    Eigen::MatrixXd G = gram_matrix(c, m, s);
    Inertia in = inertia(G, tol);
    out.margin = std::min(out.margin, form_margin(G));
    all_pd = all_pd && in.n_plus == static_cast<int>(s.size()) - 1;
    out.table.push_back({s, in});
  }
  if (out.table.empty()) {
    // no edges at all: vacuously Euclidean
    out.kind = MetricClass::Euclidean;
    return out;
  }
  if (all_pd) {
    out.kind = MetricClass::Euclidean;
    return out;
  }

  bool all_nondegenerate = true;
  for (const Simplex& f : c.all_faces()) {
    if (f.size() < 2) continue;
    Eigen::MatrixXd G = gram_matrix(c, m, f);
    Inertia in = inertia(G, tol);
    out.margin = std::min(out.margin, form_margin(G));
    all_nondegenerate = all_nondegenerate && in.n_zero == 0;
  }
  out.kind = all_nondegenerate ? MetricClass::Minkowski : MetricClass::Degenerate;
  return out;
}

namespace {

struct CliqueSearch {
  const SimplicialComplex* c;
  const IndefiniteMetric* m;
  double tol;
  int max_size;
  std::vector<std::vector<char>> adj;
  Obstruction result;

  void consider(const Simplex& clique) {
    Eigen::MatrixXd G = gram_matrix(*c, *m, clique);
    Inertia in = inertia(G, tol);
    ++result.forms_checked;
    if (in.n_plus > result.p_min) {
      result.p_min = in.n_plus;
      result.witness_plus = clique;
    }
    if (in.n_minus > result.q_min) {
      result.q_min = in.n_minus;
      result.witness_minus = clique;
    }
  }

  // Extends `clique` with candidates (all adjacent to every member, all with
  // index above the last member), visiting each clique once in sorted order.
  // Interlacing makes sub-cliques redundant, so a form is evaluated only for
  // cliques with no common neighbor at all, or that fill the size cap.
  void grow(Simplex& clique, const std::vector<int>& candidates) {
    bool at_cap = static_cast<int>(clique.size()) == max_size;
    if (at_cap || candidates.empty()) {
      if (clique.size() >= 2) {
        bool maximal = at_cap;
        if (!maximal) {
          maximal = true;
          for (int u = 0; u < c->vertex_count && maximal; ++u) {
            if (std::binary_search(clique.begin(), clique.end(), u)) continue;
            bool common = true;
            for (int w : clique) common = common && adj[u][w];
            maximal = !common;
          }
        }
        if (maximal) consider(clique);
      }
      return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      int u = candidates[i];
      std::vector<int> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (adj[u][candidates[j]]) next.push_back(candidates[j]);
      clique.push_back(u);
      grow(clique, next);
      clique.pop_back();
    }
  }
};

}  // namespace

Obstruction obstruction(const SimplicialComplex& c, const IndefiniteMetric& m, int clique_cap,
                        bool cliques_beyond_simplices, double tol) {
  if (clique_cap < c.dimension + 1)
    fail(ErrorCode::CliqueCapTooSmall,
         "clique cap " + std::to_string(clique_cap) + " below dimension+1 = " +
             std::to_string(c.dimension + 1));

  if (!cliques_beyond_simplices) {
    Obstruction out;
    for (const Simplex& s : c.maximal_simplices) {
      if (s.size() < 2) continue;
      Eigen::MatrixXd G = gram_matrix(c, m, s);
      Inertia in = inertia(G, tol);
      ++out.forms_checked;
      if (in.n_plus > out.p_min) {
        out.p_min = in.n_plus;
        out.witness_plus = s;
      }
      if (in.n_minus > out.q_min) {
        out.q_min = in.n_minus;
        out.witness_minus = s;
      }
    }
    return out;
  }

  CliqueSearch search;
  search.c = &c;
  search.m = &m;
  search.tol = tol;
  search.max_size = clique_cap + 1;
  search.adj.assign(c.vertex_count, std::vector<char>(c.vertex_count, 0));
  for (auto [u, v] : c.edges) search.adj[u][v] = search.adj[v][u] = 1;

  Simplex clique;
  std::vector<int> all(c.vertex_count);
  for (int v = 0; v < c.vertex_count; ++v) all[v] = v;
  search.grow(clique, all);
  return search.result;
}

}  // namespace indef
