#include "indef/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace indef {

namespace {

// b must be sorted; true iff a (sorted) is a subset of b.
bool subset_of(const Simplex& a, const Simplex& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool size_lex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

unsigned long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  const unsigned long long cap = std::numeric_limits<unsigned long long>::max();
  for (int i = 1; i <= k; ++i) {
    if (r > cap / static_cast<unsigned long long>(n - k + i)) return cap;
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  }
  return r;
}

double signed_sqrt(double s) {
  return s < 0 ? -std::sqrt(-s) : std::sqrt(s);
}

int SimplicialComplex::max_degree() const {
  int d = 0;
  for (int deg : degrees) d = std::max(d, deg);
  return d;
}

int SimplicialComplex::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges.begin());
}

bool SimplicialComplex::contains_simplex(const Simplex& s) const {
  if (s.empty()) return false;
  Simplex t = s;
  std::sort(t.begin(), t.end());
  for (const Simplex& m : maximal_simplices)
    if (subset_of(t, m)) return true;
  return false;
}

std::vector<Simplex> SimplicialComplex::all_faces() const {
  std::set<Simplex> faces;
  constexpr std::size_t kFaceGuard = std::size_t(1) << 22;
  for (const Simplex& m : maximal_simplices) {
    const int s = static_cast<int>(m.size());
    if (s > 24) fail(ErrorCode::CombinatorialBlowup, "simplex too large to enumerate faces");
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
      Simplex f;
      for (int i = 0; i < s; ++i)
        if (mask & (1u << i)) f.push_back(m[i]);
      faces.insert(std::move(f));
      if (faces.size() > kFaceGuard)
        fail(ErrorCode::CombinatorialBlowup, "face enumeration exceeds guard");
    }
  }
  std::vector<Simplex> out(faces.begin(), faces.end());
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

std::vector<Simplex> SimplicialComplex::faces_of_dimension(int k) const {
  std::vector<Simplex> out;
  for (Simplex& f : all_faces())
    if (static_cast<int>(f.size()) == k + 1) out.push_back(std::move(f));
  return out;
}

ComplexPtr build_complex(int vertex_count, std::vector<Simplex> maximal,
                         std::vector<std::string> labels) {
  if (vertex_count < 0) fail(ErrorCode::IndexOutOfRange, "negative vertex count");
  if (!labels.empty() && static_cast<int>(labels.size()) != vertex_count)
    fail(ErrorCode::LengthMismatch, "label list does not match vertex count");

  for (Simplex& s : maximal) {
    if (s.empty()) fail(ErrorCode::EmptyInput, "empty simplex");
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= vertex_count)
        fail(ErrorCode::IndexOutOfRange,
             "vertex " + std::to_string(s[i]) + " outside 0.." + std::to_string(vertex_count - 1));
      if (i > 0 && s[i] == s[i - 1])
        fail(ErrorCode::DuplicateVertexInSimplex,
             "vertex " + std::to_string(s[i]) + " repeated in a simplex");
    }
  }

  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

  // Keep only entries that are not proper faces of another entry.
  std::vector<Simplex> pruned;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < maximal.size() && !dominated; ++j)
      dominated = i != j && maximal[i].size() < maximal[j].size() &&
                  subset_of(maximal[i], maximal[j]);
    if (!dominated) pruned.push_back(maximal[i]);
  }

  std::vector<char> covered(vertex_count, 0);
  for (const Simplex& s : pruned)
    for (int v : s) covered[v] = 1;
  for (int v = 0; v < vertex_count; ++v)
    if (!covered[v]) pruned.push_back({v});
  std::sort(pruned.begin(), pruned.end());

  auto c = std::make_shared<SimplicialComplex>();
  c->vertex_count = vertex_count;
  c->labels = std::move(labels);
  c->maximal_simplices = std::move(pruned);

  std::set<std::pair<int, int>> edge_set;
  for (const Simplex& s : c->maximal_simplices) {
    c->dimension = std::max(c->dimension, static_cast<int>(s.size()) - 1);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        edge_set.emplace(s[i], s[j]);
  }
  c->edges.assign(edge_set.begin(), edge_set.end());
  c->degrees.assign(vertex_count, 0);
  for (auto [u, v] : c->edges) {
    ++c->degrees[u];
    ++c->degrees[v];
  }
  return c;
}

Star closed_star(const SimplicialComplex& c, int v, int k) {
  if (v < 0 || v >= c.vertex_count) fail(ErrorCode::IndexOutOfRange, "star center");
  if (k < 1) fail(ErrorCode::IndexOutOfRange, "star radius must be >= 1");

  std::vector<char> in_vertices(c.vertex_count, 0);
  in_vertices[v] = 1;
  std::vector<char> in_simplex(c.maximal_simplices.size(), 0);

  for (int round = 0; round < k; ++round) {
    std::vector<char> next = in_vertices;
    for (std::size_t s = 0; s < c.maximal_simplices.size(); ++s) {
      if (in_simplex[s]) continue;
      const Simplex& m = c.maximal_simplices[s];
      bool touches = std::any_of(m.begin(), m.end(), [&](int u) { return in_vertices[u]; });
      if (!touches) continue;
      in_simplex[s] = 1;
      for (int u : m) next[u] = 1;
    }
    in_vertices.swap(next);
  }

  Star star;
  star.center = v;
  star.radius = k;
  for (int u = 0; u < c.vertex_count; ++u)
    if (in_vertices[u]) star.vertices.push_back(u);
  for (std::size_t s = 0; s < c.maximal_simplices.size(); ++s)
    if (in_simplex[s]) star.maximal_simplices.push_back(c.maximal_simplices[s]);

  if (k == 1) {
    for (int u : star.vertices)
      if (u != v) star.boundary_vertices.push_back(u);
  } else {
    for (int u : star.vertices) {
      bool interior = true;
      for (std::size_t s = 0; s < c.maximal_simplices.size() && interior; ++s) {
        const Simplex& m = c.maximal_simplices[s];
        if (!in_simplex[s] && std::binary_search(m.begin(), m.end(), u)) interior = false;
      }
      if (!interior) star.boundary_vertices.push_back(u);
    }
  }
  return star;
}

namespace {

IndefiniteMetric metric_from_values(const SimplicialComplex& c,
                                    const std::vector<EdgeValue>& values, MetricMode mode) {
  MetricVector sq(c.edge_count());
  std::vector<char> seen(c.edge_count(), 0);
  for (const EdgeValue& ev : values) {
    int e = c.edge_index(ev.u, ev.v);
    if (e < 0)
      fail(ErrorCode::UnknownEdge,
           "(" + std::to_string(ev.u) + "," + std::to_string(ev.v) + ") is not an edge");
    if (seen[e])
      fail(ErrorCode::ParseError,
           "edge (" + std::to_string(ev.u) + "," + std::to_string(ev.v) + ") given twice");
    if (!std::isfinite(ev.value)) fail(ErrorCode::NonFiniteValue, "edge value not finite");
    seen[e] = 1;
    sq[e] = mode == MetricMode::Length ? signed_square(ev.value) : ev.value;
  }
  for (int e = 0; e < c.edge_count(); ++e)
    if (!seen[e])
      fail(ErrorCode::MissingEdgeValue,
           "no value for edge (" + std::to_string(c.edges[e].first) + "," +
               std::to_string(c.edges[e].second) + ")");
  IndefiniteMetric m;
  m.input_mode = mode;
  m.squared = std::move(sq);
  return m;
}

}  // namespace

IndefiniteMetric metric_from_lengths(const SimplicialComplex& c,
                                     const std::vector<EdgeValue>& lengths) {
  return metric_from_values(c, lengths, MetricMode::Length);
}

IndefiniteMetric metric_from_squares(const SimplicialComplex& c,
                                     const std::vector<EdgeValue>& squares) {
  return metric_from_values(c, squares, MetricMode::Squared);
}

IndefiniteMetric metric_from_squared_vector(const SimplicialComplex& c, MetricVector squared,
                                            MetricMode input_mode) {
  if (squared.size() != c.edge_count())
    fail(ErrorCode::LengthMismatch, "metric vector length differs from edge count");
  for (int e = 0; e < squared.size(); ++e)
    if (!std::isfinite(squared[e])) fail(ErrorCode::NonFiniteValue, "edge value not finite");
  IndefiniteMetric m;
  m.input_mode = input_mode;
  m.squared = std::move(squared);
  return m;
}

}  // namespace indef
