#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "indef/complex.hpp"

namespace testutil {

/// Runs f, swallows an indef::Error, hands back its code.
template <class F>
inline std::optional<indef::ErrorCode> error_code_of(F&& f) {
  try {
    (void)f();
  } catch (const indef::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline indef::ComplexPtr triangle_graph() {
  return indef::build_complex(3, {{0, 1}, {0, 2}, {1, 2}});
}

// two short edges, one long: needs a minus direction
inline indef::IndefiniteMetric sharp_triangle_metric(
    const indef::SimplicialComplex& c) {
  return indef::metric_from_lengths(c,
                                    {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 100.0}});
}

inline indef::ComplexPtr complete_graph(int vertices) {
  std::vector<indef::Simplex> maximal;
  for (int i = 0; i < vertices; ++i)
    for (int j = i + 1; j < vertices; ++j) maximal.push_back({i, j});
  return indef::build_complex(vertices, maximal);
}

inline indef::IndefiniteMetric constant_metric(const indef::SimplicialComplex& c,
                                               double length) {
  std::vector<indef::EdgeValue> vals;
  vals.reserve(c.edges.size());
  for (const auto& e : c.edges) vals.push_back({e.first, e.second, length});
  return indef::metric_from_lengths(c, vals);
}

// 8 vertices, a mix of triangles and bare edges, lengths of every sign
inline indef::ComplexPtr eight_vertex_complex() {
  return indef::build_complex(8, {{0, 1, 2},
                                  {0, 5, 6},
                                  {1, 2, 3},
                                  {2, 3, 4},
                                  {2, 5},
                                  {4, 5},
                                  {5, 7},
                                  {4, 7}});
}

inline indef::IndefiniteMetric eight_vertex_metric(
    const indef::SimplicialComplex& c) {
  return indef::metric_from_lengths(c, {{0, 1, 2.0},
                                        {0, 2, 1.0},
                                        {0, 5, std::sqrt(2.0)},
                                        {0, 6, 3.0},
                                        {1, 2, -1.0},
                                        {1, 3, -9.0},
                                        {2, 3, 0.0},
                                        {2, 4, -1.0},
                                        {2, 5, 11.0},
                                        {3, 4, -4.0},
                                        {4, 5, 7.0},
                                        {4, 7, 100.0},
                                        {5, 6, -3.0},
                                        {5, 7, -1.0}});
}

}  // namespace testutil
