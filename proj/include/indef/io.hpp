#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "indef/complex.hpp"
#include "indef/embed_gluing.hpp"
#include "indef/embed_greene.hpp"
#include "indef/embed_spanning.hpp"
#include "indef/minkowski.hpp"

namespace indef {

/// On-disk description of a metric complex. Edge values are kept verbatim,
/// so parse and serialize invert each other byte for byte; squaring of
/// "length" values happens in instantiate(). Reals are written with 17
/// significant digits, which round-trips doubles exactly.
struct ComplexDocument {
  int schema_version = 1;
  int vertex_count = 0;
  std::vector<std::string> labels;  // empty when the file gave a bare count
  std::vector<Simplex> simplices;
  MetricMode mode = MetricMode::Length;
  std::vector<EdgeValue> edges;
};

ComplexDocument parse_complex_document(const std::string& text);
std::string serialize(const ComplexDocument& doc);
std::pair<ComplexPtr, IndefiniteMetric> instantiate(const ComplexDocument& doc);
ComplexDocument make_complex_document(const SimplicialComplex& c,
                                      const IndefiniteMetric& m);

/// Solver output: one coordinate row per vertex, plus whatever the method
/// needs to replay it (the final scale for greene, the correction
/// coefficients for spanning, the vertex classes for gluing).
struct EmbeddingDocument {
  int schema_version = 1;
  std::string method;  // greene | spanning | gluing
  std::string mode;    // embedding | local | immersion
  std::uint64_t seed = 0;
  Signature signature;
  Eigen::MatrixXd coordinates;  // one column per vertex
  double residual = 0.0;
  bool has_lambda = false;
  double lambda_final = 0.0;
  bool has_alphas = false;
  Eigen::VectorXd alphas;
  bool has_partition = false;
  std::vector<int> partition;  // class per vertex
  std::vector<int> mu;         // spreading weight index per vertex, class + 1
};

EmbeddingDocument parse_embedding_document(const std::string& text);
std::string serialize(const EmbeddingDocument& doc);

/// Rebuilds the map over the given complex.
/// Errors: ComplexMismatch when the vertex counts disagree.
SimplicialMap instantiate(const EmbeddingDocument& doc, ComplexPtr c);

EmbeddingDocument make_document(const GreeneResult& r, EmbedMode mode,
                                std::uint64_t seed);
EmbeddingDocument make_document(const SpanningResult& r, std::uint64_t seed);
EmbeddingDocument make_document(const GluingResult& r, EmbedMode mode,
                                std::uint64_t seed);

/// Errors: ParseError when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Generated benchmark inputs. "skeleton": the complete graph on size + 1
/// vertices. "grid": a size x size vertex grid with every cell split along
/// its SW-NE diagonal. "glued-fan": size complete-graph-on-5 blades sharing
/// a hub vertex. Unit lengths except the grid diagonals at sqrt(2).
struct Family {
  ComplexPtr complex;
  IndefiniteMetric metric;
};

/// Errors: UnknownFamily for an unrecognized name, ParseError for size < 1.
Family make_family(const std::string& name, int size);

}  // namespace indef
