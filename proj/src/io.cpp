#include "indef/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "indef/error.hpp"

namespace indef {

namespace {

using nlohmann::json;

// 17 significant digits: enough to reproduce any double exactly on parse.
// A negative zero must keep float syntax, the integer literal -0 parses as 0.
std::string fmt_double(double x) {
  if (!std::isfinite(x))
    fail(ErrorCode::NonFiniteValue, "non-finite value in a document");
  if (x == 0.0 && std::signbit(x)) return "-0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string double_list(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(v[i]);
  }
  return out + "]";
}

std::string coord_row(const Eigen::MatrixXd& m, int col) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += fmt_double(m(r, col));
  }
  return out + "]";
}

// one row per line; the closing bracket sits at the caller's indent
std::string array_block(const std::vector<std::string>& rows, int indent) {
  if (rows.empty()) return "[]";
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += inner + rows[i];
    if (i + 1 < rows.size()) out += ",";
    out += "\n";
  }
  return out + pad + "]";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& ex) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + ex.what());
  }
}

int checked_schema_version(const json& j) {
  const int v = j.at("schema_version").get<int>();
  if (v != 1)
    fail(ErrorCode::ParseError,
         "unsupported schema_version " + std::to_string(v));
  return v;
}

}  // namespace

ComplexDocument parse_complex_document(const std::string& text) {
  const json j = parse_json(text);
  try {
    if (!j.is_object())
      fail(ErrorCode::ParseError, "complex document must be an object");
    ComplexDocument doc;
    doc.schema_version = checked_schema_version(j);
    const json& verts = j.at("vertices");
    if (verts.is_array()) {
      for (const json& v : verts) doc.labels.push_back(v.get<std::string>());
      doc.vertex_count = static_cast<int>(doc.labels.size());
    } else {
      doc.vertex_count = verts.get<int>();
    }
    for (const json& s : j.at("simplices")) {
      Simplex sp;
      for (const json& v : s) sp.push_back(v.get<int>());
      doc.simplices.push_back(std::move(sp));
    }
    const json& metric = j.at("metric");
    const std::string mode = metric.at("mode").get<std::string>();
    if (mode == "length")
      doc.mode = MetricMode::Length;
    else if (mode == "squared")
      doc.mode = MetricMode::Squared;
    else
      fail(ErrorCode::ParseError,
           "metric mode must be \"length\" or \"squared\"");
    for (const json& e : metric.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        fail(ErrorCode::ParseError, "metric edges must be [i, j, value]");
      doc.edges.push_back(
          {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return doc;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorCode::ParseError,
         std::string("malformed complex document: ") + ex.what());
  }
}

std::string serialize(const ComplexDocument& doc) {
  std::string s = "{\n";
  s += "  \"schema_version\": " + std::to_string(doc.schema_version) + ",\n";
  if (doc.labels.empty()) {
    s += "  \"vertices\": " + std::to_string(doc.vertex_count) + ",\n";
  } else {
    std::string row = "[";
    for (std::size_t i = 0; i < doc.labels.size(); ++i) {
      if (i) row += ", ";
      row += json_string(doc.labels[i]);
    }
    s += "  \"vertices\": " + row + "],\n";
  }
  std::vector<std::string> rows;
  rows.reserve(doc.simplices.size());
  for (const auto& sp : doc.simplices) rows.push_back(int_list(sp));
  s += "  \"simplices\": " + array_block(rows, 2) + ",\n";
  s += "  \"metric\": {\n";
  s += "    \"mode\": ";
  s += doc.mode == MetricMode::Length ? "\"length\"" : "\"squared\"";
  s += ",\n";
  rows.clear();
  for (const auto& e : doc.edges)
    rows.push_back("[" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                   ", " + fmt_double(e.value) + "]");
  s += "    \"edges\": " + array_block(rows, 4) + "\n";
  s += "  }\n";
  s += "}\n";
  return s;
}

std::pair<ComplexPtr, IndefiniteMetric> instantiate(
    const ComplexDocument& doc) {
  ComplexPtr c = build_complex(doc.vertex_count, doc.simplices, doc.labels);
  IndefiniteMetric m = doc.mode == MetricMode::Length
                           ? metric_from_lengths(*c, doc.edges)
                           : metric_from_squares(*c, doc.edges);
  return {std::move(c), std::move(m)};
}

ComplexDocument make_complex_document(const SimplicialComplex& c,
                                      const IndefiniteMetric& m) {
  if (m.squared.size() != c.edge_count())
    fail(ErrorCode::LengthMismatch, "metric does not match the complex");
  ComplexDocument doc;
  doc.vertex_count = c.vertex_count;
  doc.labels = c.labels;
  doc.simplices = c.maximal_simplices;
  doc.mode = m.input_mode;
  for (int e = 0; e < c.edge_count(); ++e) {
    const double sq = m.squared[e];
    doc.edges.push_back(
        {c.edges[e].first, c.edges[e].second,
         doc.mode == MetricMode::Length ? signed_sqrt(sq) : sq});
  }
  return doc;
}

EmbeddingDocument parse_embedding_document(const std::string& text) {
  const json j = parse_json(text);
  try {
    if (!j.is_object())
      fail(ErrorCode::ParseError, "embedding document must be an object");
    EmbeddingDocument doc;
    doc.schema_version = checked_schema_version(j);
    doc.method = j.at("method").get<std::string>();
    if (doc.method != "greene" && doc.method != "spanning" &&
        doc.method != "gluing")
      fail(ErrorCode::ParseError, "unknown method \"" + doc.method + "\"");
    doc.mode = j.at("mode").get<std::string>();
    if (doc.mode != "embedding" && doc.mode != "local" &&
        doc.mode != "immersion")
      fail(ErrorCode::ParseError, "unknown mode \"" + doc.mode + "\"");
    doc.seed = j.at("seed").get<std::uint64_t>();
    const json& sig = j.at("signature");
    for (const json& s : sig.at("signs")) {
      const int sv = s.get<int>();
      if (sv != 1 && sv != -1)
        fail(ErrorCode::ParseError, "signs must be +1 or -1");
      doc.signature.signs.push_back(sv);
    }
    if (sig.at("p").get<int>() != doc.signature.p() ||
        sig.at("q").get<int>() != doc.signature.q())
      fail(ErrorCode::ParseError, "signature p/q disagree with signs");
    doc.residual = j.at("residual").get<double>();
    const json& coords = j.at("coordinates");
    const int dim = static_cast<int>(doc.signature.signs.size());
    doc.coordinates.resize(dim, static_cast<Eigen::Index>(coords.size()));
    int col = 0;
    for (const json& row : coords) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        fail(ErrorCode::ParseError, "coordinate rows must have length p+q");
      for (int r = 0; r < dim; ++r)
        doc.coordinates(r, col) = row[r].get<double>();
      ++col;
    }
    if (j.contains("lambda_final")) {
      doc.has_lambda = true;
      doc.lambda_final = j.at("lambda_final").get<double>();
    }
    if (j.contains("alphas")) {
      doc.has_alphas = true;
      const json& al = j.at("alphas");
      doc.alphas.resize(static_cast<Eigen::Index>(al.size()));
      Eigen::Index i = 0;
      for (const json& a : al) doc.alphas[i++] = a.get<double>();
    }
    if (j.contains("partition")) {
      doc.has_partition = true;
      for (const json& p : j.at("partition")) doc.partition.push_back(p.get<int>());
      if (j.contains("mu"))
        for (const json& p : j.at("mu")) doc.mu.push_back(p.get<int>());
    }
    return doc;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    fail(ErrorCode::ParseError,
         std::string("malformed embedding document: ") + ex.what());
  }
}

std::string serialize(const EmbeddingDocument& doc) {
  std::string s = "{\n";
  s += "  \"schema_version\": " + std::to_string(doc.schema_version) + ",\n";
  s += "  \"method\": " + json_string(doc.method) + ",\n";
  s += "  \"mode\": " + json_string(doc.mode) + ",\n";
  s += "  \"seed\": " + std::to_string(doc.seed) + ",\n";
  s += "  \"signature\": {\n";
  s += "    \"signs\": " + int_list(doc.signature.signs) + ",\n";
  s += "    \"p\": " + std::to_string(doc.signature.p()) + ",\n";
  s += "    \"q\": " + std::to_string(doc.signature.q()) + "\n";
  s += "  },\n";
  s += "  \"residual\": " + fmt_double(doc.residual) + ",\n";
  if (doc.has_lambda)
    s += "  \"lambda_final\": " + fmt_double(doc.lambda_final) + ",\n";
  if (doc.has_alphas)
    s += "  \"alphas\": " + double_list(doc.alphas) + ",\n";
  if (doc.has_partition) {
    s += "  \"partition\": " + int_list(doc.partition) + ",\n";
    s += "  \"mu\": " + int_list(doc.mu) + ",\n";
  }
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(doc.coordinates.cols()));
  for (int v = 0; v < doc.coordinates.cols(); ++v)
    rows.push_back(coord_row(doc.coordinates, v));
  s += "  \"coordinates\": " + array_block(rows, 2) + "\n";
  s += "}\n";
  return s;
}

SimplicialMap instantiate(const EmbeddingDocument& doc, ComplexPtr c) {
  if (static_cast<int>(doc.coordinates.cols()) != c->vertex_count)
    fail(ErrorCode::ComplexMismatch,
         "document carries " + std::to_string(doc.coordinates.cols()) +
             " vertex rows, complex has " + std::to_string(c->vertex_count));
  SimplicialMap f;
  f.complex = std::move(c);
  f.signature = doc.signature;
  f.coords = doc.coordinates;
  return f;
}

EmbeddingDocument make_document(const GreeneResult& r, EmbedMode mode,
                                std::uint64_t seed) {
  EmbeddingDocument doc;
  doc.method = "greene";
  doc.mode = embed_mode_name(mode);
  doc.seed = seed;
  doc.signature = r.map.signature;
  doc.coordinates = r.map.coords;
  doc.residual = r.residual;
  doc.has_lambda = true;
  doc.lambda_final = r.lambda_final;
  return doc;
}

EmbeddingDocument make_document(const SpanningResult& r, std::uint64_t seed) {
  EmbeddingDocument doc;
  doc.method = "spanning";
  doc.mode = "embedding";
  doc.seed = seed;
  doc.signature = r.map.signature;
  doc.coordinates = r.map.coords;
  doc.residual = r.residual;
  doc.has_alphas = true;
  doc.alphas = r.alphas;
  return doc;
}

EmbeddingDocument make_document(const GluingResult& r, EmbedMode mode,
                                std::uint64_t seed) {
  EmbeddingDocument doc;
  doc.method = "gluing";
  doc.mode = embed_mode_name(mode);
  doc.seed = seed;
  doc.signature = r.map.signature;
  doc.coordinates = r.map.coords;
  doc.residual = r.residual;
  doc.has_partition = true;
  doc.partition = r.partition.vertex_class;
  doc.mu.reserve(doc.partition.size());
  for (int cls : doc.partition) doc.mu.push_back(cls + 1);
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::ParseError, "cannot write " + path);
}

Family make_family(const std::string& name, int size) {
  if (size < 1) fail(ErrorCode::ParseError, "family size must be >= 1");
  std::vector<Simplex> maximal;
  ComplexPtr c;
  if (name == "skeleton") {
    for (int i = 0; i <= size; ++i)
      for (int j = i + 1; j <= size; ++j) maximal.push_back({i, j});
    c = build_complex(size + 1, maximal);
  } else if (name == "grid") {
    const int g = size;
    auto vid = [g](int r, int col) { return r * g + col; };
    for (int r = 0; r + 1 < g; ++r)
      for (int col = 0; col + 1 < g; ++col) {
        maximal.push_back({vid(r, col), vid(r, col + 1), vid(r + 1, col)});
        maximal.push_back(
            {vid(r, col + 1), vid(r + 1, col), vid(r + 1, col + 1)});
      }
    c = build_complex(g * g, maximal);
  } else if (name == "glued-fan") {
    for (int b = 0; b < size; ++b) {
      std::vector<int> blade{0};
      for (int k = 1; k <= 4; ++k) blade.push_back(4 * b + k);
      for (std::size_t i = 0; i < blade.size(); ++i)
        for (std::size_t j = i + 1; j < blade.size(); ++j)
          maximal.push_back({blade[i], blade[j]});
    }
    c = build_complex(4 * size + 1, maximal);
  } else {
    fail(ErrorCode::UnknownFamily,
         "unknown family \"" + name + "\" (choose skeleton, grid, glued-fan)");
  }

  MetricVector sq(c->edge_count());
  for (int e = 0; e < c->edge_count(); ++e) {
    const int u = c->edges[e].first, v = c->edges[e].second;
    const bool diagonal =
        name == "grid" && u / size != v / size && u % size != v % size;
    sq[e] = diagonal ? 2.0 : 1.0;
  }
  Family fam;
  fam.metric = metric_from_squared_vector(*c, std::move(sq), MetricMode::Length);
  fam.complex = std::move(c);
  return fam;
}

}  // namespace indef
