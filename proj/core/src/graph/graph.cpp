#include "lgcn/graph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "lgcn/errors.hpp"

namespace lgcn {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool skippable(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

template <class Int>
Int parse_int(std::string_view field, const std::string& path, std::size_t line, const char* what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ParseError(path, line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  return value;
}

double parse_double(std::string_view field, const std::string& path, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw ParseError(path, line, "invalid number '" + std::string(field) + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

Matrix Graph::features_or_identity() const { return has_features() ? features : Matrix::identity(node_count()); }

std::size_t Graph::class_count() const {
  int top = -1;
  for (int l : labels) top = std::max(top, l);
  return static_cast<std::size_t>(top + 1);
}

Graph load_graph(const std::string& edges_path, const std::optional<std::string>& features_path,
                 const std::optional<std::string>& labels_path) {
  struct Located {
    Edge edge;
    std::size_t line;
  };
  std::vector<Located> edges;
  std::size_t max_index_plus_one = 0;
  {
    auto in = open_input(edges_path);
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      if (skippable(line)) continue;
      const auto fields = split_fields(line);
      if (fields.size() != 2) throw ParseError(edges_path, no, "expected 'u,v'");
      const auto u = parse_int<NodeId>(fields[0], edges_path, no, "node index");
      const auto v = parse_int<NodeId>(fields[1], edges_path, no, "node index");
      edges.push_back({{u, v}, no});
      max_index_plus_one = std::max<std::size_t>({max_index_plus_one, std::size_t{u} + 1, std::size_t{v} + 1});
    }
  }

  Graph g;
  std::size_t n = max_index_plus_one;
  if (features_path) {
    auto in = open_input(*features_path);
    std::string line;
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      if (skippable(line)) continue;
      const auto fields = split_fields(line);
      if (rows == 0) cols = fields.size();
      if (fields.size() != cols)
        throw ParseError(*features_path, no,
                         "ragged feature row: " + std::to_string(fields.size()) + " values, expected " +
                             std::to_string(cols));
      for (auto f : fields) values.push_back(parse_double(f, *features_path, no));
      ++rows;
    }
    if (rows == 0) throw ParseError(*features_path, 0, "no feature rows");
    g.features = Matrix(rows, cols, std::move(values));
    for (const auto& e : edges)
      if (e.edge.first >= rows || e.edge.second >= rows)
        throw ParseError(edges_path, e.line, "node index out of range for " + std::to_string(rows) + " feature rows");
    n = rows;
  }

  if (labels_path) {
    auto in = open_input(*labels_path);
    std::string line;
    std::vector<std::pair<std::size_t, std::pair<NodeId, int>>> entries;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      if (skippable(line)) continue;
      const auto fields = split_fields(line);
      if (fields.size() != 2) throw ParseError(*labels_path, no, "expected 'node,label'");
      const auto node = parse_int<NodeId>(fields[0], *labels_path, no, "node index");
      const auto label = parse_int<int>(fields[1], *labels_path, no, "label");
      if (label < 0) throw ParseError(*labels_path, no, "labels must be non-negative");
      entries.push_back({no, {node, label}});
    }
    if (!features_path)
      for (const auto& [no, e] : entries) n = std::max<std::size_t>(n, std::size_t{e.first} + 1);
    g.labels.assign(n, kUnlabeled);
    for (const auto& [no, e] : entries) {
      if (e.first >= n) throw ParseError(*labels_path, no, "node index out of range");
      g.labels[e.first] = e.second;
    }
  }

  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) plain.push_back(e.edge);
  g.adjacency = Adjacency::from_edges(n, plain);
  return g;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_edges_csv(const std::string& path, const Adjacency& adjacency) {
  auto out = open_output(path);
  for (const auto& [u, v] : adjacency.edges()) out << u << ',' << v << '\n';
}

void write_features_csv(const std::string& path, const Matrix& features) {
  auto out = open_output(path);
  for (std::size_t r = 0; r < features.rows; ++r) {
    for (std::size_t c = 0; c < features.cols; ++c) out << (c ? "," : "") << format_double(features(r, c));
    out << '\n';
  }
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != kUnlabeled) out << i << ',' << labels[i] << '\n';
}

}  // namespace lgcn
