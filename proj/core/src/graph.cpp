#include "daic/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "daic/errors.hpp"

namespace daic {

std::optional<std::size_t> Graph::find(VertexId vid) const {
  if (ids_.empty()) return std::nullopt;
  if (contiguous_) {
    if (vid < ids_.front() || vid > ids_.back()) return std::nullopt;
    return static_cast<std::size_t>(vid - ids_.front());
  }
  auto it = lookup_.find(vid);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::index_of(VertexId vid) const {
  auto index = find(vid);
  if (!index) throw std::out_of_range("unknown vertex id " + std::to_string(vid));
  return *index;
}

bool Graph::weighted() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight != 1.0; });
}

bool Graph::symmetric() const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (const Edge& e : out_edges_at(i)) {
      const auto back = out_edges(e.target);
      auto it = std::find_if(back.begin(), back.end(),
                             [&](const Edge& r) { return r.target == ids_[i]; });
      if (it == back.end() || it->weight != e.weight) return false;
    }
  }
  return true;
}

Graph Graph::transposed() const {
  GraphBuilder builder;
  for (VertexId vid : ids_) builder.add_vertex(vid);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (const Edge& e : out_edges_at(i)) builder.add_edge(e.target, ids_[i], e.weight);
  }
  return std::move(builder).build();
}

void Graph::finish() {
  in_degree_.assign(ids_.size(), 0);
  contiguous_ = ids_.empty() || ids_.back() - ids_.front() + 1 == ids_.size();
  lookup_.clear();
  if (!contiguous_) {
    lookup_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) lookup_.emplace(ids_[i], i);
  }
  for (const Edge& e : edges_) ++in_degree_[index_of(e.target)];
}

void GraphBuilder::add_vertex(VertexId vid) { adjacency_.try_emplace(vid); }

void GraphBuilder::add_edge(VertexId source, VertexId target, double weight) {
  if (!std::isfinite(weight)) {
    throw ConfigError("edge " + std::to_string(source) + "->" + std::to_string(target) +
                      " has a non-finite weight");
  }
  adjacency_[source].push_back(Edge{target, weight});
  adjacency_.try_emplace(target);
}

Graph GraphBuilder::build() && {
  Graph graph;
  graph.ids_.reserve(adjacency_.size());
  for (const auto& [vid, edges] : adjacency_) graph.ids_.push_back(vid);
  std::sort(graph.ids_.begin(), graph.ids_.end());

  std::size_t total = 0;
  for (const auto& [vid, edges] : adjacency_) total += edges.size();
  graph.edges_.reserve(total);
  graph.offsets_.reserve(graph.ids_.size() + 1);

  std::vector<VertexId> targets;
  for (VertexId vid : graph.ids_) {
    auto& edges = adjacency_[vid];
    targets.clear();
    for (const Edge& e : edges) targets.push_back(e.target);
    std::sort(targets.begin(), targets.end());
    if (auto dup = std::adjacent_find(targets.begin(), targets.end()); dup != targets.end()) {
      throw ConfigError("duplicate edge " + std::to_string(vid) + "->" + std::to_string(*dup));
    }
    graph.edges_.insert(graph.edges_.end(), edges.begin(), edges.end());
    graph.offsets_.push_back(graph.edges_.size());
  }
  adjacency_.clear();
  graph.finish();
  return graph;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\n')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

VertexId parse_vid(std::string_view token, std::size_t line_number) {
  VertexId vid = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), vid);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(line_number, "bad vertex id '" + std::string(token) + "'");
  }
  return vid;
}

double parse_weight(std::string_view token, std::size_t line_number) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || !std::isfinite(w)) {
    throw ParseError(line_number, "bad edge weight '" + std::string(token) + "'");
  }
  return w;
}

}  // namespace

ParsedLine parse_line(std::string_view line, std::size_t line_number) {
  line = trim(line);
  const auto tab = line.find('\t');
  ParsedLine parsed;
  parsed.vid = parse_vid(trim(line.substr(0, tab)), line_number);
  if (tab == std::string_view::npos) return parsed;

  std::string_view rest = line.substr(tab + 1);
  while (!rest.empty()) {
    const auto space = rest.find(' ');
    std::string_view token = rest.substr(0, space);
    rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
    if (token.empty()) continue;
    const auto colon = token.find(':');
    Edge edge{parse_vid(token.substr(0, colon), line_number), 1.0};
    if (colon != std::string_view::npos) edge.weight = parse_weight(token.substr(colon + 1), line_number);
    parsed.edges.push_back(edge);
  }
  return parsed;
}

Graph read_graph(std::istream& in) {
  GraphBuilder builder;
  std::unordered_map<VertexId, std::size_t> seen;
  std::vector<VertexId> targets;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    ParsedLine parsed = parse_line(line, line_number);
    if (auto [it, inserted] = seen.emplace(parsed.vid, line_number); !inserted) {
      throw ParseError(line_number, "vertex " + std::to_string(parsed.vid) +
                                        " already defined on line " + std::to_string(it->second));
    }
    targets.clear();
    for (const Edge& e : parsed.edges) targets.push_back(e.target);
    std::sort(targets.begin(), targets.end());
    if (auto dup = std::adjacent_find(targets.begin(), targets.end()); dup != targets.end()) {
      throw ParseError(line_number, "duplicate edge to " + std::to_string(*dup));
    }
    builder.add_vertex(parsed.vid);
    for (const Edge& e : parsed.edges) builder.add_edge(parsed.vid, e.target, e.weight);
  }
  return std::move(builder).build();
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path.string());
  return read_graph(in);
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_graph(std::ostream& out, const Graph& graph) {
  const bool weighted = graph.weighted();
  std::string line;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    line = std::to_string(graph.vid_at(i));
    line += '\t';
    bool first = true;
    for (const Edge& e : graph.out_edges_at(i)) {
      if (!first) line += ' ';
      first = false;
      line += std::to_string(e.target);
      if (weighted) {
        line += ':';
        line += format_real(e.weight);
      }
    }
    line += '\n';
    out << line;
  }
}

void save_graph(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file " + path.string());
  write_graph(out, graph);
  if (!out) throw Error("write failed for " + path.string());
}

std::size_t partition(VertexId vid, std::size_t shards) {
  if (shards == 0) throw ConfigError("shard count must be at least 1");
  return static_cast<std::size_t>(vid % shards);
}

}  // namespace daic
