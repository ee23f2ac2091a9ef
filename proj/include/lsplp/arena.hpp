#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lsplp/errors.hpp"
#include "lsplp/int_polynomial.hpp"

namespace lsplp {

// Player 0 is Max and player 1 is Min throughout.
enum class Owner { Max, Min };

enum class ArenaKind { Parity, Mpg, SinkParity, Lsp };

inline std::string_view to_string(ArenaKind k) {
  switch (k) {
    case ArenaKind::Parity: return "parity";
    case ArenaKind::Mpg: return "mpg";
    case ArenaKind::SinkParity: return "sinkparity";
    case ArenaKind::Lsp: return "lsp";
  }
  return "?";
}

inline bool has_sink_semantics(ArenaKind k) {
  return k == ArenaKind::SinkParity || k == ArenaKind::Lsp;
}

// For parity kinds `weight` holds the priority.
struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
  BigInt weight;
  bool operator==(const Edge&) const = default;
};

// Immutable weighted game graph. Vertex ids are 0..n-1, edge ids 0..m-1.
class Arena {
 public:
  // Validates every invariant; throws ValidationError naming the offender.
  Arena(ArenaKind kind, std::vector<Owner> owners, std::vector<Edge> edges,
        std::optional<int> sink)
      : kind_(kind), owners_(std::move(owners)), edges_(std::move(edges)), sink_(sink) {
    const int n = num_vertices();
    out_.assign(owners_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.id != static_cast<int>(i))
        throw ValidationError("edge ids must be 0..m-1 in order (edge " +
                              std::to_string(e.id) + ")");
      if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
        throw ValidationError("edge " + std::to_string(e.id) + " has a dangling endpoint");
      out_[e.tail].push_back(e.id);
    }
    if (sink_ && (*sink_ < 0 || *sink_ >= n))
      throw ValidationError("sink id out of range");
    if (sink_ && owners_[*sink_] != Owner::Max)
      throw ValidationError("sink vertex " + std::to_string(*sink_) + " must be Max-owned");
    for (int v = 0; v < n; ++v)
      if (out_[v].empty())
        throw ValidationError("no outgoing edge at vertex " + std::to_string(v));
    if (has_sink_semantics(kind_)) {
      if (!sink_) throw ValidationError("arena kind requires a sink");
      const auto& so = out_[*sink_];
      if (so.size() != 1)
        throw ValidationError("sink out-degree must be 1 (vertex " +
                              std::to_string(*sink_) + ")");
      const Edge& loop = edges_[so[0]];
      if (loop.head != *sink_)
        throw ValidationError("sink edge " + std::to_string(loop.id) + " is not a self-loop");
      if (kind_ == ArenaKind::Lsp && loop.weight != 0)
        throw ValidationError("sink loop " + std::to_string(loop.id) + " must have weight 0");
    }
  }

  ArenaKind kind() const noexcept { return kind_; }
  int num_vertices() const noexcept { return static_cast<int>(owners_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  Owner owner(int v) const { return owners_.at(v); }
  const std::vector<Owner>& owners() const noexcept { return owners_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_.at(v); }
  std::optional<int> sink() const noexcept { return sink_; }

  bool is_sink(int v) const noexcept { return sink_ && *sink_ == v; }
  bool is_sink_loop(int e) const { return sink_ && edges_.at(e).tail == *sink_; }
  bool is_max_edge(int e) const { return owner(edges_.at(e).tail) == Owner::Max; }

  // Max vertices that make a choice, i.e. all Max vertices except the sink.
  std::vector<int> choice_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
      if (owners_[v] == Owner::Max && !is_sink(v)) out.push_back(v);
    return out;
  }

  Arena with_weights(const std::vector<BigInt>& weights, ArenaKind kind) const {
    std::vector<Edge> es = edges_;
    for (std::size_t i = 0; i < es.size(); ++i) es[i].weight = weights.at(i);
    return Arena(kind, owners_, std::move(es), sink_);
  }

  bool operator==(const Arena& o) const {
    return kind_ == o.kind_ && owners_ == o.owners_ && edges_ == o.edges_ && sink_ == o.sink_;
  }

 private:
  ArenaKind kind_;
  std::vector<Owner> owners_;
  std::vector<Edge> edges_;
  std::optional<int> sink_;
  std::vector<std::vector<int>> out_;
};

// Positional Maximizer strategy: chosen edge id per vertex, -1 where the
// vertex makes no choice (Min vertices and the sink).
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::vector<int> choice) : choice_(std::move(choice)) {}

  int choice(int v) const { return choice_.at(v); }
  const std::vector<int>& choices() const noexcept { return choice_; }
  std::size_t size() const noexcept { return choice_.size(); }

  bool operator==(const Strategy&) const = default;
  auto operator<=>(const Strategy&) const = default;

 private:
  std::vector<int> choice_;
};

// Throws ValidationError unless s picks exactly one own out-edge per
// non-sink Max vertex.
inline void validate_strategy(const Arena& a, const Strategy& s) {
  if (static_cast<int>(s.size()) != a.num_vertices())
    throw ValidationError("strategy size does not match vertex count");
  for (int v = 0; v < a.num_vertices(); ++v) {
    const int e = s.choice(v);
    const bool chooses = a.owner(v) == Owner::Max && !a.is_sink(v);
    if (!chooses) {
      if (e != -1)
        throw ValidationError("strategy assigns an edge to non-choice vertex " +
                              std::to_string(v));
      continue;
    }
    if (e < 0 || e >= a.num_edges())
      throw ValidationError("strategy references non-existent edge at vertex " +
                            std::to_string(v));
    if (a.edge(e).tail != v)
      throw ValidationError("strategy edge " + std::to_string(e) + " does not leave vertex " +
                            std::to_string(v));
  }
}

// Edge subset of an arena on the same vertex set; edges keep their ids.
struct EdgeSubgraph {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::optional<int> sink;

  bool is_sink_loop(const Edge& e) const {
    return sink && e.tail == *sink && e.head == *sink;
  }
  std::vector<int> edge_ids() const {
    std::vector<int> ids;
    for (const auto& e : edges) ids.push_back(e.id);
    return ids;
  }
  std::vector<int> out_degrees() const {
    std::vector<int> d(num_vertices, 0);
    for (const auto& e : edges) ++d[e.tail];
    return d;
  }
};

inline EdgeSubgraph full_subgraph(const Arena& a) {
  return {a.num_vertices(), a.edges(), a.sink()};
}

// G_sigma: all Min edges, the chosen Max edges and the sink loop.
inline EdgeSubgraph restrict_to_strategy(const Arena& a, const Strategy& s) {
  validate_strategy(a, s);
  EdgeSubgraph g{a.num_vertices(), {}, a.sink()};
  for (const Edge& e : a.edges()) {
    if (a.owner(e.tail) == Owner::Min || a.is_sink(e.tail) || s.choice(e.tail) == e.id)
      g.edges.push_back(e);
  }
  return g;
}

// (V, E_min); the sink loop is excluded since the sink is Max-owned.
inline EdgeSubgraph min_subgraph(const Arena& a) {
  EdgeSubgraph g{a.num_vertices(), {}, a.sink()};
  for (const Edge& e : a.edges())
    if (a.owner(e.tail) == Owner::Min) g.edges.push_back(e);
  return g;
}

inline constexpr std::uint64_t kDefaultStrategyCap = std::uint64_t{1} << 20;

inline std::uint64_t count_strategies(const Arena& a) {
  std::uint64_t count = 1;
  for (int v : a.choice_vertices()) {
    const std::uint64_t d = a.out_edges(v).size();
    if (count > (std::uint64_t{1} << 62) / d) return UINT64_MAX;
    count *= d;
  }
  return count;
}

// All positional Max strategies, lexicographic by vertex id then edge id.
inline std::vector<Strategy> enumerate_strategies(const Arena& a,
                                                  std::uint64_t cap = kDefaultStrategyCap) {
  const std::uint64_t total = count_strategies(a);
  if (total > cap)
    throw PreconditionError("strategy count " +
                            (total == UINT64_MAX ? std::string("overflow")
                                                 : std::to_string(total)) +
                            " exceeds cap " + std::to_string(cap));
  const std::vector<int> vs = a.choice_vertices();
  std::vector<std::size_t> digit(vs.size(), 0);
  std::vector<Strategy> out;
  out.reserve(total);
  while (true) {
    std::vector<int> choice(a.num_vertices(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) choice[vs[i]] = a.out_edges(vs[i])[digit[i]];
    out.emplace_back(std::move(choice));
    std::size_t i = vs.size();
    while (i > 0) {
      --i;
      if (++digit[i] < a.out_edges(vs[i]).size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (vs.empty()) return out;
  }
}

// Strategy identical to s except that tail(e) now uses e.
inline Strategy apply_switch(const Arena& a, const Strategy& s, int e) {
  if (e < 0 || e >= a.num_edges()) throw ValidationError("switch edge does not exist");
  const int v = a.edge(e).tail;
  if (a.owner(v) != Owner::Max || a.is_sink(v))
    throw ValidationError("switch edge " + std::to_string(e) + " is not a Max choice edge");
  std::vector<int> c = s.choices();
  c.at(v) = e;
  return Strategy(std::move(c));
}

// ---------------------------------------------------------------------------
// Text formats

inline ArenaKind parse_kind(std::string_view s, std::size_t line) {
  if (s == "parity") return ArenaKind::Parity;
  if (s == "mpg") return ArenaKind::Mpg;
  if (s == "sinkparity") return ArenaKind::SinkParity;
  if (s == "lsp") return ArenaKind::Lsp;
  throw ParseError(line, "unknown arena kind '" + std::string(s) + "'");
}

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline int parse_index(const std::string& tok, std::size_t line, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size() || v < 0)
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  return v;
}

}  // namespace detail

// Parses the line-based arena format:
//   <kind> <n_vertices> <n_edges>
//   v <id> <max|min> [sink]
//   e <id> <tail> <head> <weight-or-priority>
// A sink declared as min is reassigned to Max with a warning.
inline Arena parse_arena(std::istream& in, std::vector<std::string>* warnings = nullptr) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<ArenaKind> kind;
  int n = 0, m = 0;
  std::vector<std::optional<Owner>> owners;
  std::vector<std::optional<Edge>> edges;
  std::optional<int> sink;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(detail::strip_comment(raw));
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!kind) {
      if (tok.size() != 3) throw ParseError(line_no, "header must be '<kind> <n> <m>'");
      kind = parse_kind(tok[0], line_no);
      n = detail::parse_index(tok[1], line_no, "vertex count");
      m = detail::parse_index(tok[2], line_no, "edge count");
      owners.assign(n, std::nullopt);
      edges.assign(m, std::nullopt);
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 3 && tok.size() != 4) throw ParseError(line_no, "malformed vertex line");
      const int id = detail::parse_index(tok[1], line_no, "vertex id");
      if (id >= n) throw ParseError(line_no, "vertex id " + tok[1] + " out of range");
      if (owners[id]) throw ParseError(line_no, "duplicate vertex " + tok[1]);
      Owner o;
      if (tok[2] == "max") o = Owner::Max;
      else if (tok[2] == "min") o = Owner::Min;
      else throw ParseError(line_no, "owner must be max or min");
      if (tok.size() == 4) {
        if (tok[3] != "sink") throw ParseError(line_no, "unexpected token '" + tok[3] + "'");
        if (sink) throw ParseError(line_no, "second sink declared");
        sink = id;
        if (o == Owner::Min) {
          o = Owner::Max;
          if (warnings)
            warnings->push_back("line " + std::to_string(line_no) + ": sink vertex " + tok[1] +
                                " reassigned to max");
        }
      }
      owners[id] = o;
    } else if (tok[0] == "e") {
      if (tok.size() != 5) throw ParseError(line_no, "malformed edge line");
      const int id = detail::parse_index(tok[1], line_no, "edge id");
      if (id >= m) throw ParseError(line_no, "edge id " + tok[1] + " out of range");
      if (edges[id]) throw ParseError(line_no, "duplicate edge " + tok[1]);
      Edge e;
      e.id = id;
      e.tail = detail::parse_index(tok[2], line_no, "tail vertex");
      e.head = detail::parse_index(tok[3], line_no, "head vertex");
      if (e.weight.set_str(tok[4], 10) != 0)
        throw ParseError(line_no, "invalid weight '" + tok[4] + "'");
      edges[id] = std::move(e);
    } else {
      throw ParseError(line_no, "unknown line type '" + tok[0] + "'");
    }
  }
  if (!kind) throw ParseError(line_no, "missing header");
  std::vector<Owner> os;
  for (int v = 0; v < n; ++v) {
    if (!owners[v]) throw ParseError(line_no, "vertex " + std::to_string(v) + " not declared");
    os.push_back(*owners[v]);
  }
  std::vector<Edge> es;
  for (int e = 0; e < m; ++e) {
    if (!edges[e]) throw ParseError(line_no, "edge " + std::to_string(e) + " not declared");
    es.push_back(*edges[e]);
  }
  return Arena(*kind, std::move(os), std::move(es), sink);
}

inline Arena parse_arena(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return parse_arena(in, warnings);
}

inline void write_arena(std::ostream& os, const Arena& a) {
  os << to_string(a.kind()) << ' ' << a.num_vertices() << ' ' << a.num_edges() << '\n';
  for (int v = 0; v < a.num_vertices(); ++v) {
    os << "v " << v << ' ' << (a.owner(v) == Owner::Max ? "max" : "min");
    if (a.is_sink(v)) os << " sink";
    os << '\n';
  }
  for (const Edge& e : a.edges())
    os << "e " << e.id << ' ' << e.tail << ' ' << e.head << ' ' << e.weight.get_str() << '\n';
}

inline std::string serialize_arena(const Arena& a) {
  std::ostringstream os;
  write_arena(os, a);
  return os.str();
}

// Strategy format: one `s <vertex-id> <edge-id>` line per choice vertex.
inline Strategy parse_strategy(std::istream& in, const Arena& a) {
  std::vector<int> choice(a.num_vertices(), -1);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(detail::strip_comment(raw));
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3 || tok[0] != "s") throw ParseError(line_no, "expected 's <vertex> <edge>'");
    const int v = detail::parse_index(tok[1], line_no, "vertex id");
    const int e = detail::parse_index(tok[2], line_no, "edge id");
    if (v >= a.num_vertices()) throw ParseError(line_no, "vertex id out of range");
    if (choice[v] != -1) throw ParseError(line_no, "duplicate choice for vertex " + tok[1]);
    choice[v] = e;
  }
  Strategy s(std::move(choice));
  validate_strategy(a, s);
  return s;
}

inline Strategy parse_strategy(const std::string& text, const Arena& a) {
  std::istringstream in(text);
  return parse_strategy(in, a);
}

inline std::string serialize_strategy(const Strategy& s) {
  std::ostringstream os;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s.choice(static_cast<int>(v)) >= 0) os << "s " << v << ' ' << s.choice(static_cast<int>(v)) << '\n';
  return os.str();
}

}  // namespace lsplp
