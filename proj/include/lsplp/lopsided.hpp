#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/errors.hpp"
#include "lsplp/reduce.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

inline constexpr int kMaxCubeDimension = 16;

// Subset of {-1,1}^d. Vertex index bit i is 1 iff coordinate i is +1.
class VertexSet {
 public:
  VertexSet() : VertexSet(0) {}
  explicit VertexSet(int d) : d_(d) {
    if (d < 0 || d > kMaxCubeDimension) throw PreconditionError("dimension too large");
    words_.assign(((std::size_t{1} << d) + 63) / 64, 0);
  }

  static VertexSet full(int d) {
    VertexSet s(d);
    for (std::uint32_t v = 0; v < s.cube_size(); ++v) s.insert(v);
    return s;
  }
  // Low 2^d bits of `bits`, for d <= 6.
  static VertexSet from_bits(int d, std::uint64_t bits) {
    if (d > 6) throw PreconditionError("from_bits needs d <= 6");
    VertexSet s(d);
    s.words_[0] = bits & s.tail_mask();
    return s;
  }

  int dimension() const noexcept { return d_; }
  std::uint32_t cube_size() const noexcept { return std::uint32_t{1} << d_; }
  bool contains(std::uint32_t v) const { return (words_[v / 64] >> (v % 64)) & 1; }
  void insert(std::uint32_t v) { words_[v / 64] |= std::uint64_t{1} << (v % 64); }
  void erase(std::uint32_t v) { words_[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < cube_size(); ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  VertexSet operator&(const VertexSet& o) const { return zip(o, [](auto x, auto y) { return x & y; }); }
  VertexSet operator|(const VertexSet& o) const { return zip(o, [](auto x, auto y) { return x | y; }); }
  VertexSet operator-(const VertexSet& o) const { return zip(o, [](auto x, auto y) { return x & ~y; }); }
  VertexSet complement() const { return full(d_) - *this; }

  // Image under flipping coordinate i of every member.
  VertexSet flipped(int i) const {
    VertexSet out(d_);
    const std::uint32_t k = std::uint32_t{1} << i;
    if (k >= 64) {
      const std::size_t step = k / 64;
      for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w ^ step] = words_[w];
    } else {
      const std::uint64_t low = low_mask(i);
      for (std::size_t w = 0; w < words_.size(); ++w)
        out.words_[w] = ((words_[w] & low) << k) | ((words_[w] >> k) & low);
    }
    return out;
  }

  bool operator==(const VertexSet&) const = default;

  // One +-1 vector per line, coordinates separated by spaces.
  std::string to_string() const {
    std::string s;
    for (std::uint32_t v : members()) {
      for (int i = 0; i < d_; ++i) {
        if (i) s += ' ';
        s += (v >> i) & 1 ? "+1" : "-1";
      }
      s += '\n';
    }
    return s;
  }

 private:
  // Bits of a word whose coordinate i is 0 (only meaningful for 2^i < 64).
  static std::uint64_t low_mask(int i) {
    static constexpr std::uint64_t m[6] = {0x5555555555555555ULL, 0x3333333333333333ULL,
                                           0x0F0F0F0F0F0F0F0FULL, 0x00FF00FF00FF00FFULL,
                                           0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
    return m[i];
  }
  std::uint64_t tail_mask() const {
    return d_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << d_)) - 1;
  }
  template <class Op>
  VertexSet zip(const VertexSet& o, Op op) const {
    if (o.d_ != d_) throw PreconditionError("dimension mismatch");
    VertexSet out(d_);
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = op(words_[w], o.words_[w]);
    return out;
  }

  int d_;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.dimension());
    for (auto w : s.words()) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h >> 7));
    return h;
  }
};

// Set file: one vector of +1/-1 entries per line, '#' starts a comment.
// An empty file is the empty set in dimension `empty_dimension`.
inline VertexSet parse_vertex_set(std::istream& in, int empty_dimension = 0) {
  std::vector<std::uint32_t> vs;
  int d = -1;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::istringstream ls(raw.substr(0, raw.find('#')));
    std::uint32_t v = 0;
    int k = 0;
    for (std::string tok; ls >> tok; ++k) {
      if (tok != "1" && tok != "+1" && tok != "-1") throw ParseError(line, "expected +1 or -1");
      if (k >= kMaxCubeDimension) throw ParseError(line, "dimension too large");
      if (tok != "-1") v |= std::uint32_t{1} << k;
    }
    if (k == 0) continue;
    if (d >= 0 && k != d) throw ParseError(line, "vector length differs from earlier lines");
    d = k;
    vs.push_back(v);
  }
  VertexSet s(d < 0 ? empty_dimension : d);
  for (auto v : vs) s.insert(v);
  return s;
}

// Face of [-1,1]^d: coordinates in fixed_mask are pinned to fixed_values.
struct Face {
  std::uint32_t fixed_mask = 0;
  std::uint32_t fixed_values = 0;

  bool contains(std::uint32_t v) const { return (v & fixed_mask) == fixed_values; }
  bool operator==(const Face&) const = default;
};

// All 3^d faces, the full cube first.
inline std::vector<Face> all_faces(int d) {
  std::vector<Face> out;
  const std::uint32_t all = (std::uint32_t{1} << d) - 1;
  for (std::uint32_t mask = 0; mask <= all; ++mask)
    for (std::uint32_t vals = mask;; vals = (vals - 1) & mask) {
      out.push_back({mask, vals});
      if (vals == 0) break;
    }
  return out;
}

inline VertexSet face_set(int d, const Face& f) {
  VertexSet s(d);
  for (std::uint32_t v = 0; v < s.cube_size(); ++v)
    if (f.contains(v)) s.insert(v);
  return s;
}

namespace detail {

inline void require_dimension(const VertexSet& c, int limit) {
  if (c.dimension() > limit) throw PreconditionError("dimension too large");
}

// Neighbours of x inside the face, by flipping one free coordinate.
inline VertexSet face_neighbours(const VertexSet& x, int d, std::uint32_t free) {
  VertexSet out(d);
  for (int i = 0; i < d; ++i)
    if ((free >> i) & 1) out = out | x.flipped(i);
  return out;
}

// Members of s (a subset of face f) are connected through s by cube edges.
inline bool connected_in_face(const VertexSet& s, const Face& f) {
  if (s.size() <= 1) return true;
  const int d = s.dimension();
  const std::uint32_t free = ~f.fixed_mask & ((std::uint32_t{1} << d) - 1);
  VertexSet reached(d);
  reached.insert(s.members().front());
  for (;;) {
    VertexSet next = (reached | face_neighbours(reached, d, free)) & s;
    if (next == reached) return reached == s;
    reached = std::move(next);
  }
}

// Conditions 2 and 3 of multi-connectivity: in every face both C and its
// complement induce connected subgraphs.
inline bool faces_connected(const VertexSet& c, const std::vector<Face>& faces,
                            const std::vector<VertexSet>& face_sets) {
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const VertexSet in = c & face_sets[k];
    if (!connected_in_face(in, faces[k])) return false;
    if (!connected_in_face(face_sets[k] - in, faces[k])) return false;
  }
  return true;
}

struct CubeFaces {
  std::vector<Face> faces;
  std::vector<VertexSet> sets;
  explicit CubeFaces(int d) : faces(all_faces(d)) {
    for (const Face& f : faces) sets.push_back(face_set(d, f));
  }
};

}  // namespace detail

// For every face F whose flip map fixes C, C holds none or all of F.
inline bool is_lopsided(const VertexSet& c) {
  detail::require_dimension(c, kMaxCubeDimension);
  const int d = c.dimension();
  for (const Face& f : all_faces(d)) {
    const VertexSet fs = face_set(d, f);
    const VertexSet in = c & fs;
    if (in.empty() || in == fs) continue;
    VertexSet image = in;
    for (int i = 0; i < d; ++i)
      if (!((f.fixed_mask >> i) & 1)) image = image.flipped(i);
    if (image == in) return false;
  }
  return true;
}

inline constexpr int kMaxMultiConnectedDimension = 8;

namespace detail {

class MultiConnectedSolver {
 public:
  explicit MultiConnectedSolver(int d) : faces_(d) {}

  bool operator()(const VertexSet& c) {
    if (c.empty()) return true;
    if (good_.count(c)) return true;
    if (bad_.count(c)) return false;
    bool ok = faces_connected(c, faces_.faces, faces_.sets);
    if (ok) {
      ok = false;
      for (std::uint32_t g : c.members()) {
        VertexSet smaller = c;
        smaller.erase(g);
        if ((*this)(smaller)) {
          ok = true;
          break;
        }
      }
    }
    (ok ? good_ : bad_).insert(c);
    return ok;
  }

 private:
  CubeFaces faces_;
  std::unordered_set<VertexSet, VertexSetHash> good_, bad_;
};

}  // namespace detail

// Recursive definition: C is empty or some g can be peeled off leaving a
// multi-connected set, and C and its complement are connected in every face.
inline bool is_multi_connected(const VertexSet& c) {
  detail::require_dimension(c, kMaxMultiConnectedDimension);
  return detail::MultiConnectedSolver(c.dimension())(c);
}

// {-1,1}^d without the two all-equal vertices.
inline VertexSet deleted_antipodal_set(int d) {
  if (d < 2) throw PreconditionError("deleted antipodal set needs d >= 2");
  VertexSet s = VertexSet::full(d);
  s.erase(0);
  s.erase(s.cube_size() - 1);
  return s;
}

// C ∩ F with the fixed coordinates dropped.
inline VertexSet face_restrict(const VertexSet& c, const Face& f) {
  const int d = c.dimension();
  std::vector<int> free;
  for (int i = 0; i < d; ++i)
    if (!((f.fixed_mask >> i) & 1)) free.push_back(i);
  VertexSet out(static_cast<int>(free.size()));
  for (std::uint32_t v : c.members()) {
    if (!f.contains(v)) continue;
    std::uint32_t w = 0;
    for (std::size_t k = 0; k < free.size(); ++k) w |= ((v >> free[k]) & 1) << k;
    out.insert(w);
  }
  return out;
}

enum class ImplicationDirection { LopsidedImpliesMC, MCImpliesLopsided };

inline std::string_view to_string(ImplicationDirection d) {
  return d == ImplicationDirection::LopsidedImpliesMC ? "lopsided-implies-mc" : "mc-implies-lopsided";
}

struct ImplicationCensus {
  int d = 0;
  std::uint64_t subsets = 0;
  std::uint64_t lopsided = 0;
  std::uint64_t multi_connected = 0;
  std::vector<VertexSet> counterexamples;
};

inline constexpr int kMaxExhaustiveDimension = 4;

// Checks the implication over all 2^(2^d) subsets. Multi-connectivity is a
// table indexed by the subset bits, filled in increasing order since every
// C \ {g} is numerically smaller than C.
inline ImplicationCensus exhaustive_implication(int d, ImplicationDirection dir) {
  if (d < 0 || d > kMaxExhaustiveDimension) throw PreconditionError("dimension beyond limit");
  const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << d);
  const detail::CubeFaces faces(d);
  std::vector<char> mc(total, 0);
  ImplicationCensus out;
  out.d = d;
  out.subsets = total;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const VertexSet c = VertexSet::from_bits(d, bits);
    bool peel = bits == 0;
    for (std::uint64_t rest = bits; rest && !peel; rest &= rest - 1)
      peel = mc[bits & ~(rest & -rest)];
    mc[bits] = peel && detail::faces_connected(c, faces.faces, faces.sets);
    const bool lop = is_lopsided(c);
    out.lopsided += lop;
    out.multi_connected += mc[bits];
    const bool violated = dir == ImplicationDirection::LopsidedImpliesMC ? lop && !mc[bits]
                                                                          : mc[bits] && !lop;
    if (violated) out.counterexamples.push_back(c);
  }
  return out;
}

// Coordinates of b(G): non-sink Max vertices with two out-edges, or every
// non-sink Max vertex when keep_fixed is set.
inline std::vector<int> cube_coordinates(const Arena& a, bool keep_fixed = false) {
  std::vector<int> out;
  for (int v : a.choice_vertices()) {
    const std::size_t deg = a.out_edges(v).size();
    if (deg > 2) throw ValidationError("vertex " + std::to_string(v) + " has more than two choices");
    if (deg == 2 || keep_fixed) out.push_back(v);
  }
  return out;
}

// Strategy at cube vertex x: coordinate -1 picks the lower edge id.
inline Strategy strategy_at(const Arena& a, const std::vector<int>& coords, std::uint32_t x) {
  std::vector<int> choice(a.num_vertices(), -1);
  for (int v : a.choice_vertices()) choice[v] = a.out_edges(v).front();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& out = a.out_edges(coords[i]);
    choice[coords[i]] = ((x >> i) & 1) ? out.back() : out.front();
  }
  return Strategy(std::move(choice));
}

namespace detail {

inline bool no_negative_cycle(const EdgeSubgraph& g) {
  const auto mu = minimum_cycle_mean(g);
  return !mu || *mu >= 0;
}

}  // namespace detail

// Membership: admissible (LSP, sink parity after its LSP transform), every
// cycle of G_sigma nonnegative (MPG, i.e. valuation >= 0 everywhere), or
// winning for player 0 (parity, through its MPG transform).
inline VertexSet b_of_game(const Arena& a, bool keep_fixed = false) {
  const std::vector<int> coords = cube_coordinates(a, keep_fixed);
  if (coords.size() > static_cast<std::size_t>(kMaxCubeDimension))
    throw PreconditionError("strategy count exceeds cap");
  const int d = static_cast<int>(coords.size());
  Arena game = a;
  if (a.kind() == ArenaKind::SinkParity) game = sink_parity_to_lsp(a);
  if (a.kind() == ArenaKind::Parity) game = parity_to_mpg(a);
  std::uint32_t fixed = 0;  // single-choice coordinates, constant -1
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (a.out_edges(coords[i]).size() == 1) fixed |= std::uint32_t{1} << i;
  VertexSet out(d);
  for (std::uint32_t x = 0; x < out.cube_size(); ++x) {
    if (x & fixed) continue;
    const Strategy s = strategy_at(game, coords, x);
    const bool member = game.kind() == ArenaKind::Mpg
                            ? detail::no_negative_cycle(restrict_to_strategy(game, s))
                            : is_admissible(game, s);
    if (member) out.insert(x);
  }
  return out;
}

// Shortest single-switch path from s1 to s2 through admissible strategies,
// searched inside the subcube spanned by the positions where they differ.
inline std::optional<std::vector<Strategy>> isometric_switch_path(const Arena& a, const Strategy& s1,
                                                                  const Strategy& s2) {
  validate_strategy(a, s1);
  validate_strategy(a, s2);
  if (!is_admissible(a, s1) || !is_admissible(a, s2))
    throw PreconditionError("inadmissible input strategy");
  std::vector<int> diff;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (s1.choice(v) != s2.choice(v)) diff.push_back(v);
  if (diff.size() > 24) throw PreconditionError("too many differing positions");
  const std::uint32_t target = (std::uint32_t{1} << diff.size()) - 1;
  auto at = [&](std::uint32_t mask) {
    std::vector<int> c = s1.choices();
    for (std::size_t i = 0; i < diff.size(); ++i)
      if ((mask >> i) & 1) c[diff[i]] = s2.choice(diff[i]);
    return Strategy(std::move(c));
  };
  std::vector<std::int64_t> parent(std::size_t{target} + 1, -2);
  std::deque<std::uint32_t> queue{0};
  parent[0] = -1;
  while (!queue.empty()) {
    const std::uint32_t m = queue.front();
    queue.pop_front();
    if (m == target) break;
    for (std::size_t i = 0; i < diff.size(); ++i) {
      const std::uint32_t n = m ^ (std::uint32_t{1} << i);
      if (parent[n] != -2 || !is_admissible(a, at(n))) continue;
      parent[n] = m;
      queue.push_back(n);
    }
  }
  if (parent[target] == -2) return std::nullopt;
  std::vector<Strategy> path;
  for (std::int64_t m = target; m != -1; m = parent[m]) path.push_back(at(static_cast<std::uint32_t>(m)));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace lsplp
