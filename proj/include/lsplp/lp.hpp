#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lsplp/arena.hpp"
#include "lsplp/linear_solve.hpp"
#include "lsplp/rules.hpp"
#include "lsplp/walks.hpp"

namespace lsplp {

enum class BChoice { AllOnes, MinwalksSums };

inline std::string_view to_string(BChoice b) {
  return b == BChoice::AllOnes ? "ones" : "minwalks";
}

// min z  s.t.  A (x, z) = b,  x, z >= 0, over Q(t).
//
// Rows are the Max vertices including the sink, in id order. Columns are the
// Max choice edges in id order followed by z. The sink loop has no column:
// it would be identically zero, and z takes the sink's place in every basis.
struct LpModel {
  Matrix<RationalFunction> A;
  std::vector<RationalFunction> b;
  std::vector<RationalFunction> c;
  std::vector<int> row_vertex;   // row -> vertex
  std::vector<int> vertex_row;   // vertex -> row, -1 for Min vertices
  std::vector<int> column_edge;  // column -> edge id, -1 for z
  std::vector<int> edge_column;  // edge id -> column, -1 if none
  BChoice b_choice = BChoice::AllOnes;
  WalkMatrix minwalks;

  std::size_t rows() const { return row_vertex.size(); }
  std::size_t cols() const { return column_edge.size(); }
  int z_column() const { return static_cast<int>(column_edge.size()) - 1; }
  int sink_row() const { return vertex_row.at(sink_vertex); }
  std::string column_name(int col) const {
    return col == z_column() ? std::string("z") : "e" + std::to_string(column_edge.at(col));
  }

  int sink_vertex = -1;
};

inline LpModel build_lp(const Arena& a, BChoice b_choice = BChoice::AllOnes) {
  if (a.kind() != ArenaKind::Lsp || !a.sink()) throw PreconditionError("build_lp needs an LSP arena");
  LpModel m;
  m.b_choice = b_choice;
  m.sink_vertex = *a.sink();
  m.minwalks = minwalks_matrix(a);  // throws on a nonpositive Min-only cycle
  const int n = a.num_vertices();
  m.vertex_row.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (a.owner(v) == Owner::Max) {
      m.vertex_row[v] = static_cast<int>(m.row_vertex.size());
      m.row_vertex.push_back(v);
    }
  m.edge_column.assign(a.num_edges(), -1);
  for (const Edge& e : a.edges())
    if (a.owner(e.tail) == Owner::Max && !a.is_sink(e.tail)) {
      m.edge_column[e.id] = static_cast<int>(m.column_edge.size());
      m.column_edge.push_back(e.id);
    }
  m.column_edge.push_back(-1);
  const std::size_t rows = m.rows(), cols = m.cols();
  m.A = Matrix<RationalFunction>(rows, cols);
  for (std::size_t col = 0; col + 1 < cols; ++col) {
    const Edge& e = a.edge(m.column_edge[col]);
    const RationalFunction tw = RationalFunction::walk_term(e.weight);
    for (std::size_t r = 0; r < rows; ++r) {
      const int i = m.row_vertex[r];
      RationalFunction entry = -(tw * m.minwalks(e.head, i));
      if (i == e.tail) entry += RationalFunction(1);
      m.A(r, col) = std::move(entry);
    }
  }
  m.A(m.sink_row(), cols - 1) = RationalFunction(1);
  m.b.assign(rows, RationalFunction(1));
  if (b_choice == BChoice::MinwalksSums)
    for (std::size_t r = 0; r < rows; ++r) {
      RationalFunction s;
      for (int v = 0; v < n; ++v) s += m.minwalks(v, m.row_vertex[r]);
      m.b[r] = s;
    }
  m.c.assign(cols, RationalFunction(0));
  m.c[cols - 1] = RationalFunction(1);
  return m;
}

// Basic columns in ascending order; z, being the last column, comes last.
struct Basis {
  std::vector<int> columns;
  bool operator==(const Basis&) const = default;
  bool contains(int col) const {
    return std::binary_search(columns.begin(), columns.end(), col);
  }
};

inline Basis make_basis(std::vector<int> columns) {
  std::sort(columns.begin(), columns.end());
  return {std::move(columns)};
}

inline Basis basis_of_strategy(const LpModel& m, const Strategy& s) {
  std::vector<int> cols;
  for (std::size_t v = 0; v < s.size(); ++v) {
    const int e = s.choice(static_cast<int>(v));
    if (e < 0) continue;
    if (m.edge_column.at(e) < 0) throw ValidationError("strategy edge has no LP column");
    cols.push_back(m.edge_column[e]);
  }
  cols.push_back(m.z_column());
  return make_basis(std::move(cols));
}

// Inverse of basis_of_strategy; throws ValidationError for any basis that
// does not consist of z plus one edge column per choice vertex.
inline Strategy strategy_of_basis(const LpModel& m, const Arena& a, const Basis& B) {
  if (!B.contains(m.z_column())) throw ValidationError("basis does not contain z");
  std::vector<int> choice(a.num_vertices(), -1);
  for (int col : B.columns) {
    if (col == m.z_column()) continue;
    const int e = m.column_edge.at(col);
    const int v = a.edge(e).tail;
    if (choice[v] != -1) throw ValidationError("basis has two columns for vertex " + std::to_string(v));
    choice[v] = e;
  }
  for (int v : a.choice_vertices())
    if (choice[v] == -1) throw ValidationError("basis leaves vertex " + std::to_string(v) + " uncovered");
  return Strategy(std::move(choice));
}

inline Matrix<RationalFunction> basis_matrix(const LpModel& m, const Basis& B) {
  if (B.columns.size() != m.rows()) throw ValidationError("basis size differs from row count");
  Matrix<RationalFunction> out(m.rows(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < B.columns.size(); ++k) out(r, k) = m.A(r, B.columns[k]);
  return out;
}

// Rows follow B.columns, columns follow the LP rows. Throws
// SingularMatrixError for a singular basis.
inline Matrix<RationalFunction> basis_inverse(const LpModel& m, const Basis& B) {
  return invert(basis_matrix(m, B));
}

inline std::vector<RationalFunction> column(const LpModel& m, int col) {
  std::vector<RationalFunction> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.A(r, col);
  return v;
}

inline std::vector<RationalFunction> mat_vec(const Matrix<RationalFunction>& M,
                                             const std::vector<RationalFunction>& x) {
  std::vector<RationalFunction> out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && !x[j].is_zero()) out[i] += M(i, j) * x[j];
  return out;
}

// Everything the simplex method reads off one basis.
struct Tableau {
  Basis basis;
  Matrix<RationalFunction> inverse;      // B^{-1}
  std::vector<RationalFunction> x_B;     // B^{-1} b, in basis order
  std::vector<RationalFunction> duals;   // c_B^T B^{-1}, one per LP row
  RationalFunction objective;

  // Position of a basic column inside basis.columns.
  std::size_t position(int col) const {
    auto it = std::lower_bound(basis.columns.begin(), basis.columns.end(), col);
    if (it == basis.columns.end() || *it != col) throw ValidationError("column is not basic");
    return static_cast<std::size_t>(it - basis.columns.begin());
  }
};

inline Tableau make_tableau(const LpModel& m, const Basis& B) {
  Tableau t{B, basis_inverse(m, B), {}, {}, {}};
  t.x_B = mat_vec(t.inverse, m.b);
  t.duals.assign(m.rows(), RationalFunction(0));
  for (std::size_t k = 0; k < B.columns.size(); ++k) {
    const RationalFunction& ck = m.c[B.columns[k]];
    if (ck.is_zero()) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) t.duals[r] += ck * t.inverse(k, r);
  }
  for (std::size_t k = 0; k < B.columns.size(); ++k)
    if (!m.c[B.columns[k]].is_zero()) t.objective += m.c[B.columns[k]] * t.x_B[k];
  return t;
}

// c_j - y^T A_j from the tableau.
inline RationalFunction reduced_cost_tableau(const LpModel& m, const Tableau& t, int col) {
  RationalFunction d = m.c[col];
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!t.duals[r].is_zero() && !m.A(r, col).is_zero()) d -= t.duals[r] * m.A(r, col);
  return d;
}

// Column of -B^{-1} A_j, in basis order.
inline std::vector<RationalFunction> tableau_column(const LpModel& m, const Tableau& t, int col) {
  std::vector<RationalFunction> u = mat_vec(t.inverse, column(m, col));
  for (auto& x : u) x = -x;
  return u;
}

// ---------------------------------------------------------------------------
// Closed forms in terms of walks^sigma.

inline void require_nonbasic(const LpModel& m, const Strategy& s, int e) {
  if (e < 0 || e >= static_cast<int>(m.edge_column.size()) || m.edge_column[e] < 0)
    throw ValidationError("edge " + std::to_string(e) + " has no LP column");
  for (int c : s.choices())
    if (c == e) throw ValidationError("edge " + std::to_string(e) + " is basic");
}

// H_{i,e} = t^{-w(e)} walks_{j2,i} - walks_{j1,i} for e = (j1, j2).
inline RationalFunction tableau_entry(const LpModel& m, const Arena& a, const WalkMatrix& walks,
                                      const Strategy& s, int i, int e) {
  require_nonbasic(m, s, e);
  const Edge& x = a.edge(e);
  return RationalFunction::walk_term(x.weight) * walks(x.head, i) - walks(x.tail, i);
}

// H_{1,e} = t^{-w(e)} walks_{j2,T} - walks_{j1,T}.
inline RationalFunction reduced_cost(const LpModel& m, const Arena& a, const WalkMatrix& walks,
                                     const Strategy& s, int e) {
  return tableau_entry(m, a, walks, s, m.sink_vertex, e);
}

inline RationalFunction reduced_cost(const LpModel& m, const Arena& a, const Strategy& s, int e) {
  return reduced_cost(m, a, walks_matrix(a, s), s, e);
}

struct BfsValues {
  std::vector<std::pair<int, RationalFunction>> x;  // (edge id, value), chosen edges by tail
  RationalFunction z;
};

// x_e = sum_v b_v walks_{v,j1}, z = sum_v b_v walks_{v,T}, v over LP rows.
inline BfsValues bfs_values(const LpModel& m, const Arena& a, const WalkMatrix& walks,
                            const Strategy& s) {
  auto weighted = [&](int target) {
    RationalFunction acc;
    for (std::size_t r = 0; r < m.rows(); ++r) acc += m.b[r] * walks(m.row_vertex[r], target);
    return acc;
  };
  BfsValues out;
  for (int v : a.choice_vertices()) out.x.emplace_back(s.choice(v), weighted(v));
  out.z = weighted(m.sink_vertex);
  return out;
}

inline BfsValues bfs_values(const LpModel& m, const Arena& a, const Strategy& s) {
  return bfs_values(m, a, walks_matrix(a, s), s);
}

// ---------------------------------------------------------------------------
// Simplex method over Q(t).

// A sign the algorithm relied on, kept so it can be re-checked at a concrete t.
struct SignDecision {
  RationalFunction value;
  int sign = 0;
  std::string what;
};

struct PivotResult {
  Basis basis;
  int leaving = -1;
};

// Minimum-ratio pivot. Appends the ratio-test signs to `decisions` if given.
inline PivotResult pivot(const LpModel& m, const Tableau& t, int entering,
                         std::vector<SignDecision>* decisions = nullptr) {
  if (t.basis.contains(entering)) throw ValidationError("entering column is already basic");
  const RationalFunction d = reduced_cost_tableau(m, t, entering);
  if (d.sign_at_infinity() >= 0)
    throw ValidationError("entering column " + m.column_name(entering) + " is not improving");
  const std::vector<RationalFunction> u = mat_vec(t.inverse, column(m, entering));
  std::optional<std::size_t> best;
  RationalFunction best_ratio;
  bool tie = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const int sg = u[k].sign_at_infinity();
    if (decisions && sg != 0) decisions->push_back({u[k], sg, "ratio-eligibility"});
    if (sg <= 0) continue;
    RationalFunction ratio = t.x_B[k] / u[k];
    if (!best) {
      best = k;
      best_ratio = std::move(ratio);
      continue;
    }
    const RationalFunction diff = ratio - best_ratio;
    const int cmp = diff.sign_at_infinity();
    if (decisions && cmp != 0) decisions->push_back({diff, cmp, "ratio-comparison"});
    if (cmp < 0) {
      best = k;
      best_ratio = std::move(ratio);
      tie = false;
    } else if (cmp == 0) {
      tie = true;
    }
  }
  if (!best) throw InternalError("unbounded ratio test on column " + m.column_name(entering));
  if (tie) throw InternalError("degenerate ratio test on column " + m.column_name(entering));
  PivotResult r;
  r.leaving = t.basis.columns[*best];
  std::vector<int> cols = t.basis.columns;
  cols[*best] = entering;
  r.basis = make_basis(std::move(cols));
  return r;
}

inline PivotResult pivot(const LpModel& m, const Basis& B, int entering) {
  return pivot(m, make_tableau(m, B), entering);
}

struct SimplexStep {
  Basis basis;
  std::optional<int> entering;
  std::optional<int> leaving;
  RationalFunction objective;
  std::vector<std::pair<int, RationalFunction>> reduced_costs;  // nonbasic columns
  std::vector<int> negative;  // edge ids of columns with negative reduced cost
};

struct SimplexTrace {
  std::vector<SimplexStep> steps;
  std::vector<SignDecision> decisions;

  std::size_t pivots() const { return steps.empty() ? 0 : steps.size() - 1; }
};

// Order of magnitude of an element: its leading exponent in t.
inline std::int64_t magnitude(const RationalFunction& x) { return x.degree_at_infinity(); }

// Runs the simplex method from a feasible basis. The entering column is
// chosen among negative reduced costs by the same rule protocol as strategy
// improvement. For "greatest" a column e = (j1, j2) scores
//   magnitude(y_{j1}) - magnitude(d_e + y_{j1}),
// the gap in order of magnitude between the dual price of the tail row and
// the part of the reduced cost contributed by the column itself.
inline SimplexTrace run_simplex(const LpModel& m, const Arena& a, const Basis& B0,
                                ImprovementRule rule, std::size_t max_steps = 1'000'000) {
  RuleSelector selector(rule);
  SimplexTrace trace;
  Tableau t = make_tableau(m, B0);
  for (std::size_t k = 0; k < t.x_B.size(); ++k) {
    const int sg = t.x_B[k].sign_at_infinity();
    if (sg < 0) throw PreconditionError("initial basis is infeasible");
  }
  for (std::size_t step = 0;; ++step) {
    if (step > max_steps) throw Error("simplex exceeded the step limit");
    SimplexStep st{t.basis, std::nullopt, std::nullopt, t.objective, {}, {}};
    for (std::size_t k = 0; k < t.x_B.size(); ++k)
      trace.decisions.push_back({t.x_B[k], t.x_B[k].sign_at_infinity(), "basic-value"});
    std::vector<int> candidates;
    std::vector<RationalFunction> candidate_costs;
    for (int col = 0; col < static_cast<int>(m.cols()); ++col) {
      if (t.basis.contains(col)) continue;
      RationalFunction d = reduced_cost_tableau(m, t, col);
      const int sg = d.sign_at_infinity();
      if (sg != 0) trace.decisions.push_back({d, sg, "reduced-cost " + m.column_name(col)});
      if (sg < 0) {
        if (col == m.z_column()) throw InternalError("z column priced out");
        candidates.push_back(m.column_edge[col]);
        candidate_costs.push_back(d);
      }
      st.reduced_costs.emplace_back(col, std::move(d));
    }
    st.negative = candidates;
    if (candidates.empty()) {
      trace.steps.push_back(std::move(st));
      return trace;
    }
    const int e = selector.select(std::span<const int>(candidates), [&](std::size_t i) {
      const RationalFunction& y = t.duals[m.vertex_row[a.edge(candidates[i]).tail]];
      return magnitude(y) - magnitude(candidate_costs[i] + y);
    });
    const int entering = m.edge_column[e];
    const PivotResult p = pivot(m, t, entering, &trace.decisions);
    if (p.leaving == m.z_column() || a.edge(m.column_edge[p.leaving]).tail != a.edge(e).tail)
      throw InternalError("leaving column " + m.column_name(p.leaving) +
                          " is not the current choice at the entering edge's tail");
    st.entering = entering;
    st.leaving = p.leaving;
    trace.steps.push_back(std::move(st));
    Tableau next = make_tableau(m, p.basis);
    const RationalFunction dz = next.objective - t.objective;
    trace.decisions.push_back({dz, dz.sign_at_infinity(), "objective-change"});
    if (dz.sign_at_infinity() >= 0) throw InternalError("objective did not decrease");
    t = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Export.

struct NumericLp {
  Matrix<BigRational> A;
  std::vector<BigRational> b;
  std::vector<BigRational> c;
  std::vector<int> row_vertex;
  std::vector<std::string> column_names;
};

// Every entry evaluated exactly at t = t0.
inline NumericLp instantiate_at(const LpModel& m, const BigInt& t0) {
  if (t0 < 2) throw PreconditionError("t0 must be at least 2");
  const BigRational t(t0);
  NumericLp out{Matrix<BigRational>(m.rows(), m.cols()), {}, {}, m.row_vertex, {}};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.A(r, c) = m.A(r, c).evaluate(t);
  for (const auto& x : m.b) out.b.push_back(x.evaluate(t));
  for (const auto& x : m.c) out.c.push_back(x.evaluate(t));
  for (int c = 0; c < static_cast<int>(m.cols()); ++c) out.column_names.push_back(m.column_name(c));
  return out;
}

inline void write_numeric_lp(std::ostream& os, const NumericLp& lp) {
  os << "min z\n";
  os << "columns:";
  for (const auto& n : lp.column_names) os << ' ' << n;
  os << '\n';
  for (std::size_t r = 0; r < lp.A.rows(); ++r) {
    os << "row " << lp.row_vertex[r] << ':';
    for (std::size_t c = 0; c < lp.A.cols(); ++c) os << ' ' << lp.A(r, c).get_str();
    os << " = " << lp.b[r].get_str() << '\n';
  }
}

// Same layout with every entry written as (num)/(den) in t.
inline void write_symbolic_lp(std::ostream& os, const LpModel& m) {
  os << "min z\n";
  os << "columns:";
  for (int c = 0; c < static_cast<int>(m.cols()); ++c) os << ' ' << m.column_name(c);
  os << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "row " << m.row_vertex[r] << ':';
    for (std::size_t c = 0; c < m.cols(); ++c) os << ' ' << m.A(r, c).reduced();
    os << " = " << m.b[r].reduced() << '\n';
  }
}

}  // namespace lsplp
