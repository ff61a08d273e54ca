#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "redkit/error.hpp"

namespace redkit {

// A variable (>= 1) or its negation.
struct Literal {
  int var = 1;
  bool negated = false;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(int var) { return Literal{var, false}; }
inline Literal neg(int var) { return Literal{var, true}; }

// Signed-decimal DIMACS form.
inline int to_dimacs(Literal l) { return l.negated ? -l.var : l.var; }
inline Literal from_dimacs(int lit) { return lit < 0 ? Literal{-lit, true} : Literal{lit, false}; }

// Disjunction of literals. Construction merges duplicate literals (stable,
// first occurrence wins); a clause containing both x and ¬x is kept as-is.
// An empty clause is representable (it is unsatisfiable) but never produced
// by the reducer or the catalog builders.
struct Clause {
  std::vector<Literal> literals;

  Clause() = default;
  explicit Clause(std::vector<Literal> lits) {
    for (const Literal& l : lits)
      if (std::find(literals.begin(), literals.end(), l) == literals.end()) literals.push_back(l);
  }
  Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfInstance {
  int nvars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;

  void add(Clause c) { clauses.push_back(std::move(c)); }

  void validate() const {
    for (const Clause& c : clauses)
      for (const Literal& l : c.literals)
        if (l.var < 1 || l.var > nvars)
          throw Error("literal-out-of-range", "variable " + std::to_string(l.var) +
                                                  " outside 1.." + std::to_string(nvars));
  }
};

// Total truth assignment over variables 1..nvars. Defaults to all-false.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(int nvars) : values_(static_cast<std::size_t>(nvars), 0) {}

  int nvars() const { return static_cast<int>(values_.size()); }

  bool value(int var) const { return values_.at(static_cast<std::size_t>(var) - 1) != 0; }
  void set(int var, bool v) { values_.at(static_cast<std::size_t>(var) - 1) = v ? 1 : 0; }

  bool value(Literal l) const { return l.negated ? !value(l.var) : value(l.var); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::vector<std::uint8_t> values_;
};

// True iff every clause contains at least one true literal. Linear time.
inline bool evaluate(const CnfInstance& f, const Assignment& a) {
  if (a.nvars() < f.nvars)
    throw Error("partial-assignment", "assignment covers " + std::to_string(a.nvars()) +
                                          " of " + std::to_string(f.nvars) + " variables");
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Literal& l : c.literals)
      if (a.value(l)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tableau variable catalog
// ---------------------------------------------------------------------------

enum class VarKind { Q, H, S };

// Tableau coordinate. Q: i = time, k = state index. H: i = time, j = cell.
// S: i = time, j = cell, k = symbol index. Unused fields stay 0.
struct Coord {
  VarKind kind = VarKind::Q;
  int i = 0;
  int j = 0;
  int k = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline Coord q_coord(int i, int k) { return Coord{VarKind::Q, i, 0, k}; }
inline Coord h_coord(int i, int j) { return Coord{VarKind::H, i, j, 0}; }
inline Coord s_coord(int i, int j, int k) { return Coord{VarKind::S, i, j, k}; }

// Bijection between tableau coordinates and solver variable numbers.
// build() numbers the canonical ranges 1..total in catalog order: all Q,
// then all H, then all S, each in lexicographic coordinate order.
class VarCatalog {
public:
  static VarCatalog build(int p, int r, int v) {
    if (p < 1 || r < 1 || v < 0) throw Error("precondition", "build_catalog requires p>=1, r>=1, v>=0");
    VarCatalog cat;
    cat.p_ = p;
    cat.r_ = r;
    cat.v_ = v;
    int next = 1;
    for (int i = 0; i <= p; ++i)
      for (int k = 0; k <= r; ++k) cat.insert(next++, q_coord(i, k));
    for (int i = 0; i <= p; ++i)
      for (int j = -p; j <= p + 1; ++j) cat.insert(next++, h_coord(i, j));
    for (int i = 0; i <= p; ++i)
      for (int j = -p; j <= p + 1; ++j)
        for (int k = 0; k <= v; ++k) cat.insert(next++, s_coord(i, j, k));
    return cat;
  }

  int total() const { return static_cast<int>(by_var_.size()); }

  // Coordinate ranges: 0 <= i <= p, -p <= j <= p+1, state index <= r,
  // symbol index <= v. Set by build(); recovered from the entries for
  // parsed catalogs via infer_dims().
  int p() const { return p_; }
  int r() const { return r_; }
  int v() const { return v_; }

  void infer_dims() {
    p_ = r_ = v_ = 0;
    for (const auto& [var, c] : by_var_) {
      p_ = std::max(p_, c.i);
      if (c.kind == VarKind::Q) r_ = std::max(r_, c.k);
      if (c.kind == VarKind::S) v_ = std::max(v_, c.k);
    }
  }

  bool contains(const Coord& c) const { return by_coord_.count(c) != 0; }

  int lookup(const Coord& c) const {
    auto it = by_coord_.find(c);
    if (it == by_coord_.end()) throw Error("unknown-coordinate", "coordinate not in catalog");
    return it->second;
  }

  int var_q(int i, int k) const { return lookup(q_coord(i, k)); }
  int var_h(int i, int j) const { return lookup(h_coord(i, j)); }
  int var_s(int i, int j, int k) const { return lookup(s_coord(i, j, k)); }

  const Coord& reverse_lookup(int var) const {
    auto it = by_var_.find(var);
    if (it == by_var_.end()) throw Error("unknown-variable", "variable not in catalog");
    return it->second;
  }

  // Used by the varmap parser; enforces the bijection.
  void insert(int var, const Coord& c) {
    if (var < 1) throw Error("malformed-line", "variable numbers start at 1");
    if (by_var_.count(var))
      throw Error("duplicate-varnum", "variable " + std::to_string(var) + " listed twice");
    if (by_coord_.count(c)) throw Error("duplicate-coordinate", "coordinate listed twice");
    by_var_.emplace(var, c);
    by_coord_.emplace(c, var);
  }

  const std::map<int, Coord>& entries() const { return by_var_; }

  friend bool operator==(const VarCatalog& a, const VarCatalog& b) {
    return a.by_var_ == b.by_var_;
  }

private:
  int p_ = 0, r_ = 0, v_ = 0;
  std::map<int, Coord> by_var_;
  std::map<Coord, int> by_coord_;
};

}  // namespace redkit
