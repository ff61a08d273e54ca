#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "redkit/cnf.hpp"
#include "redkit/error.hpp"

namespace redkit {

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

struct SolveResult {
  bool sat = false;
  std::optional<Assignment> model;  // present iff sat
  SolveStats stats;
};

namespace detail {

// DPLL with unit propagation over two watched literals and chronological
// backtracking. Branching picks the lowest-numbered unassigned variable and
// tries false first, so the result is deterministic and the all-false model
// is canonical for unconstrained formulas.
class DpllSolver {
public:
  explicit DpllSolver(const CnfInstance& f) : nvars_(f.nvars), value_(f.nvars + 1, 0) {
    f.validate();
    clauses_.reserve(f.clauses.size());
    for (const Clause& c : f.clauses) {
      std::vector<int> lits;
      lits.reserve(c.literals.size());
      for (const Literal& l : c.literals) lits.push_back(to_dimacs(l));
      clauses_.push_back(std::move(lits));
    }
    watches_.resize(2 * static_cast<std::size_t>(nvars_) + 2);
  }

  SolveResult solve() {
    SolveResult res;
    // Install watches; empty clauses fail immediately, units seed the queue.
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      const auto& c = clauses_[ci];
      if (c.empty()) {
        res.sat = false;
        return res;
      }
      if (c.size() == 1) {
        if (!enqueue(c[0])) {
          res.sat = false;
          return res;
        }
        continue;
      }
      watches_[widx(c[0])].push_back(ci);
      watches_[widx(c[1])].push_back(ci);
    }

    for (;;) {
      const bool consistent = propagate();
#ifndef NDEBUG
      // Propagation fixpoint: no clause may be unit under the partial assignment.
      if (consistent) assert(no_units_pending());
#endif
      if (!consistent) {
        ++stats_.conflicts;
        while (!decisions_.empty() && decisions_.back().flipped) {
          undo_to(decisions_.back().mark);
          decisions_.pop_back();
        }
        if (decisions_.empty()) {
          res.sat = false;
          res.stats = stats_;
          return res;
        }
        Frame& frame = decisions_.back();
        undo_to(frame.mark);
        frame.flipped = true;
        enqueue(frame.var);  // second phase: true
        continue;
      }
      int v = next_unassigned();
      if (v == 0) {
        res.sat = true;
        res.stats = stats_;
        Assignment model(nvars_);
        for (int var = 1; var <= nvars_; ++var) model.set(var, value_[var] > 0);
        res.model = std::move(model);
        return res;
      }
      ++stats_.decisions;
      decisions_.push_back({trail_.size(), v, false});
      enqueue(-v);  // first phase: false
    }
  }

private:
  struct Frame {
    std::size_t mark;
    int var;
    bool flipped;
  };

  static std::size_t widx(int lit) {
    return 2 * static_cast<std::size_t>(lit < 0 ? -lit : lit) + (lit < 0 ? 1 : 0);
  }

  int val(int lit) const {
    int v = value_[lit < 0 ? -lit : lit];
    return lit < 0 ? -v : v;
  }

  bool enqueue(int lit) {
    int v = val(lit);
    if (v > 0) return true;
    if (v < 0) return false;
    value_[lit < 0 ? -lit : lit] = lit < 0 ? -1 : 1;
    trail_.push_back(lit);
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int lit = trail_.back();
      trail_.pop_back();
      value_[lit < 0 ? -lit : lit] = 0;
    }
    if (qhead_ > mark) qhead_ = mark;
  }

  // Returns false on conflict.
  bool propagate() {
    while (qhead_ < trail_.size()) {
      const int lit = trail_[qhead_++];
      const int false_lit = -lit;
      auto& watch_list = watches_[widx(false_lit)];
      std::size_t kept = 0;
      bool conflict = false;
      for (std::size_t wi = 0; wi < watch_list.size(); ++wi) {
        const std::size_t ci = watch_list[wi];
        auto& c = clauses_[ci];
        if (conflict) {
          watch_list[kept++] = ci;
          continue;
        }
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (val(c[0]) > 0) {  // already satisfied
          watch_list[kept++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (val(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[widx(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        watch_list[kept++] = ci;  // keep watching false_lit
        if (val(c[0]) < 0) {
          conflict = true;  // all literals false
          continue;
        }
        ++stats_.propagations;
        enqueue(c[0]);  // unit
      }
      watch_list.resize(kept);
      if (conflict) return false;
    }
    return true;
  }

  int next_unassigned() const {
    for (int v = 1; v <= nvars_; ++v)
      if (value_[v] == 0) return v;
    return 0;
  }

#ifndef NDEBUG
  bool no_units_pending() const {
    for (const auto& c : clauses_) {
      bool sat = false;
      int unassigned = 0;
      for (int lit : c) {
        const int v = val(lit);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0) ++unassigned;
      }
      if (!sat && unassigned == 1) return false;
    }
    return true;
  }
#endif

  int nvars_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<int8_t> value_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  std::vector<Frame> decisions_;
  SolveStats stats_;
};

}  // namespace detail

// Complete, deterministic SAT decision with model output.
inline SolveResult solve(const CnfInstance& f) { return detail::DpllSolver(f).solve(); }

// Exhaustive truth-table oracle for cross-checking at small scale.
inline SolveResult brute_force(const CnfInstance& f) {
  if (f.nvars > 24)
    throw Error("too-many-variables", "brute_force is guarded at 24 variables");
  f.validate();
  SolveResult res;
  const std::uint64_t limit = std::uint64_t{1} << f.nvars;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    Assignment a(f.nvars);
    for (int var = 1; var <= f.nvars; ++var) a.set(var, (bits >> (var - 1)) & 1);
    if (evaluate(f, a)) {
      res.sat = true;
      res.model = std::move(a);
      return res;
    }
  }
  res.sat = false;
  return res;
}

// The NP certificate verifier: linear-time model check.
inline bool check_model(const CnfInstance& f, const Assignment& a) { return evaluate(f, a); }

}  // namespace redkit
