#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "redkit/cnf.hpp"
#include "redkit/error.hpp"
#include "redkit/formats.hpp"
#include "redkit/machine.hpp"

namespace redkit {

// Result of the reduction: the formula, the tableau-variable catalog, the
// per-group clause partition (in emission order), and the originating
// instance. Selector variables (nondeterministic choice, numbered after the
// catalog) are counted separately from the tableau variables.
struct ReductionOutput {
  CnfInstance formula;
  VarCatalog catalog;
  std::vector<std::pair<std::string, std::size_t>> group_counts;
  Machine machine;
  std::vector<Symbol> input;
  int p = 0;
  int selector_vars = 0;

  std::size_t group_count(const std::string& name) const {
    for (const auto& [n, c] : group_counts)
      if (n == name) return c;
    throw Error("unknown-group", "no clause group named " + name);
  }
};

struct TableauRow {
  StateId state;
  int head = 0;
  std::map<int, Symbol> tape;  // every cell of [-p, p+1], blanks included
};

// Decoded accepting computation: one machine snapshot per time step.
struct Tableau {
  int p = 0;
  std::vector<TableauRow> rows;  // rows.size() == p + 1
};

// ---------------------------------------------------------------------------
// Clause group emitters. All iterate coordinates in ascending order so the
// output is reproducible byte for byte.
// ---------------------------------------------------------------------------

namespace detail {

// At-least-one over `vars` followed by all pairwise exclusions.
inline void exactly_one(std::vector<Clause>& out, const std::vector<int>& vars) {
  std::vector<Literal> alo;
  alo.reserve(vars.size());
  for (int v : vars) alo.push_back(pos(v));
  out.push_back(Clause(std::move(alo)));
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      out.push_back(Clause{neg(vars[a]), neg(vars[b])});
}

}  // namespace detail

// G1: exactly one state per time step.
inline std::vector<Clause> emit_g1(const VarCatalog& cat) {
  std::vector<Clause> out;
  for (int i = 0; i <= cat.p(); ++i) {
    std::vector<int> vars;
    for (int k = 0; k <= cat.r(); ++k) vars.push_back(cat.var_q(i, k));
    detail::exactly_one(out, vars);
  }
  return out;
}

// G2: exactly one head position per time step.
inline std::vector<Clause> emit_g2(const VarCatalog& cat) {
  std::vector<Clause> out;
  for (int i = 0; i <= cat.p(); ++i) {
    std::vector<int> vars;
    for (int j = -cat.p(); j <= cat.p() + 1; ++j) vars.push_back(cat.var_h(i, j));
    detail::exactly_one(out, vars);
  }
  return out;
}

// G3: exactly one symbol per cell per time step.
inline std::vector<Clause> emit_g3(const VarCatalog& cat) {
  std::vector<Clause> out;
  for (int i = 0; i <= cat.p(); ++i)
    for (int j = -cat.p(); j <= cat.p() + 1; ++j) {
      std::vector<int> vars;
      for (int k = 0; k <= cat.v(); ++k) vars.push_back(cat.var_s(i, j, k));
      detail::exactly_one(out, vars);
    }
  return out;
}

// G4: initial configuration units. Input occupies cells 1..n; every other
// cell of the window, including cell 0, is blank.
inline std::vector<Clause> emit_g4(const VarCatalog& cat, const std::vector<Symbol>& input) {
  std::vector<Clause> out;
  const int n = static_cast<int>(input.size());
  out.push_back(Clause{pos(cat.var_q(0, 0))});
  out.push_back(Clause{pos(cat.var_h(0, 1))});
  for (int j = 1; j <= n; ++j)
    out.push_back(Clause{pos(cat.var_s(0, j, static_cast<int>(input[j - 1].index)))});
  for (int j = -cat.p(); j <= 0; ++j) out.push_back(Clause{pos(cat.var_s(0, j, 0))});
  for (int j = n + 1; j <= cat.p() + 1; ++j) out.push_back(Clause{pos(cat.var_s(0, j, 0))});
  return out;
}

// G5: the accepting state (index 1) holds at time p.
inline std::vector<Clause> emit_g5(const VarCatalog& cat) {
  return {Clause{pos(cat.var_q(cat.p(), 1))}};
}

// G6 subgroup 1: cells away from the head keep their symbol.
inline std::vector<Clause> emit_g6a(const VarCatalog& cat) {
  std::vector<Clause> out;
  for (int i = 0; i < cat.p(); ++i)
    for (int j = -cat.p(); j <= cat.p() + 1; ++j)
      for (int l = 0; l <= cat.v(); ++l)
        out.push_back(Clause{neg(cat.var_s(i, j, l)), pos(cat.var_h(i, j)),
                             pos(cat.var_s(i + 1, j, l))});
  return out;
}

struct G6bResult {
  std::vector<Clause> clauses;
  int selector_vars = 0;  // numbered catalog.total()+1 .. catalog.total()+selector_vars
};

// G6 subgroup 2: the head cell evolves by the transition relation. Halting
// states self-loop. Undefined pairs and moves off the window are blocked.
// Nondeterministic entries pick a branch through selector variables
// D[i, (k,l), t] with an exactly-one block per guarded (i, k, l).
inline G6bResult emit_g6b(const VarCatalog& cat, const Machine& m) {
  G6bResult res;
  const int p = cat.p();
  const int lo = -p;
  const int hi = p + 1;

  // (k, l) entries with more than one choice, in ascending order.
  std::vector<std::pair<int, int>> nondet;
  for (int k = 0; k <= cat.r(); ++k)
    for (int l = 0; l <= cat.v(); ++l) {
      const auto* acts = m.choices(StateId{static_cast<std::size_t>(k)},
                                   Symbol{static_cast<std::size_t>(l)});
      if (acts && acts->size() > 1) nondet.emplace_back(k, l);
    }

  int next_selector = cat.total();
  // selector_var[(i, entry index, t)] allocated per time step below.
  std::map<std::pair<int, std::size_t>, std::vector<int>> selectors;
  for (int i = 0; i < p; ++i)
    for (std::size_t e = 0; e < nondet.size(); ++e) {
      const auto* acts = m.choices(StateId{static_cast<std::size_t>(nondet[e].first)},
                                   Symbol{static_cast<std::size_t>(nondet[e].second)});
      std::vector<int> vars;
      for (std::size_t t = 0; t < acts->size(); ++t) vars.push_back(++next_selector);
      selectors[{i, e}] = std::move(vars);
    }
  res.selector_vars = next_selector - cat.total();

  auto emit_triple = [&](std::vector<Clause>& out, int i, int j, int k, int l,
                         const std::vector<Literal>& guard, int kp, int lp, int move) {
    const int jp = j + move;
    if (jp < lo || jp > hi) {
      out.push_back(Clause(guard));  // nowhere to move: block the combination
      return;
    }
    auto with = [&guard](Literal consequent) {
      std::vector<Literal> lits = guard;
      lits.push_back(consequent);
      return Clause(std::move(lits));
    };
    out.push_back(with(pos(cat.var_h(i + 1, jp))));
    out.push_back(with(pos(cat.var_q(i + 1, kp))));
    out.push_back(with(pos(cat.var_s(i + 1, j, lp))));
  };

  for (int i = 0; i < p; ++i) {
    // Exactly-one selector block per nondeterministic entry at this step.
    for (std::size_t e = 0; e < nondet.size(); ++e)
      detail::exactly_one(res.clauses, selectors.at({i, e}));

    for (int j = lo; j <= hi; ++j)
      for (int k = 0; k <= cat.r(); ++k)
        for (int l = 0; l <= cat.v(); ++l) {
          const std::vector<Literal> guard = {neg(cat.var_h(i, j)), neg(cat.var_q(i, k)),
                                              neg(cat.var_s(i, j, l))};
          const StateId state{static_cast<std::size_t>(k)};
          const Symbol sym{static_cast<std::size_t>(l)};
          if (m.is_halting(state)) {
            emit_triple(res.clauses, i, j, k, l, guard, k, l, 0);
            continue;
          }
          const auto* acts = m.choices(state, sym);
          if (!acts) {
            res.clauses.push_back(Clause(guard));  // stuck machine never accepts
            continue;
          }
          if (acts->size() == 1) {
            const Action& a = acts->front();
            emit_triple(res.clauses, i, j, k, l, guard, static_cast<int>(a.next.index),
                        static_cast<int>(a.write.index), delta(a.move));
            continue;
          }
          const std::size_t e =
              std::find(nondet.begin(), nondet.end(), std::make_pair(k, l)) - nondet.begin();
          const std::vector<int>& sel = selectors.at({i, e});
          for (std::size_t t = 0; t < acts->size(); ++t) {
            const Action& a = (*acts)[t];
            std::vector<Literal> guarded = {neg(sel[t])};
            guarded.insert(guarded.end(), guard.begin(), guard.end());
            emit_triple(res.clauses, i, j, k, l, guarded, static_cast<int>(a.next.index),
                        static_cast<int>(a.write.index), delta(a.move));
          }
        }
  }
  return res;
}

// ---------------------------------------------------------------------------
// The reduction
// ---------------------------------------------------------------------------

// Compiles "does m accept input within p steps?" into CNF. Requires the
// canonical index convention: blank = 0, initial = 0, accept = 1, reject = 2.
// The formula is satisfiable iff accepts_within(m, input, p).
inline ReductionOutput reduce(const Machine& m, const std::vector<Symbol>& input, int p) {
  m.validate();
  if (p < 1) throw Error("precondition", "reduce requires p >= 1");
  if (static_cast<int>(input.size()) > p)
    throw Error("input-too-long", "input length " + std::to_string(input.size()) +
                                      " exceeds p = " + std::to_string(p));
  for (Symbol s : input)
    if (!m.in_input_alphabet(s))
      throw Error("alphabet-mismatch", "input symbol '" + m.symbol_name(s) +
                                           "' is not in the input alphabet");
  if (m.initial.index != 0 || m.accept.index != 1 || m.reject.index != 2)
    throw Error("canonical-form",
                "reduce requires state indices initial=0, accept=1, reject=2");

  ReductionOutput out;
  out.machine = m;
  out.input = input;
  out.p = p;
  out.catalog = VarCatalog::build(p, static_cast<int>(m.num_states()) - 1,
                                  static_cast<int>(m.num_symbols()) - 1);

  auto add_group = [&out](const std::string& name, std::vector<Clause> clauses) {
    out.group_counts.emplace_back(name, clauses.size());
    for (Clause& c : clauses) out.formula.add(std::move(c));
  };
  add_group("G1", emit_g1(out.catalog));
  add_group("G2", emit_g2(out.catalog));
  add_group("G3", emit_g3(out.catalog));
  add_group("G4", emit_g4(out.catalog, input));
  add_group("G5", emit_g5(out.catalog));
  add_group("G6a", emit_g6a(out.catalog));
  G6bResult g6b = emit_g6b(out.catalog, m);
  out.selector_vars = g6b.selector_vars;
  add_group("G6b", std::move(g6b.clauses));

  out.formula.nvars = out.catalog.total() + out.selector_vars;
  return out;
}

// ---------------------------------------------------------------------------
// Decoding and verification
// ---------------------------------------------------------------------------

// Reads the tableau out of a model. The exactly-one groups guarantee
// uniqueness; a multiplicity violation indicates a reducer bug.
inline Tableau decode(const Assignment& a, const ReductionOutput& out) {
  if (!evaluate(out.formula, a))
    throw Error("not-a-model", "assignment does not satisfy the formula");
  const VarCatalog& cat = out.catalog;
  Tableau t;
  t.p = out.p;
  for (int i = 0; i <= cat.p(); ++i) {
    TableauRow row;
    int found_state = -1;
    for (int k = 0; k <= cat.r(); ++k)
      if (a.value(cat.var_q(i, k))) {
        if (found_state >= 0)
          throw Error("multiplicity-violation", "two states true at time " + std::to_string(i));
        found_state = k;
      }
    if (found_state < 0)
      throw Error("multiplicity-violation", "no state true at time " + std::to_string(i));
    row.state = StateId{static_cast<std::size_t>(found_state)};

    int found_head = cat.p() + 2;
    bool head_seen = false;
    for (int j = -cat.p(); j <= cat.p() + 1; ++j)
      if (a.value(cat.var_h(i, j))) {
        if (head_seen)
          throw Error("multiplicity-violation", "two head cells true at time " + std::to_string(i));
        head_seen = true;
        found_head = j;
      }
    if (!head_seen)
      throw Error("multiplicity-violation", "no head cell true at time " + std::to_string(i));
    row.head = found_head;

    for (int j = -cat.p(); j <= cat.p() + 1; ++j) {
      int found_sym = -1;
      for (int k = 0; k <= cat.v(); ++k)
        if (a.value(cat.var_s(i, j, k))) {
          if (found_sym >= 0)
            throw Error("multiplicity-violation",
                        "two symbols true in cell " + std::to_string(j));
          found_sym = k;
        }
      if (found_sym < 0)
        throw Error("multiplicity-violation", "no symbol true in cell " + std::to_string(j));
      row.tape[j] = Symbol{static_cast<std::size_t>(found_sym)};
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct TableauCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Independent semantic check of a decoded tableau: the first row is the
// initial configuration of the input, consecutive rows follow the step
// relation (or the halting self-loop), and the final row accepts.
inline TableauCheck verify_tableau(const Tableau& t, const Machine& m,
                                   const std::vector<Symbol>& input) {
  if (t.rows.empty()) return {false, "empty-tableau"};
  const TableauRow& first = t.rows.front();
  if (first.state != m.initial) return {false, "initial-mismatch"};
  if (first.head != 1) return {false, "initial-mismatch"};
  for (const auto& [cell, sym] : first.tape) {
    Symbol expected = kBlank;
    if (cell >= 1 && cell <= static_cast<int>(input.size()))
      expected = input[static_cast<std::size_t>(cell) - 1];
    if (sym != expected) return {false, "initial-mismatch"};
  }

  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    const TableauRow& cur = t.rows[i];
    const TableauRow& nxt = t.rows[i + 1];
    if (m.is_halting(cur.state)) {
      if (nxt.state != cur.state || nxt.head != cur.head || nxt.tape != cur.tape)
        return {false, "illegal-step"};
      continue;
    }
    auto scanned_it = cur.tape.find(cur.head);
    if (scanned_it == cur.tape.end()) return {false, "illegal-step"};
    const auto* actions = m.choices(cur.state, scanned_it->second);
    if (!actions) return {false, "illegal-step"};
    bool matched = false;
    for (const Action& a : *actions) {
      if (nxt.state != a.next || nxt.head != cur.head + delta(a.move)) continue;
      std::map<int, Symbol> expected = cur.tape;
      expected[cur.head] = a.write;
      if (nxt.tape == expected) {
        matched = true;
        break;
      }
    }
    if (!matched) return {false, "illegal-step"};
  }
  if (t.rows.back().state != m.accept) return {false, "final-not-accepting"};
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Size reporting
// ---------------------------------------------------------------------------

struct SizeReport {
  int tableau_vars = 0;    // |U|
  int selector_vars = 0;
  int total_vars = 0;
  std::size_t clause_total = 0;  // |C|
  std::vector<std::pair<std::string, std::size_t>> group_counts;
  std::uint64_t length_product = 0;  // |U| * |C|
};

inline SizeReport report_counts(const ReductionOutput& out) {
  SizeReport rep;
  rep.tableau_vars = out.catalog.total();
  rep.selector_vars = out.selector_vars;
  rep.total_vars = out.formula.nvars;
  rep.clause_total = out.formula.clauses.size();
  rep.group_counts = out.group_counts;
  rep.length_product =
      static_cast<std::uint64_t>(rep.tableau_vars) * static_cast<std::uint64_t>(rep.clause_total);
  return rep;
}

inline std::string to_string(const SizeReport& rep) {
  std::string s = "vars tableau=" + std::to_string(rep.tableau_vars) +
                  " selectors=" + std::to_string(rep.selector_vars) +
                  " total=" + std::to_string(rep.total_vars) + "\n";
  s += "clauses";
  for (const auto& [name, count] : rep.group_counts)
    s += " " + name + "=" + std::to_string(count);
  s += " total=" + std::to_string(rep.clause_total) + "\n";
  s += "length " + std::to_string(rep.tableau_vars) + "*" + std::to_string(rep.clause_total) +
       "=" + std::to_string(rep.length_product) + "\n";
  return s;
}

// DIMACS text with `c group <name> clauses <a>..<b>` comments delimiting the
// clause groups. parse_dimacs skips the comments, so round-tripping yields
// the same clause list.
inline std::string emit_dimacs_grouped(const ReductionOutput& out) {
  out.formula.validate();
  std::string s = "p cnf " + std::to_string(out.formula.nvars) + " " +
                  std::to_string(out.formula.clauses.size()) + "\n";
  std::size_t next = 0;
  for (const auto& [name, count] : out.group_counts) {
    s += "c group " + name + " clauses " + std::to_string(next + 1) + ".." +
         std::to_string(next + count) + "\n";
    for (std::size_t c = next; c < next + count; ++c)
      append_clause_line(s, out.formula.clauses[c]);
    next += count;
  }
  return s;
}

}  // namespace redkit
