#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redkit/error.hpp"

namespace redkit {

// Index into a machine's tape alphabet. Index 0 is always the blank.
struct Symbol {
  std::size_t index = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

inline constexpr Symbol kBlank{0};

// Index into a machine's state list.
struct StateId {
  std::size_t index = 0;
  friend auto operator<=>(const StateId&, const StateId&) = default;
};

enum class Move : int { left = -1, stay = 0, right = +1 };

inline int delta(Move m) { return static_cast<int>(m); }

// One transition target: successor state, symbol written, head displacement.
struct Action {
  StateId next;
  Symbol write;
  Move move = Move::stay;
  friend auto operator<=>(const Action&, const Action&) = default;
};

// A (possibly nondeterministic) Turing machine. Transition sets with more
// than one action express nondeterministic choice. Halting states (accept,
// reject) never have stored transitions; the halting self-loop is synthesized
// by step() and by the reducer.
struct Machine {
  std::vector<std::string> tape_alphabet;  // names; index 0 is the blank
  std::vector<std::string> states;         // names
  std::vector<Symbol> input_alphabet;      // subset of the tape alphabet, never the blank
  StateId initial;
  StateId accept;
  StateId reject;
  std::map<std::pair<StateId, Symbol>, std::vector<Action>> transitions;

  friend bool operator==(const Machine&, const Machine&) = default;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_symbols() const { return tape_alphabet.size(); }

  bool is_halting(StateId q) const { return q == accept || q == reject; }

  const std::string& state_name(StateId q) const { return states.at(q.index); }
  const std::string& symbol_name(Symbol s) const { return tape_alphabet.at(s.index); }

  std::optional<StateId> find_state(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return StateId{i};
    return std::nullopt;
  }

  std::optional<Symbol> find_symbol(std::string_view name) const {
    for (std::size_t i = 0; i < tape_alphabet.size(); ++i)
      if (tape_alphabet[i] == name) return Symbol{i};
    return std::nullopt;
  }

  bool in_input_alphabet(Symbol s) const {
    return std::find(input_alphabet.begin(), input_alphabet.end(), s) != input_alphabet.end();
  }

  // Returns the stored actions for (state, symbol), or nullptr if none.
  const std::vector<Action>* choices(StateId q, Symbol s) const {
    auto it = transitions.find({q, s});
    return it == transitions.end() ? nullptr : &it->second;
  }

  // Appends an action, keeping transition sets duplicate-free.
  void add_transition(StateId from, Symbol read, Action a) {
    auto& set = transitions[{from, read}];
    if (std::find(set.begin(), set.end(), a) == set.end()) set.push_back(a);
  }

  bool deterministic() const {
    for (const auto& [key, actions] : transitions)
      if (actions.size() != 1) return false;
    return true;
  }

  // Checks the structural invariants; throws on violation.
  void validate() const {
    if (tape_alphabet.empty()) throw Error("invalid-machine", "empty tape alphabet");
    if (states.empty()) throw Error("invalid-machine", "empty state list");
    if (accept == reject) throw Error("invalid-machine", "accept and reject must differ");
    if (initial.index >= states.size() || accept.index >= states.size() ||
        reject.index >= states.size())
      throw Error("invalid-machine", "state index out of range");
    for (Symbol s : input_alphabet) {
      if (s.index >= tape_alphabet.size())
        throw Error("invalid-machine", "input symbol out of range");
      if (s == kBlank)
        throw Error("blank-in-input-alphabet", "the blank may not be an input symbol");
    }
    for (const auto& [key, actions] : transitions) {
      if (actions.empty()) throw Error("invalid-machine", "empty transition set");
      if (is_halting(key.first))
        throw Error("invalid-machine",
                    "halting state " + state_name(key.first) + " has outgoing transitions");
      if (key.first.index >= states.size() || key.second.index >= tape_alphabet.size())
        throw Error("invalid-machine", "transition key out of range");
      for (const Action& a : actions)
        if (a.next.index >= states.size() || a.write.index >= tape_alphabet.size())
          throw Error("invalid-machine", "transition target out of range");
    }
  }
};

// One instantaneous description. The tape map is sparse and canonical: blanks
// are never stored, so equal configurations have identical maps.
struct Configuration {
  std::map<int, Symbol> tape;
  int head = 0;
  StateId state;
  std::size_t time = 0;

  Symbol read(int cell) const {
    auto it = tape.find(cell);
    return it == tape.end() ? kBlank : it->second;
  }

  void write(int cell, Symbol s) {
    if (s == kBlank)
      tape.erase(cell);
    else
      tape[cell] = s;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Snapshot ordering that ignores the time stamp; used for visited sets.
struct SnapshotLess {
  bool operator()(const Configuration& a, const Configuration& b) const {
    if (a.state != b.state) return a.state < b.state;
    if (a.head != b.head) return a.head < b.head;
    return a.tape < b.tape;
  }
};

enum class Verdict { accepted, rejected, timeout };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accepted: return "accepted";
    case Verdict::rejected: return "rejected";
    default: return "timeout";
  }
}

struct RunResult {
  Verdict verdict = Verdict::timeout;
  std::vector<Configuration> trace;
  int leftmost_visited = 0;
};

// Maps a string of single-character symbol names to input symbols.
inline std::vector<Symbol> to_input(const Machine& m, std::string_view text) {
  std::vector<Symbol> word;
  for (char ch : text) {
    auto s = m.find_symbol(std::string_view(&ch, 1));
    if (!s) throw Error("unknown-symbol", std::string("no tape symbol named '") + ch + "'");
    if (!m.in_input_alphabet(*s))
      throw Error("alphabet-mismatch",
                  "symbol '" + m.symbol_name(*s) + "' is not in the input alphabet");
    word.push_back(*s);
  }
  return word;
}

// Input occupies cells 1..n, the head starts at cell 1.
inline Configuration initial_configuration(const Machine& m, const std::vector<Symbol>& input) {
  Configuration c;
  c.state = m.initial;
  c.head = 1;
  c.time = 0;
  for (std::size_t i = 0; i < input.size(); ++i) c.write(static_cast<int>(i) + 1, input[i]);
  return c;
}

// All configurations reachable in one step. Halting states self-loop.
inline std::vector<Configuration> step(const Machine& m, const Configuration& c) {
  if (m.is_halting(c.state)) {
    Configuration n = c;
    ++n.time;
    return {n};
  }
  const auto* actions = m.choices(c.state, c.read(c.head));
  if (!actions)
    throw Error("undefined-transition", "no transition for (" + m.state_name(c.state) + ", " +
                                            m.symbol_name(c.read(c.head)) + ")");
  std::vector<Configuration> out;
  out.reserve(actions->size());
  for (const Action& a : *actions) {
    Configuration n = c;
    n.write(c.head, a.write);
    n.head += delta(a.move);
    n.state = a.next;
    ++n.time;
    out.push_back(std::move(n));
  }
  return out;
}

// Deterministic run from an arbitrary starting configuration. Stops at the
// first halting state entered, or reports timeout after max_steps steps.
inline RunResult run_from(const Machine& m, Configuration c, std::size_t max_steps) {
  if (!m.deterministic())
    throw Error("nondeterministic-machine", "run requires a deterministic machine");
  RunResult r;
  std::size_t start_time = c.time;
  r.trace.push_back(c);
  while (true) {
    if (m.is_halting(c.state)) {
      r.verdict = c.state == m.accept ? Verdict::accepted : Verdict::rejected;
      break;
    }
    if (c.time - start_time >= max_steps) {
      r.verdict = Verdict::timeout;
      break;
    }
    c = step(m, c).front();
    r.trace.push_back(c);
  }
  r.leftmost_visited = r.trace.front().head;
  for (const Configuration& t : r.trace) r.leftmost_visited = std::min(r.leftmost_visited, t.head);
  return r;
}

inline RunResult run(const Machine& m, const std::vector<Symbol>& input, std::size_t max_steps) {
  return run_from(m, initial_configuration(m, input), max_steps);
}

// True iff some computation branch reaches the accept state within p steps
// without the head ever leaving cells [-p, p+1]. Exhaustive breadth-first
// search over the step relation; branches that leave the cell range or get
// stuck are pruned as non-accepting.
inline bool accepts_within(const Machine& m, const std::vector<Symbol>& input, std::size_t p) {
  if (p < 1) throw Error("precondition", "accepts_within requires p >= 1");
  const int lo = -static_cast<int>(p);
  const int hi = static_cast<int>(p) + 1;

  Configuration start = initial_configuration(m, input);
  if (start.state == m.accept) return true;

  std::set<Configuration, SnapshotLess> seen;
  std::deque<Configuration> queue;
  seen.insert(start);
  queue.push_back(std::move(start));

  while (!queue.empty()) {
    Configuration c = std::move(queue.front());
    queue.pop_front();
    if (c.time >= p) continue;          // step budget exhausted on this branch
    if (m.is_halting(c.state)) continue;  // reject self-loop can never accept
    const auto* actions = m.choices(c.state, c.read(c.head));
    if (!actions) continue;  // stuck branch
    for (const Action& a : *actions) {
      Configuration n = c;
      n.write(c.head, a.write);
      n.head += delta(a.move);
      n.state = a.next;
      ++n.time;
      if (n.head < lo || n.head > hi) continue;  // head left the tableau window
      if (n.state == m.accept) return true;
      if (seen.insert(n).second) queue.push_back(std::move(n));
    }
  }
  return false;
}

// Rewrites the machine so that every transition either prints in place
// (move == stay) or moves without printing (write == scanned). Combined
// print-and-move transitions are split through one fresh state each, so each
// original step becomes at most two steps of the result.
inline Machine split_instructions(const Machine& m) {
  Machine out = m;
  out.transitions.clear();

  auto fresh_state = [&out](std::string base) {
    while (std::find(out.states.begin(), out.states.end(), base) != out.states.end())
      base += "_";
    out.states.push_back(base);
    return StateId{out.states.size() - 1};
  };

  for (const auto& [key, actions] : m.transitions) {
    for (std::size_t idx = 0; idx < actions.size(); ++idx) {
      const Action& a = actions[idx];
      if (a.move == Move::stay || a.write == key.second) {
        out.add_transition(key.first, key.second, a);
        continue;
      }
      std::string base = m.state_name(key.first) + "_" + m.symbol_name(key.second) + "_mv";
      if (idx > 0) base += std::to_string(idx);
      StateId w = fresh_state(std::move(base));
      out.add_transition(key.first, key.second, Action{w, a.write, Move::stay});
      out.add_transition(w, a.write, Action{a.next, a.write, a.move});
    }
  }
  return out;
}

}  // namespace redkit
