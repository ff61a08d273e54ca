#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redkit/error.hpp"
#include "redkit/machine.hpp"

namespace redkit {

enum class GenKind { digit, state, terminator };

struct Generator {
  std::string name;
  GenKind kind = GenKind::digit;
};

// A word is a non-empty sequence of generator names. Using names (rather than
// indices) keeps words meaningful independent of any one presentation; the
// search engine converts to index form internally.
using Word = std::vector<std::string>;

inline std::string word_str(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

enum class RewriteDir { L2R, R2L };

// Two-sided relation lhs == rhs. The tag records which instruction schema
// produced it ("print", "left", "right", "pad"); it is an annotation and is
// not serialized, so equality ignores it.
struct Relation {
  Word lhs;
  Word rhs;
  std::string tag;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

// Finitely presented semigroup: generators plus two-sided relations.
// Generator kinds are annotations reconstructed by convention when parsing
// (the terminator is the generator literally named "v"); equality compares
// the serialized content only.
struct Presentation {
  std::vector<Generator> generators;
  std::vector<Relation> relations;

  std::optional<int> gen_index(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == name) return static_cast<int>(i);
    return std::nullopt;
  }

  int require_index(std::string_view name) const {
    auto i = gen_index(name);
    if (!i) throw Error("unknown-generator", "no generator named '" + std::string(name) + "'");
    return *i;
  }

  std::vector<int> to_indices(const Word& w) const {
    std::vector<int> out;
    out.reserve(w.size());
    for (const std::string& tok : w) out.push_back(require_index(tok));
    return out;
  }

  Word to_tokens(const std::vector<int>& iw) const {
    Word out;
    out.reserve(iw.size());
    for (int i : iw) out.push_back(generators.at(static_cast<std::size_t>(i)).name);
    return out;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    if (a.generators.size() != b.generators.size()) return false;
    for (std::size_t i = 0; i < a.generators.size(); ++i)
      if (a.generators[i].name != b.generators[i].name) return false;
    return a.relations == b.relations;
  }
};

inline int find_relation(const Presentation& p, const Word& lhs, const Word& rhs) {
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    if (p.relations[i].lhs == lhs && p.relations[i].rhs == rhs) return static_cast<int>(i);
  throw Error("unknown-relation", "presentation has no relation " + word_str(lhs) + " == " + word_str(rhs));
}

// One rewrite: replace an occurrence of one side of relation `relation`
// (the lhs for L2R, the rhs for R2L) starting at token index `position`
// by the other side, yielding `result`.
struct DerivationStep {
  int relation = 0;
  RewriteDir dir = RewriteDir::L2R;
  int position = 0;
  Word result;

  friend bool operator==(const DerivationStep& a, const DerivationStep& b) {
    return a.relation == b.relation && a.dir == b.dir && a.position == b.position &&
           a.result == b.result;
  }
};

// Proof-carrying chain of single-relation rewrites.
struct Derivation {
  Word start;
  std::vector<DerivationStep> steps;

  const Word& final_word() const { return steps.empty() ? start : steps.back().result; }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.start == b.start && a.steps == b.steps;
  }
};

// Outcome of a bounded search. `equivalent` outcomes carry a derivation the
// checker accepts; a negative outcome is only "not found within bounds",
// never an inequivalence claim.
struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<Derivation> derivation;
  std::size_t visited = 0;
};

struct SearchBounds {
  std::size_t max_len = 0;
  std::size_t max_visited = 1000000;
};

// ---------------------------------------------------------------------------
// Calculus construction
// ---------------------------------------------------------------------------

inline bool is_split_form(const Machine& m) {
  for (const auto& [key, actions] : m.transitions)
    for (const Action& a : actions)
      if (a.move != Move::stay && a.write != key.second) return false;
  return true;
}

// Builds the associative calculus of a split-form machine. Generators are the
// machine's symbols, then its states, then the terminator v. Relations, per
// instruction: print q a -> q' a' gives "q a == q' a'"; right q a -> q' R
// gives "q a == a q'"; left q a -> q' L gives "b q a == q' b a" for every
// tape symbol b. The blank-padding relation "a0 v == v" comes last.
inline Presentation build_calculus(const Machine& m) {
  if (!is_split_form(m))
    throw Error("machine-not-split", "apply split_instructions before building the calculus");

  Presentation p;
  for (const std::string& s : m.tape_alphabet) {
    if (s == "v") throw Error("name-collision", "tape symbol 'v' clashes with the terminator");
    p.generators.push_back({s, GenKind::digit});
  }
  for (const std::string& s : m.states) {
    if (s == "v") throw Error("name-collision", "state 'v' clashes with the terminator");
    p.generators.push_back({s, GenKind::state});
  }
  p.generators.push_back({"v", GenKind::terminator});

  for (const auto& [key, actions] : m.transitions) {
    const std::string& qa = m.state_name(key.first);
    const std::string& ai = m.symbol_name(key.second);
    for (const Action& a : actions) {
      const std::string& qb = m.state_name(a.next);
      switch (a.move) {
        case Move::stay:
          p.relations.push_back({{qa, ai}, {qb, m.symbol_name(a.write)}, "print"});
          break;
        case Move::right:
          p.relations.push_back({{qa, ai}, {ai, qb}, "right"});
          break;
        case Move::left:
          for (const std::string& ak : m.tape_alphabet)
            p.relations.push_back({{ak, qa, ai}, {qb, ak, ai}, "left"});
          break;
      }
    }
  }
  p.relations.push_back({{m.tape_alphabet[0], "v"}, {"v"}, "pad"});
  return p;
}

// ---------------------------------------------------------------------------
// Configuration words
// ---------------------------------------------------------------------------

inline int left_edge_of(const Configuration& c) {
  int e = c.head;
  if (!c.tape.empty()) e = std::min(e, c.tape.begin()->first);
  return e;
}

// Word form of a configuration relative to a fixed left edge: cells
// left_edge..head-1, the state, the scanned symbol, then cells to the right
// with trailing blanks stripped, then the terminator v.
inline Word encode_configuration_at(const Machine& m, const Configuration& c, int left_edge) {
  if (c.head < left_edge)
    throw Error("left-extension", "head is left of the configuration's left edge");
  Word w;
  for (int j = left_edge; j < c.head; ++j) w.push_back(m.symbol_name(c.read(j)));
  w.push_back(m.state_name(c.state));
  w.push_back(m.symbol_name(c.read(c.head)));
  int last = c.head;
  if (!c.tape.empty()) last = std::max(last, c.tape.rbegin()->first);
  for (int j = c.head + 1; j <= last; ++j) w.push_back(m.symbol_name(c.read(j)));
  w.push_back("v");
  return w;
}

inline Word encode_configuration(const Machine& m, const Configuration& c) {
  return encode_configuration_at(m, c, left_edge_of(c));
}

// ---------------------------------------------------------------------------
// Rewriting and bounded search
// ---------------------------------------------------------------------------

struct StepMeta {
  int relation = 0;
  RewriteDir dir = RewriteDir::L2R;
  int position = 0;
};

namespace detail {

using IndexWord = std::vector<int>;

struct IndexedRelation {
  IndexWord lhs;
  IndexWord rhs;
};

inline std::vector<IndexedRelation> index_relations(const Presentation& p) {
  std::vector<IndexedRelation> out;
  out.reserve(p.relations.size());
  for (const Relation& r : p.relations) out.push_back({p.to_indices(r.lhs), p.to_indices(r.rhs)});
  return out;
}

// Enumerates every single-relation rewrite of w, both directions, at every
// matching position, in (relation, direction, position) order.
template <typename Fn>
inline void for_each_rewrite(const IndexWord& w, const std::vector<IndexedRelation>& rels, Fn&& fn) {
  for (std::size_t ri = 0; ri < rels.size(); ++ri) {
    for (int d = 0; d < 2; ++d) {
      const IndexWord& pat = d == 0 ? rels[ri].lhs : rels[ri].rhs;
      const IndexWord& rep = d == 0 ? rels[ri].rhs : rels[ri].lhs;
      if (pat.empty() || pat.size() > w.size()) continue;
      for (std::size_t pos = 0; pos + pat.size() <= w.size(); ++pos) {
        if (!std::equal(pat.begin(), pat.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
          continue;
        IndexWord nw;
        nw.reserve(w.size() - pat.size() + rep.size());
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        nw.insert(nw.end(), rep.begin(), rep.end());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + pat.size()), w.end());
        fn(nw, StepMeta{static_cast<int>(ri), d == 0 ? RewriteDir::L2R : RewriteDir::R2L,
                        static_cast<int>(pos)});
      }
    }
  }
}

struct ParentRec {
  IndexWord parent;
  StepMeta via;
};

struct BfsResult {
  bool found = false;
  IndexWord target;
  std::map<IndexWord, ParentRec> visited;
};

inline BfsResult bounded_bfs(const IndexWord& start, const IndexWord* target,
                             const Presentation& p, std::size_t max_len,
                             std::size_t max_visited) {
  BfsResult res;
  const auto rels = index_relations(p);
  std::deque<IndexWord> queue;
  res.visited.emplace(start, ParentRec{});
  queue.push_back(start);
  if (target && start == *target) {
    res.found = true;
    res.target = start;
    return res;
  }
  bool capped = res.visited.size() >= max_visited;
  while (!queue.empty() && !capped && !res.found) {
    IndexWord cur = std::move(queue.front());
    queue.pop_front();
    for_each_rewrite(cur, rels, [&](const IndexWord& nw, StepMeta meta) {
      if (res.found || capped) return;
      if (nw.size() > max_len) return;
      if (res.visited.count(nw)) return;
      res.visited.emplace(nw, ParentRec{cur, meta});
      if (target && nw == *target) {
        res.found = true;
        res.target = nw;
        return;
      }
      if (res.visited.size() >= max_visited) {
        capped = true;
        return;
      }
      queue.push_back(nw);
    });
  }
  return res;
}

}  // namespace detail

// All words obtainable from w by one rewrite, with step metadata. Symmetric:
// w' is a neighbor of w iff w is a neighbor of w'.
inline std::vector<std::pair<Word, StepMeta>> neighbors(const Word& w, const Presentation& p) {
  detail::IndexWord iw = p.to_indices(w);
  const auto rels = detail::index_relations(p);
  std::vector<std::pair<Word, StepMeta>> out;
  detail::for_each_rewrite(iw, rels,
                           [&](const detail::IndexWord& nw, StepMeta meta) {
                             out.emplace_back(p.to_tokens(nw), meta);
                           });
  return out;
}

// Bounded breadth-first search for a rewrite chain from w1 to w2. Words
// longer than max_len are discarded; the search stops after max_visited
// distinct words. A positive verdict carries a machine-checkable derivation;
// a negative verdict means only "not found within these bounds".
inline EquivalenceVerdict equivalent_within(const Word& w1, const Word& w2, const Presentation& p,
                                            std::size_t max_len, std::size_t max_visited) {
  if (w1.empty() || w2.empty()) throw Error("precondition", "words must be non-empty");
  if (max_len < std::max(w1.size(), w2.size()))
    throw Error("precondition", "max_len must be at least the longer input word");

  detail::IndexWord start = p.to_indices(w1);
  detail::IndexWord target = p.to_indices(w2);
  auto res = detail::bounded_bfs(start, &target, p, max_len, max_visited);

  EquivalenceVerdict verdict;
  verdict.visited = res.visited.size();
  if (!res.found) return verdict;

  std::vector<DerivationStep> steps;
  detail::IndexWord cur = res.target;
  while (cur != start) {
    const detail::ParentRec& rec = res.visited.at(cur);
    steps.push_back(DerivationStep{rec.via.relation, rec.via.dir, rec.via.position, p.to_tokens(cur)});
    cur = rec.parent;
  }
  std::reverse(steps.begin(), steps.end());
  verdict.equivalent = true;
  verdict.derivation = Derivation{w1, std::move(steps)};
  return verdict;
}

inline EquivalenceVerdict equivalent_within(const Word& w1, const Word& w2, const Presentation& p,
                                            const SearchBounds& bounds) {
  return equivalent_within(w1, w2, p, bounds.max_len, bounds.max_visited);
}

// Exhaustive enumeration of every word reachable from w within the bounds.
inline std::set<Word> reachable_words(const Word& w, const Presentation& p, std::size_t max_len,
                                      std::size_t max_visited) {
  if (w.empty()) throw Error("precondition", "word must be non-empty");
  auto res = detail::bounded_bfs(p.to_indices(w), nullptr, p, max_len, max_visited);
  std::set<Word> out;
  for (const auto& [iw, rec] : res.visited) out.insert(p.to_tokens(iw));
  return out;
}

// True iff every step is a legal single-relation application as recorded.
inline bool verify_derivation(const Derivation& d, const Presentation& p) {
  if (d.start.empty()) return false;
  detail::IndexWord cur;
  try {
    cur = p.to_indices(d.start);
  } catch (const Error&) {
    return false;
  }
  for (const DerivationStep& step : d.steps) {
    if (step.relation < 0 || step.relation >= static_cast<int>(p.relations.size())) return false;
    const Relation& rel = p.relations[static_cast<std::size_t>(step.relation)];
    detail::IndexWord pat, rep, claimed;
    try {
      pat = p.to_indices(step.dir == RewriteDir::L2R ? rel.lhs : rel.rhs);
      rep = p.to_indices(step.dir == RewriteDir::L2R ? rel.rhs : rel.lhs);
      claimed = p.to_indices(step.result);
    } catch (const Error&) {
      return false;
    }
    if (step.position < 0 ||
        static_cast<std::size_t>(step.position) + pat.size() > cur.size())
      return false;
    if (!std::equal(pat.begin(), pat.end(), cur.begin() + step.position)) return false;
    detail::IndexWord next;
    next.reserve(cur.size() - pat.size() + rep.size());
    next.insert(next.end(), cur.begin(), cur.begin() + step.position);
    next.insert(next.end(), rep.begin(), rep.end());
    next.insert(next.end(), cur.begin() + step.position + static_cast<std::ptrdiff_t>(pat.size()),
                cur.end());
    if (next != claimed) return false;
    if (next.empty()) return false;
    cur = std::move(next);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Derivation compiler: machine trace -> rewrite chain
// ---------------------------------------------------------------------------

// Compiles a valid run of a split-form machine into a derivation between the
// configuration words of its endpoints. Each machine step maps to exactly one
// instruction relation, preceded by one padding step when a right move falls
// off the word's right edge and followed by one padding step when a left move
// strands a trailing blank. The words track cells relative to the left edge
// of the starting configuration; the trace may never move left of it.
inline Derivation compile_derivation(const Machine& m, const std::vector<Configuration>& trace,
                                     const Presentation& p) {
  if (trace.empty()) throw Error("trace-invalid", "empty trace");
  const int edge = left_edge_of(trace.front());
  for (const Configuration& c : trace)
    if (c.head < edge) throw Error("left-extension", "trace moves left of the starting window");

  Derivation d;
  d.start = encode_configuration_at(m, trace.front(), edge);
  detail::IndexWord cur = p.to_indices(d.start);

  const Word pad_lhs = {m.tape_alphabet[0], "v"};
  const Word pad_rhs = {"v"};
  const int pad_rel = find_relation(p, pad_lhs, pad_rhs);

  auto apply = [&](int rel, RewriteDir dir, int pos) {
    const Relation& r = p.relations[static_cast<std::size_t>(rel)];
    detail::IndexWord pat = p.to_indices(dir == RewriteDir::L2R ? r.lhs : r.rhs);
    detail::IndexWord rep = p.to_indices(dir == RewriteDir::L2R ? r.rhs : r.lhs);
    if (pos < 0 || static_cast<std::size_t>(pos) + pat.size() > cur.size() ||
        !std::equal(pat.begin(), pat.end(), cur.begin() + pos))
      throw Error("trace-invalid", "internal rewrite mismatch while compiling");
    detail::IndexWord next;
    next.insert(next.end(), cur.begin(), cur.begin() + pos);
    next.insert(next.end(), rep.begin(), rep.end());
    next.insert(next.end(), cur.begin() + pos + static_cast<std::ptrdiff_t>(pat.size()), cur.end());
    cur = std::move(next);
    d.steps.push_back(DerivationStep{rel, dir, pos, p.to_tokens(cur)});
  };

  for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
    const Configuration& a = trace[t];
    const Configuration& b = trace[t + 1];

    if (m.is_halting(a.state)) {
      if (b.state != a.state || b.head != a.head || b.tape != a.tape)
        throw Error("trace-invalid", "halting state changed the configuration");
      continue;  // self-loop: no rewrite
    }

    const Symbol scanned = a.read(a.head);
    const auto* actions = m.choices(a.state, scanned);
    if (!actions) throw Error("trace-invalid", "stuck configuration inside the trace");
    const Action* chosen = nullptr;
    for (const Action& act : *actions) {
      Configuration candidate = a;
      candidate.write(a.head, act.write);
      candidate.head += delta(act.move);
      candidate.state = act.next;
      ++candidate.time;
      if (candidate.state == b.state && candidate.head == b.head && candidate.tape == b.tape) {
        chosen = &act;
        break;
      }
    }
    if (!chosen) throw Error("trace-invalid", "consecutive configurations differ by no transition");

    const std::string& qa = m.state_name(a.state);
    const std::string& ai = m.symbol_name(scanned);
    const std::string& qb = m.state_name(chosen->next);
    const int state_pos = a.head - edge;

    switch (chosen->move) {
      case Move::stay:
        apply(find_relation(p, {qa, ai}, {qb, m.symbol_name(chosen->write)}), RewriteDir::L2R,
              state_pos);
        break;
      case Move::right:
        // Materialize a blank when the scanned symbol is the last before v.
        if (static_cast<std::size_t>(state_pos) + 3 == cur.size())
          apply(pad_rel, RewriteDir::R2L, static_cast<int>(cur.size()) - 1);
        apply(find_relation(p, {qa, ai}, {ai, qb}), RewriteDir::L2R, state_pos);
        break;
      case Move::left: {
        if (state_pos == 0) throw Error("left-extension", "left move at the window edge");
        const std::string ak = p.generators.at(static_cast<std::size_t>(cur[state_pos - 1])).name;
        apply(find_relation(p, {ak, qa, ai}, {qb, ak, ai}), RewriteDir::L2R, state_pos - 1);
        break;
      }
    }

    detail::IndexWord want = p.to_indices(encode_configuration_at(m, b, edge));
    if (cur != want) {
      // At most one stranded trailing blank is possible per step.
      apply(pad_rel, RewriteDir::L2R, static_cast<int>(cur.size()) - 2);
      if (cur != want)
        throw Error("trace-invalid", "compiled word does not track the configuration");
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Alphabetic numbering and the membership / divisibility probes
// ---------------------------------------------------------------------------

// Arbitrary-precision natural number, just big enough for word numbering:
// base-1e9 limbs, multiply/divide by small values only.
class BigNat {
public:
  BigNat() = default;  // zero
  explicit BigNat(std::uint64_t value) {
    while (value > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
      value /= kBase;
    }
  }

  static BigNat from_decimal(const std::string& text) {
    if (text.empty()) throw Error("malformed-number", "empty number");
    BigNat n;
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw Error("malformed-number", "not a decimal digit: " + text);
      n.mul_add_small(10, static_cast<std::uint64_t>(ch - '0'));
    }
    return n;
  }

  bool is_zero() const { return limbs_.empty(); }

  // *this = *this * mul + add  (mul, add < 2^32)
  void mul_add_small(std::uint64_t mul, std::uint64_t add) {
    std::uint64_t carry = add;
    for (std::uint32_t& limb : limbs_) {
      const std::uint64_t value = static_cast<std::uint64_t>(limb) * mul + carry;
      limb = static_cast<std::uint32_t>(value % kBase);
      carry = value / kBase;
    }
    while (carry > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
  }

  // *this /= div, returns the remainder  (0 < div < 2^32)
  std::uint64_t divmod_small(std::uint64_t div) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      const std::uint64_t value = rem * kBase + limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(value / div);
      rem = value % div;
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    return rem;
  }

  void sub_one() {
    if (is_zero()) throw Error("precondition", "cannot subtract from zero");
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      if (limbs_[i] > 0) {
        --limbs_[i];
        break;
      }
      limbs_[i] = kBase - 1;  // borrow
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      out += std::string(9 - part.size(), '0') + part;
    }
    return out;
  }

  friend bool operator==(const BigNat&, const BigNat&) = default;
  friend bool operator<(const BigNat& a, const BigNat& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
    return false;
  }

private:
  static constexpr std::uint64_t kBase = 1000000000;
  std::vector<std::uint32_t> limbs_;  // little-endian
};

// Bijective base-K numeral of a word: generators are coded 1..K in
// presentation order and the word is read most significant token first.
inline BigNat word_number(const Word& w, const Presentation& p) {
  if (w.empty()) throw Error("precondition", "empty word has no number");
  const std::uint64_t base = p.generators.size();
  if (base == 0) throw Error("precondition", "presentation has no generators");
  BigNat n;
  for (const std::string& tok : w)
    n.mul_add_small(base, static_cast<std::uint64_t>(p.require_index(tok)) + 1);
  return n;
}

inline Word word_of_number(BigNat n, const Presentation& p) {
  if (n.is_zero()) throw Error("precondition", "0 is not the number of any word");
  const std::uint64_t base = p.generators.size();
  if (base == 0) throw Error("precondition", "presentation has no generators");
  Word out;
  while (!n.is_zero()) {
    n.sub_one();
    const std::uint64_t code = n.divmod_small(base);  // generator index
    out.push_back(p.generators.at(static_cast<std::size_t>(code)).name);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// The word q1 0 1^x v (the demo machine's input configuration for x).
inline Word unary_input_word(std::uint64_t x) {
  Word w{"q1", "0"};
  for (std::uint64_t i = 0; i < x; ++i) w.push_back("1");
  w.push_back("v");
  return w;
}

// Alphabetic number of the word q1 0 1^x v.
inline BigNat phi(std::uint64_t x, const Presentation& p) {
  return word_number(unary_input_word(x), p);
}

// Is n the number of a word equivalent to q0 0 1^i v?  (bounded probe)
inline EquivalenceVerdict in_P(const BigNat& n, int i, const Presentation& p,
                               const SearchBounds& bounds) {
  if (i != 0 && i != 1) throw Error("precondition", "i must be 0 or 1");
  Word target{"q0", "0"};
  if (i == 1) target.push_back("1");
  target.push_back("v");
  return equivalent_within(word_of_number(n, p), target, p, bounds);
}

// Left-divisibility probe for q0 v: does a·xi == q0 v have a solution?
// For configuration-form words a (no terminator), xi = v is a complete
// witness, so this tests a v == q0 v. A positive verdict is proof-carrying;
// a negative one is only "not found within bounds".
inline EquivalenceVerdict divides_q0v(const Word& a, const Presentation& p,
                                      const SearchBounds& bounds) {
  if (a.empty()) throw Error("precondition", "word must be non-empty");
  for (const std::string& tok : a)
    if (tok == "v") throw Error("precondition", "word must not contain the terminator");
  Word w1 = a;
  w1.push_back("v");
  return equivalent_within(w1, Word{"q0", "v"}, p, bounds);
}

}  // namespace redkit
