#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redkit/cnf.hpp"
#include "redkit/error.hpp"
#include "redkit/machine.hpp"
#include "redkit/postmarkov.hpp"

namespace redkit {

// 1-based position inside a parsed file.
struct SourceLocation {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
public:
  ParseError(std::string kind, SourceLocation loc, const std::string& message)
      : Error(std::move(kind), "line " + std::to_string(loc.line) + ":" +
                                   std::to_string(loc.column) + ": " + message),
        location_(loc) {}

  SourceLocation location() const { return location_; }

private:
  SourceLocation location_;
};

namespace detail {

struct Token {
  std::string text;
  int column = 1;
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

// Splits into (line number, content) pairs, dropping blank lines and, when
// hash_comments is set, lines whose first token starts with '#'.
inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text,
                                                              bool hash_comments) {
  std::vector<std::pair<int, std::string>> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    ++number;
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (hash_comments && line[first] == '#') continue;
    out.emplace_back(number, std::move(line));
  }
  return out;
}

inline std::optional<long long> to_int(const std::string& s) {
  long long value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Machine description format
//
//   states: q0 qY qN
//   input_alphabet: 0 1
//   tape_alphabet: _ 0 1
//   blank: _
//   initial: q0
//   accept: qY
//   reject: qN
//   trans: q0 1 -> qY 1 R
//
// Lines starting with '#' are comments. Repeated trans lines with the same
// left-hand side express nondeterministic choice. The blank may appear
// anywhere in tape_alphabet; parsing rotates it to index 0.
// ---------------------------------------------------------------------------

inline Machine parse_machine(const std::string& text) {
  const auto lines = detail::content_lines(text, /*hash_comments=*/true);

  std::map<std::string, std::pair<std::vector<detail::Token>, SourceLocation>> sections;
  std::vector<std::pair<std::vector<detail::Token>, SourceLocation>> trans_lines;
  static const std::vector<std::string> section_names = {
      "states", "input_alphabet", "tape_alphabet", "blank", "initial", "accept", "reject"};

  for (const auto& [number, line] : lines) {
    auto tokens = detail::tokenize(line);
    SourceLocation loc{number, tokens.empty() ? 1 : tokens[0].column};
    if (tokens.empty()) continue;
    std::string head = tokens[0].text;
    if (head.empty() || head.back() != ':')
      throw ParseError("syntax-error", loc, "expected a section or trans line");
    head.pop_back();
    std::vector<detail::Token> rest(tokens.begin() + 1, tokens.end());
    if (head == "trans") {
      trans_lines.emplace_back(std::move(rest), loc);
      continue;
    }
    if (std::find(section_names.begin(), section_names.end(), head) == section_names.end())
      throw ParseError("syntax-error", loc, "unknown section '" + head + ":'");
    if (sections.count(head))
      throw ParseError("syntax-error", loc, "section '" + head + ":' repeated");
    sections.emplace(head, std::make_pair(std::move(rest), loc));
  }

  const int last_line = lines.empty() ? 1 : lines.back().first;
  for (const std::string& name : section_names)
    if (!sections.count(name))
      throw ParseError("missing-section", SourceLocation{last_line, 1},
                       "section '" + name + ":' missing");

  auto& [alpha_toks, alpha_loc] = sections.at("tape_alphabet");
  if (alpha_toks.empty()) throw ParseError("syntax-error", alpha_loc, "empty tape alphabet");
  auto& [blank_toks, blank_loc] = sections.at("blank");
  if (blank_toks.size() != 1)
    throw ParseError("syntax-error", blank_loc, "blank: wants exactly one symbol");
  const std::string blank_name = blank_toks[0].text;

  Machine m;
  m.tape_alphabet.push_back(blank_name);
  bool blank_seen = false;
  for (const auto& tok : alpha_toks) {
    if (tok.text == blank_name) {
      if (blank_seen)
        throw ParseError("syntax-error", SourceLocation{alpha_loc.line, tok.column},
                         "symbol '" + tok.text + "' repeated");
      blank_seen = true;
      continue;
    }
    if (m.find_symbol(tok.text))
      throw ParseError("syntax-error", SourceLocation{alpha_loc.line, tok.column},
                       "symbol '" + tok.text + "' repeated");
    m.tape_alphabet.push_back(tok.text);
  }
  if (!blank_seen)
    throw ParseError("unknown-symbol", blank_loc,
                     "blank '" + blank_name + "' is not in the tape alphabet");

  auto& [state_toks, state_loc] = sections.at("states");
  if (state_toks.empty()) throw ParseError("syntax-error", state_loc, "empty state list");
  for (const auto& tok : state_toks) {
    if (m.find_state(tok.text))
      throw ParseError("duplicate-state", SourceLocation{state_loc.line, tok.column},
                       "state '" + tok.text + "' repeated");
    m.states.push_back(tok.text);
  }

  auto& [input_toks, input_loc] = sections.at("input_alphabet");
  for (const auto& tok : input_toks) {
    auto s = m.find_symbol(tok.text);
    if (!s)
      throw ParseError("unknown-symbol", SourceLocation{input_loc.line, tok.column},
                       "input symbol '" + tok.text + "' not in the tape alphabet");
    if (*s == kBlank)
      throw ParseError("blank-in-input-alphabet", SourceLocation{input_loc.line, tok.column},
                       "the blank may not be an input symbol");
    if (m.in_input_alphabet(*s))
      throw ParseError("syntax-error", SourceLocation{input_loc.line, tok.column},
                       "input symbol '" + tok.text + "' repeated");
    m.input_alphabet.push_back(*s);
  }

  auto lookup_state = [&m](const std::string& section) {
    return [&m, section](const std::pair<std::vector<detail::Token>, SourceLocation>& entry) {
      const auto& [toks, loc] = entry;
      if (toks.size() != 1)
        throw ParseError("syntax-error", loc, section + ": wants exactly one state");
      auto q = m.find_state(toks[0].text);
      if (!q)
        throw ParseError("unknown-symbol", SourceLocation{loc.line, toks[0].column},
                         "state '" + toks[0].text + "' not declared");
      return *q;
    };
  };
  m.initial = lookup_state("initial")(sections.at("initial"));
  m.accept = lookup_state("accept")(sections.at("accept"));
  m.reject = lookup_state("reject")(sections.at("reject"));
  if (m.accept == m.reject)
    throw ParseError("syntax-error", sections.at("reject").second,
                     "accept and reject must differ");

  for (const auto& [toks, loc] : trans_lines) {
    if (toks.size() != 6 || toks[2].text != "->")
      throw ParseError("syntax-error", loc, "trans: wants '<state> <sym> -> <state> <sym> <L|R|S>'");
    auto from = m.find_state(toks[0].text);
    if (!from)
      throw ParseError("unknown-symbol", SourceLocation{loc.line, toks[0].column},
                       "state '" + toks[0].text + "' not declared");
    auto read = m.find_symbol(toks[1].text);
    if (!read)
      throw ParseError("unknown-symbol", SourceLocation{loc.line, toks[1].column},
                       "symbol '" + toks[1].text + "' not declared");
    auto next = m.find_state(toks[3].text);
    if (!next)
      throw ParseError("unknown-symbol", SourceLocation{loc.line, toks[3].column},
                       "state '" + toks[3].text + "' not declared");
    auto write = m.find_symbol(toks[4].text);
    if (!write)
      throw ParseError("unknown-symbol", SourceLocation{loc.line, toks[4].column},
                       "symbol '" + toks[4].text + "' not declared");
    Move move;
    if (toks[5].text == "L")
      move = Move::left;
    else if (toks[5].text == "R")
      move = Move::right;
    else if (toks[5].text == "S")
      move = Move::stay;
    else
      throw ParseError("syntax-error", SourceLocation{loc.line, toks[5].column},
                       "move must be L, R or S");
    if (m.is_halting(*from))
      throw ParseError("syntax-error", SourceLocation{loc.line, toks[0].column},
                       "halting state '" + toks[0].text + "' may not have transitions");
    m.add_transition(*from, *read, Action{*next, *write, move});
  }

  m.validate();
  return m;
}

inline std::string emit_machine(const Machine& m) {
  std::string out;
  auto join = [&m](const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) s += ' ';
      s += names[i];
    }
    return s;
  };
  out += "states: " + join(m.states) + "\n";
  std::string inputs;
  for (std::size_t i = 0; i < m.input_alphabet.size(); ++i) {
    if (i) inputs += ' ';
    inputs += m.symbol_name(m.input_alphabet[i]);
  }
  out += "input_alphabet:" + (inputs.empty() ? "" : " " + inputs) + "\n";
  out += "tape_alphabet: " + join(m.tape_alphabet) + "\n";
  out += "blank: " + m.tape_alphabet[0] + "\n";
  out += "initial: " + m.state_name(m.initial) + "\n";
  out += "accept: " + m.state_name(m.accept) + "\n";
  out += "reject: " + m.state_name(m.reject) + "\n";
  for (const auto& [key, actions] : m.transitions)
    for (const Action& a : actions) {
      const char* move = a.move == Move::left ? "L" : a.move == Move::right ? "R" : "S";
      out += "trans: " + m.state_name(key.first) + " " + m.symbol_name(key.second) + " -> " +
             m.state_name(a.next) + " " + m.symbol_name(a.write) + " " + move + "\n";
    }
  return out;
}

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

inline void append_clause_line(std::string& out, const Clause& c) {
  for (const Literal& l : c.literals) {
    out += std::to_string(to_dimacs(l));
    out += ' ';
  }
  out += "0\n";
}

inline std::string emit_dimacs(const CnfInstance& f) {
  f.validate();
  std::string out = "p cnf " + std::to_string(f.nvars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const Clause& c : f.clauses) append_clause_line(out, c);
  return out;
}

inline CnfInstance parse_dimacs(const std::string& text) {
  CnfInstance f;
  bool header_seen = false;
  long long declared_clauses = 0;
  const auto lines = detail::content_lines(text, /*hash_comments=*/false);
  SourceLocation last_loc{1, 1};
  for (const auto& [number, line] : lines) {
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    SourceLocation loc{number, tokens[0].column};
    last_loc = loc;
    if (tokens[0].text == "c") continue;  // comment
    if (!header_seen) {
      if (tokens.size() != 4 || tokens[0].text != "p" || tokens[1].text != "cnf")
        throw ParseError("malformed-header", loc, "expected 'p cnf <nvars> <nclauses>'");
      auto nvars = detail::to_int(tokens[2].text);
      auto nclauses = detail::to_int(tokens[3].text);
      if (!nvars || !nclauses || *nvars < 0 || *nclauses < 0)
        throw ParseError("malformed-header", loc, "header counts must be non-negative integers");
      f.nvars = static_cast<int>(*nvars);
      declared_clauses = *nclauses;
      header_seen = true;
      continue;
    }
    std::vector<Literal> lits;
    bool terminated = false;
    for (const auto& tok : tokens) {
      SourceLocation tloc{number, tok.column};
      if (terminated)
        throw ParseError("syntax-error", tloc, "content after the clause terminator");
      auto value = detail::to_int(tok.text);
      if (!value) throw ParseError("syntax-error", tloc, "literal is not an integer");
      if (*value == 0) {
        terminated = true;
        continue;
      }
      long long var = *value < 0 ? -*value : *value;
      if (var > f.nvars)
        throw ParseError("literal-out-of-range", tloc,
                         "variable " + std::to_string(var) + " exceeds declared " +
                             std::to_string(f.nvars));
      lits.push_back(from_dimacs(static_cast<int>(*value)));
    }
    if (!terminated)
      throw ParseError("missing-terminator", loc, "clause line must end with ' 0'");
    f.clauses.emplace_back(std::move(lits));
  }
  if (!header_seen) throw ParseError("malformed-header", last_loc, "no 'p cnf' header found");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses)
    throw ParseError("malformed-header", last_loc,
                     "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
  return f;
}

// ---------------------------------------------------------------------------
// Variable-catalog sidecar: one line per tableau variable.
//   <varnum> Q <i> <k>   |   <varnum> H <i> <j>   |   <varnum> S <i> <j> <k>
// ---------------------------------------------------------------------------

inline std::string emit_varmap(const VarCatalog& cat) {
  std::string out;
  for (const auto& [var, coord] : cat.entries()) {
    out += std::to_string(var);
    switch (coord.kind) {
      case VarKind::Q:
        out += " Q " + std::to_string(coord.i) + " " + std::to_string(coord.k);
        break;
      case VarKind::H:
        out += " H " + std::to_string(coord.i) + " " + std::to_string(coord.j);
        break;
      case VarKind::S:
        out += " S " + std::to_string(coord.i) + " " + std::to_string(coord.j) + " " +
               std::to_string(coord.k);
        break;
    }
    out += '\n';
  }
  return out;
}

inline VarCatalog parse_varmap(const std::string& text) {
  VarCatalog cat;
  for (const auto& [number, line] : detail::content_lines(text, /*hash_comments=*/false)) {
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    SourceLocation loc{number, tokens[0].column};
    auto intat = [&](std::size_t idx) {
      auto v = detail::to_int(tokens[idx].text);
      if (!v)
        throw ParseError("malformed-line", SourceLocation{number, tokens[idx].column},
                         "expected an integer");
      return static_cast<int>(*v);
    };
    if (tokens.size() < 2) throw ParseError("malformed-line", loc, "incomplete varmap line");
    const int var = intat(0);
    const std::string& kind = tokens[1].text;
    Coord coord;
    if (kind == "Q" && tokens.size() == 4)
      coord = q_coord(intat(2), intat(3));
    else if (kind == "H" && tokens.size() == 4)
      coord = h_coord(intat(2), intat(3));
    else if (kind == "S" && tokens.size() == 5)
      coord = s_coord(intat(2), intat(3), intat(4));
    else
      throw ParseError("malformed-line", loc, "expected 'Q i k', 'H i j' or 'S i j k'");
    try {
      cat.insert(var, coord);
    } catch (const Error& e) {
      throw ParseError(e.kind(), loc, e.what());
    }
  }
  cat.infer_dims();
  return cat;
}

// ---------------------------------------------------------------------------
// Semigroup presentation
//   generators: a0 a1 q0 q1 v
//   rel: a0 v == v
// ---------------------------------------------------------------------------

inline std::string emit_presentation(const Presentation& p) {
  std::string out = "generators:";
  for (const Generator& g : p.generators) out += " " + g.name;
  out += '\n';
  for (const Relation& r : p.relations)
    out += "rel: " + word_str(r.lhs) + " == " + word_str(r.rhs) + "\n";
  return out;
}

inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  bool generators_seen = false;
  for (const auto& [number, line] : detail::content_lines(text, /*hash_comments=*/false)) {
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    SourceLocation loc{number, tokens[0].column};
    if (tokens[0].text == "generators:") {
      if (generators_seen) throw ParseError("syntax-error", loc, "generators: repeated");
      generators_seen = true;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (p.gen_index(tokens[i].text))
          throw ParseError("syntax-error", SourceLocation{number, tokens[i].column},
                           "generator '" + tokens[i].text + "' repeated");
        GenKind kind = tokens[i].text == "v" ? GenKind::terminator : GenKind::digit;
        p.generators.push_back({tokens[i].text, kind});
      }
      if (p.generators.empty())
        throw ParseError("syntax-error", loc, "a presentation needs at least one generator");
      continue;
    }
    if (tokens[0].text == "rel:") {
      if (!generators_seen)
        throw ParseError("syntax-error", loc, "rel: before the generators: line");
      Relation r;
      bool after_eq = false;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].text == "==") {
          if (after_eq)
            throw ParseError("syntax-error", SourceLocation{number, tokens[i].column},
                             "'==' repeated");
          after_eq = true;
          continue;
        }
        if (!p.gen_index(tokens[i].text))
          throw ParseError("unknown-generator", SourceLocation{number, tokens[i].column},
                           "generator '" + tokens[i].text + "' not declared");
        (after_eq ? r.rhs : r.lhs).push_back(tokens[i].text);
      }
      if (!after_eq) throw ParseError("syntax-error", loc, "rel: line has no '=='");
      if (r.lhs.empty() || r.rhs.empty())
        throw ParseError("empty-relation-side", loc, "both relation sides must be non-empty");
      p.relations.push_back(std::move(r));
      continue;
    }
    throw ParseError("syntax-error", loc, "expected 'generators:' or 'rel:'");
  }
  if (!generators_seen)
    throw ParseError("syntax-error", SourceLocation{1, 1}, "no generators: line");
  return p;
}

// ---------------------------------------------------------------------------
// Derivation chain
//   <start word tokens>
//   -> rel=<index> dir=<L2R|R2L> at=<position> => <word tokens>
// ---------------------------------------------------------------------------

inline std::string emit_derivation(const Derivation& d) {
  std::string out = word_str(d.start) + "\n";
  for (const DerivationStep& s : d.steps) {
    out += "-> rel=" + std::to_string(s.relation) +
           " dir=" + (s.dir == RewriteDir::L2R ? "L2R" : "R2L") +
           " at=" + std::to_string(s.position) + " => " + word_str(s.result) + "\n";
  }
  return out;
}

inline Derivation parse_derivation(const std::string& text) {
  Derivation d;
  bool start_seen = false;
  std::size_t prev_len = 0;
  for (const auto& [number, line] : detail::content_lines(text, /*hash_comments=*/false)) {
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    SourceLocation loc{number, tokens[0].column};
    if (!start_seen) {
      if (tokens[0].text == "->")
        throw ParseError("malformed-step", loc, "derivation must begin with its start word");
      for (const auto& tok : tokens) d.start.push_back(tok.text);
      prev_len = d.start.size();
      start_seen = true;
      continue;
    }
    if (tokens[0].text != "->")
      throw ParseError("malformed-step", loc, "step lines start with '->'");
    auto field = [&](std::size_t idx, std::string_view name) -> std::string {
      if (idx >= tokens.size())
        throw ParseError("malformed-step", loc, "step line truncated");
      const std::string& t = tokens[idx].text;
      const std::string prefix = std::string(name) + "=";
      if (t.rfind(prefix, 0) != 0)
        throw ParseError("malformed-step", SourceLocation{number, tokens[idx].column},
                         "expected '" + prefix + "...'");
      return t.substr(prefix.size());
    };
    DerivationStep step;
    auto rel = detail::to_int(field(1, "rel"));
    if (!rel || *rel < 0)
      throw ParseError("malformed-step", loc, "rel= wants a non-negative integer");
    step.relation = static_cast<int>(*rel);
    const std::string dir = field(2, "dir");
    if (dir == "L2R")
      step.dir = RewriteDir::L2R;
    else if (dir == "R2L")
      step.dir = RewriteDir::R2L;
    else
      throw ParseError("malformed-step", loc, "dir= wants L2R or R2L");
    auto at = detail::to_int(field(3, "at"));
    if (!at || *at < 0) throw ParseError("malformed-step", loc, "at= wants a non-negative integer");
    if (static_cast<std::size_t>(*at) >= prev_len)
      throw ParseError("position-out-of-range", loc,
                       "position " + std::to_string(*at) + " is outside the previous word");
    step.position = static_cast<int>(*at);
    if (tokens.size() < 5 || tokens[4].text != "=>")
      throw ParseError("malformed-step", loc, "step line lacks '=>'");
    for (std::size_t i = 5; i < tokens.size(); ++i) step.result.push_back(tokens[i].text);
    if (step.result.empty())
      throw ParseError("malformed-step", loc, "step result word is empty");
    prev_len = step.result.size();
    d.steps.push_back(std::move(step));
  }
  if (!start_seen)
    throw ParseError("malformed-step", SourceLocation{1, 1}, "empty derivation file");
  return d;
}

}  // namespace redkit
