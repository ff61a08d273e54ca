#pragma once

// Shared helpers for the test suites: corpus machine loading, input word
// enumeration, and the seeded random instance generators used by the
// round-trip and solver-agreement harnesses.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "redkit/cnf.hpp"
#include "redkit/formats.hpp"
#include "redkit/machine.hpp"
#include "redkit/postmarkov.hpp"

namespace corpus {

inline std::string machines_dir() { return REDKIT_MACHINES_DIR; }

inline std::string machine_path(const std::string& name) {
  return machines_dir() + "/" + name + ".tm";
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw redkit::Error("io-error", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline redkit::Machine load(const std::string& name) {
  return redkit::parse_machine(slurp(machine_path(name)));
}

// The Cook-Levin test corpus (canonical index form: initial=0, accept=1, reject=2).
inline const std::vector<std::string>& cl_machine_names() {
  static const std::vector<std::string> names = {
      "m1", "parity_even", "palindrome", "stuck", "reject_all", "accept_all", "runner"};
  return names;
}

// Every input word over the machine's input alphabet up to max_len letters.
inline std::vector<std::vector<redkit::Symbol>> inputs_up_to(const redkit::Machine& m,
                                                             std::size_t max_len) {
  std::vector<std::vector<redkit::Symbol>> out{{}};
  std::vector<std::vector<redkit::Symbol>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<redkit::Symbol>> next;
    for (const auto& w : layer)
      for (redkit::Symbol s : m.input_alphabet) {
        auto ext = w;
        ext.push_back(s);
        next.push_back(ext);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Starting configuration of the unary demo machine: the state scans the
// blank delimiter at cell 1 with x ones to its right.
inline redkit::Configuration unary_config(const redkit::Machine& m, int x) {
  redkit::Configuration c;
  c.state = m.initial;
  c.head = 1;
  auto one = m.find_symbol("1");
  if (!one) throw redkit::Error("unknown-symbol", "machine has no symbol '1'");
  for (int i = 0; i < x; ++i) c.write(2 + i, *one);
  return c;
}

// ---------------------------------------------------------------------------
// Seeded random instance generators
// ---------------------------------------------------------------------------

inline redkit::Machine random_machine(std::mt19937& rng) {
  redkit::Machine m;
  const int nsym = 2 + static_cast<int>(rng() % 3);
  m.tape_alphabet.push_back("_");
  for (int i = 1; i < nsym; ++i) m.tape_alphabet.push_back(std::string(1, char('a' + i - 1)));
  const int nst = 3 + static_cast<int>(rng() % 4);
  for (int i = 0; i < nst; ++i) m.states.push_back("s" + std::to_string(i));

  m.accept = redkit::StateId{rng() % nst};
  do {
    m.reject = redkit::StateId{rng() % nst};
  } while (m.reject == m.accept);
  m.initial = redkit::StateId{rng() % nst};

  for (int i = 1; i < nsym; ++i)
    if (rng() % 2) m.input_alphabet.push_back(redkit::Symbol{static_cast<std::size_t>(i)});

  for (int q = 0; q < nst; ++q) {
    if (m.is_halting(redkit::StateId{static_cast<std::size_t>(q)})) continue;
    for (int s = 0; s < nsym; ++s) {
      if (rng() % 10 < 3) continue;  // leave some pairs undefined
      const int count = 1 + static_cast<int>(rng() % 2);
      for (int t = 0; t < count; ++t) {
        redkit::Action a;
        a.next = redkit::StateId{rng() % nst};
        a.write = redkit::Symbol{rng() % nsym};
        a.move = static_cast<redkit::Move>(static_cast<int>(rng() % 3) - 1);
        m.add_transition(redkit::StateId{static_cast<std::size_t>(q)},
                         redkit::Symbol{static_cast<std::size_t>(s)}, a);
      }
    }
  }
  m.validate();
  return m;
}

inline redkit::CnfInstance random_cnf(std::mt19937& rng, int max_vars = 30, int max_clauses = 40) {
  redkit::CnfInstance f;
  f.nvars = 1 + static_cast<int>(rng() % max_vars);
  const int nclauses = static_cast<int>(rng() % (max_clauses + 1));
  for (int c = 0; c < nclauses; ++c) {
    const int width = 1 + static_cast<int>(rng() % 5);
    std::vector<redkit::Literal> lits;
    for (int i = 0; i < width; ++i) {
      int var = 1 + static_cast<int>(rng() % f.nvars);
      lits.push_back(rng() % 2 ? redkit::neg(var) : redkit::pos(var));
    }
    f.add(redkit::Clause(std::move(lits)));
  }
  return f;
}

// Random 3-CNF at the densities the solver-agreement suite wants.
inline redkit::CnfInstance random_3cnf(std::mt19937& rng) {
  redkit::CnfInstance f;
  f.nvars = 5 + static_cast<int>(rng() % 12);  // 5..16
  std::uniform_real_distribution<double> ratio(3.0, 5.0);
  const int nclauses = static_cast<int>(ratio(rng) * f.nvars);
  for (int c = 0; c < nclauses; ++c) {
    std::vector<int> vars;
    while (vars.size() < 3) {
      int var = 1 + static_cast<int>(rng() % f.nvars);
      if (std::find(vars.begin(), vars.end(), var) == vars.end()) vars.push_back(var);
    }
    std::vector<redkit::Literal> lits;
    for (int var : vars) lits.push_back(rng() % 2 ? redkit::neg(var) : redkit::pos(var));
    f.add(redkit::Clause(std::move(lits)));
  }
  return f;
}

inline redkit::VarCatalog random_catalog(std::mt19937& rng) {
  const int p = 1 + static_cast<int>(rng() % 4);
  const int r = 1 + static_cast<int>(rng() % 4);
  const int v = static_cast<int>(rng() % 4);
  return redkit::VarCatalog::build(p, r, v);
}

inline redkit::Presentation random_presentation(std::mt19937& rng) {
  redkit::Presentation p;
  const int ngen = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < ngen; ++i) p.generators.push_back({"g" + std::to_string(i)});
  if (rng() % 2) p.generators.push_back({"v", redkit::GenKind::terminator});
  const int nrel = static_cast<int>(rng() % 6);
  auto random_word = [&]() {
    redkit::Word w;
    const int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) w.push_back(p.generators[rng() % p.generators.size()].name);
    return w;
  };
  for (int i = 0; i < nrel; ++i) p.relations.push_back({random_word(), random_word(), ""});
  return p;
}

// Syntactically valid derivation file content (positions stay inside the
// previous word); not necessarily a legal rewrite chain.
inline redkit::Derivation random_derivation(std::mt19937& rng) {
  redkit::Derivation d;
  auto random_word = [&rng]() {
    redkit::Word w;
    const int len = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) w.push_back("t" + std::to_string(rng() % 4));
    return w;
  };
  d.start = random_word();
  std::size_t prev_len = d.start.size();
  const int nsteps = static_cast<int>(rng() % 5);
  for (int i = 0; i < nsteps; ++i) {
    redkit::DerivationStep s;
    s.relation = static_cast<int>(rng() % 10);
    s.dir = rng() % 2 ? redkit::RewriteDir::R2L : redkit::RewriteDir::L2R;
    s.position = static_cast<int>(rng() % prev_len);
    s.result = random_word();
    prev_len = s.result.size();
    d.steps.push_back(std::move(s));
  }
  return d;
}

}  // namespace corpus
