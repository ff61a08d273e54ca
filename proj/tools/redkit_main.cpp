#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "redkit/cnf.hpp"
#include "redkit/cooklevin.hpp"
#include "redkit/dpll.hpp"
#include "redkit/formats.hpp"
#include "redkit/machine.hpp"
#include "redkit/postmarkov.hpp"

namespace {

using namespace redkit;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot write " + path);
  out << text;
}

Word split_word(const std::string& text) {
  Word w;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) w.push_back(tok);
  return w;
}

template <typename ReadCell>
std::string render_cells(const Machine& m, int lo, int hi, int head, ReadCell&& read_cell) {
  std::string s;
  for (int j = lo; j <= hi; ++j) {
    if (j > lo) s += ' ';
    const std::string& tok = m.symbol_name(read_cell(j));
    if (j == head)
      s += "[" + tok + "]";
    else
      s += tok;
  }
  return s;
}

int cmd_simulate(const std::string& machine_file, const std::string& input_text,
                 std::uint64_t max_steps) {
  Machine m = parse_machine(read_file(machine_file));
  auto input = to_input(m, input_text);
  RunResult r = run(m, input, max_steps);

  int lo = 1, hi = 1;
  for (const Configuration& c : r.trace) {
    lo = std::min(lo, c.head);
    hi = std::max(hi, c.head);
    if (!c.tape.empty()) {
      lo = std::min(lo, c.tape.begin()->first);
      hi = std::max(hi, c.tape.rbegin()->first);
    }
  }
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const Configuration& c = r.trace[i];
    std::cout << "t=" << c.time << " state=" << m.state_name(c.state) << " head=" << c.head
              << " tape=" << render_cells(m, lo, hi, c.head, [&](int j) { return c.read(j); });
    if (i + 1 == r.trace.size()) std::cout << " => " << to_string(r.verdict);
    std::cout << "\n";
  }
  return r.verdict == Verdict::accepted ? 0 : 1;
}

int cmd_reduce(const std::string& machine_file, const std::string& input_text, int p,
               const std::string& out_path, const std::string& varmap_path) {
  Machine m = parse_machine(read_file(machine_file));
  auto input = to_input(m, input_text);
  ReductionOutput out = reduce(m, input, p);
  write_file(out_path, emit_dimacs_grouped(out));
  write_file(varmap_path, emit_varmap(out.catalog));
  std::cout << to_string(report_counts(out));
  std::cout << "wrote " << out_path << " " << varmap_path << "\n";
  return 0;
}

int cmd_solve(const std::string& dimacs_file) {
  CnfInstance f = parse_dimacs(read_file(dimacs_file));
  SolveResult r = solve(f);
  if (!r.sat) {
    std::cout << "s UNSATISFIABLE\n";
    return 1;
  }
  std::cout << "s SATISFIABLE\n";
  std::cout << "v";
  for (int var = 1; var <= f.nvars; ++var) std::cout << ' ' << (r.model->value(var) ? var : -var);
  std::cout << " 0\n";
  return 0;
}

int cmd_prove(const std::string& machine_file, const std::string& input_text, int p) {
  Machine m = parse_machine(read_file(machine_file));
  auto input = to_input(m, input_text);
  ReductionOutput out = reduce(m, input, p);
  SolveResult r = solve(out.formula);
  if (!r.sat) {
    std::cout << "no accepting computation within " << p << " steps\n";
    return 1;
  }
  Tableau t = decode(*r.model, out);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const TableauRow& row = t.rows[i];
    std::cout << "t=" << i << " state=" << m.state_name(row.state) << " head=" << row.head
              << " tape="
              << render_cells(m, -p, p + 1, row.head, [&](int j) { return row.tape.at(j); })
              << "\n";
  }
  TableauCheck check = verify_tableau(t, m, input);
  if (!check.ok) {
    std::cerr << "error: solver model failed verification (" << check.reason << ")\n";
    return 3;
  }
  std::cout << "verified: accepting computation within " << p << " steps\n";
  return 0;
}

int cmd_sg_build(const std::string& machine_file, const std::string& out_path) {
  Machine m = parse_machine(read_file(machine_file));
  Machine split = split_instructions(m);
  Presentation pres = build_calculus(split);
  write_file(out_path, emit_presentation(pres));
  std::cout << "generators=" << pres.generators.size() << " relations=" << pres.relations.size()
            << " wrote " << out_path << "\n";
  return 0;
}

SearchBounds make_bounds(const Word& w1, const Word& w2, std::int64_t max_len,
                         std::uint64_t max_visited) {
  SearchBounds b;
  b.max_len = max_len >= 0 ? static_cast<std::size_t>(max_len)
                           : std::max(w1.size(), w2.size()) + 4;
  b.max_visited = max_visited;
  return b;
}

int cmd_sg_equiv(const std::string& pres_file, const std::string& w1_text,
                 const std::string& w2_text, std::int64_t max_len, std::uint64_t max_visited) {
  Presentation pres = parse_presentation(read_file(pres_file));
  Word w1 = split_word(w1_text);
  Word w2 = split_word(w2_text);
  if (w1.empty() || w2.empty()) throw Error("precondition", "words must be non-empty");
  SearchBounds bounds = make_bounds(w1, w2, max_len, max_visited);
  EquivalenceVerdict v = equivalent_within(w1, w2, pres, bounds);
  if (!v.equivalent) {
    std::cout << "NOT-FOUND within bounds (max_len=" << bounds.max_len
              << " visited=" << v.visited << ")\n";
    return 1;
  }
  std::cout << emit_derivation(*v.derivation);
  return 0;
}

int cmd_sg_divides(const std::string& pres_file, const std::string& a_text, std::int64_t max_len,
                   std::uint64_t max_visited) {
  Presentation pres = parse_presentation(read_file(pres_file));
  Word a = split_word(a_text);
  if (a.empty()) throw Error("precondition", "word must be non-empty");
  Word w1 = a;
  w1.push_back("v");
  SearchBounds bounds = make_bounds(w1, Word{"q0", "v"}, max_len, max_visited);
  EquivalenceVerdict v = divides_q0v(a, pres, bounds);
  if (!v.equivalent) {
    std::cout << "NOT-FOUND within bounds (max_len=" << bounds.max_len
              << " visited=" << v.visited << ")\n";
    return 1;
  }
  std::cout << emit_derivation(*v.derivation);
  std::cout << "DIVISIBLE: xi = v\n";
  return 0;
}

int cmd_sg_phi(const std::string& pres_file, std::uint64_t x) {
  Presentation pres = parse_presentation(read_file(pres_file));
  std::cout << phi(x, pres).to_decimal() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machine compilers: bounded acceptance to CNF-SAT, and machine "
               "instructions to an associative calculus with a bounded word-equivalence probe"};
  app.require_subcommand(1);

  std::string machine_file, input_text, dimacs_file, out_path, varmap_path, pres_file;
  std::string word1, word2;
  std::uint64_t max_steps = 100;
  int p = 0;
  std::int64_t max_len = -1;
  std::uint64_t max_visited = 1000000;
  std::uint64_t x = 0;

  auto* sim = app.add_subcommand("simulate", "Run a deterministic machine and print its trace");
  sim->add_option("machine", machine_file, "machine description file")->required();
  sim->add_option("input", input_text, "input word (one letter per symbol)");
  sim->add_option("--max-steps", max_steps, "step budget before timeout");

  auto* red = app.add_subcommand("reduce", "Compile bounded acceptance into DIMACS CNF");
  red->add_option("machine", machine_file)->required();
  red->add_option("input", input_text);
  red->add_option("--p", p, "step/tableau bound")->required();
  red->add_option("--out", out_path, "DIMACS output path")->required();
  red->add_option("--varmap", varmap_path, "variable catalog sidecar path")->required();

  auto* sol = app.add_subcommand("solve", "Decide a DIMACS CNF file");
  sol->add_option("dimacs", dimacs_file)->required();

  auto* prv = app.add_subcommand("prove", "reduce + solve + decode + verify in one run");
  prv->add_option("machine", machine_file)->required();
  prv->add_option("input", input_text);
  prv->add_option("--p", p, "step/tableau bound")->required();

  auto* sg = app.add_subcommand("semigroup", "Associative calculus commands");
  sg->require_subcommand(1);
  auto* sgb = sg->add_subcommand("build", "Compile a machine into its associative calculus");
  sgb->add_option("machine", machine_file)->required();
  sgb->add_option("--out", out_path, "presentation output path")->required();
  auto* sge = sg->add_subcommand("equiv", "Bounded search for a rewrite chain between two words");
  sge->add_option("presentation", pres_file)->required();
  sge->add_option("w1", word1, "first word (space-separated tokens)")->required();
  sge->add_option("w2", word2, "second word")->required();
  sge->add_option("--max-len", max_len, "word length cap (default: longer word + 4)");
  sge->add_option("--max-visited", max_visited, "distinct-word cap");
  auto* sgd = sg->add_subcommand("divides", "Left-divisibility probe for q0 v");
  sgd->add_option("presentation", pres_file)->required();
  sgd->add_option("word", word1, "configuration-form word without the terminator")->required();
  sgd->add_option("--max-len", max_len);
  sgd->add_option("--max-visited", max_visited);
  auto* sgp = sg->add_subcommand("phi", "Alphabetic number of the word q1 0 1^x v");
  sgp->add_option("presentation", pres_file)->required();
  sgp->add_option("x", x)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(machine_file, input_text, max_steps);
    if (red->parsed()) {
      if (p < 1) {
        std::cerr << "usage error: --p must be at least 1\n";
        return 2;
      }
      return cmd_reduce(machine_file, input_text, p, out_path, varmap_path);
    }
    if (sol->parsed()) return cmd_solve(dimacs_file);
    if (prv->parsed()) {
      if (p < 1) {
        std::cerr << "usage error: --p must be at least 1\n";
        return 2;
      }
      return cmd_prove(machine_file, input_text, p);
    }
    if (sg->parsed()) {
      if (sgb->parsed()) return cmd_sg_build(machine_file, out_path);
      if (sge->parsed()) return cmd_sg_equiv(pres_file, word1, word2, max_len, max_visited);
      if (sgd->parsed()) return cmd_sg_divides(pres_file, word1, max_len, max_visited);
      if (sgp->parsed()) return cmd_sg_phi(pres_file, x);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
