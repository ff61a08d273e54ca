// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "redkit/cooklevin.hpp"
#include "redkit/dpll.hpp"
#include "redkit/formats.hpp"
#include "redkit/machine.hpp"
#include "redkit/postmarkov.hpp"

using namespace redkit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long long choose2(long long n) { return n * (n - 1) / 2; }

long long catalog_formula(long long p, long long r, long long v) {
  return (p + 1) * (r + 1) + (p + 1) * (2 * p + 2) + (p + 1) * (2 * p + 2) * (v + 1);
}

// Closed-form clause counts per group, derived from the emission rules and
// the machine's transition table (independently of the emitters' loops).
struct GroupFormulas {
  long long g1, g2, g3, g4, g5, g6a, g6b;
};

GroupFormulas expected_counts(const Machine& m, long long p) {
  const long long r = static_cast<long long>(m.num_states()) - 1;
  const long long v = static_cast<long long>(m.num_symbols()) - 1;
  const long long w = 2 * p + 2;  // window width
  GroupFormulas g{};
  g.g1 = (p + 1) * (1 + choose2(r + 1));
  g.g2 = (p + 1) * (1 + choose2(w));
  g.g3 = (p + 1) * w * (1 + choose2(v + 1));
  g.g4 = 2 * p + 4;
  g.g5 = 1;
  g.g6a = p * w * (v + 1);
  long long per_step = 0;
  for (long long k = 0; k <= r; ++k)
    for (long long l = 0; l <= v; ++l) {
      const StateId state{static_cast<std::size_t>(k)};
      const Symbol sym{static_cast<std::size_t>(l)};
      if (m.is_halting(state)) {
        per_step += 3 * w;  // self-loop triple, always in range
        continue;
      }
      const auto* acts = m.choices(state, sym);
      if (!acts) {
        per_step += w;  // one blocking clause per cell
        continue;
      }
      for (const Action& a : *acts)
        per_step += delta(a.move) == 0 ? 3 * w : 3 * (w - 1) + 1;
      if (acts->size() > 1)
        per_step += 1 + choose2(static_cast<long long>(acts->size()));  // selector block
    }
  g.g6b = p * per_step;
  return g;
}

void criterion_1_and_2() {
  auto start = Clock::now();
  long long instances = 0, sat_instances = 0, disagreements = 0, decode_failures = 0;
  for (const std::string& name : corpus::cl_machine_names()) {
    Machine m = corpus::load(name);
    for (const auto& input : corpus::inputs_up_to(m, 4)) {
      const std::size_t n = input.size();
      for (std::size_t p = std::max<std::size_t>(1, n); p <= n + 6; ++p) {
        ReductionOutput out = reduce(m, input, static_cast<int>(p));
        SolveResult sr = solve(out.formula);
        const bool oracle = accepts_within(m, input, p);
        ++instances;
        if (sr.sat != oracle) ++disagreements;
        if (sr.sat) {
          ++sat_instances;
          try {
            Tableau t = decode(*sr.model, out);
            if (!verify_tableau(t, m, input).ok) ++decode_failures;
          } catch (const Error&) {
            ++decode_failures;
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d1;
  d1 << instances << " instances, " << disagreements << " disagreements, " << secs << "s";
  report(1, "reduction soundness/completeness", disagreements == 0 && secs < 60.0, d1.str());
  std::ostringstream d2;
  d2 << sat_instances << " models decoded, " << decode_failures << " failures";
  report(2, "model decoding", decode_failures == 0 && sat_instances > 0, d2.str());
}

void criterion_3() {
  long long checked = 0, mismatches = 0;
  for (const std::string& name : corpus::cl_machine_names()) {
    Machine m = corpus::load(name);
    std::vector<std::vector<Symbol>> inputs = {{}};
    if (!m.input_alphabet.empty()) inputs.push_back({m.input_alphabet.front()});
    for (int p : {1, 2, 4, 8})
      for (const auto& input : inputs) {
        ReductionOutput out = reduce(m, input, p);
        const long long r = static_cast<long long>(m.num_states()) - 1;
        const long long v = static_cast<long long>(m.num_symbols()) - 1;
        GroupFormulas g = expected_counts(m, p);
        auto expect = [&](const std::string& group, long long want) {
          ++checked;
          if (static_cast<long long>(out.group_count(group)) != want) ++mismatches;
        };
        ++checked;
        if (out.catalog.total() != catalog_formula(p, r, v)) ++mismatches;
        expect("G1", g.g1);
        expect("G2", g.g2);
        expect("G3", g.g3);
        expect("G4", g.g4);
        expect("G5", g.g5);
        expect("G6a", g.g6a);
        expect("G6b", g.g6b);
      }
  }
  std::ostringstream d;
  d << checked << " formula checks, " << mismatches << " mismatches";
  report(3, "size formulas", mismatches == 0, d.str());
}

void criterion_4() {
  Machine m1 = corpus::load("m1");
  auto input = to_input(m1, "1");
  std::vector<double> ratios;
  for (int p : {4, 8, 16}) {
    SizeReport rep = report_counts(reduce(m1, input, p));
    const double p4 = static_cast<double>(p) * p * p * p;
    ratios.push_back(static_cast<double>(rep.length_product) / p4);
  }
  const bool non_increasing = ratios[0] >= ratios[1] && ratios[1] >= ratios[2];
  double lo = ratios[0], hi = ratios[0];
  for (double r : ratios) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool bounded = hi / lo <= 2.0;
  std::ostringstream d;
  d << "|U|*|C|/p^4 = " << ratios[0] << ", " << ratios[1] << ", " << ratios[2]
    << " for p = 4, 8, 16; spread " << hi / lo;
  report(4, "encoding-length trend", non_increasing && bounded, d.str());
}

void criterion_5() {
  auto start = Clock::now();
  std::mt19937 rng(12345);
  long long disagreements = 0, bad_models = 0;
  for (int i = 0; i < 500; ++i) {
    CnfInstance f = corpus::random_3cnf(rng);
    SolveResult fast = solve(f);
    SolveResult slow = brute_force(f);
    if (fast.sat != slow.sat) ++disagreements;
    if (fast.sat && !check_model(f, *fast.model)) ++bad_models;
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << "500 formulas, " << disagreements << " disagreements, " << bad_models << " bad models, "
    << secs << "s";
  report(5, "solver oracle equivalence", disagreements == 0 && bad_models == 0 && secs < 30.0,
         d.str());
}

void criterion_6() {
  Machine parity = corpus::load("parity_fn");
  Presentation calc = build_calculus(parity);
  bool ok = true;
  double worst = 0;
  for (int x = 0; x <= 6; ++x) {
    auto start = Clock::now();
    RunResult r = run_from(parity, corpus::unary_config(parity, x), 200);
    if (r.verdict != Verdict::accepted) ok = false;
    Derivation d = compile_derivation(parity, r.trace, calc);
    if (d.start != encode_configuration(parity, r.trace.front())) ok = false;
    if (d.steps.empty() ? d.start != encode_configuration(parity, r.trace.back())
                        : d.steps.back().result != encode_configuration(parity, r.trace.back()))
      ok = false;
    if (!verify_derivation(d, calc)) ok = false;

    Word lhs = unary_input_word(static_cast<std::uint64_t>(x));
    Word rhs{"q0", "0"};
    if (x % 2 == 1) rhs.push_back("1");
    rhs.push_back("v");
    EquivalenceVerdict v =
        equivalent_within(lhs, rhs, calc, static_cast<std::size_t>(x) + 6, 1000000);
    if (!v.equivalent || !verify_derivation(*v.derivation, calc)) ok = false;
    worst = std::max(worst, seconds_since(start));
  }
  std::ostringstream d;
  d << "x = 0..6, worst case " << worst << "s";
  report(6, "Post-Markov correspondence, positive direction", ok && worst < 10.0, d.str());
}

void criterion_7() {
  Machine parity = corpus::load("parity_fn");
  Presentation calc = build_calculus(parity);
  bool ok = true;
  for (int x = 0; x <= 6; ++x) {
    Word a{"q1", "0"};
    for (int i = 0; i < x; ++i) a.push_back("1");
    EquivalenceVerdict v =
        divides_q0v(a, calc, SearchBounds{static_cast<std::size_t>(x) + 6, 1000000});
    const bool expect_divisible = x % 2 == 0;
    if (v.equivalent != expect_divisible) ok = false;
    if (v.equivalent && !verify_derivation(*v.derivation, calc)) ok = false;
  }
  report(7, "left divisibility by q0 v", ok, "even x divisible, odd x not found");
}

void criterion_8() {
  Machine parity = corpus::load("parity_fn");
  Presentation calc = build_calculus(parity);
  bool ok = true;
  for (std::uint64_t x = 0; x <= 6; ++x)
    for (int i = 0; i <= 1; ++i) {
      EquivalenceVerdict v = in_P(phi(x, calc), i, calc, SearchBounds{x + 7, 1000000});
      if (v.equivalent != (x % 2 == static_cast<std::uint64_t>(i))) ok = false;
    }
  report(8, "phi/P reduction instance", ok, "x = 0..6, i = 0, 1");
}

void criterion_9() {
  Presentation pad;
  pad.generators = {{"a0", GenKind::digit}, {"a1", GenKind::digit}, {"v", GenKind::terminator}};
  pad.relations.push_back({{"a0", "v"}, {"v"}, "pad"});
  std::set<Word> reach = reachable_words({"v"}, pad, 3, 1000000);
  const std::set<Word> expected = {{"v"}, {"a0", "v"}, {"a0", "a0", "v"}};
  EquivalenceVerdict v = equivalent_within({"v"}, {"a1", "v"}, pad, 3, 1000000);
  std::ostringstream d;
  d << "reachable set size " << reach.size();
  report(9, "bounded-exhaustion negative case", reach == expected && !v.equivalent, d.str());
}

void criterion_10() {
  long long checked = 0, failuresHere = 0;
  auto check = [&](bool ok) {
    ++checked;
    if (!ok) ++failuresHere;
  };
  std::mt19937 rng(777);

  for (const std::string& name : corpus::cl_machine_names()) {
    Machine m = corpus::load(name);
    check(parse_machine(emit_machine(m)) == m);
  }
  Machine parity = corpus::load("parity_fn");
  check(parse_machine(emit_machine(parity)) == parity);
  for (int i = 0; i < 100; ++i) {
    Machine m = corpus::random_machine(rng);
    check(parse_machine(emit_machine(m)) == m);
  }

  Machine m1 = corpus::load("m1");
  ReductionOutput out = reduce(m1, to_input(m1, "1"), 3);
  check(parse_dimacs(emit_dimacs(out.formula)) == out.formula);
  check(parse_dimacs(emit_dimacs_grouped(out)) == out.formula);
  for (int i = 0; i < 100; ++i) {
    CnfInstance f = corpus::random_cnf(rng);
    check(parse_dimacs(emit_dimacs(f)) == f);
  }

  check(parse_varmap(emit_varmap(out.catalog)) == out.catalog);
  for (int i = 0; i < 100; ++i) {
    VarCatalog cat = corpus::random_catalog(rng);
    check(parse_varmap(emit_varmap(cat)) == cat);
  }

  Presentation calc = build_calculus(parity);
  check(parse_presentation(emit_presentation(calc)) == calc);
  check(parse_presentation(emit_presentation(build_calculus(split_instructions(m1)))) ==
        build_calculus(split_instructions(m1)));
  for (int i = 0; i < 100; ++i) {
    Presentation p = corpus::random_presentation(rng);
    check(parse_presentation(emit_presentation(p)) == p);
  }

  for (int x = 0; x <= 4; ++x) {
    RunResult r = run_from(parity, corpus::unary_config(parity, x), 200);
    Derivation d = compile_derivation(parity, r.trace, calc);
    check(parse_derivation(emit_derivation(d)) == d);
  }
  for (int i = 0; i < 100; ++i) {
    Derivation d = corpus::random_derivation(rng);
    check(parse_derivation(emit_derivation(d)) == d);
  }

  std::ostringstream d;
  d << checked << " round trips, " << failuresHere << " failures";
  report(10, "format round trips", failuresHere == 0, d.str());
}

}  // namespace

int main() {
  try {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance suite aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (10 - failures) << "/10 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
