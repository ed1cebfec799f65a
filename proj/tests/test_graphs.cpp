#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgtc/check.hpp"
#include "mgtc/graphs.hpp"
#include "mgtc/parser.hpp"
#include "testutil.hpp"

using namespace mgtc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

PrecomputedTerm sym(const char* s) { return PrecomputedTerm::symbolic(s); }
PrecomputedTerm num(long long n) { return PrecomputedTerm::numeral(n); }

}  // namespace

TEST_CASE("predicate dependency graphs and tightness") {
  Program tpr = parse_program(slurp("samples/tpr.mg"), "tpr.mg").program;
  PredDepGraph g = pred_graph(tpr);
  CHECK(g.edges ==
        std::set<std::pair<PredSym, PredSym>>{{{"q", 2}, {"p", 1}}});
  CHECK(is_tight(tpr));

  Program rooms = parse_program(slurp("samples/rooms.mg"), "rooms.mg").program;
  PredDepGraph rg = pred_graph(rooms);
  CHECK(rg.edges.count({{"in", 3}, {"in", 3}}));  // the inertia self-loop
  CHECK(!is_tight(rooms));
  auto cycle = find_pred_cycle(rg);
  REQUIRE(cycle.has_value());
  CHECK(*cycle == std::vector<PredSym>{{"in", 3}});

  CHECK(is_tight(Program{}));
  CHECK(pred_graph(Program{}).edges.empty());

  // Negated bodies contribute no edges.
  Program negated = parse_program("p(X) :- not p(X).", "neg").program;
  CHECK(is_tight(negated));
}

TEST_CASE("the atom dependency graph of the rooms program") {
  IoProgram io = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  Input input = parse_input(slurp("samples/exinp.in"), io, "exinp.in");
  Universe u = default_universe(io, input, 1);
  AtomDepGraph graph = atom_graph(io, input, u);

  // Expected: in_building(p,t) -> in(p,r,t) for all universe terms, and
  // in(p,r,i+1) -> in(p,r,i) for 0 <= i < 2.
  std::set<std::pair<GroundAtom, GroundAtom>> expected;
  for (const PrecomputedTerm& p : u.terms())
    for (const PrecomputedTerm& r : u.terms())
      for (const PrecomputedTerm& t : u.terms())
        expected.insert({GroundAtom{"in_building", {p, t}},
                         GroundAtom{"in", {p, r, t}}});
  for (const PrecomputedTerm& p : u.terms())
    for (const PrecomputedTerm& r : u.terms())
      for (long long i = 0; i < 2; ++i)
        expected.insert({GroundAtom{"in", {p, r, num(i + 1)}},
                         GroundAtom{"in", {p, r, num(i)}}});
  CHECK(graph.edges == expected);
  CHECK(graph.edges.size() == 729 + 162);

  // Every edge records a witnessing ground instance.
  for (const auto& edge : graph.edges)
    CHECK(graph.provenance.count(edge) == 1);
}

TEST_CASE("constraints contribute no atom dependencies") {
  ParsedProgram parsed = parse_program(
      "#input p/1.\n#output q/1.\n:- p(X), not q(X).", "constraint");
  IoProgram io = parsed.to_io();
  Input input = Input::empty(io);
  Universe u({"a"}, BigInt(0), BigInt(1));
  CHECK(atom_graph(io, input, u).edges.empty());
}

TEST_CASE("self-recursive rules produce self-loops at every vertex") {
  ParsedProgram parsed = parse_program("#output p/1.\np(X) :- p(X).", "self");
  IoProgram io = parsed.to_io();
  Universe u({"a"}, BigInt(1), BigInt(1));
  AtomDepGraph graph = atom_graph(io, Input::empty(io), u);
  std::set<std::pair<GroundAtom, GroundAtom>> expected{
      {GroundAtom{"p", {num(1)}}, GroundAtom{"p", {num(1)}}},
      {GroundAtom{"p", {sym("a")}}, GroundAtom{"p", {sym("a")}}}};
  CHECK(graph.edges == expected);

  LocalTightness verdict = is_locally_tight(io, Input::empty(io), u);
  CHECK(verdict.kind == LocalTightness::Kind::CycleFound);
  REQUIRE(verdict.cycle.size() == 1);
  CHECK(verdict.cycle[0] == GroundAtom{"p", {num(1)}});
  REQUIRE(verdict.cycle_provenance.size() == 1);
  CHECK(verdict.cycle_provenance[0].to_string() == "p(1) :- p(1).");
}

TEST_CASE("input-symbol conditions gate edges") {
  // The body literal over the input symbol must be satisfiable in the
  // input for the instance to contribute an edge.
  ParsedProgram parsed = parse_program(
      "#input base/1.\n#output p/1.\np(X) :- p(X), base(X).", "gate");
  IoProgram io = parsed.to_io();
  Universe u({"a", "b"}, BigInt(0), BigInt(0));

  Input empty = Input::empty(io);
  CHECK(atom_graph(io, empty, u).edges.empty());

  Input with_a(io, {}, {GroundAtom{"base", {sym("a")}}});
  AtomDepGraph graph = atom_graph(io, with_a, u);
  CHECK(graph.edges ==
        std::set<std::pair<GroundAtom, GroundAtom>>{
            {GroundAtom{"p", {sym("a")}}, GroundAtom{"p", {sym("a")}}}});

  // Negated input literals require a value outside the input.
  ParsedProgram neg = parse_program(
      "#input base/1.\n#output p/1.\np(X) :- p(X), not base(X).", "neg");
  IoProgram io_neg = neg.to_io();
  AtomDepGraph neg_graph = atom_graph(io_neg, with_a, u);
  CHECK(neg_graph.edges.count(
      {GroundAtom{"p", {sym("b")}}, GroundAtom{"p", {sym("b")}}}));
  CHECK(!neg_graph.edges.count(
      {GroundAtom{"p", {sym("a")}}, GroundAtom{"p", {sym("a")}}}));
}

TEST_CASE("local tightness of the rooms programs") {
  for (const char* path : {"samples/rooms.mg", "samples/rooms2.mg"}) {
    IoProgram io = parse_program(slurp(path), path).to_io();
    Input input = parse_input(slurp("samples/exinp.in"), io, "exinp.in");
    Universe u = default_universe(io, input, 1);
    LocalTightness verdict = is_locally_tight(io, input, u);
    CHECK(verdict.kind == LocalTightness::Kind::LocallyTight);
  }

  // Tight programs short-circuit.
  IoProgram tpr = parse_program(slurp("samples/tpr.mg"), "tpr.mg").to_io();
  Universe u = default_universe(tpr.program(), 1);
  CHECK(is_locally_tight(tpr, Input::empty(tpr), u).kind ==
        LocalTightness::Kind::TightShortcut);
  CHECK(is_locally_tight(tpr, Input::empty(tpr), u, false).kind ==
        LocalTightness::Kind::LocallyTight);
}

TEST_CASE("strictly positive atoms") {
  std::set<PredSym> intensional{{"p", 1}};
  Universe u({}, BigInt(-1), BigInt(2));
  AtomSet j{GroundAtom{"p", {num(0)}}, GroundAtom{"p", {num(1)}}};
  StandardInterp interp{j, {{"b", num(1)}}};

  // 1 = b and p(1), with b denoting 1: both conjuncts hold, only the
  // intensional atom is collected.
  FoFormula f = FoFormula::conj(
      {FoFormula::cmp(Rel::Eq, FoTerm::numeral(1), FoTerm::symbolic("b")),
       FoFormula::pred("p", {FoTerm::numeral(1)})});
  CHECK(pos_atoms(interp, f, intensional, u) ==
        std::set<GroundAtom>{GroundAtom{"p", {num(1)}}});

  // Unsatisfied formulas contribute nothing.
  FoFormula unsat = FoFormula::conj(
      {FoFormula::cmp(Rel::Eq, FoTerm::numeral(0), FoTerm::symbolic("b")),
       FoFormula::pred("p", {FoTerm::numeral(0)})});
  CHECK(pos_atoms(interp, unsat, intensional, u).empty());

  // Antecedents are ignored.
  StandardInterp plain{AtomSet{GroundAtom{"p", {sym("a")}}, GroundAtom{"q", {}}}, {}};
  FoFormula impl = FoFormula::implies(FoFormula::pred("q", {}),
                                      FoFormula::pred("p", {FoTerm::symbolic("a")}));
  CHECK(pos_atoms(plain, impl, intensional, Universe({"a"}, BigInt(0), BigInt(1))) ==
        std::set<GroundAtom>{GroundAtom{"p", {sym("a")}}});
}

TEST_CASE("positive atoms are always true intensional atoms") {
  testing::Rng rng(47);
  Universe u({}, BigInt(0), BigInt(1));
  std::set<PredSym> intensional{{"p", 1}, {"q", 1}, {"r", 0}};
  for (int i = 0; i < 200; ++i) {
    FoFormula f = testing::random_antecedent(rng, "", 3);
    AtomSet atoms = testing::random_interp_atoms(rng);
    StandardInterp interp{atoms, {}};
    for (const GroundAtom& a : pos_atoms(interp, f, intensional, u)) {
      CHECK(intensional.count(a.symbol()) == 1);
      CHECK(atoms.count(a) == 1);
    }
  }
}

TEST_CASE("the dependency graph of the circular toy theory") {
  CompletableSet gamma = [] {
    ParsedTheory theory = parse_theory(slurp("samples/toy.fo"), "toy.fo");
    return CompletableSet(theory.sentences, theory.intensional);
  }();
  Universe u({}, BigInt(-1), BigInt(2));

  StandardInterp i_only{{GroundAtom{"p", {num(0)}}}, {}};
  CHECK(gsp_graph(i_only, gamma, u).edges.empty());

  StandardInterp both{{GroundAtom{"p", {num(0)}}, GroundAtom{"p", {num(1)}}}, {}};
  GspGraph g = gsp_graph(both, gamma, u);
  CHECK(g.edges ==
        std::set<std::pair<GroundAtom, GroundAtom>>{
            {GroundAtom{"p", {num(1)}}, GroundAtom{"p", {num(1)}}}});
  CHECK(g.vertices ==
        std::vector<GroundAtom>{GroundAtom{"p", {num(0)}},
                                GroundAtom{"p", {num(1)}}});

  CompletableSet empty({}, {{"p", 1}});
  CHECK(gsp_graph(both, empty, u).edges.empty());
}

TEST_CASE("the atom graph dominates the completable-set graph") {
  // Every dependency visible through the translated sentences is an edge
  // of the atom dependency graph.
  testing::Rng rng(53);
  Universe u = testing::small_universe();
  int done = 0;
  for (int i = 0; i < 120 && done < 60; ++i) {
    Program program = testing::random_program(rng);
    IoProgram io(program, {}, {}, program.predicate_symbols());
    Input input = Input::empty(io);
    AtomDepGraph atom = atom_graph(io, input, u);
    CompletableSet gamma = tau_star(program);
    testing::Rng jrng(100 + static_cast<unsigned>(i));
    AtomSet atoms = testing::random_interp_atoms(jrng);
    atoms.erase(GroundAtom{"e", {num(0)}});
    atoms.erase(GroundAtom{"e", {num(1)}});
    StandardInterp interp{atoms, {}};
    GspGraph gsp = gsp_graph(interp, gamma, u);
    ++done;
    for (const auto& edge : gsp.edges) CHECK(atom.edges.count(edge) == 1);
  }
  CHECK(done >= 60);
}

TEST_CASE("tight programs are locally tight on sampled inputs") {
  testing::Rng rng(59);
  Universe u = testing::small_universe();
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    Program program = testing::random_program(rng);
    if (!is_tight(program)) continue;
    IoProgram io(program, {}, {}, program.predicate_symbols());
    LocalTightness full = is_locally_tight(io, Input::empty(io), u, false);
    CHECK(full.kind == LocalTightness::Kind::LocallyTight);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("cycle detection is insensitive to edge insertion order") {
  GroundAtom a{"p", {num(0)}}, b{"p", {num(1)}}, c{"p", {num(2)}};
  std::set<std::pair<GroundAtom, GroundAtom>> forward{{a, b}, {b, c}, {c, a}};
  std::set<std::pair<GroundAtom, GroundAtom>> backward{{c, a}, {b, c}, {a, b}};
  auto c1 = find_atom_cycle(forward);
  auto c2 = find_atom_cycle(backward);
  REQUIRE(c1.has_value());
  REQUIRE(c2.has_value());
  CHECK(*c1 == *c2);

  CHECK(!find_atom_cycle({{a, b}, {b, c}}).has_value());
}

TEST_CASE("dot exports are deterministic") {
  Program tpr = parse_program(slurp("samples/tpr.mg"), "tpr.mg").program;
  PredDepGraph g = pred_graph(tpr);
  CHECK(g.to_dot() == g.to_dot());
  CHECK(g.to_dot().find("\"q/2\" -> \"p/1\"") != std::string::npos);
}
