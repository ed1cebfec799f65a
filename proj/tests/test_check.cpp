#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgtc/check.hpp"
#include "mgtc/errors.hpp"
#include "mgtc/json_io.hpp"
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

struct Rooms {
  IoProgram io;
  Input input;
  Universe universe;
  static Rooms load(const char* program = "samples/rooms.mg") {
    IoProgram io = parse_program(slurp(program), program).to_io();
    Input input = parse_input(slurp("samples/exinp.in"), io, "exinp.in");
    Universe u = default_universe(io, input, 1);
    return {std::move(io), std::move(input), std::move(u)};
  }
};

AtomSet rooms_io_model(const Input& input) {
  AtomSet expected = input.atoms();
  auto in = [&expected](const char* p, const char* r, long long t) {
    expected.insert(GroundAtom{"in", {sym(p), sym(r), num(t)}});
  };
  in("alice", "hall", 0);
  in("bob", "hall", 0);
  in("alice", "classroom", 1);
  in("bob", "hall", 1);
  in("alice", "classroom", 2);
  in("bob", "classroom", 2);
  return expected;
}

}  // namespace

TEST_CASE("bounded truth under standard interpretations") {
  Universe u({"a", "b"}, BigInt(0), BigInt(1));
  StandardInterp interp{{GroundAtom{"p", {sym("a")}}}, {}};
  CHECK(fo_sat(interp, parse_formula("exists V (p(V)).", "f"), u));
  CHECK(!fo_sat(interp, parse_formula("forall V (p(V)).", "f"), u));

  // The first-order reduction of the squared predicate.
  StandardInterp square{
      {GroundAtom{"q", {sym("a"), sym("a")}}, GroundAtom{"q", {sym("a"), sym("b")}},
       GroundAtom{"q", {sym("b"), sym("a")}}, GroundAtom{"q", {sym("b"), sym("b")}},
       GroundAtom{"p", {sym("a")}}, GroundAtom{"p", {sym("b")}}},
      {}};
  FoFormula reduced = parse_formula(
      "forall V1 V2 (q(V1, V2) <-> (V1 = a or V1 = b) and (V2 = a or V2 = b)).",
      "sq");
  CHECK(fo_sat(square, reduced, u));

  // Placeholders evaluate through the valuation; without one, the constant
  // names itself.
  StandardInterp with_h{{GroundAtom{"p", {num(2)}}}, {{"h", num(2)}}};
  CHECK(fo_sat(with_h, parse_formula("p(h).", "h"), u));
  StandardInterp no_valuation{{GroundAtom{"p", {num(2)}}}, {}};
  CHECK(!fo_sat(no_valuation, parse_formula("p(h).", "h"), u));
}

TEST_CASE("second-order truth by witness search") {
  IoProgram io = parse_program(slurp("samples/tpr.mg"), "tpr.mg").to_io();
  SoSentence completion = complete_io(io);
  Universe u({"a", "b"}, BigInt(0), BigInt(1));
  StandardInterp interp{
      {GroundAtom{"q", {sym("a"), sym("a")}}, GroundAtom{"q", {sym("a"), sym("b")}},
       GroundAtom{"q", {sym("b"), sym("a")}}, GroundAtom{"q", {sym("b"), sym("b")}}},
      {}};
  SoSatResult result = so_sat(interp, completion, u);
  CHECK(result.satisfied);
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->at("P") ==
        std::set<std::vector<PrecomputedTerm>>{{sym("a")}, {sym("b")}});
  CHECK(result.method == SoSatResult::Method::Derived);

  // Dropping one output atom falsifies the completion.
  StandardInterp partial{
      {GroundAtom{"q", {sym("a"), sym("a")}}, GroundAtom{"q", {sym("a"), sym("b")}}},
      {}};
  CHECK(!so_sat(partial, completion, u).satisfied);

  // Sentences with empty prefixes reduce to first-order evaluation.
  SoSentence plain{{}, parse_formula("#top.", "t")};
  CHECK(so_sat(StandardInterp{{}, {}}, plain, u).satisfied);
}

TEST_CASE("second-order fallback enumeration and its guardrail") {
  // exists P (forall V (P(V) -> P(V))) has no definitional conjunct; the
  // checker must enumerate.
  SoSentence tautology{
      {{"P", 1, "p"}},
      parse_formula("forall V (#top).", "t")};
  // Attach P so the prefix is used: forall V (P(V) -> P(V)).
  FoFormula pv = FoFormula::pred("P", {FoTerm::variable("V", Sort::General)}, true);
  tautology.matrix =
      FoFormula::forall("V", Sort::General, FoFormula::implies(pv, pv));
  Universe u({"a"}, BigInt(0), BigInt(1));
  SoSatResult result = so_sat(StandardInterp{{}, {}}, tautology, u);
  CHECK(result.satisfied);
  CHECK(result.method == SoSatResult::Method::Enumerated);

  SoSentence big{{{"P", 3, "p"}}, tautology.matrix};
  CHECK_THROWS_AS(so_sat(StandardInterp{{}, {}}, big, u), LimitError);
  SoSatResult given = so_sat_with_witness(StandardInterp{{}, {}}, big, u,
                                          {{"P", {}}});
  CHECK(given.satisfied);
}

TEST_CASE("io-models of the running example") {
  Rooms rooms = Rooms::load();
  std::vector<AtomSet> models = io_models(rooms.io, rooms.input, rooms.universe);
  REQUIRE(models.size() == 1);
  CHECK(models[0] == rooms_io_model(rooms.input));
}

TEST_CASE("io-models of edge-case programs") {
  ParsedProgram empty = parse_program("#input p/1.", "empty");
  IoProgram io = empty.to_io();
  Input no_atoms = Input::empty(io);
  Universe u({"a"}, BigInt(0), BigInt(1));
  CHECK(io_models(io, no_atoms, u) == std::vector<AtomSet>{{}});

  // Horizon zero: the inertia and movement rules are vacuous.
  IoProgram rooms = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  Input h0(rooms, {{"h", num(0)}},
           {GroundAtom{"person", {sym("alice")}},
            GroundAtom{"in0", {sym("alice"), sym("hall")}}});
  Universe u0 = default_universe(rooms, h0, 1);
  std::vector<AtomSet> models = io_models(rooms, h0, u0);
  REQUIRE(models.size() == 1);
  CHECK(models[0] == AtomSet{GroundAtom{"person", {sym("alice")}},
                             GroundAtom{"in0", {sym("alice"), sym("hall")}},
                             GroundAtom{"in", {sym("alice"), sym("hall"), num(0)}}});
}

TEST_CASE("the two translation routes agree on reference programs") {
  Universe u({}, BigInt(0), BigInt(1));
  Theorem1Report even =
      verify_theorem1(parse_program("p :- not q. q :- not p.", "even").program, u);
  CHECK(even.matches);
  REQUIRE(even.via_tau.size() == 2);
  CHECK(even.via_tau[0] == AtomSet{GroundAtom{"p", {}}});
  CHECK(even.via_tau[1] == AtomSet{GroundAtom{"q", {}}});

  Theorem1Report empty = verify_theorem1(Program{}, u);
  CHECK(empty.matches);
  CHECK(empty.via_tau == std::vector<AtomSet>{{}});

  Program tpr = parse_program(slurp("samples/tpr.mg"), "tpr.mg").program;
  Theorem1Report report = verify_theorem1(tpr, Universe({"a", "b"}, BigInt(0), BigInt(1)));
  CHECK(report.matches);
  REQUIRE(report.via_tau.size() == 1);
  CHECK(report.via_tau[0] ==
        AtomSet{GroundAtom{"p", {sym("a")}}, GroundAtom{"p", {sym("b")}},
                GroundAtom{"q", {sym("a"), sym("a")}},
                GroundAtom{"q", {sym("a"), sym("b")}},
                GroundAtom{"q", {sym("b"), sym("a")}},
                GroundAtom{"q", {sym("b"), sym("b")}}});
}

TEST_CASE("the three io-model characterizations agree on the rooms example") {
  Rooms rooms = Rooms::load();
  AtomSet model = rooms_io_model(rooms.input);
  Theorem2Report report =
      verify_theorem2(rooms.io, rooms.input, model, rooms.universe);
  CHECK(report.applicable);
  CHECK(report.input_projection_matches);
  CHECK(report.cond_a);
  CHECK(report.cond_b);
  CHECK(report.cond_c);
  CHECK(report.equivalent);
  REQUIRE(report.witness_b.has_value());
  CHECK(report.witness_b->at("In_building").size() == 6);

  // Removing or adding one output atom flips all three conditions.
  AtomSet missing = model;
  missing.erase(GroundAtom{"in", {sym("alice"), sym("hall"), num(0)}});
  Theorem2Report miss = verify_theorem2(rooms.io, rooms.input, missing, rooms.universe);
  CHECK(!miss.cond_a);
  CHECK(!miss.cond_b);
  CHECK(!miss.cond_c);
  CHECK(miss.equivalent);

  AtomSet extra = model;
  extra.insert(GroundAtom{"in", {sym("alice"), sym("classroom"), num(0)}});
  Theorem2Report ex = verify_theorem2(rooms.io, rooms.input, extra, rooms.universe);
  CHECK(!ex.cond_a);
  CHECK(!ex.cond_b);
  CHECK(!ex.cond_c);
  CHECK(ex.equivalent);
}

TEST_CASE("non-locally-tight programs are reported inapplicable") {
  ParsedProgram parsed = parse_program("#output p/1.\np(X) :- p(X).", "loop");
  IoProgram io = parsed.to_io();
  Input input = Input::empty(io);
  Universe u({"a"}, BigInt(0), BigInt(1));
  AtomSet candidate{GroundAtom{"p", {sym("a")}}};
  Theorem2Report report = verify_theorem2(io, input, candidate, u);
  CHECK(!report.applicable);
  // The completion holds for the circularly supported set, yet it is not
  // an io-model; exactly the gap local tightness closes.
  CHECK(!report.cond_a);
  CHECK(report.cond_b);
  CHECK(report.cond_c);
  CHECK(!report.equivalent);
}

TEST_CASE("main lemma verifier on the circular toy theory") {
  ParsedTheory theory = parse_theory(slurp("samples/toy.fo"), "toy.fo");
  CompletableSet gamma(theory.sentences, theory.intensional);
  Universe u({}, BigInt(-1), BigInt(2));

  MainLemmaReport ok =
      verify_main_lemma(gamma, {GroundAtom{"p", {num(0)}}}, u);
  CHECK(ok.hypothesis_holds);
  CHECK(ok.stable);
  CHECK(ok.satisfies_completion);
  REQUIRE(ok.equivalence_holds.has_value());
  CHECK(*ok.equivalence_holds);

  MainLemmaReport violated = verify_main_lemma(
      gamma, {GroundAtom{"p", {num(0)}}, GroundAtom{"p", {num(1)}}}, u);
  CHECK(!violated.hypothesis_holds);
  CHECK(violated.cycle == std::vector<GroundAtom>{GroundAtom{"p", {num(1)}}});
  CHECK(!violated.stable);
  CHECK(violated.satisfies_completion);
  CHECK(!violated.equivalence_holds.has_value());

  MainLemmaReport trivial = verify_main_lemma(CompletableSet({}, {{"p", 1}}), {}, u);
  CHECK(trivial.hypothesis_holds);
  REQUIRE(trivial.equivalence_holds.has_value());
  CHECK(*trivial.equivalence_holds);
}

TEST_CASE("supportedness coincides with the completion always") {
  testing::Rng rng(61);
  Universe u({}, BigInt(0), BigInt(1));
  for (int i = 0; i < 150; ++i) {
    CompletableSet gamma = testing::random_completable_set(rng);
    AtomSet atoms = testing::random_interp_atoms(rng);
    StandardInterp interp{atoms, {}};
    bool is_model = std::all_of(
        gamma.sentences().begin(), gamma.sentences().end(),
        [&](const FoFormula& s) { return fo_sat(interp, s, u); });
    bool supported = is_model && is_supported_fo(interp, gamma, u);
    bool comp = fo_sat(interp, complete(gamma), u);
    CHECK(supported == comp);
  }
}

TEST_CASE("the three characterizations agree on random locally tight programs") {
  // For every candidate public set whose input projection matches the
  // input, membership in the io-models and the two completion conditions
  // coincide.
  testing::Rng rng(73);
  Universe u = testing::small_universe();
  int programs_checked = 0;
  while (programs_checked < 12) {
    Program program = testing::random_program(rng);
    std::set<PredSym> preds = program.predicate_symbols();
    if (preds.count({"base", 1})) continue;
    for (Rule& rule : program.rules)
      if (rng.coin(0.4))
        rule.body.push_back(
            Literal{0, Atom{"base", {testing::safe_term(rng, rule.variables())}}});
    if (!is_tight(program)) continue;
    // Outputs p/1 and q/1; r/0pr (when it occurs) stays private.
    std::set<PredSym> outputs;
    for (const PredSym& p : program.head_symbols())
      if (p.name != "r") outputs.insert(p);
    IoProgram io(program, {}, {{"base", 1}}, outputs);
    AtomSet input_atoms;
    for (const PrecomputedTerm& t : u.terms())
      if (rng.coin()) input_atoms.insert(GroundAtom{"base", {t}});
    Input input(io, {}, input_atoms);
    ++programs_checked;

    std::vector<AtomSet> models = io_models(io, input, u);
    SoSentence completion = complete_io(io);
    // Candidate public sets: subsets of the output atoms over a small
    // sample, each extended by the input atoms.
    std::vector<GroundAtom> output_pool;
    for (const PredSym& p : outputs)
      for (const PrecomputedTerm& t : u.terms()) {
        if (p.arity == 1)
          output_pool.push_back(GroundAtom{p.name, {t}});
        else if (p.arity == 0)
          output_pool.push_back(GroundAtom{p.name, {}});
      }
    if (output_pool.size() > 6) output_pool.resize(6);
    for (std::uint64_t mask = 0; mask < (1ull << output_pool.size()); ++mask) {
      AtomSet candidate = input_atoms;
      for (std::size_t bit = 0; bit < output_pool.size(); ++bit)
        if (mask & (1ull << bit)) candidate.insert(output_pool[bit]);
      bool a = std::find(models.begin(), models.end(), candidate) != models.end();
      bool b = so_sat(StandardInterp{candidate, {}}, completion, u).satisfied;
      CHECK(a == b);
    }
  }
}

TEST_CASE("equivalence of a program with itself") {
  IoProgram rooms = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  InputDomain domain;
  domain.valuations.push_back({{"h", num(1)}});
  domain.atom_base = {GroundAtom{"person", {sym("alice")}},
                      GroundAtom{"in0", {sym("alice"), sym("hall")}}};
  Universe u({"alice", "hall"}, BigInt(-1), BigInt(2));
  EquivalenceReport report = check_equivalence(
      rooms, rooms, FoFormula::top(), domain, u);
  CHECK(report.equivalent);
  CHECK(report.inputs_checked == 4);
  CHECK(report.inputs_filtered == 0);
}

TEST_CASE("equivalence rejects non-comparable programs and bad assumptions") {
  IoProgram rooms = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  IoProgram tpr = parse_program(slurp("samples/tpr.mg"), "tpr.mg").to_io();
  InputDomain domain;
  domain.valuations.push_back({});
  Universe u({"a"}, BigInt(0), BigInt(1));
  CHECK_THROWS_AS(check_equivalence(rooms, tpr, FoFormula::top(), domain, u),
                  std::invalid_argument);
  // Assumptions may only mention input symbols.
  CHECK_THROWS_AS(
      check_equivalence(rooms, rooms,
                        parse_formula("forall V1 V2 V3 (in(V1, V2, V3) -> #top).",
                                      "bad"),
                        domain, u),
      std::invalid_argument);
}

TEST_CASE("building an interpretation and projecting it back") {
  testing::Rng rng(67);
  for (int i = 0; i < 50; ++i) {
    AtomSet atoms = testing::random_interp_atoms(rng);
    StandardInterp interp{atoms, {}};
    CHECK(interp.down() == atoms);
  }
}

TEST_CASE("substituting a valuation commutes with interpreting through it") {
  testing::Rng rng(71);
  Universe u({"a"}, BigInt(0), BigInt(2));
  Valuation v{{"b", num(1)}};
  for (int i = 0; i < 150; ++i) {
    // Formulas over constants 0/1/a plus the placeholder b.
    FoFormula f = testing::random_antecedent(rng, "", 3);
    if (rng.coin())
      f = FoFormula::disj({f, FoFormula::pred("p", {FoTerm::symbolic("b")})});
    AtomSet atoms = testing::random_interp_atoms(rng);
    StandardInterp plain{atoms, {}};
    StandardInterp with_v{atoms, v};
    CHECK(fo_sat(plain, apply_valuation(f, v), u) == fo_sat(with_v, f, u));
  }
}

TEST_CASE("reports serialize to json") {
  Rooms rooms = Rooms::load();
  AtomSet model = rooms_io_model(rooms.input);
  Theorem2Report report =
      verify_theorem2(rooms.io, rooms.input, model, rooms.universe);
  nlohmann::json j = to_json(report);
  CHECK(j["verdict"] == "conditions_equivalent");
  CHECK(j["conditions"]["a_io_model"] == true);
  CHECK(to_json(rooms.universe)["int_min"] == "-1");
}
