#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgtc/fol.hpp"
#include "mgtc/parser.hpp"
#include "mgtc/stable.hpp"
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

Rule parse_rule(const std::string& text) {
  return parse_program(text, "rule").program.rules.at(0);
}

FoTerm gvar(const char* name) { return FoTerm::variable(name, Sort::General); }

}  // namespace

TEST_CASE("value formulas for constants and variables are equalities") {
  CHECK(val_formula(Term::symbolic("c"), "V").to_string() == "V = c");
  CHECK(val_formula(Term::variable("X"), "V").to_string() == "V = X");
  CHECK(val_formula(Term::numeral(3), "V").to_string() == "V = 3");
}

TEST_CASE("value formulas for arithmetic introduce integer witnesses") {
  Term plus = Term::bin(BinOp::Add, Term::variable("X"), Term::numeral(1));
  CHECK(val_formula(plus, "V").to_string() ==
        "∃I J (I = X ∧ J = 1 ∧ V = I + J)");

  Term abs = Term::abs(Term::variable("X"));
  CHECK(val_formula(abs, "V").to_string() ==
        "∃I (I = X ∧ V = |I|)");

  Term range = Term::bin(BinOp::Interval, Term::variable("X"), Term::variable("Y"));
  CHECK(val_formula(range, "V").to_string() ==
        "∃I J K (I = X ∧ J = Y ∧ I ≤ K ∧ K ≤ J "
        "∧ V = K)");

  // Nested arithmetic allocates suffixed witnesses deterministically.
  Term nested = Term::bin(BinOp::Add, plus, Term::numeral(2));
  CHECK(val_formula(nested, "V").to_string() ==
        "∃I J (∃I1 J1 (I1 = X ∧ J1 = 1 ∧ I = I1 + J1) "
        "∧ J = 2 ∧ V = I + J)");
}

TEST_CASE("value formulas for division bound the quotient magnitude") {
  Term div = Term::bin(BinOp::Div, Term::variable("X"), Term::variable("Y"));
  CHECK(val_formula(div, "V").to_string() ==
        "∃I J K (I = X ∧ J = Y ∧ K × |J| ≤ |I| ∧ "
        "|I| < (K + 1) × |J| ∧ (I × J ≥ 0 ∧ V = K "
        "∨ I × J < 0 ∧ V = -K))");

  Term mod = Term::bin(BinOp::Mod, Term::variable("X"), Term::variable("Y"));
  CHECK(val_formula(mod, "V").to_string() ==
        "∃I J K (I = X ∧ J = Y ∧ K × |J| ≤ |I| ∧ "
        "|I| < (K + 1) × |J| ∧ (I × J ≥ 0 ∧ V = I - K "
        "× J ∨ I × J < 0 ∧ V = I + K × J))");
}

TEST_CASE("body translation of literals and comparisons") {
  FreshVars fresh;
  Literal lit{0, Atom{"p", {Term::variable("X")}}};
  CHECK(tau_b(lit, fresh).to_string() == "∃V (V = X ∧ p(V))");

  FreshVars fresh2;
  Literal neg{1, Atom{"q", {}}};
  CHECK(tau_b(neg, fresh2).to_string() == "¬q");

  FreshVars fresh3;
  Literal dneg{2, Atom{"p", {Term::numeral(0)}}};
  CHECK(tau_b(dneg, fresh3).to_string() ==
        "∃V (V = 0 ∧ ¬¬p(V))");

  FreshVars fresh4;
  Comparison cmp{Term::variable("T"), Rel::Eq,
                 Term::bin(BinOp::Interval, Term::numeral(0),
                           Term::bin(BinOp::Sub, Term::symbolic("h"),
                                     Term::numeral(1)))};
  CHECK(tau_b(cmp, fresh4).to_string() ==
        "∃V1 V2 (V1 = T ∧ ∃I J K (I = 0 ∧ ∃I1 J1 (I1 "
        "= h ∧ J1 = 1 ∧ J = I1 - J1) ∧ I ≤ K ∧ K "
        "≤ J ∧ V2 = K) ∧ V1 = V2)");
}

TEST_CASE("value variables avoid capturing program variables") {
  FreshVars fresh;
  Literal lit{0, Atom{"p", {Term::variable("V")}}};
  // The bound variable would capture V, so the next free name is used.
  CHECK(tau_b(lit, fresh).to_string() == "∃V1 (V1 = V ∧ p(V1))");
}

TEST_CASE("the first-order translation of the two-fact program") {
  Program program = parse_program(slurp("samples/tpr.mg"), "tpr.mg").program;
  CompletableSet gamma = tau_star(program);
  REQUIRE(gamma.sentences().size() == 3);
  CHECK(gamma.sentences()[0].to_string() == "∀V1 (V1 = a → p(V1))");
  CHECK(gamma.sentences()[1].to_string() == "∀V1 (V1 = b → p(V1))");
  CHECK(gamma.sentences()[2].to_string() ==
        "∀X Y V1 V2 (V1 = X ∧ V2 = Y ∧ ∃V (V = X ∧ "
        "p(V)) ∧ ∃V (V = Y ∧ p(V)) → q(V1, V2))");
  CHECK(gamma.intensional() == std::vector<PredSym>{{"p", 1}, {"q", 2}});
}

TEST_CASE("translation of constraints and choice rules") {
  Program constraint = parse_program(":- p(X).", "c").program;
  CompletableSet gamma = tau_star(constraint);
  // Implication into falsity prints as negation.
  CHECK(gamma.sentences()[0].to_string() ==
        "∀X (¬∃V (V = X ∧ p(V)))");
  CHECK(gamma.members()[0].consequent.kind() == FoFormula::Kind::Bot);

  Program inertia = parse_program(slurp("samples/rooms.mg"), "rooms.mg").program;
  CompletableSet rooms = tau_star(inertia);
  // The choice rule gains a doubly negated head atom in its antecedent.
  std::string choice = rooms.sentences()[2].to_string();
  CHECK(choice.find("¬¬in(V1, V2, V3)") != std::string::npos);
  CHECK(choice.substr(0, choice.find(' ')) == "∀P");
}

TEST_CASE("head tuples share names across rules defining one symbol") {
  // V1 occurs in the program, so head tuples start at V2.
  Program program = parse_program("p(V1) :- q(V1). p(b).", "shift").program;
  CompletableSet gamma = tau_star(program);
  CHECK(gamma.sentences()[0].to_string() ==
        "∀V1 V2 (V2 = V1 ∧ ∃V (V = V1 ∧ q(V)) → p(V2))");
  CHECK(gamma.sentences()[1].to_string() == "∀V2 (V2 = b → p(V2))");
}

TEST_CASE("completed definitions") {
  Program program = parse_program(slurp("samples/tpr.mg"), "tpr.mg").program;
  CompletableSet gamma = tau_star(program);
  CHECK(completed_definition({"p", 1}, gamma).to_string() ==
        "∀V1 (p(V1) ↔ V1 = a ∨ V1 = b)");
  CHECK(completed_definition({"q", 2}, gamma).to_string() ==
        "∀V1 V2 (q(V1, V2) ↔ ∃X Y (V1 = X ∧ V2 = Y ∧ "
        "∃V (V = X ∧ p(V)) ∧ ∃V (V = Y ∧ p(V))))");

  // Completed definitions are sentences.
  for (const PredSym& p : gamma.intensional()) {
    std::vector<std::pair<std::string, Sort>> free;
    completed_definition(p, gamma).collect_free_variables(free);
    CHECK(free.empty());
  }

  // A symbol with no defining sentences gets the empty disjunction.
  CompletableSet with_r(
      {gamma.sentences()[0]},
      {{"p", 1}, {"r", 1}});
  CHECK(completed_definition({"r", 1}, with_r).to_string() ==
        "∀V1 (r(V1) ↔ ⊥)");
}

TEST_CASE("the completion of the circular toy theory") {
  // forall V (V = a -> p(V)) and forall V (V = b and p(b) -> p(V)).
  FoFormula def1 = FoFormula::forall(
      "V", Sort::General,
      FoFormula::implies(FoFormula::cmp(Rel::Eq, gvar("V"), FoTerm::symbolic("a")),
                         FoFormula::pred("p", {gvar("V")})));
  FoFormula def2 = FoFormula::forall(
      "V", Sort::General,
      FoFormula::implies(
          FoFormula::conj(
              {FoFormula::cmp(Rel::Eq, gvar("V"), FoTerm::symbolic("b")),
               FoFormula::pred("p", {FoTerm::symbolic("b")})}),
          FoFormula::pred("p", {gvar("V")})));
  CompletableSet gamma({def1, def2}, {{"p", 1}});
  CHECK(complete(gamma).to_string() ==
        "∀V (p(V) ↔ V = a ∨ V = b ∧ p(b))");
}

TEST_CASE("completable sets reject malformed members") {
  // Consequent must apply the symbol to distinct variables.
  FoFormula ground_head = FoFormula::implies(
      FoFormula::pred("q", {}), FoFormula::pred("p", {FoTerm::numeral(0)}));
  CHECK_THROWS_AS(CompletableSet({ground_head}, {{"p", 1}}),
                  std::invalid_argument);

  FoFormula repeated = FoFormula::forall(
      "V", Sort::General,
      FoFormula::implies(FoFormula::pred("q", {}),
                         FoFormula::pred("p", {gvar("V"), gvar("V")})));
  CHECK_THROWS_AS(CompletableSet({repeated}, {{"p", 2}}), std::invalid_argument);

  // Same symbol, different consequent tuples.
  FoFormula f1 = FoFormula::forall(
      "V", Sort::General,
      FoFormula::implies(FoFormula::pred("q", {}), FoFormula::pred("p", {gvar("V")})));
  FoFormula f2 = FoFormula::forall(
      "W", Sort::General,
      FoFormula::implies(FoFormula::pred("q", {}), FoFormula::pred("p", {gvar("W")})));
  CHECK_THROWS_AS(CompletableSet({f1, f2}, {{"p", 1}}), std::invalid_argument);

  // Not an implication at all.
  CHECK_THROWS_AS(CompletableSet({FoFormula::pred("p", {FoTerm::numeral(0)})},
                                 {{"p", 1}}),
                  std::invalid_argument);

  // Every translation output satisfies the invariant by construction.
  testing::Rng rng(41);
  for (int i = 0; i < 50; ++i)
    CHECK_NOTHROW(tau_star(testing::random_program(rng)));
}

TEST_CASE("the completion of an io-program quantifies private symbols") {
  IoProgram io = parse_program(slurp("samples/tpr.mg"), "tpr.mg").to_io();
  SoSentence completion = complete_io(io);
  REQUIRE(completion.prefix.size() == 1);
  CHECK(completion.prefix[0].name == "P");
  CHECK(completion.prefix[0].arity == 1);
  CHECK(completion.prefix[0].original == "p");

  // Structural form of the completion, private symbol replaced throughout.
  FoFormula p_def = FoFormula::forall(
      "V1", Sort::General,
      FoFormula::iff(
          FoFormula::pred("P", {gvar("V1")}, true),
          FoFormula::disj(
              {FoFormula::cmp(Rel::Eq, gvar("V1"), FoTerm::symbolic("a")),
               FoFormula::cmp(Rel::Eq, gvar("V1"), FoTerm::symbolic("b"))})));
  FoFormula q_member = FoFormula::conj(
      {FoFormula::cmp(Rel::Eq, gvar("V1"), gvar("X")),
       FoFormula::cmp(Rel::Eq, gvar("V2"), gvar("Y")),
       FoFormula::exists("V", Sort::General,
                         FoFormula::conj({FoFormula::cmp(Rel::Eq, gvar("V"), gvar("X")),
                                          FoFormula::pred("P", {gvar("V")}, true)})),
       FoFormula::exists(
           "V", Sort::General,
           FoFormula::conj({FoFormula::cmp(Rel::Eq, gvar("V"), gvar("Y")),
                            FoFormula::pred("P", {gvar("V")}, true)}))});
  FoFormula q_def = FoFormula::forall(
      "V1", Sort::General,
      FoFormula::forall(
          "V2", Sort::General,
          FoFormula::iff(FoFormula::pred("q", {gvar("V1"), gvar("V2")}),
                         FoFormula::exists("X", Sort::General,
                                           FoFormula::exists("Y", Sort::General,
                                                             q_member)))));
  CHECK(completion.matrix == FoFormula::conj({p_def, q_def}));

  // A program with no private symbols has an empty prefix.
  IoProgram no_private = parse_program("#output p/1.\np(a).", "np").to_io();
  CHECK(complete_io(no_private).prefix.empty());

  // The rooms program: one predicate variable for the auxiliary symbol,
  // completed definitions for in/3 and for it, plus the two constraints.
  IoProgram rooms = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  SoSentence rc = complete_io(rooms);
  REQUIRE(rc.prefix.size() == 1);
  CHECK(rc.prefix[0].original == "in_building");
  CHECK(rc.prefix[0].arity == 2);
  REQUIRE(rc.matrix.kind() == FoFormula::Kind::And);
  REQUIRE(rc.matrix.members().size() == 4);
  CHECK(rc.matrix.members()[0].to_string().rfind("∀V1 V2 V3 (in(V1, V2, V3)",
                                                 0) == 0);
  CHECK(rc.matrix.members()[1].to_string().rfind("∀V1 V2 (In_building(V1, V2)",
                                                 0) == 0);
  // Input symbols stay extensional, so the two remaining conjuncts are the
  // constraints (universally closed implications into falsity).
  for (std::size_t i = 2; i < 4; ++i) {
    const FoFormula* body = &rc.matrix.members()[i];
    while (body->kind() == FoFormula::Kind::Forall) body = &body->quant_body();
    REQUIRE(body->kind() == FoFormula::Kind::Implies);
    CHECK(body->consequent().kind() == FoFormula::Kind::Bot);
  }
}

TEST_CASE("bounded propositional images") {
  Universe u({"a"}, BigInt(1), BigInt(1));
  FoFormula all = FoFormula::forall("X", Sort::General,
                                    FoFormula::pred("p", {gvar("X")}));
  CHECK(fprop(all, u).to_string() == "p(1) ∧ p(a)");

  CHECK(fprop(FoFormula::cmp(Rel::Lt, FoTerm::numeral(1), FoTerm::numeral(2)), u)
            .kind() == PropFormula::Kind::True);
  CHECK(fprop(FoFormula::bot(), u).kind() == PropFormula::Kind::False);

  // Integer quantifiers range over the numerals only.
  FoFormula ints = FoFormula::exists(
      "I", Sort::Integer,
      FoFormula::cmp(Rel::Eq, FoTerm::variable("I", Sort::Integer),
                     FoTerm::symbolic("a")));
  CHECK(fprop(ints, u).kind() == PropFormula::Kind::False);

  // Placeholders must be substituted before translation.
  FoFormula with_ph = FoFormula::pred("p", {FoTerm::symbolic("h")});
  CHECK_THROWS_AS(fprop(with_ph, u, {"h"}), std::invalid_argument);
  CHECK_NOTHROW(fprop(with_ph, u));
}

TEST_CASE("the image translation commutes with the connectives") {
  testing::Rng rng(43);
  Universe u = testing::small_universe();
  for (int i = 0; i < 50; ++i) {
    FoFormula f = testing::random_antecedent(rng, "", 2);
    FoFormula g = testing::random_antecedent(rng, "", 2);
    CHECK(fprop(FoFormula::conj({f, g}), u) ==
          PropFormula::conj({fprop(f, u), fprop(g, u)}));
    CHECK(fprop(FoFormula::disj({f, g}), u) ==
          PropFormula::disj({fprop(f, u), fprop(g, u)}));
    CHECK(fprop(FoFormula::implies(f, g), u) ==
          PropFormula::implies(fprop(f, u), fprop(g, u)));
  }
}

TEST_CASE("strong equivalence at a finite base") {
  GroundAtom p{"p", {}};
  PropFormula excluded =
      PropFormula::disj({PropFormula::atom(p), PropFormula::neg(PropFormula::atom(p))});
  CHECK(!ht_equivalent(excluded, PropFormula::verum(), {p}));
  CHECK(ht_equivalent(excluded, excluded, {p}));
}

TEST_CASE("the first-order image of a rule is strongly equivalent to tau") {
  Universe u({}, BigInt(0), BigInt(2));
  Rule rule = parse_rule("q(0..2) :- not p.");
  PropFormula image = simplify(fprop(tau_star_rule(rule, Program{{rule}}), u));
  std::vector<PropFormula> taus;
  for (const Rule& inst : instances(rule, u)) taus.push_back(tau_rule(inst));
  PropFormula tau = PropFormula::conj(taus);
  AtomSet base = image.atoms();
  tau.collect_atoms(base);
  CHECK(ht_equivalent(image, tau, base));

  // The randomized version of the same property.
  testing::Rng rng(97);
  Universe su = testing::small_universe();
  for (int i = 0; i < 40; ++i) {
    Rule r = testing::random_rule(rng);
    PropFormula img = simplify(fprop(tau_star_rule(r, Program{{r}}), su));
    std::vector<PropFormula> ts;
    for (const Rule& inst : instances(r, su)) ts.push_back(tau_rule(inst));
    PropFormula t = simplify(PropFormula::conj(ts));
    AtomSet b = img.atoms();
    t.collect_atoms(b);
    CHECK(ht_equivalent(img, t, b));
  }
}

TEST_CASE("apply_valuation on second-order sentences") {
  IoProgram io = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  SoSentence completion = complete_io(io);
  SoSentence substituted =
      apply_valuation(completion, {{"h", PrecomputedTerm::numeral(2)}});
  CHECK(completion.to_string().find("= h") != std::string::npos);
  CHECK(substituted.to_string().find("= h") == std::string::npos);
  CHECK(substituted.to_string().find("= 2") != std::string::npos);
}
