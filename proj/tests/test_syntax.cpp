#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mgtc/parser.hpp"
#include "mgtc/syntax.hpp"

using namespace mgtc;

namespace {

PrecomputedTerm random_precomputed(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<long long> num(-50, 50);
  switch (kind(rng)) {
    case 0:
      return PrecomputedTerm::numeral(num(rng));
    case 1:
      return PrecomputedTerm::symbolic(std::string(1, static_cast<char>(
                                                          'a' + (num(rng) + 50) % 26)));
    default:
      return PrecomputedTerm::symbolic("c" + std::to_string((num(rng) + 50) % 10));
  }
}

}  // namespace

TEST_CASE("the order on precomputed terms is a total order") {
  std::mt19937 rng(3);
  std::vector<PrecomputedTerm> sample;
  for (int i = 0; i < 60; ++i) sample.push_back(random_precomputed(rng));
  for (const auto& a : sample)
    for (const auto& b : sample) {
      // trichotomy
      int ways = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
      CHECK(ways == 1);
      for (const auto& c : sample)
        if (a < b && b < c) CHECK(a < c);
    }
  // numerals precede symbolic constants
  CHECK(PrecomputedTerm::numeral(1000000) < PrecomputedTerm::symbolic("a"));
}

TEST_CASE("valuation application substitutes placeholder constants") {
  ParsedProgram parsed = parse_program(
      "{in(P,R,T+1)} :- in(P,R,T), T = 0..h-1.", "inertia");
  Valuation v{{"h", PrecomputedTerm::numeral(2)}};
  Rule substituted = apply_valuation(parsed.program.rules[0], v);
  CHECK(substituted.to_string() == "{in(P,R,T + 1)} :- in(P,R,T), T = 0..2 - 1.");

  // The empty valuation is the identity.
  Rule same = apply_valuation(parsed.program.rules[0], {});
  CHECK(same == parsed.program.rules[0]);
}

TEST_CASE("valuation application is idempotent when ranges avoid the domain") {
  ParsedProgram parsed =
      parse_program("p(h, k). q(X) :- p(X, h).", "idem");
  Valuation v{{"h", PrecomputedTerm::numeral(2)},
              {"k", PrecomputedTerm::symbolic("z")}};
  Program once = apply_valuation(parsed.program, v);
  Program twice = apply_valuation(once, v);
  CHECK(once == twice);
}

TEST_CASE("valuation application reaches first-order sentences") {
  FoFormula f = parse_formula("forall V (p(V) -> exists W (q(W, h))).");
  Valuation v{{"h", PrecomputedTerm::numeral(2)}};
  FoFormula g = apply_valuation(f, v);
  CHECK(g.to_string() == "∀V (p(V) → ∃W (q(W, 2)))");
}

TEST_CASE("io-program validation") {
  ParsedProgram parsed = parse_program(
      "#input p/1.\n#output q/1.\nq(X) :- p(X).", "ok");
  CHECK_NOTHROW(parsed.to_io());

  // Input symbols must not occur in heads.
  ParsedProgram bad = parse_program("#input p/1.\np(a).", "bad");
  CHECK_THROWS_AS(bad.to_io(), std::invalid_argument);

  // Inputs and outputs must be disjoint.
  CHECK_THROWS_AS(IoProgram(parsed.program, {}, {{"p", 1}}, {{"p", 1}}),
                  std::invalid_argument);

  // Placeholders are object constants, never predicate names.
  ParsedProgram ph = parse_program("#placeholder p.\np(a).", "ph");
  CHECK_THROWS_AS(ph.to_io(), std::invalid_argument);
}

TEST_CASE("input validation") {
  ParsedProgram parsed = parse_program(
      "#placeholder h.\n#input p/1.\n#output q/1.\nq(X) :- p(X).", "io");
  IoProgram io = parsed.to_io();

  CHECK_NOTHROW(Input(io, {{"h", PrecomputedTerm::numeral(2)}},
                      {GroundAtom{"p", {PrecomputedTerm::symbolic("a")}}}));
  // The valuation may not map into the placeholders.
  CHECK_THROWS_AS(Input(io, {{"h", PrecomputedTerm::symbolic("h")}}, {}),
                  std::invalid_argument);
  // Only declared placeholders may be assigned.
  CHECK_THROWS_AS(Input(io, {{"g", PrecomputedTerm::numeral(0)}}, {}),
                  std::invalid_argument);
  // Atoms must use input symbols.
  CHECK_THROWS_AS(Input(io, {}, {GroundAtom{"q", {PrecomputedTerm::numeral(0)}}}),
                  std::invalid_argument);
  // Atoms must not mention placeholders.
  CHECK_THROWS_AS(Input(io, {}, {GroundAtom{"p", {PrecomputedTerm::symbolic("h")}}}),
                  std::invalid_argument);
}

TEST_CASE("projections keep exactly the public and input atoms") {
  ParsedProgram parsed = parse_program(
      "#input person/1.\n#output in/3.\nin(X,r,0) :- person(X), aux(X).", "proj");
  IoProgram io = parsed.to_io();
  GroundAtom person{"person", {PrecomputedTerm::symbolic("alice")}};
  GroundAtom in{"in",
                {PrecomputedTerm::symbolic("alice"), PrecomputedTerm::symbolic("r"),
                 PrecomputedTerm::numeral(0)}};
  GroundAtom aux{"aux", {PrecomputedTerm::symbolic("alice")}};
  AtomSet all{person, in, aux};

  AtomSet pub = public_projection(all, io);
  AtomSet inp = input_projection(all, io);
  CHECK(pub == AtomSet{person, in});
  CHECK(inp == AtomSet{person});

  // input projection <= public projection <= everything
  CHECK(std::includes(pub.begin(), pub.end(), inp.begin(), inp.end()));
  CHECK(std::includes(all.begin(), all.end(), pub.begin(), pub.end()));

  CHECK(public_projection({}, io).empty());
}

TEST_CASE("programs deduplicate structurally equal rules") {
  ParsedProgram parsed = parse_program("p(a). p(a). p(b).", "dup");
  CHECK(parsed.program.rules.size() == 2);
}
