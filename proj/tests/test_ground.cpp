#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgtc/errors.hpp"
#include "mgtc/ground.hpp"
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

}  // namespace

TEST_CASE("default universe covers program, input and valuation constants") {
  IoProgram io = parse_program(slurp("samples/rooms.mg"), "rooms.mg").to_io();
  Input input = parse_input(slurp("samples/exinp.in"), io, "exinp.in");
  Universe u = default_universe(io, input, 1);
  CHECK(u.symbolics() ==
        std::set<std::string>{"alice", "bob", "classroom", "hall"});
  CHECK(u.int_min() == BigInt(-1));
  CHECK(u.int_max() == BigInt(3));
  CHECK(u.terms().size() == 9);

  Universe empty = default_universe(Program{}, 1);
  CHECK(empty.symbolics().empty());
  CHECK(empty.int_min() == BigInt(0));
  CHECK(empty.int_max() == BigInt(1));

  Universe five = default_universe(parse_program("p(5).", "p5").program, 0);
  CHECK(five.int_min() == BigInt(5));
  CHECK(five.int_max() == BigInt(5));
}

TEST_CASE("instantiation substitutes universe terms for variables") {
  Universe u({"a"}, BigInt(1), BigInt(1));
  Rule rule = parse_rule("q(X) :- p(X).");
  auto insts = instances(rule, u);
  REQUIRE(insts.size() == 2);
  CHECK(insts[0].to_string() == "q(1) :- p(1).");
  CHECK(insts[1].to_string() == "q(a) :- p(a).");

  Rule fact = parse_rule("p(a).");
  CHECK(instances(fact, u) == std::vector<Rule>{fact});

  Universe three({"a"}, BigInt(0), BigInt(1));
  Rule two_vars = parse_rule("q(X) :- p(X), p(Y).");
  CHECK(instances(two_vars, three).size() == 9);  // |u|^2
}

TEST_CASE("enlarging the universe never removes instances") {
  testing::Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    Rule rule = testing::random_rule(rng);
    Universe small({"a"}, BigInt(0), BigInt(1));
    Universe large({"a", "b"}, BigInt(-1), BigInt(2));
    auto small_insts = instances(rule, small);
    auto large_insts = instances(rule, large);
    for (const Rule& r : small_insts)
      CHECK(std::find(large_insts.begin(), large_insts.end(), r) !=
            large_insts.end());
  }
}

TEST_CASE("the propositional image of a choice instance") {
  Rule rule = parse_rule("{q(t)} :- p(t).");
  PropFormula f = tau_rule(rule);
  CHECK(f.to_string() == "p(t) → q(t) ∨ ¬q(t)");
}

TEST_CASE("the propositional image expands interval heads") {
  Rule rule = parse_rule("q(0..2) :- not p.");
  PropFormula f = tau_rule(rule);
  CHECK(f.to_string() == "¬p → q(0) ∧ q(1) ∧ q(2)");
}

TEST_CASE("constraints negate their body image") {
  Rule rule = parse_rule(":- 1 < 0.");
  PropFormula f = tau_rule(rule);
  CHECK(f.to_string() == "¬⊥");  // trivially satisfied
  CHECK(sat({}, f));

  Rule live = parse_rule(":- p, not q.");
  CHECK(tau_rule(live).to_string() == "¬(p ∧ ¬q)");
}

TEST_CASE("facts are their own image and empty heads collapse") {
  CHECK(tau_rule(parse_rule("p(a).")).to_string() == "p(a)");
  // An empty head value set gives the empty conjunction.
  Rule undef_head = parse_rule("q(2+c) :- p.");
  CHECK(tau_rule(undef_head).to_string() == "p → ⊤");
  // An empty disjunction in the body is falsity.
  Rule undef_body = parse_rule("q :- p(2+c).");
  CHECK(tau_rule(undef_body).to_string() == "⊥ → q");
}

TEST_CASE("double negation stays in the image") {
  Rule rule = parse_rule("q :- not not p.");
  CHECK(tau_rule(rule).to_string() == "¬¬p → q");
}

TEST_CASE("tau over a program instantiates and deduplicates") {
  Universe u = default_universe(Program{}, 0);
  auto single = tau_program(parse_program("p.", "p").program, u);
  REQUIRE(single.size() == 1);
  CHECK(single[0].to_string() == "p");

  CHECK(tau_program(Program{}, u).empty());

  // Two rules with identical instances collapse.
  auto dup = tau_program(parse_program("q(1) :- p. q(0..1) :- p.", "dup").program,
                         Universe({}, BigInt(0), BigInt(1)));
  CHECK(dup.size() == 2);
}

TEST_CASE("every atom in a rule image is precomputed with sorted values") {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Rule rule = testing::random_rule(rng);
    for (const Rule& inst : instances(rule, testing::small_universe())) {
      PropFormula f = tau_rule(inst);
      AtomSet atoms = f.atoms();
      (void)atoms;  // collection itself requires precomputed atoms
      CHECK(inst.is_ground());
    }
  }
}

TEST_CASE("universes reject empty ranges and oversized enumerations") {
  CHECK_THROWS_AS(Universe({}, BigInt(1), BigInt(0)), std::invalid_argument);
  CHECK_THROWS_AS(Universe({}, BigInt(0), BigInt(10'000'000)), LimitError);
}
