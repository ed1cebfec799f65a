#pragma once

#include <random>
#include <string>
#include <vector>

#include "mgtc/fol.hpp"
#include "mgtc/ground.hpp"
#include "mgtc/syntax.hpp"

namespace mgtc::testing {

struct Rng {
  std::mt19937 engine;
  explicit Rng(unsigned seed) : engine(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine); }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0, 1)(engine) < p;
  }
};

/// Universe used by the randomized translation suites.  It covers every
/// value the safe term pool can produce, including the intermediate
/// integer witnesses of arithmetic (|0-1| passes through -1), so bounded
/// first-order images coincide with the propositional translation.
inline Universe small_universe() { return Universe({"a"}, BigInt(-1), BigInt(2)); }

/// Smaller still, for exhaustive solver cross-checks where the universe
/// only controls the atom count.
inline Universe tiny_universe() { return Universe({"a"}, BigInt(0), BigInt(1)); }

/// Ground terms whose value sets stay inside small_universe(), so the
/// bounded first-order image coincides with the propositional translation.
/// Empty value sets are fine; values outside the universe are not.
inline Term safe_ground_term(Rng& rng) {
  switch (rng.pick(9)) {
    case 0: return Term::numeral(0);
    case 1: return Term::numeral(1);
    case 2: return Term::symbolic("a");
    case 3: return Term::bin(BinOp::Add, Term::numeral(0), Term::numeral(1));
    case 4: return Term::bin(BinOp::Sub, Term::numeral(1), Term::numeral(1));
    case 5: return Term::abs(Term::bin(BinOp::Sub, Term::numeral(0), Term::numeral(1)));
    case 6: return Term::bin(BinOp::Div, Term::numeral(1), Term::numeral(1));
    case 7: return Term::bin(BinOp::Interval, Term::numeral(0), Term::numeral(1));
    default:
      return Term::bin(BinOp::Interval, Term::numeral(1), Term::numeral(0));  // empty
  }
}

inline Term safe_term(Rng& rng, const std::vector<std::string>& vars) {
  if (!vars.empty() && rng.coin(0.45))
    return Term::variable(vars[static_cast<std::size_t>(rng.pick(
        static_cast<int>(vars.size())))]);
  return safe_ground_term(rng);
}

inline Atom random_atom(Rng& rng, const std::vector<std::string>& vars) {
  switch (rng.pick(3)) {
    case 0: return Atom{"p", {safe_term(rng, vars)}};
    case 1: return Atom{"q", {safe_term(rng, vars)}};
    default: return Atom{"r", {}};
  }
}

inline BodyElement random_body_element(Rng& rng, const std::vector<std::string>& vars) {
  if (rng.coin(0.3)) {
    static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge};
    return Comparison{safe_term(rng, vars), rels[rng.pick(6)], safe_term(rng, vars)};
  }
  int negations = rng.pick(4) == 0 ? (rng.coin() ? 2 : 1) : (rng.coin(0.3) ? 1 : 0);
  return Literal{negations, random_atom(rng, vars)};
}

/// Rules over predicates p/1, q/1, r/0 with at most `max_vars` variables,
/// built so every value set stays inside small_universe().
inline Rule random_rule(Rng& rng, int max_vars = 2) {
  std::vector<std::string> vars;
  if (max_vars >= 1 && rng.coin(0.7)) vars.push_back("X");
  if (max_vars >= 2 && rng.coin(0.3)) vars.push_back("Y");
  Rule rule;
  int head = rng.pick(10);
  if (head < 5) {
    rule.head_kind = Rule::HeadKind::Basic;
    rule.head = random_atom(rng, vars);
  } else if (head < 8) {
    rule.head_kind = Rule::HeadKind::Choice;
    rule.head = random_atom(rng, vars);
  } else {
    rule.head_kind = Rule::HeadKind::Constraint;
  }
  int body_len = rng.pick(3);
  if (rule.head_kind == Rule::HeadKind::Constraint && body_len == 0) body_len = 1;
  // Keep generated rules safe: every variable must occur somewhere, or the
  // instantiation is fine anyway (substitution covers head-only variables).
  for (int i = 0; i < body_len; ++i) rule.body.push_back(random_body_element(rng, vars));
  return rule;
}

inline Program random_program(Rng& rng, int max_rules = 3) {
  Program program;
  int n = 1 + rng.pick(max_rules);
  for (int i = 0; i < n; ++i) program.rules.push_back(random_rule(rng));
  program.dedup();
  return program;
}

/// Ground-ish antecedent formulas over intensional p/1, q/1, r/0 and
/// extensional e/1, for completable-set generators.  `tuple_var` names the
/// consequent variable usable inside the antecedent (empty for none).
inline FoFormula random_antecedent(Rng& rng, const std::string& tuple_var, int depth) {
  auto term = [&rng, &tuple_var]() -> FoTerm {
    if (!tuple_var.empty() && rng.coin(0.4))
      return FoTerm::variable(tuple_var, Sort::General);
    return FoTerm::numeral(rng.pick(2));
  };
  if (depth == 0 || rng.coin(0.35)) {
    switch (rng.pick(5)) {
      case 0: return FoFormula::pred("p", {term()});
      case 1: return FoFormula::pred("q", {term()});
      case 2: return FoFormula::pred("e", {term()});
      case 3: return FoFormula::pred("r", {});
      default: {
        static const Rel rels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le};
        return FoFormula::cmp(rels[rng.pick(4)], term(), term());
      }
    }
  }
  switch (rng.pick(4)) {
    case 0:
      return FoFormula::conj({random_antecedent(rng, tuple_var, depth - 1),
                              random_antecedent(rng, tuple_var, depth - 1)});
    case 1:
      return FoFormula::disj({random_antecedent(rng, tuple_var, depth - 1),
                              random_antecedent(rng, tuple_var, depth - 1)});
    case 2:
      return FoFormula::neg(random_antecedent(rng, tuple_var, depth - 1));
    default:
      return FoFormula::implies(random_antecedent(rng, tuple_var, depth - 1),
                                random_antecedent(rng, tuple_var, depth - 1));
  }
}

/// A random completable set over intensional p/1, q/1, r/0 (extensional
/// e/1), quantified over one general variable per definition.
inline CompletableSet random_completable_set(Rng& rng) {
  std::vector<FoFormula> sentences;
  int defs_p = rng.pick(3);
  for (int i = 0; i < defs_p; ++i) {
    FoFormula body = random_antecedent(rng, "V", 2);
    sentences.push_back(FoFormula::forall(
        "V", Sort::General,
        FoFormula::implies(std::move(body), FoFormula::pred("p", {FoTerm::variable(
                                                "V", Sort::General)}))));
  }
  int defs_q = rng.pick(2);
  for (int i = 0; i < defs_q; ++i) {
    FoFormula body = random_antecedent(rng, "V", 2);
    sentences.push_back(FoFormula::forall(
        "V", Sort::General,
        FoFormula::implies(std::move(body), FoFormula::pred("q", {FoTerm::variable(
                                                "V", Sort::General)}))));
  }
  if (rng.coin(0.4))
    sentences.push_back(FoFormula::implies(random_antecedent(rng, "", 2),
                                           FoFormula::pred("r", {})));
  if (rng.coin(0.3))
    sentences.push_back(
        FoFormula::implies(random_antecedent(rng, "", 2), FoFormula::bot()));
  return CompletableSet(std::move(sentences), {{"p", 1}, {"q", 1}, {"r", 0}});
}

inline AtomSet random_interp_atoms(Rng& rng) {
  AtomSet out;
  auto maybe = [&rng, &out](const char* pred, int arg, bool nullary = false) {
    if (!rng.coin()) return;
    if (nullary)
      out.insert(GroundAtom{pred, {}});
    else
      out.insert(GroundAtom{pred, {PrecomputedTerm::numeral(arg)}});
  };
  maybe("p", 0);
  maybe("p", 1);
  maybe("q", 0);
  maybe("q", 1);
  maybe("r", 0, true);
  maybe("e", 0);
  maybe("e", 1);
  return out;
}

}  // namespace mgtc::testing
