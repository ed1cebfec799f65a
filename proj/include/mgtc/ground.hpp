#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mgtc/syntax.hpp"

namespace mgtc {

/// Finite instantiation domain: a set of symbolic constants and an
/// inclusive integer range.  All bounded semantics in this code base are
/// computed relative to a universe; reports print it so the bound is
/// always visible.  Placeholders never belong to a universe.
class Universe {
 public:
  Universe(std::set<std::string> symbolics, BigInt int_min, BigInt int_max);
  static Universe defaults() { return Universe({}, BigInt(0), BigInt(1)); }

  const std::set<std::string>& symbolics() const { return symbolics_; }
  const BigInt& int_min() const { return int_min_; }
  const BigInt& int_max() const { return int_max_; }

  /// All terms of the universe: numerals ascending, then symbolic constants.
  const std::vector<PrecomputedTerm>& terms() const { return terms_; }
  /// The numerals of the universe, ascending.
  const std::vector<PrecomputedTerm>& numerals() const { return numerals_; }

  bool contains(const PrecomputedTerm& t) const;
  bool contains_all(const std::vector<PrecomputedTerm>& ts) const;

  std::string to_string() const;

 private:
  std::set<std::string> symbolics_;
  BigInt int_min_, int_max_;
  std::vector<PrecomputedTerm> numerals_;
  std::vector<PrecomputedTerm> terms_;
};

/// Universe covering all constants of the program, the input atoms and the
/// valuation range, with the integer range padded by `margin` on both sides.
/// Defaults to integers [0,1] when no integer occurs anywhere.
Universe default_universe(const Program& program, const Valuation& valuation,
                          const AtomSet& input_atoms,
                          const std::set<std::string>& placeholders,
                          long long margin = 1);
Universe default_universe(const IoProgram& io, const Input& input,
                          long long margin = 1);
Universe default_universe(const Program& program, long long margin = 1);

/// Propositional combination of precomputed atoms.  Negation is stored as
/// an implication into falsity so that here-and-there evaluation needs one
/// clause per connective.  Conjunction and disjunction are n-ary; the
/// factories absorb verum/falsum, drop duplicate members and collapse
/// singletons, which keeps translations in the shape examples expect.
class PropFormula {
 public:
  enum class Kind { Atom, True, False, And, Or, Implies };

  static PropFormula atom(GroundAtom a);
  static PropFormula verum();
  static PropFormula falsum();
  static PropFormula conj(std::vector<PropFormula> members);
  static PropFormula disj(std::vector<PropFormula> members);
  static PropFormula implies(PropFormula antecedent, PropFormula consequent);
  static PropFormula neg(PropFormula f) { return implies(std::move(f), falsum()); }

  Kind kind() const;
  const GroundAtom& atom_value() const;
  std::span<const PropFormula> members() const;  // And / Or
  const PropFormula& antecedent() const;         // Implies
  const PropFormula& consequent() const;          // Implies

  bool is_negation() const;  // Implies(_, falsum)

  void collect_atoms(AtomSet& out) const;
  AtomSet atoms() const;

  bool operator==(const PropFormula& other) const;
  /// Unambiguous canonical rendering; also used as a dedup key.
  std::string to_string() const;

 private:
  struct Node;
  explicit PropFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// All ground rules obtained by substituting universe terms for the rule's
/// variables, in lexicographic assignment order.  Ground rules come back as
/// a singleton list.
std::vector<Rule> instances(const Rule& rule, const Universe& universe);

/// The propositional image of a ground literal: the disjunction over the
/// argument tuple's values, with the literal's negations applied per value.
PropFormula tau_literal(const Literal& literal);
/// Verum when the relation holds between some pair of values, falsum else.
PropFormula tau_comparison(const Comparison& comparison);
PropFormula tau_body(std::span<const BodyElement> body);
/// The propositional image of a ground rule: body implies head conjunction
/// for basic rules, body implies excluded-middle conjunction for choice
/// rules, negated body for constraints.
PropFormula tau_rule(const Rule& rule);

/// tau_rule over every instance of every rule, deduplicated, in rule order.
std::vector<PropFormula> tau_program(const Program& program, const Universe& universe);

}  // namespace mgtc
