#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgtc/ground.hpp"
#include "mgtc/syntax.hpp"

namespace mgtc {

enum class Sort { General, Integer };

/// Term of the two-sorted first-order signature: object constants (every
/// precomputed term names itself), sorted variables, and integer-valued
/// absolute value, addition, subtraction and multiplication.  Division,
/// modulo and intervals are not function symbols of this signature.
/// Integer operations require integer-sorted arguments; the factories
/// enforce this.  Integer is a subsort of general, so integer terms may
/// appear in any general position.
class FoTerm {
 public:
  enum class Kind { Const, Var, Abs, Bin };
  enum class Op { Add, Sub, Mul };

  static FoTerm constant(PrecomputedTerm value);
  static FoTerm numeral(long long n) { return constant(PrecomputedTerm::numeral(n)); }
  static FoTerm symbolic(std::string name) {
    return constant(PrecomputedTerm::symbolic(std::move(name)));
  }
  static FoTerm variable(std::string name, Sort sort);
  static FoTerm abs(FoTerm inner);
  static FoTerm bin(Op op, FoTerm left, FoTerm right);
  /// 0 - t, printed as -t.
  static FoTerm negate(FoTerm t) { return bin(Op::Sub, numeral(0), std::move(t)); }

  Kind kind() const;
  Sort sort() const;
  const PrecomputedTerm& value() const;
  const std::string& var_name() const;
  const FoTerm& inner() const;
  Op op() const;
  const FoTerm& left() const;
  const FoTerm& right() const;

  bool operator==(const FoTerm& other) const;
  std::string to_string() const;

 private:
  struct Node;
  explicit FoTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// First-order formula over the two-sorted signature.  Predicate atoms may
/// refer to predicate constants or (inside a completion) to predicate
/// variables.  Negation abbreviates implication into falsity; equivalence
/// abbreviates the conjunction of both implications.  Conjunction and
/// disjunction are n-ary and the factories do not simplify.
class FoFormula {
 public:
  enum class Kind { Pred, Cmp, Bot, And, Or, Implies, Forall, Exists };

  static FoFormula pred(std::string name, std::vector<FoTerm> args,
                        bool predicate_variable = false);
  static FoFormula cmp(Rel rel, FoTerm left, FoTerm right);
  static FoFormula bot();
  static FoFormula top() { return implies(bot(), bot()); }
  static FoFormula conj(std::vector<FoFormula> members);  // empty -> top
  static FoFormula disj(std::vector<FoFormula> members);  // empty -> bot
  static FoFormula implies(FoFormula antecedent, FoFormula consequent);
  static FoFormula neg(FoFormula f) { return implies(std::move(f), bot()); }
  static FoFormula iff(FoFormula a, FoFormula b);
  static FoFormula forall(std::string var, Sort sort, FoFormula body);
  static FoFormula exists(std::string var, Sort sort, FoFormula body);
  static FoFormula quantify(Kind kind, std::span<const std::pair<std::string, Sort>> vars,
                            FoFormula body);

  Kind kind() const;
  const std::string& pred_name() const;
  bool is_pred_variable() const;
  std::span<const FoTerm> pred_args() const;
  Rel rel() const;
  const FoTerm& left() const;
  const FoTerm& right() const;
  std::span<const FoFormula> members() const;
  const FoFormula& antecedent() const;
  const FoFormula& consequent() const;
  const std::string& quant_var() const;
  Sort quant_sort() const;
  const FoFormula& quant_body() const;

  bool is_negation() const;
  /// Recognizes conj(implies(a,b), implies(b,a)) and yields (a, b).
  std::optional<std::pair<FoFormula, FoFormula>> as_iff() const;

  void collect_free_variables(std::vector<std::pair<std::string, Sort>>& out) const;
  void collect_pred_symbols(std::set<PredSym>& out) const;
  bool contains_pred_symbol(const std::set<PredSym>& symbols) const;
  bool contains_placeholder(const std::set<std::string>& placeholders) const;

  /// Capture-free substitution of a ground term for a free variable.
  FoFormula substitute(const std::string& var, const FoTerm& replacement) const;

  bool operator==(const FoFormula& other) const;
  std::string to_string() const;  // UTF-8 math text

 private:
  struct Node;
  explicit FoFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

FoTerm apply_valuation(const FoTerm& t, const Valuation& v);
FoFormula apply_valuation(const FoFormula& f, const Valuation& v);

/// A finite list of sentences of the shape forall(F -> G) together with a
/// partition of the predicate symbols into intensional and extensional.
/// Each consequent G is either an intensional atom over distinct variables
/// or free of intensional symbols, and any two sentences defining the same
/// symbol share the identical consequent.  Validated on construction.
class CompletableSet {
 public:
  CompletableSet(std::vector<FoFormula> sentences,
                 std::vector<PredSym> intensional);

  const std::vector<FoFormula>& sentences() const { return sentences_; }
  /// Declaration order is preserved; completion conjoins in this order.
  const std::vector<PredSym>& intensional() const { return intensional_; }
  bool is_intensional(const PredSym& p) const;

  struct Member {
    std::vector<std::pair<std::string, Sort>> prefix;  // universal closure
    FoFormula antecedent;
    FoFormula consequent;
    std::optional<PredSym> defines;  // engaged for definitions
  };
  const std::vector<Member>& members() const { return members_; }

 private:
  std::vector<FoFormula> sentences_;
  std::vector<PredSym> intensional_;
  std::vector<Member> members_;
};

CompletableSet apply_valuation(const CompletableSet& gamma, const Valuation& v);

/// Second-order sentence: an existential prefix of predicate variables in
/// front of a first-order matrix.
struct SoSentence {
  struct PredVar {
    std::string name;
    std::size_t arity = 0;
    std::string original;  // the private predicate name it replaced
  };
  std::vector<PredVar> prefix;
  FoFormula matrix = FoFormula::bot();

  std::string to_string() const;
};

SoSentence apply_valuation(const SoSentence& s, const Valuation& v);

/// Allocator for the integer variables of value formulas: I/J/K first,
/// then I1/J1/K1 and so on.  One instance per translated rule keeps the
/// output deterministic.
class FreshVars {
 public:
  struct Triple {
    std::string i, j, k;
  };
  Triple next_triple() {
    int n = count_++;
    if (n == 0) return {"I", "J", "K"};
    std::string suffix = std::to_string(n);
    return {"I" + suffix, "J" + suffix, "K" + suffix};
  }

 private:
  int count_ = 0;
};

/// The formula expressing "V is one of the values of t" for a program term
/// t and a general variable V not occurring in t.  Arithmetic subterms
/// introduce fresh integer variables I/J/K (suffixed on reuse); division
/// and modulo are characterized by bounding the quotient magnitude, and
/// intervals by an integer lying between the endpoint values.
FoFormula val_formula(const Term& t, const FoTerm& target, FreshVars& fresh);
FoFormula val_formula(const Term& t, const std::string& target_var);

/// Body translation: literals become existentially quantified value
/// formulas conjoined with the (possibly negated) predicate atom, and
/// comparisons relate two value variables.  The bound value variables are
/// V (unary atoms) or V1..Vn, skipping any name in `avoid` or occurring in
/// the element itself.
FoFormula tau_b(const Literal& literal, FreshVars& fresh,
                const std::set<std::string>& avoid = {});
FoFormula tau_b(const Comparison& comparison, FreshVars& fresh,
                const std::set<std::string>& avoid = {});
FoFormula tau_b(const BodyElement& element, FreshVars& fresh,
                const std::set<std::string>& avoid = {});

/// One sentence per rule: basic rules become universally closed
/// implications into the head atom over a fresh variable tuple, choice
/// rules add a doubly negated head atom to the antecedent, and constraints
/// become implications into falsity.  The head tuple uses the first
/// V-variables that do not occur in the program, so all rules defining one
/// symbol share a consequent.  Intensional symbols default to every
/// predicate symbol occurring in the program.
CompletableSet tau_star(const Program& program);
CompletableSet tau_star(const Program& program, std::vector<PredSym> intensional);
FoFormula tau_star_rule(const Rule& rule, const Program& context);

/// The completed definition of p: p(V) holds iff some defining antecedent
/// does, with the non-head variables existentially quantified.  A symbol
/// with no defining sentences gets falsity as its definition.
FoFormula completed_definition(const PredSym& p, const CompletableSet& gamma);

/// Conjunction of the completed definitions of all intensional symbols (in
/// declaration order) and the constraints of gamma.
FoFormula complete(const CompletableSet& gamma);

/// Completion of an io-program: the completion of the translated rules,
/// with output and private symbols intensional, input and comparison
/// symbols extensional, and every private symbol replaced by an
/// existentially quantified predicate variable.
SoSentence complete_io(const IoProgram& io);

/// Bounded propositional image of a sentence: atoms evaluate their
/// arguments, comparisons collapse to a truth constant, general quantifiers
/// expand over the universe's terms and integer quantifiers over its
/// numerals.  Throws std::invalid_argument if the sentence contains one of
/// `placeholders` (apply a valuation first) or a predicate variable.
PropFormula fprop(const FoFormula& sentence, const Universe& universe,
                  const std::set<std::string>& placeholders = {});

/// Whether two propositional formulas have the same here-and-there models
/// over the given atom base (strong equivalence at this base).
bool ht_equivalent(const PropFormula& f, const PropFormula& g, const AtomSet& base);
bool ht_equivalent(std::span<const PropFormula> fs, std::span<const PropFormula> gs,
                   const AtomSet& base);

}  // namespace mgtc
