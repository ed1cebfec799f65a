#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mgtc/bigint.hpp"

namespace mgtc {

/// A numeral or a symbolic constant; the ground value domain.
///
/// Precomputed terms carry a fixed total order: numerals are ordered by
/// value, every numeral precedes every symbolic constant, and symbolic
/// constants are ordered lexicographically by bytes.  Comparison
/// evaluation and canonical printing both depend on this order.
class PrecomputedTerm {
 public:
  static PrecomputedTerm numeral(BigInt n) { return PrecomputedTerm(std::move(n)); }
  static PrecomputedTerm numeral(long long n) { return PrecomputedTerm(BigInt(n)); }
  static PrecomputedTerm symbolic(std::string name);  // throws on empty name

  bool is_numeral() const { return rep_.index() == 0; }
  bool is_symbolic() const { return rep_.index() == 1; }
  const BigInt& number() const { return std::get<0>(rep_); }
  const std::string& symbol() const { return std::get<1>(rep_); }

  std::strong_ordering operator<=>(const PrecomputedTerm& other) const;
  bool operator==(const PrecomputedTerm& other) const = default;

  std::string to_string() const;

 private:
  explicit PrecomputedTerm(BigInt n) : rep_(std::move(n)) {}
  explicit PrecomputedTerm(std::string s) : rep_(std::move(s)) {}
  std::variant<BigInt, std::string> rep_;
};

/// Predicate symbol: a name together with an arity.
struct PredSym {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredSym&) const = default;
  std::string to_string() const { return name + "/" + std::to_string(arity); }
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Interval };

const char* bin_op_symbol(BinOp op);

/// Program term: precomputed term, variable, absolute value, or one of the
/// six binary operations.  Immutable; copies share structure.
class Term {
 public:
  enum class Kind { Precomputed, Variable, Abs, Bin };

  static Term precomputed(PrecomputedTerm value);
  static Term numeral(long long n) { return precomputed(PrecomputedTerm::numeral(n)); }
  static Term symbolic(std::string name) {
    return precomputed(PrecomputedTerm::symbolic(std::move(name)));
  }
  static Term variable(std::string name);
  static Term abs(Term inner);
  static Term bin(BinOp op, Term left, Term right);

  Kind kind() const;
  const PrecomputedTerm& value() const;     // Precomputed
  const std::string& variable_name() const; // Variable
  const Term& inner() const;                // Abs
  BinOp op() const;                         // Bin
  const Term& left() const;                 // Bin
  const Term& right() const;                // Bin

  bool is_ground() const;

  /// Variables in order of first occurrence, without duplicates.
  void collect_variables(std::vector<std::string>& out) const;
  void collect_symbolic_constants(std::set<std::string>& out) const;
  void collect_numerals(std::vector<BigInt>& out) const;

  bool operator==(const Term& other) const;
  std::string to_string() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Atom with arbitrary term arguments.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  PredSym symbol() const { return {predicate, args.size()}; }
  bool is_precomputed() const;
  bool is_ground() const;
  bool operator==(const Atom& other) const;
  std::string to_string() const;
};

/// Atom whose arguments are precomputed terms.
struct GroundAtom {
  std::string predicate;
  std::vector<PrecomputedTerm> args;

  PredSym symbol() const { return {predicate, args.size()}; }
  auto operator<=>(const GroundAtom&) const = default;
  std::string to_string() const;
};

GroundAtom to_ground(const Atom& atom);  // throws unless is_precomputed()
Atom from_ground(const GroundAtom& atom);

using AtomSet = std::set<GroundAtom>;

/// Atom preceded by zero, one or two occurrences of "not".
struct Literal {
  int negations = 0;  // 0, 1 or 2
  Atom atom;

  bool operator==(const Literal& other) const;
  std::string to_string() const;
};

enum class Rel { Eq, Ne, Lt, Gt, Le, Ge };

const char* rel_symbol(Rel rel);        // ASCII: = != < > <= >=
const char* rel_symbol_pretty(Rel rel); // UTF-8: = ≠ < > ≤ ≥

struct Comparison {
  Term left;
  Rel rel = Rel::Eq;
  Term right;

  bool operator==(const Comparison& other) const;
  std::string to_string() const;
};

using BodyElement = std::variant<Literal, Comparison>;

bool body_element_equal(const BodyElement& a, const BodyElement& b);
std::string body_element_to_string(const BodyElement& e);

/// Rule with a basic head, a choice head, or no head (constraint).
struct Rule {
  enum class HeadKind { Basic, Choice, Constraint };

  HeadKind head_kind = HeadKind::Constraint;
  std::optional<Atom> head;  // engaged unless Constraint
  std::vector<BodyElement> body;

  bool is_ground() const;
  bool is_fact() const;  // ground basic rule with empty body
  /// Variables of head and body in order of first occurrence.
  std::vector<std::string> variables() const;
  bool operator==(const Rule& other) const;
  std::string to_string() const;
};

struct Program {
  std::vector<Rule> rules;

  /// Removes structurally duplicate rules, keeping first occurrences.
  void dedup();

  std::set<PredSym> predicate_symbols() const;
  std::set<PredSym> head_symbols() const;
  std::set<std::string> symbolic_constants() const;  // in term positions only
  std::vector<BigInt> numerals() const;
  std::vector<std::string> variable_names() const;

  bool operator==(const Program& other) const;
  std::string to_string() const;
};

/// Map from placeholder constants to precomputed terms.
using Valuation = std::map<std::string, PrecomputedTerm>;

Term apply_valuation(const Term& t, const Valuation& v);
Atom apply_valuation(const Atom& a, const Valuation& v);
Rule apply_valuation(const Rule& r, const Valuation& v);
Program apply_valuation(const Program& p, const Valuation& v);

/// A program together with placeholders, input symbols and output symbols.
///
/// Validated on construction: inputs and outputs are disjoint, no input
/// symbol occurs in a rule head, and no placeholder doubles as a predicate
/// name (placeholders are object constants only).
class IoProgram {
 public:
  IoProgram(Program program, std::set<std::string> placeholders,
            std::set<PredSym> inputs, std::set<PredSym> outputs);

  const Program& program() const { return program_; }
  const std::set<std::string>& placeholders() const { return placeholders_; }
  const std::set<PredSym>& inputs() const { return inputs_; }
  const std::set<PredSym>& outputs() const { return outputs_; }
  /// Predicate symbols occurring in the rules minus inputs and outputs.
  const std::set<PredSym>& private_symbols() const { return privates_; }

  bool is_input(const PredSym& p) const { return inputs_.count(p) != 0; }
  bool is_public(const PredSym& p) const {
    return inputs_.count(p) != 0 || outputs_.count(p) != 0;
  }

 private:
  Program program_;
  std::set<std::string> placeholders_;
  std::set<PredSym> inputs_;
  std::set<PredSym> outputs_;
  std::set<PredSym> privates_;
};

/// A valuation for the placeholders plus a set of precomputed input atoms.
///
/// Validated against the io-program on construction: the valuation maps
/// into placeholder-free terms, and every atom uses an input symbol and
/// contains no placeholder.
class Input {
 public:
  Input(const IoProgram& io, Valuation valuation, AtomSet atoms);
  static Input empty(const IoProgram& io) { return Input(io, {}, {}); }

  const Valuation& valuation() const { return valuation_; }
  const AtomSet& atoms() const { return atoms_; }

 private:
  Valuation valuation_;
  AtomSet atoms_;
};

/// Atoms of `atoms` whose predicate symbol is public in `io`.
AtomSet public_projection(const AtomSet& atoms, const IoProgram& io);
/// Atoms of `atoms` whose predicate symbol is an input symbol of `io`.
AtomSet input_projection(const AtomSet& atoms, const IoProgram& io);

}  // namespace mgtc
