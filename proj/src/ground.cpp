#include "mgtc/ground.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mgtc/errors.hpp"
#include "mgtc/values.hpp"

namespace mgtc {

// ---------------------------------------------------------------------------
// Universe

namespace {
constexpr long long kUniverseLimit = 100'000;
}

Universe::Universe(std::set<std::string> symbolics, BigInt int_min, BigInt int_max)
    : symbolics_(std::move(symbolics)),
      int_min_(std::move(int_min)),
      int_max_(std::move(int_max)) {
  if (int_min_ > int_max_)
    throw std::invalid_argument("universe: integer range is empty");
  BigInt width = int_max_ - int_min_;
  if (!width.fits_int64() ||
      width.to_int64() + static_cast<long long>(symbolics_.size()) > kUniverseLimit)
    throw LimitError("universe: more than " + std::to_string(kUniverseLimit) +
                     " terms");
  for (BigInt k = int_min_; k <= int_max_; ++k)
    numerals_.push_back(PrecomputedTerm::numeral(k));
  terms_ = numerals_;
  for (const std::string& s : symbolics_)
    terms_.push_back(PrecomputedTerm::symbolic(s));
}

bool Universe::contains(const PrecomputedTerm& t) const {
  if (t.is_numeral()) return t.number() >= int_min_ && t.number() <= int_max_;
  return symbolics_.count(t.symbol()) != 0;
}

bool Universe::contains_all(const std::vector<PrecomputedTerm>& ts) const {
  return std::all_of(ts.begin(), ts.end(),
                     [this](const PrecomputedTerm& t) { return contains(t); });
}

std::string Universe::to_string() const {
  std::ostringstream os;
  os << "ints [" << int_min_.to_string() << "," << int_max_.to_string() << "]";
  os << ", consts {";
  bool first = true;
  for (const std::string& s : symbolics_) {
    if (!first) os << ",";
    os << s;
    first = false;
  }
  os << "}";
  return os.str();
}

Universe default_universe(const Program& program, const Valuation& valuation,
                          const AtomSet& input_atoms,
                          const std::set<std::string>& placeholders,
                          long long margin) {
  if (margin < 0) throw std::invalid_argument("default_universe: negative margin");
  std::set<std::string> symbolics = program.symbolic_constants();
  std::vector<BigInt> ints = program.numerals();
  for (const auto& [name, value] : valuation) {
    (void)name;
    if (value.is_symbolic())
      symbolics.insert(value.symbol());
    else
      ints.push_back(value.number());
  }
  for (const GroundAtom& a : input_atoms) {
    for (const PrecomputedTerm& arg : a.args) {
      if (arg.is_symbolic())
        symbolics.insert(arg.symbol());
      else
        ints.push_back(arg.number());
    }
  }
  for (const std::string& c : placeholders) symbolics.erase(c);
  BigInt lo(0), hi(1);
  if (!ints.empty()) {
    lo = *std::min_element(ints.begin(), ints.end()) - BigInt(margin);
    hi = *std::max_element(ints.begin(), ints.end()) + BigInt(margin);
  }
  return Universe(std::move(symbolics), std::move(lo), std::move(hi));
}

Universe default_universe(const IoProgram& io, const Input& input, long long margin) {
  return default_universe(io.program(), input.valuation(), input.atoms(),
                          io.placeholders(), margin);
}

Universe default_universe(const Program& program, long long margin) {
  return default_universe(program, {}, {}, {}, margin);
}

// ---------------------------------------------------------------------------
// PropFormula

struct PropFormula::Node {
  Kind kind;
  std::optional<GroundAtom> atom;
  std::vector<PropFormula> children;  // And/Or members, or {antecedent, consequent}
};

PropFormula PropFormula::atom(GroundAtom a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->atom = std::move(a);
  return PropFormula(std::move(node));
}

PropFormula PropFormula::verum() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::True;
  return PropFormula(std::move(node));
}

PropFormula PropFormula::falsum() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::False;
  return PropFormula(std::move(node));
}

PropFormula PropFormula::conj(std::vector<PropFormula> members) {
  std::vector<PropFormula> kept;
  for (PropFormula& m : members) {
    if (m.kind() == Kind::True) continue;
    if (m.kind() == Kind::False) return falsum();
    if (std::find(kept.begin(), kept.end(), m) == kept.end())
      kept.push_back(std::move(m));
  }
  if (kept.empty()) return verum();
  if (kept.size() == 1) return kept[0];
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children = std::move(kept);
  return PropFormula(std::move(node));
}

PropFormula PropFormula::disj(std::vector<PropFormula> members) {
  std::vector<PropFormula> kept;
  for (PropFormula& m : members) {
    if (m.kind() == Kind::False) continue;
    if (m.kind() == Kind::True) return verum();
    if (std::find(kept.begin(), kept.end(), m) == kept.end())
      kept.push_back(std::move(m));
  }
  if (kept.empty()) return falsum();
  if (kept.size() == 1) return kept[0];
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->children = std::move(kept);
  return PropFormula(std::move(node));
}

PropFormula PropFormula::implies(PropFormula antecedent, PropFormula consequent) {
  // Verum antecedents collapse so that the image of a fact is the atom
  // itself; anything more aggressive would hide the shapes callers assert.
  if (antecedent.kind() == Kind::True) return consequent;
  auto node = std::make_shared<Node>();
  node->kind = Kind::Implies;
  node->children.push_back(std::move(antecedent));
  node->children.push_back(std::move(consequent));
  return PropFormula(std::move(node));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }
const GroundAtom& PropFormula::atom_value() const { return *node_->atom; }
std::span<const PropFormula> PropFormula::members() const { return node_->children; }
const PropFormula& PropFormula::antecedent() const { return node_->children[0]; }
const PropFormula& PropFormula::consequent() const { return node_->children[1]; }

bool PropFormula::is_negation() const {
  return kind() == Kind::Implies && consequent().kind() == Kind::False;
}

void PropFormula::collect_atoms(AtomSet& out) const {
  switch (kind()) {
    case Kind::Atom:
      out.insert(atom_value());
      return;
    case Kind::True:
    case Kind::False:
      return;
    default:
      for (const PropFormula& c : node_->children) c.collect_atoms(out);
      return;
  }
}

AtomSet PropFormula::atoms() const {
  AtomSet out;
  collect_atoms(out);
  return out;
}

bool PropFormula::operator==(const PropFormula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Atom: return atom_value() == other.atom_value();
    case Kind::True:
    case Kind::False: return true;
    default: return node_->children == other.node_->children;
  }
}

namespace {

// Precedences for printing: -> lowest, then or, and; negation binds tightest.
void print_prop(std::ostream& os, const PropFormula& f, int parent_prec) {
  using Kind = PropFormula::Kind;
  if (f.is_negation()) {
    os << "¬";
    print_prop(os, f.antecedent(), 4);
    return;
  }
  switch (f.kind()) {
    case Kind::Atom:
      os << f.atom_value().to_string();
      return;
    case Kind::True:
      os << "⊤";
      return;
    case Kind::False:
      os << "⊥";
      return;
    case Kind::And:
    case Kind::Or: {
      int prec = f.kind() == Kind::And ? 3 : 2;
      bool parens = prec <= parent_prec;
      if (parens) os << '(';
      bool first = true;
      for (const PropFormula& m : f.members()) {
        if (!first) os << (f.kind() == Kind::And ? " ∧ " : " ∨ ");
        print_prop(os, m, prec);
        first = false;
      }
      if (parens) os << ')';
      return;
    }
    case Kind::Implies: {
      bool parens = 1 <= parent_prec;
      if (parens) os << '(';
      print_prop(os, f.antecedent(), 1);
      os << " → ";
      print_prop(os, f.consequent(), 0);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

std::string PropFormula::to_string() const {
  std::ostringstream os;
  print_prop(os, *this, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Instantiation

namespace {

Term substitute(const Term& t, const std::map<std::string, PrecomputedTerm>& subst) {
  switch (t.kind()) {
    case Term::Kind::Precomputed:
      return t;
    case Term::Kind::Variable: {
      auto it = subst.find(t.variable_name());
      if (it == subst.end())
        throw std::logic_error("substitute: unbound variable " + t.variable_name());
      return Term::precomputed(it->second);
    }
    case Term::Kind::Abs:
      return Term::abs(substitute(t.inner(), subst));
    case Term::Kind::Bin:
      return Term::bin(t.op(), substitute(t.left(), subst),
                       substitute(t.right(), subst));
  }
  return t;
}

Atom substitute(const Atom& a, const std::map<std::string, PrecomputedTerm>& subst) {
  Atom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(substitute(t, subst));
  return out;
}

Rule substitute(const Rule& r, const std::map<std::string, PrecomputedTerm>& subst) {
  Rule out;
  out.head_kind = r.head_kind;
  if (r.head) out.head = substitute(*r.head, subst);
  out.body.reserve(r.body.size());
  for (const BodyElement& e : r.body) {
    if (const Literal* lit = std::get_if<Literal>(&e)) {
      out.body.push_back(Literal{lit->negations, substitute(lit->atom, subst)});
    } else {
      const Comparison& c = std::get<Comparison>(e);
      out.body.push_back(
          Comparison{substitute(c.left, subst), c.rel, substitute(c.right, subst)});
    }
  }
  return out;
}

}  // namespace

std::vector<Rule> instances(const Rule& rule, const Universe& universe) {
  std::vector<std::string> vars = rule.variables();
  if (vars.empty()) return {rule};
  const std::vector<PrecomputedTerm>& domain = universe.terms();
  std::vector<Rule> out;
  std::vector<std::size_t> odometer(vars.size(), 0);
  while (true) {
    std::map<std::string, PrecomputedTerm> subst;
    for (std::size_t i = 0; i < vars.size(); ++i)
      subst.emplace(vars[i], domain[odometer[i]]);
    out.push_back(substitute(rule, subst));
    std::size_t pos = vars.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < domain.size()) break;
      odometer[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------
// The propositional translation

PropFormula tau_literal(const Literal& literal) {
  auto tuples = eval_tuple(literal.atom.args);
  std::vector<PropFormula> disjuncts;
  disjuncts.reserve(tuples.size());
  for (auto& tuple : tuples) {
    PropFormula f = PropFormula::atom(GroundAtom{literal.atom.predicate, std::move(tuple)});
    for (int i = 0; i < literal.negations; ++i) f = PropFormula::neg(std::move(f));
    disjuncts.push_back(std::move(f));
  }
  return PropFormula::disj(std::move(disjuncts));
}

PropFormula tau_comparison(const Comparison& comparison) {
  for (const PrecomputedTerm& l : eval_term(comparison.left))
    for (const PrecomputedTerm& r : eval_term(comparison.right))
      if (holds(comparison.rel, l, r)) return PropFormula::verum();
  return PropFormula::falsum();
}

PropFormula tau_body(std::span<const BodyElement> body) {
  std::vector<PropFormula> conjuncts;
  conjuncts.reserve(body.size());
  for (const BodyElement& e : body) {
    if (const Literal* lit = std::get_if<Literal>(&e))
      conjuncts.push_back(tau_literal(*lit));
    else
      conjuncts.push_back(tau_comparison(std::get<Comparison>(e)));
  }
  return PropFormula::conj(std::move(conjuncts));
}

PropFormula tau_rule(const Rule& rule) {
  if (!rule.is_ground())
    throw std::invalid_argument("tau_rule: rule is not ground");
  PropFormula body = tau_body(rule.body);
  switch (rule.head_kind) {
    case Rule::HeadKind::Constraint:
      return PropFormula::neg(std::move(body));
    case Rule::HeadKind::Basic: {
      std::vector<PropFormula> heads;
      for (auto& tuple : eval_tuple(rule.head->args))
        heads.push_back(
            PropFormula::atom(GroundAtom{rule.head->predicate, std::move(tuple)}));
      return PropFormula::implies(std::move(body),
                                  PropFormula::conj(std::move(heads)));
    }
    case Rule::HeadKind::Choice: {
      std::vector<PropFormula> heads;
      for (auto& tuple : eval_tuple(rule.head->args)) {
        PropFormula a =
            PropFormula::atom(GroundAtom{rule.head->predicate, std::move(tuple)});
        heads.push_back(PropFormula::disj({a, PropFormula::neg(a)}));
      }
      return PropFormula::implies(std::move(body),
                                  PropFormula::conj(std::move(heads)));
    }
  }
  throw std::logic_error("tau_rule: unreachable");
}

std::vector<PropFormula> tau_program(const Program& program, const Universe& universe) {
  std::vector<PropFormula> out;
  std::set<std::string> seen;
  for (const Rule& rule : program.rules) {
    for (const Rule& instance : instances(rule, universe)) {
      PropFormula f = tau_rule(instance);
      if (seen.insert(f.to_string()).second) out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace mgtc
