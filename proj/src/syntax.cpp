#include "mgtc/syntax.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mgtc {

// ---------------------------------------------------------------------------
// PrecomputedTerm

PrecomputedTerm PrecomputedTerm::symbolic(std::string name) {
  if (name.empty())
    throw std::invalid_argument("symbolic constant name must be nonempty");
  return PrecomputedTerm(std::move(name));
}

std::strong_ordering PrecomputedTerm::operator<=>(const PrecomputedTerm& other) const {
  // Numerals by value, all numerals below all symbolic constants,
  // symbolic constants lexicographically by bytes.
  if (rep_.index() != other.rep_.index())
    return rep_.index() < other.rep_.index() ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
  if (is_numeral()) return number() <=> other.number();
  return symbol().compare(other.symbol()) <=> 0;
}

std::string PrecomputedTerm::to_string() const {
  return is_numeral() ? number().to_string() : symbol();
}

// ---------------------------------------------------------------------------
// Term

const char* bin_op_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "\\";
    case BinOp::Interval: return "..";
  }
  return "?";
}

struct Term::Node {
  Kind kind;
  // Precomputed
  std::optional<PrecomputedTerm> value;
  // Variable
  std::string var_name;
  // Abs / Bin
  BinOp op = BinOp::Add;
  std::vector<Term> children;
};

Term Term::precomputed(PrecomputedTerm value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Precomputed;
  node->value = std::move(value);
  return Term(std::move(node));
}

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->var_name = std::move(name);
  return Term(std::move(node));
}

Term Term::abs(Term inner) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Abs;
  node->children.push_back(std::move(inner));
  return Term(std::move(node));
}

Term Term::bin(BinOp op, Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Bin;
  node->op = op;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return Term(std::move(node));
}

Term::Kind Term::kind() const { return node_->kind; }
const PrecomputedTerm& Term::value() const { return *node_->value; }
const std::string& Term::variable_name() const { return node_->var_name; }
const Term& Term::inner() const { return node_->children[0]; }
BinOp Term::op() const { return node_->op; }
const Term& Term::left() const { return node_->children[0]; }
const Term& Term::right() const { return node_->children[1]; }

bool Term::is_ground() const {
  switch (kind()) {
    case Kind::Precomputed: return true;
    case Kind::Variable: return false;
    case Kind::Abs: return inner().is_ground();
    case Kind::Bin: return left().is_ground() && right().is_ground();
  }
  return false;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  switch (kind()) {
    case Kind::Precomputed:
      return;
    case Kind::Variable:
      if (std::find(out.begin(), out.end(), variable_name()) == out.end())
        out.push_back(variable_name());
      return;
    case Kind::Abs:
      inner().collect_variables(out);
      return;
    case Kind::Bin:
      left().collect_variables(out);
      right().collect_variables(out);
      return;
  }
}

void Term::collect_symbolic_constants(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Precomputed:
      if (value().is_symbolic()) out.insert(value().symbol());
      return;
    case Kind::Variable:
      return;
    case Kind::Abs:
      inner().collect_symbolic_constants(out);
      return;
    case Kind::Bin:
      left().collect_symbolic_constants(out);
      right().collect_symbolic_constants(out);
      return;
  }
}

void Term::collect_numerals(std::vector<BigInt>& out) const {
  switch (kind()) {
    case Kind::Precomputed:
      if (value().is_numeral()) out.push_back(value().number());
      return;
    case Kind::Variable:
      return;
    case Kind::Abs:
      inner().collect_numerals(out);
      return;
    case Kind::Bin:
      left().collect_numerals(out);
      right().collect_numerals(out);
      return;
  }
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Precomputed: return value() == other.value();
    case Kind::Variable: return variable_name() == other.variable_name();
    case Kind::Abs: return inner() == other.inner();
    case Kind::Bin:
      return op() == other.op() && left() == other.left() && right() == other.right();
  }
  return false;
}

namespace {

int op_precedence(BinOp op) {
  switch (op) {
    case BinOp::Interval: return 1;
    case BinOp::Add:
    case BinOp::Sub: return 2;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return 3;
  }
  return 0;
}

void print_term(std::ostream& os, const Term& t, int parent_prec, bool right_child) {
  switch (t.kind()) {
    case Term::Kind::Precomputed:
      os << t.value().to_string();
      return;
    case Term::Kind::Variable:
      os << t.variable_name();
      return;
    case Term::Kind::Abs:
      os << '|';
      print_term(os, t.inner(), 0, false);
      os << '|';
      return;
    case Term::Kind::Bin: {
      int prec = op_precedence(t.op());
      // ".." is non-associative; "-", "/" and "\" are left-associative.
      bool parens = prec < parent_prec ||
                    (prec == parent_prec && (right_child || parent_prec == 1));
      if (parens) os << '(';
      print_term(os, t.left(), prec, false);
      if (t.op() == BinOp::Interval)
        os << "..";
      else
        os << ' ' << bin_op_symbol(t.op()) << ' ';
      print_term(os, t.right(), prec, true);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

std::string Term::to_string() const {
  std::ostringstream os;
  print_term(os, *this, 0, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// Atoms, literals, comparisons

bool Atom::is_precomputed() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) {
    return t.kind() == Term::Kind::Precomputed;
  });
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_ground(); });
}

bool Atom::operator==(const Atom& other) const {
  return predicate == other.predicate && args == other.args;
}

std::string Atom::to_string() const {
  if (args.empty()) return predicate;
  std::ostringstream os;
  os << predicate << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) os << ',';
    os << args[i].to_string();
  }
  os << ')';
  return os.str();
}

std::string GroundAtom::to_string() const {
  if (args.empty()) return predicate;
  std::ostringstream os;
  os << predicate << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) os << ',';
    os << args[i].to_string();
  }
  os << ')';
  return os.str();
}

GroundAtom to_ground(const Atom& atom) {
  if (!atom.is_precomputed())
    throw std::invalid_argument("to_ground: atom has non-precomputed arguments");
  GroundAtom out;
  out.predicate = atom.predicate;
  out.args.reserve(atom.args.size());
  for (const Term& t : atom.args) out.args.push_back(t.value());
  return out;
}

Atom from_ground(const GroundAtom& atom) {
  Atom out;
  out.predicate = atom.predicate;
  out.args.reserve(atom.args.size());
  for (const PrecomputedTerm& t : atom.args) out.args.push_back(Term::precomputed(t));
  return out;
}

bool Literal::operator==(const Literal& other) const {
  return negations == other.negations && atom == other.atom;
}

std::string Literal::to_string() const {
  std::string out;
  for (int i = 0; i < negations; ++i) out += "not ";
  return out + atom.to_string();
}

const char* rel_symbol(Rel rel) {
  switch (rel) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
  }
  return "?";
}

const char* rel_symbol_pretty(Rel rel) {
  switch (rel) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "≠";
    case Rel::Lt: return "<";
    case Rel::Gt: return ">";
    case Rel::Le: return "≤";
    case Rel::Ge: return "≥";
  }
  return "?";
}

bool Comparison::operator==(const Comparison& other) const {
  return rel == other.rel && left == other.left && right == other.right;
}

std::string Comparison::to_string() const {
  return left.to_string() + " " + rel_symbol(rel) + " " + right.to_string();
}

bool body_element_equal(const BodyElement& a, const BodyElement& b) {
  return a == b;
}

std::string body_element_to_string(const BodyElement& e) {
  return std::visit([](const auto& x) { return x.to_string(); }, e);
}

// ---------------------------------------------------------------------------
// Rules and programs

bool Rule::is_ground() const {
  if (head && !head->is_ground()) return false;
  for (const BodyElement& e : body) {
    bool ground = std::visit(
        [](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Literal>)
            return x.atom.is_ground();
          else
            return x.left.is_ground() && x.right.is_ground();
        },
        e);
    if (!ground) return false;
  }
  return true;
}

bool Rule::is_fact() const {
  return head_kind == HeadKind::Basic && body.empty() && is_ground();
}

std::vector<std::string> Rule::variables() const {
  std::vector<std::string> out;
  if (head)
    for (const Term& t : head->args) t.collect_variables(out);
  for (const BodyElement& e : body) {
    std::visit(
        [&out](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Literal>) {
            for (const Term& t : x.atom.args) t.collect_variables(out);
          } else {
            x.left.collect_variables(out);
            x.right.collect_variables(out);
          }
        },
        e);
  }
  return out;
}

bool Rule::operator==(const Rule& other) const {
  if (head_kind != other.head_kind || head.has_value() != other.head.has_value())
    return false;
  if (head && !(*head == *other.head)) return false;
  if (body.size() != other.body.size()) return false;
  for (std::size_t i = 0; i < body.size(); ++i)
    if (!(body[i] == other.body[i])) return false;
  return true;
}

std::string Rule::to_string() const {
  std::ostringstream os;
  if (head_kind == HeadKind::Choice)
    os << '{' << head->to_string() << '}';
  else if (head_kind == HeadKind::Basic)
    os << head->to_string();
  if (!body.empty() || head_kind == HeadKind::Constraint) {
    if (head_kind != HeadKind::Constraint) os << ' ';
    os << ":-";
    for (std::size_t i = 0; i < body.size(); ++i)
      os << (i == 0 ? " " : ", ") << body_element_to_string(body[i]);
  }
  os << '.';
  return os.str();
}

void Program::dedup() {
  std::vector<Rule> out;
  for (const Rule& r : rules) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  rules = std::move(out);
}

namespace {

template <typename F>
void for_each_atom(const Rule& rule, F&& f) {
  if (rule.head) f(*rule.head);
  for (const BodyElement& e : rule.body)
    if (const Literal* lit = std::get_if<Literal>(&e)) f(lit->atom);
}

template <typename F>
void for_each_term(const Rule& rule, F&& f) {
  if (rule.head)
    for (const Term& t : rule.head->args) f(t);
  for (const BodyElement& e : rule.body) {
    std::visit(
        [&f](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Literal>) {
            for (const Term& t : x.atom.args) f(t);
          } else {
            f(x.left);
            f(x.right);
          }
        },
        e);
  }
}

}  // namespace

std::set<PredSym> Program::predicate_symbols() const {
  std::set<PredSym> out;
  for (const Rule& r : rules)
    for_each_atom(r, [&out](const Atom& a) { out.insert(a.symbol()); });
  return out;
}

std::set<PredSym> Program::head_symbols() const {
  std::set<PredSym> out;
  for (const Rule& r : rules)
    if (r.head) out.insert(r.head->symbol());
  return out;
}

std::set<std::string> Program::symbolic_constants() const {
  std::set<std::string> out;
  for (const Rule& r : rules)
    for_each_term(r, [&out](const Term& t) { t.collect_symbolic_constants(out); });
  return out;
}

std::vector<BigInt> Program::numerals() const {
  std::vector<BigInt> out;
  for (const Rule& r : rules)
    for_each_term(r, [&out](const Term& t) { t.collect_numerals(out); });
  return out;
}

std::vector<std::string> Program::variable_names() const {
  std::vector<std::string> out;
  for (const Rule& r : rules)
    for (const std::string& v : r.variables())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

bool Program::operator==(const Program& other) const { return rules == other.rules; }

std::string Program::to_string() const {
  std::ostringstream os;
  for (const Rule& r : rules) os << r.to_string() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Valuations

Term apply_valuation(const Term& t, const Valuation& v) {
  switch (t.kind()) {
    case Term::Kind::Precomputed: {
      const PrecomputedTerm& pt = t.value();
      if (pt.is_symbolic()) {
        auto it = v.find(pt.symbol());
        if (it != v.end()) return Term::precomputed(it->second);
      }
      return t;
    }
    case Term::Kind::Variable:
      return t;
    case Term::Kind::Abs:
      return Term::abs(apply_valuation(t.inner(), v));
    case Term::Kind::Bin:
      return Term::bin(t.op(), apply_valuation(t.left(), v),
                       apply_valuation(t.right(), v));
  }
  return t;
}

Atom apply_valuation(const Atom& a, const Valuation& v) {
  Atom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply_valuation(t, v));
  return out;
}

Rule apply_valuation(const Rule& r, const Valuation& v) {
  Rule out;
  out.head_kind = r.head_kind;
  if (r.head) out.head = apply_valuation(*r.head, v);
  out.body.reserve(r.body.size());
  for (const BodyElement& e : r.body) {
    if (const Literal* lit = std::get_if<Literal>(&e)) {
      out.body.push_back(Literal{lit->negations, apply_valuation(lit->atom, v)});
    } else {
      const Comparison& c = std::get<Comparison>(e);
      out.body.push_back(
          Comparison{apply_valuation(c.left, v), c.rel, apply_valuation(c.right, v)});
    }
  }
  return out;
}

Program apply_valuation(const Program& p, const Valuation& v) {
  Program out;
  out.rules.reserve(p.rules.size());
  for (const Rule& r : p.rules) out.rules.push_back(apply_valuation(r, v));
  return out;
}

// ---------------------------------------------------------------------------
// IoProgram and Input

IoProgram::IoProgram(Program program, std::set<std::string> placeholders,
                     std::set<PredSym> inputs, std::set<PredSym> outputs)
    : program_(std::move(program)),
      placeholders_(std::move(placeholders)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)) {
  for (const PredSym& p : inputs_) {
    if (outputs_.count(p))
      throw std::invalid_argument("io-program: " + p.to_string() +
                                  " is declared both input and output");
  }
  for (const Rule& r : program_.rules) {
    if (r.head && inputs_.count(r.head->symbol()))
      throw std::invalid_argument("io-program: input symbol " +
                                  r.head->symbol().to_string() +
                                  " occurs in a rule head");
  }
  std::set<PredSym> occurring = program_.predicate_symbols();
  for (const std::string& c : placeholders_) {
    for (const PredSym& p : occurring) {
      if (p.name == c)
        throw std::invalid_argument("io-program: placeholder " + c +
                                    " is also used as a predicate name");
    }
  }
  for (const PredSym& p : occurring)
    if (!inputs_.count(p) && !outputs_.count(p)) privates_.insert(p);
}

Input::Input(const IoProgram& io, Valuation valuation, AtomSet atoms)
    : valuation_(std::move(valuation)), atoms_(std::move(atoms)) {
  for (const auto& [name, value] : valuation_) {
    if (!io.placeholders().count(name))
      throw std::invalid_argument("input: " + name + " is not a placeholder");
    if (value.is_symbolic() && io.placeholders().count(value.symbol()))
      throw std::invalid_argument("input: valuation maps " + name +
                                  " to the placeholder " + value.symbol());
  }
  for (const GroundAtom& a : atoms_) {
    if (!io.is_input(a.symbol()))
      throw std::invalid_argument("input: " + a.symbol().to_string() +
                                  " is not an input symbol");
    for (const PrecomputedTerm& arg : a.args) {
      if (arg.is_symbolic() && io.placeholders().count(arg.symbol()))
        throw std::invalid_argument("input: atom " + a.to_string() +
                                    " contains the placeholder " + arg.symbol());
    }
  }
}

AtomSet public_projection(const AtomSet& atoms, const IoProgram& io) {
  AtomSet out;
  for (const GroundAtom& a : atoms)
    if (io.is_public(a.symbol())) out.insert(a);
  return out;
}

AtomSet input_projection(const AtomSet& atoms, const IoProgram& io) {
  AtomSet out;
  for (const GroundAtom& a : atoms)
    if (io.is_input(a.symbol())) out.insert(a);
  return out;
}

}  // namespace mgtc
