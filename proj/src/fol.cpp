#include "mgtc/fol.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mgtc/errors.hpp"
#include "mgtc/stable.hpp"
#include "mgtc/values.hpp"

namespace mgtc {

// ---------------------------------------------------------------------------
// FoTerm

struct FoTerm::Node {
  Kind kind;
  std::optional<PrecomputedTerm> value;
  std::string var_name;
  Sort var_sort = Sort::General;
  Op op = Op::Add;
  std::vector<FoTerm> children;
};

FoTerm FoTerm::constant(PrecomputedTerm value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = std::move(value);
  return FoTerm(std::move(node));
}

FoTerm FoTerm::variable(std::string name, Sort sort) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->var_name = std::move(name);
  node->var_sort = sort;
  return FoTerm(std::move(node));
}

FoTerm FoTerm::abs(FoTerm inner) {
  if (inner.sort() != Sort::Integer)
    throw std::invalid_argument("ill-sorted term: |...| needs an integer argument");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Abs;
  node->children.push_back(std::move(inner));
  return FoTerm(std::move(node));
}

FoTerm FoTerm::bin(Op op, FoTerm left, FoTerm right) {
  if (left.sort() != Sort::Integer || right.sort() != Sort::Integer)
    throw std::invalid_argument("ill-sorted term: arithmetic needs integer arguments");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Bin;
  node->op = op;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return FoTerm(std::move(node));
}

FoTerm::Kind FoTerm::kind() const { return node_->kind; }

Sort FoTerm::sort() const {
  switch (node_->kind) {
    case Kind::Const:
      return node_->value->is_numeral() ? Sort::Integer : Sort::General;
    case Kind::Var:
      return node_->var_sort;
    case Kind::Abs:
    case Kind::Bin:
      return Sort::Integer;
  }
  return Sort::General;
}

const PrecomputedTerm& FoTerm::value() const { return *node_->value; }
const std::string& FoTerm::var_name() const { return node_->var_name; }
const FoTerm& FoTerm::inner() const { return node_->children[0]; }
FoTerm::Op FoTerm::op() const { return node_->op; }
const FoTerm& FoTerm::left() const { return node_->children[0]; }
const FoTerm& FoTerm::right() const { return node_->children[1]; }

bool FoTerm::operator==(const FoTerm& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Const: return value() == other.value();
    case Kind::Var:
      return var_name() == other.var_name() && node_->var_sort == other.node_->var_sort;
    case Kind::Abs: return inner() == other.inner();
    case Kind::Bin:
      return op() == other.op() && left() == other.left() && right() == other.right();
  }
  return false;
}

namespace {

bool is_zero_const(const FoTerm& t) {
  return t.kind() == FoTerm::Kind::Const && t.value().is_numeral() &&
         t.value().number().is_zero();
}

void print_fo_term(std::ostream& os, const FoTerm& t, int parent_prec) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      os << t.value().to_string();
      return;
    case FoTerm::Kind::Var:
      os << t.var_name();
      return;
    case FoTerm::Kind::Abs:
      os << '|';
      print_fo_term(os, t.inner(), 0);
      os << '|';
      return;
    case FoTerm::Kind::Bin: {
      if (t.op() == FoTerm::Op::Sub && is_zero_const(t.left())) {
        os << '-';
        print_fo_term(os, t.right(), 3);
        return;
      }
      int prec = t.op() == FoTerm::Op::Mul ? 2 : 1;
      bool parens = prec < parent_prec;
      if (parens) os << '(';
      print_fo_term(os, t.left(), prec);
      switch (t.op()) {
        case FoTerm::Op::Add: os << " + "; break;
        case FoTerm::Op::Sub: os << " - "; break;
        case FoTerm::Op::Mul: os << " × "; break;
      }
      print_fo_term(os, t.right(), prec + 1);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

std::string FoTerm::to_string() const {
  std::ostringstream os;
  print_fo_term(os, *this, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// FoFormula

struct FoFormula::Node {
  Kind kind;
  std::string name;  // Pred name or quantified variable
  bool pred_variable = false;
  std::vector<FoTerm> terms;  // Pred args or {left, right} of Cmp
  Rel rel = Rel::Eq;
  Sort sort = Sort::General;  // quantifier sort
  std::vector<FoFormula> children;
};

FoFormula FoFormula::pred(std::string name, std::vector<FoTerm> args,
                          bool predicate_variable) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Pred;
  node->name = std::move(name);
  node->pred_variable = predicate_variable;
  node->terms = std::move(args);
  return FoFormula(std::move(node));
}

FoFormula FoFormula::cmp(Rel rel, FoTerm left, FoTerm right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Cmp;
  node->rel = rel;
  node->terms.push_back(std::move(left));
  node->terms.push_back(std::move(right));
  return FoFormula(std::move(node));
}

FoFormula FoFormula::bot() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Bot;
  return FoFormula(std::move(node));
}

FoFormula FoFormula::conj(std::vector<FoFormula> members) {
  if (members.empty()) return top();
  if (members.size() == 1) return members[0];
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children = std::move(members);
  return FoFormula(std::move(node));
}

FoFormula FoFormula::disj(std::vector<FoFormula> members) {
  if (members.empty()) return bot();
  if (members.size() == 1) return members[0];
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->children = std::move(members);
  return FoFormula(std::move(node));
}

FoFormula FoFormula::implies(FoFormula antecedent, FoFormula consequent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Implies;
  node->children.push_back(std::move(antecedent));
  node->children.push_back(std::move(consequent));
  return FoFormula(std::move(node));
}

FoFormula FoFormula::iff(FoFormula a, FoFormula b) {
  return conj({implies(a, b), implies(b, a)});
}

FoFormula FoFormula::forall(std::string var, Sort sort, FoFormula body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Forall;
  node->name = std::move(var);
  node->sort = sort;
  node->children.push_back(std::move(body));
  return FoFormula(std::move(node));
}

FoFormula FoFormula::exists(std::string var, Sort sort, FoFormula body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Exists;
  node->name = std::move(var);
  node->sort = sort;
  node->children.push_back(std::move(body));
  return FoFormula(std::move(node));
}

FoFormula FoFormula::quantify(Kind kind,
                              std::span<const std::pair<std::string, Sort>> vars,
                              FoFormula body) {
  FoFormula out = std::move(body);
  for (std::size_t i = vars.size(); i-- > 0;) {
    out = kind == Kind::Forall ? forall(vars[i].first, vars[i].second, std::move(out))
                               : exists(vars[i].first, vars[i].second, std::move(out));
  }
  return out;
}

FoFormula::Kind FoFormula::kind() const { return node_->kind; }
const std::string& FoFormula::pred_name() const { return node_->name; }
bool FoFormula::is_pred_variable() const { return node_->pred_variable; }
std::span<const FoTerm> FoFormula::pred_args() const { return node_->terms; }
Rel FoFormula::rel() const { return node_->rel; }
const FoTerm& FoFormula::left() const { return node_->terms[0]; }
const FoTerm& FoFormula::right() const { return node_->terms[1]; }
std::span<const FoFormula> FoFormula::members() const { return node_->children; }
const FoFormula& FoFormula::antecedent() const { return node_->children[0]; }
const FoFormula& FoFormula::consequent() const { return node_->children[1]; }
const std::string& FoFormula::quant_var() const { return node_->name; }
Sort FoFormula::quant_sort() const { return node_->sort; }
const FoFormula& FoFormula::quant_body() const { return node_->children[0]; }

bool FoFormula::is_negation() const {
  return kind() == Kind::Implies && consequent().kind() == Kind::Bot;
}

std::optional<std::pair<FoFormula, FoFormula>> FoFormula::as_iff() const {
  if (kind() != Kind::And || members().size() != 2) return std::nullopt;
  const FoFormula& fwd = members()[0];
  const FoFormula& bwd = members()[1];
  if (fwd.kind() != Kind::Implies || bwd.kind() != Kind::Implies) return std::nullopt;
  if (fwd.antecedent() == bwd.consequent() && fwd.consequent() == bwd.antecedent())
    return std::make_pair(fwd.antecedent(), fwd.consequent());
  return std::nullopt;
}

namespace {

void collect_term_vars(const FoTerm& t,
                       std::vector<std::pair<std::string, Sort>>& out,
                       const std::set<std::string>& bound) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      return;
    case FoTerm::Kind::Var: {
      if (bound.count(t.var_name())) return;
      auto match = [&t](const auto& p) { return p.first == t.var_name(); };
      if (std::find_if(out.begin(), out.end(), match) == out.end())
        out.emplace_back(t.var_name(), t.sort());
      return;
    }
    case FoTerm::Kind::Abs:
      collect_term_vars(t.inner(), out, bound);
      return;
    case FoTerm::Kind::Bin:
      collect_term_vars(t.left(), out, bound);
      collect_term_vars(t.right(), out, bound);
      return;
  }
}

void collect_free(const FoFormula& f,
                  std::vector<std::pair<std::string, Sort>>& out,
                  std::set<std::string>& bound) {
  switch (f.kind()) {
    case FoFormula::Kind::Pred:
    case FoFormula::Kind::Cmp:
      for (const FoTerm& t : f.kind() == FoFormula::Kind::Pred
                                 ? f.pred_args()
                                 : std::span<const FoTerm>{&f.left(), 2})
        collect_term_vars(t, out, bound);
      return;
    case FoFormula::Kind::Bot:
      return;
    case FoFormula::Kind::And:
    case FoFormula::Kind::Or:
      for (const FoFormula& m : f.members()) collect_free(m, out, bound);
      return;
    case FoFormula::Kind::Implies:
      collect_free(f.antecedent(), out, bound);
      collect_free(f.consequent(), out, bound);
      return;
    case FoFormula::Kind::Forall:
    case FoFormula::Kind::Exists: {
      bool newly_bound = bound.insert(f.quant_var()).second;
      collect_free(f.quant_body(), out, bound);
      if (newly_bound) bound.erase(f.quant_var());
      return;
    }
  }
}

}  // namespace

void FoFormula::collect_free_variables(
    std::vector<std::pair<std::string, Sort>>& out) const {
  std::set<std::string> bound;
  collect_free(*this, out, bound);
}

void FoFormula::collect_pred_symbols(std::set<PredSym>& out) const {
  switch (kind()) {
    case Kind::Pred:
      if (!is_pred_variable()) out.insert({pred_name(), pred_args().size()});
      return;
    case Kind::Cmp:
    case Kind::Bot:
      return;
    case Kind::Forall:
    case Kind::Exists:
      quant_body().collect_pred_symbols(out);
      return;
    default:
      for (const FoFormula& c : node_->children) c.collect_pred_symbols(out);
      return;
  }
}

bool FoFormula::contains_pred_symbol(const std::set<PredSym>& symbols) const {
  switch (kind()) {
    case Kind::Pred:
      return !is_pred_variable() &&
             symbols.count({pred_name(), pred_args().size()}) != 0;
    case Kind::Cmp:
    case Kind::Bot:
      return false;
    case Kind::Forall:
    case Kind::Exists:
      return quant_body().contains_pred_symbol(symbols);
    default:
      for (const FoFormula& c : node_->children)
        if (c.contains_pred_symbol(symbols)) return true;
      return false;
  }
}

namespace {

bool term_contains_placeholder(const FoTerm& t, const std::set<std::string>& ph) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      return t.value().is_symbolic() && ph.count(t.value().symbol()) != 0;
    case FoTerm::Kind::Var:
      return false;
    case FoTerm::Kind::Abs:
      return term_contains_placeholder(t.inner(), ph);
    case FoTerm::Kind::Bin:
      return term_contains_placeholder(t.left(), ph) ||
             term_contains_placeholder(t.right(), ph);
  }
  return false;
}

}  // namespace

bool FoFormula::contains_placeholder(const std::set<std::string>& placeholders) const {
  switch (kind()) {
    case Kind::Pred:
      for (const FoTerm& t : pred_args())
        if (term_contains_placeholder(t, placeholders)) return true;
      return false;
    case Kind::Cmp:
      return term_contains_placeholder(left(), placeholders) ||
             term_contains_placeholder(right(), placeholders);
    case Kind::Bot:
      return false;
    case Kind::Forall:
    case Kind::Exists:
      return quant_body().contains_placeholder(placeholders);
    default:
      for (const FoFormula& c : node_->children)
        if (c.contains_placeholder(placeholders)) return true;
      return false;
  }
}

namespace {

FoTerm substitute_term(const FoTerm& t, const std::string& var, const FoTerm& repl) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      return t;
    case FoTerm::Kind::Var:
      return t.var_name() == var ? repl : t;
    case FoTerm::Kind::Abs:
      return FoTerm::abs(substitute_term(t.inner(), var, repl));
    case FoTerm::Kind::Bin:
      return FoTerm::bin(t.op(), substitute_term(t.left(), var, repl),
                         substitute_term(t.right(), var, repl));
  }
  return t;
}

}  // namespace

FoFormula FoFormula::substitute(const std::string& var, const FoTerm& repl) const {
  switch (kind()) {
    case Kind::Pred: {
      std::vector<FoTerm> args;
      args.reserve(pred_args().size());
      for (const FoTerm& t : pred_args()) args.push_back(substitute_term(t, var, repl));
      return pred(pred_name(), std::move(args), is_pred_variable());
    }
    case Kind::Cmp:
      return cmp(rel(), substitute_term(left(), var, repl),
                 substitute_term(right(), var, repl));
    case Kind::Bot:
      return *this;
    case Kind::And:
    case Kind::Or: {
      std::vector<FoFormula> out;
      out.reserve(members().size());
      for (const FoFormula& m : members()) out.push_back(m.substitute(var, repl));
      return kind() == Kind::And ? conj(std::move(out)) : disj(std::move(out));
    }
    case Kind::Implies:
      return implies(antecedent().substitute(var, repl),
                     consequent().substitute(var, repl));
    case Kind::Forall:
    case Kind::Exists: {
      if (quant_var() == var) return *this;  // shadowed
      FoFormula body = quant_body().substitute(var, repl);
      return kind() == Kind::Forall ? forall(quant_var(), quant_sort(), std::move(body))
                                    : exists(quant_var(), quant_sort(), std::move(body));
    }
  }
  return *this;
}

bool FoFormula::operator==(const FoFormula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Pred:
      return pred_name() == other.pred_name() &&
             is_pred_variable() == other.is_pred_variable() &&
             node_->terms == other.node_->terms;
    case Kind::Cmp:
      return rel() == other.rel() && node_->terms == other.node_->terms;
    case Kind::Bot:
      return true;
    case Kind::Forall:
    case Kind::Exists:
      return quant_var() == other.quant_var() && quant_sort() == other.quant_sort() &&
             quant_body() == other.quant_body();
    default:
      return node_->children == other.node_->children;
  }
}

namespace {

bool is_top(const FoFormula& f) {
  return f.is_negation() && f.antecedent().kind() == FoFormula::Kind::Bot;
}

// Precedences: implication/equivalence 1, disjunction 2, conjunction 3,
// negation 4.  Quantified bodies are always parenthesized.
void print_fo(std::ostream& os, const FoFormula& f, int parent_prec) {
  using Kind = FoFormula::Kind;
  if (is_top(f)) {
    os << "⊤";
    return;
  }
  if (auto both = f.as_iff()) {
    bool parens = 1 <= parent_prec;
    if (parens) os << '(';
    print_fo(os, both->first, 1);
    os << " ↔ ";
    print_fo(os, both->second, 1);
    if (parens) os << ')';
    return;
  }
  if (f.is_negation()) {
    os << "¬";
    print_fo(os, f.antecedent(), 4);
    return;
  }
  switch (f.kind()) {
    case Kind::Pred: {
      os << f.pred_name();
      if (!f.pred_args().empty()) {
        os << '(';
        bool first = true;
        for (const FoTerm& t : f.pred_args()) {
          if (!first) os << ", ";
          os << t.to_string();
          first = false;
        }
        os << ')';
      }
      return;
    }
    case Kind::Cmp: {
      bool parens = 4 <= parent_prec;
      if (parens) os << '(';
      os << f.left().to_string() << ' ' << rel_symbol_pretty(f.rel()) << ' '
         << f.right().to_string();
      if (parens) os << ')';
      return;
    }
    case Kind::Bot:
      os << "⊥";
      return;
    case Kind::And:
    case Kind::Or: {
      int prec = f.kind() == Kind::And ? 3 : 2;
      bool parens = prec <= parent_prec;
      if (parens) os << '(';
      bool first = true;
      for (const FoFormula& m : f.members()) {
        if (!first) os << (f.kind() == Kind::And ? " ∧ " : " ∨ ");
        print_fo(os, m, prec);
        first = false;
      }
      if (parens) os << ')';
      return;
    }
    case Kind::Implies: {
      bool parens = 1 <= parent_prec;
      if (parens) os << '(';
      print_fo(os, f.antecedent(), 1);
      os << " → ";
      print_fo(os, f.consequent(), 0);
      if (parens) os << ')';
      return;
    }
    case Kind::Forall:
    case Kind::Exists: {
      Kind kind = f.kind();
      os << (kind == Kind::Forall ? "∀" : "∃");
      const FoFormula* cur = &f;
      bool first = true;
      while (cur->kind() == kind) {
        if (!first) os << ' ';
        os << cur->quant_var();
        first = false;
        cur = &cur->quant_body();
      }
      os << " (";
      print_fo(os, *cur, 0);
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string FoFormula::to_string() const {
  std::ostringstream os;
  print_fo(os, *this, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Valuations

FoTerm apply_valuation(const FoTerm& t, const Valuation& v) {
  switch (t.kind()) {
    case FoTerm::Kind::Const: {
      if (t.value().is_symbolic()) {
        auto it = v.find(t.value().symbol());
        if (it != v.end()) return FoTerm::constant(it->second);
      }
      return t;
    }
    case FoTerm::Kind::Var:
      return t;
    case FoTerm::Kind::Abs:
      return FoTerm::abs(apply_valuation(t.inner(), v));
    case FoTerm::Kind::Bin:
      return FoTerm::bin(t.op(), apply_valuation(t.left(), v),
                         apply_valuation(t.right(), v));
  }
  return t;
}

FoFormula apply_valuation(const FoFormula& f, const Valuation& v) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred: {
      std::vector<FoTerm> args;
      for (const FoTerm& t : f.pred_args()) args.push_back(apply_valuation(t, v));
      return FoFormula::pred(f.pred_name(), std::move(args), f.is_pred_variable());
    }
    case Kind::Cmp:
      return FoFormula::cmp(f.rel(), apply_valuation(f.left(), v),
                            apply_valuation(f.right(), v));
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<FoFormula> out;
      for (const FoFormula& m : f.members()) out.push_back(apply_valuation(m, v));
      return f.kind() == Kind::And ? FoFormula::conj(std::move(out))
                                   : FoFormula::disj(std::move(out));
    }
    case Kind::Implies:
      return FoFormula::implies(apply_valuation(f.antecedent(), v),
                                apply_valuation(f.consequent(), v));
    case Kind::Forall:
    case Kind::Exists: {
      FoFormula body = apply_valuation(f.quant_body(), v);
      return f.kind() == Kind::Forall
                 ? FoFormula::forall(f.quant_var(), f.quant_sort(), std::move(body))
                 : FoFormula::exists(f.quant_var(), f.quant_sort(), std::move(body));
    }
  }
  return f;
}

SoSentence apply_valuation(const SoSentence& s, const Valuation& v) {
  return SoSentence{s.prefix, apply_valuation(s.matrix, v)};
}

std::string SoSentence::to_string() const {
  if (prefix.empty()) return matrix.to_string();
  std::ostringstream os;
  os << "∃";
  bool first = true;
  for (const PredVar& p : prefix) {
    if (!first) os << ' ';
    os << p.name;
    first = false;
  }
  os << " (" << matrix.to_string() << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// CompletableSet

CompletableSet::CompletableSet(std::vector<FoFormula> sentences,
                               std::vector<PredSym> intensional)
    : sentences_(std::move(sentences)), intensional_(std::move(intensional)) {
  std::set<PredSym> intensional_set(intensional_.begin(), intensional_.end());
  std::map<PredSym, FoFormula> consequents;
  for (const FoFormula& sentence : sentences_) {
    Member member{{}, FoFormula::bot(), FoFormula::bot(), std::nullopt};
    const FoFormula* cur = &sentence;
    std::set<std::string> prefix_names;
    while (cur->kind() == FoFormula::Kind::Forall) {
      if (!prefix_names.insert(cur->quant_var()).second)
        throw std::invalid_argument("completable set: repeated prefix variable " +
                                    cur->quant_var());
      member.prefix.emplace_back(cur->quant_var(), cur->quant_sort());
      cur = &cur->quant_body();
    }
    if (cur->kind() != FoFormula::Kind::Implies)
      throw std::invalid_argument(
          "completable set: sentence is not a closed implication: " +
          sentence.to_string());
    member.antecedent = cur->antecedent();
    member.consequent = cur->consequent();
    std::vector<std::pair<std::string, Sort>> free;
    cur->collect_free_variables(free);
    for (const auto& [name, sort] : free) {
      (void)sort;
      if (!prefix_names.count(name))
        throw std::invalid_argument("completable set: free variable " + name +
                                    " in " + sentence.to_string());
    }
    const FoFormula& g = member.consequent;
    if (g.kind() == FoFormula::Kind::Pred && !g.is_pred_variable() &&
        intensional_set.count({g.pred_name(), g.pred_args().size()})) {
      PredSym p{g.pred_name(), g.pred_args().size()};
      std::set<std::string> seen;
      for (const FoTerm& arg : g.pred_args()) {
        if (arg.kind() != FoTerm::Kind::Var || !seen.insert(arg.var_name()).second)
          throw std::invalid_argument(
              "completable set: consequent of a definition must apply " +
              p.to_string() + " to distinct variables");
      }
      auto it = consequents.find(p);
      if (it == consequents.end()) {
        consequents.emplace(p, g);
      } else if (!(it->second == g)) {
        throw std::invalid_argument(
            "completable set: two definitions of " + p.to_string() +
            " have different consequents");
      }
      member.defines = p;
    } else if (g.contains_pred_symbol(intensional_set)) {
      throw std::invalid_argument(
          "completable set: consequent mixes intensional symbols into " +
          g.to_string());
    }
    members_.push_back(std::move(member));
  }
}

bool CompletableSet::is_intensional(const PredSym& p) const {
  return std::find(intensional_.begin(), intensional_.end(), p) != intensional_.end();
}

CompletableSet apply_valuation(const CompletableSet& gamma, const Valuation& v) {
  std::vector<FoFormula> sentences;
  sentences.reserve(gamma.sentences().size());
  for (const FoFormula& s : gamma.sentences())
    sentences.push_back(apply_valuation(s, v));
  return CompletableSet(std::move(sentences), gamma.intensional());
}

// ---------------------------------------------------------------------------
// Value formulas

FoFormula val_formula(const Term& t, const FoTerm& target, FreshVars& fresh) {
  switch (t.kind()) {
    case Term::Kind::Precomputed:
      return FoFormula::cmp(Rel::Eq, target, FoTerm::constant(t.value()));
    case Term::Kind::Variable:
      return FoFormula::cmp(Rel::Eq, target,
                            FoTerm::variable(t.variable_name(), Sort::General));
    case Term::Kind::Abs: {
      auto names = fresh.next_triple();
      FoTerm i = FoTerm::variable(names.i, Sort::Integer);
      FoFormula body = FoFormula::conj(
          {val_formula(t.inner(), i, fresh),
           FoFormula::cmp(Rel::Eq, target, FoTerm::abs(i))});
      return FoFormula::exists(names.i, Sort::Integer, std::move(body));
    }
    case Term::Kind::Bin:
      break;
  }
  auto names = fresh.next_triple();
  FoTerm i = FoTerm::variable(names.i, Sort::Integer);
  FoTerm j = FoTerm::variable(names.j, Sort::Integer);
  FoTerm k = FoTerm::variable(names.k, Sort::Integer);
  FoFormula val_left = val_formula(t.left(), i, fresh);
  FoFormula val_right = val_formula(t.right(), j, fresh);
  auto exists_ij = [&](FoFormula body) {
    return FoFormula::exists(
        names.i, Sort::Integer,
        FoFormula::exists(names.j, Sort::Integer, std::move(body)));
  };
  auto exists_ijk = [&](FoFormula body) {
    return exists_ij(FoFormula::exists(names.k, Sort::Integer, std::move(body)));
  };
  switch (t.op()) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul: {
      FoTerm::Op op = t.op() == BinOp::Add   ? FoTerm::Op::Add
                      : t.op() == BinOp::Sub ? FoTerm::Op::Sub
                                             : FoTerm::Op::Mul;
      return exists_ij(FoFormula::conj(
          {std::move(val_left), std::move(val_right),
           FoFormula::cmp(Rel::Eq, target, FoTerm::bin(op, i, j))}));
    }
    case BinOp::Div:
    case BinOp::Mod: {
      // K is the magnitude of the quotient: K*|J| <= |I| < (K+1)*|J|,
      // with the sign of I*J selecting the branch.
      FoFormula bound_lo = FoFormula::cmp(
          Rel::Le, FoTerm::bin(FoTerm::Op::Mul, k, FoTerm::abs(j)), FoTerm::abs(i));
      FoFormula bound_hi = FoFormula::cmp(
          Rel::Lt, FoTerm::abs(i),
          FoTerm::bin(FoTerm::Op::Mul,
                      FoTerm::bin(FoTerm::Op::Add, k, FoTerm::numeral(1)),
                      FoTerm::abs(j)));
      FoFormula same_sign =
          FoFormula::cmp(Rel::Ge, FoTerm::bin(FoTerm::Op::Mul, i, j), FoTerm::numeral(0));
      FoFormula opposite_sign =
          FoFormula::cmp(Rel::Lt, FoTerm::bin(FoTerm::Op::Mul, i, j), FoTerm::numeral(0));
      FoTerm pos_value = t.op() == BinOp::Div
                             ? k
                             : FoTerm::bin(FoTerm::Op::Sub, i,
                                           FoTerm::bin(FoTerm::Op::Mul, k, j));
      FoTerm neg_value = t.op() == BinOp::Div
                             ? FoTerm::negate(k)
                             : FoTerm::bin(FoTerm::Op::Add, i,
                                           FoTerm::bin(FoTerm::Op::Mul, k, j));
      FoFormula branch = FoFormula::disj(
          {FoFormula::conj({std::move(same_sign),
                            FoFormula::cmp(Rel::Eq, target, std::move(pos_value))}),
           FoFormula::conj({std::move(opposite_sign),
                            FoFormula::cmp(Rel::Eq, target, std::move(neg_value))})});
      return exists_ijk(FoFormula::conj({std::move(val_left), std::move(val_right),
                                         std::move(bound_lo), std::move(bound_hi),
                                         std::move(branch)}));
    }
    case BinOp::Interval:
      return exists_ijk(FoFormula::conj(
          {std::move(val_left), std::move(val_right),
           FoFormula::cmp(Rel::Le, i, k), FoFormula::cmp(Rel::Le, k, j),
           FoFormula::cmp(Rel::Eq, target, k)}));
  }
  throw std::logic_error("val_formula: unreachable");
}

FoFormula val_formula(const Term& t, const std::string& target_var) {
  FreshVars fresh;
  return val_formula(t, FoTerm::variable(target_var, Sort::General), fresh);
}

// ---------------------------------------------------------------------------
// Body translation

namespace {

// Value-variable names for a body element: V for a single position,
// V1..Vn otherwise, skipping names that occur in the element or in `avoid`.
std::vector<std::string> value_var_names(std::size_t n,
                                         const std::set<std::string>& avoid) {
  std::vector<std::string> out;
  if (n == 1) {
    if (!avoid.count("V")) {
      out.push_back("V");
      return out;
    }
  }
  for (int index = 1; out.size() < n; ++index) {
    std::string name = "V" + std::to_string(index);
    if (!avoid.count(name)) out.push_back(name);
  }
  return out;
}

std::set<std::string> with_own_variables(std::set<std::string> avoid,
                                         std::initializer_list<const Term*> terms) {
  std::vector<std::string> vars;
  for (const Term* t : terms) t->collect_variables(vars);
  avoid.insert(vars.begin(), vars.end());
  return avoid;
}

}  // namespace

FoFormula tau_b(const Literal& literal, FreshVars& fresh,
                const std::set<std::string>& avoid) {
  std::set<std::string> names_to_avoid = avoid;
  {
    std::vector<std::string> vars;
    for (const Term& t : literal.atom.args) t.collect_variables(vars);
    names_to_avoid.insert(vars.begin(), vars.end());
  }
  std::size_t n = literal.atom.args.size();
  std::vector<std::string> names = value_var_names(n, names_to_avoid);
  std::vector<FoTerm> vars;
  vars.reserve(n);
  for (const std::string& name : names)
    vars.push_back(FoTerm::variable(name, Sort::General));
  FoFormula atom = FoFormula::pred(literal.atom.predicate, vars);
  for (int i = 0; i < literal.negations; ++i) atom = FoFormula::neg(std::move(atom));
  if (n == 0) return atom;
  std::vector<FoFormula> conjuncts;
  for (std::size_t i = 0; i < n; ++i)
    conjuncts.push_back(val_formula(literal.atom.args[i], vars[i], fresh));
  conjuncts.push_back(std::move(atom));
  std::vector<std::pair<std::string, Sort>> binder;
  for (const std::string& name : names) binder.emplace_back(name, Sort::General);
  return FoFormula::quantify(FoFormula::Kind::Exists, binder,
                             FoFormula::conj(std::move(conjuncts)));
}

FoFormula tau_b(const Comparison& comparison, FreshVars& fresh,
                const std::set<std::string>& avoid) {
  std::set<std::string> names_to_avoid =
      with_own_variables(avoid, {&comparison.left, &comparison.right});
  names_to_avoid.erase("V");  // comparisons always use indexed names
  std::vector<std::string> names;
  for (int index = 1; names.size() < 2; ++index) {
    std::string name = "V" + std::to_string(index);
    if (!names_to_avoid.count(name)) names.push_back(name);
  }
  FoTerm v1 = FoTerm::variable(names[0], Sort::General);
  FoTerm v2 = FoTerm::variable(names[1], Sort::General);
  FoFormula body = FoFormula::conj({val_formula(comparison.left, v1, fresh),
                                    val_formula(comparison.right, v2, fresh),
                                    FoFormula::cmp(comparison.rel, v1, v2)});
  return FoFormula::exists(
      names[0], Sort::General,
      FoFormula::exists(names[1], Sort::General, std::move(body)));
}

FoFormula tau_b(const BodyElement& element, FreshVars& fresh,
                const std::set<std::string>& avoid) {
  if (const Literal* lit = std::get_if<Literal>(&element))
    return tau_b(*lit, fresh, avoid);
  return tau_b(std::get<Comparison>(element), fresh, avoid);
}

// ---------------------------------------------------------------------------
// tau_star

namespace {

// The first n V-indexed names that do not occur as variables of the program.
std::vector<std::string> head_tuple_names(std::size_t n,
                                          const std::set<std::string>& program_vars) {
  std::vector<std::string> out;
  for (int index = 1; out.size() < n; ++index) {
    std::string name = "V" + std::to_string(index);
    if (!program_vars.count(name)) out.push_back(name);
  }
  return out;
}

FoFormula translate_rule(const Rule& rule, const std::set<std::string>& program_vars) {
  FreshVars fresh;
  std::vector<FoFormula> body;
  for (const BodyElement& e : rule.body)
    body.push_back(tau_b(e, fresh, program_vars));
  std::vector<std::pair<std::string, Sort>> closure;
  for (const std::string& v : rule.variables()) closure.emplace_back(v, Sort::General);
  if (rule.head_kind == Rule::HeadKind::Constraint) {
    return FoFormula::quantify(
        FoFormula::Kind::Forall, closure,
        FoFormula::implies(FoFormula::conj(std::move(body)), FoFormula::bot()));
  }
  std::size_t arity = rule.head->args.size();
  std::vector<std::string> names = head_tuple_names(arity, program_vars);
  std::vector<FoTerm> tuple;
  for (const std::string& name : names)
    tuple.push_back(FoTerm::variable(name, Sort::General));
  std::vector<FoFormula> antecedent;
  for (std::size_t i = 0; i < arity; ++i)
    antecedent.push_back(val_formula(rule.head->args[i], tuple[i], fresh));
  for (FoFormula& b : body) antecedent.push_back(std::move(b));
  FoFormula head_atom = FoFormula::pred(rule.head->predicate, tuple);
  if (rule.head_kind == Rule::HeadKind::Choice)
    antecedent.push_back(FoFormula::neg(FoFormula::neg(head_atom)));
  for (const std::string& name : names) closure.emplace_back(name, Sort::General);
  return FoFormula::quantify(
      FoFormula::Kind::Forall, closure,
      FoFormula::implies(FoFormula::conj(std::move(antecedent)), head_atom));
}

// Predicate symbols in order of first occurrence, heads before bodies.
std::vector<PredSym> occurrence_order(const Program& program) {
  std::vector<PredSym> out;
  auto add = [&out](const PredSym& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const Rule& r : program.rules) {
    if (r.head) add(r.head->symbol());
    for (const BodyElement& e : r.body)
      if (const Literal* lit = std::get_if<Literal>(&e)) add(lit->atom.symbol());
  }
  return out;
}

}  // namespace

FoFormula tau_star_rule(const Rule& rule, const Program& context) {
  std::vector<std::string> vars = context.variable_names();
  return translate_rule(rule, {vars.begin(), vars.end()});
}

CompletableSet tau_star(const Program& program, std::vector<PredSym> intensional) {
  std::vector<std::string> var_list = program.variable_names();
  std::set<std::string> program_vars(var_list.begin(), var_list.end());
  std::vector<FoFormula> sentences;
  sentences.reserve(program.rules.size());
  for (const Rule& rule : program.rules)
    sentences.push_back(translate_rule(rule, program_vars));
  return CompletableSet(std::move(sentences), std::move(intensional));
}

CompletableSet tau_star(const Program& program) {
  return tau_star(program, occurrence_order(program));
}

// ---------------------------------------------------------------------------
// Completion

FoFormula completed_definition(const PredSym& p, const CompletableSet& gamma) {
  std::vector<std::pair<std::string, Sort>> tuple;
  std::vector<FoFormula> disjuncts;
  for (const CompletableSet::Member& member : gamma.members()) {
    if (!member.defines || !(*member.defines == p)) continue;
    if (tuple.empty()) {
      for (const FoTerm& arg : member.consequent.pred_args())
        tuple.emplace_back(arg.var_name(), arg.sort());
    }
    std::set<std::string> head_names;
    for (const auto& [name, sort] : tuple) {
      (void)sort;
      head_names.insert(name);
    }
    std::vector<std::pair<std::string, Sort>> extra;
    for (const auto& v : member.prefix)
      if (!head_names.count(v.first)) extra.push_back(v);
    disjuncts.push_back(
        FoFormula::quantify(FoFormula::Kind::Exists, extra, member.antecedent));
  }
  if (tuple.empty())
    for (std::size_t i = 1; i <= p.arity; ++i)
      tuple.emplace_back("V" + std::to_string(i), Sort::General);
  std::vector<FoTerm> args;
  for (const auto& [name, sort] : tuple) args.push_back(FoTerm::variable(name, sort));
  FoFormula body = FoFormula::iff(FoFormula::pred(p.name, args),
                                  FoFormula::disj(std::move(disjuncts)));
  return FoFormula::quantify(FoFormula::Kind::Forall, tuple, std::move(body));
}

FoFormula complete(const CompletableSet& gamma) {
  std::vector<FoFormula> conjuncts;
  for (const PredSym& p : gamma.intensional())
    conjuncts.push_back(completed_definition(p, gamma));
  for (std::size_t i = 0; i < gamma.members().size(); ++i)
    if (!gamma.members()[i].defines) conjuncts.push_back(gamma.sentences()[i]);
  return FoFormula::conj(std::move(conjuncts));
}

namespace {

FoFormula replace_privates(const FoFormula& f,
                           const std::map<PredSym, std::string>& names) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred: {
      if (!f.is_pred_variable()) {
        auto it = names.find({f.pred_name(), f.pred_args().size()});
        if (it != names.end()) {
          std::vector<FoTerm> args(f.pred_args().begin(), f.pred_args().end());
          return FoFormula::pred(it->second, std::move(args), true);
        }
      }
      return f;
    }
    case Kind::Cmp:
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<FoFormula> out;
      for (const FoFormula& m : f.members()) out.push_back(replace_privates(m, names));
      return f.kind() == Kind::And ? FoFormula::conj(std::move(out))
                                   : FoFormula::disj(std::move(out));
    }
    case Kind::Implies:
      return FoFormula::implies(replace_privates(f.antecedent(), names),
                                replace_privates(f.consequent(), names));
    case Kind::Forall:
    case Kind::Exists: {
      FoFormula body = replace_privates(f.quant_body(), names);
      return f.kind() == Kind::Forall
                 ? FoFormula::forall(f.quant_var(), f.quant_sort(), std::move(body))
                 : FoFormula::exists(f.quant_var(), f.quant_sort(), std::move(body));
    }
  }
  return f;
}

}  // namespace

SoSentence complete_io(const IoProgram& io) {
  // Intensional symbols: outputs and privates, ordered by first occurrence
  // in the rules, then declared-but-unused outputs.
  std::vector<PredSym> intensional;
  for (const PredSym& p : occurrence_order(io.program()))
    if (io.outputs().count(p) || io.private_symbols().count(p))
      intensional.push_back(p);
  for (const PredSym& p : io.outputs())
    if (std::find(intensional.begin(), intensional.end(), p) == intensional.end())
      intensional.push_back(p);
  CompletableSet gamma = tau_star(io.program(), intensional);
  FoFormula matrix = complete(gamma);

  std::map<PredSym, std::string> names;
  std::set<std::string> used;
  SoSentence out;
  for (const PredSym& p : intensional) {
    if (!io.private_symbols().count(p)) continue;
    std::string name = p.name;
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    if (used.count(name)) name += "_" + std::to_string(p.arity);
    while (used.count(name)) name += "x";
    used.insert(name);
    names.emplace(p, name);
    out.prefix.push_back({name, p.arity, p.name});
  }
  out.matrix = replace_privates(matrix, names);
  return out;
}

// ---------------------------------------------------------------------------
// Bounded propositional image

namespace {

PrecomputedTerm fprop_term(const FoTerm& t,
                           const std::map<std::string, PrecomputedTerm>& env,
                           const std::set<std::string>& placeholders) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      if (t.value().is_symbolic() && placeholders.count(t.value().symbol()))
        throw std::invalid_argument("fprop: placeholder " + t.value().symbol() +
                                    " present; apply a valuation first");
      return t.value();
    case FoTerm::Kind::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end())
        throw std::invalid_argument("fprop: free variable " + t.var_name() +
                                    "; not a sentence");
      return it->second;
    }
    case FoTerm::Kind::Abs: {
      PrecomputedTerm v = fprop_term(t.inner(), env, placeholders);
      return PrecomputedTerm::numeral(v.number().abs());
    }
    case FoTerm::Kind::Bin: {
      BigInt l = fprop_term(t.left(), env, placeholders).number();
      BigInt r = fprop_term(t.right(), env, placeholders).number();
      switch (t.op()) {
        case FoTerm::Op::Add: return PrecomputedTerm::numeral(l + r);
        case FoTerm::Op::Sub: return PrecomputedTerm::numeral(l - r);
        case FoTerm::Op::Mul: return PrecomputedTerm::numeral(l * r);
      }
      break;
    }
  }
  throw std::logic_error("fprop_term: unreachable");
}

PropFormula fprop_rec(const FoFormula& f, const Universe& universe,
                      const std::set<std::string>& placeholders,
                      std::map<std::string, PrecomputedTerm>& env) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred: {
      if (f.is_pred_variable())
        throw std::invalid_argument("fprop: predicate variable " + f.pred_name());
      GroundAtom atom;
      atom.predicate = f.pred_name();
      for (const FoTerm& t : f.pred_args())
        atom.args.push_back(fprop_term(t, env, placeholders));
      return PropFormula::atom(std::move(atom));
    }
    case Kind::Cmp: {
      bool truth = holds(f.rel(), fprop_term(f.left(), env, placeholders),
                         fprop_term(f.right(), env, placeholders));
      return truth ? PropFormula::verum() : PropFormula::falsum();
    }
    case Kind::Bot:
      return PropFormula::falsum();
    case Kind::And:
    case Kind::Or: {
      std::vector<PropFormula> out;
      out.reserve(f.members().size());
      for (const FoFormula& m : f.members())
        out.push_back(fprop_rec(m, universe, placeholders, env));
      return f.kind() == Kind::And ? PropFormula::conj(std::move(out))
                                   : PropFormula::disj(std::move(out));
    }
    case Kind::Implies:
      return PropFormula::implies(
          fprop_rec(f.antecedent(), universe, placeholders, env),
          fprop_rec(f.consequent(), universe, placeholders, env));
    case Kind::Forall:
    case Kind::Exists: {
      const auto& domain = f.quant_sort() == Sort::Integer ? universe.numerals()
                                                           : universe.terms();
      std::vector<PropFormula> out;
      out.reserve(domain.size());
      auto saved = env.find(f.quant_var()) != env.end()
                       ? std::optional<PrecomputedTerm>(env.at(f.quant_var()))
                       : std::nullopt;
      for (const PrecomputedTerm& d : domain) {
        env.insert_or_assign(f.quant_var(), d);
        out.push_back(fprop_rec(f.quant_body(), universe, placeholders, env));
      }
      if (saved)
        env.insert_or_assign(f.quant_var(), *saved);
      else
        env.erase(f.quant_var());
      return f.kind() == Kind::Forall ? PropFormula::conj(std::move(out))
                                      : PropFormula::disj(std::move(out));
    }
  }
  throw std::logic_error("fprop: unreachable");
}

}  // namespace

PropFormula fprop(const FoFormula& sentence, const Universe& universe,
                  const std::set<std::string>& placeholders) {
  std::map<std::string, PrecomputedTerm> env;
  return fprop_rec(sentence, universe, placeholders, env);
}

// ---------------------------------------------------------------------------
// Strong equivalence at a finite base

bool ht_equivalent(std::span<const PropFormula> fs, std::span<const PropFormula> gs,
                   const AtomSet& base) {
  std::vector<GroundAtom> atoms(base.begin(), base.end());
  if (atoms.size() > 20)
    throw LimitError("ht_equivalent: base of " + std::to_string(atoms.size()) +
                     " atoms is too large");
  auto set_of = [&atoms](std::uint64_t mask) {
    AtomSet out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1ull << i)) out.insert(atoms[i]);
    return out;
  };
  for (std::uint64_t there = 0; there < (1ull << atoms.size()); ++there) {
    AtomSet t = set_of(there);
    std::uint64_t here = there;
    while (true) {
      HtPair pair(set_of(here), t);
      if (ht_sat_all(pair, fs) != ht_sat_all(pair, gs)) return false;
      if (here == 0) break;
      here = (here - 1) & there;
    }
  }
  return true;
}

bool ht_equivalent(const PropFormula& f, const PropFormula& g, const AtomSet& base) {
  return ht_equivalent(std::span<const PropFormula>(&f, 1),
                       std::span<const PropFormula>(&g, 1), base);
}

}  // namespace mgtc
