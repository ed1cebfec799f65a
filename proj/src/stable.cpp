#include "mgtc/stable.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "mgtc/errors.hpp"

namespace mgtc {

HtPair::HtPair(AtomSet h, AtomSet t) : here(std::move(h)), there(std::move(t)) {
  if (!std::includes(there.begin(), there.end(), here.begin(), here.end()))
    throw std::invalid_argument("HtPair: here is not a subset of there");
}

bool sat(const AtomSet& model, const PropFormula& f) {
  using Kind = PropFormula::Kind;
  switch (f.kind()) {
    case Kind::Atom:
      return model.count(f.atom_value()) != 0;
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::And:
      for (const PropFormula& m : f.members())
        if (!sat(model, m)) return false;
      return true;
    case Kind::Or:
      for (const PropFormula& m : f.members())
        if (sat(model, m)) return true;
      return false;
    case Kind::Implies:
      return !sat(model, f.antecedent()) || sat(model, f.consequent());
  }
  return false;
}

bool sat_all(const AtomSet& model, std::span<const PropFormula> fs) {
  for (const PropFormula& f : fs)
    if (!sat(model, f)) return false;
  return true;
}

bool ht_sat(const HtPair& pair, const PropFormula& f) {
  using Kind = PropFormula::Kind;
  switch (f.kind()) {
    case Kind::Atom:
      return pair.here.count(f.atom_value()) != 0;
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::And:
      for (const PropFormula& m : f.members())
        if (!ht_sat(pair, m)) return false;
      return true;
    case Kind::Or:
      for (const PropFormula& m : f.members())
        if (ht_sat(pair, m)) return true;
      return false;
    case Kind::Implies:
      return (!ht_sat(pair, f.antecedent()) || ht_sat(pair, f.consequent())) &&
             (!sat(pair.there, f.antecedent()) || sat(pair.there, f.consequent()));
  }
  return false;
}

bool ht_sat_all(const HtPair& pair, std::span<const PropFormula> fs) {
  for (const PropFormula& f : fs)
    if (!ht_sat(pair, f)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Simplification

PropFormula simplify(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::And: {
      std::vector<PropFormula> members;
      for (const PropFormula& m : f.members()) members.push_back(simplify(m));
      return PropFormula::conj(std::move(members));
    }
    case Kind::Or: {
      std::vector<PropFormula> members;
      for (const PropFormula& m : f.members()) members.push_back(simplify(m));
      return PropFormula::disj(std::move(members));
    }
    case Kind::Implies: {
      PropFormula a = simplify(f.antecedent());
      PropFormula c = simplify(f.consequent());
      if (a.kind() == Kind::False) return PropFormula::verum();
      if (c.kind() == Kind::True) return PropFormula::verum();
      return PropFormula::implies(std::move(a), std::move(c));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rule-shaped theories

namespace {

// A body literal with its negation depth: atom, not atom, or not not atom.
struct BodyLit {
  GroundAtom atom;
  int negations;
};

std::optional<BodyLit> as_body_literal(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  if (f.kind() == Kind::Atom) return BodyLit{f.atom_value(), 0};
  if (f.is_negation()) {
    const PropFormula& inner = f.antecedent();
    if (inner.kind() == Kind::Atom) return BodyLit{inner.atom_value(), 1};
    if (inner.is_negation() && inner.antecedent().kind() == Kind::Atom)
      return BodyLit{inner.antecedent().atom_value(), 2};
  }
  return std::nullopt;
}

// Bodies may combine literals, verum and falsum with arbitrary nesting of
// conjunction and disjunction; negation only directly on atoms.
bool body_shape_ok(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  if (f.kind() == Kind::True || f.kind() == Kind::False) return true;
  if (as_body_literal(f)) return true;
  if (f.kind() == Kind::And || f.kind() == Kind::Or) {
    for (const PropFormula& m : f.members())
      if (!body_shape_ok(m)) return false;
    return true;
  }
  return false;
}

struct RuleView {
  enum class Head { Atoms, Choice, Constraint };
  PropFormula body;
  Head head_kind;
  std::vector<GroundAtom> head_atoms;
};

// Recognizes a choice disjunct: atom v not atom (same atom either order).
std::optional<GroundAtom> as_choice_pair(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  if (f.kind() != Kind::Or || f.members().size() != 2) return std::nullopt;
  const PropFormula& a = f.members()[0];
  const PropFormula& b = f.members()[1];
  auto match = [](const PropFormula& pos, const PropFormula& neg)
      -> std::optional<GroundAtom> {
    if (pos.kind() == Kind::Atom && neg.is_negation() &&
        neg.antecedent() == pos)
      return pos.atom_value();
    return std::nullopt;
  };
  if (auto m = match(a, b)) return m;
  if (auto m = match(b, a)) return m;
  return std::nullopt;
}

std::optional<RuleView> as_rule_view(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  // Bare atoms and conjunctions of atoms are facts.
  auto atoms_of = [](const PropFormula& g) -> std::optional<std::vector<GroundAtom>> {
    std::vector<GroundAtom> out;
    if (g.kind() == Kind::Atom) {
      out.push_back(g.atom_value());
      return out;
    }
    if (g.kind() == Kind::And) {
      for (const PropFormula& m : g.members()) {
        if (m.kind() != Kind::Atom) return std::nullopt;
        out.push_back(m.atom_value());
      }
      return out;
    }
    return std::nullopt;
  };
  if (auto facts = atoms_of(f))
    return RuleView{PropFormula::verum(), RuleView::Head::Atoms, std::move(*facts)};
  if (f.kind() != Kind::Implies) return std::nullopt;
  if (!body_shape_ok(f.antecedent())) return std::nullopt;
  const PropFormula& head = f.consequent();
  if (head.kind() == Kind::False)
    return RuleView{f.antecedent(), RuleView::Head::Constraint, {}};
  if (auto atoms = atoms_of(head))
    return RuleView{f.antecedent(), RuleView::Head::Atoms, std::move(*atoms)};
  if (auto choice = as_choice_pair(head))
    return RuleView{f.antecedent(), RuleView::Head::Choice, {*choice}};
  if (head.kind() == Kind::And) {
    std::vector<GroundAtom> atoms;
    for (const PropFormula& m : head.members()) {
      auto choice = as_choice_pair(m);
      if (!choice) return std::nullopt;
      atoms.push_back(*choice);
    }
    return RuleView{f.antecedent(), RuleView::Head::Choice, std::move(atoms)};
  }
  return std::nullopt;
}

// Three-valued upper-bound evaluation: negated literals count as true.
bool eval_possible(const PropFormula& f, const AtomSet& possible) {
  using Kind = PropFormula::Kind;
  if (auto lit = as_body_literal(f))
    return lit->negations > 0 || possible.count(lit->atom) != 0;
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::And:
      for (const PropFormula& m : f.members())
        if (!eval_possible(m, possible)) return false;
      return true;
    case Kind::Or:
      for (const PropFormula& m : f.members())
        if (eval_possible(m, possible)) return true;
      return false;
    default:
      throw std::logic_error("eval_possible: unexpected shape");
  }
}

// Lower-bound evaluation: negated literals count as false (unknown).
bool eval_forced(const PropFormula& f, const AtomSet& forced) {
  using Kind = PropFormula::Kind;
  if (auto lit = as_body_literal(f))
    return lit->negations == 0 && forced.count(lit->atom) != 0;
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::And:
      for (const PropFormula& m : f.members())
        if (!eval_forced(m, forced)) return false;
      return true;
    case Kind::Or:
      for (const PropFormula& m : f.members())
        if (eval_forced(m, forced)) return true;
      return false;
    default:
      throw std::logic_error("eval_forced: unexpected shape");
  }
}

// Truth of a reduct body under the set derived so far, with negated
// literals fixed by the candidate model.
bool eval_reduct(const PropFormula& f, const AtomSet& derived, const AtomSet& m) {
  using Kind = PropFormula::Kind;
  if (auto lit = as_body_literal(f)) {
    switch (lit->negations) {
      case 0: return m.count(lit->atom) != 0 && derived.count(lit->atom) != 0;
      case 1: return m.count(lit->atom) == 0;
      default: return m.count(lit->atom) != 0;
    }
  }
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::And:
      for (const PropFormula& member : f.members())
        if (!eval_reduct(member, derived, m)) return false;
      return true;
    case Kind::Or:
      for (const PropFormula& member : f.members())
        if (eval_reduct(member, derived, m)) return true;
      return false;
    default:
      throw std::logic_error("eval_reduct: unexpected shape");
  }
}

// Least model of the reduct of a rule-shaped theory relative to m.
AtomSet reduct_least_model(const std::vector<RuleView>& views, const AtomSet& m) {
  AtomSet derived;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const RuleView& view : views) {
      if (view.head_kind == RuleView::Head::Constraint) continue;
      if (!eval_reduct(view.body, derived, m)) continue;
      for (const GroundAtom& a : view.head_atoms) {
        if (view.head_kind == RuleView::Head::Choice && m.count(a) == 0) continue;
        if (derived.insert(a).second) changed = true;
      }
    }
  }
  return derived;
}

AtomSet possible_closure(const std::vector<RuleView>& views) {
  AtomSet possible;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const RuleView& view : views) {
      if (view.head_kind == RuleView::Head::Constraint) continue;
      if (!eval_possible(view.body, possible)) continue;
      for (const GroundAtom& a : view.head_atoms)
        if (possible.insert(a).second) changed = true;
    }
  }
  return possible;
}

AtomSet forced_closure(const std::vector<RuleView>& views) {
  AtomSet forced;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const RuleView& view : views) {
      if (view.head_kind != RuleView::Head::Atoms) continue;
      if (!eval_forced(view.body, forced)) continue;
      for (const GroundAtom& a : view.head_atoms)
        if (forced.insert(a).second) changed = true;
    }
  }
  return forced;
}

std::vector<AtomSet> stable_models_rule_shaped(const std::vector<RuleView>& views,
                                               std::span<const PropFormula> fs,
                                               const StableLimits& limits) {
  AtomSet possible = possible_closure(views);
  AtomSet forced = forced_closure(views);
  if (!std::includes(possible.begin(), possible.end(), forced.begin(), forced.end()))
    return {};  // some atom is classically forced but underivable
  std::vector<GroundAtom> free;
  for (const GroundAtom& a : possible)
    if (!forced.count(a)) free.push_back(a);
  if (free.size() > limits.enumeration_atoms)
    throw LimitError("stable_models: " + std::to_string(free.size()) +
                     " free atoms exceed the enumeration limit of " +
                     std::to_string(limits.enumeration_atoms));
  std::vector<AtomSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << free.size()); ++mask) {
    AtomSet m = forced;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask & (1ull << i)) m.insert(free[i]);
    if (!sat_all(m, fs)) continue;
    if (reduct_least_model(views, m) == m) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AtomSet> stable_models_generic(std::span<const PropFormula> fs,
                                           const AtomSet& base,
                                           const StableLimits& limits) {
  // Only atoms occurring in the theory can be in a stable model.
  AtomSet occurring;
  for (const PropFormula& f : fs) f.collect_atoms(occurring);
  std::vector<GroundAtom> atoms;
  for (const GroundAtom& a : base)
    if (occurring.count(a)) atoms.push_back(a);
  if (atoms.size() > limits.enumeration_atoms)
    throw LimitError("stable_models: base of " + std::to_string(atoms.size()) +
                     " atoms exceeds the enumeration limit of " +
                     std::to_string(limits.enumeration_atoms));
  std::vector<AtomSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << atoms.size()); ++mask) {
    AtomSet m;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1ull << i)) m.insert(atoms[i]);
    if (!sat_all(m, fs)) continue;
    if (is_stable_model(m, fs)) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<AtomSet> stable_models(std::span<const PropFormula> fs,
                                   const AtomSet& base, StableLimits limits) {
  std::vector<PropFormula> simplified;
  simplified.reserve(fs.size());
  for (const PropFormula& f : fs) {
    PropFormula s = simplify(f);
    if (s.kind() != PropFormula::Kind::True) simplified.push_back(std::move(s));
  }
  std::vector<RuleView> views;
  bool rule_shaped = true;
  for (const PropFormula& f : simplified) {
    if (auto view = as_rule_view(f)) {
      views.push_back(std::move(*view));
    } else {
      rule_shaped = false;
      break;
    }
  }
  if (rule_shaped) return stable_models_rule_shaped(views, simplified, limits);
  return stable_models_generic(simplified, base, limits);
}

bool is_stable_model(const AtomSet& m, std::span<const PropFormula> fs) {
  if (!sat_all(m, fs)) return false;
  std::vector<GroundAtom> atoms(m.begin(), m.end());
  if (atoms.size() >= 63)
    throw LimitError("is_stable_model: model too large for subset enumeration");
  // Every proper subset of m must fail the here-and-there check.
  for (std::uint64_t mask = 0; mask + 1 < (1ull << atoms.size()); ++mask) {
    AtomSet h;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1ull << i)) h.insert(atoms[i]);
    if (ht_sat_all(HtPair(h, m), fs)) return false;
  }
  return true;
}

PropFormula ferraris_reduct(const PropFormula& f, const AtomSet& m) {
  using Kind = PropFormula::Kind;
  if (!sat(m, f)) return PropFormula::falsum();
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::And: {
      std::vector<PropFormula> members;
      for (const PropFormula& member : f.members())
        members.push_back(ferraris_reduct(member, m));
      return PropFormula::conj(std::move(members));
    }
    case Kind::Or: {
      std::vector<PropFormula> members;
      for (const PropFormula& member : f.members())
        members.push_back(ferraris_reduct(member, m));
      return PropFormula::disj(std::move(members));
    }
    case Kind::Implies:
      return PropFormula::implies(ferraris_reduct(f.antecedent(), m),
                                  ferraris_reduct(f.consequent(), m));
  }
  return f;
}

std::vector<AtomSet> stable_models_reduct_oracle(std::span<const PropFormula> fs,
                                                 const AtomSet& base,
                                                 StableLimits limits) {
  std::vector<GroundAtom> atoms(base.begin(), base.end());
  if (atoms.size() > limits.enumeration_atoms)
    throw LimitError("stable_models_reduct_oracle: base exceeds the limit");
  std::vector<AtomSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << atoms.size()); ++mask) {
    AtomSet m;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1ull << i)) m.insert(atoms[i]);
    if (!sat_all(m, fs)) continue;
    std::vector<PropFormula> reducts;
    reducts.reserve(fs.size());
    for (const PropFormula& f : fs) reducts.push_back(ferraris_reduct(f, m));
    // m is stable iff it is a minimal model of the reduct.
    bool minimal = true;
    for (std::uint64_t sub = 0; minimal && sub + 1 < (1ull << atoms.size()); ++sub) {
      if ((sub & mask) != sub || sub == mask) continue;
      AtomSet h;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (sub & (1ull << i)) h.insert(atoms[i]);
      if (sat_all(h, reducts)) minimal = false;
    }
    if (minimal) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_pointwise_stable(const AtomSet& m, std::span<const PropFormula> fs) {
  for (const GroundAtom& a : m) {
    AtomSet h = m;
    h.erase(a);
    if (ht_sat_all(HtPair(std::move(h), m), fs)) return false;
  }
  return true;
}

bool is_supported(const AtomSet& m, std::span<const PropFormula> fs) {
  using Kind = PropFormula::Kind;
  struct Support {
    PropFormula body;
    GroundAtom head;
  };
  std::vector<Support> supports;
  for (const PropFormula& f : fs) {
    if (f.kind() == Kind::Atom) {
      supports.push_back({PropFormula::verum(), f.atom_value()});
      continue;
    }
    if (f.kind() == Kind::Implies) {
      const PropFormula& head = f.consequent();
      if (head.kind() == Kind::Atom) {
        supports.push_back({f.antecedent(), head.atom_value()});
        continue;
      }
      if (head.atoms().empty()) continue;  // constraint-like, provides no support
    }
    throw std::invalid_argument(
        "is_supported: theory is not in implication-per-atom shape: " +
        f.to_string());
  }
  for (const GroundAtom& a : m) {
    bool supported = false;
    for (const Support& s : supports) {
      if (s.head == a && sat(m, s.body)) {
        supported = true;
        break;
      }
    }
    if (!supported) return false;
  }
  return true;
}

}  // namespace mgtc
