#include "mgtc/interp.hpp"

#include <algorithm>
#include <stdexcept>

#include "mgtc/errors.hpp"
#include "mgtc/values.hpp"

namespace mgtc {

namespace {

using Env = std::map<std::string, PrecomputedTerm>;

PrecomputedTerm eval_fo_term(const FoTerm& t, const StandardInterp& interp,
                             const Env& env) {
  switch (t.kind()) {
    case FoTerm::Kind::Const: {
      if (t.value().is_symbolic()) {
        auto it = interp.valuation.find(t.value().symbol());
        if (it != interp.valuation.end()) return it->second;
      }
      return t.value();
    }
    case FoTerm::Kind::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end())
        throw std::invalid_argument("fo_sat: free variable " + t.var_name() +
                                    "; not a sentence");
      return it->second;
    }
    case FoTerm::Kind::Abs: {
      PrecomputedTerm v = eval_fo_term(t.inner(), interp, env);
      if (!v.is_numeral())
        throw std::logic_error("fo_sat: |...| applied to a symbolic value");
      return PrecomputedTerm::numeral(v.number().abs());
    }
    case FoTerm::Kind::Bin: {
      PrecomputedTerm l = eval_fo_term(t.left(), interp, env);
      PrecomputedTerm r = eval_fo_term(t.right(), interp, env);
      if (!l.is_numeral() || !r.is_numeral())
        throw std::logic_error("fo_sat: arithmetic on a symbolic value");
      switch (t.op()) {
        case FoTerm::Op::Add: return PrecomputedTerm::numeral(l.number() + r.number());
        case FoTerm::Op::Sub: return PrecomputedTerm::numeral(l.number() - r.number());
        case FoTerm::Op::Mul: return PrecomputedTerm::numeral(l.number() * r.number());
      }
      break;
    }
  }
  throw std::logic_error("eval_fo_term: unreachable");
}

bool eval_fo(const FoFormula& f, const StandardInterp& interp,
             const Universe& universe, const PredVarAssignment* pred_env, Env& env) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred: {
      std::vector<PrecomputedTerm> args;
      args.reserve(f.pred_args().size());
      for (const FoTerm& t : f.pred_args())
        args.push_back(eval_fo_term(t, interp, env));
      if (f.is_pred_variable()) {
        if (!pred_env)
          throw std::invalid_argument("fo_sat: unbound predicate variable " +
                                      f.pred_name());
        auto it = pred_env->find(f.pred_name());
        if (it == pred_env->end())
          throw std::invalid_argument("fo_sat: unbound predicate variable " +
                                      f.pred_name());
        return it->second.count(args) != 0;
      }
      return interp.atoms.count(GroundAtom{f.pred_name(), std::move(args)}) != 0;
    }
    case Kind::Cmp:
      return holds(f.rel(), eval_fo_term(f.left(), interp, env),
                   eval_fo_term(f.right(), interp, env));
    case Kind::Bot:
      return false;
    case Kind::And:
      for (const FoFormula& m : f.members())
        if (!eval_fo(m, interp, universe, pred_env, env)) return false;
      return true;
    case Kind::Or:
      for (const FoFormula& m : f.members())
        if (eval_fo(m, interp, universe, pred_env, env)) return true;
      return false;
    case Kind::Implies:
      return !eval_fo(f.antecedent(), interp, universe, pred_env, env) ||
             eval_fo(f.consequent(), interp, universe, pred_env, env);
    case Kind::Forall:
    case Kind::Exists: {
      const auto& domain = f.quant_sort() == Sort::Integer ? universe.numerals()
                                                           : universe.terms();
      bool is_forall = f.kind() == Kind::Forall;
      auto it = env.find(f.quant_var());
      std::optional<PrecomputedTerm> saved =
          it != env.end() ? std::optional<PrecomputedTerm>(it->second) : std::nullopt;
      bool result = is_forall;
      for (const PrecomputedTerm& d : domain) {
        env.insert_or_assign(f.quant_var(), d);
        bool v = eval_fo(f.quant_body(), interp, universe, pred_env, env);
        if (v != is_forall) {
          result = v;
          break;
        }
      }
      if (saved)
        env.insert_or_assign(f.quant_var(), *saved);
      else
        env.erase(f.quant_var());
      return result;
    }
  }
  throw std::logic_error("eval_fo: unreachable");
}

void collect_pred_vars(const FoFormula& f, std::set<std::string>& out) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred:
      if (f.is_pred_variable()) out.insert(f.pred_name());
      return;
    case Kind::Cmp:
    case Kind::Bot:
      return;
    case Kind::Forall:
    case Kind::Exists:
      collect_pred_vars(f.quant_body(), out);
      return;
    default:
      // And/Or members and Implies children share the same storage.
      for (const FoFormula& m : f.members()) collect_pred_vars(m, out);
      return;
  }
}

struct PredVarDefinition {
  std::vector<std::string> tuple_vars;
  FoFormula body;
  std::set<std::string> depends_on;  // other predicate variables in the body
};

// Recognizes a completed definition of a predicate variable:
// forall V1..Vn (P(V1,..,Vn) <-> D).
std::optional<std::pair<std::string, PredVarDefinition>> as_pred_var_definition(
    const FoFormula& conjunct) {
  const FoFormula* cur = &conjunct;
  std::vector<std::string> prefix;
  while (cur->kind() == FoFormula::Kind::Forall) {
    prefix.push_back(cur->quant_var());
    cur = &cur->quant_body();
  }
  auto both = cur->as_iff();
  if (!both) return std::nullopt;
  const FoFormula& head = both->first;
  if (head.kind() != FoFormula::Kind::Pred || !head.is_pred_variable())
    return std::nullopt;
  std::vector<std::string> tuple;
  for (const FoTerm& arg : head.pred_args()) {
    if (arg.kind() != FoTerm::Kind::Var) return std::nullopt;
    tuple.push_back(arg.var_name());
  }
  if (tuple != prefix) return std::nullopt;
  PredVarDefinition def{std::move(tuple), both->second, {}};
  collect_pred_vars(def.body, def.depends_on);
  return std::make_pair(head.pred_name(), std::move(def));
}

}  // namespace

bool fo_sat(const StandardInterp& interp, const FoFormula& sentence,
            const Universe& universe) {
  Env env;
  return eval_fo(sentence, interp, universe, nullptr, env);
}

PrecomputedTerm eval_ground_term(const FoTerm& term, const StandardInterp& interp) {
  Env env;
  return eval_fo_term(term, interp, env);
}

SoSatResult so_sat_with_witness(const StandardInterp& interp,
                                const SoSentence& sentence, const Universe& universe,
                                const PredVarAssignment& witness) {
  Env env;
  SoSatResult out;
  out.method = SoSatResult::Method::Given;
  out.satisfied = eval_fo(sentence.matrix, interp, universe, &witness, env);
  if (out.satisfied) out.witness = witness;
  return out;
}

namespace {

std::optional<SoSatResult> so_sat_derived(const StandardInterp& interp,
                                          const SoSentence& sentence,
                                          const Universe& universe) {
  // One definition per predicate variable, acyclic among themselves.
  std::map<std::string, PredVarDefinition> defs;
  std::vector<FoFormula> conjuncts;
  if (sentence.matrix.kind() == FoFormula::Kind::And) {
    conjuncts.assign(sentence.matrix.members().begin(),
                     sentence.matrix.members().end());
  } else {
    conjuncts.push_back(sentence.matrix);
  }
  for (const FoFormula& c : conjuncts) {
    if (auto def = as_pred_var_definition(c)) defs.insert(std::move(*def));
  }
  std::vector<std::string> order;
  std::set<std::string> placed;
  for (const SoSentence::PredVar& p : sentence.prefix)
    if (!defs.count(p.name)) return std::nullopt;
  bool progress = true;
  while (progress && order.size() < sentence.prefix.size()) {
    progress = false;
    for (const SoSentence::PredVar& p : sentence.prefix) {
      if (placed.count(p.name)) continue;
      const PredVarDefinition& def = defs.at(p.name);
      bool ready = true;
      for (const std::string& q : def.depends_on)
        if (q != p.name && !placed.count(q)) ready = false;
      if (def.depends_on.count(p.name)) ready = false;  // self-recursive
      if (ready) {
        order.push_back(p.name);
        placed.insert(p.name);
        progress = true;
      }
    }
  }
  if (order.size() < sentence.prefix.size()) return std::nullopt;  // cyclic

  PredVarAssignment assignment;
  for (const std::string& name : order) {
    const PredVarDefinition& def = defs.at(name);
    std::set<std::vector<PrecomputedTerm>> extension;
    std::vector<std::size_t> odo(def.tuple_vars.size(), 0);
    const auto& domain = universe.terms();
    bool done = domain.empty() && !def.tuple_vars.empty();
    while (!done) {
      Env env;
      std::vector<PrecomputedTerm> tuple;
      for (std::size_t i = 0; i < def.tuple_vars.size(); ++i) {
        env.emplace(def.tuple_vars[i], domain[odo[i]]);
        tuple.push_back(domain[odo[i]]);
      }
      if (eval_fo(def.body, interp, universe, &assignment, env))
        extension.insert(std::move(tuple));
      if (def.tuple_vars.empty()) break;
      std::size_t pos = def.tuple_vars.size();
      while (pos > 0) {
        --pos;
        if (++odo[pos] < domain.size()) break;
        odo[pos] = 0;
        if (pos == 0) done = true;
      }
    }
    assignment.emplace(name, std::move(extension));
  }
  Env env;
  SoSatResult out;
  out.method = SoSatResult::Method::Derived;
  out.satisfied = eval_fo(sentence.matrix, interp, universe, &assignment, env);
  if (out.satisfied) out.witness = std::move(assignment);
  return out;
}

}  // namespace

SoSatResult so_sat(const StandardInterp& interp, const SoSentence& sentence,
                   const Universe& universe, SoLimits limits) {
  if (sentence.prefix.empty()) {
    SoSatResult out;
    out.method = SoSatResult::Method::Direct;
    out.satisfied = fo_sat(interp, sentence.matrix, universe);
    return out;
  }
  if (auto derived = so_sat_derived(interp, sentence, universe)) return *derived;

  // Exhaustive assignment search.
  std::vector<std::pair<std::string, std::vector<std::vector<PrecomputedTerm>>>> slots;
  std::size_t total_bits = 0;
  for (const SoSentence::PredVar& p : sentence.prefix) {
    std::vector<std::vector<PrecomputedTerm>> tuples = {{}};
    for (std::size_t i = 0; i < p.arity; ++i) {
      std::vector<std::vector<PrecomputedTerm>> next;
      for (const auto& prefix_tuple : tuples)
        for (const PrecomputedTerm& t : universe.terms()) {
          auto extended = prefix_tuple;
          extended.push_back(t);
          next.push_back(std::move(extended));
        }
      tuples = std::move(next);
    }
    total_bits += tuples.size();
    slots.emplace_back(p.name, std::move(tuples));
  }
  if (total_bits > limits.enumeration_bits)
    throw LimitError("so_sat: " + std::to_string(total_bits) +
                     " candidate private atoms exceed the enumeration limit of " +
                     std::to_string(limits.enumeration_bits) +
                     "; supply a witness instead");
  for (std::uint64_t mask = 0; mask < (1ull << total_bits); ++mask) {
    PredVarAssignment assignment;
    std::size_t bit = 0;
    for (const auto& [name, tuples] : slots) {
      std::set<std::vector<PrecomputedTerm>> ext;
      for (const auto& tuple : tuples) {
        if (mask & (1ull << bit)) ext.insert(tuple);
        ++bit;
      }
      assignment.emplace(name, std::move(ext));
    }
    Env env;
    if (eval_fo(sentence.matrix, interp, universe, &assignment, env)) {
      SoSatResult out;
      out.method = SoSatResult::Method::Enumerated;
      out.satisfied = true;
      out.witness = std::move(assignment);
      return out;
    }
  }
  SoSatResult out;
  out.method = SoSatResult::Method::Enumerated;
  out.satisfied = false;
  return out;
}

}  // namespace mgtc
