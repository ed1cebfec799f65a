#include "mgtc/json_io.hpp"

#include "mgtc/parser.hpp"

namespace mgtc {

using nlohmann::json;

json to_json(const PrecomputedTerm& t) {
  if (t.is_numeral()) return json::array({"int", t.number().to_string()});
  return json::array({"const", t.symbol()});
}

json to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Precomputed:
      return to_json(t.value());
    case Term::Kind::Variable:
      return json::array({"var", t.variable_name()});
    case Term::Kind::Abs:
      return json::array({"abs", to_json(t.inner())});
    case Term::Kind::Bin:
      return json::array(
          {bin_op_symbol(t.op()), to_json(t.left()), to_json(t.right())});
  }
  return nullptr;
}

json to_json(const Atom& a) {
  json args = json::array();
  for (const Term& t : a.args) args.push_back(to_json(t));
  return json::array({"atom", a.predicate, args});
}

json to_json(const GroundAtom& a) {
  json args = json::array();
  for (const PrecomputedTerm& t : a.args) args.push_back(to_json(t));
  return json::array({"atom", a.predicate, args});
}

json to_json(const Rule& r) {
  json out;
  switch (r.head_kind) {
    case Rule::HeadKind::Basic:
      out["head"] = to_json(*r.head);
      out["kind"] = "basic";
      break;
    case Rule::HeadKind::Choice:
      out["head"] = to_json(*r.head);
      out["kind"] = "choice";
      break;
    case Rule::HeadKind::Constraint:
      out["kind"] = "constraint";
      break;
  }
  json body = json::array();
  for (const BodyElement& e : r.body) {
    if (const Literal* lit = std::get_if<Literal>(&e)) {
      body.push_back(
          json::array({"literal", lit->negations, to_json(lit->atom)}));
    } else {
      const Comparison& c = std::get<Comparison>(e);
      body.push_back(json::array(
          {"compare", rel_symbol(c.rel), to_json(c.left), to_json(c.right)}));
    }
  }
  out["body"] = std::move(body);
  out["text"] = r.to_string();
  return out;
}

json to_json(const Program& p) {
  json rules = json::array();
  for (const Rule& r : p.rules) rules.push_back(to_json(r));
  return json{{"rules", std::move(rules)}};
}

json to_json(const ValueSet& values) {
  json out = json::array();
  for (const PrecomputedTerm& v : values) out.push_back(v.to_string());
  return out;
}

json to_json(const Universe& u) {
  json consts = json::array();
  for (const std::string& s : u.symbolics()) consts.push_back(s);
  return json{{"int_min", u.int_min().to_string()},
              {"int_max", u.int_max().to_string()},
              {"consts", std::move(consts)}};
}

json to_json(const PropFormula& f) {
  using Kind = PropFormula::Kind;
  switch (f.kind()) {
    case Kind::Atom:
      return to_json(f.atom_value());
    case Kind::True:
      return json::array({"true"});
    case Kind::False:
      return json::array({"false"});
    case Kind::And:
    case Kind::Or: {
      json out = json::array({f.kind() == Kind::And ? "and" : "or"});
      for (const PropFormula& m : f.members()) out.push_back(to_json(m));
      return out;
    }
    case Kind::Implies:
      return json::array(
          {"implies", to_json(f.antecedent()), to_json(f.consequent())});
  }
  return nullptr;
}

json to_json(const FoTerm& t) {
  switch (t.kind()) {
    case FoTerm::Kind::Const:
      return to_json(t.value());
    case FoTerm::Kind::Var:
      return json::array(
          {"var", t.var_name(), t.sort() == Sort::Integer ? "int" : "general"});
    case FoTerm::Kind::Abs:
      return json::array({"abs", to_json(t.inner())});
    case FoTerm::Kind::Bin: {
      const char* op = t.op() == FoTerm::Op::Add   ? "+"
                       : t.op() == FoTerm::Op::Sub ? "-"
                                                   : "*";
      return json::array({op, to_json(t.left()), to_json(t.right())});
    }
  }
  return nullptr;
}

json to_json(const FoFormula& f) {
  using Kind = FoFormula::Kind;
  switch (f.kind()) {
    case Kind::Pred: {
      json args = json::array();
      for (const FoTerm& t : f.pred_args()) args.push_back(to_json(t));
      return json::array({f.is_pred_variable() ? "predvar" : "pred", f.pred_name(),
                          std::move(args)});
    }
    case Kind::Cmp:
      return json::array(
          {"compare", rel_symbol(f.rel()), to_json(f.left()), to_json(f.right())});
    case Kind::Bot:
      return json::array({"bot"});
    case Kind::And:
    case Kind::Or: {
      json out = json::array({f.kind() == Kind::And ? "and" : "or"});
      for (const FoFormula& m : f.members()) out.push_back(to_json(m));
      return out;
    }
    case Kind::Implies:
      return json::array(
          {"implies", to_json(f.antecedent()), to_json(f.consequent())});
    case Kind::Forall:
    case Kind::Exists:
      return json::array({f.kind() == Kind::Forall ? "forall" : "exists",
                          f.quant_var(),
                          f.quant_sort() == Sort::Integer ? "int" : "general",
                          to_json(f.quant_body())});
  }
  return nullptr;
}

json to_json(const SoSentence& s) {
  json prefix = json::array();
  for (const SoSentence::PredVar& p : s.prefix)
    prefix.push_back(json{{"name", p.name},
                          {"arity", p.arity},
                          {"replaces", p.original}});
  return json{{"prefix", std::move(prefix)}, {"matrix", to_json(s.matrix)}};
}

json to_json(const AtomSet& atoms) {
  json out = json::array();
  for (const GroundAtom& a : atoms) out.push_back(a.to_string());
  return out;
}

json to_json(const Valuation& v) {
  json out = json::object();
  for (const auto& [name, value] : v) out[name] = value.to_string();
  return out;
}

json to_json(const PredVarAssignment& assignment) {
  json out = json::object();
  for (const auto& [name, tuples] : assignment) {
    json list = json::array();
    for (const auto& tuple : tuples) {
      json t = json::array();
      for (const PrecomputedTerm& v : tuple) t.push_back(v.to_string());
      list.push_back(std::move(t));
    }
    out[name] = std::move(list);
  }
  return out;
}

json to_json(const LocalTightness& verdict) {
  json out;
  switch (verdict.kind) {
    case LocalTightness::Kind::TightShortcut:
      out["verdict"] = "locally_tight";
      out["via"] = "tight";
      break;
    case LocalTightness::Kind::LocallyTight:
      out["verdict"] = "locally_tight";
      out["via"] = "atom_graph";
      break;
    case LocalTightness::Kind::CycleFound: {
      out["verdict"] = "not_locally_tight";
      json cycle = json::array();
      for (const GroundAtom& a : verdict.cycle) cycle.push_back(a.to_string());
      out["cycle"] = std::move(cycle);
      json rules = json::array();
      for (const Rule& r : verdict.cycle_provenance) rules.push_back(r.to_string());
      out["witnesses"] = std::move(rules);
      break;
    }
  }
  return out;
}

json to_json(const Theorem1Report& report) {
  json via_tau = json::array();
  for (const AtomSet& m : report.via_tau) via_tau.push_back(to_json(m));
  json via_star = json::array();
  for (const AtomSet& m : report.via_tau_star) via_star.push_back(to_json(m));
  return json{{"verdict", report.matches ? "match" : "mismatch"},
              {"stable_models_via_tau", std::move(via_tau)},
              {"stable_models_via_tau_star", std::move(via_star)}};
}

json to_json(const Theorem2Report& report) {
  json conditions{{"a_io_model", report.cond_a},
                  {"b_plain_interpretation_satisfies_substituted_completion",
                   report.cond_b},
                  {"c_placeholder_interpretation_satisfies_completion",
                   report.cond_c},
                  {"input_projection_matches", report.input_projection_matches}};
  json out{{"applicable", report.applicable},
           {"tightness", to_json(report.tightness)},
           {"conditions", std::move(conditions)},
           {"equivalent", report.equivalent}};
  if (report.witness_b) out["witness_b"] = to_json(*report.witness_b);
  if (report.witness_c) out["witness_c"] = to_json(*report.witness_c);
  out["verdict"] = !report.applicable ? "inapplicable"
                   : report.equivalent ? "conditions_equivalent"
                                       : "conditions_differ";
  return out;
}

json to_json(const MainLemmaReport& report) {
  json out{{"hypothesis_acyclic", report.hypothesis_holds},
           {"stable", report.stable},
           {"satisfies_completion", report.satisfies_completion}};
  if (!report.cycle.empty()) {
    json cycle = json::array();
    for (const GroundAtom& a : report.cycle) cycle.push_back(a.to_string());
    out["cycle"] = std::move(cycle);
  }
  if (report.equivalence_holds) {
    out["equivalence_holds"] = *report.equivalence_holds;
    out["verdict"] = *report.equivalence_holds ? "confirmed" : "refuted";
  } else {
    out["verdict"] = "hypothesis_violated";
  }
  return out;
}

json to_json(const EquivalenceReport& report) {
  json out{{"verdict", report.equivalent ? "equivalent_on_domain" : "counterexample"},
           {"inputs_checked", report.inputs_checked},
           {"inputs_filtered_by_assumption", report.inputs_filtered}};
  if (!report.inapplicable.empty()) {
    json list = json::array();
    for (const auto& skipped : report.inapplicable)
      list.push_back(json{{"valuation", to_json(skipped.valuation)},
                          {"atoms", to_json(skipped.input_atoms)},
                          {"reason", skipped.reason}});
    out["inapplicable_inputs"] = std::move(list);
    if (report.equivalent) out["verdict"] = "equivalent_on_applicable_domain";
  }
  if (report.counterexample) {
    const auto& cx = *report.counterexample;
    json left = json::array();
    for (const AtomSet& m : cx.models_left) left.push_back(to_json(m));
    json right = json::array();
    for (const AtomSet& m : cx.models_right) right.push_back(to_json(m));
    out["counterexample"] = json{{"valuation", to_json(cx.valuation)},
                                 {"atoms", to_json(cx.input_atoms)},
                                 {"io_models_left", std::move(left)},
                                 {"io_models_right", std::move(right)}};
  }
  return out;
}

InputDomain domain_from_json(const json& j) {
  InputDomain out;
  if (j.contains("valuations")) {
    for (const json& item : j.at("valuations")) {
      Valuation v;
      for (auto it = item.begin(); it != item.end(); ++it)
        v.emplace(it.key(), parse_precomputed(it.value().get<std::string>()));
      out.valuations.push_back(std::move(v));
    }
  }
  if (out.valuations.empty()) out.valuations.push_back({});
  if (j.contains("atom_base")) {
    for (const json& item : j.at("atom_base")) {
      AtomSet atoms = parse_atoms(item.get<std::string>() + ".");
      out.atom_base.insert(out.atom_base.end(), atoms.begin(), atoms.end());
    }
  }
  return out;
}

}  // namespace mgtc
