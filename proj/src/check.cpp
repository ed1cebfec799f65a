#include "mgtc/check.hpp"

#include <algorithm>
#include <stdexcept>

#include "mgtc/errors.hpp"

namespace mgtc {

namespace {

// Theories built from first-order images arrive as conjunctions of
// implications; split them so the rule-shaped solver applies.
std::vector<PropFormula> flatten_conjunctions(std::vector<PropFormula> fs) {
  std::vector<PropFormula> out;
  while (!fs.empty()) {
    PropFormula f = std::move(fs.back());
    fs.pop_back();
    if (f.kind() == PropFormula::Kind::And) {
      for (const PropFormula& m : f.members()) fs.push_back(m);
    } else {
      out.push_back(std::move(f));
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

AtomSet occurring_atoms(std::span<const PropFormula> fs) {
  AtomSet out;
  for (const PropFormula& f : fs) f.collect_atoms(out);
  return out;
}

std::vector<AtomSet> solve(std::vector<PropFormula> fs, StableLimits limits) {
  fs = flatten_conjunctions(std::move(fs));
  AtomSet base = occurring_atoms(fs);
  return stable_models(fs, base, limits);
}

}  // namespace

std::vector<AtomSet> io_models(const IoProgram& io, const Input& input,
                               const Universe& universe, StableLimits limits) {
  Program grounded = apply_valuation(io.program(), input.valuation());
  std::vector<PropFormula> fs = tau_program(grounded, universe);
  for (const GroundAtom& a : input.atoms()) fs.push_back(PropFormula::atom(a));
  std::vector<AtomSet> models = solve(std::move(fs), limits);
  std::vector<AtomSet> projected;
  for (const AtomSet& m : models) {
    AtomSet p = public_projection(m, io);
    if (std::find(projected.begin(), projected.end(), p) == projected.end())
      projected.push_back(std::move(p));
  }
  std::sort(projected.begin(), projected.end());
  return projected;
}

Theorem1Report verify_theorem1(const Program& program, const Universe& universe,
                               StableLimits limits) {
  Theorem1Report report;
  report.via_tau = solve(tau_program(program, universe), limits);

  CompletableSet gamma = tau_star(program);
  std::vector<PropFormula> images;
  images.reserve(gamma.sentences().size());
  for (const FoFormula& sentence : gamma.sentences())
    images.push_back(fprop(sentence, universe));
  report.via_tau_star = solve(std::move(images), limits);

  report.matches = report.via_tau == report.via_tau_star;
  return report;
}

Theorem2Report verify_theorem2(const IoProgram& io, const Input& input,
                               const AtomSet& public_atoms, const Universe& universe,
                               StableLimits limits, SoLimits so_limits) {
  for (const GroundAtom& a : public_atoms) {
    if (!io.is_public(a.symbol()))
      throw std::invalid_argument("verify_theorem2: " + a.to_string() +
                                  " is not a public atom");
    for (const PrecomputedTerm& arg : a.args)
      if (arg.is_symbolic() && io.placeholders().count(arg.symbol()))
        throw std::invalid_argument("verify_theorem2: " + a.to_string() +
                                    " contains a placeholder");
  }
  Theorem2Report report;
  report.tightness = is_locally_tight(io, input, universe);
  report.applicable = report.tightness.locally_tight();

  std::vector<AtomSet> models = io_models(io, input, universe, limits);
  report.cond_a =
      std::find(models.begin(), models.end(), public_atoms) != models.end();

  report.input_projection_matches =
      input_projection(public_atoms, io) == input.atoms();

  SoSentence completion = complete_io(io);

  SoSentence substituted = apply_valuation(completion, input.valuation());
  StandardInterp plain{public_atoms, {}};
  SoSatResult b = so_sat(plain, substituted, universe, so_limits);
  report.cond_b = report.input_projection_matches && b.satisfied;
  report.witness_b = std::move(b.witness);

  StandardInterp with_valuation{public_atoms, input.valuation()};
  SoSatResult c = so_sat(with_valuation, completion, universe, so_limits);
  report.cond_c = report.input_projection_matches && c.satisfied;
  report.witness_c = std::move(c.witness);

  report.equivalent =
      report.cond_a == report.cond_b && report.cond_b == report.cond_c;
  return report;
}

bool is_stable_fo(const StandardInterp& interp, const CompletableSet& gamma,
                  const Universe& universe) {
  std::vector<PropFormula> images;
  images.reserve(gamma.sentences().size());
  for (const FoFormula& sentence : gamma.sentences())
    images.push_back(fprop(apply_valuation(sentence, interp.valuation), universe));
  images = flatten_conjunctions(std::move(images));

  std::set<PredSym> intensional(gamma.intensional().begin(),
                                gamma.intensional().end());
  // Extensional atoms keep the value the interpretation gives them in both
  // worlds; fix them before the here-and-there check.
  struct Fixer {
    const std::set<PredSym>& intensional;
    const AtomSet& atoms;
    PropFormula fix(const PropFormula& f) const {
      using Kind = PropFormula::Kind;
      switch (f.kind()) {
        case Kind::Atom:
          if (!intensional.count(f.atom_value().symbol()))
            return atoms.count(f.atom_value()) ? PropFormula::verum()
                                               : PropFormula::falsum();
          return f;
        case Kind::True:
        case Kind::False:
          return f;
        case Kind::And:
        case Kind::Or: {
          std::vector<PropFormula> members;
          for (const PropFormula& m : f.members()) members.push_back(fix(m));
          return f.kind() == Kind::And ? PropFormula::conj(std::move(members))
                                       : PropFormula::disj(std::move(members));
        }
        case Kind::Implies:
          return PropFormula::implies(fix(f.antecedent()), fix(f.consequent()));
      }
      return f;
    }
  } fixer{intensional, interp.atoms};
  for (PropFormula& f : images) f = fixer.fix(f);

  AtomSet restricted;
  for (const GroundAtom& a : interp.atoms)
    if (intensional.count(a.symbol())) restricted.insert(a);
  return is_stable_model(restricted, images);
}

bool is_supported_fo(const StandardInterp& interp, const CompletableSet& gamma,
                     const Universe& universe) {
  std::set<PredSym> intensional(gamma.intensional().begin(),
                                gamma.intensional().end());
  for (const GroundAtom& atom : interp.atoms) {
    if (!intensional.count(atom.symbol())) continue;
    bool supported = false;
    for (const CompletableSet::Member& member : gamma.members()) {
      if (supported) break;
      if (!member.defines || !(*member.defines == atom.symbol())) continue;
      // Bind the consequent tuple to the atom's arguments, then search the
      // remaining prefix variables for a true antecedent.
      std::map<std::string, PrecomputedTerm> bound;
      for (std::size_t i = 0; i < atom.args.size(); ++i)
        bound.emplace(member.consequent.pred_args()[i].var_name(), atom.args[i]);
      std::vector<std::pair<std::string, Sort>> remaining;
      for (const auto& v : member.prefix)
        if (!bound.count(v.first)) remaining.push_back(v);
      FoFormula antecedent = member.antecedent;
      for (const auto& [name, value] : bound)
        antecedent = antecedent.substitute(name, FoTerm::constant(value));

      std::vector<std::size_t> odo(remaining.size(), 0);
      while (true) {
        FoFormula candidate = antecedent;
        bool in_range = true;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          const auto& domain = remaining[i].second == Sort::Integer
                                   ? universe.numerals()
                                   : universe.terms();
          if (odo[i] >= domain.size()) {
            in_range = false;
            break;
          }
          candidate =
              candidate.substitute(remaining[i].first, FoTerm::constant(domain[odo[i]]));
        }
        if (in_range && fo_sat(interp, candidate, universe)) {
          supported = true;
          break;
        }
        if (remaining.empty()) break;
        std::size_t pos = remaining.size();
        bool done = false;
        while (pos > 0) {
          --pos;
          const auto& domain = remaining[pos].second == Sort::Integer
                                   ? universe.numerals()
                                   : universe.terms();
          if (++odo[pos] < domain.size()) break;
          odo[pos] = 0;
          if (pos == 0) done = true;
        }
        if (done) break;
      }
    }
    if (!supported) return false;
  }
  return true;
}

MainLemmaReport verify_main_lemma(const CompletableSet& gamma, const AtomSet& atoms,
                                  const Universe& universe) {
  MainLemmaReport report;
  StandardInterp interp{atoms, {}};
  GspGraph graph = gsp_graph(interp, gamma, universe);
  auto cycle = find_atom_cycle(graph.edges);
  report.hypothesis_holds = !cycle.has_value();
  if (cycle) report.cycle = *cycle;
  report.stable = is_stable_fo(interp, gamma, universe);
  report.satisfies_completion = fo_sat(interp, complete(gamma), universe);
  if (report.hypothesis_holds)
    report.equivalence_holds = report.stable == report.satisfies_completion;
  return report;
}

EquivalenceReport check_equivalence(const IoProgram& left, const IoProgram& right,
                                    const FoFormula& assumption,
                                    const InputDomain& domain,
                                    const Universe& universe, StableLimits limits) {
  if (left.placeholders() != right.placeholders() ||
      left.inputs() != right.inputs() || left.outputs() != right.outputs())
    throw std::invalid_argument("check_equivalence: io-programs are not comparable");
  std::set<PredSym> assumption_preds;
  assumption.collect_pred_symbols(assumption_preds);
  for (const PredSym& p : assumption_preds)
    if (!left.inputs().count(p))
      throw std::invalid_argument("check_equivalence: assumption mentions " +
                                  p.to_string() + ", which is not an input symbol");
  for (const GroundAtom& a : domain.atom_base)
    if (!left.inputs().count(a.symbol()))
      throw std::invalid_argument("check_equivalence: domain atom " + a.to_string() +
                                  " does not use an input symbol");
  if (domain.atom_base.size() > 20)
    throw LimitError("check_equivalence: atom base of " +
                     std::to_string(domain.atom_base.size()) +
                     " atoms exceeds the enumeration guard of 20");

  EquivalenceReport report;
  for (const Valuation& v : domain.valuations) {
    for (std::uint64_t mask = 0; mask < (1ull << domain.atom_base.size()); ++mask) {
      AtomSet atoms;
      for (std::size_t i = 0; i < domain.atom_base.size(); ++i)
        if (mask & (1ull << i)) atoms.insert(domain.atom_base[i]);
      Input input(left, v, atoms);
      StandardInterp interp{atoms, v};
      if (!fo_sat(interp, assumption, universe)) {
        ++report.inputs_filtered;
        continue;
      }
      LocalTightness lt_left = is_locally_tight(left, input, universe);
      LocalTightness lt_right = is_locally_tight(right, input, universe);
      if (!lt_left.locally_tight() || !lt_right.locally_tight()) {
        std::string reason = !lt_left.locally_tight() ? lt_left.to_string()
                                                      : lt_right.to_string();
        report.inapplicable.push_back({v, atoms, std::move(reason)});
        continue;
      }
      std::vector<AtomSet> models_left = io_models(left, input, universe, limits);
      std::vector<AtomSet> models_right = io_models(right, input, universe, limits);
      ++report.inputs_checked;
      if (models_left != models_right) {
        report.equivalent = false;
        report.counterexample = EquivalenceReport::Counterexample{
            v, atoms, std::move(models_left), std::move(models_right)};
        return report;
      }
    }
  }
  report.equivalent = true;
  return report;
}

}  // namespace mgtc
