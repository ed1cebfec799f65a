#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgtc/graphs.hpp"
#include "mgtc/interp.hpp"
#include "mgtc/stable.hpp"

namespace mgtc {

/// Public projections of the stable models of the program with the input's
/// valuation applied and its atoms added as facts, instantiated over the
/// universe.  Deduplicated, canonical order.
std::vector<AtomSet> io_models(const IoProgram& io, const Input& input,
                               const Universe& universe, StableLimits limits = {});

/// Stable models of the program computed twice, over the same universe:
/// once through the propositional translation of the rule instances and
/// once through the bounded propositional image of the first-order
/// translation.  The two routes must agree.
struct Theorem1Report {
  bool matches = false;
  std::vector<AtomSet> via_tau;
  std::vector<AtomSet> via_tau_star;
};

Theorem1Report verify_theorem1(const Program& program, const Universe& universe,
                               StableLimits limits = {});

/// For a locally tight io-program, the three characterizations of an
/// io-model agree: membership in the io-models, the plain interpretation
/// satisfying the valuation-substituted completion, and the
/// placeholder-aware interpretation satisfying the completion itself.
struct Theorem2Report {
  bool applicable = false;  // local tightness established
  LocalTightness tightness;
  bool input_projection_matches = false;
  bool cond_a = false;  // public set is an io-model
  bool cond_b = false;  // plain interpretation satisfies substituted completion
  bool cond_c = false;  // placeholder interpretation satisfies completion
  bool equivalent = false;
  std::optional<PredVarAssignment> witness_b;
  std::optional<PredVarAssignment> witness_c;
};

Theorem2Report verify_theorem2(const IoProgram& io, const Input& input,
                               const AtomSet& public_atoms, const Universe& universe,
                               StableLimits limits = {}, SoLimits so_limits = {});

/// Whether the interpretation is a stable model of the completable set, at
/// the bounded universe, with extensional atoms fixed at their values.
bool is_stable_fo(const StandardInterp& interp, const CompletableSet& gamma,
                  const Universe& universe);

/// Whether every true intensional atom is the consequent of some instance
/// of a member whose antecedent the interpretation satisfies.
bool is_supported_fo(const StandardInterp& interp, const CompletableSet& gamma,
                     const Universe& universe);

/// When the positive dependency graph of the completable set is acyclic,
/// being a stable model and satisfying the completion must coincide.
struct MainLemmaReport {
  bool hypothesis_holds = false;  // acyclic positive dependency graph
  std::vector<GroundAtom> cycle;
  bool stable = false;
  bool satisfies_completion = false;
  /// Engaged when the hypothesis holds: stable == satisfies_completion.
  std::optional<bool> equivalence_holds;
};

MainLemmaReport verify_main_lemma(const CompletableSet& gamma, const AtomSet& atoms,
                                  const Universe& universe);

/// An explicit finite family of inputs: every valuation paired with every
/// subset of the atom base.
struct InputDomain {
  std::vector<Valuation> valuations;
  std::vector<GroundAtom> atom_base;
};

struct EquivalenceReport {
  struct Counterexample {
    Valuation valuation;
    AtomSet input_atoms;
    std::vector<AtomSet> models_left;
    std::vector<AtomSet> models_right;
  };
  struct SkippedInput {
    Valuation valuation;
    AtomSet input_atoms;
    std::string reason;
  };
  bool equivalent = false;
  std::size_t inputs_checked = 0;
  std::size_t inputs_filtered = 0;  // assumption not satisfied
  std::vector<SkippedInput> inapplicable;  // local tightness failed
  std::optional<Counterexample> counterexample;
};

/// Compares io-models of two comparable io-programs on every input of the
/// domain that satisfies the assumption; stops at the first difference.
/// Inputs on which either program fails local tightness are reported as
/// inapplicable rather than compared.
EquivalenceReport check_equivalence(const IoProgram& left, const IoProgram& right,
                                    const FoFormula& assumption,
                                    const InputDomain& domain,
                                    const Universe& universe,
                                    StableLimits limits = {});

}  // namespace mgtc
