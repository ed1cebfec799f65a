#pragma once

#include <span>
#include <vector>

#include "mgtc/ground.hpp"

namespace mgtc {

/// Here-and-there pair of atom sets with here ⊆ there.
struct HtPair {
  AtomSet here;
  AtomSet there;

  HtPair(AtomSet h, AtomSet t);
};

/// Classical truth of a propositional formula under an atom set.
bool sat(const AtomSet& model, const PropFormula& f);
bool sat_all(const AtomSet& model, std::span<const PropFormula> fs);

/// Here-and-there truth.  An implication must pass the here-check and be
/// classically true at the there-world.
bool ht_sat(const HtPair& pair, const PropFormula& f);
bool ht_sat_all(const HtPair& pair, std::span<const PropFormula> fs);

struct StableLimits {
  /// Cap on the number of atoms enumerated over (2^n candidate models).
  std::size_t enumeration_atoms = 22;
};

/// All stable models of the theory with atoms drawn from `base`, in
/// canonical (lexicographic) order.
///
/// A stable model is a classical model m with no proper subset h such that
/// <h, m> here-and-there-satisfies the theory.  Theories in rule shape
/// (implications whose consequents are conjunctions of atoms, choice
/// disjunctions or falsity, with negation applied only to atoms in bodies)
/// are solved by enumerating subsets between a forced lower bound and a
/// derivable upper bound, with minimality decided by a least-fixpoint
/// computation on the reduct.  Anything else falls back to enumerating all
/// subsets of `base`.  Throws LimitError when the enumeration would exceed
/// the configured bound.
std::vector<AtomSet> stable_models(std::span<const PropFormula> fs,
                                   const AtomSet& base, StableLimits limits = {});

/// Direct check that `m` is a stable model, by the definition: classical
/// satisfaction plus exhaustive search over proper subsets of m.
bool is_stable_model(const AtomSet& m, std::span<const PropFormula> fs);

/// The reduct relative to m: every maximal subformula not classically
/// satisfied by m is replaced by falsity.
PropFormula ferraris_reduct(const PropFormula& f, const AtomSet& m);

/// Independent oracle: m is stable iff m is a minimal classical model of
/// the reduct of the theory relative to m.  Enumerates all subsets of
/// `base`; intended for cross-checking on small theories.
std::vector<AtomSet> stable_models_reduct_oracle(std::span<const PropFormula> fs,
                                                 const AtomSet& base,
                                                 StableLimits limits = {});

/// No single-atom deletion from m leaves a here-and-there model.
bool is_pointwise_stable(const AtomSet& m, std::span<const PropFormula> fs);

/// Every atom of m is the consequent of some implication whose antecedent
/// m satisfies.  The theory must consist of implications with atomic
/// consequents, atom-free consequents, or bare atoms (facts); otherwise
/// throws std::invalid_argument.
bool is_supported(const AtomSet& m, std::span<const PropFormula> fs);

/// Here-and-there-safe verum/falsum absorption.
PropFormula simplify(const PropFormula& f);

}  // namespace mgtc
