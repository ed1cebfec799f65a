#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgtc/fol.hpp"
#include "mgtc/ground.hpp"

namespace mgtc {

/// A standard interpretation, given by the set of precomputed atoms it
/// makes true and (when reasoning about placeholders) a valuation mapping
/// each placeholder to the term it represents.  Every other constant names
/// itself.
struct StandardInterp {
  AtomSet atoms;
  Valuation valuation;

  /// The set of true atoms; the inverse of building the interpretation.
  const AtomSet& down() const { return atoms; }
};

/// Truth of a sentence under a standard interpretation, with quantifiers
/// bounded by the universe: general variables range over its terms and
/// integer variables over its numerals.  Exact whenever every quantifier is
/// guarded inside the universe; otherwise an approximation relative to the
/// printed bound.
bool fo_sat(const StandardInterp& interp, const FoFormula& sentence,
            const Universe& universe);

/// Value of a variable-free term under the interpretation (placeholders go
/// through the valuation, every other constant names itself).
PrecomputedTerm eval_ground_term(const FoTerm& term, const StandardInterp& interp);

/// Relations assigned to predicate variables, keyed by variable name.
using PredVarAssignment = std::map<std::string, std::set<std::vector<PrecomputedTerm>>>;

struct SoLimits {
  /// Cap on the total number of candidate private atoms when enumerating
  /// predicate-variable assignments (2^bits candidates).
  std::size_t enumeration_bits = 16;
};

struct SoSatResult {
  enum class Method { Direct, Derived, Enumerated, Given };
  bool satisfied = false;
  Method method = Method::Direct;
  /// Engaged when satisfied and the prefix is nonempty.
  std::optional<PredVarAssignment> witness;
};

/// Truth of an existential second-order sentence under a standard
/// interpretation, bounded by the universe.
///
/// When every predicate variable has a completed-definition conjunct in the
/// matrix and those definitions do not depend on each other cyclically, the
/// witness relations are derived pointwise from the definitions.  Otherwise
/// all assignments of relations over the universe are enumerated, up to the
/// configured bit limit (LimitError past it, with a hint to supply a
/// witness).
SoSatResult so_sat(const StandardInterp& interp, const SoSentence& sentence,
                   const Universe& universe, SoLimits limits = {});

/// Checks the matrix under one given assignment.
SoSatResult so_sat_with_witness(const StandardInterp& interp,
                                const SoSentence& sentence, const Universe& universe,
                                const PredVarAssignment& witness);

}  // namespace mgtc
