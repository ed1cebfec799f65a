#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mgtc/fol.hpp"
#include "mgtc/interp.hpp"
#include "mgtc/syntax.hpp"

namespace mgtc {

/// Positive dependencies between predicate symbols: an edge from p to p'
/// whenever p heads a rule with an un-negated atom over p' in its body.
struct PredDepGraph {
  std::vector<PredSym> vertices;
  std::set<std::pair<PredSym, PredSym>> edges;

  std::string to_dot() const;
};

PredDepGraph pred_graph(const Program& program);

/// Acyclicity of the positive predicate dependency graph.
bool is_tight(const Program& program);

/// A cycle as the sequence of vertices visited, with an implicit edge from
/// the last back to the first; deterministic across runs.
std::optional<std::vector<PredSym>> find_pred_cycle(const PredDepGraph& graph);

/// Positive dependencies between ground atoms for one input.  Vertices are
/// the output and private atoms with arguments in the universe; an edge
/// from a head value to a positive body atom value exists whenever some
/// rule instance has matching head and body values, its input-symbol body
/// literals are compatible with the input atoms, and its comparisons hold
/// for some pair of values.  Each edge records a witnessing instance.
struct AtomDepGraph {
  std::set<std::pair<GroundAtom, GroundAtom>> edges;
  std::map<std::pair<GroundAtom, GroundAtom>, Rule> provenance;

  std::vector<GroundAtom> vertices() const;  // endpoints of edges, sorted
  std::string to_dot(bool with_provenance = true) const;
};

AtomDepGraph atom_graph(const IoProgram& io, const Input& input,
                        const Universe& universe);

/// Local tightness verdict.  On a finite universe an infinite walk exists
/// iff a cycle does, so the check is cycle detection; a tight program is
/// locally tight for every input and short-circuits the graph build.
struct LocalTightness {
  enum class Kind { TightShortcut, LocallyTight, CycleFound };
  Kind kind = Kind::LocallyTight;
  std::vector<GroundAtom> cycle;       // engaged for CycleFound
  std::vector<Rule> cycle_provenance;  // witnessing instance per cycle edge

  bool locally_tight() const { return kind != Kind::CycleFound; }
  std::string to_string() const;
};

LocalTightness is_locally_tight(const IoProgram& io, const Input& input,
                                const Universe& universe,
                                bool use_tight_shortcut = true);

/// The strictly positive atoms of a sentence that the interpretation makes
/// true: empty when the sentence has no intensional symbols or fails under
/// the interpretation; otherwise atoms evaluate their arguments, both
/// branches of conjunctions and disjunctions contribute, implications
/// contribute only their consequents, and quantifiers expand over the
/// universe.
std::set<GroundAtom> pos_atoms(const StandardInterp& interp, const FoFormula& sentence,
                               const std::set<PredSym>& intensional,
                               const Universe& universe);

/// Positive dependency graph of a completable set with respect to an
/// interpretation: vertices are the true intensional atoms, and instances
/// of the members (free variables replaced by universe terms of matching
/// sort) contribute an edge from each positive atom of their consequent to
/// each positive atom of their antecedent.
struct GspGraph {
  std::vector<GroundAtom> vertices;
  std::set<std::pair<GroundAtom, GroundAtom>> edges;

  std::string to_dot() const;
};

GspGraph gsp_graph(const StandardInterp& interp, const CompletableSet& gamma,
                   const Universe& universe);

std::optional<std::vector<GroundAtom>> find_atom_cycle(
    const std::set<std::pair<GroundAtom, GroundAtom>>& edges);

}  // namespace mgtc
