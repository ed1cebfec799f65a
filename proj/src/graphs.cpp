#include "mgtc/graphs.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mgtc/values.hpp"

namespace mgtc {

// ---------------------------------------------------------------------------
// Generic deterministic cycle search

namespace {

// Iterative DFS over sorted vertices; returns the first cycle found.
template <typename V>
std::optional<std::vector<V>> find_cycle(const std::vector<V>& vertices,
                                         const std::map<V, std::vector<V>>& succ) {
  std::map<V, int> color;  // 0 unvisited, 1 on stack, 2 done
  std::map<V, V> parent;
  std::optional<std::vector<V>> result;

  std::function<bool(const V&)> dfs = [&](const V& v) -> bool {
    color[v] = 1;
    auto it = succ.find(v);
    if (it != succ.end()) {
      for (const V& w : it->second) {
        auto state = color.find(w);
        if (state != color.end() && state->second == 1) {
          // Walk back from v to w along parents.
          std::vector<V> cycle;
          V cur = v;
          cycle.push_back(cur);
          while (!(cur == w)) {
            cur = parent.at(cur);
            cycle.push_back(cur);
          }
          std::reverse(cycle.begin(), cycle.end());
          result = std::move(cycle);
          return true;
        }
        if (state == color.end() || state->second == 0) {
          parent.insert_or_assign(w, v);
          if (dfs(w)) return true;
        }
      }
    }
    color[v] = 2;
    return false;
  };

  for (const V& v : vertices) {
    auto state = color.find(v);
    if (state == color.end() || state->second == 0)
      if (dfs(v)) return result;
  }
  return std::nullopt;
}

template <typename V>
std::map<V, std::vector<V>> adjacency(const std::set<std::pair<V, V>>& edges) {
  std::map<V, std::vector<V>> succ;
  for (const auto& [from, to] : edges) succ[from].push_back(to);
  return succ;  // std::set iteration keeps successor lists sorted
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------
// Predicate dependency graph

PredDepGraph pred_graph(const Program& program) {
  PredDepGraph graph;
  std::set<PredSym> vertices = program.predicate_symbols();
  graph.vertices.assign(vertices.begin(), vertices.end());
  for (const Rule& rule : program.rules) {
    if (!rule.head) continue;
    PredSym head = rule.head->symbol();
    for (const BodyElement& e : rule.body) {
      const Literal* lit = std::get_if<Literal>(&e);
      if (lit && lit->negations == 0)
        graph.edges.emplace(head, lit->atom.symbol());
    }
  }
  return graph;
}

bool is_tight(const Program& program) {
  return !find_pred_cycle(pred_graph(program)).has_value();
}

std::optional<std::vector<PredSym>> find_pred_cycle(const PredDepGraph& graph) {
  return find_cycle(graph.vertices, adjacency(graph.edges));
}

std::string PredDepGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph predicate_dependencies {\n";
  for (const PredSym& v : vertices) os << "  " << quote(v.to_string()) << ";\n";
  for (const auto& [from, to] : edges)
    os << "  " << quote(from.to_string()) << " -> " << quote(to.to_string()) << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Atom dependency graph

namespace {

bool tuple_in_universe(const std::vector<PrecomputedTerm>& tuple, const Universe& u) {
  return u.contains_all(tuple);
}

// Conditions on input-symbol literals and comparisons of a ground instance.
bool instance_admissible(const Rule& instance, const IoProgram& io,
                         const AtomSet& input_atoms) {
  for (const BodyElement& e : instance.body) {
    if (const Comparison* cmp = std::get_if<Comparison>(&e)) {
      bool some_pair = false;
      for (const PrecomputedTerm& l : eval_term(cmp->left)) {
        for (const PrecomputedTerm& r : eval_term(cmp->right)) {
          if (holds(cmp->rel, l, r)) {
            some_pair = true;
            break;
          }
        }
        if (some_pair) break;
      }
      if (!some_pair) return false;
      continue;
    }
    const Literal& lit = std::get<Literal>(e);
    if (!io.is_input(lit.atom.symbol())) continue;
    bool want_member = lit.negations != 1;
    bool found = false;
    for (auto& tuple : eval_tuple(lit.atom.args)) {
      bool member =
          input_atoms.count(GroundAtom{lit.atom.predicate, std::move(tuple)}) != 0;
      if (member == want_member) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

AtomDepGraph atom_graph(const IoProgram& io, const Input& input,
                        const Universe& universe) {
  AtomDepGraph graph;
  Program grounded = apply_valuation(io.program(), input.valuation());
  for (const Rule& rule : grounded.rules) {
    if (rule.head_kind == Rule::HeadKind::Constraint) continue;
    for (const Rule& instance : instances(rule, universe)) {
      // Head values first; skip the admissibility scan when empty.
      std::vector<std::vector<PrecomputedTerm>> head_tuples;
      for (auto& tuple : eval_tuple(instance.head->args))
        if (tuple_in_universe(tuple, universe)) head_tuples.push_back(std::move(tuple));
      if (head_tuples.empty()) continue;
      if (!instance_admissible(instance, io, input.atoms())) continue;
      for (const BodyElement& e : instance.body) {
        const Literal* lit = std::get_if<Literal>(&e);
        if (!lit || lit->negations != 0) continue;
        PredSym sym = lit->atom.symbol();
        if (io.is_input(sym)) continue;  // inputs are not vertices
        for (auto& body_tuple : eval_tuple(lit->atom.args)) {
          if (!tuple_in_universe(body_tuple, universe)) continue;
          GroundAtom to{lit->atom.predicate, std::move(body_tuple)};
          for (const auto& head_tuple : head_tuples) {
            GroundAtom from{instance.head->predicate, head_tuple};
            auto edge = std::make_pair(std::move(from), to);
            if (graph.edges.insert(edge).second)
              graph.provenance.emplace(edge, instance);
          }
        }
      }
    }
  }
  return graph;
}

std::vector<GroundAtom> AtomDepGraph::vertices() const {
  std::set<GroundAtom> out;
  for (const auto& [from, to] : edges) {
    out.insert(from);
    out.insert(to);
  }
  return {out.begin(), out.end()};
}

std::string AtomDepGraph::to_dot(bool with_provenance) const {
  std::ostringstream os;
  os << "digraph atom_dependencies {\n";
  for (const GroundAtom& v : vertices()) os << "  " << quote(v.to_string()) << ";\n";
  for (const auto& [from, to] : edges) {
    os << "  " << quote(from.to_string()) << " -> " << quote(to.to_string()) << ";";
    if (with_provenance) {
      auto it = provenance.find({from, to});
      if (it != provenance.end()) os << " // " << it->second.to_string();
    }
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Local tightness

LocalTightness is_locally_tight(const IoProgram& io, const Input& input,
                                const Universe& universe, bool use_tight_shortcut) {
  LocalTightness out;
  if (use_tight_shortcut && is_tight(io.program())) {
    out.kind = LocalTightness::Kind::TightShortcut;
    return out;
  }
  AtomDepGraph graph = atom_graph(io, input, universe);
  auto cycle = find_atom_cycle(graph.edges);
  if (!cycle) {
    out.kind = LocalTightness::Kind::LocallyTight;
    return out;
  }
  out.kind = LocalTightness::Kind::CycleFound;
  out.cycle = *cycle;
  for (std::size_t i = 0; i < out.cycle.size(); ++i) {
    const GroundAtom& from = out.cycle[i];
    const GroundAtom& to = out.cycle[(i + 1) % out.cycle.size()];
    auto it = graph.provenance.find({from, to});
    if (it != graph.provenance.end()) out.cycle_provenance.push_back(it->second);
  }
  return out;
}

std::string LocalTightness::to_string() const {
  switch (kind) {
    case Kind::TightShortcut:
      return "LOCALLY TIGHT (predicate dependency graph is acyclic)";
    case Kind::LocallyTight:
      return "LOCALLY TIGHT";
    case Kind::CycleFound: {
      std::ostringstream os;
      os << "NOT LOCALLY TIGHT: cycle";
      for (const GroundAtom& a : cycle) os << ' ' << a.to_string() << " ->";
      os << ' ' << cycle.front().to_string();
      return os.str();
    }
  }
  return "";
}

std::optional<std::vector<GroundAtom>> find_atom_cycle(
    const std::set<std::pair<GroundAtom, GroundAtom>>& edges) {
  std::set<GroundAtom> vertex_set;
  for (const auto& [from, to] : edges) {
    vertex_set.insert(from);
    vertex_set.insert(to);
  }
  std::vector<GroundAtom> vertices(vertex_set.begin(), vertex_set.end());
  return find_cycle(vertices, adjacency(edges));
}

// ---------------------------------------------------------------------------
// Strictly positive atoms and the completable-set dependency graph

namespace {

bool contains_intensional(const FoFormula& f, const std::set<PredSym>& intensional) {
  return f.contains_pred_symbol(intensional);
}

std::set<GroundAtom> pos_atoms_rec(const StandardInterp& interp, const FoFormula& f,
                                   const std::set<PredSym>& intensional,
                                   const Universe& universe) {
  using Kind = FoFormula::Kind;
  if (!contains_intensional(f, intensional)) return {};
  if (!fo_sat(interp, f, universe)) return {};
  switch (f.kind()) {
    case Kind::Pred: {
      // Arguments evaluate through the valuation (other names denote
      // themselves).
      std::vector<PrecomputedTerm> args;
      for (const FoTerm& t : f.pred_args())
        args.push_back(eval_ground_term(t, interp));
      return {GroundAtom{f.pred_name(), std::move(args)}};
    }
    case Kind::And:
    case Kind::Or: {
      std::set<GroundAtom> out;
      for (const FoFormula& m : f.members()) {
        auto sub = pos_atoms_rec(interp, m, intensional, universe);
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    case Kind::Implies:
      return pos_atoms_rec(interp, f.consequent(), intensional, universe);
    case Kind::Forall:
    case Kind::Exists: {
      const auto& domain = f.quant_sort() == Sort::Integer ? universe.numerals()
                                                           : universe.terms();
      std::set<GroundAtom> out;
      for (const PrecomputedTerm& d : domain) {
        FoFormula body = f.quant_body().substitute(f.quant_var(), FoTerm::constant(d));
        auto sub = pos_atoms_rec(interp, body, intensional, universe);
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    default:
      return {};
  }
}

}  // namespace

std::set<GroundAtom> pos_atoms(const StandardInterp& interp, const FoFormula& sentence,
                               const std::set<PredSym>& intensional,
                               const Universe& universe) {
  return pos_atoms_rec(interp, sentence, intensional, universe);
}

GspGraph gsp_graph(const StandardInterp& interp, const CompletableSet& gamma,
                   const Universe& universe) {
  GspGraph graph;
  std::set<PredSym> intensional(gamma.intensional().begin(), gamma.intensional().end());
  for (const GroundAtom& a : interp.atoms)
    if (intensional.count(a.symbol())) graph.vertices.push_back(a);

  for (const CompletableSet::Member& member : gamma.members()) {
    // Instances substitute universe terms (of the right sort) for the
    // universally quantified variables.
    std::size_t n = member.prefix.size();
    std::vector<std::size_t> odo(n, 0);
    while (true) {
      FoFormula antecedent = member.antecedent;
      FoFormula consequent = member.consequent;
      bool valid = true;
      for (std::size_t i = 0; i < n && valid; ++i) {
        const auto& domain = member.prefix[i].second == Sort::Integer
                                 ? universe.numerals()
                                 : universe.terms();
        if (odo[i] >= domain.size()) {
          valid = false;
          break;
        }
        FoTerm value = FoTerm::constant(domain[odo[i]]);
        antecedent = antecedent.substitute(member.prefix[i].first, value);
        consequent = consequent.substitute(member.prefix[i].first, value);
      }
      if (valid) {
        auto heads = pos_atoms(interp, consequent, intensional, universe);
        if (!heads.empty()) {
          auto bodies = pos_atoms(interp, antecedent, intensional, universe);
          for (const GroundAtom& a : heads)
            for (const GroundAtom& b : bodies) graph.edges.emplace(a, b);
        }
      }
      if (n == 0) break;
      std::size_t pos = n;
      bool done = false;
      while (pos > 0) {
        --pos;
        const auto& domain = member.prefix[pos].second == Sort::Integer
                                 ? universe.numerals()
                                 : universe.terms();
        if (++odo[pos] < domain.size()) break;
        odo[pos] = 0;
        if (pos == 0) done = true;
      }
      if (done) break;
    }
  }
  return graph;
}

std::string GspGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph positive_dependencies {\n";
  for (const GroundAtom& v : vertices) os << "  " << quote(v.to_string()) << ";\n";
  for (const auto& [from, to] : edges)
    os << "  " << quote(from.to_string()) << " -> " << quote(to.to_string()) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace mgtc
