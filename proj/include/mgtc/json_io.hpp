#pragma once

#include "json.hpp"
#include "mgtc/check.hpp"
#include "mgtc/fol.hpp"
#include "mgtc/ground.hpp"
#include "mgtc/syntax.hpp"
#include "mgtc/values.hpp"

namespace mgtc {

/// JSON forms are s-expression style nested arrays with a leading tag;
/// numerals are emitted as decimal strings so arbitrary precision survives
/// the round trip.  The schemas are documented under docs/schemas/.
nlohmann::json to_json(const PrecomputedTerm& t);
nlohmann::json to_json(const Term& t);
nlohmann::json to_json(const Atom& a);
nlohmann::json to_json(const GroundAtom& a);
nlohmann::json to_json(const Rule& r);
nlohmann::json to_json(const Program& p);
nlohmann::json to_json(const ValueSet& values);
nlohmann::json to_json(const Universe& u);
nlohmann::json to_json(const PropFormula& f);
nlohmann::json to_json(const FoTerm& t);
nlohmann::json to_json(const FoFormula& f);
nlohmann::json to_json(const SoSentence& s);
nlohmann::json to_json(const AtomSet& atoms);
nlohmann::json to_json(const Valuation& v);
nlohmann::json to_json(const PredVarAssignment& assignment);
nlohmann::json to_json(const LocalTightness& verdict);
nlohmann::json to_json(const Theorem1Report& report);
nlohmann::json to_json(const Theorem2Report& report);
nlohmann::json to_json(const MainLemmaReport& report);
nlohmann::json to_json(const EquivalenceReport& report);

/// Parses the domain files used by the equivalence checker:
/// { "valuations": [ {"h": "2"}, ... ], "atom_base": [ "p(a)", ... ] }.
InputDomain domain_from_json(const nlohmann::json& j);

}  // namespace mgtc
