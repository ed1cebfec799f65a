#pragma once

#include <set>
#include <span>
#include <vector>

#include "mgtc/syntax.hpp"

namespace mgtc {

/// Finite set of precomputed terms; iteration follows the global total order.
using ValueSet = std::set<PrecomputedTerm>;

/// The integer quotient numerator/denominator truncated toward zero:
/// floor for non-negative quotients, ceiling for negative ones.
/// The denominator must be nonzero (callers encode division by zero as an
/// empty value set before getting here).
BigInt round_div(const BigInt& numerator, const BigInt& denominator);

/// The set of values of a ground term.
///
/// Numerals and symbolic constants denote themselves; arithmetic combines
/// only the numeral members of the operand sets, so symbolic operands yield
/// the empty set, as do division and modulo when the divisor set holds only
/// zero.  t1..t2 collects every integer between a member of the first set
/// and a member of the second.  The empty set encodes undefinedness; no
/// error paths exist.  Throws std::invalid_argument if t contains variables,
/// and LimitError if an interval would enumerate more than a million values.
ValueSet eval_term(const Term& t);

/// Cartesian product of the value sets of a tuple of ground terms, in
/// lexicographic order.
std::vector<std::vector<PrecomputedTerm>> eval_tuple(std::span<const Term> terms);

/// Whether the relation holds under the total order on precomputed terms.
bool holds(Rel rel, const PrecomputedTerm& left, const PrecomputedTerm& right);

}  // namespace mgtc
