#include "mgtc/values.hpp"

#include <stdexcept>

#include "mgtc/errors.hpp"

namespace mgtc {

BigInt round_div(const BigInt& numerator, const BigInt& denominator) {
  if (denominator.is_zero())
    throw std::domain_error("round_div: zero denominator");
  return numerator / denominator;  // BigInt division truncates toward zero
}

namespace {

constexpr long long kIntervalLimit = 1'000'000;

void combine_numerals(const ValueSet& lhs, const ValueSet& rhs, BinOp op,
                      ValueSet& out) {
  for (const PrecomputedTerm& l : lhs) {
    if (!l.is_numeral()) continue;
    for (const PrecomputedTerm& r : rhs) {
      if (!r.is_numeral()) continue;
      const BigInt& m = l.number();
      const BigInt& n = r.number();
      switch (op) {
        case BinOp::Add:
          out.insert(PrecomputedTerm::numeral(m + n));
          break;
        case BinOp::Sub:
          out.insert(PrecomputedTerm::numeral(m - n));
          break;
        case BinOp::Mul:
          out.insert(PrecomputedTerm::numeral(m * n));
          break;
        case BinOp::Div:
          if (!n.is_zero())
            out.insert(PrecomputedTerm::numeral(round_div(m, n)));
          break;
        case BinOp::Mod:
          if (!n.is_zero())
            out.insert(PrecomputedTerm::numeral(m - n * round_div(m, n)));
          break;
        case BinOp::Interval: {
          if (m > n) break;
          BigInt width = n - m;
          if (!width.fits_int64() || width.to_int64() >= kIntervalLimit)
            throw LimitError("eval_term: interval " + m.to_string() + ".." +
                             n.to_string() + " exceeds the enumeration limit");
          for (BigInt k = m; k <= n; ++k)
            out.insert(PrecomputedTerm::numeral(k));
          break;
        }
      }
    }
  }
}

}  // namespace

ValueSet eval_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Precomputed:
      return {t.value()};
    case Term::Kind::Variable:
      throw std::invalid_argument("eval_term: term contains the variable " +
                                  t.variable_name());
    case Term::Kind::Abs: {
      ValueSet out;
      for (const PrecomputedTerm& v : eval_term(t.inner()))
        if (v.is_numeral()) out.insert(PrecomputedTerm::numeral(v.number().abs()));
      return out;
    }
    case Term::Kind::Bin: {
      ValueSet out;
      combine_numerals(eval_term(t.left()), eval_term(t.right()), t.op(), out);
      return out;
    }
  }
  return {};
}

std::vector<std::vector<PrecomputedTerm>> eval_tuple(std::span<const Term> terms) {
  std::vector<std::vector<PrecomputedTerm>> tuples = {{}};
  for (const Term& t : terms) {
    ValueSet values = eval_term(t);
    std::vector<std::vector<PrecomputedTerm>> next;
    next.reserve(tuples.size() * values.size());
    for (const auto& prefix : tuples) {
      for (const PrecomputedTerm& v : values) {
        std::vector<PrecomputedTerm> extended = prefix;
        extended.push_back(v);
        next.push_back(std::move(extended));
      }
    }
    tuples = std::move(next);
    if (tuples.empty()) break;
  }
  return tuples;
}

bool holds(Rel rel, const PrecomputedTerm& left, const PrecomputedTerm& right) {
  auto cmp = left <=> right;
  switch (rel) {
    case Rel::Eq: return cmp == 0;
    case Rel::Ne: return cmp != 0;
    case Rel::Lt: return cmp < 0;
    case Rel::Gt: return cmp > 0;
    case Rel::Le: return cmp <= 0;
    case Rel::Ge: return cmp >= 0;
  }
  return false;
}

}  // namespace mgtc
