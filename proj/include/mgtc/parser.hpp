#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgtc/fol.hpp"
#include "mgtc/syntax.hpp"

namespace mgtc {

struct SourceSpan {
  std::string file;
  std::size_t begin = 0;  // byte offsets, begin <= end
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string message,
             std::vector<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// A parsed program file: the rules plus any io declarations
/// (#placeholder, #input, #output directives).
struct ParsedProgram {
  Program program;
  std::set<std::string> placeholders;
  std::set<PredSym> inputs;
  std::set<PredSym> outputs;
  bool has_directives = false;

  /// Builds the validated io-program.  Files without directives default to
  /// no placeholders, no inputs, and every predicate symbol as output.
  IoProgram to_io() const;
};

/// Rule syntax: `Head :- Body.`, `Head.` or `:- Body.`; choice heads in
/// braces; `not` and `not not`; comparisons = != < > <= >=; term operators
/// .. + - * / \ with |t| for absolute value; % comments.  Duplicate rules
/// are dropped.
ParsedProgram parse_program(const std::string& text,
                            const std::string& file = "<input>");

/// Input files: `#let c = t.` lines defining the valuation and precomputed
/// facts over input symbols.
Input parse_input(const std::string& text, const IoProgram& io,
                  const std::string& file = "<input>");

/// A bare list of precomputed facts (model files).
AtomSet parse_atoms(const std::string& text, const std::string& file = "<input>");

/// A ground term (used by the eval command).
Term parse_term(const std::string& text, const std::string& file = "<input>");

PrecomputedTerm parse_precomputed(const std::string& text,
                                  const std::string& file = "<input>");

/// Formula files: quantifiers `forall`/`exists`, connectives `and`, `or`,
/// `->`, `<->`, `not`, comparisons over +, -, *, |t|; `#int X, Y.`
/// declares integer variables; `#top` is truth.  Multiple statements are
/// conjoined.  Unbound variables and ill-sorted arithmetic are errors.
FoFormula parse_formula(const std::string& text, const std::string& file = "<input>");

/// Theory files for completable sets: formula statements plus
/// `#intensional p/1, q/2.` declarations.
struct ParsedTheory {
  std::vector<FoFormula> sentences;
  std::vector<PredSym> intensional;
};

ParsedTheory parse_theory(const std::string& text,
                          const std::string& file = "<input>");

}  // namespace mgtc
