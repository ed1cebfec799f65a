#include "mgtc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace mgtc {

std::string SourceSpan::to_string() const {
  std::ostringstream os;
  os << file << ':' << line << ':' << column;
  return os.str();
}

ParseError::ParseError(SourceSpan span, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error(span.to_string() + ": " + message),
      span_(std::move(span)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  End,
  Ident,      // lowercase-initial
  Variable,   // uppercase-initial or leading underscore
  Number,
  Directive,  // #name
  Dot,
  Comma,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Pipe,
  If,         // :-
  DotDot,
  Plus,
  Minus,
  Star,
  Slash,
  Backslash,
  Eq,
  Ne,
  Lt,
  Gt,
  Le,
  Ge,
  Arrow,      // ->
  DArrow,     // <->
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Variable: return "variable";
    case Tok::Number: return "number";
    case Tok::Directive: return "directive";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Pipe: return "'|'";
    case Tok::If: return "':-'";
    case Tok::DotDot: return "'..'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Backslash: return "'\\'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Le: return "'<='";
    case Tok::Ge: return "'>='";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
  }
  return "?";
}

class Lexer {
 public:
  Lexer(const std::string& text, std::string file)
      : text_(text), file_(std::move(file)) {
    tokenize();
  }
  std::vector<Token> tokens;

 private:
  const std::string& text_;
  std::string file_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (peek() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  SourceSpan here() const { return {file_, pos_, pos_ + 1, line_, col_}; }

  void push(Tok kind, std::size_t len, std::string text = {}) {
    Token t;
    t.kind = kind;
    t.span = here();
    t.span.end = pos_ + len;
    t.text = text.empty() ? text_.substr(pos_, len) : std::move(text);
    for (std::size_t i = 0; i < len; ++i) advance();
    tokens.push_back(std::move(t));
  }

  void tokenize() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '%') {
        while (pos_ < text_.size() && peek() != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t len = 0;
        while (std::isdigit(static_cast<unsigned char>(peek(len)))) ++len;
        push(Tok::Number, len);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t len = 0;
        while (std::isalnum(static_cast<unsigned char>(peek(len))) || peek(len) == '_')
          ++len;
        bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_';
        push(upper ? Tok::Variable : Tok::Ident, len);
        continue;
      }
      if (c == '#') {
        std::size_t len = 1;
        while (std::isalnum(static_cast<unsigned char>(peek(len))) || peek(len) == '_')
          ++len;
        push(Tok::Directive, len);
        continue;
      }
      switch (c) {
        case '.':
          if (peek(1) == '.') {
            push(Tok::DotDot, 2);
          } else {
            push(Tok::Dot, 1);
          }
          continue;
        case ',': push(Tok::Comma, 1); continue;
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case '{': push(Tok::LBrace, 1); continue;
        case '}': push(Tok::RBrace, 1); continue;
        case '|': push(Tok::Pipe, 1); continue;
        case '+': push(Tok::Plus, 1); continue;
        case '-':
          if (peek(1) == '>') {
            push(Tok::Arrow, 2);
          } else {
            push(Tok::Minus, 1);
          }
          continue;
        case '*': push(Tok::Star, 1); continue;
        case '/': push(Tok::Slash, 1); continue;
        case '\\': push(Tok::Backslash, 1); continue;
        case '=': push(Tok::Eq, 1); continue;
        case '!':
          if (peek(1) == '=') {
            push(Tok::Ne, 2);
            continue;
          }
          break;
        case ':':
          if (peek(1) == '-') {
            push(Tok::If, 2);
            continue;
          }
          break;
        case '<':
          if (peek(1) == '-' && peek(2) == '>') {
            push(Tok::DArrow, 3);
          } else if (peek(1) == '=') {
            push(Tok::Le, 2);
          } else {
            push(Tok::Lt, 1);
          }
          continue;
        case '>':
          if (peek(1) == '=') {
            push(Tok::Ge, 2);
          } else {
            push(Tok::Gt, 1);
          }
          continue;
        default:
          break;
      }
      throw ParseError(here(), std::string("unexpected character '") + c + "'");
    }
    Token end;
    end.kind = Tok::End;
    end.span = here();
    tokens.push_back(std::move(end));
  }
};

class Parser {
 public:
  Parser(const std::string& text, const std::string& file)
      : lexer_(text, file) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, lexer_.tokens.size() - 1);
    return lexer_.tokens[i];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_end() const { return at(Tok::End); }
  Token take() { return lexer_.tokens[std::min(pos_++, lexer_.tokens.size() - 1)]; }
  Token expect(Tok kind) {
    if (!at(kind))
      throw ParseError(peek().span,
                       "expected " + std::string(tok_name(kind)) + ", found " +
                           describe(peek()),
                       {tok_name(kind)});
    return take();
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(peek().span, message + ", found " + describe(peek()),
                     std::move(expected));
  }

  // --- terms -------------------------------------------------------------

  Term parse_term() {
    Term left = parse_additive();
    if (accept(Tok::DotDot)) {
      Term right = parse_additive();
      return Term::bin(BinOp::Interval, std::move(left), std::move(right));
    }
    return left;
  }

  Term parse_additive() {
    Term left = parse_multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinOp op = take().kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
      left = Term::bin(op, std::move(left), parse_multiplicative());
    }
    return left;
  }

  Term parse_multiplicative() {
    Term left = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Backslash)) {
      Tok t = take().kind;
      BinOp op = t == Tok::Star ? BinOp::Mul
                 : t == Tok::Slash ? BinOp::Div
                                   : BinOp::Mod;
      left = Term::bin(op, std::move(left), parse_unary());
    }
    return left;
  }

  Term parse_unary() {
    if (accept(Tok::Minus)) {
      Term inner = parse_unary();
      // Negated numerals fold into a single numeral.
      if (inner.kind() == Term::Kind::Precomputed && inner.value().is_numeral())
        return Term::precomputed(PrecomputedTerm::numeral(-inner.value().number()));
      return Term::bin(BinOp::Sub, Term::numeral(0), std::move(inner));
    }
    return parse_primary();
  }

  Term parse_primary() {
    if (at(Tok::Number)) return Term::precomputed(take_number());
    if (at(Tok::Ident)) return Term::symbolic(take().text);
    if (at(Tok::Variable)) return Term::variable(take().text);
    if (accept(Tok::Pipe)) {
      Term inner = parse_term();
      expect(Tok::Pipe);
      return Term::abs(std::move(inner));
    }
    if (accept(Tok::LParen)) {
      Term inner = parse_term();
      expect(Tok::RParen);
      return inner;
    }
    fail("expected a term", {"number", "constant", "variable", "'|'", "'('"});
  }

  PrecomputedTerm take_number() {
    Token t = expect(Tok::Number);
    return PrecomputedTerm::numeral(BigInt::parse(t.text));
  }

  // --- rules ---------------------------------------------------------------

  std::optional<Rel> peek_rel() const {
    switch (peek().kind) {
      case Tok::Eq: return Rel::Eq;
      case Tok::Ne: return Rel::Ne;
      case Tok::Lt: return Rel::Lt;
      case Tok::Gt: return Rel::Gt;
      case Tok::Le: return Rel::Le;
      case Tok::Ge: return Rel::Ge;
      default: return std::nullopt;
    }
  }

  Atom parse_atom() {
    Token name = expect(Tok::Ident);
    Atom atom;
    atom.predicate = name.text;
    if (accept(Tok::LParen)) {
      atom.args.push_back(parse_term());
      while (accept(Tok::Comma)) atom.args.push_back(parse_term());
      expect(Tok::RParen);
    }
    return atom;
  }

  BodyElement parse_body_element() {
    if (at(Tok::Ident) && peek().text == "not") {
      take();
      int negations = 1;
      if (at(Tok::Ident) && peek().text == "not") {
        take();
        negations = 2;
      }
      return Literal{negations, parse_atom()};
    }
    // An identifier followed by '(' can only start an atom.
    if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
      Atom atom = parse_atom();
      if (peek_rel()) fail("atoms cannot be compared");
      return Literal{0, std::move(atom)};
    }
    Term left = parse_term();
    if (auto rel = peek_rel()) {
      take();
      Term right = parse_term();
      return Comparison{std::move(left), *rel, std::move(right)};
    }
    if (left.kind() == Term::Kind::Precomputed && left.value().is_symbolic())
      return Literal{0, Atom{left.value().symbol(), {}}};
    fail("expected a literal or comparison");
  }

  std::vector<BodyElement> parse_body() {
    std::vector<BodyElement> body;
    body.push_back(parse_body_element());
    while (accept(Tok::Comma)) body.push_back(parse_body_element());
    return body;
  }

  Rule parse_rule() {
    Rule rule;
    if (accept(Tok::If)) {
      rule.head_kind = Rule::HeadKind::Constraint;
      rule.body = parse_body();
      expect(Tok::Dot);
      return rule;
    }
    if (accept(Tok::LBrace)) {
      rule.head_kind = Rule::HeadKind::Choice;
      rule.head = parse_atom();
      expect(Tok::RBrace);
    } else {
      rule.head_kind = Rule::HeadKind::Basic;
      rule.head = parse_atom();
    }
    if (accept(Tok::If)) rule.body = parse_body();
    expect(Tok::Dot);
    return rule;
  }

  PredSym parse_pred_spec() {
    Token name = expect(Tok::Ident);
    expect(Tok::Slash);
    Token arity = expect(Tok::Number);
    return {name.text, static_cast<std::size_t>(BigInt::parse(arity.text).to_int64())};
  }

  ParsedProgram parse_program_file() {
    ParsedProgram out;
    while (!at(Tok::End)) {
      if (at(Tok::Directive)) {
        Token directive = take();
        out.has_directives = true;
        if (directive.text == "#placeholder") {
          out.placeholders.insert(expect(Tok::Ident).text);
          while (accept(Tok::Comma)) out.placeholders.insert(expect(Tok::Ident).text);
        } else if (directive.text == "#input") {
          out.inputs.insert(parse_pred_spec());
          while (accept(Tok::Comma)) out.inputs.insert(parse_pred_spec());
        } else if (directive.text == "#output") {
          out.outputs.insert(parse_pred_spec());
          while (accept(Tok::Comma)) out.outputs.insert(parse_pred_spec());
        } else {
          throw ParseError(directive.span,
                           "unknown directive " + directive.text,
                           {"#placeholder", "#input", "#output"});
        }
        expect(Tok::Dot);
        continue;
      }
      out.program.rules.push_back(parse_rule());
    }
    out.program.dedup();
    return out;
  }

  // --- inputs ----------------------------------------------------------

  Term parse_precomputed_term() {
    Term t = parse_unary();
    if (t.kind() != Term::Kind::Precomputed)
      fail("expected a precomputed term (numeral or symbolic constant)");
    return t;
  }

  std::pair<Valuation, AtomSet> parse_input_file() {
    Valuation valuation;
    AtomSet atoms;
    while (!at(Tok::End)) {
      if (at(Tok::Directive)) {
        Token directive = take();
        if (directive.text != "#let")
          throw ParseError(directive.span, "unknown directive " + directive.text,
                           {"#let"});
        Token name = expect(Tok::Ident);
        expect(Tok::Eq);
        Term value = parse_precomputed_term();
        expect(Tok::Dot);
        if (valuation.count(name.text))
          throw ParseError(name.span, "placeholder " + name.text + " set twice");
        valuation.emplace(name.text, value.value());
        continue;
      }
      SourceSpan span = peek().span;
      Atom atom = parse_atom();
      expect(Tok::Dot);
      if (!atom.is_precomputed())
        throw ParseError(span, "fact " + atom.to_string() + " is not precomputed");
      atoms.insert(to_ground(atom));
    }
    return {std::move(valuation), std::move(atoms)};
  }

  AtomSet parse_atom_file() {
    AtomSet atoms;
    while (!at(Tok::End)) {
      SourceSpan span = peek().span;
      Atom atom = parse_atom();
      expect(Tok::Dot);
      if (!atom.is_precomputed())
        throw ParseError(span, "fact " + atom.to_string() + " is not precomputed");
      atoms.insert(to_ground(atom));
    }
    return atoms;
  }

  // --- formulas ----------------------------------------------------------

  std::set<std::string> integer_vars;

  Sort var_sort(const std::string& name) const {
    return integer_vars.count(name) ? Sort::Integer : Sort::General;
  }

  FoTerm parse_fo_term() { return parse_fo_additive(); }

  FoTerm parse_fo_additive() {
    FoTerm left = parse_fo_multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      SourceSpan span = peek().span;
      FoTerm::Op op = take().kind == Tok::Plus ? FoTerm::Op::Add : FoTerm::Op::Sub;
      left = make_bin(span, op, std::move(left), parse_fo_multiplicative());
    }
    return left;
  }

  FoTerm parse_fo_multiplicative() {
    FoTerm left = parse_fo_unary();
    while (at(Tok::Star)) {
      SourceSpan span = take().span;
      left = make_bin(span, FoTerm::Op::Mul, std::move(left), parse_fo_unary());
    }
    return left;
  }

  FoTerm make_bin(const SourceSpan& span, FoTerm::Op op, FoTerm l, FoTerm r) {
    try {
      return FoTerm::bin(op, std::move(l), std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ParseError(span, e.what());
    }
  }

  FoTerm parse_fo_unary() {
    if (at(Tok::Minus)) {
      SourceSpan span = take().span;
      FoTerm inner = parse_fo_unary();
      if (inner.kind() == FoTerm::Kind::Const && inner.value().is_numeral())
        return FoTerm::constant(PrecomputedTerm::numeral(-inner.value().number()));
      try {
        return FoTerm::negate(std::move(inner));
      } catch (const std::invalid_argument& e) {
        throw ParseError(span, e.what());
      }
    }
    if (at(Tok::Number)) return FoTerm::constant(take_number());
    if (at(Tok::Ident)) return FoTerm::symbolic(take().text);
    if (at(Tok::Variable)) {
      Token t = take();
      return FoTerm::variable(t.text, var_sort(t.text));
    }
    if (at(Tok::Pipe)) {
      SourceSpan span = take().span;
      FoTerm inner = parse_fo_term();
      expect(Tok::Pipe);
      try {
        return FoTerm::abs(std::move(inner));
      } catch (const std::invalid_argument& e) {
        throw ParseError(span, e.what());
      }
    }
    if (accept(Tok::LParen)) {
      FoTerm inner = parse_fo_term();
      expect(Tok::RParen);
      return inner;
    }
    fail("expected a term", {"number", "constant", "variable", "'|'", "'('"});
  }

  FoFormula parse_formula_expr() {
    FoFormula left = parse_implies();
    if (accept(Tok::DArrow)) {
      FoFormula right = parse_implies();
      return FoFormula::iff(std::move(left), std::move(right));
    }
    return left;
  }

  FoFormula parse_implies() {
    FoFormula left = parse_or();
    if (accept(Tok::Arrow)) return FoFormula::implies(std::move(left), parse_implies());
    return left;
  }

  FoFormula parse_or() {
    FoFormula left = parse_and();
    while (at(Tok::Ident) && peek().text == "or") {
      take();
      left = FoFormula::disj({std::move(left), parse_and()});
    }
    return left;
  }

  FoFormula parse_and() {
    FoFormula left = parse_formula_unary();
    while (at(Tok::Ident) && peek().text == "and") {
      take();
      left = FoFormula::conj({std::move(left), parse_formula_unary()});
    }
    return left;
  }

  FoFormula parse_formula_unary() {
    if (at(Tok::Ident) && peek().text == "not") {
      take();
      return FoFormula::neg(parse_formula_unary());
    }
    if (at(Tok::Ident) && (peek().text == "forall" || peek().text == "exists")) {
      bool universal = take().text == "forall";
      std::vector<std::pair<std::string, Sort>> vars;
      while (at(Tok::Variable)) {
        Token v = take();
        vars.emplace_back(v.text, var_sort(v.text));
        accept(Tok::Comma);
      }
      if (vars.empty()) fail("expected quantified variables");
      expect(Tok::LParen);
      FoFormula body = parse_formula_expr();
      expect(Tok::RParen);
      return FoFormula::quantify(
          universal ? FoFormula::Kind::Forall : FoFormula::Kind::Exists, vars,
          std::move(body));
    }
    if (at(Tok::Directive) && peek().text == "#top") {
      take();
      return FoFormula::top();
    }
    if (at(Tok::Directive) && peek().text == "#bot") {
      take();
      return FoFormula::bot();
    }
    if (accept(Tok::LParen)) {
      FoFormula inner = parse_formula_expr();
      expect(Tok::RParen);
      return inner;
    }
    // Predicate atom or comparison.
    if (at(Tok::Ident) && peek(1).kind == Tok::LParen &&
        !is_formula_keyword(peek().text)) {
      Token name = take();
      take();  // '('
      std::vector<FoTerm> args;
      args.push_back(parse_fo_term());
      while (accept(Tok::Comma)) args.push_back(parse_fo_term());
      expect(Tok::RParen);
      return FoFormula::pred(name.text, std::move(args));
    }
    SourceSpan span = peek().span;
    FoTerm left = parse_fo_term();
    if (auto rel = peek_rel()) {
      take();
      FoTerm right = parse_fo_term();
      return FoFormula::cmp(*rel, std::move(left), std::move(right));
    }
    if (left.kind() == FoTerm::Kind::Const && left.value().is_symbolic())
      return FoFormula::pred(left.value().symbol(), {});
    throw ParseError(span, "expected an atom or comparison");
  }

  static bool is_formula_keyword(const std::string& s) {
    return s == "and" || s == "or" || s == "not" || s == "forall" || s == "exists";
  }

  void check_closed(const FoFormula& f, const SourceSpan& span) {
    std::vector<std::pair<std::string, Sort>> free;
    f.collect_free_variables(free);
    if (!free.empty())
      throw ParseError(span, "unbound variable " + free.front().first +
                                 " in a closed formula");
  }

  void parse_int_directive() {
    integer_vars.insert(expect(Tok::Variable).text);
    while (accept(Tok::Comma)) integer_vars.insert(expect(Tok::Variable).text);
    expect(Tok::Dot);
  }

  FoFormula parse_formula_file() {
    std::vector<FoFormula> statements;
    while (!at(Tok::End)) {
      if (at(Tok::Directive) && peek().text == "#int") {
        take();
        parse_int_directive();
        continue;
      }
      SourceSpan span = peek().span;
      FoFormula f = parse_formula_expr();
      expect(Tok::Dot);
      check_closed(f, span);
      statements.push_back(std::move(f));
    }
    if (statements.empty()) return FoFormula::top();
    return FoFormula::conj(std::move(statements));
  }

  ParsedTheory parse_theory_file() {
    ParsedTheory out;
    while (!at(Tok::End)) {
      if (at(Tok::Directive) && peek().text == "#int") {
        take();
        parse_int_directive();
        continue;
      }
      if (at(Tok::Directive) && peek().text == "#intensional") {
        take();
        out.intensional.push_back(parse_pred_spec());
        while (accept(Tok::Comma)) out.intensional.push_back(parse_pred_spec());
        expect(Tok::Dot);
        continue;
      }
      SourceSpan span = peek().span;
      FoFormula f = parse_formula_expr();
      expect(Tok::Dot);
      check_closed(f, span);
      out.sentences.push_back(std::move(f));
    }
    return out;
  }

 private:
  Lexer lexer_;
  std::size_t pos_ = 0;
};

}  // namespace

IoProgram ParsedProgram::to_io() const {
  if (has_directives)
    return IoProgram(program, placeholders, inputs, outputs);
  // Without declarations everything is an output.
  return IoProgram(program, {}, {}, program.predicate_symbols());
}

ParsedProgram parse_program(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  return parser.parse_program_file();
}

Input parse_input(const std::string& text, const IoProgram& io,
                  const std::string& file) {
  Parser parser(text, file);
  auto [valuation, atoms] = parser.parse_input_file();
  try {
    return Input(io, std::move(valuation), std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw ParseError({file, 0, 0, 1, 1}, e.what());
  }
}

AtomSet parse_atoms(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  return parser.parse_atom_file();
}

Term parse_term(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  Term t = parser.parse_term();
  if (!parser.at_end())
    throw ParseError(parser.peek().span, "trailing input after term");
  return t;
}

PrecomputedTerm parse_precomputed(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  Term t = parser.parse_precomputed_term();
  if (!parser.at_end())
    throw ParseError(parser.peek().span, "trailing input after term");
  return t.value();
}

FoFormula parse_formula(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  return parser.parse_formula_file();
}

ParsedTheory parse_theory(const std::string& text, const std::string& file) {
  Parser parser(text, file);
  return parser.parse_theory_file();
}

}  // namespace mgtc
