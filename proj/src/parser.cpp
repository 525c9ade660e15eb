// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/parser.hpp"

#include <memory>

#include "spre/region.hpp"

namespace spre {

namespace {

// Untyped tree for the inside of a formula bracket. Whether `&`, `|` and `~`
// denote logical or set operators is decided when the tree is converted.
struct Cst {
  enum class Kind { Attr, Ident, Number, Unary, Binary, Pow, Call, Exists };

  Kind kind;
  SourceSpan span;
  TokenKind op = TokenKind::Amp;
  std::vector<std::string> values;
  std::string name;
  double number = 0.0;
  std::vector<std::unique_ptr<Cst>> kids;
};

using CstPtr = std::unique_ptr<Cst>;

CstPtr node(Cst::Kind kind, SourceSpan span) {
  auto c = std::make_unique<Cst>();
  c->kind = kind;
  c->span = span;
  return c;
}

SourceSpan join(SourceSpan a, SourceSpan b) { return SourceSpan{a.begin, b.end}; }

bool is_relation(TokenKind k) {
  return k == TokenKind::Lt || k == TokenKind::Le || k == TokenKind::Gt || k == TokenKind::Ge ||
         k == TokenKind::Eq;
}

std::string describe(const Cst& c) {
  switch (c.kind) {
    case Cst::Kind::Attr: return "attribute class";
    case Cst::Kind::Ident: return "variable '" + c.name + "'";
    case Cst::Kind::Number: return "number";
    case Cst::Kind::Call:
    case Cst::Kind::Exists: return "'<" + c.name + ">'";
    case Cst::Kind::Pow: return "'^' expression";
    case Cst::Kind::Unary:
    case Cst::Kind::Binary: return std::string(token_kind_name(c.op)) + " expression";
  }
  return "expression";
}

class Parser {
public:
  Parser(const std::vector<Token>& tokens, ParseOptions options, std::vector<Diagnostic>& warnings)
    : toks_(tokens), options_(options), warnings_(warnings) {}

  QueryAst run() {
    if (toks_.empty()) throw SyntaxError("empty query", SourceSpan{0, 0}, {"'['", "'('"});
    RegexPtr root = alternation();
    if (!at_end()) {
      unexpected({"'|'", "'['", "'('", "'*'", "repetition range", "end of input"});
    }
    return QueryAst{std::move(root)};
  }

private:
  // Token access.

  bool at_end() const { return pos_ >= toks_.size(); }
  bool peek_is(TokenKind k, std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() && toks_[pos_ + ahead].kind == k;
  }
  const Token& take() { return toks_[pos_++]; }

  SourceSpan here() const {
    if (!at_end()) return toks_[pos_].span;
    std::size_t end = toks_.empty() ? 0 : toks_.back().span.end;
    return SourceSpan{end, end};
  }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    std::string found = at_end() ? "end of input" : std::string(token_kind_name(toks_[pos_].kind));
    std::string msg = "unexpected " + found + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw SyntaxError(msg, here(), std::move(expected));
  }

  const Token& expect(TokenKind k) {
    if (!peek_is(k)) unexpected({std::string(token_kind_name(k))});
    return take();
  }

  void repair(const std::string& note, SourceSpan span) {
    if (options_.strict) throw SyntaxError(note, span, {});
    warnings_.push_back(Diagnostic{note, span});
  }

  // Regex layer.

  RegexPtr alternation() {
    RegexPtr r = concatenation();
    while (peek_is(TokenKind::Pipe)) {
      take();
      r = regex_alt(std::move(r), concatenation());
    }
    return r;
  }

  RegexPtr concatenation() {
    RegexPtr r = postfix();
    while (peek_is(TokenKind::LBrack) || peek_is(TokenKind::LParen)) {
      r = regex_concat(std::move(r), postfix());
    }
    return r;
  }

  RegexPtr postfix() {
    RegexPtr r = regex_primary();
    while (true) {
      if (peek_is(TokenKind::Star)) {
        take();
        r = regex_star(std::move(r));
      } else if (peek_is(TokenKind::Range)) {
        const Token& t = take();
        std::optional<std::uint32_t> max;
        if (!t.range_unbounded) max = t.range_max;
        r = regex_range(std::move(r), t.range_min, max);
      } else {
        return r;
      }
    }
  }

  RegexPtr regex_primary() {
    if (peek_is(TokenKind::LBrack)) return formula_bracket();
    if (peek_is(TokenKind::LParen)) {
      take();
      if (peek_is(TokenKind::RParen)) {
        take();
        return regex_epsilon();
      }
      RegexPtr inner = alternation();
      expect(TokenKind::RParen);
      return inner;
    }
    if (peek_is(TokenKind::Attr)) {
      throw SyntaxError("attribute class must be enclosed in a formula bracket '[ ]'", here(), {"'['"});
    }
    unexpected({"'['", "'('"});
  }

  RegexPtr formula_bracket() {
    take();
    in_formula_ = true;
    CstPtr body = expr();
    if (peek_is(TokenKind::RParen)) {
      std::size_t n = 0;
      while (peek_is(TokenKind::RParen, n)) ++n;
      if (peek_is(TokenKind::RBrack, n)) {
        SourceSpan span = join(toks_[pos_].span, toks_[pos_ + n - 1].span);
        repair("dropped unmatched ')' before ']'", span);
        pos_ += n;
      }
    }
    if (!peek_is(TokenKind::RBrack)) {
      unexpected({"']'", "'&'", "'|'", "comparison", "arithmetic operator"});
    }
    take();
    in_formula_ = false;
    return regex_leaf(to_formula(*body));
  }

  // Formula bracket contents.

  void close_paren() {
    if (peek_is(TokenKind::RParen)) {
      take();
      return;
    }
    if (in_formula_ && peek_is(TokenKind::RBrack)) {
      repair("inserted missing ')' before ']'", here());
      return;
    }
    unexpected({"')'"});
  }

  CstPtr binary(TokenKind op, CstPtr lhs, CstPtr rhs) {
    auto c = node(Cst::Kind::Binary, join(lhs->span, rhs->span));
    c->op = op;
    c->kids.push_back(std::move(lhs));
    c->kids.push_back(std::move(rhs));
    return c;
  }

  CstPtr expr() {
    CstPtr c = conjunction();
    while (peek_is(TokenKind::Pipe)) {
      take();
      c = binary(TokenKind::Pipe, std::move(c), conjunction());
    }
    return c;
  }

  CstPtr conjunction() {
    CstPtr c = relation();
    while (peek_is(TokenKind::Amp)) {
      take();
      c = binary(TokenKind::Amp, std::move(c), relation());
    }
    return c;
  }

  CstPtr relation() {
    CstPtr c = sum();
    if (!at_end() && is_relation(toks_[pos_].kind)) {
      TokenKind op = take().kind;
      c = binary(op, std::move(c), sum());
      if (!at_end() && is_relation(toks_[pos_].kind)) {
        throw SyntaxError("comparisons do not chain; parenthesize and combine with '&'", here(), {});
      }
    }
    return c;
  }

  CstPtr sum() {
    CstPtr c = product();
    while (peek_is(TokenKind::Plus) || peek_is(TokenKind::Minus)) {
      TokenKind op = take().kind;
      c = binary(op, std::move(c), product());
    }
    return c;
  }

  CstPtr product() {
    CstPtr c = unary();
    while (peek_is(TokenKind::Star)) {
      take();
      c = binary(TokenKind::Star, std::move(c), unary());
    }
    return c;
  }

  CstPtr unary() {
    if (peek_is(TokenKind::Tilde) || peek_is(TokenKind::Minus)) {
      const Token& t = take();
      CstPtr inner = unary();
      auto c = node(Cst::Kind::Unary, join(t.span, inner->span));
      c->op = t.kind;
      c->kids.push_back(std::move(inner));
      return c;
    }
    return power();
  }

  CstPtr power() {
    CstPtr base = primary();
    if (!peek_is(TokenKind::Caret)) return base;
    take();
    bool negative = false;
    if (peek_is(TokenKind::Minus)) {
      take();
      negative = true;
    }
    if (!peek_is(TokenKind::Number)) unexpected({"number"});
    const Token& exp = take();
    auto c = node(Cst::Kind::Pow, join(base->span, exp.span));
    c->number = negative ? -exp.number : exp.number;
    c->kids.push_back(std::move(base));
    return c;
  }

  CstPtr primary() {
    if (at_end()) unexpected({"attribute class", "identifier", "number", "'('", "operator"});
    const Token& t = toks_[pos_];
    switch (t.kind) {
      case TokenKind::Attr: {
        take();
        if (t.recovered) repair(t.note, t.span);
        auto c = node(Cst::Kind::Attr, t.span);
        c->values = t.values;
        return c;
      }
      case TokenKind::Ident: {
        take();
        auto c = node(Cst::Kind::Ident, t.span);
        c->name = t.text;
        return c;
      }
      case TokenKind::Number: {
        take();
        auto c = node(Cst::Kind::Number, t.span);
        c->number = t.number;
        return c;
      }
      case TokenKind::LParen: {
        take();
        CstPtr inner = expr();
        close_paren();
        return inner;
      }
      case TokenKind::Angle: return t.text == "exists" ? exists() : call();
      default:
        unexpected({"attribute class", "identifier", "number", "'('", "operator"});
    }
  }

  CstPtr exists() {
    const Token& head = take();
    expect(TokenKind::LParen);
    const Token& var = expect(TokenKind::Ident);
    expect(TokenKind::Assign);
    if (!peek_is(TokenKind::Attr)) unexpected({"attribute class"});
    const Token& binder = take();
    if (binder.recovered) repair(binder.note, binder.span);
    close_paren();
    CstPtr body = unary();
    auto c = node(Cst::Kind::Exists, join(head.span, body->span));
    c->name = var.text;
    c->values = binder.values;
    c->kids.push_back(std::move(body));
    return c;
  }

  CstPtr call() {
    const Token& head = take();
    expect(TokenKind::LParen);
    auto c = node(Cst::Kind::Call, head.span);
    c->name = head.text;
    if (!peek_is(TokenKind::RParen)) {
      c->kids.push_back(expr());
      while (peek_is(TokenKind::Comma)) {
        take();
        c->kids.push_back(expr());
      }
    }
    c->span = join(head.span, here());
    close_paren();
    return c;
  }

  // Conversion by expected kind.

  static void arity(const Cst& c, std::size_t n) {
    if (c.kids.size() != n) {
      throw QueryError("'<" + c.name + ">' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") +
                           ", got " + std::to_string(c.kids.size()),
                       c.span);
    }
  }

  [[noreturn]] static void mismatch(const Cst& c, const char* wanted) {
    throw QueryError(describe(c) + " cannot be used as " + wanted, c.span);
  }

  FormulaPtr to_formula(const Cst& c) {
    switch (c.kind) {
      case Cst::Kind::Attr: return formula_atom(AttributePattern(c.values));
      case Cst::Kind::Exists:
        return formula_exists(c.name, AttributePattern(c.values), to_formula(*c.kids[0]));
      case Cst::Kind::Unary:
        if (c.op == TokenKind::Tilde) return formula_not(to_formula(*c.kids[0]));
        break;
      case Cst::Kind::Binary: {
        const Cst& l = *c.kids[0];
        const Cst& r = *c.kids[1];
        switch (c.op) {
          case TokenKind::Pipe: return formula_or(to_formula(l), to_formula(r));
          case TokenKind::Amp: return formula_and(to_formula(l), to_formula(r));
          case TokenKind::Le: return formula_less_eq(to_metric(l), to_metric(r));
          case TokenKind::Ge: return formula_less_eq(to_metric(r), to_metric(l));
          case TokenKind::Lt: return formula_less(to_metric(l), to_metric(r));
          case TokenKind::Gt: return formula_less(to_metric(r), to_metric(l));
          case TokenKind::Eq: return formula_equal(to_metric(l), to_metric(r));
          default: break;
        }
        break;
      }
      case Cst::Kind::Call: {
        if (c.name == "nonempty") {
          arity(c, 1);
          return formula_nonempty(to_term(*c.kids[0]));
        }
        if (c.name == "subset") {
          arity(c, 2);
          return formula_subset(to_term(*c.kids[0]), to_term(*c.kids[1]));
        }
        if (auto rel = positional(c)) return rel;
        break;
      }
      default: break;
    }
    mismatch(c, "a formula");
  }

  // Positional sugar compares hull centroids along one axis.
  FormulaPtr positional(const Cst& c) {
    const char* axis = nullptr;
    bool flip = false;
    if (c.name == "leftof") {
      axis = "y";
    } else if (c.name == "rightof") {
      axis = "y";
      flip = true;
    } else if (c.name == "frontof") {
      axis = "x";
      flip = true;
    } else if (c.name == "behind") {
      axis = "x";
    } else {
      return nullptr;
    }
    arity(c, 2);
    MetricPtr a = metric_call(axis, to_term(*c.kids[0]));
    MetricPtr b = metric_call(axis, to_term(*c.kids[1]));
    return flip ? formula_less(b, a) : formula_less(a, b);
  }

  TermPtr to_term(const Cst& c) {
    switch (c.kind) {
      case Cst::Kind::Attr: return term_atom(AttributePattern(c.values));
      case Cst::Kind::Ident: return term_var(c.name);
      case Cst::Kind::Unary:
        if (c.op == TokenKind::Tilde) return term_complement(to_term(*c.kids[0]));
        break;
      case Cst::Kind::Binary:
        if (c.op == TokenKind::Amp) return term_intersect(to_term(*c.kids[0]), to_term(*c.kids[1]));
        if (c.op == TokenKind::Pipe) return term_union(to_term(*c.kids[0]), to_term(*c.kids[1]));
        break;
      case Cst::Kind::Call:
        if (c.name == "interior") {
          arity(c, 1);
          return term_interior(to_term(*c.kids[0]));
        }
        if (c.name == "closure") {
          arity(c, 1);
          return term_closure(to_term(*c.kids[0]));
        }
        break;
      default: break;
    }
    mismatch(c, "a region");
  }

  MetricPtr to_metric(const Cst& c) {
    switch (c.kind) {
      case Cst::Kind::Number: return metric_const(c.number);
      case Cst::Kind::Pow: return metric_pow(to_metric(*c.kids[0]), c.number);
      case Cst::Kind::Unary:
        if (c.op == TokenKind::Minus) return metric_negate(to_metric(*c.kids[0]));
        break;
      case Cst::Kind::Binary:
        switch (c.op) {
          case TokenKind::Plus: return metric_add(to_metric(*c.kids[0]), to_metric(*c.kids[1]));
          case TokenKind::Minus:
            return metric_add(to_metric(*c.kids[0]), metric_negate(to_metric(*c.kids[1])));
          case TokenKind::Star: return metric_mul(to_metric(*c.kids[0]), to_metric(*c.kids[1]));
          default: break;
        }
        break;
      case Cst::Kind::Call:
        if (auto n = metric_arity(c.name)) {
          arity(c, static_cast<std::size_t>(*n));
          if (*n == 1) return metric_call(c.name, to_term(*c.kids[0]));
          return metric_call(c.name, to_term(*c.kids[0]), to_term(*c.kids[1]));
        }
        break;
      default: break;
    }
    mismatch(c, "a number");
  }

  const std::vector<Token>& toks_;
  ParseOptions options_;
  std::vector<Diagnostic>& warnings_;
  std::size_t pos_ = 0;
  bool in_formula_ = false;
};

}  // namespace

ParseResult parse(const std::vector<Token>& tokens, ParseOptions options) {
  ParseResult result;
  result.ast = Parser(tokens, options, result.warnings).run();
  return result;
}

QueryAst parse_query(std::string_view text, std::vector<Diagnostic>* warnings, ParseOptions options) {
  ParseResult result = parse(tokenize(text), options);
  if (warnings) warnings->insert(warnings->end(), result.warnings.begin(), result.warnings.end());
  return std::move(result.ast);
}

}  // namespace spre
