// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "spre/lexer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>

namespace spre {

namespace {

constexpr std::array<std::string_view, 16> kAngleNames = {
    "nonempty", "exists", "subset", "interior", "closure", "area",    "volume", "x",
    "y",        "z",      "dist",   "iou",      "leftof",  "rightof", "frontof", "behind",
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && space(s[b])) ++b;
  while (e > b && space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

Token make_token(TokenKind kind, SourceSpan span, std::string text) {
  Token t{};
  t.kind = kind;
  t.span = span;
  t.text = std::move(text);
  return t;
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && space(src_[pos_])) ++pos_;
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what, std::size_t begin, std::size_t end) const {
    throw QueryError(what, SourceSpan{begin, end});
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  Token simple(TokenKind kind, std::size_t width) {
    Token t = make_token(kind, SourceSpan{pos_, pos_ + width}, std::string(src_.substr(pos_, width)));
    pos_ += width;
    return t;
  }

  Token next() {
    const char c = peek();
    switch (c) {
      case '[': return peek(1) == ':' ? attr() : simple(TokenKind::LBrack, 1);
      case ']': return simple(TokenKind::RBrack, 1);
      case '(': return simple(TokenKind::LParen, 1);
      case ')': return simple(TokenKind::RParen, 1);
      case '|': return simple(TokenKind::Pipe, 1);
      case '&': return simple(TokenKind::Amp, 1);
      case '~': return simple(TokenKind::Tilde, 1);
      case '*': return simple(TokenKind::Star, 1);
      case '+': return simple(TokenKind::Plus, 1);
      case '-': return simple(TokenKind::Minus, 1);
      case '^': return simple(TokenKind::Caret, 1);
      case ',': return simple(TokenKind::Comma, 1);
      case '=': return simple(TokenKind::Eq, 1);
      case '{': return range();
      case '>': return peek(1) == '=' ? simple(TokenKind::Ge, 2) : simple(TokenKind::Gt, 1);
      case ':':
        if (peek(1) == '=') return simple(TokenKind::Assign, 2);
        fail("unexpected ':'", pos_, pos_ + 1);
      case '<': return angle_or_less();
      default: break;
    }
    if (digit(c)) return number();
    if (ident_start(c)) {
      std::size_t begin = pos_;
      while (ident_char(peek())) ++pos_;
      return make_token(TokenKind::Ident, SourceSpan{begin, pos_}, std::string(src_.substr(begin, pos_ - begin)));
    }
    fail(std::string("unexpected character '") + c + "'", pos_, pos_ + 1);
  }

  Token attr() {
    const std::size_t begin = pos_;
    pos_ += 2;
    const std::size_t body = pos_;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated attribute class", begin, pos_);
      const char ch = src_[pos_];
      if (ch == ':' && peek(1) == ']') break;
      if (ch == ']') break;
      if (ch == ':' || ch == '[') fail(std::string("unexpected '") + ch + "' in attribute class", pos_, pos_ + 1);
      ++pos_;
    }
    Token t = make_token(TokenKind::Attr, {}, {});
    std::string_view content = src_.substr(body, pos_ - body);
    if (src_[pos_] == ']') {
      t.recovered = true;
      t.note = "attribute class closed without ':'";
      pos_ += 1;
    } else {
      pos_ += 2;
    }
    t.span = SourceSpan{begin, pos_};

    std::size_t start = 0;
    while (true) {
      std::size_t comma = content.find(',', start);
      std::string value = trim(content.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (value.empty()) fail("empty attribute name", begin, pos_);
      t.values.push_back(std::move(value));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (i) t.text += ',';
      t.text += t.values[i];
    }
    return t;
  }

  Token angle_or_less() {
    const std::size_t begin = pos_;
    std::size_t i = pos_ + 1;
    if (i < src_.size() && ident_start(src_[i])) {
      while (i < src_.size() && ident_char(src_[i])) ++i;
      if (i < src_.size() && src_[i] == '>') {
        std::string name(src_.substr(begin + 1, i - begin - 1));
        if (!is_known_angle_name(name)) fail("unknown operator '<" + name + ">'", begin, i + 1);
        pos_ = i + 1;
        return make_token(TokenKind::Angle, SourceSpan{begin, pos_}, std::move(name));
      }
    }
    return peek(1) == '=' ? simple(TokenKind::Le, 2) : simple(TokenKind::Lt, 1);
  }

  Token number() {
    const std::size_t begin = pos_;
    while (digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (digit(peek())) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!digit(peek())) {
        pos_ = save;
      } else {
        while (digit(peek())) ++pos_;
      }
    }
    Token t = make_token(TokenKind::Number, SourceSpan{begin, pos_}, std::string(src_.substr(begin, pos_ - begin)));
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
      fail("numeric literal out of range", begin, pos_);
    }
    return t;
  }

  unsigned range_bound(std::size_t begin) {
    const std::size_t start = pos_;
    while (digit(peek())) ++pos_;
    if (start == pos_) fail("expected a repetition count", begin, pos_ + 1);
    unsigned value = 0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc()) fail("repetition count too large", start, pos_);
    return value;
  }

  void skip_space() {
    while (space(peek())) ++pos_;
  }

  Token range() {
    const std::size_t begin = pos_;
    ++pos_;
    Token t = make_token(TokenKind::Range, {}, {});
    skip_space();
    t.range_min = range_bound(begin);
    t.range_max = t.range_min;
    skip_space();
    if (peek() == ',') {
      ++pos_;
      skip_space();
      if (peek() == '}') {
        t.range_unbounded = true;
      } else {
        t.range_max = range_bound(begin);
        skip_space();
      }
    }
    if (peek() != '}') fail("unterminated repetition range", begin, pos_);
    ++pos_;
    t.span = SourceSpan{begin, pos_};
    t.text = std::string(src_.substr(begin, pos_ - begin));
    if (!t.range_unbounded && t.range_max < t.range_min) {
      fail("repetition range has max below min", begin, pos_);
    }
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::LBrack: return "'['";
    case TokenKind::RBrack: return "']'";
    case TokenKind::Attr: return "attribute class";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::Comma: return "','";
    case TokenKind::Assign: return "':='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Eq: return "'='";
    case TokenKind::Number: return "number";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Angle: return "operator";
    case TokenKind::Range: return "repetition range";
  }
  return "token";
}

bool is_known_angle_name(std::string_view name) {
  return std::find(kAngleNames.begin(), kAngleNames.end(), name) != kAngleNames.end();
}

std::vector<Token> tokenize(std::string_view query) { return Lexer(query).run(); }

}  // namespace spre
