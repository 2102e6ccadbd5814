// Recursive-descent parser for the diagram expression language.
//
//   sum     := ['-'] compose (('+' | '-') compose)*
//   compose := tensor (';' tensor)*          f ; g applies f first
//   tensor  := scaled ('@' scaled)*
//   scaled  := coeff '*' scaled | primary
//   coeff   := p | p/q | '{' ratfunc '}'
//   primary := '(' sum ')' | atom
//   atom    := id(N) | merge | split | cup | cap | cross | sym(N) | asym(N) | named(NAME)

#include <cctype>

#include "f4diag/diagram.hpp"

namespace f4 {
namespace {

constexpr int kMaxSymmetrizer = 7;

struct Node {
  Combo value;
  std::size_t start;
  std::size_t end;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Combo run() {
    Node n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n.value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string snippet(const Node& n) const { return std::string(s_.substr(n.start, n.end - n.start)); }
  static std::string arity(const Combo& c) {
    return std::to_string(c.source()) + "->" + std::to_string(c.target());
  }

  Node sum() {
    skip();
    const std::size_t start = pos_;
    const bool negate = eat('-');
    Node acc = compose();
    if (negate) acc.value = -acc.value;
    acc.start = start;
    for (;;) {
      skip();
      const std::size_t op = pos_;
      const bool plus = eat('+');
      if (!plus && !eat('-')) return acc;
      Node rhs = compose();
      if (rhs.value.source() != acc.value.source() || rhs.value.target() != acc.value.target())
        throw ExprArityError("cannot add '" + snippet(acc) + "' (" + arity(acc.value) + ") and '" + snippet(rhs) + "' (" +
                                 arity(rhs.value) + ")",
                             op);
      if (plus)
        acc.value += rhs.value;
      else
        acc.value -= rhs.value;
      acc.end = rhs.end;
    }
  }

  Node compose() {
    Node acc = tensor();
    for (;;) {
      skip();
      const std::size_t op = pos_;
      if (!eat(';')) return acc;
      Node rhs = tensor();
      if (acc.value.target() != rhs.value.source())
        throw ExprArityError("cannot compose '" + snippet(acc) + "' (" + arity(acc.value) + ") with '" + snippet(rhs) +
                                 "' (" + arity(rhs.value) + ")",
                             op);
      acc.value = then(acc.value, rhs.value);
      acc.end = rhs.end;
    }
  }

  Node tensor() {
    Node acc = scaled();
    while (eat('@')) {
      Node rhs = scaled();
      acc.value = f4::tensor(acc.value, rhs.value);
      acc.end = rhs.end;
    }
    return acc;
  }

  Node scaled() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '{')) {
      RatFunc c = coeff();
      expect('*');
      Node inner = scaled();
      inner.value *= c;
      inner.start = start;
      return inner;
    }
    return primary();
  }

  RatFunc coeff() {
    if (eat('{')) {
      const std::size_t open = pos_;
      const std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) fail("unterminated '{'");
      try {
        RatFunc c = RatFunc::parse(s_.substr(open, close - open));
        pos_ = close + 1;
        return c;
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad coefficient: ") + e.what(), open);
      }
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (den == pos_) fail("expected denominator");
    }
    try {
      return RatFunc(Rational::parse(s_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational literal", start);
    }
  }

  int count_arg() {
    expect('(');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected strand count");
    if (pos_ - start > 3) throw ParseError("strand count too large", start);
    const int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    expect(')');
    return n;
  }

  Node primary() {
    skip();
    const std::size_t start = pos_;
    if (eat('(')) {
      Node inner = sum();
      expect(')');
      return {inner.value, start, pos_};
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view word = s_.substr(start, pos_ - start);
    if (word.empty()) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
    auto done = [&](Combo c) { return Node{std::move(c), start, pos_}; };
    if (word == "merge") return done(Combo(merge_term()));
    if (word == "split") return done(Combo(split_term()));
    if (word == "cup") return done(Combo(cup_term()));
    if (word == "cap") return done(Combo(cap_term()));
    if (word == "cross") return done(Combo(cross_term()));
    if (word == "id") return done(Combo(id_term(count_arg())));
    if (word == "sym" || word == "asym") {
      const std::size_t at = pos_;
      const int n = count_arg();
      if (n < 1 || n > kMaxSymmetrizer) throw ParseError("symmetrizer size must be 1.." + std::to_string(kMaxSymmetrizer), at);
      return done(symmetrizer(n, word == "asym"));
    }
    if (word == "named") {
      expect('(');
      skip();
      const std::size_t name_start = pos_;
      const std::size_t close = s_.find(')', pos_);
      if (close == std::string_view::npos) fail("unterminated named(");
      std::string_view name = s_.substr(name_start, close - name_start);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
      pos_ = close + 1;
      try {
        return done(build_named(name));
      } catch (const ParseError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), name_start);
      }
    }
    pos_ = start;
    fail("unknown atom '" + std::string(word) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Combo parse_diagram(std::string_view text) { return Parser(text).run(); }

}  // namespace f4
