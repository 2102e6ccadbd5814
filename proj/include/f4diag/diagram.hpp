#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "f4diag/ratfield.hpp"

namespace f4 {

enum class TermKind { Id, Merge, Split, Cup, Cap, Cross, Compose, Tensor };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// A string diagram as a compositional term. Terms are only built through the
// free functions below, which keep them in normal form: nested compositions
// and tensors are flattened, identities are absorbed, and adjacent identity
// strands in a tensor are fused. Two terms are structurally identical iff
// their canonical strings agree.
class Term {
 public:
  TermKind kind() const { return kind_; }
  int source() const { return source_; }
  int target() const { return target_; }
  // Compose: in application order (first applied first). Tensor: left to right.
  const std::vector<TermPtr>& parts() const { return parts_; }
  const std::string& str() const { return text_; }
  bool is_id() const { return kind_ == TermKind::Id; }

  Term(TermKind kind, int source, int target, std::vector<TermPtr> parts);

 private:
  TermKind kind_;
  int source_;
  int target_;
  std::vector<TermPtr> parts_;
  std::string text_;
};

inline bool same_term(const TermPtr& a, const TermPtr& b) { return a == b || a->str() == b->str(); }

struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

TermPtr id_term(int n);
TermPtr merge_term();
TermPtr split_term();
TermPtr cup_term();
TermPtr cap_term();
TermPtr cross_term();
// Parts in application order; throws ArityError on a mismatch.
TermPtr compose_terms(const std::vector<TermPtr>& parts);
TermPtr tensor_terms(const std::vector<TermPtr>& parts);
TermPtr mirror(const TermPtr& t);

// Formal linear combination of terms with equal arities and coefficients in
// Q(alpha, delta). Duplicate terms are merged and zero coefficients dropped.
class Combo {
 public:
  using Entry = std::pair<RatFunc, TermPtr>;

  Combo(int source, int target);
  Combo(const TermPtr& t, const RatFunc& c = RatFunc(1));

  int source() const { return source_; }
  int target() const { return target_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Combo& add(const RatFunc& c, const TermPtr& t);
  Combo& operator+=(const Combo& b);
  Combo& operator-=(const Combo& b);
  Combo& operator*=(const RatFunc& c);
  friend Combo operator+(Combo a, const Combo& b) { return a += b; }
  friend Combo operator-(Combo a, const Combo& b) { return a -= b; }
  friend Combo operator*(const RatFunc& c, Combo a) { return a *= c; }
  Combo operator-() const;

  // Same arities and the same coefficient on every term.
  friend bool operator==(const Combo& a, const Combo& b);

  // Serialization in the expression grammar; parse_diagram reads it back.
  std::string str() const;

 private:
  int source_;
  int target_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  TermPtr witness_;  // keeps the arity printable when every term cancels
};

// f applied first, then g.
Combo then(const Combo& f, const Combo& g);
Combo then(const std::vector<Combo>& chain);
Combo tensor(const Combo& f, const Combo& g);
Combo tensor(const std::vector<Combo>& parts);

// (id(m) @ cup) ; (id(1) @ f @ id(1)) ; (cap @ id(n)) for f: m -> n
Combo rot(const Combo& f);
// cross ; f, for f with source 2
Combo switch_op(const Combo& f);
Combo mirror(const Combo& f);
// Trace closure of an endomorphism m -> m: nested cups, f on the left strands, nested caps.
Combo closure(const Combo& f);

// Permutation diagram sending bottom position j to top position perm[j],
// built from the lexicographically first reduced word. Also returns the length.
std::pair<TermPtr, int> permutation_term(const std::vector<int>& perm);
Combo symmetrizer(int n, bool anti);

// The distinguished diagrams and idempotents (see diagram.cpp for wiring).
Combo build_named(std::string_view name);
std::vector<std::string> named_diagrams();
std::vector<Combo> bigfive();
std::vector<Combo> brutal();

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument("parse error at " + std::to_string(pos) + ": " + what), position(pos) {}
  std::size_t position;
};

struct ExprArityError : ArityError {
  ExprArityError(const std::string& what, std::size_t pos)
      : ArityError("arity error at " + std::to_string(pos) + ": " + what), position(pos) {}
  std::size_t position;
};

Combo parse_diagram(std::string_view text);

}  // namespace f4
