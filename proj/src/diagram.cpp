#include "f4diag/diagram.hpp"

#include <algorithm>
#include <numeric>

namespace f4 {

namespace {

std::string render(TermKind kind, int source, const std::vector<TermPtr>& parts) {
  switch (kind) {
    case TermKind::Id: return "id(" + std::to_string(source) + ")";
    case TermKind::Merge: return "merge";
    case TermKind::Split: return "split";
    case TermKind::Cup: return "cup";
    case TermKind::Cap: return "cap";
    case TermKind::Cross: return "cross";
    case TermKind::Compose: {
      std::string s;
      for (const auto& p : parts) s += (s.empty() ? "" : " ; ") + p->str();
      return s;
    }
    case TermKind::Tensor: {
      std::string s;
      for (const auto& p : parts) {
        const bool wrap = p->kind() == TermKind::Compose;
        s += (s.empty() ? "" : " @ ") + (wrap ? "(" + p->str() + ")" : p->str());
      }
      return s;
    }
  }
  return {};
}

TermPtr atom(TermKind kind, int source, int target) {
  return std::make_shared<const Term>(kind, source, target, std::vector<TermPtr>{});
}

}  // namespace

Term::Term(TermKind kind, int source, int target, std::vector<TermPtr> parts)
    : kind_(kind), source_(source), target_(target), parts_(std::move(parts)) {
  text_ = render(kind_, source_, parts_);
}

TermPtr id_term(int n) {
  if (n < 0) throw ArityError("id: negative strand count");
  return atom(TermKind::Id, n, n);
}
TermPtr merge_term() { return atom(TermKind::Merge, 2, 1); }
TermPtr split_term() { return atom(TermKind::Split, 1, 2); }
TermPtr cup_term() { return atom(TermKind::Cup, 0, 2); }
TermPtr cap_term() { return atom(TermKind::Cap, 2, 0); }
TermPtr cross_term() { return atom(TermKind::Cross, 2, 2); }

TermPtr compose_terms(const std::vector<TermPtr>& parts) {
  if (parts.empty()) throw ArityError("empty composition");
  std::vector<TermPtr> flat;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0 && parts[i - 1]->target() != parts[i]->source())
      throw ArityError("cannot compose '" + parts[i - 1]->str() + "' (target " + std::to_string(parts[i - 1]->target()) +
                       ") with '" + parts[i]->str() + "' (source " + std::to_string(parts[i]->source()) + ")");
    if (parts[i]->kind() == TermKind::Compose)
      flat.insert(flat.end(), parts[i]->parts().begin(), parts[i]->parts().end());
    else if (!parts[i]->is_id())
      flat.push_back(parts[i]);
  }
  if (flat.empty()) return id_term(parts.front()->source());
  if (flat.size() == 1) return flat.front();
  const int s = flat.front()->source(), t = flat.back()->target();
  return std::make_shared<const Term>(TermKind::Compose, s, t, std::move(flat));
}

TermPtr tensor_terms(const std::vector<TermPtr>& parts) {
  std::vector<TermPtr> flat;
  auto push = [&](const TermPtr& p) {
    if (p->is_id()) {
      if (p->source() == 0) return;
      if (!flat.empty() && flat.back()->is_id()) {
        flat.back() = id_term(flat.back()->source() + p->source());
        return;
      }
    }
    flat.push_back(p);
  };
  for (const auto& p : parts) {
    if (p->kind() == TermKind::Tensor)
      for (const auto& q : p->parts()) push(q);
    else
      push(p);
  }
  if (flat.empty()) return id_term(0);
  if (flat.size() == 1) return flat.front();
  int s = 0, t = 0;
  for (const auto& p : flat) {
    s += p->source();
    t += p->target();
  }
  return std::make_shared<const Term>(TermKind::Tensor, s, t, std::move(flat));
}

TermPtr mirror(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Id: return t;
    case TermKind::Merge: return split_term();
    case TermKind::Split: return merge_term();
    case TermKind::Cup: return cap_term();
    case TermKind::Cap: return cup_term();
    case TermKind::Cross: return t;
    case TermKind::Compose: {
      std::vector<TermPtr> parts;
      for (auto it = t->parts().rbegin(); it != t->parts().rend(); ++it) parts.push_back(mirror(*it));
      return compose_terms(parts);
    }
    case TermKind::Tensor: {
      std::vector<TermPtr> parts;
      for (const auto& p : t->parts()) parts.push_back(mirror(p));
      return tensor_terms(parts);
    }
  }
  return t;
}

// ---- Combo ---------------------------------------------------------------

namespace {

// Some term of the given arity, used only to print zero combinations.
TermPtr placeholder_term(int m, int n) {
  if (m == 0 && n == 0) return id_term(0);
  std::vector<TermPtr> chain;
  if (m == 0) {
    chain = {cup_term(), merge_term()};
  } else {
    for (int w = m; w > 1; --w) chain.push_back(tensor_terms({merge_term(), id_term(w - 2)}));
  }
  if (n == 0) {
    chain.push_back(split_term());
    chain.push_back(cap_term());
  } else {
    for (int w = 1; w < n; ++w) chain.push_back(tensor_terms({split_term(), id_term(w - 1)}));
  }
  if (chain.empty()) return id_term(1);
  return compose_terms(chain);
}

std::string coeff_text(const RatFunc& c, bool leading, bool& negative) {
  negative = false;
  if (c.is_constant()) {
    Rational v = c.constant();
    if (!leading && v.sign() < 0) {
      negative = true;
      v = -v;
    }
    return v.str();
  }
  return "{" + c.str() + "}";
}

}  // namespace

Combo::Combo(int source, int target) : source_(source), target_(target) {}

Combo::Combo(const TermPtr& t, const RatFunc& c) : source_(t->source()), target_(t->target()), witness_(t) { add(c, t); }

Combo& Combo::add(const RatFunc& c, const TermPtr& t) {
  if (t->source() != source_ || t->target() != target_)
    throw ArityError("cannot add '" + t->str() + "' (" + std::to_string(t->source()) + "->" +
                     std::to_string(t->target()) + ") to a " + std::to_string(source_) + "->" +
                     std::to_string(target_) + " combination");
  if (!witness_) witness_ = t;
  if (c.is_zero()) return *this;
  auto it = index_.find(t->str());
  if (it == index_.end()) {
    index_.emplace(t->str(), entries_.size());
    entries_.emplace_back(c, t);
    return *this;
  }
  RatFunc& slot = entries_[it->second].first;
  slot += c;
  if (slot.is_zero()) {
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(it->second));
    index_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].second->str(), i);
  }
  return *this;
}

Combo& Combo::operator+=(const Combo& b) {
  if (b.source_ != source_ || b.target_ != target_)
    throw ArityError("cannot add a " + std::to_string(b.source_) + "->" + std::to_string(b.target_) + " combination to a " +
                     std::to_string(source_) + "->" + std::to_string(target_) + " combination");
  if (!witness_) witness_ = b.witness_;
  for (const auto& [c, t] : b.entries_) add(c, t);
  return *this;
}

Combo& Combo::operator-=(const Combo& b) { return *this += -b; }

Combo& Combo::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    entries_.clear();
    index_.clear();
    return *this;
  }
  for (auto& e : entries_) e.first *= c;
  return *this;
}

Combo Combo::operator-() const {
  Combo r = *this;
  for (auto& e : r.entries_) e.first = -e.first;
  return r;
}

bool operator==(const Combo& a, const Combo& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_ || a.entries_.size() != b.entries_.size()) return false;
  for (const auto& [c, t] : a.entries_) {
    auto it = b.index_.find(t->str());
    if (it == b.index_.end() || !(b.entries_[it->second].first == c)) return false;
  }
  return true;
}

std::string Combo::str() const {
  auto term_text = [](const TermPtr& t) {
    const bool wrap = t->kind() == TermKind::Compose || t->kind() == TermKind::Tensor;
    return wrap ? "(" + t->str() + ")" : t->str();
  };
  if (entries_.empty()) return "0 * " + term_text(witness_ ? witness_ : placeholder_term(source_, target_));
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    bool negative = false;
    const std::string c = coeff_text(entries_[i].first, i == 0, negative);
    if (i > 0) s += negative ? " - " : " + ";
    s += c + " * " + term_text(entries_[i].second);
  }
  return s;
}

Combo then(const Combo& f, const Combo& g) {
  if (f.target() != g.source())
    throw ArityError("cannot compose a " + std::to_string(f.source()) + "->" + std::to_string(f.target()) +
                     " diagram with a " + std::to_string(g.source()) + "->" + std::to_string(g.target()) + " diagram");
  Combo r(f.source(), g.target());
  for (const auto& [cf, tf] : f.entries())
    for (const auto& [cg, tg] : g.entries()) r.add(cf * cg, compose_terms({tf, tg}));
  return r;
}

Combo then(const std::vector<Combo>& chain) {
  if (chain.empty()) throw ArityError("empty composition");
  Combo r = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) r = then(r, chain[i]);
  return r;
}

Combo tensor(const Combo& f, const Combo& g) {
  Combo r(f.source() + g.source(), f.target() + g.target());
  for (const auto& [cf, tf] : f.entries())
    for (const auto& [cg, tg] : g.entries()) r.add(cf * cg, tensor_terms({tf, tg}));
  return r;
}

Combo tensor(const std::vector<Combo>& parts) {
  Combo r(id_term(0));
  for (const auto& p : parts) r = tensor(r, p);
  return r;
}

Combo rot(const Combo& f) {
  const int m = f.source(), n = f.target();
  if (m < 1 || n < 1) throw ArityError("rot needs at least one strand on each side");
  const Combo pre(tensor_terms({id_term(m), cup_term()}));
  const Combo post(tensor_terms({cap_term(), id_term(n)}));
  return then({pre, tensor({Combo(id_term(1)), f, Combo(id_term(1))}), post});
}

Combo switch_op(const Combo& f) {
  if (f.source() != 2) throw ArityError("switch needs a diagram with two bottom strands");
  return then(Combo(cross_term()), f);
}

Combo mirror(const Combo& f) {
  Combo r(f.target(), f.source());
  for (const auto& [c, t] : f.entries()) r.add(c, mirror(t));
  return r;
}

Combo closure(const Combo& f) {
  const int m = f.source();
  if (f.target() != m) throw ArityError("closure needs an endomorphism");
  if (m == 0) return f;
  std::vector<TermPtr> cups{cup_term()}, caps;
  for (int k = 1; k < m; ++k) cups.push_back(tensor_terms({id_term(k), cup_term(), id_term(k)}));
  for (int k = m - 1; k >= 1; --k) caps.push_back(tensor_terms({id_term(k), cap_term(), id_term(k)}));
  caps.push_back(cap_term());
  return then({Combo(compose_terms(cups)), tensor(f, Combo(id_term(m))), Combo(compose_terms(caps))});
}

std::pair<TermPtr, int> permutation_term(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> labels = perm;
  std::vector<TermPtr> layers;
  for (;;) {
    int i = 0;
    while (i + 1 < n && labels[static_cast<std::size_t>(i)] < labels[static_cast<std::size_t>(i + 1)]) ++i;
    if (i + 1 >= n) break;
    std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(i + 1)]);
    layers.push_back(tensor_terms({id_term(i), cross_term(), id_term(n - i - 2)}));
  }
  const int length = static_cast<int>(layers.size());
  if (layers.empty()) return {id_term(n), 0};
  return {compose_terms(layers), length};
}

Combo symmetrizer(int n, bool anti) {
  if (n < 1) throw ArityError("symmetrizer needs at least one strand");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rational fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  const Rational w = fact.inverse();
  Combo r(n, n);
  do {
    auto [t, len] = permutation_term(perm);
    r.add(RatFunc(anti && (len % 2) ? -w : w), t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

// ---- named diagrams ------------------------------------------------------
//
// Two-strand diagrams read bottom to top:
//   H         two vertical strands joined by a horizontal rung
//   I         merge then split (vertical rung)
//   dotcross  the rung diagram with its bottom strands crossed
// The 2 -> 3 diagrams have boundary points B1, T1, T2, T3, B2 in cyclic order
// (bottom left, top left to right, bottom right).
//   pentagon  five vertices on a cycle, one leg to each boundary point
//   brutal[0..4]   planar trees; the middle leaf is T2, T3, T1, B2, B1
//   brutal[5..9]   a strand or cap joining cyclically adjacent points plus a
//                  vertex on the other three: cap(B1,B2), B1-T1, B2-T3,
//                  cup(T1,T2), cup(T2,T3)
//   brutal[10..14] the same with non-adjacent points: cup(T1,T3), B2-T2,
//                  B1-T2, B1-T3, B2-T1

namespace {

struct NamedEntry {
  const char* name;
  const char* expr;
};

const NamedEntry kNamed[] = {
    {"jail", "id(2)"},
    {"hourglass", "cap ; cup"},
    {"cross", "cross"},
    {"H", "(split @ id(1)) ; (id(1) @ merge)"},
    {"I", "merge ; split"},
    {"dotcross", "cross ; (split @ id(1)) ; (id(1) @ merge)"},
    {"triangle", "(split @ id(1)) ; (id(1) @ merge) ; merge"},
    {"square", "(split @ id(1)) ; (id(1) @ merge) ; (split @ id(1)) ; (id(1) @ merge)"},
    {"pentagon", "(split @ split) ; (id(1) @ cap @ id(1)) ; (split @ split) ; (id(1) @ merge @ id(1))"},
    {"loop", "split ; merge"},
    {"bubble", "cup ; cap"},
    {"lollipop", "cup ; merge"},
    {"sym2", "sym(2)"},
    {"asym2", "asym(2)"},
    {"e0", "{1/d} * (cap ; cup)"},
    {"e1", "{8/(d+10)} * (asym(2) + {(d+2)/(4*a)} * (asym(2) ; named(H)))"},
    {"e3", "{(d+2)/(d+10)} * (asym(2) - {2/a} * (asym(2) ; named(H)))"},
    {"e4", "{1/a} * (merge ; split)"},
    {"etilde", "sym(2) - {1/d} * (cap ; cup) - {1/a} * (merge ; split)"},
    {"bigfive[0]", "named(jail)"},
    {"bigfive[1]", "named(hourglass)"},
    {"bigfive[2]", "named(cross)"},
    {"bigfive[3]", "named(H)"},
    {"bigfive[4]", "named(I)"},
    {"brutal[0]", "(split @ split) ; (id(1) @ merge @ id(1))"},
    {"brutal[1]", "merge ; split ; (split @ id(1))"},
    {"brutal[2]", "merge ; split ; (id(1) @ split)"},
    {"brutal[3]", "(split @ id(1)) ; (id(1) @ merge) ; (id(1) @ split)"},
    {"brutal[4]", "(id(1) @ split) ; (merge @ id(1)) ; (split @ id(1))"},
    {"brutal[5]", "cap ; cup ; (id(1) @ split)"},
    {"brutal[6]", "id(1) @ split"},
    {"brutal[7]", "split @ id(1)"},
    {"brutal[8]", "merge ; (cup @ id(1))"},
    {"brutal[9]", "merge ; (id(1) @ cup)"},
    {"brutal[10]", "merge ; (cup @ id(1)) ; (id(1) @ cross)"},
    {"brutal[11]", "(split @ id(1)) ; (id(1) @ cross)"},
    {"brutal[12]", "(id(1) @ split) ; (cross @ id(1))"},
    {"brutal[13]", "cross ; (split @ id(1))"},
    {"brutal[14]", "cross ; (id(1) @ split)"},
    // planar tree with middle leaf T2 and leaf pairs {B2,T1}, {B1,T3}
    {"spike", "cross ; named(brutal[0])"},
    // e1 (x) e1 with the inner strands capped and the outer ones merged
    {"sack", "(named(e1) @ named(e1)) ; (id(1) @ cap @ id(1)) ; merge"},
    {"sack_plain", "(id(1) @ cap @ id(1)) ; merge"},
    {"twentysix", "split ; (id(1) @ cup @ id(1)) ; (named(e1) @ named(e1)) ; (id(1) @ cap @ id(1)) ; merge"},
    {"twentysix_asym", "split ; (id(1) @ cup @ id(1)) ; (asym(2) @ asym(2)) ; (id(1) @ cap @ id(1)) ; merge"},
    {"merge_bridge", "asym(2) ; named(H)"},
};

}  // namespace

Combo build_named(std::string_view name) {
  for (const auto& e : kNamed)
    if (name == e.name) return parse_diagram(e.expr);
  throw std::invalid_argument("unknown diagram name '" + std::string(name) + "'");
}

std::vector<std::string> named_diagrams() {
  std::vector<std::string> out;
  for (const auto& e : kNamed) out.emplace_back(e.name);
  return out;
}

std::vector<Combo> bigfive() {
  std::vector<Combo> out;
  for (int i = 0; i < 5; ++i) out.push_back(build_named("bigfive[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Combo> brutal() {
  std::vector<Combo> out;
  for (int i = 0; i < 15; ++i) out.push_back(build_named("brutal[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace f4
