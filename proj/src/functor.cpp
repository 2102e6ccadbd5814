#include "f4diag/functor.hpp"

#include <stdexcept>

namespace f4 {

Functor::Functor() : basis_(&basis_data()) {
  const BasisData& bd = *basis_;
  const int n = kLegDim;
  gens_.merge_t = ExactTensor({n, n, n});
  gens_.split_t = ExactTensor({n, n, n});
  gens_.cup_t = ExactTensor({n, n});
  gens_.cap_t = ExactTensor({n, n});
  merge_.resize(static_cast<std::size_t>(n * n));
  split_.resize(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gens_.cap_t.at({i, j}) = bd.gram(i, j);
      gens_.cup_t.at({i, j}) = bd.gram_inv(i, j);
      if (!bd.gram_inv(i, j).is_zero()) cup_.emplace_back(i, j, bd.gram_inv(i, j));
    }

  // merge: coordinates of pi(b_i o b_j); T_ijk = B(b_i o b_j, b_k) follows by
  // lowering with the Gram matrix since every b_k is traceless.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const RatVector c = coords_v(project_v(jordan(bd.basis[static_cast<std::size_t>(i)], bd.basis[static_cast<std::size_t>(j)])));
      const RatVector lowered = bd.gram.transpose() * c;
      for (int k = 0; k < n; ++k) {
        if (!c(k).is_zero()) {
          gens_.merge_t.at({k, i, j}) = c(k);
          gens_.merge_t.at({k, j, i}) = c(k);
          merge_[static_cast<std::size_t>(i * n + j)].emplace_back(k, c(k));
          if (i != j) merge_[static_cast<std::size_t>(j * n + i)].emplace_back(k, c(k));
        }
      }
      for (int k = 0; k < n; ++k) {
        if (lowered(k).is_zero()) continue;
        vertex_.emplace_back(i, j, k, lowered(k));
        if (i != j) vertex_.emplace_back(j, i, k, lowered(k));
      }
    }

  // split(a) = sum_b b (x) pi(b^v o a), straight from the dual basis
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      const RatVector c = coords_v(project_v(jordan(bd.dual[static_cast<std::size_t>(i)], bd.basis[static_cast<std::size_t>(a)])));
      for (int j = 0; j < n; ++j) {
        if (c(j).is_zero()) continue;
        gens_.split_t.at({i, j, a}) = c(j);
        split_[static_cast<std::size_t>(a)].emplace_back(i, j, c(j));
      }
    }
}

const Functor& Functor::instance() {
  static const Functor phi;
  return phi;
}

std::vector<std::pair<Rational, TermPtr>> specialize(const Combo& f) {
  std::vector<std::pair<Rational, TermPtr>> out;
  out.reserve(f.size());
  for (const auto& [c, t] : f.entries()) {
    Rational v = c.specialize(phi_alpha(), phi_delta());
    if (!v.is_zero()) out.emplace_back(std::move(v), t);
  }
  return out;
}

// ---- streaming evaluation ------------------------------------------------

namespace {

struct Layer {
  TermKind kind;
  int pos;
};

void compile(const TermPtr& t, int offset, std::vector<Layer>& out) {
  switch (t->kind()) {
    case TermKind::Id: return;
    case TermKind::Compose:
      for (const auto& p : t->parts()) compile(p, offset, out);
      return;
    case TermKind::Tensor:
      // interchange: run each factor in turn, the earlier ones already at their targets
      for (const auto& p : t->parts()) {
        compile(p, offset, out);
        offset += p->target();
      }
      return;
    default: out.push_back({t->kind(), offset});
  }
}

constexpr PackedIndex low_mask(int p) { return (PackedIndex{1} << (kLegBits * p)) - 1; }
constexpr int sh(int p) { return kLegBits * p; }

SparseTensor apply_layer(const Functor& phi, const SparseTensor& in, const Layer& l) {
  const int p = l.pos;
  switch (l.kind) {
    case TermKind::Merge: {
      SparseTensor out(in.rank() - 1);
      auto& acc = out.mutable_entries();
      acc.reserve(in.nnz() * 2);
      for (const auto& [key, v] : in.entries()) {
        const auto& lst = phi.merge_of(leg_of(key, p), leg_of(key, p + 1));
        const PackedIndex base = (key & low_mask(p)) | ((key >> sh(p + 2)) << sh(p + 1));
        for (const auto& [k, c] : lst) acc[base | (static_cast<PackedIndex>(k) << sh(p))].add_product(v, c);
      }
      out.prune();
      return out;
    }
    case TermKind::Split: {
      if (in.rank() + 1 > kMaxLegs) throw std::length_error("diagram too wide for streaming evaluation");
      SparseTensor out(in.rank() + 1);
      auto& acc = out.mutable_entries();
      acc.reserve(in.nnz() * 8);
      for (const auto& [key, v] : in.entries()) {
        const PackedIndex base = (key & low_mask(p)) | ((key >> sh(p + 1)) << sh(p + 2));
        for (const auto& [i, j, c] : phi.split_of(leg_of(key, p)))
          acc[base | (static_cast<PackedIndex>(i) << sh(p)) | (static_cast<PackedIndex>(j) << sh(p + 1))].add_product(v, c);
      }
      out.prune();
      return out;
    }
    case TermKind::Cup: {
      if (in.rank() + 2 > kMaxLegs) throw std::length_error("diagram too wide for streaming evaluation");
      SparseTensor out(in.rank() + 2);
      auto& acc = out.mutable_entries();
      acc.reserve(in.nnz() * phi.cup_entries().size());
      for (const auto& [key, v] : in.entries()) {
        const PackedIndex base = (key & low_mask(p)) | ((key >> sh(p)) << sh(p + 2));
        for (const auto& [i, j, c] : phi.cup_entries())
          acc[base | (static_cast<PackedIndex>(i) << sh(p)) | (static_cast<PackedIndex>(j) << sh(p + 1))].add_product(v, c);
      }
      out.prune();
      return out;
    }
    case TermKind::Cap: {
      SparseTensor out(in.rank() - 2);
      auto& acc = out.mutable_entries();
      for (const auto& [key, v] : in.entries()) {
        const Rational& c = phi.cap_of(leg_of(key, p), leg_of(key, p + 1));
        if (c.is_zero()) continue;
        acc[(key & low_mask(p)) | ((key >> sh(p + 2)) << sh(p))].add_product(v, c);
      }
      out.prune();
      return out;
    }
    case TermKind::Cross: {
      SparseTensor out(in.rank());
      auto& acc = out.mutable_entries();
      acc.reserve(in.nnz());
      const PackedIndex mask = (PackedIndex{31} << sh(p)) | (PackedIndex{31} << sh(p + 1));
      for (const auto& [key, v] : in.entries()) {
        const PackedIndex a = (key >> sh(p)) & 31u, b = (key >> sh(p + 1)) & 31u;
        acc.emplace((key & ~mask) | (b << sh(p)) | (a << sh(p + 1)), v);
      }
      return out;
    }
    default: throw std::logic_error("apply_layer: not a generator");
  }
}

}  // namespace

SparseTensor phi_apply(const TermPtr& t, const SparseTensor& input) {
  if (input.rank() != t->source())
    throw ArityError("phi_apply: input has " + std::to_string(input.rank()) + " legs but '" + t->str() + "' has source " +
                     std::to_string(t->source()));
  const Functor& phi = Functor::instance();
  std::vector<Layer> layers;
  compile(t, 0, layers);
  SparseTensor state = input;
  for (const auto& l : layers) {
    state = apply_layer(phi, state, l);
    if (state.is_zero()) return SparseTensor(t->target());
  }
  return state;
}

SparseTensor phi_apply(const Combo& f, const SparseTensor& input) {
  SparseTensor out(f.target());
  for (const auto& [c, t] : specialize(f)) {
    SparseTensor part = phi_apply(t, input);
    for (const auto& [k, v] : part.entries()) out.add_product(k, c, v);
  }
  out.prune();
  return out;
}

SparseTensor phi_apply_basis(const Combo& f, const std::vector<int>& idx) {
  return phi_apply(f, SparseTensor::basis(idx));
}

// ---- tensor networks -----------------------------------------------------

namespace {

// The wiring graph of a term. Every generator leg, boundary point and cup
// turning point is a point; edges record which points are joined by a strand.
struct Wiring {
  enum class Kind { Input, Output, VertexLeg, Bend };
  struct Point {
    Kind kind;
    int a;  // boundary position, or vertex number
    int b;  // vertex leg
  };
  std::vector<Point> points;
  std::vector<std::pair<int, int>> edges;
  int vertices = 0;

  int add_point(Kind k, int a = 0, int b = 0) {
    points.push_back({k, a, b});
    return static_cast<int>(points.size()) - 1;
  }
  void join(int p, int q) { edges.emplace_back(p, q); }
};

void wire(const TermPtr& t, std::vector<int>& front, std::size_t pos, Wiring& w) {
  switch (t->kind()) {
    case TermKind::Id: return;
    case TermKind::Cross: std::swap(front[pos], front[pos + 1]); return;
    case TermKind::Merge: {
      const int v = w.vertices++;
      const int l0 = w.add_point(Wiring::Kind::VertexLeg, v, 0);
      const int l1 = w.add_point(Wiring::Kind::VertexLeg, v, 1);
      const int l2 = w.add_point(Wiring::Kind::VertexLeg, v, 2);
      w.join(front[pos], l0);
      w.join(front[pos + 1], l1);
      front.erase(front.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
      front[pos] = l2;
      return;
    }
    case TermKind::Split: {
      const int v = w.vertices++;
      const int l0 = w.add_point(Wiring::Kind::VertexLeg, v, 0);
      const int l1 = w.add_point(Wiring::Kind::VertexLeg, v, 1);
      const int l2 = w.add_point(Wiring::Kind::VertexLeg, v, 2);
      w.join(front[pos], l0);
      front[pos] = l1;
      front.insert(front.begin() + static_cast<std::ptrdiff_t>(pos) + 1, l2);
      return;
    }
    case TermKind::Cup: {
      const int c = w.add_point(Wiring::Kind::Bend);
      front.insert(front.begin() + static_cast<std::ptrdiff_t>(pos), {c, c});
      return;
    }
    case TermKind::Cap:
      w.join(front[pos], front[pos + 1]);
      front.erase(front.begin() + static_cast<std::ptrdiff_t>(pos), front.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
      return;
    case TermKind::Compose:
      for (const auto& p : t->parts()) wire(p, front, pos, w);
      return;
    case TermKind::Tensor:
      for (const auto& p : t->parts()) {
        wire(p, front, pos, w);
        pos += static_cast<std::size_t>(p->target());
      }
      return;
  }
}

struct Network {
  Wiring wiring;
  std::vector<std::pair<int, int>> wires;  // port point pairs
  int loops = 0;
  std::vector<int> inputs, outputs;        // boundary points
};

Network build_wiring(const TermPtr& t) {
  Network net;
  Wiring& w = net.wiring;
  std::vector<int> front;
  for (int j = 0; j < t->source(); ++j) {
    front.push_back(w.add_point(Wiring::Kind::Input, j));
    net.inputs.push_back(front.back());
  }
  wire(t, front, 0, w);
  for (int k = 0; k < t->target(); ++k) {
    net.outputs.push_back(w.add_point(Wiring::Kind::Output, k));
    w.join(front[static_cast<std::size_t>(k)], net.outputs.back());
  }

  const std::size_t np = w.points.size();
  std::vector<std::vector<std::pair<int, int>>> adj(np);
  for (std::size_t e = 0; e < w.edges.size(); ++e) {
    adj[static_cast<std::size_t>(w.edges[e].first)].emplace_back(w.edges[e].second, static_cast<int>(e));
    adj[static_cast<std::size_t>(w.edges[e].second)].emplace_back(w.edges[e].first, static_cast<int>(e));
  }
  std::vector<bool> seen(np, false);
  for (std::size_t p = 0; p < np; ++p) {
    if (seen[p] || w.points[p].kind == Wiring::Kind::Bend) continue;
    seen[p] = true;
    int cur = static_cast<int>(p), via = -1;
    for (;;) {
      const auto& nb = adj[static_cast<std::size_t>(cur)];
      const auto step = nb[0].second != via ? nb[0] : nb[1];
      cur = step.first;
      via = step.second;
      seen[static_cast<std::size_t>(cur)] = true;
      if (w.points[static_cast<std::size_t>(cur)].kind != Wiring::Kind::Bend) break;
    }
    net.wires.emplace_back(static_cast<int>(p), cur);
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (seen[p]) continue;
    ++net.loops;
    std::vector<std::size_t> stack{p};
    seen[p] = true;
    while (!stack.empty()) {
      const std::size_t q = stack.back();
      stack.pop_back();
      for (const auto& [r, e] : adj[q])
        if (!seen[static_cast<std::size_t>(r)]) {
          seen[static_cast<std::size_t>(r)] = true;
          stack.push_back(static_cast<std::size_t>(r));
        }
    }
  }
  return net;
}

NetNode matrix_node(int l0, int l1, const std::vector<Functor::Triple>& entries) {
  NetNode n;
  n.labels = {l0, l1};
  for (const auto& [i, j, c] : entries)
    n.entries.emplace_back(static_cast<PackedIndex>(i) | (static_cast<PackedIndex>(j) << kLegBits), c);
  return n;
}

const std::vector<Functor::Triple>& gram_entries() {
  static const std::vector<Functor::Triple> g = [] {
    std::vector<Functor::Triple> out;
    const auto& bd = basis_data();
    for (int i = 0; i < kLegDim; ++i)
      for (int j = 0; j < kLegDim; ++j)
        if (!bd.gram(i, j).is_zero()) out.emplace_back(i, j, bd.gram(i, j));
    return out;
  }();
  return g;
}

const std::vector<Functor::Triple>& identity_entries() {
  static const std::vector<Functor::Triple> id = [] {
    std::vector<Functor::Triple> out;
    for (int i = 0; i < kLegDim; ++i) out.emplace_back(i, i, Rational(1));
    return out;
  }();
  return id;
}

SparseTensor contract_term(const TermPtr& t, ContractionOrder order) {
  const Functor& phi = Functor::instance();
  Network net = build_wiring(t);
  const Wiring& w = net.wiring;
  using K = Wiring::Kind;

  std::vector<int> label(w.points.size());
  for (std::size_t p = 0; p < label.size(); ++p) label[p] = static_cast<int>(p);

  std::vector<NetNode> nodes;
  for (auto [p, q] : net.wires) {
    K kp = w.points[static_cast<std::size_t>(p)].kind, kq = w.points[static_cast<std::size_t>(q)].kind;
    if (kp > kq || (kp == kq && p > q)) {
      std::swap(p, q);
      std::swap(kp, kq);
    }
    // kinds are ordered Input < Output < VertexLeg
    if (kp == K::Input && kq == K::VertexLeg) {
      label[static_cast<std::size_t>(q)] = label[static_cast<std::size_t>(p)];
    } else if (kp == K::Input && kq == K::Input) {
      nodes.push_back(matrix_node(p, q, gram_entries()));
    } else if (kp == K::Input && kq == K::Output) {
      nodes.push_back(matrix_node(p, q, identity_entries()));
    } else {
      nodes.push_back(matrix_node(p, q, phi.cup_entries()));
    }
  }
  // vertex nodes use the (possibly merged) labels of their legs
  std::vector<std::array<int, 3>> legs(static_cast<std::size_t>(w.vertices));
  for (std::size_t p = 0; p < w.points.size(); ++p)
    if (w.points[p].kind == K::VertexLeg)
      legs[static_cast<std::size_t>(w.points[p].a)][static_cast<std::size_t>(w.points[p].b)] = label[p];
  // matrix nodes were labelled with raw point ids; relabel input-side merges
  for (auto& n : nodes)
    for (auto& l : n.labels) l = label[static_cast<std::size_t>(l)];
  for (const auto& lg : legs) {
    NetNode n;
    n.labels = {lg[0], lg[1], lg[2]};
    n.entries.reserve(phi.vertex_entries().size());
    for (const auto& [i, j, k, c] : phi.vertex_entries())
      n.entries.emplace_back(static_cast<PackedIndex>(i) | (static_cast<PackedIndex>(j) << kLegBits) |
                                 (static_cast<PackedIndex>(k) << (2 * kLegBits)),
                             c);
    nodes.push_back(std::move(n));
  }

  std::vector<int> open;
  for (int p : net.outputs) open.push_back(label[static_cast<std::size_t>(p)]);
  for (int p : net.inputs) open.push_back(label[static_cast<std::size_t>(p)]);
  Rational scalar = 1;
  for (int k = 0; k < net.loops; ++k) scalar *= phi_delta();
  return contract_network(std::move(nodes), open, scalar, order);
}

}  // namespace

WiringSummary wiring_summary(const TermPtr& t) {
  Network net = build_wiring(t);
  return {net.wiring.vertices, static_cast<int>(net.wires.size()), net.loops};
}

SparseTensor phi_tensor(const TermPtr& t, ContractionOrder order) { return contract_term(t, order); }

SparseTensor phi_tensor(const Combo& f, ContractionOrder order) {
  SparseTensor out(f.source() + f.target());
  for (const auto& [c, t] : specialize(f)) {
    SparseTensor part = contract_term(t, order);
    for (const auto& [k, v] : part.entries()) out.add_product(k, c, v);
  }
  out.prune();
  return out;
}

Rational phi_closed(const Combo& f, ContractionOrder order) {
  if (f.source() != 0 || f.target() != 0)
    throw ArityError("phi_closed needs a closed diagram, got " + std::to_string(f.source()) + "->" +
                     std::to_string(f.target()));
  return phi_tensor(f, order).value();
}

Rational trace_pairing(const Combo& f, const Combo& g) {
  if (f.source() != g.source() || f.target() != g.target()) throw ArityError("trace_pairing: arity mismatch");
  return phi_closed(closure(then(g, mirror(f))));
}

RatMatrix gram_matrix(const std::vector<Combo>& fs) {
  const auto n = static_cast<Eigen::Index>(fs.size());
  for (const auto& f : fs)
    if (f.source() != fs.front().source() || f.target() != fs.front().target())
      throw ArityError("gram_matrix: arity mismatch");
  RatMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = trace_pairing(fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)]);
      g(j, i) = g(i, j);
    }
  return g;
}

int gram_rank(const std::vector<Combo>& fs) {
  if (fs.empty()) return 0;
  return static_cast<int>(rank(gram_matrix(fs)));
}

}  // namespace f4
