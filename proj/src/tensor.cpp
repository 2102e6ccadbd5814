#include "f4diag/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace f4 {

PackedIndex pack_index(const std::vector<int>& idx) {
  if (static_cast<int>(idx.size()) > kMaxLegs) throw std::length_error("too many tensor legs");
  PackedIndex k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= kLegDim) throw std::out_of_range("tensor index out of range");
    k |= static_cast<PackedIndex>(idx[i]) << (kLegBits * static_cast<int>(i));
  }
  return k;
}

std::vector<int> unpack_index(PackedIndex key, int rank) {
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) idx[static_cast<std::size_t>(i)] = leg_of(key, i);
  return idx;
}

namespace {

std::string index_text(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

}  // namespace

// ---- ExactTensor ---------------------------------------------------------

ExactTensor::ExactTensor(std::vector<int> s) : shape(std::move(s)) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  entries.assign(n, Rational(0));
}

std::size_t ExactTensor::offset(const std::vector<int>& idx) const {
  if (idx.size() != shape.size()) throw std::invalid_argument("ExactTensor: wrong number of indices");
  std::size_t off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= shape[i]) throw std::out_of_range("ExactTensor: index out of range");
    off = off * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(idx[i]);
  }
  return off;
}

std::vector<std::string> ExactTensor::lines() const {
  std::vector<std::string> out;
  std::vector<int> idx(shape.size(), 0);
  for (std::size_t off = 0; off < entries.size(); ++off) {
    if (!entries[off].is_zero()) out.push_back(index_text(idx) + " -> " + entries[off].str());
    for (std::size_t k = shape.size(); k-- > 0;) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

// ---- SparseTensor --------------------------------------------------------

SparseTensor SparseTensor::basis(const std::vector<int>& idx) {
  SparseTensor t(static_cast<int>(idx.size()));
  t.entries_.emplace(pack_index(idx), Rational(1));
  return t;
}

SparseTensor SparseTensor::scalar(const Rational& v) {
  SparseTensor t(0);
  if (!v.is_zero()) t.entries_.emplace(0, v);
  return t;
}

void SparseTensor::prune() { std::erase_if(entries_, [](const auto& e) { return e.second.is_zero(); }); }

Rational SparseTensor::get(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw std::invalid_argument("SparseTensor: wrong number of indices");
  auto it = entries_.find(pack_index(idx));
  return it == entries_.end() ? Rational(0) : it->second;
}

Rational SparseTensor::value() const {
  if (rank_ != 0) throw std::logic_error("SparseTensor::value on a tensor with legs");
  auto it = entries_.find(0);
  return it == entries_.end() ? Rational(0) : it->second;
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& b) {
  if (b.rank_ != rank_) throw std::invalid_argument("SparseTensor: rank mismatch in sum");
  for (const auto& [k, v] : b.entries_) entries_[k] += v;
  prune();
  return *this;
}

SparseTensor& SparseTensor::scale(const Rational& c) {
  if (c.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= c;
  return *this;
}

bool operator==(const SparseTensor& a, const SparseTensor& b) {
  if (a.rank_ != b.rank_) return false;
  auto nonzero = [](const SparseTensor& t) {
    std::size_t n = 0;
    for (const auto& e : t.entries_) n += !e.second.is_zero();
    return n;
  };
  if (nonzero(a) != nonzero(b)) return false;
  for (const auto& [k, v] : a.entries_) {
    if (v.is_zero()) continue;
    auto it = b.entries_.find(k);
    if (it == b.entries_.end() || !(it->second == v)) return false;
  }
  return true;
}

std::vector<std::string> SparseTensor::lines() const {
  std::vector<std::pair<std::vector<int>, const Rational*>> items;
  for (const auto& [k, v] : entries_)
    if (!v.is_zero()) items.emplace_back(unpack_index(k, rank_), &v);
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& [idx, v] : items) out.push_back(index_text(idx) + " -> " + v->str());
  return out;
}

ExactTensor SparseTensor::to_dense() const {
  ExactTensor t(std::vector<int>(static_cast<std::size_t>(rank_), kLegDim));
  for (const auto& [k, v] : entries_) t.at(unpack_index(k, rank_)) = v;
  return t;
}

SparseTensor SparseTensor::from_dense(const ExactTensor& t) {
  for (int d : t.shape)
    if (d != kLegDim) throw std::invalid_argument("SparseTensor::from_dense: every leg must have dimension 26");
  SparseTensor s(static_cast<int>(t.shape.size()));
  std::vector<int> idx(t.shape.size(), 0);
  for (std::size_t off = 0; off < t.entries.size(); ++off) {
    if (!t.entries[off].is_zero()) s.entries_.emplace(pack_index(idx), t.entries[off]);
    for (std::size_t k = t.shape.size(); k-- > 0;) {
      if (++idx[k] < t.shape[k]) break;
      idx[k] = 0;
    }
  }
  return s;
}

// ---- network contraction -------------------------------------------------

namespace {

PackedIndex gather(PackedIndex key, const std::vector<int>& positions) {
  PackedIndex out = 0;
  for (std::size_t q = 0; q < positions.size(); ++q)
    out |= static_cast<PackedIndex>(leg_of(key, positions[q])) << (kLegBits * static_cast<int>(q));
  return out;
}

std::size_t shared_count(const NetNode& a, const NetNode& b) {
  std::size_t n = 0;
  for (int l : a.labels) n += std::count(b.labels.begin(), b.labels.end(), l);
  return n;
}

NetNode contract_pair(const NetNode& a, const NetNode& b) {
  std::vector<int> a_shared, b_shared, a_rest, b_rest;
  NetNode out;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it != b.labels.end()) {
      a_shared.push_back(static_cast<int>(i));
      b_shared.push_back(static_cast<int>(it - b.labels.begin()));
    } else {
      a_rest.push_back(static_cast<int>(i));
      out.labels.push_back(a.labels[i]);
    }
  }
  for (std::size_t j = 0; j < b.labels.size(); ++j) {
    if (std::find(b_shared.begin(), b_shared.end(), static_cast<int>(j)) == b_shared.end()) {
      b_rest.push_back(static_cast<int>(j));
      out.labels.push_back(b.labels[j]);
    }
  }
  if (static_cast<int>(out.labels.size()) > kMaxLegs) throw std::length_error("contraction intermediate has too many legs");

  std::unordered_map<PackedIndex, std::vector<std::pair<PackedIndex, const Rational*>>> by_shared;
  by_shared.reserve(b.entries.size());
  for (const auto& [k, v] : b.entries) by_shared[gather(k, b_shared)].emplace_back(gather(k, b_rest), &v);

  const int shift = kLegBits * static_cast<int>(a_rest.size());
  std::unordered_map<PackedIndex, Rational> acc;
  for (const auto& [k, v] : a.entries) {
    auto it = by_shared.find(gather(k, a_shared));
    if (it == by_shared.end()) continue;
    const PackedIndex ar = gather(k, a_rest);
    for (const auto& [br, bv] : it->second) acc[ar | (br << shift)].add_product(v, *bv);
  }
  out.entries.reserve(acc.size());
  for (auto& [k, v] : acc)
    if (!v.is_zero()) out.entries.emplace_back(k, std::move(v));
  return out;
}

}  // namespace

SparseTensor contract_network(std::vector<NetNode> nodes, const std::vector<int>& open_labels, const Rational& scalar,
                              ContractionOrder order) {
  if (scalar.is_zero()) return SparseTensor(static_cast<int>(open_labels.size()));
  for (const auto& n : nodes)
    if (n.entries.empty()) return SparseTensor(static_cast<int>(open_labels.size()));

  while (nodes.size() > 1) {
    std::size_t bi = 0, bj = 1;
    if (order == ContractionOrder::Greedy) {
      double best = INFINITY;
      bool best_connected = false;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
          const std::size_t s = shared_count(nodes[i], nodes[j]);
          const bool connected = s > 0;
          if (best_connected && !connected) continue;
          const double est = static_cast<double>(nodes[i].entries.size()) *
                             static_cast<double>(nodes[j].entries.size()) / std::pow(double(kLegDim), double(s));
          if ((connected && !best_connected) || est < best) {
            best = est;
            best_connected = connected;
            bi = i;
            bj = j;
          }
        }
      }
    } else {
      bj = 1;
      for (std::size_t j = 1; j < nodes.size(); ++j)
        if (shared_count(nodes[0], nodes[j]) > 0) {
          bj = j;
          break;
        }
    }
    NetNode merged = contract_pair(nodes[bi], nodes[bj]);
    if (merged.entries.empty()) return SparseTensor(static_cast<int>(open_labels.size()));
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(bj));
    nodes[bi] = std::move(merged);
  }

  SparseTensor out(static_cast<int>(open_labels.size()));
  if (nodes.empty()) {
    if (!open_labels.empty()) throw std::logic_error("contract_network: open labels without nodes");
    out.add(0, scalar);
    return out;
  }
  const NetNode& last = nodes.front();
  if (last.labels.size() != open_labels.size()) throw std::logic_error("contract_network: unmatched labels remain");
  std::vector<int> positions;
  for (int l : open_labels) {
    auto it = std::find(last.labels.begin(), last.labels.end(), l);
    if (it == last.labels.end()) throw std::logic_error("contract_network: open label missing");
    positions.push_back(static_cast<int>(it - last.labels.begin()));
  }
  auto& map = out.mutable_entries();
  map.reserve(last.entries.size());
  for (const auto& [k, v] : last.entries) map[gather(k, positions)] += v * scalar;
  out.prune();
  return out;
}

}  // namespace f4
