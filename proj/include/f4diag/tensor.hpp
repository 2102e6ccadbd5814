#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "f4diag/rational.hpp"

namespace f4 {

// Every leg runs over the 26 basis vectors of V; a multi-index is packed into
// a 64-bit key with five bits per leg, leg 0 in the lowest bits.
inline constexpr int kLegDim = 26;
inline constexpr int kLegBits = 5;
inline constexpr int kMaxLegs = 12;
using PackedIndex = std::uint64_t;

inline int leg_of(PackedIndex key, int leg) { return static_cast<int>((key >> (kLegBits * leg)) & 31u); }
PackedIndex pack_index(const std::vector<int>& idx);
std::vector<int> unpack_index(PackedIndex key, int rank);

// Dense row-major array of rationals.
struct ExactTensor {
  std::vector<int> shape;
  std::vector<Rational> entries;

  ExactTensor() = default;
  explicit ExactTensor(std::vector<int> shape);
  std::size_t offset(const std::vector<int>& idx) const;
  Rational& at(const std::vector<int>& idx) { return entries[offset(idx)]; }
  const Rational& at(const std::vector<int>& idx) const { return entries[offset(idx)]; }
  // "(i1,...,ik) -> p/q" for nonzero entries, lexicographic.
  std::vector<std::string> lines() const;
};

// Sparse tensor of a given rank with every leg of dimension 26. Stored entries
// are never zero once prune() has run; all producers below call it.
class SparseTensor {
 public:
  using Map = std::unordered_map<PackedIndex, Rational>;

  explicit SparseTensor(int rank = 0) : rank_(rank) {}
  static SparseTensor basis(const std::vector<int>& idx);
  static SparseTensor scalar(const Rational& v);

  int rank() const { return rank_; }
  const Map& entries() const { return entries_; }
  Map& mutable_entries() { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  void add(PackedIndex key, const Rational& v) { entries_[key] += v; }
  void add_product(PackedIndex key, const Rational& a, const Rational& b) { entries_[key].add_product(a, b); }
  void prune();
  Rational get(const std::vector<int>& idx) const;
  // Value of a rank-0 tensor.
  Rational value() const;

  SparseTensor& operator+=(const SparseTensor& b);
  SparseTensor& scale(const Rational& c);
  friend bool operator==(const SparseTensor& a, const SparseTensor& b);

  std::vector<std::string> lines() const;
  ExactTensor to_dense() const;
  static SparseTensor from_dense(const ExactTensor& t);

 private:
  int rank_;
  Map entries_;
};

// One node of a tensor network: a sparse tensor whose legs carry labels. A
// label shared by two nodes is summed over.
struct NetNode {
  std::vector<int> labels;
  std::vector<std::pair<PackedIndex, Rational>> entries;
};

enum class ContractionOrder { Greedy, Sequential };

// Contracts the network down to a tensor whose legs are open_labels in order,
// times the given scalar. Greedy picks the connected pair with the smallest
// estimated intermediate; Sequential folds nodes in the order given.
SparseTensor contract_network(std::vector<NetNode> nodes, const std::vector<int>& open_labels, const Rational& scalar,
                              ContractionOrder order = ContractionOrder::Greedy);

}  // namespace f4
