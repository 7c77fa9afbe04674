#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "minkmat/fields.hpp"

namespace minkmat {

/// Subset of tuple indices {0, ..., n-1}, packed into a 32-bit mask.
/// Ground sets are capped well below 32 (see kDefaultSubsetCap), so the
/// mask never overflows. Ordering is lexicographic on the sorted index
/// sequence, which is the order all enumerations are reported in.
class IndexSet {
 public:
  static constexpr std::size_t kMaxIndices = 31;

  constexpr IndexSet() = default;

  static IndexSet from_bits(std::uint32_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }

  IndexSet(std::initializer_list<int> indices) {
    for (int i : indices) *this = with(i);
  }

  static IndexSet all_below(std::size_t n) {
    if (n > kMaxIndices) throw InputError("index set too large");
    return from_bits(n == 0 ? 0u : (std::uint32_t{1} << n) - 1);
  }

  std::uint32_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return std::popcount(bits_); }

  bool contains(std::size_t i) const {
    return i < 32 && (bits_ >> i & 1u) != 0;
  }

  IndexSet with(std::size_t i) const {
    if (i >= kMaxIndices) throw InputError("index out of range");
    return from_bits(bits_ | (std::uint32_t{1} << i));
  }
  IndexSet without(std::size_t i) const {
    return i < 32 ? from_bits(bits_ & ~(std::uint32_t{1} << i)) : *this;
  }

  IndexSet operator|(IndexSet o) const { return from_bits(bits_ | o.bits_); }
  IndexSet operator&(IndexSet o) const { return from_bits(bits_ & o.bits_); }
  IndexSet operator-(IndexSet o) const { return from_bits(bits_ & ~o.bits_); }

  bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::size_t min_index() const {
    if (empty()) throw InputError("min of empty index set");
    return std::countr_zero(bits_);
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i : to_vector()) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }

  bool operator==(const IndexSet&) const = default;

  /// Lexicographic on sorted index sequences: {0,3} precedes {1,2}.
  bool operator<(IndexSet o) const {
    std::uint32_t a = bits_, b = o.bits_;
    while (a && b) {
      int ia = std::countr_zero(a), ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }

 private:
  std::uint32_t bits_ = 0;
};

/// Calls fn(subset) for every subset of `universe`, in increasing mask
/// order (so the empty set comes first and `universe` last).
template <class Fn>
void for_each_subset(IndexSet universe, Fn&& fn) {
  std::uint32_t u = universe.bits();
  std::uint32_t sub = 0;
  while (true) {
    fn(IndexSet::from_bits(sub));
    if (sub == u) break;
    sub = (sub - u) & u;  // next subset of u
  }
}

inline std::vector<IndexSet> sorted_sets(std::vector<IndexSet> sets) {
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace minkmat
