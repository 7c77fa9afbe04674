#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "minkmat/index_set.hpp"

namespace minkmat {

/// Finite partially ordered set with labeled elements. The relation is
/// stored transitively closed and validated on construction. Immutable.
class Poset {
 public:
  static Poset from_leq(std::vector<std::string> labels,
                        std::vector<std::vector<bool>> leq) {
    Poset p;
    p.labels_ = std::move(labels);
    p.leq_ = std::move(leq);
    p.validate();
    return p;
  }

  /// Builds from Hasse-style cover pairs (low, high); the relation is the
  /// reflexive-transitive closure. Cycles are rejected.
  static Poset from_covers(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
    std::size_t n = labels.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) throw InputError("cover pair index out of range");
      if (a == b) throw InputError("cover pair relates an element to itself");
      leq[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq[k][j]) leq[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && leq[i][j] && leq[j][i])
          throw InputError("cover relation has a cycle through '" +
                           labels[i] + "' and '" + labels[j] + "'");
    return from_leq(std::move(labels), std::move(leq));
  }

  static Poset antichain(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return from_covers(std::move(labels), {});
  }

  static Poset chain(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i));
      if (i + 1 < n) covers.emplace_back(i, i + 1);
    }
    return from_covers(std::move(labels), covers);
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(std::size_t a, std::size_t b) const { return leq_.at(a).at(b); }
  bool less(std::size_t a, std::size_t b) const {
    return a != b && leq(a, b);
  }
  bool comparable(std::size_t a, std::size_t b) const {
    return leq(a, b) || leq(b, a);
  }

  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        if (!less(a, b)) continue;
        bool covered = true;
        for (std::size_t c = 0; c < size() && covered; ++c)
          if (less(a, c) && less(c, b)) covered = false;
        if (covered) out.emplace_back(a, b);
      }
    return out;
  }

  IndexSet principal_ideal(std::size_t j) const {
    IndexSet out;
    for (std::size_t i = 0; i < size(); ++i)
      if (leq(i, j)) out = out.with(i);
    return out;
  }

  bool is_ideal(IndexSet s) const {
    for (std::size_t j : s.to_vector())
      if (!principal_ideal(j).subset_of(s)) return false;
    return true;
  }

  /// All order ideals (down-closed subsets), in increasing mask order.
  std::vector<IndexSet> order_ideals() const {
    if (size() > IndexSet::kMaxIndices)
      throw InputError("poset too large for ideal enumeration");
    std::vector<IndexSet> down(size());
    for (std::size_t j = 0; j < size(); ++j) down[j] = principal_ideal(j);
    std::vector<IndexSet> out;
    for_each_subset(IndexSet::all_below(size()), [&](IndexSet s) {
      for (std::size_t j : s.to_vector())
        if (!down[j].subset_of(s)) return;
      out.push_back(s);
    });
    return out;
  }

  /// Deterministic linear extension: repeatedly take the smallest-index
  /// minimal element among those remaining.
  std::vector<std::size_t> canonical_linear_extension() const {
    std::vector<std::size_t> out;
    std::vector<bool> used(size(), false);
    for (std::size_t step = 0; step < size(); ++step) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (used[j]) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < size() && minimal; ++i)
          if (!used[i] && less(i, j)) minimal = false;
        if (minimal) {
          out.push_back(j);
          used[j] = true;
          break;
        }
      }
    }
    return out;
  }

  bool is_linear_extension(const std::vector<std::size_t>& order) const {
    if (order.size() != size()) return false;
    std::vector<bool> seen(size(), false);
    for (std::size_t j : order) {
      if (j >= size() || seen[j]) return false;
      for (std::size_t i = 0; i < size(); ++i)
        if (less(i, j) && !seen[i]) return false;
      seen[j] = true;
    }
    return true;
  }

  /// Up to max_count linear extensions, lexicographically by position
  /// sequence.
  std::vector<std::vector<std::size_t>> linear_extensions(
      std::size_t max_count) const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::vector<bool> used(size(), false);
    extend(cur, used, out, max_count);
    return out;
  }

  /// Structure-only canonical form; equal strings iff isomorphic.
  std::string canonical_certificate() const;

  bool isomorphic_to(const Poset& other) const {
    if (size() != other.size()) return false;
    return canonical_certificate() == other.canonical_certificate();
  }

 private:
  void validate() const {
    std::size_t n = labels_.size();
    if (leq_.size() != n) throw InputError("relation size mismatch");
    for (const auto& row : leq_)
      if (row.size() != n) throw InputError("relation row size mismatch");
    for (std::size_t i = 0; i < n; ++i)
      if (!leq_[i][i]) throw InputError("relation is not reflexive");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i])
          throw InputError("relation is not antisymmetric");
        for (std::size_t k = 0; k < n; ++k)
          if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
            throw InputError("relation is not transitive");
      }
  }

  void extend(std::vector<std::size_t>& cur, std::vector<bool>& used,
              std::vector<std::vector<std::size_t>>& out,
              std::size_t max_count) const {
    if (out.size() >= max_count) return;
    if (cur.size() == size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < size(); ++j) {
      if (used[j]) continue;
      bool ready = true;
      for (std::size_t i = 0; i < size() && ready; ++i)
        if (less(i, j) && !used[i]) ready = false;
      if (!ready) continue;
      used[j] = true;
      cur.push_back(j);
      extend(cur, used, out, max_count);
      cur.pop_back();
      used[j] = false;
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

namespace detail {

/// Permutation-minimal flattening of the strict-order matrix, searched
/// within invariant-refinement classes to keep the branching small.
class PosetCanonicalizer {
 public:
  explicit PosetCanonicalizer(const Poset& p) : p_(p), n_(p.size()) {}

  std::string run() {
    std::vector<std::uint64_t> inv(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t down = 0, up = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (p_.less(j, i)) ++down;
        if (p_.less(i, j)) ++up;
      }
      inv[i] = down * 64 + up;
    }
    for (std::size_t round = 0; round < n_; ++round) {
      std::vector<std::uint64_t> next(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        std::vector<std::uint64_t> sig;
        for (std::size_t j = 0; j < n_; ++j) {
          if (p_.less(j, i)) sig.push_back(inv[j] * 2);
          if (p_.less(i, j)) sig.push_back(inv[j] * 2 + 1);
        }
        std::sort(sig.begin(), sig.end());
        std::uint64_t h = inv[i];
        for (std::uint64_t s : sig) h = h * 1099511628211ull + s + 1;
        next[i] = h;
      }
      inv = next;
    }

    // Order candidate slots by invariant class; permute only inside
    // classes when searching for the minimal matrix string.
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return inv[a] < inv[b];
                     });
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == 0 || inv[order[k]] != inv[order[k - 1]]) classes.push_back({});
      classes.back().push_back(order[k]);
    }
    std::size_t work = 1;
    for (const auto& c : classes) {
      for (std::size_t f = 2; f <= c.size(); ++f) {
        work *= f;
        if (work > 2'000'000)
          throw InputError("poset too symmetric for isomorphism check");
      }
    }

    perm_.clear();
    best_.clear();
    search(classes, 0);
    return best_;
  }

 private:
  void search(const std::vector<std::vector<std::size_t>>& classes,
              std::size_t ci) {
    if (ci == classes.size()) {
      std::string s = flatten();
      if (best_.empty() || s < best_) best_ = s;
      return;
    }
    std::vector<std::size_t> c = classes[ci];
    std::sort(c.begin(), c.end());
    do {
      std::size_t before = perm_.size();
      perm_.insert(perm_.end(), c.begin(), c.end());
      search(classes, ci + 1);
      perm_.resize(before);
    } while (std::next_permutation(c.begin(), c.end()));
  }

  std::string flatten() const {
    std::string s;
    s.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        s += p_.less(perm_[i], perm_[j]) ? '1' : '0';
    return s;
  }

  const Poset& p_;
  std::size_t n_;
  std::vector<std::size_t> perm_;
  std::string best_;
};

}  // namespace detail

inline std::string Poset::canonical_certificate() const {
  return detail::PosetCanonicalizer(*this).run();
}

}  // namespace minkmat
