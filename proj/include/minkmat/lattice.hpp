#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkmat/poset.hpp"

namespace minkmat {

/// Order/meet/join tables of an abstract finite lattice. Callers supply
/// the relation and the two operations; construction verifies the lattice
/// axioms (meet = greatest lower bound, join = least upper bound).
struct LatticeTables {
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;

  std::size_t size() const { return leq.size(); }

  static LatticeTables checked(std::vector<std::vector<bool>> leq,
                               std::vector<std::vector<std::size_t>> meet,
                               std::vector<std::vector<std::size_t>> join) {
    LatticeTables t{std::move(leq), std::move(meet), std::move(join)};
    std::size_t n = t.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t m = t.meet[a][b], j = t.join[a][b];
        if (m >= n || j >= n || !t.leq[m][a] || !t.leq[m][b] ||
            !t.leq[a][j] || !t.leq[b][j])
          throw InternalCheckError("meet/join tables violate bounds");
        for (std::size_t c = 0; c < n; ++c) {
          if (t.leq[c][a] && t.leq[c][b] && !t.leq[c][m])
            throw InternalCheckError("meet is not the greatest lower bound");
          if (t.leq[a][c] && t.leq[b][c] && !t.leq[j][c])
            throw InternalCheckError("join is not the least upper bound");
        }
      }
    return t;
  }

  bool less(std::size_t a, std::size_t b) const {
    return a != b && leq[a][b];
  }
  bool incomparable(std::size_t a, std::size_t b) const {
    return !leq[a][b] && !leq[b][a];
  }

  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        if (!less(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < size() && cover; ++c)
          if (less(a, c) && less(c, b)) cover = false;
        if (cover) out.emplace_back(a, b);
      }
    return out;
  }

  /// Elements covering exactly one element.
  std::vector<std::size_t> join_irreducibles() const {
    std::vector<std::size_t> lower_covers(size(), 0);
    for (auto [a, b] : cover_pairs()) ++lower_covers[b];
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (lower_covers[i] == 1) out.push_back(i);
    return out;
  }

  /// Birkhoff's criterion: distributive iff no diamond (M3) and no
  /// pentagon (N5) sublattice.
  bool distributive() const {
    std::size_t n = size();
    // N5: x < z, y incomparable to both, with equal meets and joins.
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z) {
        if (!less(x, z)) continue;
        for (std::size_t y = 0; y < n; ++y)
          if (incomparable(x, y) && incomparable(z, y) &&
              meet[x][y] == meet[z][y] && join[x][y] == join[z][y])
            return false;
      }
    // M3: three pairwise incomparable elements with one common meet and
    // one common join.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!incomparable(a, b)) continue;
        for (std::size_t c = b + 1; c < n; ++c) {
          if (!incomparable(a, c) || !incomparable(b, c)) continue;
          if (meet[a][b] == meet[a][c] && meet[a][b] == meet[b][c] &&
              join[a][b] == join[a][c] && join[a][b] == join[b][c])
            return false;
        }
      }
    return true;
  }
};

/// A finite family of index sets closed under union and intersection,
/// containing the empty set: a distributive lattice with join = union
/// and meet = intersection. Members are kept in lexicographic order.
class LatticeOfSets {
 public:
  static LatticeOfSets from_family(std::vector<IndexSet> family) {
    LatticeOfSets lat;
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    lat.members_ = std::move(family);
    if (!lat.index_of(IndexSet{}))
      throw InputError("set family does not contain the empty set");
    for (std::size_t a = 0; a < lat.size(); ++a)
      for (std::size_t b = a + 1; b < lat.size(); ++b) {
        IndexSet u = lat.members_[a] | lat.members_[b];
        IndexSet i = lat.members_[a] & lat.members_[b];
        if (!lat.index_of(u))
          throw InputError("family not closed under union: " +
                           lat.members_[a].str() + " and " +
                           lat.members_[b].str());
        if (!lat.index_of(i))
          throw InputError("family not closed under intersection: " +
                           lat.members_[a].str() + " and " +
                           lat.members_[b].str());
      }
    return lat;
  }

  std::size_t size() const { return members_.size(); }
  const std::vector<IndexSet>& members() const { return members_; }
  IndexSet member(std::size_t i) const { return members_.at(i); }

  std::optional<std::size_t> index_of(IndexSet s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }

  LatticeTables tables() const {
    std::size_t n = size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    std::vector<std::vector<std::size_t>> meet(n,
                                               std::vector<std::size_t>(n)),
        join(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        leq[a][b] = members_[a].subset_of(members_[b]);
        meet[a][b] = *index_of(members_[a] & members_[b]);
        join[a][b] = *index_of(members_[a] | members_[b]);
      }
    return LatticeTables::checked(std::move(leq), std::move(meet),
                                  std::move(join));
  }

  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    return tables().cover_pairs();
  }

  std::vector<std::size_t> join_irreducible_indices() const {
    return tables().join_irreducibles();
  }

 private:
  std::vector<IndexSet> members_;
};

/// The poset of join-irreducible members, ordered by inclusion. The
/// order-ideal lattice of the result is isomorphic to the input lattice;
/// the isomorphism (ideal -> union of its irreducibles) is checked
/// element by element, which is exactly Birkhoff's representation
/// theorem for this lattice of sets.
inline Poset birkhoff_poset(const LatticeOfSets& lat) {
  std::vector<std::size_t> irr = lat.join_irreducible_indices();
  std::vector<std::string> labels;
  std::vector<IndexSet> sets;
  for (std::size_t i : irr) {
    sets.push_back(lat.member(i));
    labels.push_back(lat.member(i).str());
  }
  std::size_t n = sets.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      leq[a][b] = sets[a].subset_of(sets[b]);
  Poset p = Poset::from_leq(std::move(labels), std::move(leq));

  std::vector<IndexSet> seen;
  for (IndexSet ideal : p.order_ideals()) {
    IndexSet u;
    for (std::size_t k : ideal.to_vector()) u = u | sets[k];
    if (!lat.index_of(u))
      throw InternalCheckError(
          "union of an ideal of irreducibles is not a lattice member");
    seen.push_back(u);
  }
  std::sort(seen.begin(), seen.end());
  bool distinct = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  if (!distinct || seen.size() != lat.size())
    throw InternalCheckError(
        "ideal lattice of the irreducible poset does not match the lattice");
  return p;
}

}  // namespace minkmat
