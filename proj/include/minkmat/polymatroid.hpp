#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkmat/bk.hpp"

namespace minkmat {

/// Polymatroid rank: dimension of the Minkowski sum of the entries in I.
template <class F>
int poly_rank(const SubspaceTuple<F>& t, IndexSet I) {
  return t.span_dim(I);
}

/// Smallest flat containing I: all indices whose addition keeps the rank.
template <class F>
IndexSet closure(const SubspaceTuple<F>& t, IndexSet I,
                 std::size_t subset_cap = kDefaultSubsetCap) {
  t.check_subset(I);
  if (t.size() > subset_cap)
    throw InputError("ground set exceeds the subset enumeration cap");
  int base = t.span_dim(I);
  IndexSet out = I;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!I.contains(j) && t.span_dim(I.with(j)) == base) out = out.with(j);
  return out;
}

/// The lattice of polymatroid flats (fixed points of closure), with
/// meet = intersection (always a flat) and join = closure of the union.
struct FlatLattice {
  std::vector<IndexSet> flats;  // lexicographic order
  std::vector<int> ranks;       // aligned with flats
  LatticeTables tables;

  std::size_t size() const { return flats.size(); }

  std::size_t index_of(IndexSet f) const {
    auto it = std::lower_bound(flats.begin(), flats.end(), f);
    if (it == flats.end() || !(*it == f))
      throw InputError(f.str() + " is not a flat");
    return static_cast<std::size_t>(it - flats.begin());
  }

  bool is_flat(IndexSet f) const {
    auto it = std::lower_bound(flats.begin(), flats.end(), f);
    return it != flats.end() && *it == f;
  }

  bool distributive() const { return tables.distributive(); }
};

template <class F>
FlatLattice flats(const SubspaceTuple<F>& t,
                  std::size_t subset_cap = kDefaultSubsetCap) {
  if (t.size() > subset_cap)
    throw InputError("ground set exceeds the subset enumeration cap");
  DefectTable<F> table(t, t.ground());
  auto rank_of = [&](IndexSet s) { return table.span_dim(s); };
  auto close = [&](IndexSet I) {
    int base = rank_of(I);
    IndexSet out = I;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (!I.contains(j) && rank_of(I.with(j)) == base) out = out.with(j);
    return out;
  };

  std::vector<IndexSet> fl;
  for_each_subset(t.ground(), [&](IndexSet s) {
    if (close(s) == s) fl.push_back(s);
  });
  fl = sorted_sets(std::move(fl));

  FlatLattice out;
  out.flats = fl;
  for (IndexSet f : fl) out.ranks.push_back(rank_of(f));

  std::size_t n = fl.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n)),
      join(n, std::vector<std::size_t>(n));
  auto locate = [&](IndexSet s) {
    auto it = std::lower_bound(fl.begin(), fl.end(), s);
    if (it == fl.end() || !(*it == s))
      throw InternalCheckError("expected flat " + s.str() + " is missing");
    return static_cast<std::size_t>(it - fl.begin());
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      leq[a][b] = fl[a].subset_of(fl[b]);
      // The intersection of flats is a flat; the join is the closure of
      // the union.
      meet[a][b] = locate(fl[a] & fl[b]);
      join[a][b] = locate(close(fl[a] | fl[b]));
    }
  out.tables = LatticeTables::checked(std::move(leq), std::move(meet),
                                      std::move(join));
  return out;
}

/// Entrywise orthogonal complements in the dual space. The codimension
/// rank of the dual arrangement reproduces the primal polymatroid rank;
/// the equality is verified over every subset before returning.
template <class F>
struct DualRealization {
  SubspaceTuple<F> dual_tuple;
};

template <class F>
DualRealization<F> dual_realization(const SubspaceTuple<F>& t,
                                    std::size_t subset_cap =
                                        kDefaultSubsetCap) {
  if (t.size() > subset_cap)
    throw InputError("ground set exceeds the subset enumeration cap");
  std::vector<Subspace<F>> duals;
  for (std::size_t i = 0; i < t.size(); ++i)
    duals.push_back(t.entry(i).orthogonal_complement());
  SubspaceTuple<F> dual(t.field(), t.ambient_dim(), std::move(duals));

  int d = static_cast<int>(t.ambient_dim());
  DefectTable<F> primal(t, t.ground());
  for_each_subset(t.ground(), [&](IndexSet I) {
    Subspace<F> cap = Subspace<F>::full(t.field(), t.ambient_dim());
    for (std::size_t i : I.to_vector()) cap = intersect(cap, dual.entry(i));
    if (d - static_cast<int>(cap.dim()) != primal.span_dim(I))
      throw InternalCheckError(
          "dual codimension rank mismatch on " + I.str());
  });
  return DualRealization<F>{std::move(dual)};
}

/// Partition of the dual space of a GF(p) tuple: the point x belongs to
/// the block of the flat gamma(x) = {i : x annihilates L_i}. Blocks are
/// listed for every flat (possibly empty), points in lexicographic
/// coordinate order.
struct DualPartition {
  std::int64_t p = 0;
  std::size_t ambient_dim = 0;
  std::uint64_t total_points = 0;
  FlatLattice flat_lattice;
  /// Aligned with flat_lattice.flats.
  std::vector<std::vector<std::vector<std::int64_t>>> blocks;
};

inline constexpr std::uint64_t kDefaultPointCap = 1'000'000;

inline DualPartition dual_partition(const SubspaceTuple<PrimeField>& t,
                                    std::uint64_t point_cap =
                                        kDefaultPointCap,
                                    std::size_t subset_cap =
                                        kDefaultSubsetCap) {
  const PrimeField& f = t.field();
  std::size_t d = t.ambient_dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > point_cap / static_cast<std::uint64_t>(f.p) + 1)
      total = point_cap + 1;
    else
      total *= static_cast<std::uint64_t>(f.p);
  }
  if (total > point_cap)
    throw InputError("point enumeration cap exceeded: p^dim > " +
                     std::to_string(point_cap));

  DualPartition out;
  out.p = f.p;
  out.ambient_dim = d;
  out.total_points = total;
  out.flat_lattice = flats(t, subset_cap);
  out.blocks.resize(out.flat_lattice.size());

  std::vector<std::int64_t> x(d, 0);
  for (std::uint64_t pt = 0; pt < total; ++pt) {
    IndexSet gamma;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Matrix<PrimeField>& b = t.entry(i).basis();
      bool annihilates = true;
      for (std::size_t r = 0; r < b.rows() && annihilates; ++r) {
        std::int64_t dot = 0;
        for (std::size_t c = 0; c < d; ++c)
          dot = f.add(dot, f.mul(b.at(r, c), x[c]));
        annihilates = dot == 0;
      }
      if (annihilates) gamma = gamma.with(i);
    }
    if (!out.flat_lattice.is_flat(gamma))
      throw InternalCheckError("gamma(x) = " + gamma.str() +
                               " is not a flat");
    out.blocks[out.flat_lattice.index_of(gamma)].push_back(x);
    // lexicographic odometer, last coordinate fastest
    for (std::size_t c = d; c-- > 0;) {
      if (++x[c] < f.p) break;
      x[c] = 0;
    }
  }
  std::uint64_t assigned = 0;
  for (const auto& b : out.blocks) assigned += b.size();
  if (assigned != total)
    throw InternalCheckError("partition does not cover the dual space");
  return out;
}

/// Direct-sum decomposition of the ambient space making every tuple
/// entry a coordinate subspace, available exactly when the subspace
/// lattice generated by the entries under sum and intersection is
/// distributive. Flat-lattice distributivity is neither necessary nor
/// sufficient for this: three coordinate planes of a 3-space have the
/// diamond as flat lattice, and three pairwise-disjoint planes of
/// GF(2)^5 with 4-dimensional pairwise sums have a Boolean flat lattice
/// but no coordinate basis. blocks are the spans of the join-irreducible
/// members of the generated lattice, in the returned order; basis_change
/// acts on row vectors by v -> v * basis_change.
template <class F>
struct DistributiveDecomposition {
  Matrix<F> basis_change;
  std::vector<Subspace<F>> blocks;
};

template <class F>
std::optional<DistributiveDecomposition<F>> distributive_decomposition(
    const SubspaceTuple<F>& t, std::size_t lattice_cap = 1024) {
  const F& f = t.field();
  std::size_t d = t.ambient_dim();
  // Subspace lattice generated by the entries under sum and intersection.
  // Chains of subspaces have at most d+1 members, so a distributive
  // lattice of subspaces has at most 2^d members; growing past that
  // bound already settles the answer.
  std::uint64_t chain_bound =
      d < 63 ? (std::uint64_t{1} << d) : ~std::uint64_t{0};
  std::vector<Subspace<F>> members;
  std::map<std::string, std::size_t> by_key;
  auto key_of = [&](const Subspace<F>& s) { return s.basis().str(); };
  auto add = [&](const Subspace<F>& s) {
    auto [it, fresh] = by_key.emplace(key_of(s), members.size());
    if (fresh) members.push_back(s);
    return fresh;
  };
  add(Subspace<F>::zero(f, d));
  for (std::size_t i = 0; i < t.size(); ++i) add(t.entry(i));
  if (members.size() > chain_bound) return std::nullopt;
  if (members.size() > lattice_cap)
    throw InputError("generated subspace lattice exceeds the cap: " +
                     std::to_string(lattice_cap));
  for (bool fresh = true; fresh;) {
    fresh = false;
    std::size_t n = members.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (add(sum(members[a], members[b]))) fresh = true;
        if (add(intersect(members[a], members[b]))) fresh = true;
        if (members.size() > chain_bound) return std::nullopt;
        if (members.size() > lattice_cap)
          throw InputError("generated subspace lattice exceeds the cap: " +
                           std::to_string(lattice_cap));
      }
  }

  std::size_t n = members.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n)),
      join(n, std::vector<std::size_t>(n));
  auto locate = [&](const Subspace<F>& s) {
    auto it = by_key.find(key_of(s));
    if (it == by_key.end())
      throw InternalCheckError("generated lattice is not closed");
    return it->second;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      leq[a][b] = members[b].contains(members[a]);
      meet[a][b] = locate(intersect(members[a], members[b]));
      join[a][b] = locate(sum(members[a], members[b]));
    }
  LatticeTables tables = LatticeTables::checked(
      std::move(leq), std::move(meet), std::move(join));
  if (!tables.distributive()) return std::nullopt;

  // For each join-irreducible J with unique lower cover J-, pick rows of
  // J extending J-; the union over a linear order refining dimension is
  // a basis of the total span.
  std::vector<std::size_t> irr = tables.join_irreducibles();
  std::stable_sort(irr.begin(), irr.end(),
                   [&](std::size_t a, std::size_t b) {
                     return members[a].dim() < members[b].dim();
                   });
  std::vector<std::size_t> lower_of(irr.size());
  for (std::size_t k = 0; k < irr.size(); ++k) {
    std::optional<std::size_t> low;
    for (auto [a, b] : tables.cover_pairs())
      if (b == irr[k]) low = a;
    if (!low) throw InternalCheckError("irreducible without a lower cover");
    lower_of[k] = *low;
  }

  DistributiveDecomposition<F> out{Matrix<F>(f, 0, d), {}};
  Matrix<F> rows(f, 0, d);
  for (std::size_t k = 0; k < irr.size(); ++k) {
    const Subspace<F>& high = members[irr[k]];
    const Subspace<F>& low = members[lower_of[k]];
    Matrix<F> ext = low.basis();
    std::size_t ext_rank = ext.rows();
    Matrix<F> block_rows(f, 0, d);
    for (std::size_t r = 0; r < high.dim(); ++r) {
      auto row = high.basis().row(r);
      Matrix<F> trial = ext;
      trial.append_row(row);
      if (trial.rank() > ext_rank) {
        ext = std::move(trial);
        ++ext_rank;
        rows.append_row(row);
        block_rows.append_row(row);
      }
    }
    if (ext_rank != high.dim())
      throw InternalCheckError("irreducible extension fell short");
    out.blocks.push_back(Subspace<F>::span_of(std::move(block_rows)));
  }
  if (rows.rank() != rows.rows())
    throw InternalCheckError("decomposition rows are dependent");
  for (std::size_t c = 0; c < d && rows.rows() < d; ++c) {
    typename Matrix<F>::Row e(d, f.zero());
    e[c] = f.one();
    Matrix<F> trial = rows;
    trial.append_row(e);
    if (trial.rank() == trial.rows()) rows = std::move(trial);
  }
  if (rows.rows() != d)
    throw InternalCheckError("decomposition basis is not a basis");
  out.basis_change = rows.inverse();

  // Every entry must be a coordinate subspace in the new basis.
  for (std::size_t i = 0; i < t.size(); ++i) {
    Subspace<F> img = Subspace<F>::span_of(
        t.entry(i).basis().times(out.basis_change));
    for (std::size_t r = 0; r < img.dim(); ++r) {
      std::size_t nonzero = 0;
      for (std::size_t c = 0; c < d; ++c)
        if (!f.is_zero(img.basis().at(r, c))) ++nonzero;
      if (nonzero != 1)
        throw InternalCheckError(
            "entry is not coordinate in the decomposition basis");
    }
  }
  return out;
}

}  // namespace minkmat
