#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkmat/lattice.hpp"
#include "minkmat/matroid.hpp"

namespace minkmat {

/// Raised when an operation requires a BK (or independent) tuple and the
/// input is not one; carries the offending subset and its defect.
class NotBkError : public InputError {
 public:
  NotBkError(IndexSet subset, int defect, const std::string& requirement)
      : InputError(requirement + ": subset " + subset.str() +
                   " has defect " + std::to_string(defect)),
        subset_(subset),
        defect_(defect) {}

  IndexSet subset() const { return subset_; }
  int defect() const { return defect_; }

 private:
  IndexSet subset_;
  int defect_;
};

namespace detail {

template <class F>
void require_independent(const MinkowskiMatroid<F>& m) {
  if (m.is_independent(m.ground())) return;
  // Report a minimal dependent subset for the diagnostic.
  for (IndexSet c : m.circuits())
    throw NotBkError(c, m.defect(c), "tuple is not linearly independent");
  throw InternalCheckError("dependent tuple without circuits");
}

template <class F>
void require_bk(const MinkowskiMatroid<F>& m) {
  require_independent(m);
  if (m.defect(m.ground()) != 0)
    throw NotBkError(m.ground(), m.defect(m.ground()),
                     "tuple is not BK (nonzero defect)");
}

/// Relative mask of `subset` inside `outer` after re-indexing outer's
/// elements to 0..|outer|-1 in increasing order.
inline IndexSet reindex_into(IndexSet outer, IndexSet subset) {
  if (!subset.subset_of(outer))
    throw InternalCheckError("reindex of a non-subset");
  IndexSet out;
  std::size_t pos = 0;
  for (std::size_t i : outer.to_vector()) {
    if (subset.contains(i)) out = out.with(pos);
    ++pos;
  }
  return out;
}

}  // namespace detail

/// Quotient of the subtuple on `outer` by the span of the subtuple on
/// `kernel` (kernel a subset of outer), re-indexed in increasing order.
template <class F>
SubspaceTuple<F> quotient_of_subtuple(const SubspaceTuple<F>& t,
                                      IndexSet outer, IndexSet kernel) {
  return t.subtuple(outer).quotient(detail::reindex_into(outer, kernel));
}

/// All zero-defect subsets of a linearly independent tuple, as a lattice
/// under union and intersection (closure is a theorem; construction
/// re-verifies it).
template <class F>
LatticeOfSets bk_sublattice(const SubspaceTuple<F>& t,
                            std::size_t subset_cap = kDefaultSubsetCap) {
  MinkowskiMatroid<F> m(t, subset_cap);
  detail::require_independent(m);
  std::vector<IndexSet> family;
  for_each_subset(m.ground(), [&](IndexSet s) {
    if (m.defect(s) == 0) family.push_back(s);
  });
  try {
    return LatticeOfSets::from_family(std::move(family));
  } catch (const InputError& e) {
    throw InternalCheckError(
        std::string("BK family failed lattice closure: ") + e.what());
  }
}

/// The unique partition of a BK-tuple into irreducible pieces, indexed by
/// the Birkhoff poset of its BK-sublattice. For poset element alpha with
/// principal-ideal span set k_(alpha) (a lattice member), the block is
/// k_(alpha) minus the union of the irreducibles strictly below, and the
/// graded piece is the quotient k_(alpha) / (k_(alpha) minus block).
template <class F>
struct BkDecomposition {
  Poset poset;
  /// Per poset element: the lattice member (principal-ideal index set).
  std::vector<IndexSet> ideal_sets;
  /// Per poset element: the block of tuple indices owned by it.
  std::vector<IndexSet> blocks;
  /// Per poset element: the graded quotient tuple (irreducible BK).
  std::vector<SubspaceTuple<F>> graded;
};

template <class F>
BkDecomposition<F> bk_decomposition(const SubspaceTuple<F>& t,
                                    std::size_t subset_cap =
                                        kDefaultSubsetCap) {
  MinkowskiMatroid<F> m(t, subset_cap);
  detail::require_bk(m);
  LatticeOfSets lat = bk_sublattice(t, subset_cap);
  Poset poset = birkhoff_poset(lat);

  std::vector<IndexSet> irr;
  for (std::size_t i : lat.join_irreducible_indices())
    irr.push_back(lat.member(i));

  BkDecomposition<F> out{std::move(poset), irr, {}, {}};
  IndexSet covered;
  for (std::size_t a = 0; a < out.poset.size(); ++a) {
    IndexSet lower;
    for (std::size_t b = 0; b < out.poset.size(); ++b)
      if (out.poset.less(b, a)) lower = lower | irr[b];
    IndexSet block = irr[a] - lower;
    if (block.empty() || (lower | block) != irr[a] ||
        !(covered & block).empty())
      throw InternalCheckError("decomposition blocks do not partition");
    covered = covered | block;
    out.blocks.push_back(block);
    out.graded.push_back(quotient_of_subtuple(t, irr[a], lower));
  }
  if (covered != t.ground())
    throw InternalCheckError("decomposition blocks do not cover the tuple");

  for (const SubspaceTuple<F>& g : out.graded) {
    TupleClass c = classify(g, g.ground(), subset_cap);
    if (!c.bk || !c.irreducible)
      throw InternalCheckError("graded piece is not an irreducible BK-tuple");
  }
  // Spans of distinct minimal blocks meet only at the origin.
  for (std::size_t a = 0; a < out.poset.size(); ++a)
    for (std::size_t b = a + 1; b < out.poset.size(); ++b) {
      bool min_a = true, min_b = true;
      for (std::size_t c = 0; c < out.poset.size(); ++c) {
        if (out.poset.less(c, a)) min_a = false;
        if (out.poset.less(c, b)) min_b = false;
      }
      if (!min_a || !min_b) continue;
      if (!intersect(t.span(irr[a]), t.span(irr[b])).is_zero())
        throw InternalCheckError("minimal block spans intersect");
    }
  return out;
}

/// Maximal BK-filtration along a linear extension of the Birkhoff poset:
/// F_0 = empty, F_j = F_{j-1} plus the block of the j-th element.
template <class F>
struct Filtration {
  /// F_0 = {} strictly increasing to F_k = the full index set.
  std::vector<IndexSet> chain;
  /// graded[j] = quotient F_{j+1} / F_j, an irreducible BK-tuple.
  std::vector<SubspaceTuple<F>> graded;
};

template <class F>
Filtration<F> maximal_bk_filtration(const SubspaceTuple<F>& t,
                                    const std::vector<std::size_t>& order,
                                    std::size_t subset_cap =
                                        kDefaultSubsetCap) {
  BkDecomposition<F> dec = bk_decomposition(t, subset_cap);
  if (!dec.poset.is_linear_extension(order))
    throw InputError("order is not a linear extension of the Birkhoff poset");
  MinkowskiMatroid<F> m(t, subset_cap);
  Filtration<F> out;
  out.chain.push_back(IndexSet{});
  for (std::size_t alpha : order) {
    IndexSet prev = out.chain.back();
    IndexSet next = prev | dec.blocks[alpha];
    if (next == prev || m.defect(next) != 0 || !m.is_independent(next))
      throw InternalCheckError("filtration step is not a BK-subtuple");
    out.graded.push_back(quotient_of_subtuple(t, next, prev));
    TupleClass c =
        classify(out.graded.back(), out.graded.back().ground(), subset_cap);
    if (!c.bk || !c.irreducible)
      throw InternalCheckError("filtration graded piece is not irreducible");
    out.chain.push_back(next);
  }
  if (out.chain.back() != t.ground())
    throw InternalCheckError("filtration does not exhaust the tuple");
  return out;
}

/// Down-set realization of an arbitrary finite poset as a BK-tuple:
/// one coordinate per element, L_j spanned by {e_i : i <= j}. The
/// zero-defect subsets of the result are exactly the order ideals, so
/// the Birkhoff poset of its BK-sublattice reproduces P; that round trip
/// is asserted before returning.
template <class F>
SubspaceTuple<F> realize_poset(const Poset& p, F field,
                               std::size_t subset_cap = kDefaultSubsetCap) {
  if (p.size() == 0) throw InputError("cannot realize an empty poset");
  if (p.size() > subset_cap)
    throw InputError("poset exceeds the subset enumeration cap");
  std::size_t n = p.size();
  std::vector<Subspace<F>> entries;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<F> rows(field, 0, n);
    for (std::size_t i : p.principal_ideal(j).to_vector()) {
      typename Matrix<F>::Row e(n, field.zero());
      e[i] = field.one();
      rows.append_row(e);
    }
    entries.push_back(Subspace<F>::span_of(std::move(rows)));
  }
  SubspaceTuple<F> t(field, n, std::move(entries));

  LatticeOfSets lat = bk_sublattice(t, subset_cap);
  Poset q = birkhoff_poset(lat);
  // The expected isomorphism maps element j to the lattice member equal
  // to its principal ideal; verify it explicitly.
  std::vector<std::size_t> to_q(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool found = false;
    std::string want = p.principal_ideal(j).str();
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q.label(a) == want) {
        to_q[j] = a;
        found = true;
        break;
      }
    }
    if (!found)
      throw InternalCheckError("realized poset misses a principal ideal");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(i, j) != q.leq(to_q[i], to_q[j]))
        throw InternalCheckError("realized poset has the wrong order");
  std::vector<std::size_t> sorted = to_q;
  std::sort(sorted.begin(), sorted.end());
  if (q.size() != n ||
      std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InternalCheckError("realized poset has the wrong size");
  return t;
}

/// Invertible matrix M (acting on row vectors by v -> v * M) that maps
/// the span of every BK-subtuple to a coordinate subspace. Built by
/// extending bases ideal by ideal along a linear extension of the
/// Birkhoff poset, then completing with unit vectors.
template <class F>
Matrix<F> coordinate_basis(const SubspaceTuple<F>& t,
                           std::size_t subset_cap = kDefaultSubsetCap) {
  const F& f = t.field();
  std::size_t d = t.ambient_dim();
  BkDecomposition<F> dec = bk_decomposition(t, subset_cap);

  Matrix<F> rows(f, 0, d);
  for (std::size_t alpha : dec.poset.canonical_linear_extension()) {
    IndexSet lower = dec.ideal_sets[alpha] - dec.blocks[alpha];
    Subspace<F> high = t.span(dec.ideal_sets[alpha]);
    // Greedily pick rows of high extending the span of the lower ideal.
    // They stay independent of rows picked for earlier ideals because
    // spans of ideals intersect in the span of the ideal intersection.
    Matrix<F> ext = t.span(lower).basis();
    std::size_t ext_rank = ext.rows();
    for (std::size_t r = 0; r < high.dim(); ++r) {
      auto row = high.basis().row(r);
      Matrix<F> trial = ext;
      trial.append_row(row);
      if (trial.rank() > ext_rank) {
        ext = std::move(trial);
        ++ext_rank;
        rows.append_row(row);
      }
    }
    if (ext_rank != high.dim())
      throw InternalCheckError("ideal basis extension fell short");
  }
  if (rows.rank() != rows.rows())
    throw InternalCheckError("coordinate basis rows are dependent");
  // Complete to a basis of the ambient space with unit vectors.
  for (std::size_t c = 0; c < d && rows.rows() < d; ++c) {
    typename Matrix<F>::Row e(d, f.zero());
    e[c] = f.one();
    Matrix<F> trial = rows;
    trial.append_row(e);
    if (trial.rank() == trial.rows()) rows = std::move(trial);
  }
  if (rows.rows() != d)
    throw InternalCheckError("coordinate basis is not a basis");
  Matrix<F> change = rows.inverse();

  // Every BK index set must land on a coordinate subspace.
  LatticeOfSets lat = bk_sublattice(t, subset_cap);
  for (IndexSet s : lat.members()) {
    Matrix<F> image = t.span(s).basis().times(change);
    Subspace<F> sub = Subspace<F>::span_of(std::move(image));
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      std::size_t nonzero = 0;
      for (std::size_t j = 0; j < sub.ambient_dim(); ++j)
        if (!f.is_zero(sub.basis().at(i, j))) ++nonzero;
      if (nonzero != 1)
        throw InternalCheckError("BK span " + s.str() +
                                 " is not coordinate in the new basis");
    }
  }
  return change;
}

}  // namespace minkmat
