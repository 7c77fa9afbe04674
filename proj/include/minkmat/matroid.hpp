#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minkmat/tuple.hpp"

namespace minkmat {

/// Fault-injection switches for self-testing the verification suite.
/// All off in normal operation; the CLI exposes --inject-rank-bug.
struct MutationHooks {
  bool inflate_rank = false;
};

inline MutationHooks& mutation_hooks() {
  static MutationHooks hooks;
  return hooks;
}

/// Transversal of linearly independent vectors, one per tuple index.
template <class F>
struct Witness {
  using Row = typename Matrix<F>::Row;
  std::map<std::size_t, Row> vectors;
};

template <class F>
struct MaxBkResult {
  IndexSet set;
  /// Set when the ground tuple is independent with positive defect; the
  /// unique-maximal-BK theorem is stated only for dependent tuples, so
  /// callers should treat the value as a definitional extension there.
  bool degenerate = false;
};

template <class F>
class ContractionView;

/// The matroid on tuple indices whose independent sets are the subsets
/// with all defects non-negative. Immutable apart from internal memo
/// tables; those are not synchronized, so confine one instance to a
/// single thread (operations remain pure functions of volatile-free
/// inputs and are deterministic).
template <class F>
class MinkowskiMatroid {
 public:
  explicit MinkowskiMatroid(SubspaceTuple<F> tuple,
                            std::size_t subset_cap = kDefaultSubsetCap)
      : tuple_(std::move(tuple)), cap_(subset_cap) {
    if (tuple_.size() > cap_)
      throw InputError("ground set of size " + std::to_string(tuple_.size()) +
                       " exceeds the subset enumeration cap " +
                       std::to_string(cap_));
    spans_.emplace(0u,
                   Subspace<F>::zero(tuple_.field(), tuple_.ambient_dim()));
  }

  const SubspaceTuple<F>& tuple() const { return tuple_; }
  IndexSet ground() const { return tuple_.ground(); }

  int span_dim(IndexSet s) const { return static_cast<int>(span(s).dim()); }

  int defect(IndexSet s) const {
    return span_dim(s) - static_cast<int>(s.size());
  }

  const Subspace<F>& span(IndexSet s) const {
    tuple_.check_subset(s);
    auto it = spans_.find(s.bits());
    if (it != spans_.end()) return it->second;
    std::size_t lead = s.min_index();
    const Subspace<F>& rest = span(s.without(lead));
    return spans_.emplace(s.bits(), sum(rest, tuple_.entry(lead)))
        .first->second;
  }

  bool is_independent(IndexSet s) const {
    tuple_.check_subset(s);
    if (s.empty()) return true;
    auto it = indep_.find(s.bits());
    if (it != indep_.end()) return it->second;
    bool ok = defect(s) >= 0;
    for (std::size_t i : s.to_vector()) {
      if (!ok) break;
      ok = is_independent(s.without(i));
    }
    indep_.emplace(s.bits(), ok);
    return ok;
  }

  int rank(IndexSet s) const {
    int r = rank_impl(s);
    if (mutation_hooks().inflate_rank && !s.empty()) return r + 1;
    return r;
  }

  /// Deterministic augmenting search over the stored basis rows of each
  /// subspace. Existence for independent sets is the Rado condition,
  /// which is exactly non-negativity of all defects.
  std::optional<Witness<F>> witness(IndexSet s) const {
    tuple_.check_subset(s);
    std::vector<std::size_t> order = s.to_vector();
    Matrix<F> chosen(tuple_.field(), 0, tuple_.ambient_dim());
    std::vector<std::size_t> picked_row(order.size(), 0);
    bool found = search(order, 0, chosen, picked_row);
    if (found != is_independent(s))
      throw InternalCheckError(
          "witness search disagrees with the defect-scan oracle on " +
          s.str());
    if (!found) return std::nullopt;
    Witness<F> w;
    for (std::size_t k = 0; k < order.size(); ++k)
      w.vectors[order[k]] = tuple_.entry(order[k]).basis().row(picked_row[k]);
    return w;
  }

  std::vector<IndexSet> bases() const {
    int r = rank_impl(ground());
    std::vector<IndexSet> out;
    for_each_subset(ground(), [&](IndexSet s) {
      if (static_cast<int>(s.size()) == r && is_independent(s))
        out.push_back(s);
    });
    return sorted_sets(std::move(out));
  }

  std::vector<IndexSet> circuits() const {
    std::vector<IndexSet> out;
    for_each_subset(ground(), [&](IndexSet s) {
      if (s.empty() || is_independent(s)) return;
      for (std::size_t i : s.to_vector())
        if (!is_independent(s.without(i))) return;
      out.push_back(s);
    });
    return sorted_sets(std::move(out));
  }

  IndexSet loops() const {
    IndexSet out;
    for (std::size_t i = 0; i < tuple_.size(); ++i)
      if (tuple_.entry(i).is_zero()) out = out.with(i);
    return out;
  }

  IndexSet coloops() const {
    IndexSet out;
    int r = rank(ground());
    for (std::size_t i = 0; i < tuple_.size(); ++i)
      if (rank(ground().without(i)) == r - 1) out = out.with(i);
    return out;
  }

  /// Common defect of all bases; equals span_dim(ground) - rank(ground).
  int basis_defect() const {
    if (tuple_.size() == 0)
      throw InputError("basis defect of an empty tuple");
    return span_dim(ground()) - rank(ground());
  }

  ContractionView<F> contract(IndexSet k) const;

  /// Union of all zero-defect subsets of the basis b. Always itself
  /// zero-defect (defects are submodular and non-negative inside b), and
  /// therefore the unique maximal BK-subtuple of b.
  MaxBkResult<F> max_bk_in_basis(IndexSet b) const {
    tuple_.check_subset(b);
    if (!is_independent(b) ||
        static_cast<int>(b.size()) != rank_impl(ground()))
      throw InputError(b.str() + " is not a basis");
    IndexSet u;
    for_each_subset(b, [&](IndexSet s) {
      if (defect(s) == 0) u = u | s;
    });
    if (defect(u) != 0)
      throw InternalCheckError("union of zero-defect subsets of basis " +
                               b.str() + " has nonzero defect");
    MaxBkResult<F> out;
    out.set = u;
    out.degenerate = is_independent(ground()) && defect(ground()) != 0;
    return out;
  }

  /// True iff every index of s lies in a circuit contained in s.
  /// Cross-checked against the essentiality characterization.
  bool is_cyclic(IndexSet s) const {
    tuple_.check_subset(s);
    IndexSet covered;
    for_each_subset(s, [&](IndexSet c) {
      if (c.empty() || c.subset_of(covered) || is_independent(c)) return;
      for (std::size_t i : c.to_vector())
        if (!is_independent(c.without(i))) return;
      covered = covered | c;
    });
    bool by_circuits = !s.empty() && covered == s;
    bool by_essential = !s.empty() && classify(tuple_, s, cap_).essential;
    if (by_circuits != by_essential)
      throw InternalCheckError(
          "circuit-cover and essentiality disagree on " + s.str());
    return by_circuits;
  }

  /// The union of all circuits; equally the unique inclusion-minimal
  /// subset of minimal defect. Both are computed and compared. Absent
  /// (nullopt) when the tuple is independent.
  std::optional<IndexSet> maximal_essential_subtuple() const {
    if (is_independent(ground())) return std::nullopt;
    IndexSet by_circuits;
    for (IndexSet c : circuits()) by_circuits = by_circuits | c;

    int min_defect = 0;
    for_each_subset(ground(), [&](IndexSet s) {
      min_defect = std::min(min_defect, defect(s));
    });
    std::vector<IndexSet> argmin;
    for_each_subset(ground(), [&](IndexSet s) {
      if (defect(s) == min_defect) argmin.push_back(s);
    });
    std::vector<IndexSet> minimal;
    for (IndexSet a : argmin) {
      bool is_min = true;
      for (IndexSet b : argmin)
        if (b != a && b.subset_of(a)) is_min = false;
      if (is_min) minimal.push_back(a);
    }
    if (minimal.size() != 1)
      throw InternalCheckError(
          "expected a unique minimal subset of minimal defect, found " +
          std::to_string(minimal.size()));
    if (minimal[0] != by_circuits)
      throw InternalCheckError(
          "union of circuits " + by_circuits.str() +
          " differs from the minimal min-defect subset " + minimal[0].str());
    return by_circuits;
  }

 private:
  int rank_impl(IndexSet s) const {
    tuple_.check_subset(s);
    if (s.empty()) return 0;
    auto it = rank_.find(s.bits());
    if (it != rank_.end()) return it->second;
    int r;
    if (is_independent(s)) {
      r = static_cast<int>(s.size());
    } else {
      r = 0;
      for (std::size_t i : s.to_vector())
        r = std::max(r, rank_impl(s.without(i)));
    }
    rank_.emplace(s.bits(), r);
    return r;
  }

  bool search(const std::vector<std::size_t>& order, std::size_t pos,
              Matrix<F>& chosen, std::vector<std::size_t>& picked_row) const {
    if (pos == order.size()) return true;
    const Subspace<F>& sub = tuple_.entry(order[pos]);
    for (std::size_t r = 0; r < sub.dim(); ++r) {
      chosen.append_row(sub.basis().row(r));
      if (chosen.rank() == pos + 1) {
        picked_row[pos] = r;
        if (search(order, pos + 1, chosen, picked_row)) return true;
      }
      chosen = shrink(chosen, pos);
    }
    return false;
  }

  Matrix<F> shrink(const Matrix<F>& m, std::size_t keep_rows) const {
    Matrix<F> out(tuple_.field(), 0, m.cols());
    for (std::size_t i = 0; i < keep_rows; ++i) out.append_row(m.row(i));
    return out;
  }

  SubspaceTuple<F> tuple_;
  std::size_t cap_;
  mutable std::map<std::uint32_t, Subspace<F>> spans_;
  mutable std::unordered_map<std::uint32_t, bool> indep_;
  mutable std::unordered_map<std::uint32_t, int> rank_;
};

/// Contraction m / k without rebuilding subspaces: independence and rank
/// on the remaining indices are answered through the parent matroid.
/// For BK k this coincides with the Minkowski matroid of the quotient
/// tuple, which the verification suite re-proves at scale.
template <class F>
class ContractionView {
 public:
  ContractionView(const MinkowskiMatroid<F>& parent, IndexSet contracted)
      : parent_(parent), contracted_(contracted) {
    if (!parent.is_independent(contracted))
      throw InputError("contraction set " + contracted.str() +
                       " is dependent");
  }

  IndexSet ground() const { return parent_.ground() - contracted_; }

  bool is_independent(IndexSet s) const {
    check(s);
    return parent_.is_independent(s | contracted_);
  }

  int rank(IndexSet s) const {
    check(s);
    return parent_.rank(s | contracted_) -
           parent_.rank(contracted_);
  }

  const MinkowskiMatroid<F>& parent() const { return parent_; }
  IndexSet contracted() const { return contracted_; }

 private:
  void check(IndexSet s) const {
    if (!s.subset_of(ground()))
      throw InputError("index set " + s.str() +
                       " is not a subset of the contraction ground set");
  }

  const MinkowskiMatroid<F>& parent_;
  IndexSet contracted_;
};

template <class F>
ContractionView<F> MinkowskiMatroid<F>::contract(IndexSet k) const {
  return ContractionView<F>(*this, k);
}

}  // namespace minkmat
