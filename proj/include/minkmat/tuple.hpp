#pragma once

#include <map>
#include <utility>
#include <vector>

#include "minkmat/index_set.hpp"
#include "minkmat/subspace.hpp"

namespace minkmat {

/// Exhaustive subset enumeration refuses ground sets above this size
/// unless the caller raises the cap explicitly (CLI: MINKMAT_SUBSET_CAP).
inline constexpr std::size_t kDefaultSubsetCap = 20;

/// A finite tuple (L_0, ..., L_{n-1}) of subspaces of a common F^d.
/// Immutable; entries are stored canonically, so tuples compare by value.
template <class F>
class SubspaceTuple {
 public:
  SubspaceTuple(F field, std::size_t ambient_dim,
                std::vector<Subspace<F>> entries)
      : field_(std::move(field)),
        ambient_dim_(ambient_dim),
        entries_(std::move(entries)) {
    if (entries_.size() > IndexSet::kMaxIndices)
      throw InputError("tuple too long for index masks");
    for (const auto& s : entries_) {
      if (s.ambient_dim() != ambient_dim_)
        throw InputError("tuple entry has wrong ambient dimension");
      if (!(s.field() == field_))
        throw InputError("tuple entry lives over a different field");
    }
  }

  const F& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return entries_.size(); }
  const Subspace<F>& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<Subspace<F>>& entries() const { return entries_; }

  IndexSet ground() const { return IndexSet::all_below(size()); }

  void check_subset(IndexSet s) const {
    if (!s.subset_of(ground()))
      throw InputError("index set " + s.str() +
                       " is not a subset of the ground set");
  }

  /// Minkowski sum (= linear span of the union) of the entries in s.
  Subspace<F> span(IndexSet s) const {
    check_subset(s);
    Subspace<F> acc = Subspace<F>::zero(field_, ambient_dim_);
    for (std::size_t i : s.to_vector()) acc = sum(acc, entries_[i]);
    return acc;
  }

  int span_dim(IndexSet s) const { return static_cast<int>(span(s).dim()); }

  /// defect(s) = dim span(s) - |s|; the empty set has defect 0.
  int defect(IndexSet s) const {
    return span_dim(s) - static_cast<int>(s.size());
  }

  /// Subtuple on the indices in s, re-indexed in increasing order.
  SubspaceTuple subtuple(IndexSet s) const {
    check_subset(s);
    std::vector<Subspace<F>> picked;
    for (std::size_t i : s.to_vector()) picked.push_back(entries_[i]);
    return SubspaceTuple(field_, ambient_dim_, std::move(picked));
  }

  /// Quotient tuple: entries outside k, projected modulo span(k), indexed
  /// in increasing order of their original indices.
  SubspaceTuple quotient(IndexSet k) const {
    check_subset(k);
    QuotientContext<F> ctx(ambient_dim_, span(k));
    std::vector<Subspace<F>> projected;
    for (std::size_t i = 0; i < size(); ++i)
      if (!k.contains(i)) projected.push_back(ctx.project(entries_[i]));
    return SubspaceTuple(field_, ctx.quotient_dim(), std::move(projected));
  }

  bool operator==(const SubspaceTuple& other) const {
    return field_ == other.field_ && ambient_dim_ == other.ambient_dim_ &&
           entries_ == other.entries_;
  }

 private:
  F field_;
  std::size_t ambient_dim_;
  std::vector<Subspace<F>> entries_;
};

/// Span dimensions and defects of every subset of one ground mask,
/// computed once. Sums are built incrementally: span(s) extends
/// span(s minus its smallest index), so each subset costs one subspace sum.
template <class F>
class DefectTable {
 public:
  explicit DefectTable(const SubspaceTuple<F>& t, IndexSet universe)
      : universe_(universe) {
    t.check_subset(universe);
    spans_.emplace(0u, Subspace<F>::zero(t.field(), t.ambient_dim()));
    for_each_subset(universe, [&](IndexSet s) {
      if (s.empty()) return;
      std::size_t lead = s.min_index();
      const Subspace<F>& rest = spans_.at(s.without(lead).bits());
      spans_.emplace(s.bits(), sum(rest, t.entry(lead)));
    });
  }

  IndexSet universe() const { return universe_; }

  int span_dim(IndexSet s) const {
    return static_cast<int>(spans_.at(s.bits()).dim());
  }
  int defect(IndexSet s) const {
    return span_dim(s) - static_cast<int>(s.size());
  }
  const Subspace<F>& span(IndexSet s) const { return spans_.at(s.bits()); }

 private:
  IndexSet universe_;
  std::map<std::uint32_t, Subspace<F>> spans_;
};

/// Classification of one subtuple. The invariants bk => independent,
/// irreducible => independent, and essential <=> cyclic hold by
/// construction (and are re-proved at scale by the verification suite).
struct TupleClass {
  int defect = 0;
  bool independent = false;
  bool bk = false;
  bool irreducible = false;
  bool essential = false;
  bool cyclic = false;
};

/// Classifies the subtuple on s (s nonempty):
///  - independent: every subset of s has defect >= 0;
///  - bk: independent and defect(s) == 0;
///  - irreducible: independent and every proper nonempty subset has
///    defect > 0;
///  - essential: every proper subset (including the empty one, whose
///    defect is 0) has defect strictly greater than defect(s); this
///    forces defect(s) < 0;
///  - cyclic: equal to essential (covering by circuits, per the matroid
///    route, coincides; see minkowski_matroid checks).
template <class F>
TupleClass classify(const SubspaceTuple<F>& t, IndexSet s,
                    std::size_t subset_cap = kDefaultSubsetCap) {
  if (s.empty()) throw InputError("classify requires a nonempty index set");
  t.check_subset(s);
  if (s.size() > subset_cap)
    throw InputError("subset enumeration cap exceeded: " +
                     std::to_string(s.size()) + " > " +
                     std::to_string(subset_cap));
  DefectTable<F> table(t, s);
  TupleClass out;
  out.defect = table.defect(s);
  out.independent = true;
  out.irreducible = true;
  out.essential = true;
  for_each_subset(s, [&](IndexSet sub) {
    int d = table.defect(sub);
    if (d < 0) out.independent = false;
    if (sub != s) {
      if (!sub.empty() && d <= 0) out.irreducible = false;
      if (d <= out.defect) out.essential = false;
    }
  });
  out.bk = out.independent && out.defect == 0;
  out.irreducible = out.irreducible && out.independent;
  out.cyclic = out.essential;
  return out;
}

}  // namespace minkmat
