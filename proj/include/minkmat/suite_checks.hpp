#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "minkmat/bk.hpp"
#include "minkmat/polymatroid.hpp"

namespace minkmat {

/// Deterministic generator configuration: same config, same case stream.
/// Per case, the ground-set size varies over 1..n and the ambient
/// dimension over 1..ambient_dim so one stream exercises every shape.
struct GenConfig {
  FieldSpec field = FieldSpec::rationals();
  std::size_t ambient_dim = 4;
  std::size_t n = 5;
  std::size_t max_generators = 3;
  std::uint64_t seed = 1;
  std::size_t cases = 100;

  void validate() const {
    if (ambient_dim < 1 || ambient_dim > 8)
      throw InputError("ambient_dim must be between 1 and 8");
    if (n < 1 || n > 10) throw InputError("n must be between 1 and 10");
    if (max_generators > 16)
      throw InputError("max_generators must be at most 16");
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline RationalField::Elem random_element(const RationalField& f,
                                          std::mt19937_64& rng) {
  return f.from_int(static_cast<long long>(rng() % 7) - 3);
}

inline PrimeField::Elem random_element(const PrimeField& f,
                                       std::mt19937_64& rng) {
  return f.from_int(static_cast<long long>(
      rng() % static_cast<std::uint64_t>(f.p)));
}

/// Map a subset expressed in quotient coordinates back into parent
/// indices; positions lists the parent indices in increasing order.
inline IndexSet lift_subset(const std::vector<std::size_t>& positions,
                            IndexSet rel) {
  IndexSet out;
  for (std::size_t i : rel.to_vector()) out = out.with(positions.at(i));
  return out;
}

}  // namespace detail

template <class F>
SubspaceTuple<F> random_tuple(const GenConfig& cfg, F field,
                              std::size_t case_index) {
  cfg.validate();
  std::mt19937_64 rng(
      detail::splitmix64(cfg.seed ^ detail::splitmix64(case_index + 1)));
  std::size_t n_case = 1 + rng() % cfg.n;
  std::size_t ambient = 1 + rng() % cfg.ambient_dim;
  std::vector<Subspace<F>> entries;
  for (std::size_t i = 0; i < n_case; ++i) {
    std::size_t gens = rng() % (cfg.max_generators + 1);
    Matrix<F> m(field, 0, ambient);
    for (std::size_t r = 0; r < gens; ++r) {
      typename Matrix<F>::Row row;
      for (std::size_t c = 0; c < ambient; ++c)
        row.push_back(detail::random_element(field, rng));
      m.append_row(row);
    }
    entries.push_back(Subspace<F>::span_of(std::move(m)));
  }
  return SubspaceTuple<F>(field, ambient, std::move(entries));
}

enum class CheckOutcome { passed, skipped, failed };

struct CheckRun {
  CheckOutcome outcome = CheckOutcome::passed;
  std::string message;
};

inline CheckRun check_pass() { return {CheckOutcome::passed, {}}; }
inline CheckRun check_skip() { return {CheckOutcome::skipped, {}}; }
inline CheckRun check_fail(std::string message) {
  return {CheckOutcome::failed, std::move(message)};
}

/// Shared per-case state: the tuple, its matroid, and lazy caches for
/// results several checks need.
template <class F>
struct CaseContext {
  SubspaceTuple<F> t;
  MinkowskiMatroid<F> m;

  explicit CaseContext(SubspaceTuple<F> tuple)
      : t(tuple), m(std::move(tuple)) {}

  const std::vector<IndexSet>& circuits() {
    if (!circuits_) circuits_ = m.circuits();
    return *circuits_;
  }

  const std::vector<IndexSet>& bases() {
    if (!bases_) bases_ = m.bases();
    return *bases_;
  }

  /// Zero-defect independent subsets (the BK-subtuples), sorted.
  const std::vector<IndexSet>& bk_sets() {
    if (!bk_sets_) {
      std::vector<IndexSet> out;
      for_each_subset(m.ground(), [&](IndexSet s) {
        if (m.defect(s) == 0 && m.is_independent(s)) out.push_back(s);
      });
      bk_sets_ = sorted_sets(std::move(out));
    }
    return *bk_sets_;
  }

  const FlatLattice& flat_lattice() {
    if (!flats_) flats_ = minkmat::flats(t);
    return *flats_;
  }

  bool ground_independent() { return m.is_independent(m.ground()); }
  bool ground_bk() {
    return ground_independent() && m.defect(m.ground()) == 0;
  }

 private:
  std::optional<std::vector<IndexSet>> circuits_;
  std::optional<std::vector<IndexSet>> bases_;
  std::optional<std::vector<IndexSet>> bk_sets_;
  std::optional<FlatLattice> flats_;
};

template <class F>
struct SuiteCheck {
  std::string name;
  std::function<CheckRun(CaseContext<F>&)> run;
};

namespace detail {

template <class F>
std::vector<SuiteCheck<F>> build_suite_checks() {
  using Ctx = CaseContext<F>;
  std::vector<SuiteCheck<F>> checks;
  auto add = [&](std::string name, std::function<CheckRun(Ctx&)> fn) {
    checks.push_back({std::move(name), std::move(fn)});
  };

  add("quotient_defect_identity", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    CheckRun out = check_pass();
    for_each_subset(ground, [&](IndexSet k) {
      if (out.outcome == CheckOutcome::failed) return;
      SubspaceTuple<F> q = ctx.t.quotient(k);
      std::vector<std::size_t> comp = (ground - k).to_vector();
      DefectTable<F> dq(q, q.ground());
      for_each_subset(q.ground(), [&](IndexSet rel) {
        IndexSet s = detail::lift_subset(comp, rel);
        if (dq.defect(rel) != ctx.m.defect(s | k) - ctx.m.defect(k))
          out = check_fail("defect of " + rel.str() + " in the quotient by " +
                           k.str() + " breaks the defect identity");
      });
    });
    return out;
  });

  add("quotient_span_dims", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    CheckRun out = check_pass();
    for_each_subset(ground, [&](IndexSet k) {
      SubspaceTuple<F> q = ctx.t.quotient(k);
      if (q.span_dim(q.ground()) !=
          ctx.m.span_dim(ground) - ctx.m.span_dim(k))
        out = check_fail("span dim of the quotient by " + k.str() +
                         " is not the span-dim difference");
    });
    return out;
  });

  add("double_quotient_consistency", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    CheckRun out = check_pass();
    for_each_subset(ground, [&](IndexSet k) {
      if (k.empty() || out.outcome == CheckOutcome::failed) return;
      IndexSet h = k.without(k.min_index());
      SubspaceTuple<F> qk = ctx.t.quotient(k);
      SubspaceTuple<F> qh = ctx.t.quotient(h);
      std::vector<std::size_t> comp_h = (ground - h).to_vector();
      IndexSet k_rel;
      for (std::size_t i : (k - h).to_vector()) {
        auto it = std::lower_bound(comp_h.begin(), comp_h.end(), i);
        k_rel = k_rel.with(static_cast<std::size_t>(it - comp_h.begin()));
      }
      SubspaceTuple<F> q2 = qh.quotient(k_rel);
      if (q2.size() != qk.size()) {
        out = check_fail("double quotient by " + h.str() + " then " +
                         k.str() + " has the wrong size");
        return;
      }
      for (std::size_t i = 0; i < q2.size(); ++i)
        if (q2.entry(i).dim() != qk.entry(i).dim())
          out = check_fail("double quotient by " + h.str() + " then " +
                           k.str() + " has wrong entry dims");
      for (std::size_t i = 0; i < q2.size(); ++i)
        for (std::size_t j = i + 1; j < q2.size(); ++j)
          if (q2.span_dim(IndexSet{}.with(i).with(j)) !=
              qk.span_dim(IndexSet{}.with(i).with(j)))
            out = check_fail("double quotient by " + h.str() + " then " +
                             k.str() + " has wrong pairwise span dims");
    });
    return out;
  });

  add("witness_soundness", [](Ctx& ctx) {
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (out.outcome == CheckOutcome::failed) return;
      auto w = ctx.m.witness(s);
      bool indep = ctx.m.is_independent(s);
      if (w.has_value() != indep) {
        out = check_fail("witness existence disagrees with independence on " +
                         s.str());
        return;
      }
      if (!s.empty() &&
          classify(ctx.t, s, kDefaultSubsetCap).independent != indep) {
        out = check_fail("defect-scan independence disagrees on " + s.str());
        return;
      }
      if (!w) return;
      Matrix<F> rows(ctx.t.field(), 0, ctx.t.ambient_dim());
      for (std::size_t i : s.to_vector()) {
        auto it = w->vectors.find(i);
        if (it == w->vectors.end() || !ctx.t.entry(i).contains(it->second)) {
          out = check_fail("witness vector missing or outside its subspace "
                           "for " + s.str());
          return;
        }
        rows.append_row(it->second);
      }
      if (rows.rank() != static_cast<std::size_t>(s.size()))
        out = check_fail("witness vectors for " + s.str() +
                         " are linearly dependent");
    });
    return out;
  });

  add("matroid_axioms", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    if (ctx.m.rank(IndexSet{}) != 0)
      return check_fail("rank of the empty set is nonzero");
    CheckRun out = check_pass();
    for_each_subset(ground, [&](IndexSet s) {
      if (out.outcome == CheckOutcome::failed) return;
      int r = ctx.m.rank(s);
      if (r < 0 || r > static_cast<int>(s.size()) || r > ctx.m.span_dim(s)) {
        out = check_fail("rank of " + s.str() + " violates its bounds");
        return;
      }
      for (std::size_t j = 0; j < ground.size(); ++j) {
        if (s.contains(j)) continue;
        int rj = ctx.m.rank(s.with(j));
        if (rj < r || rj > r + 1) {
          out = check_fail("rank is not unit-increasing at " + s.str());
          return;
        }
      }
      if (ctx.m.is_independent(s)) {
        if (r != static_cast<int>(s.size())) {
          out = check_fail("independent set " + s.str() +
                           " has rank below its size");
          return;
        }
        for (std::size_t i : s.to_vector())
          if (!ctx.m.is_independent(s.without(i)))
            out = check_fail("independence is not hereditary at " + s.str());
      }
    });
    if (out.outcome == CheckOutcome::failed) return out;
    for_each_subset(ground, [&](IndexSet a) {
      if (out.outcome == CheckOutcome::failed) return;
      for_each_subset(ground, [&](IndexSet b) {
        if (out.outcome == CheckOutcome::failed) return;
        if (ctx.m.rank(a | b) + ctx.m.rank(a & b) >
            ctx.m.rank(a) + ctx.m.rank(b)) {
          out = check_fail("rank is not submodular on " + a.str() + ", " +
                           b.str());
          return;
        }
        if (ctx.m.is_independent(a) && ctx.m.is_independent(b) &&
            a.size() < b.size()) {
          bool augmented = false;
          for (std::size_t x : (b - a).to_vector())
            if (ctx.m.is_independent(a.with(x))) augmented = true;
          if (!augmented)
            out = check_fail("augmentation fails for " + a.str() + " into " +
                             b.str());
        }
      });
    });
    return out;
  });

  add("circuit_defect_minus_one", [](Ctx& ctx) {
    for (IndexSet c : ctx.circuits()) {
      if (ctx.m.defect(c) != -1)
        return check_fail("circuit " + c.str() + " has defect " +
                          std::to_string(ctx.m.defect(c)));
      if (ctx.m.is_independent(c))
        return check_fail("circuit " + c.str() + " is independent");
      for (std::size_t i : c.to_vector())
        if (!ctx.m.is_independent(c.without(i)))
          return check_fail("circuit " + c.str() + " is not minimal");
    }
    for (std::size_t l : ctx.m.loops().to_vector()) {
      IndexSet single = IndexSet{}.with(l);
      if (ctx.m.defect(single) != -1)
        return check_fail("loop " + std::to_string(l) + " has defect != -1");
      if (std::find(ctx.circuits().begin(), ctx.circuits().end(), single) ==
          ctx.circuits().end())
        return check_fail("loop " + std::to_string(l) + " is not a circuit");
    }
    return check_pass();
  });

  add("circuit_minus_element_is_bk", [](Ctx& ctx) {
    for (IndexSet c : ctx.circuits())
      for (std::size_t i : c.to_vector()) {
        IndexSet s = c.without(i);
        if (!ctx.m.is_independent(s) || ctx.m.defect(s) != 0)
          return check_fail("circuit " + c.str() + " minus " +
                            std::to_string(i) + " is not BK");
      }
    return check_pass();
  });

  add("equal_basis_defects", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    const auto& bases = ctx.bases();
    if (bases.empty()) return check_fail("matroid reports no bases");
    int bd = ctx.m.basis_defect();
    for (IndexSet b : bases) {
      if (ctx.m.defect(b) != bd)
        return check_fail("basis " + b.str() + " has defect " +
                          std::to_string(ctx.m.defect(b)) +
                          ", basis_defect says " + std::to_string(bd));
      if (ctx.m.span_dim(b) != ctx.m.span_dim(ground))
        return check_fail("basis " + b.str() +
                          " does not span the ground span");
    }
    if (bd < 0) return check_fail("negative basis defect");
    bool rank_eq_dim = ctx.m.rank(ground) == ctx.m.span_dim(ground);
    if (rank_eq_dim != (bd == 0))
      return check_fail("rank = span dim does not match basis defect 0");
    return check_pass();
  });

  add("max_bk_unique_equal_card", [](Ctx& ctx) {
    std::set<std::size_t> sizes;
    bool expect_degenerate =
        ctx.ground_independent() && ctx.m.defect(ctx.m.ground()) != 0;
    CheckRun out = check_pass();
    for (IndexSet b : ctx.bases()) {
      MaxBkResult<F> r = ctx.m.max_bk_in_basis(b);
      if (!r.set.subset_of(b) || ctx.m.defect(r.set) != 0 ||
          !ctx.m.is_independent(r.set))
        return check_fail("maximal BK-subtuple of basis " + b.str() +
                          " is not a BK subset");
      for_each_subset(b, [&](IndexSet s) {
        if (ctx.m.defect(s) == 0 && !s.subset_of(r.set))
          out = check_fail("zero-defect " + s.str() +
                           " escapes the maximal BK-subtuple of " + b.str());
      });
      if (out.outcome == CheckOutcome::failed) return out;
      if (r.degenerate != expect_degenerate)
        return check_fail("degenerate flag wrong for basis " + b.str());
      sizes.insert(r.set.size());
    }
    if (sizes.size() > 1)
      return check_fail("maximal BK-subtuples differ in cardinality");
    return out;
  });

  add("cyclic_restriction_bases_bk", [](Ctx& ctx) {
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (s.empty() || out.outcome == CheckOutcome::failed) return;
      if (!ctx.m.is_cyclic(s)) return;
      SubspaceTuple<F> sub = ctx.t.subtuple(s);
      MinkowskiMatroid<F> ms(sub);
      for (IndexSet b : ms.bases())
        if (ms.defect(b) != 0)
          out = check_fail("cyclic " + s.str() +
                           " has a restriction basis of nonzero defect");
    });
    return out;
  });

  add("essential_equals_cyclic", [](Ctx& ctx) {
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (s.empty() || out.outcome == CheckOutcome::failed) return;
      bool cyclic = ctx.m.is_cyclic(s);
      if (cyclic != classify(ctx.t, s, kDefaultSubsetCap).essential)
        out = check_fail("cyclic and essential disagree on " + s.str());
    });
    return out;
  });

  add("union_circuit_defect_drop", [](Ctx& ctx) {
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet k) {
      if (out.outcome == CheckOutcome::failed) return;
      for (IndexSet c : ctx.circuits()) {
        if (c.subset_of(k)) continue;
        if (ctx.m.defect(k | c) >= ctx.m.defect(k)) {
          out = check_fail("union with circuit " + c.str() +
                           " does not drop the defect of " + k.str());
          return;
        }
      }
    });
    return out;
  });

  add("max_essential_two_routes", [](Ctx& ctx) {
    if (ctx.ground_independent()) return check_skip();
    auto me = ctx.m.maximal_essential_subtuple();
    if (!me)
      return check_fail("dependent tuple lacks a maximal essential subtuple");
    if (!classify(ctx.t, *me, kDefaultSubsetCap).essential)
      return check_fail("maximal essential subtuple " + me->str() +
                        " is not essential");
    for (IndexSet c : ctx.circuits())
      if (!c.subset_of(*me))
        return check_fail("circuit " + c.str() + " escapes " + me->str());
    int dmin = 0;
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (!s.empty()) dmin = std::min(dmin, ctx.m.defect(s));
    });
    if (ctx.m.defect(*me) != dmin)
      return check_fail("maximal essential subtuple misses the minimal "
                        "defect");
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (!s.empty() && ctx.m.defect(s) == dmin && !me->subset_of(s))
        out = check_fail("minimal-defect set " + s.str() +
                         " does not contain " + me->str());
    });
    return out;
  });

  add("max_essential_quotient_independent", [](Ctx& ctx) {
    if (ctx.ground_independent()) return check_skip();
    auto me = ctx.m.maximal_essential_subtuple();
    if (!me)
      return check_fail("dependent tuple lacks a maximal essential subtuple");
    SubspaceTuple<F> q = ctx.t.quotient(*me);
    if (q.size() == 0) return check_pass();
    MinkowskiMatroid<F> mq(q);
    if (!mq.is_independent(mq.ground()))
      return check_fail("quotient by the maximal essential subtuple is "
                        "dependent");
    return check_pass();
  });

  add("quotient_equals_contraction", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    for (IndexSet k : ctx.bk_sets()) {
      ContractionView<F> cv = ctx.m.contract(k);
      SubspaceTuple<F> q = ctx.t.quotient(k);
      std::vector<std::size_t> comp = (ground - k).to_vector();
      MinkowskiMatroid<F> mq(q);
      CheckRun out = check_pass();
      for_each_subset(mq.ground(), [&](IndexSet rel) {
        if (mq.is_independent(rel) !=
            cv.is_independent(detail::lift_subset(comp, rel)))
          out = check_fail("quotient and contraction by " + k.str() +
                           " disagree on " + rel.str());
      });
      if (out.outcome == CheckOutcome::failed) return out;
    }
    return check_pass();
  });

  add("bk_sublattice_closure", [](Ctx& ctx) {
    if (!ctx.ground_independent()) return check_skip();
    LatticeOfSets lat = bk_sublattice(ctx.t);
    const auto& zd = ctx.bk_sets();
    if (lat.size() != zd.size())
      return check_fail("BK-sublattice misses zero-defect subsets");
    for (IndexSet a : zd)
      for (IndexSet b : zd)
        if (ctx.m.defect(a | b) != 0 || ctx.m.defect(a & b) != 0)
          return check_fail("zero-defect family is not closed at " + a.str() +
                            ", " + b.str());
    return check_pass();
  });

  add("realize_roundtrip", [](Ctx& ctx) {
    if (!ctx.ground_bk()) return check_skip();
    BkDecomposition<F> dec = bk_decomposition(ctx.t);
    SubspaceTuple<F> r = realize_poset(dec.poset, ctx.t.field());
    BkDecomposition<F> dec2 = bk_decomposition(r);
    if (!dec2.poset.isomorphic_to(dec.poset))
      return check_fail("realization round trip changes the Birkhoff poset");
    return check_pass();
  });

  add("bk_quotient_bijection", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    for (IndexSet k : ctx.bk_sets()) {
      SubspaceTuple<F> q = ctx.t.quotient(k);
      std::vector<std::size_t> comp = (ground - k).to_vector();
      DefectTable<F> dq(q, q.ground());
      std::vector<IndexSet> lifted;
      for_each_subset(q.ground(), [&](IndexSet rel) {
        if (dq.defect(rel) == 0)
          lifted.push_back(detail::lift_subset(comp, rel) | k);
      });
      std::vector<IndexSet> direct;
      for_each_subset(ground, [&](IndexSet s) {
        if (k.subset_of(s) && ctx.m.defect(s) == 0) direct.push_back(s);
      });
      if (sorted_sets(std::move(lifted)) != sorted_sets(std::move(direct)))
        return check_fail("zero-defect subsets of the quotient by " +
                          k.str() +
                          " do not match the zero-defect supersets");
    }
    return check_pass();
  });

  add("bk_decomposition_valid", [](Ctx& ctx) {
    if (!ctx.ground_bk()) return check_skip();
    BkDecomposition<F> dec = bk_decomposition(ctx.t);
    IndexSet covered;
    for (IndexSet b : dec.blocks) {
      if (b.empty() || !(covered & b).empty())
        return check_fail("decomposition blocks overlap or are empty");
      covered = covered | b;
    }
    if (covered != ctx.m.ground())
      return check_fail("decomposition blocks do not cover the tuple");
    for (const SubspaceTuple<F>& g : dec.graded) {
      TupleClass c = classify(g, g.ground(), kDefaultSubsetCap);
      if (!c.bk || !c.irreducible)
        return check_fail("a graded piece is not irreducible BK");
    }
    for (std::size_t a = 0; a < dec.poset.size(); ++a)
      for (std::size_t b = 0; b < dec.poset.size(); ++b)
        if (dec.poset.leq(a, b) !=
            dec.ideal_sets[a].subset_of(dec.ideal_sets[b]))
          return check_fail("poset order disagrees with ideal inclusion");
    for (std::size_t a = 0; a < dec.poset.size(); ++a) {
      bool a_minimal = true;
      for (std::size_t x = 0; x < dec.poset.size(); ++x)
        if (dec.poset.less(x, a)) a_minimal = false;
      if (!a_minimal) continue;
      for (std::size_t b = a + 1; b < dec.poset.size(); ++b) {
        bool b_minimal = true;
        for (std::size_t x = 0; x < dec.poset.size(); ++x)
          if (dec.poset.less(x, b)) b_minimal = false;
        if (!b_minimal) continue;
        if (intersect(ctx.t.span(dec.ideal_sets[a]),
                      ctx.t.span(dec.ideal_sets[b]))
                .dim() != 0)
          return check_fail("minimal block spans intersect off the origin");
      }
    }
    return check_pass();
  });

  add("filtration_shapes", [](Ctx& ctx) {
    if (!ctx.ground_bk()) return check_skip();
    BkDecomposition<F> dec = bk_decomposition(ctx.t);
    auto orders = dec.poset.linear_extensions(8);
    std::optional<std::vector<std::pair<std::size_t, int>>> reference;
    for (const auto& order : orders) {
      Filtration<F> f = maximal_bk_filtration(ctx.t, order);
      std::vector<std::pair<std::size_t, int>> shape;
      for (const SubspaceTuple<F>& g : f.graded)
        shape.emplace_back(g.size(), g.span_dim(g.ground()));
      std::sort(shape.begin(), shape.end());
      if (!reference) {
        reference = std::move(shape);
      } else if (shape != *reference) {
        return check_fail("filtration graded shapes depend on the linear "
                          "extension");
      }
    }
    return check_pass();
  });

  add("rank_bounds_monotone_submodular", [](Ctx& ctx) {
    IndexSet ground = ctx.m.ground();
    if (ctx.m.span_dim(IndexSet{}) != 0)
      return check_fail("polymatroid rank of the empty set is nonzero");
    CheckRun out = check_pass();
    for_each_subset(ground, [&](IndexSet s) {
      if (out.outcome == CheckOutcome::failed) return;
      int rk = ctx.m.span_dim(s);
      int dim_sum = 0;
      for (std::size_t i : s.to_vector())
        dim_sum += static_cast<int>(ctx.t.entry(i).dim());
      if (rk < 0 || rk > dim_sum ||
          rk > static_cast<int>(ctx.t.ambient_dim())) {
        out = check_fail("polymatroid rank of " + s.str() +
                         " violates its bounds");
        return;
      }
      for (std::size_t j = 0; j < ground.size(); ++j) {
        if (s.contains(j)) continue;
        int rj = ctx.m.span_dim(s.with(j));
        if (rj < rk ||
            rj > rk + static_cast<int>(ctx.t.entry(j).dim())) {
          out = check_fail("polymatroid rank is not monotone at " + s.str());
          return;
        }
      }
    });
    if (out.outcome == CheckOutcome::failed) return out;
    for_each_subset(ground, [&](IndexSet a) {
      if (out.outcome == CheckOutcome::failed) return;
      for_each_subset(ground, [&](IndexSet b) {
        if (ctx.m.span_dim(a | b) + ctx.m.span_dim(a & b) >
            ctx.m.span_dim(a) + ctx.m.span_dim(b)) {
          out = check_fail("polymatroid rank is not submodular on " +
                           a.str() + ", " + b.str());
        }
      });
    });
    return out;
  });

  add("dual_rank_equality", [](Ctx& ctx) {
    DualRealization<F> dual = dual_realization(ctx.t);
    int d = static_cast<int>(ctx.t.ambient_dim());
    CheckRun out = check_pass();
    for_each_subset(ctx.m.ground(), [&](IndexSet s) {
      if (out.outcome == CheckOutcome::failed) return;
      Subspace<F> cap =
          Subspace<F>::full(ctx.t.field(), ctx.t.ambient_dim());
      for (std::size_t i : s.to_vector())
        cap = intersect(cap, dual.dual_tuple.entry(i));
      if (d - static_cast<int>(cap.dim()) != ctx.m.span_dim(s))
        out = check_fail("dual codimension rank differs on " + s.str());
    });
    return out;
  });

  add("dual_partition_valid", [](Ctx& ctx) {
    if constexpr (!std::is_same_v<F, PrimeField>) {
      (void)ctx;
      return check_skip();
    } else {
      constexpr std::uint64_t kSuitePointCap = 4096;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < ctx.t.ambient_dim(); ++i) {
        total *= static_cast<std::uint64_t>(ctx.t.field().p);
        if (total > kSuitePointCap) return check_skip();
      }
      DualPartition part = dual_partition(ctx.t, kSuitePointCap);
      if (part.total_points != total)
        return check_fail("partition point count is wrong");
      std::uint64_t assigned = 0;
      for (const auto& b : part.blocks) assigned += b.size();
      if (assigned != total)
        return check_fail("partition blocks do not cover the dual space");
      const FlatLattice& fl = part.flat_lattice;
      for (std::size_t a = 0; a < fl.size(); ++a) {
        std::uint64_t annihilator = 1;
        for (int i = 0;
             i < static_cast<int>(ctx.t.ambient_dim()) - fl.ranks[a]; ++i)
          annihilator *= static_cast<std::uint64_t>(ctx.t.field().p);
        std::uint64_t covered = 0;
        for (std::size_t b = 0; b < fl.size(); ++b)
          if (fl.flats[a].subset_of(fl.flats[b]))
            covered += part.blocks[b].size();
        if (covered != annihilator)
          return check_fail("constructible formula fails at flat " +
                            fl.flats[a].str());
      }
      return check_pass();
    }
  });

  add("distributive_decomposition_roundtrip", [](Ctx& ctx) {
    auto dd = distributive_decomposition(ctx.t);
    const F& f = ctx.t.field();
    std::size_t d = ctx.t.ambient_dim();
    if (!dd) {
      // Absence must come with a distributivity violation in the
      // generated lattice: growth past the 2^d chain bound, or a triple
      // where x cap (y + z) exceeds (x cap y) + (x cap z).
      std::uint64_t bound =
          d < 63 ? (std::uint64_t{1} << d) : ~std::uint64_t{0};
      std::vector<Subspace<F>> members;
      std::set<std::string> seen;
      auto grow = [&](const Subspace<F>& s) {
        if (seen.insert(s.basis().str()).second) members.push_back(s);
      };
      grow(Subspace<F>::zero(f, d));
      for (std::size_t i = 0; i < ctx.t.size(); ++i) grow(ctx.t.entry(i));
      for (bool fresh = true; fresh && members.size() <= bound;) {
        fresh = false;
        std::size_t n = members.size();
        for (std::size_t a = 0; a < n && members.size() <= bound; ++a)
          for (std::size_t b = a + 1; b < n && members.size() <= bound;
               ++b) {
            std::size_t before = members.size();
            grow(sum(members[a], members[b]));
            grow(intersect(members[a], members[b]));
            if (members.size() > before) fresh = true;
          }
      }
      if (members.size() > bound) return check_pass();
      for (const auto& x : members)
        for (const auto& y : members)
          for (const auto& z : members)
            if (intersect(x, sum(y, z)).dim() !=
                sum(intersect(x, y), intersect(x, z)).dim())
              return check_pass();
      return check_fail("decomposition absent but the generated lattice "
                        "satisfies the distributive law");
    }
    std::vector<Subspace<F>> entries;
    for (std::size_t i = 0; i < ctx.t.size(); ++i)
      entries.push_back(Subspace<F>::span_of(
          ctx.t.entry(i).basis().times(dd->basis_change)));
    SubspaceTuple<F> t2(f, ctx.t.ambient_dim(), std::move(entries));
    for (std::size_t i = 0; i < t2.size(); ++i) {
      const Matrix<F>& basis = t2.entry(i).basis();
      for (std::size_t r = 0; r < basis.rows(); ++r) {
        std::size_t nonzero = 0;
        for (std::size_t c = 0; c < basis.cols(); ++c)
          if (!f.is_zero(basis.at(r, c))) ++nonzero;
        if (nonzero != 1)
          return check_fail("entry " + std::to_string(i) +
                            " is not coordinate in the new basis");
      }
    }
    Matrix<F> stacked(f, 0, d);
    for (const auto& block : dd->blocks)
      for (std::size_t r = 0; r < block.dim(); ++r)
        stacked.append_row(block.basis().row(r));
    if (stacked.rank() != stacked.rows())
      return check_fail("decomposition blocks are not independent");
    if (static_cast<int>(stacked.rows()) != ctx.m.span_dim(ctx.m.ground()))
      return check_fail("decomposition blocks do not span the tuple");
    for (std::size_t i = 0; i < ctx.t.size(); ++i) {
      Subspace<F> acc = Subspace<F>::zero(f, d);
      for (const auto& block : dd->blocks)
        if (ctx.t.entry(i).contains(block)) acc = sum(acc, block);
      if (acc.dim() != ctx.t.entry(i).dim())
        return check_fail("entry " + std::to_string(i) +
                          " is not a sum of decomposition blocks");
    }
    FlatLattice after = flats(t2);
    if (after.flats != ctx.flat_lattice().flats ||
        after.ranks != ctx.flat_lattice().ranks)
      return check_fail("basis change altered the flat lattice");
    return check_pass();
  });

  add("bk_polymatroid_link", [](Ctx& ctx) {
    if (!ctx.ground_bk()) return check_skip();
    BkDecomposition<F> dec = bk_decomposition(ctx.t);
    std::vector<Subspace<F>> spans;
    for (IndexSet ideal : dec.ideal_sets)
      spans.push_back(ctx.t.span(ideal));
    SubspaceTuple<F> span_tuple(ctx.t.field(), ctx.t.ambient_dim(),
                                std::move(spans));
    if (!flats(span_tuple).distributive())
      return check_fail("ideal-span tuple has a non-distributive flat "
                        "lattice");
    if (!distributive_decomposition(span_tuple))
      return check_fail("ideal-span tuple admits no coordinate "
                        "decomposition");
    return check_pass();
  });

  return checks;
}

}  // namespace detail

template <class F>
const std::vector<SuiteCheck<F>>& suite_checks() {
  static const std::vector<SuiteCheck<F>> checks =
      detail::build_suite_checks<F>();
  return checks;
}

}  // namespace minkmat
