#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "minkmat/matroid.hpp"

using namespace minkmat;
using fixtures::der1;
using fixtures::ex1;
using fixtures::ex2;
using fixtures::ex3;
using fixtures::build_tuple;

TEST_CASE("index sets") {
  IndexSet s{0, 2};
  CHECK(s.size() == 2);
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
  CHECK(s.str() == "{0,2}");
  CHECK(IndexSet{}.str() == "{}");
  CHECK(s.with(1) == IndexSet{0, 1, 2});
  CHECK(s.without(2) == IndexSet{0});
  CHECK((IndexSet{0, 1} | IndexSet{1, 2}) == IndexSet{0, 1, 2});
  CHECK((IndexSet{0, 1} & IndexSet{1, 2}) == IndexSet{1});
  CHECK((IndexSet{0, 1} - IndexSet{1, 2}) == IndexSet{0});
  CHECK(IndexSet{0, 1}.subset_of(IndexSet{0, 1, 2}));
  CHECK(IndexSet::all_below(3) == IndexSet{0, 1, 2});

  // lexicographic on sorted sequences, not on masks
  CHECK(IndexSet{0, 3} < IndexSet{1, 2});
  CHECK(IndexSet{2} < IndexSet{2, 3});
  CHECK_FALSE(IndexSet{1, 2} < IndexSet{0, 3});
  CHECK(IndexSet{} < IndexSet{0});

  std::vector<IndexSet> seen;
  for_each_subset(IndexSet{0, 2}, [&](IndexSet x) { seen.push_back(x); });
  CHECK(seen == std::vector<IndexSet>{IndexSet{}, IndexSet{0}, IndexSet{2},
                                      IndexSet{0, 2}});
}

TEST_CASE("tuple spans and defects") {
  auto t = ex1();
  CHECK(t.size() == 3);
  CHECK(t.ambient_dim() == 2);
  CHECK(t.span_dim(IndexSet{}) == 0);
  CHECK(t.defect(IndexSet{}) == 0);
  CHECK(t.span_dim(IndexSet{0, 1}) == 1);
  CHECK(t.defect(IndexSet{0, 1}) == -1);
  CHECK(t.defect(IndexSet{0, 2}) == 0);
  CHECK(t.defect(IndexSet{0, 1, 2}) == -1);
  CHECK_THROWS_AS(t.defect(IndexSet{3}), InputError);

  DefectTable<RationalField> table(t, t.ground());
  for_each_subset(t.ground(), [&](IndexSet s) {
    CHECK(table.defect(s) == t.defect(s));
  });
}

TEST_CASE("classify oracles") {
  auto c1 = classify(ex1(), IndexSet{0, 1});
  CHECK_FALSE(c1.independent);
  CHECK(c1.essential);
  CHECK(c1.cyclic);
  CHECK(c1.defect == -1);
  CHECK_FALSE(c1.bk);

  auto c2 = classify(ex3(), ex3().ground());
  CHECK(c2.independent);
  CHECK(c2.bk);
  CHECK_FALSE(c2.irreducible);
  CHECK_FALSE(c2.essential);

  auto d = der1();
  auto c3 = classify(d, d.ground());
  CHECK_FALSE(c3.independent);
  CHECK(c3.essential);
  CHECK(c3.defect == -1);
  for_each_subset(d.ground(), [&](IndexSet s) {
    if (s.size() != 2) return;
    auto c = classify(d, s);
    CHECK(c.bk);
    CHECK(c.independent);
  });

  // single 2-dim subspace: irreducible but not bk, not essential
  auto single = build_tuple(RationalField{}, 3, {{{1, 0, 0}, {0, 1, 0}}});
  auto c4 = classify(single, IndexSet{0});
  CHECK(c4.independent);
  CHECK(c4.irreducible);
  CHECK_FALSE(c4.bk);
  CHECK_FALSE(c4.essential);
  CHECK(c4.defect == 1);

  // a loop: zero subspace singleton is essential and cyclic
  auto loop = build_tuple(RationalField{}, 2, {{}});
  auto c5 = classify(loop, IndexSet{0});
  CHECK(c5.defect == -1);
  CHECK(c5.essential);
  CHECK_FALSE(c5.independent);

  CHECK_THROWS_AS(classify(ex1(), IndexSet{}), InputError);
}

TEST_CASE("quotient tuples") {
  auto t = ex2();
  auto q = t.quotient(IndexSet{0});
  CHECK(q.size() == 2);
  CHECK(q.ambient_dim() == 2);
  CHECK(q.entry(0).dim() == 0);  // L1' dies in V/<e1>
  CHECK(q.entry(1).dim() == 2);  // L3 stays full

  // quotient-defect identity over all kernels and subsets
  for (auto t2 : {ex1(), ex2(), ex3()}) {
    for_each_subset(t2.ground(), [&](IndexSet k) {
      auto qt = t2.quotient(k);
      std::vector<std::size_t> rest = (t2.ground() - k).to_vector();
      for_each_subset(IndexSet::all_below(qt.size()), [&](IndexSet sq) {
        IndexSet orig;
        for (std::size_t pos : sq.to_vector()) orig = orig.with(rest[pos]);
        CHECK(qt.defect(sq) == t2.defect(orig | k) - t2.defect(k));
      });
    });
  }

  auto whole = t.quotient(t.ground());
  CHECK(whole.size() == 0);
  CHECK(whole.ambient_dim() == 0);
}

TEST_CASE("independence and rank") {
  MinkowskiMatroid<RationalField> m(ex1());
  CHECK(m.is_independent(IndexSet{}));
  CHECK(m.is_independent(IndexSet{0, 2}));
  CHECK_FALSE(m.is_independent(IndexSet{0, 1}));
  CHECK_FALSE(m.is_independent(IndexSet{0, 1, 2}));
  CHECK(m.rank(m.ground()) == 2);
  CHECK(m.rank(IndexSet{}) == 0);
  CHECK(m.rank(IndexSet{0, 1}) == 1);

  MinkowskiMatroid<PrimeField> d(der1());
  CHECK(d.rank(d.ground()) == 2);
  for_each_subset(d.ground(), [&](IndexSet s) {
    if (s.size() == 2) CHECK(d.is_independent(s));
  });
  CHECK_FALSE(d.is_independent(d.ground()));
}

TEST_CASE("witness search") {
  MinkowskiMatroid<RationalField> m(ex1());
  auto w = m.witness(IndexSet{0, 2});
  REQUIRE(w.has_value());
  RationalField q;
  using Row = Matrix<RationalField>::Row;
  CHECK(w->vectors.at(0) == Row{q.one(), q.zero()});
  CHECK(w->vectors.at(2) == Row{q.zero(), q.one()});
  CHECK_FALSE(m.witness(IndexSet{0, 1}).has_value());
  CHECK(m.witness(IndexSet{})->vectors.empty());

  // singleton: first basis row
  auto ws = m.witness(IndexSet{1});
  REQUIRE(ws.has_value());
  CHECK(ws->vectors.at(1) == Row{q.one(), q.zero()});

  // witness vectors always lie in their subspaces and are independent
  for (auto s : {IndexSet{0, 2}, IndexSet{1, 2}}) {
    auto wit = m.witness(s);
    REQUIRE(wit.has_value());
    Matrix<RationalField> rows(q, 0, 2);
    for (auto& [i, v] : wit->vectors) {
      CHECK(m.tuple().entry(i).contains(v));
      rows.append_row(v);
    }
    CHECK(rows.rank() == s.size());
  }
}

TEST_CASE("bases circuits loops coloops") {
  MinkowskiMatroid<RationalField> m(ex1());
  CHECK(m.bases() == std::vector<IndexSet>{IndexSet{0, 2}, IndexSet{1, 2}});
  CHECK(m.circuits() == std::vector<IndexSet>{IndexSet{0, 1}});
  CHECK(m.loops() == IndexSet{});
  CHECK(m.coloops() == IndexSet{2});
  CHECK(m.basis_defect() == 0);

  MinkowskiMatroid<PrimeField> d(der1());
  CHECK(d.bases() ==
        std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{0, 2}, IndexSet{1, 2}});
  CHECK(d.circuits() == std::vector<IndexSet>{IndexSet{0, 1, 2}});
  CHECK(d.loops() == IndexSet{});
  CHECK(d.coloops() == IndexSet{});

  MinkowskiMatroid<RationalField> m2(ex2());
  CHECK(m2.basis_defect() == 1);

  auto with_loop = build_tuple(RationalField{}, 2, {{{1, 0}}, {}});
  MinkowskiMatroid<RationalField> ml(with_loop);
  CHECK(ml.loops() == IndexSet{1});
  CHECK(ml.tuple().defect(IndexSet{1}) == -1);
  CHECK(ml.circuits() == std::vector<IndexSet>{IndexSet{1}});
  CHECK(ml.bases() == std::vector<IndexSet>{IndexSet{0}});
}

TEST_CASE("contraction") {
  MinkowskiMatroid<RationalField> m(ex1());
  auto c = m.contract(IndexSet{0});
  CHECK(c.ground() == IndexSet{1, 2});
  CHECK_FALSE(c.is_independent(IndexSet{1}));
  CHECK(c.is_independent(IndexSet{2}));
  CHECK(c.rank(IndexSet{1, 2}) == 1);

  auto trivial = m.contract(IndexSet{});
  for_each_subset(m.ground(), [&](IndexSet s) {
    CHECK(trivial.is_independent(s) == m.is_independent(s));
  });

  CHECK_THROWS_AS(m.contract(IndexSet{0, 1}), InputError);

  // EX3 contract {0}: everything independent afterwards
  MinkowskiMatroid<RationalField> m3(ex3());
  auto c3 = m3.contract(IndexSet{0});
  for_each_subset(c3.ground(), [&](IndexSet s) {
    CHECK(c3.is_independent(s));
  });
}

TEST_CASE("maximal bk in basis") {
  MinkowskiMatroid<RationalField> m2(ex2());
  auto r = m2.max_bk_in_basis(IndexSet{0, 2});
  CHECK(r.set == IndexSet{0});
  CHECK_FALSE(r.degenerate);
  CHECK(m2.max_bk_in_basis(IndexSet{1, 2}).set == IndexSet{1});

  MinkowskiMatroid<RationalField> m1(ex1());
  CHECK(m1.max_bk_in_basis(IndexSet{0, 2}).set == IndexSet{0, 2});

  MinkowskiMatroid<PrimeField> d(der1());
  for (IndexSet b : d.bases()) CHECK(d.max_bk_in_basis(b).set == b);

  CHECK_THROWS_AS(m1.max_bk_in_basis(IndexSet{0, 1}), InputError);

  // independent ground with positive defect: degenerate flag set
  auto fat = build_tuple(RationalField{}, 3, {{{1, 0, 0}, {0, 1, 0}}});
  MinkowskiMatroid<RationalField> mf(fat);
  auto rf = mf.max_bk_in_basis(IndexSet{0});
  CHECK(rf.set == IndexSet{});
  CHECK(rf.degenerate);
}

TEST_CASE("cyclic and maximal essential") {
  MinkowskiMatroid<RationalField> m(ex1());
  CHECK(m.is_cyclic(IndexSet{0, 1}));
  CHECK_FALSE(m.is_cyclic(m.ground()));
  CHECK_FALSE(m.is_cyclic(IndexSet{2}));
  CHECK(m.is_cyclic(IndexSet{}) == false);

  MinkowskiMatroid<PrimeField> d(der1());
  CHECK(d.is_cyclic(d.ground()));

  REQUIRE(m.maximal_essential_subtuple().has_value());
  CHECK(*m.maximal_essential_subtuple() == IndexSet{0, 1});
  MinkowskiMatroid<RationalField> m2(ex2());
  CHECK(*m2.maximal_essential_subtuple() == IndexSet{0, 1});
  CHECK(*MinkowskiMatroid<PrimeField>(der1()).maximal_essential_subtuple() ==
        der1().ground());

  MinkowskiMatroid<RationalField> m3(ex3());
  CHECK_FALSE(m3.maximal_essential_subtuple().has_value());

  // quotient by the maximal essential subtuple is independent
  auto q = ex2().quotient(IndexSet{0, 1});
  MinkowskiMatroid<RationalField> mq(q);
  CHECK(mq.is_independent(mq.ground()));
}

TEST_CASE("mutation hook inflates rank") {
  MinkowskiMatroid<RationalField> m(ex1());
  CHECK(m.rank(m.ground()) == 2);
  mutation_hooks().inflate_rank = true;
  CHECK(m.rank(m.ground()) == 3);
  CHECK(m.rank(IndexSet{}) == 0);
  CHECK(m.basis_defect() == -1);
  mutation_hooks().inflate_rank = false;
  CHECK(m.rank(m.ground()) == 2);
}

TEST_CASE("subset cap guard") {
  std::vector<std::vector<std::vector<long long>>> many(5, {{1, 0}});
  auto t = build_tuple(RationalField{}, 2, many);
  CHECK_THROWS_AS(MinkowskiMatroid<RationalField>(t, 4), InputError);
  CHECK_NOTHROW(MinkowskiMatroid<RationalField>(t, 5));
  CHECK_THROWS_AS(classify(t, t.ground(), 4), InputError);
}
