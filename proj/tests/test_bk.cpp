#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "minkmat/bk.hpp"

using namespace minkmat;
using fixtures::build_tuple;
using fixtures::make_subspace;

namespace {

Poset v_poset() {
  return Poset::from_covers({"a", "b", "c"}, {{0, 1}, {0, 2}});
}

Poset lambda_poset() {
  return Poset::from_covers({"a", "b", "c"}, {{0, 2}, {1, 2}});
}

std::vector<IndexSet> sorted(std::vector<IndexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("poset construction and validation") {
  Poset c = Poset::chain(3);
  CHECK(c.size() == 3);
  CHECK(c.leq(0, 2));
  CHECK(c.less(0, 2));
  CHECK_FALSE(c.less(2, 0));
  CHECK(c.cover_pairs() ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});

  Poset a = Poset::antichain(2);
  CHECK_FALSE(a.comparable(0, 1));
  CHECK(a.cover_pairs().empty());

  CHECK_THROWS_AS(Poset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}),
                  InputError);
  CHECK_THROWS_AS(Poset::from_covers({"a"}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Poset::from_covers({"a"}, {{0, 0}}), InputError);

  // Hand-built relations must satisfy the order axioms.
  CHECK_THROWS_AS(Poset::from_leq({"x", "y"}, {{true, true}, {true, true}}),
                  InputError);
  CHECK_THROWS_AS(Poset::from_leq({"x", "y"}, {{false, false}, {false, true}}),
                  InputError);
  CHECK_THROWS_AS(
      Poset::from_leq({"x", "y", "z"}, {{true, true, false},
                                        {false, true, true},
                                        {false, false, true}}),
      InputError);

  Poset v = v_poset();
  CHECK(v.principal_ideal(1) == IndexSet{0, 1});
  CHECK(v.principal_ideal(0) == IndexSet{0});
  CHECK(v.is_ideal(IndexSet{0, 2}));
  CHECK_FALSE(v.is_ideal(IndexSet{1}));
  CHECK(v.is_ideal(IndexSet{}));
}

TEST_CASE("order ideals and linear extensions") {
  Poset v = v_poset();
  CHECK(v.order_ideals() ==
        std::vector<IndexSet>{IndexSet{}, IndexSet{0}, IndexSet{0, 1},
                              IndexSet{0, 2}, IndexSet{0, 1, 2}});

  CHECK(v.canonical_linear_extension() == std::vector<std::size_t>{0, 1, 2});
  CHECK(v.is_linear_extension({0, 2, 1}));
  CHECK_FALSE(v.is_linear_extension({1, 0, 2}));
  CHECK_FALSE(v.is_linear_extension({0, 1}));
  CHECK_FALSE(v.is_linear_extension({0, 0, 1}));

  CHECK(v.linear_extensions(10).size() == 2);
  CHECK(Poset::chain(4).linear_extensions(10).size() == 1);
  CHECK(Poset::antichain(3).linear_extensions(100).size() == 6);
  CHECK(Poset::antichain(3).linear_extensions(4).size() == 4);
}

TEST_CASE("poset isomorphism") {
  Poset relabeled = Poset::from_covers({"x", "y", "z"}, {{2, 0}, {0, 1}});
  CHECK(Poset::chain(3).isomorphic_to(relabeled));
  CHECK_FALSE(Poset::chain(3).isomorphic_to(Poset::antichain(3)));
  CHECK_FALSE(Poset::chain(3).isomorphic_to(Poset::chain(2)));

  CHECK(v_poset().isomorphic_to(v_poset()));
  CHECK_FALSE(v_poset().isomorphic_to(lambda_poset()));
  Poset v2 = Poset::from_covers({"p", "q", "r"}, {{2, 0}, {2, 1}});
  CHECK(v_poset().isomorphic_to(v2));

  CHECK(Poset::antichain(8).isomorphic_to(Poset::antichain(8)));
  CHECK_THROWS_AS(Poset::antichain(11).canonical_certificate(), InputError);
}

TEST_CASE("lattice tables") {
  LatticeOfSets b2 = LatticeOfSets::from_family(
      {IndexSet{}, IndexSet{0}, IndexSet{1}, IndexSet{0, 1}});
  CHECK(b2.size() == 4);
  CHECK(b2.tables().distributive());
  // Members sort lexicographically: {}, {0}, {0,1}, {1}.
  CHECK(b2.join_irreducible_indices() == std::vector<std::size_t>{1, 3});
  CHECK(b2.cover_pairs().size() == 4);
  CHECK(b2.index_of(IndexSet{1}).value() == 3);
  CHECK_FALSE(b2.index_of(IndexSet{2}).has_value());

  // Dedupe and closure validation.
  CHECK(LatticeOfSets::from_family({IndexSet{}, IndexSet{0}, IndexSet{0}})
            .size() == 2);
  CHECK_THROWS_AS(LatticeOfSets::from_family({IndexSet{0}}), InputError);
  CHECK_THROWS_AS(
      LatticeOfSets::from_family({IndexSet{}, IndexSet{0}, IndexSet{1}}),
      InputError);
  CHECK_THROWS_AS(
      LatticeOfSets::from_family(
          {IndexSet{}, IndexSet{0, 1}, IndexSet{1, 2}, IndexSet{0, 1, 2}}),
      InputError);
}

TEST_CASE("distributivity detection") {
  // Diamond M3: bottom 0, atoms 1..3, top 4.
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i) {
    leq[i][i] = true;
    leq[0][i] = true;
    leq[i][4] = true;
  }
  std::vector<std::vector<std::size_t>> meet(5, std::vector<std::size_t>(5));
  std::vector<std::vector<std::size_t>> join(5, std::vector<std::size_t>(5));
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      if (a == b) {
        meet[a][b] = a;
        join[a][b] = a;
      } else if (a == 0 || b == 4) {
        meet[a][b] = a;
        join[a][b] = b;
      } else if (b == 0 || a == 4) {
        meet[a][b] = b;
        join[a][b] = a;
      } else {
        meet[a][b] = 0;
        join[a][b] = 4;
      }
    }
  LatticeTables m3 = LatticeTables::checked(leq, meet, join);
  CHECK_FALSE(m3.distributive());
  CHECK(m3.join_irreducibles() == std::vector<std::size_t>{1, 2, 3});

  // Pentagon N5: 0 < 1 < 2 < 4 and 0 < 3 < 4.
  std::vector<std::vector<bool>> nleq(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i) {
    nleq[i][i] = true;
    nleq[0][i] = true;
    nleq[i][4] = true;
  }
  nleq[1][2] = true;
  auto nmeet = meet;
  auto njoin = join;
  nmeet[1][2] = nmeet[2][1] = 1;
  njoin[1][2] = njoin[2][1] = 2;
  LatticeTables n5 = LatticeTables::checked(nleq, nmeet, njoin);
  CHECK_FALSE(n5.distributive());

  CHECK(LatticeOfSets::from_family({IndexSet{}, IndexSet{0}, IndexSet{0, 1}})
            .tables()
            .distributive());

  // A broken meet table must not pass verification.
  auto bad = meet;
  bad[1][2] = 4;
  CHECK_THROWS_AS(LatticeTables::checked(leq, bad, join),
                  InternalCheckError);
}

TEST_CASE("birkhoff poset of a set lattice") {
  std::vector<IndexSet> boolean3;
  for_each_subset(IndexSet::all_below(3),
                  [&](IndexSet s) { boolean3.push_back(s); });
  Poset p = birkhoff_poset(LatticeOfSets::from_family(boolean3));
  CHECK(p.size() == 3);
  CHECK(p.isomorphic_to(Poset::antichain(3)));
  CHECK(p.labels() == std::vector<std::string>{"{0}", "{1}", "{2}"});

  Poset q = birkhoff_poset(LatticeOfSets::from_family(
      {IndexSet{}, IndexSet{0}, IndexSet{0, 1}}));
  CHECK(q.isomorphic_to(Poset::chain(2)));
  CHECK(q.less(0, 1));
}

TEST_CASE("bk sublattice") {
  auto lat = bk_sublattice(fixtures::ex3());
  CHECK(lat.members() ==
        std::vector<IndexSet>{IndexSet{}, IndexSet{0}, IndexSet{0, 1, 2}});

  auto flag = build_tuple(RationalField{}, 2, {{{1, 0}}, {{1, 0}, {0, 1}}});
  CHECK(bk_sublattice(flag).members() ==
        std::vector<IndexSet>{IndexSet{}, IndexSet{0}, IndexSet{0, 1}});

  // Dependent tuples are rejected with the offending subset.
  CHECK_THROWS_AS(bk_sublattice(fixtures::der1()), NotBkError);
  try {
    bk_sublattice(fixtures::ex2());
    FAIL("expected NotBkError");
  } catch (const NotBkError& e) {
    CHECK(e.subset() == IndexSet{0, 1});
    CHECK(e.defect() == -1);
  }

  // Independent but nonzero ground defect: sublattice fine, BK not.
  auto fat = build_tuple(RationalField{}, 3, {{{1, 0, 0}, {0, 1, 0}}});
  CHECK(bk_sublattice(fat).members() == std::vector<IndexSet>{IndexSet{}});
  try {
    bk_decomposition(fat);
    FAIL("expected NotBkError");
  } catch (const NotBkError& e) {
    CHECK(e.subset() == IndexSet{0});
    CHECK(e.defect() == 1);
  }
}

TEST_CASE("quotient of a subtuple") {
  auto t = fixtures::ex2();
  auto q = quotient_of_subtuple(t, IndexSet{1, 2}, IndexSet{1});
  CHECK(q.size() == 1);
  CHECK(q.ambient_dim() == 2);
  CHECK(q.entry(0).dim() == 2);

  auto whole = quotient_of_subtuple(t, t.ground(), IndexSet{});
  CHECK(whole == t);
}

TEST_CASE("bk decomposition") {
  auto dec = bk_decomposition(fixtures::ex3());
  CHECK(dec.poset.size() == 2);
  CHECK(dec.poset.less(0, 1));
  CHECK(dec.poset.labels() == std::vector<std::string>{"{0}", "{0,1,2}"});
  CHECK(dec.ideal_sets ==
        std::vector<IndexSet>{IndexSet{0}, IndexSet{0, 1, 2}});
  CHECK(dec.blocks == std::vector<IndexSet>{IndexSet{0}, IndexSet{1, 2}});
  REQUIRE(dec.graded.size() == 2);
  CHECK(dec.graded[0].size() == 1);
  CHECK(dec.graded[0].entry(0).dim() == 1);
  CHECK(dec.graded[1].size() == 2);
  CHECK(dec.graded[1].ambient_dim() == 2);
  CHECK(dec.graded[1].entry(0).dim() == 2);
  CHECK(dec.graded[1].entry(1).dim() == 2);

  auto pair = build_tuple(RationalField{}, 2, {{{1, 0}}, {{0, 1}}});
  auto pd = bk_decomposition(pair);
  CHECK(pd.poset.isomorphic_to(Poset::antichain(2)));
  CHECK(sorted(pd.blocks) ==
        std::vector<IndexSet>{IndexSet{0}, IndexSet{1}});

  CHECK_THROWS_AS(bk_decomposition(fixtures::der1()), NotBkError);
}

TEST_CASE("bk filtration") {
  auto t = fixtures::ex3();
  auto f = maximal_bk_filtration(t, {0, 1});
  CHECK(f.chain == std::vector<IndexSet>{IndexSet{}, IndexSet{0},
                                         IndexSet{0, 1, 2}});
  REQUIRE(f.graded.size() == 2);
  CHECK(f.graded[0].size() == 1);
  CHECK(f.graded[1].size() == 2);
  CHECK_THROWS_AS(maximal_bk_filtration(t, {1, 0}), InputError);

  auto r = realize_poset(v_poset(), RationalField{});
  for (auto order : {std::vector<std::size_t>{0, 1, 2}, {0, 2, 1}}) {
    auto rf = maximal_bk_filtration(r, order);
    CHECK(rf.chain.size() == 4);
    CHECK(rf.chain.front() == IndexSet{});
    CHECK(rf.chain.back() == r.ground());
    for (const auto& g : rf.graded) CHECK(g.size() == 1);
  }
  CHECK_THROWS_AS(maximal_bk_filtration(r, {1, 0, 2}), InputError);
}

TEST_CASE("poset realization") {
  auto f = RationalField{};
  auto t = realize_poset(v_poset(), f);
  CHECK(t.size() == 3);
  CHECK(t.ambient_dim() == 3);
  CHECK(t.entry(0).dim() == 1);
  CHECK(t.entry(1).dim() == 2);
  CHECK(t.entry(2).dim() == 2);
  CHECK(t.entry(1).contains({f.one(), f.zero(), f.zero()}));
  CHECK(t.entry(1).contains({f.zero(), f.one(), f.zero()}));
  CHECK_FALSE(t.entry(1).contains({f.zero(), f.zero(), f.one()}));

  CHECK(bk_sublattice(t).size() == 5);
  auto dec = bk_decomposition(t);
  CHECK(dec.poset.isomorphic_to(v_poset()));
  CHECK(dec.blocks ==
        std::vector<IndexSet>{IndexSet{0}, IndexSet{1}, IndexSet{2}});

  auto chain = realize_poset(Poset::chain(3), f);
  CHECK(chain.entry(0).dim() == 1);
  CHECK(chain.entry(1).dim() == 2);
  CHECK(chain.entry(2).dim() == 3);

  auto anti = realize_poset(Poset::antichain(3), PrimeField(2));
  for (std::size_t i = 0; i < 3; ++i) CHECK(anti.entry(i).dim() == 1);
  CHECK(bk_sublattice(anti).size() == 8);

  CHECK_THROWS_AS(realize_poset(Poset::antichain(0), f), InputError);
  CHECK_THROWS_AS(realize_poset(Poset::chain(6), f, 5), InputError);
}

TEST_CASE("coordinate basis") {
  auto f = RationalField{};
  auto flag = build_tuple(f, 2, {{{1, 0}}, {{1, 0}, {0, 1}}});
  CHECK(coordinate_basis(flag) == Matrix<RationalField>::identity(f, 2));

  auto skew = fixtures::skew_flag();
  auto m = coordinate_basis(skew);
  CHECK(m.apply_left({f.one(), f.one()}) ==
        Matrix<RationalField>::Row{f.one(), f.zero()});

  auto deep = build_tuple(f, 3,
                          {{{1, 1, 1}},
                           {{1, 1, 1}, {0, 1, 0}},
                           {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  auto dm = coordinate_basis(deep);
  CHECK(dm.apply_left({f.one(), f.one(), f.one()}) ==
        Matrix<RationalField>::Row{f.one(), f.zero(), f.zero()});
  // The middle subspace must land inside the first two coordinates.
  for (std::size_t r = 0; r < 2; ++r) {
    auto img = dm.apply_left(deep.entry(1).basis().row(r));
    CHECK(f.is_zero(img[2]));
  }

  auto gf = coordinate_basis(realize_poset(v_poset(), PrimeField(2)));
  CHECK(gf == Matrix<PrimeField>::identity(PrimeField(2), 3));

  CHECK_THROWS_AS(coordinate_basis(fixtures::der1()), NotBkError);
}
