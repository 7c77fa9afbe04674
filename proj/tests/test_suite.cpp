#include <catch2/catch_amalgamated.hpp>

#include "minkmat/suite.hpp"

using namespace minkmat;

namespace {

struct HookGuard {
  bool saved = mutation_hooks().inflate_rank;
  ~HookGuard() { mutation_hooks().inflate_rank = saved; }
};

std::vector<std::string> check_names_of(const SuiteReport& r) {
  std::vector<std::string> out;
  for (const auto& [name, stats] : r.checks) out.push_back(name);
  return out;
}

}  // namespace

TEST_CASE("random tuple generation is deterministic") {
  GenConfig cfg;
  cfg.field = FieldSpec::gf(3);
  cfg.seed = 42;
  PrimeField f(3);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(random_tuple(cfg, f, i) == random_tuple(cfg, f, i));

  GenConfig other = cfg;
  other.seed = 43;
  bool any_differs = false;
  for (std::size_t i = 0; i < 5; ++i)
    if (!(random_tuple(cfg, f, i) == random_tuple(other, f, i)))
      any_differs = true;
  CHECK(any_differs);

  SECTION("shapes stay within the configured bounds") {
    for (std::size_t i = 0; i < 50; ++i) {
      auto t = random_tuple(cfg, f, i);
      CHECK(t.size() >= 1);
      CHECK(t.size() <= cfg.n);
      CHECK(t.ambient_dim() >= 1);
      CHECK(t.ambient_dim() <= cfg.ambient_dim);
      for (std::size_t j = 0; j < t.size(); ++j)
        CHECK(t.entry(j).dim() <= cfg.max_generators);
    }
  }

  SECTION("max_generators zero yields all-zero entries") {
    GenConfig zeros = cfg;
    zeros.max_generators = 0;
    auto t = random_tuple(zeros, f, 0);
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(t.entry(j).dim() == 0);
  }

  SECTION("a fixed stream hits dependent and independent tuples") {
    GenConfig stream;
    stream.field = FieldSpec::gf(3);
    stream.ambient_dim = 4;
    stream.n = 5;
    stream.seed = 7;
    bool saw_dependent = false;
    bool saw_independent = false;
    for (std::size_t i = 0; i < 100; ++i) {
      auto t = random_tuple(stream, f, i);
      MinkowskiMatroid<PrimeField> m(t);
      (m.is_independent(m.ground()) ? saw_independent : saw_dependent) = true;
    }
    CHECK(saw_dependent);
    CHECK(saw_independent);
  }
}

TEST_CASE("generator configuration validation") {
  GenConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  GenConfig bad = cfg;
  bad.ambient_dim = 0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.ambient_dim = 9;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.n = 11;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = cfg;
  bad.max_generators = 17;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("empty suite run lists every check") {
  GenConfig cfg;
  cfg.cases = 0;
  SuiteReport report = run_suite(cfg);
  CHECK(report.cases == 0);
  CHECK(report.ok());
  CHECK(report.total_failures() == 0);
  CHECK(report.checks.size() == 25);
  for (const char* name :
       {"circuit_defect_minus_one", "circuit_minus_element_is_bk",
        "equal_basis_defects", "max_bk_unique_equal_card",
        "essential_equals_cyclic", "max_essential_two_routes",
        "quotient_equals_contraction", "quotient_defect_identity",
        "bk_sublattice_closure", "dual_rank_equality", "matroid_axioms",
        "rank_bounds_monotone_submodular", "witness_soundness",
        "realize_roundtrip", "dual_partition_valid"})
    CHECK(report.checks.count(name) == 1);
  for (const auto& [name, stats] : report.checks) {
    CHECK(stats.ran == 0);
    CHECK(stats.skipped == 0);
    CHECK(stats.failed == 0);
    CHECK(!stats.first_failure);
  }
}

TEST_CASE("suite passes on random streams over every field") {
  for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf(2),
                          FieldSpec::gf(3), FieldSpec::gf(5)}) {
    GenConfig cfg;
    cfg.field = field;
    cfg.cases = 40;
    cfg.seed = 11;
    SuiteReport report = run_suite(cfg);
    INFO("field kind " << static_cast<int>(field.kind) << " p " << field.p);
    CHECK(report.ok());
    CHECK(report.total_failures() == 0);
    for (const auto& [name, stats] : report.checks) {
      INFO("check " << name);
      CHECK(stats.ran + stats.skipped == cfg.cases);
    }
    // Checks without field-specific skips must actually run.
    CHECK(report.checks.at("matroid_axioms").ran == cfg.cases);
    CHECK(report.checks.at("witness_soundness").ran == cfg.cases);
  }
}

TEST_CASE("suite reports are reproducible") {
  GenConfig cfg;
  cfg.field = FieldSpec::gf(2);
  cfg.cases = 20;
  cfg.seed = 99;
  SuiteReport a = run_suite(cfg);
  SuiteReport b = run_suite(cfg);
  REQUIRE(check_names_of(a) == check_names_of(b));
  for (const auto& [name, stats] : a.checks) {
    CHECK(stats.ran == b.checks.at(name).ran);
    CHECK(stats.skipped == b.checks.at(name).skipped);
    CHECK(stats.failed == b.checks.at(name).failed);
  }
}

TEST_CASE("rank mutation is caught and replayable") {
  HookGuard guard;
  GenConfig cfg;
  cfg.cases = 25;
  cfg.seed = 5;

  mutation_hooks().inflate_rank = true;
  SuiteReport broken = run_suite(cfg);
  CHECK(!broken.ok());
  CHECK(broken.total_failures() >= 1);

  std::string failing_check;
  SuiteCounterexample ce;
  for (const auto& [name, stats] : broken.checks)
    if (stats.first_failure) {
      failing_check = name;
      ce = *stats.first_failure;
      break;
    }
  REQUIRE(!failing_check.empty());
  REQUIRE(!ce.tuple_text.empty());
  CHECK(!ce.message.empty());

  // The serialized counterexample reproduces the failure on its own.
  AnyTuple replay = parse_tuple_file(ce.tuple_text);
  auto outcomes = with_tuple(
      replay, [](const auto& t) { return run_all_checks(t); });
  REQUIRE(outcomes.count(failing_check) == 1);
  CHECK(outcomes.at(failing_check).outcome == CheckOutcome::failed);
  CHECK(outcomes.at(failing_check).message == ce.message);

  // With the hook off the same tuple is clean.
  mutation_hooks().inflate_rank = false;
  auto clean = with_tuple(
      replay, [](const auto& t) { return run_all_checks(t); });
  for (const auto& [name, run] : clean)
    CHECK(run.outcome != CheckOutcome::failed);

  SuiteReport fixed = run_suite(cfg);
  CHECK(fixed.ok());
}
