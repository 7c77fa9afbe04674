#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "minkmat/io.hpp"
#include "minkmat/suite_checks.hpp"

namespace minkmat {

struct SuiteCounterexample {
  std::size_t case_index = 0;
  std::string tuple_text;
  std::string message;
};

struct CheckStats {
  std::size_t ran = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::optional<SuiteCounterexample> first_failure;
};

struct SuiteReport {
  std::size_t cases = 0;
  std::map<std::string, CheckStats> checks;

  bool ok() const {
    for (const auto& [name, stats] : checks)
      if (stats.failed) return false;
    return true;
  }

  std::size_t total_failures() const {
    std::size_t out = 0;
    for (const auto& [name, stats] : checks) out += stats.failed;
    return out;
  }
};

namespace detail {

template <class F>
CheckRun run_one_check(const SuiteCheck<F>& check, CaseContext<F>& ctx) {
  try {
    return check.run(ctx);
  } catch (const std::exception& e) {
    return check_fail(e.what());
  }
}

}  // namespace detail

/// One-tuple run of every registered check, keyed by check name. The
/// entry point for replaying serialized counterexamples.
template <class F>
std::map<std::string, CheckRun> run_all_checks(const SubspaceTuple<F>& t) {
  CaseContext<F> ctx(t);
  std::map<std::string, CheckRun> out;
  for (const auto& check : suite_checks<F>())
    out.emplace(check.name, detail::run_one_check(check, ctx));
  return out;
}

template <class F>
SuiteReport run_suite_typed(const GenConfig& cfg, F field) {
  cfg.validate();
  SuiteReport report;
  report.cases = cfg.cases;
  for (const auto& check : suite_checks<F>()) report.checks[check.name];

  for (std::size_t case_index = 0; case_index < cfg.cases; ++case_index) {
    SubspaceTuple<F> t = random_tuple(cfg, field, case_index);
    CaseContext<F> ctx(t);
    for (const auto& check : suite_checks<F>()) {
      CheckRun result = detail::run_one_check(check, ctx);
      CheckStats& stats = report.checks[check.name];
      if (result.outcome == CheckOutcome::skipped) {
        ++stats.skipped;
        continue;
      }
      ++stats.ran;
      if (result.outcome == CheckOutcome::failed) {
        ++stats.failed;
        if (!stats.first_failure)
          stats.first_failure = SuiteCounterexample{
              case_index, serialize_tuple(t), result.message};
      }
    }
  }
  return report;
}

inline SuiteReport run_suite(const GenConfig& cfg) {
  if (cfg.field.kind == FieldSpec::Kind::rationals)
    return run_suite_typed(cfg, RationalField{});
  return run_suite_typed(cfg, PrimeField(cfg.field.p));
}

}  // namespace minkmat
