#pragma once

#include "minkmat/tuple.hpp"

namespace fixtures {

using minkmat::Matrix;
using minkmat::PrimeField;
using minkmat::RationalField;
using minkmat::Subspace;
using minkmat::SubspaceTuple;

template <class F>
Subspace<F> make_subspace(F f, std::size_t ambient,
                          std::vector<std::vector<long long>> rows) {
  Matrix<F> m(f, 0, ambient);
  for (const auto& r : rows) {
    typename Matrix<F>::Row row;
    for (long long v : r) row.push_back(f.from_int(v));
    m.append_row(row);
  }
  return Subspace<F>::span_of(std::move(m));
}

template <class F>
SubspaceTuple<F> build_tuple(F f, std::size_t ambient,
                            std::vector<std::vector<std::vector<long long>>>
                                subspaces) {
  std::vector<Subspace<F>> entries;
  for (auto& rows : subspaces)
    entries.push_back(make_subspace(f, ambient, rows));
  return SubspaceTuple<F>(f, ambient, std::move(entries));
}

// Two copies of the line <e1> plus the whole plane.
inline SubspaceTuple<RationalField> ex1() {
  return build_tuple(RationalField{}, 2, {{{1, 0}}, {{1, 0}}, {{1, 0}, {0, 1}}});
}

// Two copies of the line <e1> plus the whole 3-space.
inline SubspaceTuple<RationalField> ex2() {
  return build_tuple(RationalField{}, 3,
                    {{{1, 0, 0}}, {{1, 0, 0}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
}

// The line <e1>, the plane <e2,e3>, and the whole 3-space.
inline SubspaceTuple<RationalField> ex3() {
  return build_tuple(RationalField{}, 3,
                    {{{1, 0, 0}}, {{0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
}

// The three distinct lines of GF(2)^2.
inline SubspaceTuple<PrimeField> der1() {
  return build_tuple(PrimeField(2), 2, {{{1, 0}}, {{0, 1}}, {{1, 1}}});
}

// Full flag <e1> in <e1,e2> in Q^2 with a skewed first line.
inline SubspaceTuple<RationalField> skew_flag() {
  return build_tuple(RationalField{}, 2, {{{1, 1}}, {{1, 0}, {0, 1}}});
}

}  // namespace fixtures
