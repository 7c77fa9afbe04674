#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace minkmat {

/// Thrown when an input value violates a precondition (bad modulus,
/// mismatched ambient dimensions, malformed files, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a construction-time consistency check fails. These checks
/// guard equalities that hold by theorem; a failure indicates a bug.
class InternalCheckError : public std::logic_error {
 public:
  explicit InternalCheckError(const std::string& what)
      : std::logic_error(what) {}
};

inline bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::int64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

/// Runtime description of the coefficient field: the rationals or GF(p).
struct FieldSpec {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::int64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }

  static FieldSpec gf(std::int64_t p) {
    if (p > (std::int64_t{1} << 31))
      throw InputError("prime modulus too large: " + std::to_string(p));
    if (!is_prime(p))
      throw InputError("modulus is not prime: " + std::to_string(p));
    return FieldSpec{Kind::prime, p};
  }

  bool operator==(const FieldSpec&) const = default;

  std::string name() const {
    return kind == Kind::rationals ? "rational" : "gf " + std::to_string(p);
  }
};

/// The field of rationals with arbitrary-precision arithmetic. All
/// operations are exact; values are always stored in lowest terms.
struct RationalField {
  using Elem = boost::multiprecision::cpp_rational;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(v); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }

  Elem inv(const Elem& a) const {
    if (a == 0) throw InputError("division by zero");
    return 1 / a;
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem parse(const std::string& token) const {
    return Elem(boost::multiprecision::cpp_int(token));
  }

  std::string str(const Elem& a) const { return a.str(); }

  bool operator==(const RationalField&) const = default;
};

/// The prime field GF(p) with p < 2^31. Elements are canonical residues
/// in [0, p); products go through 128-bit intermediates.
struct PrimeField {
  using Elem = std::int64_t;

  std::int64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::int64_t modulus) : p(modulus) {
    FieldSpec::gf(modulus);  // validates
  }

  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::prime, p}; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }

  Elem from_int(long long v) const {
    Elem r = static_cast<Elem>(v % p);
    return r < 0 ? r + p : r;
  }

  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    return r >= p ? r - p : r;
  }
  Elem sub(Elem a, Elem b) const {
    Elem r = a - b;
    return r < 0 ? r + p : r;
  }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<__int128>(a) * b % p);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }

  Elem inv(Elem a) const {
    if (a == 0) throw InputError("division by zero in GF(p)");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return t < 0 ? t + p : t;
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem parse(const std::string& token) const {
    return from_int(std::stoll(token));
  }

  std::string str(Elem a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;
};

}  // namespace minkmat
