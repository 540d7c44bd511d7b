#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace floercalc {

// Exact scalars. All arithmetic in the library is arbitrary precision;
// nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Malformed data: bad files, bad flags, structurally impossible requests.
// Maps to CLI exit code 2.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed data that is mathematically inconsistent (failed identity,
// unsolvable constraint, broken certificate). Maps to CLI exit code 1.
struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RingKind { integers, rationals, prime_field };

// Coefficient ring: Z, Q, or F_p with p an odd prime. Characteristic 2 is
// rejected up front: the chain identities carry a factor 2 that must stay
// invertible for the u-map and h machinery.
struct RingSpec {
  RingKind kind = RingKind::rationals;
  Int p = 0;  // prime_field only

  static RingSpec Z() { return RingSpec{RingKind::integers, 0}; }
  static RingSpec Q() { return RingSpec{RingKind::rationals, 0}; }
  static RingSpec Fp(const Int& prime);

  bool is_field() const { return kind != RingKind::integers; }
  std::string name() const;
  // Accepts "Z", "Q", "F<p>" (e.g. "F3"). Throws parse_error otherwise.
  static RingSpec parse(const std::string& s);

  bool operator==(const RingSpec&) const = default;
};

// Field arithmetic over Q or F_p, elements carried as Rat. F_p values are
// kept normalized as integers in [0, p); Q values are boost-normalized.
struct FieldOps {
  RingSpec ring;

  explicit FieldOps(const RingSpec& r) : ring(r) {
    if (!r.is_field()) throw parse_error("field coefficients required");
  }

  bool modular() const { return ring.kind == RingKind::prime_field; }

  Rat norm(const Rat& x) const {
    if (!modular()) return x;
    // denominators never appear in F_p values once normalized
    Int n = numerator(x), d = denominator(x);
    if (d != 1) {
      return mul(Rat(reduce(n)), inv(Rat(reduce(d))));
    }
    return Rat(reduce(n));
  }
  Rat from_int(const Int& n) const {
    return modular() ? Rat(reduce(n)) : Rat(n);
  }
  Rat add(const Rat& a, const Rat& b) const { return norm(a + b); }
  Rat sub(const Rat& a, const Rat& b) const { return norm(a - b); }
  Rat mul(const Rat& a, const Rat& b) const { return norm(a * b); }
  Rat neg(const Rat& a) const { return norm(-a); }
  Rat inv(const Rat& a) const {
    if (a == 0) throw math_error("division by zero in field arithmetic");
    if (!modular()) return Rat(1) / a;
    return Rat(mod_inverse(numerator(a)));
  }
  Rat div(const Rat& a, const Rat& b) const { return mul(a, inv(b)); }
  static bool is_zero(const Rat& a) { return a == 0; }

 private:
  Int reduce(const Int& n) const {
    Int r = n % ring.p;
    if (r < 0) r += ring.p;
    return r;
  }
  Int mod_inverse(const Int& a) const;
};

// String rendering used by reports and the CLI: integers in decimal,
// rationals as "p/q" with q > 1 only when non-integral.
std::string to_string(const Int& n);
std::string to_string(const Rat& r);

}  // namespace floercalc
