#pragma once

#include <array>
#include <string>
#include <vector>

#include "floercalc/linalg.hpp"

namespace floercalc {

// Cochain complex graded by Z/8 with a degree +1 differential d, a degree
// +4 endomorphism v, and (in the homology_sphere flavor) a functional
// delta on degree 4 together with a distinguished element delta_prime of
// degree 1. The defining identities are
//   d . d = 0
//   d v - v d + 2 (delta tensor delta_prime) = 0   (homology_sphere)
//   d v - v d = 0                                  (admissible)
//   delta . d = 0,   d(delta_prime) = 0.
// All coefficients are integers; computations reduce into a chosen ring.
enum class Flavor { homology_sphere, admissible };

struct FloerComplex {
  Flavor flavor = Flavor::homology_sphere;
  std::array<std::vector<std::string>, 8> gens;  // generator labels by degree
  std::array<IntMatrix, 8> d;  // d[q] maps degree q to q+1 (mod 8)
  std::array<IntMatrix, 8> v;  // v[q] maps degree q to q+4 (mod 8)
  IntMatrix delta;             // 1 x dim(4) functional (homology_sphere)
  IntVec delta_prime;          // element of degree 1 (homology_sphere)

  std::size_t dim(std::size_t q) const { return gens[q % 8].size(); }
  std::size_t total_dim() const;

  static FloerComplex empty(Flavor flavor);

  bool operator==(const FloerComplex&) const = default;
};

// Structural well-formedness (shapes, label uniqueness, flavor fields):
// throws parse_error. Defining identities: throws math_error.
void check_shapes(const FloerComplex& c);
void validate_complex(const FloerComplex& c);

// Degree q moves to (5 - q) mod 8; d reverses to its transpose, v to minus
// its transpose, and delta/delta_prime trade places. Applying this twice
// returns the original complex exactly.
FloerComplex reverse_orientation(const FloerComplex& c);

// Block sum. Labels must stay globally unique; flavors must agree. The
// result is well formed but not always valid: when one summand carries
// delta and another delta_prime, the defining identity acquires a cross
// term the blocks cannot cancel.
FloerComplex direct_sum(const FloerComplex& a, const FloerComplex& b);

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

// Field coefficients: bases for cycles and boundaries per degree plus a
// chosen set of class representatives (cocycle columns extending the
// boundary basis to the cycle space).
struct FieldCohomology {
  RingSpec ring;
  FieldOps F;
  explicit FieldCohomology(const RingSpec& r) : ring(r), F(r) {}

  struct Piece {
    RatMatrix cycles, boundaries, reps;
    std::size_t dim = 0;  // = reps.cols()
  };
  std::array<Piece, 8> piece;

  std::array<std::size_t, 8> dims() const;
  // coordinates of the class of cocycle z in the representative basis
  RatVec class_coords(std::size_t q, const RatVec& z) const;
  // cochain vector representing coordinate vector c at degree q
  RatVec rep_vector(std::size_t q, const RatVec& c) const;

  const FieldOps& ops() const { return F; }
};

FieldCohomology field_cohomology(const FloerComplex& c, const RingSpec& ring);

// Integer coefficients: free rank and torsion divisors (> 1) per degree.
struct IntegralCohomology {
  std::array<std::size_t, 8> free_rank{};
  std::array<std::vector<Int>, 8> torsion;
};

IntegralCohomology integral_cohomology(const FloerComplex& c);

// ---------------------------------------------------------------------------
// the induced degree 4 map on cohomology
// ---------------------------------------------------------------------------

// In the homology_sphere flavor v only induces a partial map at the two
// special degrees: at degree 4 the domain shrinks to the kernel of the
// functional induced by delta, at degree 5 the target is the quotient by
// the class of delta_prime. Everywhere else (and everywhere in the
// admissible flavor) the induced map is total.
struct InducedU {
  RingSpec ring;
  // matrix[q]: codomain coordinates x domain coordinates
  std::array<RatMatrix, 8> matrix;
  // domain[q]: basis of the domain subspace in degree q class coordinates
  // (identity when the map is total)
  std::array<RatMatrix, 8> domain;
  // codomain[q]: class-coordinate representatives for the codomain basis
  // of map q (a basis of the quotient complement at the special degree)
  std::array<RatMatrix, 8> codomain;
  std::array<bool, 8> domain_restricted{};
  std::array<bool, 8> codomain_quotient{};
  bool total() const;
};

InducedU u_on_cohomology(const FieldCohomology& h, const FloerComplex& c,
                         bool require_total = false);

// ---------------------------------------------------------------------------
// towers, reduced group, numerical invariants
// ---------------------------------------------------------------------------

// delta_n = class functional of delta . v^n (degree 4 for even n, 0 for
// odd), delta_prime_n = class of v^n . delta_prime (degree 1 for even n,
// 5 for odd). Rows/columns are in class coordinates. The tower is computed
// until the four spans (split by parity) stop growing twice in a row; the
// pigeonhole bound 2(h0+h4+h1+h5)+2 caps the loop defensively.
struct DeltaTower {
  std::vector<RatVec> delta_rows;
  std::vector<RatVec> delta_prime_cols;
  std::size_t s_even = 0, s_odd = 0;  // span dims of {delta_n} by parity
  std::size_t t_even = 0, t_odd = 0;  // span dims of {delta_prime_n}
};

DeltaTower delta_tower(const FieldCohomology& h, const FloerComplex& c);

// Z^q: common kernel of the delta_n functionals (degrees 0 and 4), B^q:
// span of the delta_prime_n classes (degrees 1 and 5); the reduced group
// is Z/B with the total induced u. In the admissible flavor the reduced
// group is all of HF.
struct ReducedGroup {
  RingSpec ring;
  std::array<std::size_t, 8> hf_dims{};
  std::array<std::size_t, 8> dims{};
  // bases in class coordinates: z_basis[q] = [b_basis[q] | reps[q]]
  std::array<RatMatrix, 8> b_basis, reps;
  std::array<RatMatrix, 8> u;  // induced map in reps coordinates
  std::size_t s_even = 0, s_odd = 0, t_even = 0, t_odd = 0;
};

ReducedGroup reduced_group(const FloerComplex& c, const RingSpec& ring);

struct EulerReport {
  std::array<std::size_t, 8> dims{};
  Int chi = 0;
  Rat casson;  // -chi/2
};

EulerReport euler_and_casson(const FloerComplex& c, const RingSpec& ring);

// Three routes to the same number:
//   h_euler  = (chi(HF) - chi(reduced)) / 2
//   h_span   = s_even(c) - s_even(reverse(c))
//   h_prefix = l(c) - l(reverse(c)), l = longest prefix of the even tower
//              delta_0, delta_2, ... that stays linearly independent
struct HReport {
  Int h = 0;         // the euler route, the defining one
  Int h_span = 0;
  Int h_prefix = 0;
  Int chi = 0;
  Int chi_reduced = 0;
};

HReport h_invariant(const FloerComplex& c, const RingSpec& ring);

// Least n with (u^2 - 64)^n = 0 on the reduced group (homology_sphere)
// resp. on HF (admissible); per-degree blocks U_{q+4} U_q - 64 I. Zero
// group gives 0. A block still nonzero at its dimension can never vanish
// (Cayley-Hamilton); the report flags it instead of erroring, with
// block_index = dim + 1 there. index is meaningful when nilpotent.
struct NilpotencyReport {
  bool nilpotent = true;
  std::size_t index = 0;
  std::array<std::size_t, 8> block_dims{};
  std::array<std::size_t, 8> block_index{};
  bool on_reduced = false;
};

NilpotencyReport nilpotency_index(const FloerComplex& c, const RingSpec& ring);

// Diagnostics for degree-4 periodicity over a field of odd characteristic
// (homology_sphere flavor): where u: HF^q -> HF^{q+4} is an isomorphism,
// whether the cohomology dimensions repeat with period 4, and whether the
// reduced group's do. Synthetic data may fail any of them; at q = 4 and 5
// the induced u is only partially defined, so u_iso there reports the
// restricted map and is excluded from geometric_profile.
struct PeriodicityReport {
  RingSpec ring;
  std::array<std::size_t, 8> hf_dims{}, reduced_dims{};
  std::array<bool, 8> u_iso{};
  std::array<bool, 8> u_partial{};  // domain or codomain was cut down
  bool dims_periodic = false;
  bool reduced_periodic = false;
  bool geometric_profile() const;
};

PeriodicityReport periodicity_report(const FloerComplex& c,
                                     const RingSpec& ring);

}  // namespace floercalc
