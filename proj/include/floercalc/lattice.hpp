#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "floercalc/linalg.hpp"

namespace floercalc {

// Definite integral lattice presented by a Gram matrix. `sign` is +1 for
// positive definite, -1 for negative definite; sign * gram is positive
// definite, which construction verifies via exact LDL pivots.
struct Lattice {
  IntMatrix gram;
  int sign = -1;

  std::size_t rank() const { return gram.rows(); }

  static Lattice from_gram(IntMatrix gram, int sign);
  static Lattice diagonal(std::size_t n, int sign);
  // Root-basis E8, integral model of the even unimodular rank-8 lattice
  // described by half-integer coordinates with even coordinate sum.
  static Lattice e8(int sign);
  static Lattice direct_sum(const Lattice& a, const Lattice& b);

  Int inner(const IntVec& x, const IntVec& y) const;
  Int square(const IntVec& x) const { return inner(x, x); }
  Int determinant() const { return det(gram); }
  bool unimodular() const {
    Int d = determinant();
    return d == 1 || d == -1;
  }
};

// Doubled ambient coordinates (2x the half-integer description) of the rows
// of the shipped E8 basis; used for documentation and coordinate conversion.
IntMatrix e8_basis_doubled_coordinates();
// Coordinates of an ambient vector (given doubled) in the shipped E8 basis.
IntVec e8_coordinates_of_doubled(const IntVec& doubled);

// Canonical set of sign-pairs {+-z}: one representative per pair (the one
// whose first nonzero coordinate is positive), sorted lexicographically.
// The zero vector, when present, appears exactly once.
struct VectorPairSet {
  std::vector<IntVec> reps;
  std::size_t size() const { return reps.size(); }
};

// All z in L (coset = nullopt) or z in w + 2L (coset = w) with z*z = s.
// Requires sign*s >= 0; returns the empty set when no vector can exist.
VectorPairSet vectors_with_square(const Lattice& L, const Int& s,
                                  const std::optional<IntVec>& coset = {});

struct MinSquare {
  Int value;       // min |z*z| over the coset; realized by `witness`
  IntVec witness;  // canonical representative attaining it
};
MinSquare min_square_in_coset(const Lattice& L, const IntVec& w);

// w is extremal when |w*w| <= |z*z| for every z in w + 2L.
bool is_extremal(const Lattice& L, const IntVec& w);

// Signed count eta = sum over pairs {+-z}, z in w+2L with z*z = w*w, of
// (-1)^(((z+w)/2)^2) * (a.z)^m. Defined only when w*w = m (mod 2); with
// m = 0 the vector a is ignored and each pair contributes +-1.
Int eta(const Lattice& L, const IntVec& w, const IntVec& a, const Int& m);
Int eta(const Lattice& L, const IntVec& w);  // m = 0

// Pairs {+-z}, z in c + 2L with z*z = c*c - 4k (zero pairs when that square
// has the wrong sign for the lattice). L must be negative definite.
struct ReducibleCount {
  Int target_square;
  VectorPairSet pairs;
};
ReducibleCount count_reducibles(const Lattice& L, const IntVec& c,
                                const Int& k);

// True iff L is isomorphic to the standard diagonal lattice of its sign.
// Requires |det| = 1. Greedy: split off a unit vector, recurse on its
// orthogonal complement (a direct summand, so no backtracking is needed).
bool is_standard_diagonal(const Lattice& L);

// For negative definite unimodular L: either L is diagonal, or a certificate
// (w, a, m) with eta = 1 and w extremal, located in the orthogonal
// complement of all square -1 vectors. Both certificate properties are
// verified at run time; failure to verify throws math_error.
struct DiagonalityCertificate {
  bool diagonal = false;
  IntVec w, a;
  Int m = 0;
  Int eta_value = 0;
  Int w_square = 0;
  std::size_t perp_rank = 0;  // rank of the complement of the unit vectors
};
DiagonalityCertificate nondiagonal_certificate(const Lattice& L);

}  // namespace floercalc
