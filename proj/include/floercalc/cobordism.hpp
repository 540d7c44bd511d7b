#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floercalc/floer.hpp"

namespace floercalc {

// A degree preserving cochain map between two homology_sphere complexes,
// together with the two integer correction terms governing how it
// interacts with delta and delta_prime: a functional delta_w on degree 5
// of the source and an element delta_prime_w in degree 0 of the target.
// An optional degree +3 map phi may ride along (solve_homotopy produces
// one). The two flags describe the geometric origin of the data; they
// cannot be checked here and only gate the monotonicity diagnostic.
struct CobordismData {
  FloerComplex source, target;
  std::array<IntMatrix, 8> wstar;  // wstar[q]: source degree q -> target
  IntMatrix delta_w;               // 1 x dim_source(5)
  IntVec delta_prime_w;            // element of target degree 0
  std::optional<std::array<IntMatrix, 8>> phi;  // phi[q]: q -> q+3
  bool negative_definite = false;
  bool h1_trivial = false;
};

// wstar = identity, zero correction terms, no homotopy, flags cleared.
CobordismData identity_cobordism(const FloerComplex& c);

// Composite data: wstar composes on the nose, but no composition formula
// for the correction terms is assumed; the caller supplies the composite
// delta_w and delta_prime_w and the result is validated from scratch like
// any other cobordism. inner.target must equal outer.source exactly.
CobordismData compose_cobordisms(const CobordismData& outer,
                                 const CobordismData& inner,
                                 const IntMatrix& delta_w,
                                 const IntVec& delta_prime_w);

// Defining identities, checked over the integers and reported per item:
//   d wstar = wstar d                                  (cochain map)
//   delta_2 . wstar = delta_1 + delta_w . d_1          (on degree 4)
//   wstar(delta_prime_1) = delta_prime_2 + d_2(delta_prime_w)
// A stored phi is checked against the commutation identity of
// solve_homotopy. Shape or flavor problems throw parse_error; an invalid
// source or target complex throws; identity failures only set flags.
struct CobordismReport {
  bool chain_map = false;
  bool delta_functorial = false;
  bool delta_prime_dual = false;
  bool phi_consistent = true;  // true when no phi is stored
  std::vector<std::string> failures;
  bool ok() const {
    return chain_map && delta_functorial && delta_prime_dual &&
           phi_consistent;
  }
};

CobordismReport validate_cobordism(const CobordismData& w);

// Solves
//   v_2 wstar - wstar v_1 + 2 (delta_prime_2 x delta_w
//                              + delta_prime_w x delta_1) = d phi + phi d
// for a degree +3 map phi over a field, as one linear system; the
// solution (free parameters zero) is checked by substitution before it
// is returned. found = false means the system is inconsistent: the data
// cannot come from a map with the stated properties.
struct HomotopySolution {
  RingSpec ring;
  bool found = false;
  std::array<RatMatrix, 8> phi;  // phi[q]: dim_target(q+3) x dim_source(q)
};

HomotopySolution solve_homotopy(const CobordismData& w,
                                const RingSpec& ring);

// Pulling the target tower functional delta_n back through the induced
// cohomology map must give the source delta_n plus a combination of
// earlier source functionals of the same parity, and dually the pushed
// delta_prime_n classes must match up to earlier target classes. The
// n = 0 layer admits no correction, so it must match exactly; math_error
// when some layer has no expression at all. Both towers are compared to
// the larger of the two natural depths. a[n][i] (i < n) is the stored
// coefficient, zero at parity mismatches and at free parameters;
// freedom[n] counts the free parameters of layer n.
struct TriangularityReport {
  RingSpec ring;
  std::size_t layers = 0;
  std::vector<std::vector<Rat>> a, b;
  std::vector<std::size_t> a_freedom, b_freedom;
};

TriangularityReport delta_triangularity(const CobordismData& w,
                                        const RingSpec& ring);

// The cohomology level map must send the common kernel of the source
// tower into that of the target and the span of the source delta_prime
// classes onto that of the target; math_error otherwise. When it does it
// descends to the reduced groups, and the descended matrices are
// reported together with whether they commute with the induced u.
struct InducedReducedMap {
  RingSpec ring;
  std::array<RatMatrix, 8> hf_map;  // class coordinates, degree by degree
  std::array<RatMatrix, 8> matrix;  // reduced coordinates
  std::array<std::size_t, 8> source_dims{}, target_dims{};
  bool u_commutes = false;
};

InducedReducedMap induced_reduced_map(const CobordismData& w,
                                      const RingSpec& ring);

// Diagnostic comparing h at the two ends. h(target) >= h(source) is a
// theorem for maps of negative definite origin with trivial first
// homology, so the verdict only applies when both flags are set; for
// synthetic data this is a report, never an assertion.
struct MonotonicityReport {
  RingSpec ring;
  Int h_source = 0, h_target = 0;
  bool applicable = false;  // negative_definite && h1_trivial
  bool monotone = false;    // h_target >= h_source
  bool consistent = false;  // !applicable || monotone
};

MonotonicityReport h_monotonicity_report(const CobordismData& w,
                                         const RingSpec& ring);

}  // namespace floercalc
