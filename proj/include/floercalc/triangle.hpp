#pragma once

#include <array>
#include <cstddef>

#include "floercalc/floer.hpp"

namespace floercalc {

// Three graded spaces and three maps arranged in a cycle, each map
// shifting degree by a declared amount. The shifts must add up to -3
// mod 8; the normalized convention for the sequences this models is
// (0, 0, -3). Everything lives over one field.
struct TrianglePresentation {
  RingSpec ring;
  std::array<std::array<std::size_t, 8>, 3> dims{};
  // alpha[i][q]: vertex i, degree q -> vertex i+1, degree q + shift[i]
  std::array<std::array<RatMatrix, 8>, 3> alpha;
  std::array<int, 3> shift{};
};

// Exactness at every vertex in every degree, by exact rank arithmetic:
// the composite of consecutive maps must vanish and the incoming image
// rank must equal the outgoing kernel dimension. A bad shift sum is a
// math_error before any rank is computed; shape mismatches against the
// declared shifts are parse errors.
struct ExactnessReport {
  RingSpec ring;
  struct Vertex {
    std::array<std::size_t, 8> image_rank{}, kernel_dim{};
    std::array<bool, 8> exact{};
  };
  std::array<Vertex, 3> vertex;
  bool all_exact() const;
};

ExactnessReport check_exact_triangle(const TrianglePresentation& t);

// Four term window of the reduced sequence: the third space feeds the
// first reduced group with a +3 degree shift, the middle map joins the
// two reduced groups, and the third space receives. Exactness is claimed
// at the two middle terms only, and the middle map has to commute with
// the induced u on both sides.
struct ReducedSequence {
  RingSpec ring;
  ReducedGroup first, second;
  std::array<std::size_t, 8> third{};    // ordinary cohomology dims
  std::array<RatMatrix, 8> in;    // in[q]:  third^(q+3) -> first^q
  std::array<RatMatrix, 8> mid;   // mid[q]: first^q     -> second^q
  std::array<RatMatrix, 8> out;   // out[q]: second^q    -> third^q
};

struct ReducedSequenceReport {
  RingSpec ring;
  std::array<bool, 8> exact_first{}, exact_second{};
  std::array<std::size_t, 8> in_rank{}, mid_rank{}, out_rank{};
  bool u_commutes = false;
  bool ok() const;
};

ReducedSequenceReport check_reduced_sequence(const ReducedSequence& s);

}  // namespace floercalc
