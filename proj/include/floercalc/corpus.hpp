#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "floercalc/floer.hpp"

namespace floercalc {

// What the rest of the suite may assume about an entry. Dimensions are
// over any coefficient field of odd characteristic; the blocks are chosen
// so the answer does not depend on which one.
struct ExpectedInvariants {
  std::array<std::size_t, 8> hf_dims{};
  std::array<std::size_t, 8> reduced_dims{};
  Int chi = 0;
  std::optional<Int> h;        // absent for the admissible flavor
  std::size_t nilpotency = 0;  // least n with (u^2 - 64)^n = 0
  std::string u_note;
};

struct CorpusEntry {
  std::string name;
  FloerComplex complex;
  ExpectedInvariants expected;
};

// Names accepted by build, in emission order.
const std::vector<std::string>& corpus_names();

CorpusEntry build(const std::string& name);

// Block counts for the random generator. The h-blocks are linked into one
// chain: v carries each degree-4 generator onto 8 times the next block's
// degree-0 generator, which keeps the functional tower rows triangular and
// makes the blocks' h values add. A plain unlinked sum of equal blocks
// would collapse the tower span back to a single row. u_pairs are
// two-generator blocks with v = 8 in both directions and no functionals;
// they pass untouched into the reduced group. reversed mirrors the
// finished complex.
struct RandomProfile {
  std::size_t poincare = 0;
  std::size_t acyclic = 0;
  std::size_t torsion = 0;
  std::size_t u_pairs = 0;
  bool reversed = false;
};

// Deterministic in (seed, profile): a validated sphere-flavor complex
// assembled from the requested blocks at seeded degrees, conjugated by a
// seeded unimodular change of basis, with the invariants the block counts
// predict recorded alongside.
CorpusEntry random_valid(std::uint64_t seed, const RandomProfile& profile);

}  // namespace floercalc
