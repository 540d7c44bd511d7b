#include "floercalc/triangle.hpp"

#include <string>

namespace floercalc {
namespace {

std::size_t mod8(long long q) { return static_cast<std::size_t>(((q % 8) + 8) % 8); }

}  // namespace

bool ExactnessReport::all_exact() const {
  for (const Vertex& v : vertex)
    for (bool e : v.exact)
      if (!e) return false;
  return true;
}

ExactnessReport check_exact_triangle(const TrianglePresentation& t) {
  FieldOps F(t.ring);
  if (mod8(t.shift[0] + t.shift[1] + t.shift[2]) != mod8(-3))
    throw math_error("the declared degree shifts do not add up to -3");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t q = 0; q < 8; ++q) {
      std::size_t qo = mod8(static_cast<long long>(q) + t.shift[i]);
      if (t.alpha[i][q].rows() != t.dims[(i + 1) % 3][qo] ||
          t.alpha[i][q].cols() != t.dims[i][q])
        throw parse_error("map " + std::to_string(i) +
                          " does not respect its declared shift at degree " +
                          std::to_string(q));
    }

  ExactnessReport r;
  r.ring = t.ring;
  for (std::size_t m = 0; m < 3; ++m) {
    std::size_t prev = (m + 2) % 3;
    for (std::size_t q = 0; q < 8; ++q) {
      std::size_t qin = mod8(static_cast<long long>(q) - t.shift[prev]);
      const RatMatrix& incoming = t.alpha[prev][qin];
      const RatMatrix& outgoing = t.alpha[m][q];
      std::size_t ri = rank_of(incoming, F);
      std::size_t kd = t.dims[m][q] - rank_of(outgoing, F);
      r.vertex[m].image_rank[q] = ri;
      r.vertex[m].kernel_dim[q] = kd;
      r.vertex[m].exact[q] =
          mat_mul(outgoing, incoming, F).is_zero() && ri == kd;
    }
  }
  return r;
}

bool ReducedSequenceReport::ok() const {
  for (std::size_t q = 0; q < 8; ++q)
    if (!exact_first[q] || !exact_second[q]) return false;
  return u_commutes;
}

ReducedSequenceReport check_reduced_sequence(const ReducedSequence& s) {
  FieldOps F(s.ring);
  if (!(s.first.ring == s.ring) || !(s.second.ring == s.ring))
    throw parse_error("reduced groups carry a different ring");
  for (std::size_t q = 0; q < 8; ++q) {
    if (s.in[q].rows() != s.first.dims[q] ||
        s.in[q].cols() != s.third[mod8(q + 3)])
      throw parse_error("incoming map has the wrong shape at degree " +
                        std::to_string(q));
    if (s.mid[q].rows() != s.second.dims[q] ||
        s.mid[q].cols() != s.first.dims[q])
      throw parse_error("middle map has the wrong shape at degree " +
                        std::to_string(q));
    if (s.out[q].rows() != s.third[q] || s.out[q].cols() != s.second.dims[q])
      throw parse_error("outgoing map has the wrong shape at degree " +
                        std::to_string(q));
  }

  ReducedSequenceReport r;
  r.ring = s.ring;
  for (std::size_t q = 0; q < 8; ++q) {
    r.in_rank[q] = rank_of(s.in[q], F);
    r.mid_rank[q] = rank_of(s.mid[q], F);
    r.out_rank[q] = rank_of(s.out[q], F);
    r.exact_first[q] = mat_mul(s.mid[q], s.in[q], F).is_zero() &&
                       r.in_rank[q] + r.mid_rank[q] == s.first.dims[q];
    r.exact_second[q] = mat_mul(s.out[q], s.mid[q], F).is_zero() &&
                        r.mid_rank[q] + r.out_rank[q] == s.second.dims[q];
  }
  r.u_commutes = true;
  for (std::size_t q = 0; q < 8; ++q)
    r.u_commutes &= mat_mul(s.second.u[q], s.mid[q], F) ==
                    mat_mul(s.mid[mod8(q + 4)], s.first.u[q], F);
  return r;
}

}  // namespace floercalc
