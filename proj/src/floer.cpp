#include "floercalc/floer.hpp"

#include <algorithm>
#include <set>

namespace floercalc {

namespace {

std::size_t mod8(long long x) {
  return static_cast<std::size_t>(((x % 8) + 8) % 8);
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// (delta_prime tensor delta)(x) = delta(x) delta_prime as a matrix
IntMatrix pairing_term(const FloerComplex& c) {
  IntMatrix o(c.dim(1), c.dim(4));
  for (std::size_t i = 0; i < c.dim(1); ++i)
    for (std::size_t j = 0; j < c.dim(4); ++j)
      o(i, j) = c.delta_prime[i] * c.delta(0, j);
  return o;
}

RatMatrix column(const RatVec& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RatMatrix row_matrix(const RatVec& v) {
  RatMatrix m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

// append the column to the basis if it enlarges the span
bool grow_span(RatMatrix& basis, const RatVec& cand, const FieldOps& F) {
  RatMatrix one = column(cand);
  if (extend_basis(basis, one, F).empty()) return false;
  basis = basis.hcat(one);
  return true;
}

std::array<RatMatrix, 8> reduce_v(const FloerComplex& c, const FieldOps& F) {
  std::array<RatMatrix, 8> v;
  for (std::size_t q = 0; q < 8; ++q) v[q] = reduce_entries(c.v[q], F);
  return v;
}

// longest k with delta_0, delta_2, ..., delta_{2(k-1)} linearly independent
// as class functionals on degree 4
std::size_t independent_prefix(const FloerComplex& c,
                               const FieldCohomology& h) {
  if (c.flavor != Flavor::homology_sphere) return 0;
  const FieldOps& F = h.ops();
  RatMatrix r = reduce_entries(c.delta, F);
  RatMatrix vsq = mat_mul(reduce_entries(c.v[0], F),
                          reduce_entries(c.v[4], F), F);
  RatMatrix span(h.piece[4].dim, 0);
  std::size_t k = 0;
  while (k <= h.piece[4].dim) {
    if (!mat_mul(r, h.piece[4].boundaries, F).is_zero())
      throw math_error("tower functional does not descend to cohomology");
    RatMatrix row = mat_mul(r, h.piece[4].reps, F);
    if (!grow_span(span, row.row(0), F)) break;
    ++k;
    r = mat_mul(r, vsq, F);
  }
  return k;
}

Int signed_sum(const std::array<std::size_t, 8>& dims) {
  Int chi = 0;
  for (std::size_t q = 0; q < 8; ++q)
    chi += (q % 2 == 0 ? 1 : -1) * Int(dims[q]);
  return chi;
}

}  // namespace

std::size_t FloerComplex::total_dim() const {
  std::size_t n = 0;
  for (std::size_t q = 0; q < 8; ++q) n += dim(q);
  return n;
}

FloerComplex FloerComplex::empty(Flavor flavor) {
  FloerComplex c;
  c.flavor = flavor;
  for (std::size_t q = 0; q < 8; ++q) {
    c.d[q] = IntMatrix(0, 0);
    c.v[q] = IntMatrix(0, 0);
  }
  c.delta = flavor == Flavor::homology_sphere ? IntMatrix(1, 0)
                                              : IntMatrix(0, 0);
  return c;
}

void check_shapes(const FloerComplex& c) {
  std::set<std::string> seen;
  for (std::size_t q = 0; q < 8; ++q) {
    for (const std::string& g : c.gens[q]) {
      if (g.empty()) throw parse_error("empty generator label");
      if (!seen.insert(g).second)
        throw parse_error("duplicate generator label: " + g);
    }
    if (c.d[q].rows() != c.dim(q + 1) || c.d[q].cols() != c.dim(q))
      throw parse_error("differential at degree " + std::to_string(q) +
                        " has the wrong shape");
    if (c.v[q].rows() != c.dim(q + 4) || c.v[q].cols() != c.dim(q))
      throw parse_error("v at degree " + std::to_string(q) +
                        " has the wrong shape");
  }
  if (c.flavor == Flavor::homology_sphere) {
    if (c.delta.rows() != 1 || c.delta.cols() != c.dim(4))
      throw parse_error("delta must be a functional on degree 4");
    if (c.delta_prime.size() != c.dim(1))
      throw parse_error("delta_prime must be an element of degree 1");
  } else {
    if (c.delta.rows() != 0 || c.delta.cols() != 0 || !c.delta_prime.empty())
      throw parse_error("the admissible flavor carries no delta data");
  }
}

void validate_complex(const FloerComplex& c) {
  check_shapes(c);
  for (std::size_t q = 0; q < 8; ++q)
    if (!(c.d[mod8(q + 1)] * c.d[q]).is_zero())
      throw math_error("d . d is nonzero starting at degree " +
                       std::to_string(q));
  for (std::size_t q = 0; q < 8; ++q) {
    IntMatrix comm = c.d[mod8(q + 4)] * c.v[q] - c.v[mod8(q + 1)] * c.d[q];
    if (c.flavor == Flavor::homology_sphere && q == 4)
      comm = comm + pairing_term(c).scaled(2);
    if (!comm.is_zero())
      throw math_error("d v - v d identity fails at degree " +
                       std::to_string(q));
  }
  if (c.flavor == Flavor::homology_sphere) {
    if (!(c.delta * c.d[3]).is_zero())
      throw math_error("delta does not vanish on boundaries");
    IntVec w = c.d[1] * c.delta_prime;
    for (const Int& x : w)
      if (x != 0) throw math_error("delta_prime is not closed");
  }
}

FloerComplex reverse_orientation(const FloerComplex& c) {
  check_shapes(c);
  FloerComplex r;
  r.flavor = c.flavor;
  for (std::size_t p = 0; p < 8; ++p) {
    r.gens[p] = c.gens[mod8(5 - static_cast<long long>(p))];
    r.d[p] = c.d[mod8(4 - static_cast<long long>(p))].transposed();
    r.v[p] = -c.v[mod8(1 - static_cast<long long>(p))].transposed();
  }
  if (c.flavor == Flavor::homology_sphere) {
    r.delta = IntMatrix(1, c.dim(1));
    for (std::size_t i = 0; i < c.dim(1); ++i) r.delta(0, i) = c.delta_prime[i];
    r.delta_prime.assign(c.dim(4), Int(0));
    for (std::size_t j = 0; j < c.dim(4); ++j) r.delta_prime[j] = c.delta(0, j);
  } else {
    r.delta = IntMatrix(0, 0);
  }
  return r;
}

FloerComplex direct_sum(const FloerComplex& a, const FloerComplex& b) {
  if (a.flavor != b.flavor)
    throw parse_error("direct summands must share a flavor");
  FloerComplex s;
  s.flavor = a.flavor;
  for (std::size_t q = 0; q < 8; ++q) {
    s.gens[q] = a.gens[q];
    s.gens[q].insert(s.gens[q].end(), b.gens[q].begin(), b.gens[q].end());
    s.d[q] = block_diag(a.d[q], b.d[q]);
    s.v[q] = block_diag(a.v[q], b.v[q]);
  }
  if (s.flavor == Flavor::homology_sphere) {
    s.delta = IntMatrix(1, s.dim(4));
    for (std::size_t j = 0; j < a.dim(4); ++j) s.delta(0, j) = a.delta(0, j);
    for (std::size_t j = 0; j < b.dim(4); ++j)
      s.delta(0, a.dim(4) + j) = b.delta(0, j);
    s.delta_prime = a.delta_prime;
    s.delta_prime.insert(s.delta_prime.end(), b.delta_prime.begin(),
                         b.delta_prime.end());
  } else {
    s.delta = IntMatrix(0, 0);
  }
  check_shapes(s);  // catches label collisions between the summands
  return s;
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

std::array<std::size_t, 8> FieldCohomology::dims() const {
  std::array<std::size_t, 8> d{};
  for (std::size_t q = 0; q < 8; ++q) d[q] = piece[q].dim;
  return d;
}

RatVec FieldCohomology::class_coords(std::size_t q, const RatVec& z) const {
  const Piece& p = piece[q % 8];
  auto x = solve(p.boundaries.hcat(p.reps), z, F);
  if (!x)
    throw math_error("vector is not a cocycle at degree " +
                     std::to_string(q % 8));
  RatVec out(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) out[i] = (*x)[p.boundaries.cols() + i];
  return out;
}

RatVec FieldCohomology::rep_vector(std::size_t q, const RatVec& c) const {
  return mat_apply(piece[q % 8].reps, c, F);
}

FieldCohomology field_cohomology(const FloerComplex& c, const RingSpec& ring) {
  check_shapes(c);
  FieldCohomology h(ring);
  for (std::size_t q = 0; q < 8; ++q) {
    RatMatrix dq = reduce_entries(c.d[q], h.F);
    RatMatrix dprev = reduce_entries(c.d[mod8(q - 1)], h.F);
    auto& p = h.piece[q];
    p.cycles = kernel_basis(dq, h.F);
    p.boundaries = column_space_basis(dprev, h.F);
    p.reps = p.cycles.select_cols(extend_basis(p.boundaries, p.cycles, h.F));
    p.dim = p.reps.cols();
  }
  return h;
}

IntegralCohomology integral_cohomology(const FloerComplex& c) {
  check_shapes(c);
  IntegralCohomology out;
  for (std::size_t q = 0; q < 8; ++q) {
    IntMatrix k = kernel_basis_int(c.d[q]);
    const IntMatrix& dprev = c.d[mod8(q - 1)];
    // boundaries in coordinates of the saturated cycle lattice
    IntMatrix m(k.cols(), dprev.cols());
    for (std::size_t j = 0; j < dprev.cols(); ++j) {
      auto x = solve_int(k, dprev.col(j));
      if (!x)
        throw math_error("image of d is not contained in the cycle lattice");
      for (std::size_t i = 0; i < k.cols(); ++i) m(i, j) = (*x)[i];
    }
    SmithNormalForm snf = smith_normal_form(m);
    out.free_rank[q] = k.cols() - snf.rank();
    for (const Int& d : snf.divisors())
      if (d > 1) out.torsion[q].push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// the induced degree 4 map
// ---------------------------------------------------------------------------

bool InducedU::total() const {
  for (std::size_t q = 0; q < 8; ++q)
    if (domain_restricted[q] || codomain_quotient[q]) return false;
  return true;
}

InducedU u_on_cohomology(const FieldCohomology& h, const FloerComplex& c,
                         bool require_total) {
  const FieldOps& F = h.ops();
  bool sphere = c.flavor == Flavor::homology_sphere;
  InducedU u;
  u.ring = h.ring;

  // delta as a functional on classes of degree 4
  RatVec delta0(h.piece[4].dim, Rat(0));
  bool delta0_nonzero = false;
  RatVec dp0(h.piece[1].dim, Rat(0));
  bool dp0_nonzero = false;
  if (sphere) {
    RatMatrix r = mat_mul(reduce_entries(c.delta, F), h.piece[4].reps, F);
    delta0 = r.row(0);
    for (const Rat& x : delta0) delta0_nonzero |= x != 0;
    dp0 = h.class_coords(1, reduce_entries(c.delta_prime, F));
    for (const Rat& x : dp0) dp0_nonzero |= x != 0;
  }

  if (require_total && sphere && (delta0_nonzero || dp0_nonzero))
    throw math_error(
        "the induced map is only partial at degrees 4 and 5: delta or "
        "delta_prime survives to cohomology");

  for (std::size_t q = 0; q < 8; ++q) {
    std::size_t q4 = mod8(q + 4);
    bool restricted = sphere && q == 4 && delta0_nonzero;
    bool quotient = sphere && q == 5 && dp0_nonzero;
    u.domain_restricted[q] = restricted;
    u.codomain_quotient[q] = quotient;

    RatMatrix dom = restricted ? kernel_basis(row_matrix(delta0), F)
                               : RatMatrix::identity(h.piece[q].dim);
    u.domain[q] = dom;

    RatMatrix modded(h.piece[q4].dim, 0);
    RatMatrix cod = RatMatrix::identity(h.piece[q4].dim);
    if (quotient) {
      modded = column(dp0);
      cod = cod.select_cols(extend_basis(modded, cod, F));
    }
    u.codomain[q] = cod;

    RatMatrix vq = reduce_entries(c.v[q], F);
    RatMatrix m(cod.cols(), dom.cols());
    for (std::size_t j = 0; j < dom.cols(); ++j) {
      RatVec z = h.rep_vector(q, dom.col(j));
      RatVec y = h.class_coords(q4, mat_apply(vq, z, F));
      auto x = solve(modded.hcat(cod), y, F);
      if (!x) throw math_error("induced map left the expected codomain");
      for (std::size_t i = 0; i < cod.cols(); ++i)
        m(i, j) = (*x)[modded.cols() + i];
    }
    u.matrix[q] = m;
  }
  return u;
}

// ---------------------------------------------------------------------------
// towers and the reduced group
// ---------------------------------------------------------------------------

DeltaTower delta_tower(const FieldCohomology& h, const FloerComplex& c) {
  if (c.flavor != Flavor::homology_sphere)
    throw parse_error("towers require the homology_sphere flavor");
  const FieldOps& F = h.ops();
  std::array<RatMatrix, 8> v = reduce_v(c, F);
  RatMatrix r = reduce_entries(c.delta, F);
  RatVec p = reduce_entries(c.delta_prime, F);

  DeltaTower t;
  RatMatrix span_s_even(h.piece[4].dim, 0), span_s_odd(h.piece[0].dim, 0);
  RatMatrix span_t_even(h.piece[1].dim, 0), span_t_odd(h.piece[5].dim, 0);
  std::size_t cap = 2 * (h.piece[0].dim + h.piece[4].dim + h.piece[1].dim +
                         h.piece[5].dim) + 2;
  std::size_t stall = 0;
  for (std::size_t n = 0;; ++n) {
    if (n > cap)
      throw math_error("tower spans failed to stabilize within the "
                       "pigeonhole bound");
    std::size_t qd = mod8(4 - 4 * static_cast<long long>(n));
    std::size_t qp = mod8(1 + 4 * static_cast<long long>(n));
    if (!mat_mul(r, h.piece[qd].boundaries, F).is_zero())
      throw math_error("tower functional does not descend to cohomology");
    RatVec row = mat_mul(r, h.piece[qd].reps, F).row(0);
    RatVec col = h.class_coords(qp, p);
    t.delta_rows.push_back(row);
    t.delta_prime_cols.push_back(col);

    bool grew = grow_span(n % 2 == 0 ? span_s_even : span_s_odd, row, F);
    grew |= grow_span(n % 2 == 0 ? span_t_even : span_t_odd, col, F);
    stall = grew ? 0 : stall + 1;
    if (stall >= 2) break;

    r = mat_mul(r, v[mod8(4 - 4 * static_cast<long long>(n + 1))], F);
    p = mat_apply(v[qp], p, F);
  }
  t.s_even = span_s_even.cols();
  t.s_odd = span_s_odd.cols();
  t.t_even = span_t_even.cols();
  t.t_odd = span_t_odd.cols();
  return t;
}

ReducedGroup reduced_group(const FloerComplex& c, const RingSpec& ring) {
  FieldCohomology h = field_cohomology(c, ring);
  const FieldOps& F = h.ops();
  ReducedGroup rg;
  rg.ring = ring;
  rg.hf_dims = h.dims();

  if (c.flavor == Flavor::admissible) {
    InducedU u = u_on_cohomology(h, c, true);
    for (std::size_t q = 0; q < 8; ++q) {
      rg.dims[q] = h.piece[q].dim;
      rg.b_basis[q] = RatMatrix(h.piece[q].dim, 0);
      rg.reps[q] = RatMatrix::identity(h.piece[q].dim);
      rg.u[q] = u.matrix[q];
    }
    return rg;
  }

  DeltaTower t = delta_tower(h, c);
  rg.s_even = t.s_even;
  rg.s_odd = t.s_odd;
  rg.t_even = t.t_even;
  rg.t_odd = t.t_odd;

  for (std::size_t q = 0; q < 8; ++q) {
    std::size_t n = h.piece[q].dim;
    RatMatrix b(n, 0);
    RatMatrix reps;
    if (q == 0 || q == 4) {
      // common kernel of the tower functionals of the matching parity
      std::size_t want = q == 4 ? 0 : 1;
      std::vector<RatVec> rows;
      for (std::size_t i = 0; i < t.delta_rows.size(); ++i)
        if (i % 2 == want) rows.push_back(t.delta_rows[i]);
      RatMatrix a(rows.size(), n);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rows[i][j];
      reps = kernel_basis(a, F);
    } else if (q == 1 || q == 5) {
      std::size_t want = q == 1 ? 0 : 1;
      RatMatrix cols(n, 0);
      for (std::size_t i = 0; i < t.delta_prime_cols.size(); ++i)
        if (i % 2 == want) cols = cols.hcat(column(t.delta_prime_cols[i]));
      b = column_space_basis(cols, F);
      RatMatrix id = RatMatrix::identity(n);
      reps = id.select_cols(extend_basis(b, id, F));
    } else {
      reps = RatMatrix::identity(n);
    }
    rg.b_basis[q] = b;
    rg.reps[q] = reps;
    rg.dims[q] = reps.cols();
  }

  std::array<RatMatrix, 8> v = reduce_v(c, F);
  for (std::size_t q = 0; q < 8; ++q) {
    std::size_t q4 = mod8(q + 4);
    RatMatrix m(rg.dims[q4], rg.dims[q]);
    for (std::size_t j = 0; j < rg.dims[q]; ++j) {
      RatVec z = h.rep_vector(q, rg.reps[q].col(j));
      RatVec y = h.class_coords(q4, mat_apply(v[q], z, F));
      auto x = solve(rg.b_basis[q4].hcat(rg.reps[q4]), y, F);
      if (!x) throw math_error("the reduced group is not preserved by u");
      for (std::size_t i = 0; i < rg.dims[q4]; ++i)
        m(i, j) = (*x)[rg.b_basis[q4].cols() + i];
    }
    rg.u[q] = m;
  }
  return rg;
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

EulerReport euler_and_casson(const FloerComplex& c, const RingSpec& ring) {
  EulerReport r;
  r.dims = field_cohomology(c, ring).dims();
  r.chi = signed_sum(r.dims);
  r.casson = Rat(-r.chi, 2);
  return r;
}

HReport h_invariant(const FloerComplex& c, const RingSpec& ring) {
  if (c.flavor != Flavor::homology_sphere)
    throw parse_error("h is defined for the homology sphere flavor only");
  ReducedGroup rg = reduced_group(c, ring);
  FloerComplex rev = reverse_orientation(c);
  ReducedGroup rgr = reduced_group(rev, ring);

  HReport r;
  r.chi = signed_sum(rg.hf_dims);
  r.chi_reduced = signed_sum(rg.dims);
  Int diff = r.chi - r.chi_reduced;
  if (diff % 2 != 0)
    throw math_error("chi - chi_reduced is odd; no integer h exists");
  r.h = diff / 2;
  r.h_span = Int(rg.s_even) - Int(rgr.s_even);

  FieldCohomology h = field_cohomology(c, ring);
  FieldCohomology hr = field_cohomology(rev, ring);
  r.h_prefix = Int(independent_prefix(c, h)) - Int(independent_prefix(rev, hr));
  return r;
}

NilpotencyReport nilpotency_index(const FloerComplex& c,
                                  const RingSpec& ring) {
  ReducedGroup rg = reduced_group(c, ring);
  FieldOps F(ring);
  NilpotencyReport rep;
  rep.on_reduced = c.flavor == Flavor::homology_sphere;
  for (std::size_t q = 0; q < 8; ++q) {
    std::size_t n = rg.dims[q];
    rep.block_dims[q] = n;
    RatMatrix nq = mat_mul(rg.u[mod8(q + 4)], rg.u[q], F);
    for (std::size_t i = 0; i < n; ++i)
      nq(i, i) = F.sub(nq(i, i), F.from_int(64));
    std::size_t idx = 0;
    RatMatrix p = RatMatrix::identity(n);
    while (!p.is_zero()) {
      if (idx >= n) {
        // past the Cayley-Hamilton bound the powers can never die
        rep.nilpotent = false;
        ++idx;
        break;
      }
      p = mat_mul(nq, p, F);
      ++idx;
    }
    rep.block_index[q] = idx;
    rep.index = std::max(rep.index, idx);
  }
  return rep;
}

bool PeriodicityReport::geometric_profile() const {
  for (std::size_t q = 0; q < 8; ++q)
    if (q != 4 && q != 5 && !u_iso[q]) return false;
  return dims_periodic && reduced_periodic;
}

PeriodicityReport periodicity_report(const FloerComplex& c,
                                     const RingSpec& ring) {
  if (c.flavor != Flavor::homology_sphere)
    throw parse_error(
        "periodicity diagnostics need the homology sphere flavor");
  PeriodicityReport r;
  r.ring = ring;
  FieldOps F(ring);
  FieldCohomology h = field_cohomology(c, ring);
  r.hf_dims = h.dims();
  InducedU iu = u_on_cohomology(h, c);
  for (std::size_t q = 0; q < 8; ++q) {
    r.u_partial[q] = iu.domain_restricted[q] || iu.codomain_quotient[q];
    const RatMatrix& m = iu.matrix[q];
    r.u_iso[q] = m.rows() == m.cols() && rank_of(m, F) == m.rows();
  }
  ReducedGroup rg = reduced_group(c, ring);
  r.reduced_dims = rg.dims;
  r.dims_periodic = true;
  r.reduced_periodic = true;
  for (std::size_t q = 0; q < 8; ++q) {
    if (r.hf_dims[q] != r.hf_dims[mod8(q + 4)]) r.dims_periodic = false;
    if (rg.dims[q] != rg.dims[mod8(q + 4)]) r.reduced_periodic = false;
  }
  return r;
}

}  // namespace floercalc
