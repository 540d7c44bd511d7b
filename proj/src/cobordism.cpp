#include "floercalc/cobordism.hpp"

#include <string>
#include <utility>

namespace floercalc {
namespace {

std::size_t mod8(long long q) { return static_cast<std::size_t>(((q % 8) + 8) % 8); }

IntMatrix icolumn(const IntVec& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RatMatrix rcolumn(const RatVec& v) {
  RatMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RatMatrix row_matrix(const RatVec& v) {
  RatMatrix m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return m;
}

void check_cobordism_shapes(const CobordismData& w) {
  if (w.source.flavor != Flavor::homology_sphere ||
      w.target.flavor != Flavor::homology_sphere)
    throw parse_error("cobordism data requires homology sphere complexes");
  check_shapes(w.source);
  check_shapes(w.target);
  for (std::size_t q = 0; q < 8; ++q) {
    if (w.wstar[q].rows() != w.target.dim(q) ||
        w.wstar[q].cols() != w.source.dim(q))
      throw parse_error("wstar has the wrong shape at degree " +
                        std::to_string(q));
  }
  if (w.delta_w.rows() != 1 || w.delta_w.cols() != w.source.dim(5))
    throw parse_error("delta_w must be a functional on degree 5 of the source");
  if (w.delta_prime_w.size() != w.target.dim(0))
    throw parse_error("delta_prime_w must live in degree 0 of the target");
  if (w.phi) {
    for (std::size_t q = 0; q < 8; ++q) {
      if ((*w.phi)[q].rows() != w.target.dim(mod8(q + 3)) ||
          (*w.phi)[q].cols() != w.source.dim(q))
        throw parse_error("phi has the wrong shape at degree " +
                          std::to_string(q));
    }
  }
}

// right hand side of the commutation identity, degree q block:
//   v_2 wstar - wstar v_1 + 2 (delta_prime_2 x delta_w at q = 5,
//                              delta_prime_w x delta_1 at q = 4)
IntMatrix commutation_rhs(const CobordismData& w, std::size_t q) {
  IntMatrix r = w.target.v[q] * w.wstar[q] -
                w.wstar[mod8(q + 4)] * w.source.v[q];
  if (q == 5) r = r + (icolumn(w.target.delta_prime) * w.delta_w).scaled(2);
  if (q == 4)
    r = r + (icolumn(w.delta_prime_w) * w.source.delta).scaled(2);
  return r;
}

// induced map on degree q cohomology classes, class coordinates on both
// sides; requires the cochain map identity (images of cocycles must be
// cocycles, enforced by class_coords)
RatMatrix cohomology_map(const FieldCohomology& h1, const FieldCohomology& h2,
                         const std::array<IntMatrix, 8>& wstar,
                         std::size_t q) {
  const FieldOps& F = h1.ops();
  RatMatrix wq = reduce_entries(wstar[q], F);
  RatMatrix m(h2.piece[q].dim, h1.piece[q].dim);
  for (std::size_t j = 0; j < h1.piece[q].dim; ++j) {
    RatVec y = h2.class_coords(q, mat_apply(wq, h1.piece[q].reps.col(j), F));
    m.set_col(j, y);
  }
  return m;
}

// the first n_layers tower entries in class coordinates, no stopping rule
struct TowerSlices {
  std::vector<RatVec> rows;  // delta_n, degree 4 / 0 by parity
  std::vector<RatVec> cols;  // delta_prime_n, degree 1 / 5 by parity
};

TowerSlices tower_to_depth(const FieldCohomology& h, const FloerComplex& c,
                           std::size_t n_layers) {
  const FieldOps& F = h.ops();
  std::array<RatMatrix, 8> v;
  for (std::size_t q = 0; q < 8; ++q) v[q] = reduce_entries(c.v[q], F);
  RatMatrix r = reduce_entries(c.delta, F);
  RatVec p = reduce_entries(c.delta_prime, F);
  TowerSlices t;
  for (std::size_t n = 0; n < n_layers; ++n) {
    std::size_t qd = mod8(4 - 4 * static_cast<long long>(n));
    std::size_t qp = mod8(1 + 4 * static_cast<long long>(n));
    if (!mat_mul(r, h.piece[qd].boundaries, F).is_zero())
      throw math_error("tower functional does not descend to cohomology");
    t.rows.push_back(mat_mul(r, h.piece[qd].reps, F).row(0));
    t.cols.push_back(h.class_coords(qp, p));
    r = mat_mul(r, v[mod8(4 - 4 * static_cast<long long>(n + 1))], F);
    p = mat_apply(v[qp], p, F);
  }
  return t;
}

// identity checks only; shapes and complex validity are the caller's job
void require_identities(const CobordismData& w, const char* who) {
  CobordismReport r = validate_cobordism(w);
  if (!r.chain_map || !r.delta_functorial || !r.delta_prime_dual)
    throw math_error(std::string(who) +
                     " needs a validated cobordism: " + r.failures.front());
}

}  // namespace

CobordismData identity_cobordism(const FloerComplex& c) {
  CobordismData w;
  w.source = c;
  w.target = c;
  for (std::size_t q = 0; q < 8; ++q)
    w.wstar[q] = IntMatrix::identity(c.dim(q));
  w.delta_w = IntMatrix(1, c.dim(5));
  w.delta_prime_w = IntVec(c.dim(0), Int(0));
  return w;
}

CobordismData compose_cobordisms(const CobordismData& outer,
                                 const CobordismData& inner,
                                 const IntMatrix& delta_w,
                                 const IntVec& delta_prime_w) {
  check_cobordism_shapes(outer);
  check_cobordism_shapes(inner);
  if (!(inner.target == outer.source))
    throw parse_error("cobordisms compose only along an identical complex");
  CobordismData w;
  w.source = inner.source;
  w.target = outer.target;
  for (std::size_t q = 0; q < 8; ++q)
    w.wstar[q] = outer.wstar[q] * inner.wstar[q];
  w.delta_w = delta_w;
  w.delta_prime_w = delta_prime_w;
  w.negative_definite = outer.negative_definite && inner.negative_definite;
  w.h1_trivial = outer.h1_trivial && inner.h1_trivial;
  check_cobordism_shapes(w);
  return w;
}

CobordismReport validate_cobordism(const CobordismData& w) {
  check_cobordism_shapes(w);
  validate_complex(w.source);
  validate_complex(w.target);

  CobordismReport r;
  r.chain_map = true;
  for (std::size_t q = 0; q < 8; ++q) {
    IntMatrix lhs = w.target.d[q] * w.wstar[q];
    IntMatrix rhs = w.wstar[mod8(q + 1)] * w.source.d[q];
    if (!(lhs == rhs)) {
      r.chain_map = false;
      r.failures.push_back("cochain map identity fails at degree " +
                           std::to_string(q));
    }
  }

  IntMatrix lhs_d = w.target.delta * w.wstar[4];
  IntMatrix rhs_d = w.source.delta + w.delta_w * w.source.d[4];
  r.delta_functorial = lhs_d == rhs_d;
  if (!r.delta_functorial)
    r.failures.push_back("delta functional identity fails");

  IntMatrix lhs_p = w.wstar[1] * icolumn(w.source.delta_prime);
  IntMatrix rhs_p = icolumn(w.target.delta_prime) +
                    w.target.d[0] * icolumn(w.delta_prime_w);
  r.delta_prime_dual = lhs_p == rhs_p;
  if (!r.delta_prime_dual)
    r.failures.push_back("delta_prime element identity fails");

  if (w.phi) {
    for (std::size_t q = 0; q < 8; ++q) {
      IntMatrix lhs = w.target.d[mod8(q + 3)] * (*w.phi)[q] +
                      (*w.phi)[mod8(q + 1)] * w.source.d[q];
      if (!(lhs == commutation_rhs(w, q))) {
        r.phi_consistent = false;
        r.failures.push_back(
            "stored homotopy fails the commutation identity at degree " +
            std::to_string(q));
      }
    }
  }
  return r;
}

HomotopySolution solve_homotopy(const CobordismData& w,
                                const RingSpec& ring) {
  require_identities(w, "solve_homotopy");
  FieldOps F(ring);

  // unknowns: the entries of phi[q] (rows x cols per degree)
  std::array<std::size_t, 8> var_off{}, eq_off{};
  std::size_t nvars = 0, neqs = 0;
  for (std::size_t q = 0; q < 8; ++q) {
    var_off[q] = nvars;
    nvars += w.target.dim(mod8(q + 3)) * w.source.dim(q);
    eq_off[q] = neqs;
    neqs += w.target.dim(mod8(q + 4)) * w.source.dim(q);
  }
  auto var_index = [&](std::size_t q, std::size_t r, std::size_t c) {
    return var_off[q] + r * w.source.dim(q) + c;
  };

  RatMatrix A(neqs, nvars);
  RatVec b(neqs, Rat(0));
  for (std::size_t q = 0; q < 8; ++q) {
    const IntMatrix& dt = w.target.d[mod8(q + 3)];  // left factor of d phi
    const IntMatrix& ds = w.source.d[q];            // right factor of phi d
    IntMatrix rhs = commutation_rhs(w, q);
    std::size_t cols = w.source.dim(q);
    for (std::size_t i = 0; i < w.target.dim(mod8(q + 4)); ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        std::size_t e = eq_off[q] + i * cols + c;
        b[e] = F.from_int(rhs(i, c));
        for (std::size_t rr = 0; rr < dt.cols(); ++rr)
          A(e, var_index(q, rr, c)) =
              F.add(A(e, var_index(q, rr, c)), F.from_int(dt(i, rr)));
        for (std::size_t k = 0; k < ds.rows(); ++k)
          A(e, var_index(mod8(q + 1), i, k)) =
              F.add(A(e, var_index(mod8(q + 1), i, k)), F.from_int(ds(k, c)));
      }
    }
  }

  HomotopySolution sol;
  sol.ring = ring;
  auto x = solve(A, b, F);
  for (std::size_t q = 0; q < 8; ++q)
    sol.phi[q] = RatMatrix(w.target.dim(mod8(q + 3)), w.source.dim(q));
  if (!x) return sol;
  sol.found = true;
  for (std::size_t q = 0; q < 8; ++q)
    for (std::size_t r = 0; r < sol.phi[q].rows(); ++r)
      for (std::size_t c = 0; c < sol.phi[q].cols(); ++c)
        sol.phi[q](r, c) = (*x)[var_index(q, r, c)];

  // substitute back before trusting the solver
  for (std::size_t q = 0; q < 8; ++q) {
    RatMatrix lhs =
        mat_mul(reduce_entries(w.target.d[mod8(q + 3)], F), sol.phi[q], F);
    RatMatrix tail = mat_mul(sol.phi[mod8(q + 1)],
                             reduce_entries(w.source.d[q], F), F);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j)
        lhs(i, j) = F.add(lhs(i, j), tail(i, j));
    if (!(lhs == reduce_entries(commutation_rhs(w, q), F)))
      throw math_error("homotopy verification failed at degree " +
                       std::to_string(q));
  }
  return sol;
}

TriangularityReport delta_triangularity(const CobordismData& w,
                                        const RingSpec& ring) {
  require_identities(w, "delta_triangularity");
  FieldCohomology h1 = field_cohomology(w.source, ring);
  FieldCohomology h2 = field_cohomology(w.target, ring);
  const FieldOps& F = h1.ops();

  DeltaTower t1 = delta_tower(h1, w.source);
  DeltaTower t2 = delta_tower(h2, w.target);
  std::size_t layers = std::max(t1.delta_rows.size(), t2.delta_rows.size());
  TowerSlices s1 = tower_to_depth(h1, w.source, layers);
  TowerSlices s2 = tower_to_depth(h2, w.target, layers);

  std::array<RatMatrix, 8> wmap;
  for (std::size_t q : {std::size_t(0), std::size_t(1), std::size_t(4),
                        std::size_t(5)})
    wmap[q] = cohomology_map(h1, h2, w.wstar, q);

  TriangularityReport rep;
  rep.ring = ring;
  rep.layers = layers;
  for (std::size_t n = 0; n < layers; ++n) {
    std::size_t qd = mod8(4 - 4 * static_cast<long long>(n));
    std::size_t qp = mod8(1 + 4 * static_cast<long long>(n));
    std::vector<std::size_t> idx;
    for (std::size_t i = n % 2; i + 2 <= n; i += 2) idx.push_back(i);

    // delta side: pull the target functional back, compare to the source
    RatVec pulled = mat_mul(row_matrix(s2.rows[n]), wmap[qd], F).row(0);
    RatVec res(pulled.size());
    for (std::size_t j = 0; j < res.size(); ++j)
      res[j] = F.sub(pulled[j], s1.rows[n][j]);
    RatMatrix ma(res.size(), idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < res.size(); ++j)
        ma(j, k) = s1.rows[idx[k]][j];
    auto xa = solve(ma, res, F);
    if (!xa)
      throw math_error(
          "tower functionals admit no triangular comparison at layer " +
          std::to_string(n));
    rep.a.emplace_back(n, Rat(0));
    for (std::size_t k = 0; k < idx.size(); ++k)
      rep.a.back()[idx[k]] = (*xa)[k];
    rep.a_freedom.push_back(idx.size() - rank_of(ma, F));

    // delta_prime side: push the source class forward
    RatVec pushed = mat_apply(wmap[qp], s1.cols[n], F);
    RatVec resb(pushed.size());
    for (std::size_t j = 0; j < resb.size(); ++j)
      resb[j] = F.sub(pushed[j], s2.cols[n][j]);
    RatMatrix mb(resb.size(), idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < resb.size(); ++j)
        mb(j, k) = s2.cols[idx[k]][j];
    auto xb = solve(mb, resb, F);
    if (!xb)
      throw math_error(
          "tower classes admit no triangular comparison at layer " +
          std::to_string(n));
    rep.b.emplace_back(n, Rat(0));
    for (std::size_t k = 0; k < idx.size(); ++k)
      rep.b.back()[idx[k]] = (*xb)[k];
    rep.b_freedom.push_back(idx.size() - rank_of(mb, F));
  }
  return rep;
}

InducedReducedMap induced_reduced_map(const CobordismData& w,
                                      const RingSpec& ring) {
  require_identities(w, "induced_reduced_map");
  ReducedGroup rg1 = reduced_group(w.source, ring);
  ReducedGroup rg2 = reduced_group(w.target, ring);
  FieldCohomology h1 = field_cohomology(w.source, ring);
  FieldCohomology h2 = field_cohomology(w.target, ring);
  const FieldOps& F = h1.ops();
  DeltaTower t1 = delta_tower(h1, w.source);
  DeltaTower t2 = delta_tower(h2, w.target);

  InducedReducedMap out;
  out.ring = ring;
  out.source_dims = rg1.dims;
  out.target_dims = rg2.dims;
  for (std::size_t q = 0; q < 8; ++q)
    out.hf_map[q] = cohomology_map(h1, h2, w.wstar, q);

  // the common kernel of the tower functionals must pull back on the
  // nose: equality of kernels is equality of the row spans
  for (std::size_t q : {std::size_t(4), std::size_t(0)}) {
    std::size_t want = q == 4 ? 0 : 1;
    std::vector<RatVec> src, pulled;
    for (std::size_t i = 0; i < t1.delta_rows.size(); ++i)
      if (i % 2 == want) src.push_back(t1.delta_rows[i]);
    for (std::size_t i = 0; i < t2.delta_rows.size(); ++i)
      if (i % 2 == want)
        pulled.push_back(
            mat_mul(row_matrix(t2.delta_rows[i]), out.hf_map[q], F).row(0));
    std::size_t n = h1.piece[q].dim;
    RatMatrix s(src.size(), n), p(pulled.size(), n);
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = src[i][j];
    for (std::size_t i = 0; i < pulled.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = pulled[i][j];
    if (!same_column_span(s.transposed(), p.transposed(), F))
      throw math_error(
          "the map does not pull the reduced kernel back to itself at "
          "degree " + std::to_string(q));
  }

  // the span of the delta_prime classes must push onto its counterpart
  for (std::size_t q : {std::size_t(1), std::size_t(5)}) {
    std::size_t want = q == 1 ? 0 : 1;
    RatMatrix b1(h1.piece[q].dim, 0), b2(h2.piece[q].dim, 0);
    for (std::size_t i = 0; i < t1.delta_prime_cols.size(); ++i)
      if (i % 2 == want) b1 = b1.hcat(rcolumn(t1.delta_prime_cols[i]));
    for (std::size_t i = 0; i < t2.delta_prime_cols.size(); ++i)
      if (i % 2 == want) b2 = b2.hcat(rcolumn(t2.delta_prime_cols[i]));
    if (!same_column_span(mat_mul(out.hf_map[q], b1, F), b2, F))
      throw math_error(
          "the map does not carry the span of the delta_prime classes "
          "onto its counterpart at degree " + std::to_string(q));
  }

  for (std::size_t q = 0; q < 8; ++q) {
    RatMatrix m(rg2.dims[q], rg1.dims[q]);
    RatMatrix basis = rg2.b_basis[q].hcat(rg2.reps[q]);
    for (std::size_t j = 0; j < rg1.dims[q]; ++j) {
      RatVec y = mat_apply(out.hf_map[q], rg1.reps[q].col(j), F);
      auto x = solve(basis, y, F);
      if (!x)
        throw math_error("the induced map left the reduced group at degree " +
                         std::to_string(q));
      for (std::size_t i = 0; i < rg2.dims[q]; ++i)
        m(i, j) = (*x)[rg2.b_basis[q].cols() + i];
    }
    out.matrix[q] = m;
  }

  out.u_commutes = true;
  for (std::size_t q = 0; q < 8; ++q)
    out.u_commutes &= mat_mul(rg2.u[q], out.matrix[q], F) ==
                      mat_mul(out.matrix[mod8(q + 4)], rg1.u[q], F);
  return out;
}

MonotonicityReport h_monotonicity_report(const CobordismData& w,
                                         const RingSpec& ring) {
  check_cobordism_shapes(w);
  validate_complex(w.source);
  validate_complex(w.target);
  MonotonicityReport r;
  r.ring = ring;
  r.h_source = h_invariant(w.source, ring).h;
  r.h_target = h_invariant(w.target, ring).h;
  r.applicable = w.negative_definite && w.h1_trivial;
  r.monotone = r.h_target >= r.h_source;
  r.consistent = !r.applicable || r.monotone;
  return r;
}

}  // namespace floercalc
