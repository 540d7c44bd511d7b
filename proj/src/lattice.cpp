#include "floercalc/lattice.hpp"

#include <algorithm>
#include <set>

namespace floercalc {

namespace {

Int floor_rat(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);  // canonical: den > 0
  Int q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

Int int_pow(Int base, unsigned long e) {
  Int acc = 1;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// P = U^T diag(d) U with U unit upper triangular. Pivots of a positive
// definite matrix are all positive; the first non-positive pivot at step k
// witnesses a non-positive leading principal minor of order k+1.
struct Ldl {
  std::vector<Rat> d;
  RatMatrix u;
};

Ldl ldl_decompose(const RatMatrix& p, int sign_for_message) {
  std::size_t n = p.rows();
  RatMatrix a = p;
  Ldl f;
  f.d.assign(n, Rat(0));
  f.u = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    f.d[k] = a(k, k);
    if (f.d[k] <= 0) {
      throw parse_error(std::string("gram matrix is not ") +
                        (sign_for_message > 0 ? "positive" : "negative") +
                        " definite: leading principal minor of order " +
                        std::to_string(k + 1) + " fails");
    }
    for (std::size_t i = k + 1; i < n; ++i) f.u(k, i) = a(k, i) / f.d[k];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) -= a(k, i) * a(k, j) / f.d[k];
  }
  return f;
}

// All integer x with (x - c)^T P (x - c) <= rho, P = U^T diag(d) U.
// Coordinates are fixed from the last to the first; at each level the
// remaining budget gives exact integer bounds via one integer square root.
void enumerate_ellipsoid(
    const Ldl& f, const RatVec& c, const Rat& rho,
    const std::function<void(const IntVec&, const Rat&)>& emit) {
  std::size_t n = f.d.size();
  IntVec x(n, Int(0));
  std::vector<Rat> xr(n, Rat(0));

  std::function<void(std::size_t, const Rat&)> step = [&](std::size_t level,
                                                          const Rat& used) {
    if (level == 0) {
      emit(x, used);
      return;
    }
    std::size_t i = level - 1;
    Rat t(0);
    for (std::size_t j = i + 1; j < n; ++j) t += f.u(i, j) * (xr[j] - c[j]);
    Rat alpha = c[i] - t;
    Rat allowed = rho - used;
    if (allowed < 0) return;
    Rat r = allowed / f.d[i];
    // (x - alpha)^2 <= r with alpha = p/q: bound q*x - p by isqrt(floor(r q^2))
    Int pnum = numerator(alpha);
    Int pden = denominator(alpha);
    Int bound2 = floor_rat(r * pden * pden);
    if (bound2 < 0) return;
    Int b = sqrt(bound2);
    Int lo = ceil_rat(Rat(pnum - b, pden));
    Int hi = floor_rat(Rat(pnum + b, pden));
    for (Int v = lo; v <= hi; ++v) {
      x[i] = v;
      xr[i] = Rat(v);
      Rat diff = xr[i] - alpha;
      step(i, used + f.d[i] * diff * diff);
    }
    x[i] = 0;
    xr[i] = 0;
  };
  step(n, Rat(0));
}

IntVec canonical_rep(IntVec z) {
  for (const Int& e : z) {
    if (e > 0) break;
    if (e < 0) {
      for (Int& f : z) f = -f;
      break;
    }
  }
  return z;
}

bool is_zero_vec(const IntVec& z) {
  return std::all_of(z.begin(), z.end(), [](const Int& e) { return e == 0; });
}

RatMatrix positive_form(const Lattice& lat) {
  RatMatrix p(lat.rank(), lat.rank());
  for (std::size_t i = 0; i < lat.rank(); ++i)
    for (std::size_t j = 0; j < lat.rank(); ++j)
      p(i, j) = Rat(lat.gram(i, j) * lat.sign);
  return p;
}

void check_vector_size(const Lattice& lat, const IntVec& v, const char* what) {
  if (v.size() != lat.rank())
    throw parse_error(std::string(what) + " has length " +
                      std::to_string(v.size()) + ", lattice rank is " +
                      std::to_string(lat.rank()));
}

// Shared core: all z (both signs) with z*z = s, z in L or in w + 2L.
std::vector<IntVec> raw_vectors_with_square(const Lattice& lat, const Int& s,
                                            const std::optional<IntVec>& w) {
  Int abs_s = s * lat.sign;
  std::vector<IntVec> out;
  if (abs_s < 0) return out;
  Ldl f = ldl_decompose(positive_form(lat), lat.sign);
  std::size_t n = lat.rank();
  if (!w) {
    RatVec c(n, Rat(0));
    enumerate_ellipsoid(f, c, Rat(abs_s),
                        [&](const IntVec& x, const Rat& q) {
                          if (q == Rat(abs_s)) out.push_back(x);
                        });
  } else {
    // z = w + 2y: |z*z| = 4 (y + w/2)^T P (y + w/2)
    check_vector_size(lat, *w, "coset vector");
    RatVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Rat(-(*w)[i], 2);
    Rat target = Rat(abs_s, 4);
    enumerate_ellipsoid(f, c, target, [&](const IntVec& y, const Rat& q) {
      if (q == target) {
        IntVec z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = (*w)[i] + 2 * y[i];
        out.push_back(z);
      }
    });
  }
  return out;
}

Int dot(const IntVec& a, const IntVec& b) {
  Int acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Bezout coefficients: a*x + b*y = gcd(a, b) >= 0.
struct Egcd {
  Int g, x, y;
};

Egcd egcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    Int x2 = x0 - q * x1;
    Int y2 = y0 - q * y1;
    a = b;
    b = r;
    x0 = x1;
    x1 = x2;
    y0 = y1;
    y1 = y2;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return {a, x0, y0};
}

}  // namespace

Lattice Lattice::from_gram(IntMatrix gram, int sign) {
  if (sign != 1 && sign != -1) throw parse_error("lattice sign must be +1 or -1");
  if (gram.rows() != gram.cols())
    throw parse_error("gram matrix must be square");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = i + 1; j < gram.cols(); ++j)
      if (gram(i, j) != gram(j, i))
        throw parse_error("gram matrix must be symmetric");
  Lattice lat;
  lat.gram = std::move(gram);
  lat.sign = sign;
  ldl_decompose(positive_form(lat), sign);  // definiteness check
  return lat;
}

Lattice Lattice::diagonal(std::size_t n, int sign) {
  IntMatrix g = IntMatrix::identity(n);
  if (sign < 0) g = -g;
  return from_gram(std::move(g), sign);
}

IntMatrix e8_basis_doubled_coordinates() {
  // Basis vectors, each doubled: b1 = (e1 - e2 - ... - e7 + e8)/2,
  // b2 = e1 + e2, b3 = e2 - e1, b_k = e_{k-2} - e_{k-3} for k >= 4.
  const int rows[8][8] = {
      {1, -1, -1, -1, -1, -1, -1, 1},
      {2, 2, 0, 0, 0, 0, 0, 0},
      {-2, 2, 0, 0, 0, 0, 0, 0},
      {0, -2, 2, 0, 0, 0, 0, 0},
      {0, 0, -2, 2, 0, 0, 0, 0},
      {0, 0, 0, -2, 2, 0, 0, 0},
      {0, 0, 0, 0, -2, 2, 0, 0},
      {0, 0, 0, 0, 0, -2, 2, 0},
  };
  IntMatrix b(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) b(i, j) = rows[i][j];
  return b;
}

IntVec e8_coordinates_of_doubled(const IntVec& doubled) {
  if (doubled.size() != 8)
    throw parse_error("doubled coordinates must have length 8");
  IntMatrix bt = e8_basis_doubled_coordinates().transposed();
  auto x = solve_int(bt, doubled);
  if (!x) throw parse_error("vector does not lie in the rank-8 lattice");
  return *x;
}

Lattice Lattice::e8(int sign) {
  if (sign != 1 && sign != -1) throw parse_error("lattice sign must be +1 or -1");
  IntMatrix b = e8_basis_doubled_coordinates();
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      Int d = 0;
      for (std::size_t k = 0; k < 8; ++k) d += b(i, k) * b(j, k);
      g(i, j) = sign * d / 4;  // doubled coordinates scale squares by 4
    }
  return from_gram(std::move(g), sign);
}

Lattice Lattice::direct_sum(const Lattice& a, const Lattice& b) {
  if (a.sign != b.sign)
    throw parse_error("direct summands must have the same sign");
  std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  return from_gram(std::move(g), a.sign);
}

Int Lattice::inner(const IntVec& x, const IntVec& y) const {
  check_vector_size(*this, x, "vector");
  check_vector_size(*this, y, "vector");
  Int acc = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) acc += x[i] * gram(i, j) * y[j];
  return acc;
}

VectorPairSet vectors_with_square(const Lattice& lat, const Int& s,
                                  const std::optional<IntVec>& coset) {
  std::set<IntVec> reps;
  for (const IntVec& z : raw_vectors_with_square(lat, s, coset))
    reps.insert(canonical_rep(z));
  VectorPairSet out;
  out.reps.assign(reps.begin(), reps.end());
  return out;
}

MinSquare min_square_in_coset(const Lattice& lat, const IntVec& w) {
  check_vector_size(lat, w, "coset vector");
  Int bound = lat.square(w) * lat.sign;  // realized by z = w
  std::set<IntVec> best;
  Rat best_q(bound, 4);
  Ldl f = ldl_decompose(positive_form(lat), lat.sign);
  std::size_t n = lat.rank();
  RatVec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = Rat(-w[i], 2);
  enumerate_ellipsoid(f, c, Rat(bound, 4), [&](const IntVec& y, const Rat& q) {
    if (q > best_q) return;
    IntVec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = w[i] + 2 * y[i];
    if (q < best_q) {
      best_q = q;
      best.clear();
    }
    best.insert(canonical_rep(z));
  });
  MinSquare m;
  m.value = floor_rat(best_q * 4);  // exact: 4q is the integer |z*z|
  m.witness = *best.begin();
  return m;
}

bool is_extremal(const Lattice& lat, const IntVec& w) {
  return min_square_in_coset(lat, w).value == lat.square(w) * lat.sign;
}

Int eta(const Lattice& lat, const IntVec& w, const IntVec& a, const Int& m) {
  check_vector_size(lat, w, "coset vector");
  if (m < 0) throw parse_error("eta exponent must be nonnegative");
  if (m > 0) check_vector_size(lat, a, "pairing vector");
  Int ws = lat.square(w);
  if ((ws - m) % 2 != 0)
    throw parse_error("eta requires w*w = m (mod 2); got w*w = " +
                      to_string(ws) + ", m = " + to_string(m));
  if (m > 1000000) throw parse_error("eta exponent too large");
  unsigned long e = m.convert_to<unsigned long>();
  Int total = 0;
  std::size_t n = lat.rank();
  for (const IntVec& z : vectors_with_square(lat, ws, w).reps) {
    // (z + w)/2 lies in the lattice: z = w + 2y gives (z + w)/2 = w + y.
    IntVec half(n);
    for (std::size_t i = 0; i < n; ++i) half[i] = (z[i] + w[i]) / 2;
    Int hs = lat.square(half);
    Int sign_term = (hs % 2 == 0) ? 1 : -1;
    Int pair_term = (e == 0) ? Int(1) : int_pow(lat.inner(a, z), e);
    total += sign_term * pair_term;
  }
  return total;
}

Int eta(const Lattice& lat, const IntVec& w) {
  return eta(lat, w, IntVec(lat.rank(), Int(0)), 0);
}

ReducibleCount count_reducibles(const Lattice& lat, const IntVec& c,
                                const Int& k) {
  if (lat.sign != -1)
    throw parse_error("reducible counts require a negative definite lattice");
  check_vector_size(lat, c, "coset vector");
  ReducibleCount out;
  out.target_square = lat.square(c) - 4 * k;
  out.pairs = vectors_with_square(lat, out.target_square, c);
  return out;
}

bool is_standard_diagonal(const Lattice& lat) {
  if (!lat.unimodular())
    throw parse_error("diagonality test requires a unimodular lattice");
  Lattice cur = lat;
  while (cur.rank() > 0) {
    VectorPairSet units = vectors_with_square(cur, Int(cur.sign));
    if (units.reps.empty()) return false;
    // A unit vector spans a unimodular sublattice, hence splits off as a
    // direct summand; its orthogonal complement is the saturated kernel of
    // pairing against it. In a standard diagonal lattice every unit vector
    // is +-e_i, so the complement is standard diagonal again and a greedy
    // split never needs backtracking.
    const IntVec& u = units.reps.front();
    IntMatrix row(1, cur.rank());
    for (std::size_t j = 0; j < cur.rank(); ++j) {
      Int acc = 0;
      for (std::size_t i = 0; i < cur.rank(); ++i)
        acc += u[i] * cur.gram(i, j);
      row(0, j) = acc;
    }
    IntMatrix kb = kernel_basis_int(row);
    IntMatrix g(kb.cols(), kb.cols());
    for (std::size_t i = 0; i < kb.cols(); ++i)
      for (std::size_t j = 0; j < kb.cols(); ++j)
        g(i, j) = cur.inner(kb.col(i), kb.col(j));
    cur = Lattice::from_gram(std::move(g), cur.sign);
  }
  return true;
}

DiagonalityCertificate nondiagonal_certificate(const Lattice& lat) {
  if (lat.sign != -1)
    throw parse_error("certificate requires a negative definite lattice");
  if (!lat.unimodular())
    throw parse_error("certificate requires a unimodular lattice");
  std::size_t n = lat.rank();
  DiagonalityCertificate cert;

  // Distinct unit-vector pairs are orthogonal (Cauchy-Schwarz forces
  // |u.v| <= 1 with equality only for u = -+v), so they span a standard
  // diagonal direct summand. The lattice is diagonal exactly when their
  // common orthogonal complement vanishes.
  VectorPairSet units = vectors_with_square(lat, Int(-1));
  IntMatrix kb;
  if (units.reps.empty()) {
    kb = IntMatrix::identity(n);
  } else {
    IntMatrix rows(units.reps.size(), n);
    for (std::size_t r = 0; r < units.reps.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) {
        Int acc = 0;
        for (std::size_t i = 0; i < n; ++i)
          acc += units.reps[r][i] * lat.gram(i, j);
        rows(r, j) = acc;
      }
    kb = kernel_basis_int(rows);
  }
  cert.perp_rank = kb.cols();
  if (kb.cols() == 0) {
    cert.diagonal = true;
    return cert;
  }

  // Shortest nonzero vector of the complement, deterministically: smallest
  // |square|, then lexicographically least canonical representative.
  IntMatrix gbar(kb.cols(), kb.cols());
  for (std::size_t i = 0; i < kb.cols(); ++i)
    for (std::size_t j = 0; j < kb.cols(); ++j)
      gbar(i, j) = lat.inner(kb.col(i), kb.col(j));
  Lattice bar = Lattice::from_gram(gbar, -1);
  Int probe = -gbar(0, 0);
  for (std::size_t i = 1; i < kb.cols(); ++i) {
    Int cand = -gbar(i, i);
    if (cand < probe) probe = cand;
  }
  Int best = probe + 1;
  IntVec wbar;
  Ldl f = ldl_decompose(positive_form(bar), -1);
  RatVec c(kb.cols(), Rat(0));
  enumerate_ellipsoid(f, c, Rat(probe), [&](const IntVec& y, const Rat& q) {
    if (is_zero_vec(y)) return;
    Int val = floor_rat(q);
    IntVec rep = canonical_rep(y);
    if (val < best || (val == best && rep < wbar)) {
      best = val;
      wbar = rep;
    }
  });

  cert.w.assign(n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < kb.cols(); ++j)
      cert.w[i] += kb(i, j) * wbar[j];
  cert.w_square = lat.square(cert.w);
  cert.m = -cert.w_square - 2;

  // The complement contains no unit vectors (a unit vector there would be
  // orthogonal to itself), so |w*w| >= 2 and m >= 0. A shortest vector is
  // primitive, and the gram matrix is unimodular, so pairing against w is a
  // surjective functional: Bezout coefficients give a with a.w = 1.
  IntVec gw(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += cert.w[i] * lat.gram(i, j);
    gw[j] = acc;
  }
  Int g = 0;
  cert.a.assign(n, Int(0));
  for (std::size_t j = 0; j < n; ++j) {
    Egcd e = egcd(g, gw[j]);
    for (std::size_t i = 0; i < j; ++i) cert.a[i] *= e.x;
    cert.a[j] = e.y;
    g = e.g;
  }
  if (g != 1) throw math_error("shortest complement vector is not primitive");
  if (dot(cert.a, gw) != 1) throw math_error("dual vector construction failed");

  cert.eta_value = eta(lat, cert.w, cert.a, cert.m);
  if (cert.eta_value != 1)
    throw math_error("certificate eta is " + to_string(cert.eta_value) +
                     ", expected 1");
  if (!is_extremal(lat, cert.w))
    throw math_error("certificate vector is not extremal");
  return cert;
}

}  // namespace floercalc
