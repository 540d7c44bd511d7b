#include "floercalc/linalg.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <algorithm>
#include <sstream>

namespace floercalc {

// ---------------------------------------------------------------------------
// RingSpec / FieldOps
// ---------------------------------------------------------------------------

RingSpec RingSpec::Fp(const Int& prime) {
  if (prime == 2)
    throw parse_error(
        "characteristic 2 is not supported: the chain identities need 2 "
        "invertible");
  if (prime < 2 || !boost::multiprecision::miller_rabin_test(prime, 32))
    throw parse_error("F_p requires an odd prime, got " +
                      prime.str());
  RingSpec r;
  r.kind = RingKind::prime_field;
  r.p = prime;
  return r;
}

std::string RingSpec::name() const {
  switch (kind) {
    case RingKind::integers:
      return "Z";
    case RingKind::rationals:
      return "Q";
    case RingKind::prime_field:
      return "F" + p.str();
  }
  return "?";
}

RingSpec RingSpec::parse(const std::string& s) {
  if (s == "Z") return Z();
  if (s == "Q") return Q();
  if (s.size() >= 2 && s[0] == 'F') {
    const std::string digits = s.substr(1);
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char c) { return c >= '0' && c <= '9'; }))
      return Fp(Int(digits));
  }
  throw parse_error("unknown ring '" + s + "' (expected Z, Q, or F<p>)");
}

Int FieldOps::mod_inverse(const Int& a) const {
  // extended Euclid; a is already reduced into [0, p)
  Int r0 = ring.p, r1 = a % ring.p, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += ring.p;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw math_error("element not invertible mod p");
  s0 %= ring.p;
  if (s0 < 0) s0 += ring.p;
  return s0;
}

std::string to_string(const Int& n) { return n.str(); }

std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

struct SnfState {
  IntMatrix D, U, V, Uinv, Vinv;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t r = 0; r < Uinv.rows(); ++r)
      std::swap(Uinv(r, i), Uinv(r, j));
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vinv.cols(); ++c)
      std::swap(Vinv(i, c), Vinv(j, c));
  }
  // row_i += k * row_j
  void row_add(std::size_t i, std::size_t j, const Int& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += k * D(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) += k * U(j, c);
    for (std::size_t r = 0; r < Uinv.rows(); ++r)
      Uinv(r, j) -= k * Uinv(r, i);
  }
  // col_j += k * col_i
  void col_add(std::size_t j, std::size_t i, const Int& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < D.rows(); ++r) D(r, j) += k * D(r, i);
    for (std::size_t r = 0; r < V.rows(); ++r) V(r, j) += k * V(r, i);
    for (std::size_t c = 0; c < Vinv.cols(); ++c)
      Vinv(i, c) -= k * Vinv(j, c);
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
    for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, i) = -Uinv(r, i);
  }
};

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SnfState s{M, IntMatrix::identity(m), IntMatrix::identity(n),
             IntMatrix::identity(m), IntMatrix::identity(n)};

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing submatrix
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s.D(i, j) != 0 &&
              (!found || abs_int(s.D(i, j)) < abs_int(s.D(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) goto done;
      s.row_swap(t, pi);
      s.col_swap(t, pj);

      // reduce column and row; restart pivot search if a remainder shrinks
      bool clean = true;
      for (std::size_t i = t + 1; i < m && clean; ++i) {
        if (s.D(i, t) == 0) continue;
        Int q = s.D(i, t) / s.D(t, t);
        s.row_add(i, t, -q);
        if (s.D(i, t) != 0) clean = false;
      }
      if (!clean) continue;
      for (std::size_t j = t + 1; j < n && clean; ++j) {
        if (s.D(t, j) == 0) continue;
        Int q = s.D(t, j) / s.D(t, t);
        s.col_add(j, t, -q);
        if (s.D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the whole remaining block for the divisor chain
      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n && divides_all; ++j)
          if (s.D(i, j) % s.D(t, t) != 0) {
            s.row_add(t, i, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (s.D(t, t) < 0) s.row_negate(t);
  }
done:
  return SmithNormalForm{s.D, s.U, s.V, s.Uinv, s.Vinv};
}

std::vector<Int> SmithNormalForm::divisors() const {
  std::vector<Int> out;
  const std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

Int det(IntMatrix A) {
  if (A.rows() != A.cols())
    throw parse_error("determinant requires a square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t piv = k;
      while (piv < n && A(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(A(k, c), A(piv, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix kernel_basis_int(const IntMatrix& M) {
  SmithNormalForm snf = smith_normal_form(M);
  const std::size_t n = M.cols(), r = snf.rank();
  IntMatrix K(n, n - r);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j - r) = snf.V(i, j);
  return K;
}

IntMatrix image_basis_int(const IntMatrix& M) {
  SmithNormalForm snf = smith_normal_form(M);
  const std::size_t r = snf.rank();
  IntMatrix B(M.rows(), r);
  // column i of M*V equals d_i * (Uinv column i)
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < M.rows(); ++i)
      B(i, j) = snf.D(j, j) * snf.Uinv(i, j);
  return B;
}

std::optional<IntVec> solve_int(const IntMatrix& M, const IntVec& b) {
  if (b.size() != M.rows()) throw parse_error("solve_int: size mismatch");
  SmithNormalForm snf = smith_normal_form(M);
  IntVec c = snf.U * b;
  const std::size_t n = M.cols();
  IntVec y(n, Int(0));
  const std::size_t k = std::min(M.rows(), n);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Int d = (i < k) ? snf.D(i, i) : Int(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    }
  }
  return snf.V * y;
}

// ---------------------------------------------------------------------------
// field elimination
// ---------------------------------------------------------------------------

Rref rref(RatMatrix A, const FieldOps& F) {
  const std::size_t m = A.rows(), n = A.cols();
  if (F.modular())
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = F.norm(A(i, j));
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && FieldOps::is_zero(A(piv, col))) ++piv;
    if (piv == m) continue;
    if (piv != row)
      for (std::size_t c = 0; c < n; ++c) std::swap(A(row, c), A(piv, c));
    const Rat invp = F.inv(A(row, col));
    for (std::size_t c = col; c < n; ++c) A(row, c) = F.mul(A(row, c), invp);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || FieldOps::is_zero(A(r, col))) continue;
      const Rat f = A(r, col);
      for (std::size_t c = col; c < n; ++c)
        A(r, c) = F.sub(A(r, c), F.mul(f, A(row, c)));
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.R = std::move(A);
  out.rank = out.pivot_cols.size();
  return out;
}

std::size_t rank_of(const RatMatrix& A, const FieldOps& F) {
  return rref(A, F).rank;
}

RatMatrix kernel_basis(const RatMatrix& A, const FieldOps& F) {
  Rref rr = rref(A, F);
  const std::size_t n = A.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMatrix K(n, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t fc = free_cols[j];
    K(fc, j) = F.from_int(1);
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
      K(rr.pivot_cols[r], j) = F.neg(rr.R(r, fc));
  }
  return K;
}

RatMatrix column_space_basis(const RatMatrix& A, const FieldOps& F) {
  Rref rr = rref(A, F);
  return A.select_cols(rr.pivot_cols);
}

std::optional<RatVec> solve(const RatMatrix& A, const RatVec& b,
                            const FieldOps& F) {
  if (b.size() != A.rows()) throw parse_error("solve: size mismatch");
  RatMatrix aug(A.rows(), A.cols() + 1);
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < A.cols(); ++c) aug(r, c) = A(r, c);
    aug(r, A.cols()) = b[r];
  }
  Rref rr = rref(std::move(aug), F);
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == A.cols())
    return std::nullopt;
  RatVec x(A.cols(), Rat(0));
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
    x[rr.pivot_cols[r]] = rr.R(r, A.cols());
  return x;
}

bool in_column_span(const RatMatrix& A, const RatVec& v, const FieldOps& F) {
  return solve(A, v, F).has_value();
}

bool same_column_span(const RatMatrix& A, const RatMatrix& B,
                      const FieldOps& F) {
  if (A.rows() != B.rows()) return false;
  const std::size_t ra = rank_of(A, F), rb = rank_of(B, F);
  if (ra != rb) return false;
  return rank_of(A.hcat(B), F) == ra;
}

std::vector<std::size_t> extend_basis(const RatMatrix& base,
                                      const RatMatrix& extra,
                                      const FieldOps& F) {
  std::vector<std::size_t> chosen;
  RatMatrix cur = base;
  std::size_t cur_rank = rank_of(cur, F);
  for (std::size_t j = 0; j < extra.cols(); ++j) {
    RatMatrix cand(cur.rows(), cur.cols() + 1);
    for (std::size_t r = 0; r < cur.rows(); ++r) {
      for (std::size_t c = 0; c < cur.cols(); ++c) cand(r, c) = cur(r, c);
      cand(r, cur.cols()) = extra(r, j);
    }
    if (rank_of(cand, F) > cur_rank) {
      chosen.push_back(j);
      cur = std::move(cand);
      ++cur_rank;
    }
  }
  return chosen;
}

RatMatrix mat_mul(const RatMatrix& A, const RatMatrix& B, const FieldOps& F) {
  RatMatrix m = A * B;
  if (F.modular())
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = F.norm(m(i, j));
  return m;
}

RatVec mat_apply(const RatMatrix& A, const RatVec& x, const FieldOps& F) {
  RatVec y = A * x;
  if (F.modular())
    for (Rat& v : y) v = F.norm(v);
  return y;
}

RatMatrix reduce_entries(const IntMatrix& M, const FieldOps& F) {
  RatMatrix r(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) r(i, j) = F.from_int(M(i, j));
  return r;
}

RatVec reduce_entries(const IntVec& v, const FieldOps& F) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = F.from_int(v[i]);
  return r;
}

// ---------------------------------------------------------------------------
// labeled wrappers with always-on verification
// ---------------------------------------------------------------------------

void LabeledMatrix::set(const std::string& row, const std::string& col,
                        const Int& v) {
  auto rit = std::find(row_labels.begin(), row_labels.end(), row);
  auto cit = std::find(col_labels.begin(), col_labels.end(), col);
  if (rit == row_labels.end() || cit == col_labels.end())
    throw parse_error("unknown label '" +
                      (rit == row_labels.end() ? row : col) + "'");
  const std::size_t r = rit - row_labels.begin();
  const std::size_t c = cit - col_labels.begin();
  if (v == 0)
    entries.erase({r, c});
  else
    entries[{r, c}] = v;
}

IntMatrix LabeledMatrix::dense() const {
  IntMatrix m(row_labels.size(), col_labels.size());
  for (const auto& [rc, v] : entries) m(rc.first, rc.second) = v;
  return m;
}

namespace {

void verify_snf(const IntMatrix& M, const SmithNormalForm& s) {
  if (!(s.U * M * s.V == s.D)) throw math_error("SNF check failed: UMV != D");
  Int du = det(s.U), dv = det(s.V);
  if (du != 1 && du != -1) throw math_error("SNF check failed: U not unimodular");
  if (dv != 1 && dv != -1) throw math_error("SNF check failed: V not unimodular");
  if (!(s.U * s.Uinv == IntMatrix::identity(s.U.rows())))
    throw math_error("SNF check failed: Uinv");
  if (!(s.V * s.Vinv == IntMatrix::identity(s.V.rows())))
    throw math_error("SNF check failed: Vinv");
  std::vector<Int> d = s.divisors();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] % d[i] != 0)
      throw math_error("SNF check failed: divisor chain");
  // zeros must trail
  const std::size_t k = std::min(s.D.rows(), s.D.cols());
  bool seen_zero = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.D(i, i) == 0) seen_zero = true;
    else if (seen_zero) throw math_error("SNF check failed: zero ordering");
  }
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0)
        throw math_error("SNF check failed: D not diagonal");
}

}  // namespace

SmithNormalForm smith_normal_form(const LabeledMatrix& M) {
  IntMatrix dense = M.dense();
  SmithNormalForm s = smith_normal_form(dense);
  verify_snf(dense, s);
  return s;
}

KernelImage kernel_and_image(const IntMatrix& M, const RingSpec& ring) {
  KernelImage out;
  out.ring = ring;
  if (ring.is_field()) {
    FieldOps F(ring);
    RatMatrix A = reduce_entries(M, F);
    out.kernel = kernel_basis(A, F);
    out.image = column_space_basis(A, F);
    // verify: A * kernel = 0
    if (!mat_mul(A, out.kernel, F).is_zero())
      throw math_error("kernel verification failed");
    if (rank_of(out.image, F) != out.image.cols())
      throw math_error("image basis verification failed");
  } else {
    IntMatrix K = kernel_basis_int(M);
    IntMatrix B = image_basis_int(M);
    if (!(M * K).is_zero()) throw math_error("kernel verification failed");
    for (std::size_t j = 0; j < B.cols(); ++j)
      if (!solve_int(M, B.col(j)))
        throw math_error("image basis verification failed");
    out.kernel = to_rat(K);
    out.image = to_rat(B);
  }
  return out;
}

KernelImage kernel_and_image(const LabeledMatrix& M, const RingSpec& ring) {
  return kernel_and_image(M.dense(), ring);
}

std::optional<RatVec> solve_linear(const IntMatrix& M, const IntVec& b,
                                   const RingSpec& ring) {
  if (ring.is_field()) {
    FieldOps F(ring);
    auto x = solve(reduce_entries(M, F), reduce_entries(b, F), F);
    if (x) {
      // verify by substitution
      RatVec got = mat_apply(reduce_entries(M, F), *x, F);
      RatVec want = reduce_entries(b, F);
      if (got != want) throw math_error("solve verification failed");
    }
    return x;
  }
  auto x = solve_int(M, b);
  if (!x) return std::nullopt;
  if (!(M * *x == b)) throw math_error("solve verification failed");
  return to_rat(*x);
}

}  // namespace floercalc
