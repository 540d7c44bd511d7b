#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floercalc/matrix.hpp"
#include "floercalc/numeric.hpp"

namespace floercalc {

// ---------------------------------------------------------------------------
// integer linear algebra
// ---------------------------------------------------------------------------

// U * M * V = D with U, V unimodular and D diagonal, entries non-negative,
// each dividing the next among the nonzero ones (zeros trail).
struct SmithNormalForm {
  IntMatrix D, U, V, Uinv, Vinv;

  std::vector<Int> divisors() const;  // nonzero diagonal entries, in order
  std::size_t rank() const { return divisors().size(); }
};

SmithNormalForm smith_normal_form(const IntMatrix& M);

Int det(IntMatrix M);  // Bareiss, exact

// columns form a basis of { x : Mx = 0 } as a subgroup of Z^n (saturated)
IntMatrix kernel_basis_int(const IntMatrix& M);
// columns form a basis of the image subgroup M(Z^n) of Z^m
IntMatrix image_basis_int(const IntMatrix& M);
// integral solution of Mx = b, or nullopt
std::optional<IntVec> solve_int(const IntMatrix& M, const IntVec& b);

// ---------------------------------------------------------------------------
// field linear algebra (Q or F_p); matrices carried as RatMatrix and every
// operation routed through FieldOps so the same code serves both fields
// ---------------------------------------------------------------------------

struct Rref {
  RatMatrix R;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

Rref rref(RatMatrix A, const FieldOps& F);
std::size_t rank_of(const RatMatrix& A, const FieldOps& F);
// columns span { x : Ax = 0 }
RatMatrix kernel_basis(const RatMatrix& A, const FieldOps& F);
// the pivot columns of A (a basis of the column space consisting of
// actual columns of A)
RatMatrix column_space_basis(const RatMatrix& A, const FieldOps& F);
// particular solution of Ax = b with free variables set to 0, or nullopt
std::optional<RatVec> solve(const RatMatrix& A, const RatVec& b,
                            const FieldOps& F);
bool in_column_span(const RatMatrix& A, const RatVec& v, const FieldOps& F);
bool same_column_span(const RatMatrix& A, const RatMatrix& B,
                      const FieldOps& F);
// indices into `extra` whose columns enlarge span(base), greedily
std::vector<std::size_t> extend_basis(const RatMatrix& base,
                                      const RatMatrix& extra,
                                      const FieldOps& F);
RatMatrix mat_mul(const RatMatrix& A, const RatMatrix& B, const FieldOps& F);
RatVec mat_apply(const RatMatrix& A, const RatVec& x, const FieldOps& F);
RatMatrix reduce_entries(const IntMatrix& M, const FieldOps& F);
RatVec reduce_entries(const IntVec& v, const FieldOps& F);

// ---------------------------------------------------------------------------
// labeled sparse integer matrix: rows and columns carry generator ids,
// missing entries are zero
// ---------------------------------------------------------------------------

struct LabeledMatrix {
  std::vector<std::string> row_labels, col_labels;
  std::map<std::pair<std::size_t, std::size_t>, Int> entries;

  LabeledMatrix() = default;
  LabeledMatrix(std::vector<std::string> rows, std::vector<std::string> cols)
      : row_labels(std::move(rows)), col_labels(std::move(cols)) {}

  void set(const std::string& row, const std::string& col, const Int& v);
  IntMatrix dense() const;
};

// Verified wrappers: every call checks its own output exactly
// (U*M*V = D with |det U| = |det V| = 1; M*kernel = 0; image columns are
// reachable) and throws math_error on any discrepancy.
SmithNormalForm smith_normal_form(const LabeledMatrix& M);

struct KernelImage {
  RingSpec ring;
  // over a field: column bases over that field; over Z: integral bases of
  // the kernel (saturated) and image subgroups
  RatMatrix kernel, image;
};

KernelImage kernel_and_image(const IntMatrix& M, const RingSpec& ring);
KernelImage kernel_and_image(const LabeledMatrix& M, const RingSpec& ring);

// Exact solution of Mx = b over the ring: integral solution demanded for Z.
std::optional<RatVec> solve_linear(const IntMatrix& M, const IntVec& b,
                                   const RingSpec& ring);

}  // namespace floercalc
