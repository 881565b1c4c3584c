#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tamebr/rational.hpp"

namespace tamebr {

// Dense row-major integer matrix. All normal forms below use row conventions:
// the row space is the object of interest and transforms act on the left.
using Mat = std::vector<std::vector<i64>>;

Mat mat_identity(int n);
Mat mat_mul(const Mat& a, const Mat& b);
std::vector<i64> row_mat_mul(const std::vector<i64>& v, const Mat& m);

// Row Hermite normal form, canonical flavor: nonzero rows first, each pivot
// positive, entries above a pivot reduced into [0, pivot). Zero rows are kept
// at the bottom so `transform * input == hnf` holds with square transform.
struct HnfResult {
  Mat hnf;        // same shape as input
  Mat transform;  // unimodular, rows x rows
  int rank = 0;
};

HnfResult hnf_with_transform(const Mat& a);

// Canonical basis of the row space: the nonzero rows of the HNF.
Mat hnf_basis(const Mat& a);

// Smith normal form with transforms: u * a * v == s, with u, v unimodular.
// v_inv is maintained alongside so coordinates can be pulled back exactly.
struct SnfResult {
  Mat s;
  Mat u;
  Mat v;
  Mat v_inv;
};

SnfResult snf(const Mat& a);

// Diagonal of the Smith form (nonnegative), length min(rows, cols).
std::vector<i64> snf_diagonal(const Mat& a);

// Expresses target as an integer combination of the rows of an echelon basis
// (rows ordered by strictly increasing pivot column, as produced by
// hnf_basis). Returns the coefficient vector, or nullopt if target is not in
// the integer row span.
std::optional<std::vector<i64>> solve_in_echelon(const Mat& basis,
                                                 const std::vector<i64>& target);

// Basis for the left integer kernel {x : x * a == 0}.
Mat left_kernel(const Mat& a);

// All positive divisors of n > 0, ascending.
std::vector<i64> divisors(i64 n);

// Enumerates every dim x dim matrix in canonical row Hermite form with
// determinant det (diagonal positive, entries above the diagonal of column j
// in [0, H[j][j])). If diag_divides is given, only diagonals with
// H[j][j] | diag_divides[j] are visited — callers use this to prune subgroup
// enumeration inside a finite abelian group of known invariants. The callback
// returns false to stop early; the function returns false if stopped.
bool for_each_hnf_with_det(int dim, i64 det,
                           const std::function<bool(const Mat&)>& visit,
                           const std::vector<i64>* diag_divides = nullptr);

}  // namespace tamebr
