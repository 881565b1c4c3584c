#include "tamebr/intmat.hpp"

#include <algorithm>

namespace tamebr {

Mat mat_identity(int n) {
  Mat m(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  size_t inner = a[0].size();
  if (inner != b.size()) throw DimensionError("matrix product shape mismatch");
  Mat c(a.size(), std::vector<i64>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j) {
        c[i][j] = checked_add(c[i][j], checked_mul(a[i][k], b[k][j]));
      }
    }
  }
  return c;
}

std::vector<i64> row_mat_mul(const std::vector<i64>& v, const Mat& m) {
  if (m.empty()) return {};
  if (v.size() != m.size()) throw DimensionError("row-vector product shape mismatch");
  std::vector<i64> out(m[0].size(), 0);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < m[0].size(); ++j) {
      out[j] = checked_add(out[j], checked_mul(v[i], m[i][j]));
    }
  }
  return out;
}

namespace {

void row_swap(Mat& h, Mat& u, size_t r1, size_t r2) {
  std::swap(h[r1], h[r2]);
  std::swap(u[r1], u[r2]);
}

void row_negate(Mat& h, Mat& u, size_t r) {
  for (auto& x : h[r]) x = checked_neg(x);
  for (auto& x : u[r]) x = checked_neg(x);
}

// row[r1] -= q * row[r2]
void row_submul(Mat& h, Mat& u, size_t r1, size_t r2, i64 q) {
  if (q == 0) return;
  for (size_t j = 0; j < h[r1].size(); ++j) {
    h[r1][j] = checked_sub(h[r1][j], checked_mul(q, h[r2][j]));
  }
  for (size_t j = 0; j < u[r1].size(); ++j) {
    u[r1][j] = checked_sub(u[r1][j], checked_mul(q, u[r2][j]));
  }
}

}  // namespace

HnfResult hnf_with_transform(const Mat& a) {
  HnfResult res;
  res.hnf = a;
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& r : a) {
    if (r.size() != cols) throw DimensionError("ragged matrix");
  }
  res.transform = mat_identity(static_cast<int>(rows));
  Mat& h = res.hnf;
  Mat& u = res.transform;

  size_t pivot_row = 0;
  for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Gaussian-style gcd elimination within this column, below pivot_row.
    while (true) {
      size_t best = rows;
      for (size_t r = pivot_row; r < rows; ++r) {
        if (h[r][col] != 0 &&
            (best == rows ||
             std::abs(h[r][col]) < std::abs(h[best][col]))) {
          best = r;
        }
      }
      if (best == rows) break;  // column is zero below pivot_row
      row_swap(h, u, pivot_row, best);
      if (h[pivot_row][col] < 0) row_negate(h, u, pivot_row);
      bool cleared = true;
      for (size_t r = pivot_row + 1; r < rows; ++r) {
        if (h[r][col] == 0) continue;
        i64 q = h[r][col] / h[pivot_row][col];
        row_submul(h, u, r, pivot_row, q);
        if (h[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h[pivot_row][col] != 0) {
      // Reduce the entries above the pivot into [0, pivot).
      for (size_t r = 0; r < pivot_row; ++r) {
        i64 q = h[r][col] / h[pivot_row][col];
        if (h[r][col] - checked_mul(q, h[pivot_row][col]) < 0) q -= 1;
        row_submul(h, u, r, pivot_row, q);
      }
      ++pivot_row;
    }
  }
  res.rank = static_cast<int>(pivot_row);
  return res;
}

Mat hnf_basis(const Mat& a) {
  HnfResult r = hnf_with_transform(a);
  Mat out(r.hnf.begin(), r.hnf.begin() + r.rank);
  return out;
}

namespace {

void col_swap(Mat& s, Mat& v, Mat& v_inv, size_t c1, size_t c2) {
  for (auto& row : s) std::swap(row[c1], row[c2]);
  for (auto& row : v) std::swap(row[c1], row[c2]);
  std::swap(v_inv[c1], v_inv[c2]);  // inverse op acts on rows of v_inv
}

// col[c1] -= q * col[c2]; v_inv tracks the inverse: row[c2] += q * row[c1].
void col_submul(Mat& s, Mat& v, Mat& v_inv, size_t c1, size_t c2, i64 q) {
  if (q == 0) return;
  for (auto& row : s) row[c1] = checked_sub(row[c1], checked_mul(q, row[c2]));
  for (auto& row : v) row[c1] = checked_sub(row[c1], checked_mul(q, row[c2]));
  for (size_t j = 0; j < v_inv[c2].size(); ++j) {
    v_inv[c2][j] = checked_add(v_inv[c2][j], checked_mul(q, v_inv[c1][j]));
  }
}

}  // namespace

SnfResult snf(const Mat& a) {
  SnfResult res;
  res.s = a;
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  res.u = mat_identity(static_cast<int>(rows));
  res.v = mat_identity(static_cast<int>(cols));
  res.v_inv = mat_identity(static_cast<int>(cols));
  Mat& s = res.s;
  Mat& u = res.u;

  size_t t = 0;
  while (t < rows && t < cols) {
    // Find a nonzero pivot in the remaining block.
    size_t pr = rows, pc = cols;
    for (size_t i = t; i < rows; ++i) {
      for (size_t j = t; j < cols; ++j) {
        if (s[i][j] != 0 &&
            (pr == rows || std::abs(s[i][j]) < std::abs(s[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;  // remaining block is zero
    row_swap(s, u, t, pr);
    col_swap(s, res.v, res.v_inv, t, pc);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      if (s[t][t] < 0) row_negate(s, u, t);
      for (size_t i = t + 1; i < rows; ++i) {
        if (s[i][t] == 0) continue;
        i64 q = s[i][t] / s[t][t];
        row_submul(s, u, i, t, q);
        if (s[i][t] != 0) {
          row_swap(s, u, t, i);
          dirty = true;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (s[t][j] == 0) continue;
        i64 q = s[t][j] / s[t][t];
        col_submul(s, res.v, res.v_inv, j, t, q);
        if (s[t][j] != 0) {
          col_swap(s, res.v, res.v_inv, t, j);
          dirty = true;
        }
      }
    }

    // Enforce the divisibility chain: s[t][t] must divide every later entry.
    bool fixed = true;
    for (size_t i = t + 1; i < rows && fixed; ++i) {
      for (size_t j = t + 1; j < cols && fixed; ++j) {
        if (s[i][j] % s[t][t] != 0) {
          // Add row i to row t and restart elimination at this step.
          for (size_t k = 0; k < cols; ++k) {
            s[t][k] = checked_add(s[t][k], s[i][k]);
          }
          for (size_t k = 0; k < rows; ++k) {
            u[t][k] = checked_add(u[t][k], u[i][k]);
          }
          fixed = false;
        }
      }
    }
    if (fixed) ++t;
  }
  return res;
}

std::vector<i64> snf_diagonal(const Mat& a) {
  SnfResult r = snf(a);
  size_t n = std::min(a.size(), a.empty() ? size_t{0} : a[0].size());
  std::vector<i64> d(n, 0);
  for (size_t i = 0; i < n; ++i) d[i] = r.s[i][i] < 0 ? -r.s[i][i] : r.s[i][i];
  return d;
}

std::optional<std::vector<i64>> solve_in_echelon(const Mat& basis,
                                                 const std::vector<i64>& target) {
  std::vector<i64> residual = target;
  std::vector<i64> coeff(basis.size(), 0);
  for (size_t i = 0; i < basis.size(); ++i) {
    // Pivot column of this row.
    size_t p = 0;
    while (p < basis[i].size() && basis[i][p] == 0) ++p;
    if (p == basis[i].size()) throw DimensionError("zero row in echelon basis");
    if (residual.size() != basis[i].size()) {
      throw DimensionError("solve target length mismatch");
    }
    if (residual[p] % basis[i][p] != 0) return std::nullopt;
    i64 c = residual[p] / basis[i][p];
    coeff[i] = c;
    if (c != 0) {
      for (size_t j = 0; j < residual.size(); ++j) {
        residual[j] = checked_sub(residual[j], checked_mul(c, basis[i][j]));
      }
    }
  }
  for (i64 x : residual) {
    if (x != 0) return std::nullopt;
  }
  return coeff;
}

Mat left_kernel(const Mat& a) {
  HnfResult r = hnf_with_transform(a);
  Mat out;
  for (size_t i = r.rank; i < r.transform.size(); ++i) {
    out.push_back(r.transform[i]);
  }
  return hnf_basis(out.empty() ? Mat{} : out);
}

std::vector<i64> divisors(i64 n) {
  if (n <= 0) throw Error("divisors of nonpositive integer");
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

namespace {

bool emit_hnf_fillings(Mat& h, int dim, const std::vector<int>& free_rows_of_col,
                       const std::function<bool(const Mat&)>& visit) {
  // Odometer over all above-diagonal entries; column j entries range in
  // [0, h[j][j]).
  std::vector<std::pair<int, int>> slots;
  for (int j = 0; j < dim; ++j) {
    if (h[j][j] == 1) continue;  // only residue 0 possible
    for (int i = 0; i < j; ++i) slots.emplace_back(i, j);
  }
  std::vector<i64> counter(slots.size(), 0);
  while (true) {
    for (size_t k = 0; k < slots.size(); ++k) {
      h[slots[k].first][slots[k].second] = counter[k];
    }
    if (!visit(h)) return false;
    size_t k = 0;
    for (; k < slots.size(); ++k) {
      counter[k] += 1;
      if (counter[k] < h[slots[k].second][slots[k].second]) break;
      counter[k] = 0;
    }
    if (k == slots.size()) return true;
  }
  (void)free_rows_of_col;
}

bool recurse_diag(int dim, int pos, i64 remaining, std::vector<i64>& diag,
                  const std::vector<i64>* diag_divides,
                  const std::function<bool(const Mat&)>& visit) {
  if (pos == dim) {
    if (remaining != 1) return true;
    Mat h(dim, std::vector<i64>(dim, 0));
    for (int i = 0; i < dim; ++i) h[i][i] = diag[i];
    return emit_hnf_fillings(h, dim, {}, visit);
  }
  for (i64 d : divisors(remaining)) {
    if (diag_divides != nullptr && (*diag_divides)[pos] % d != 0) continue;
    diag[pos] = d;
    if (!recurse_diag(dim, pos + 1, remaining / d, diag, diag_divides, visit)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool for_each_hnf_with_det(int dim, i64 det,
                           const std::function<bool(const Mat&)>& visit,
                           const std::vector<i64>* diag_divides) {
  if (det <= 0) throw Error("determinant for enumeration must be positive");
  if (diag_divides != nullptr && static_cast<int>(diag_divides->size()) != dim) {
    throw DimensionError("diagonal constraint length mismatch");
  }
  if (dim == 0) {
    if (det != 1) return true;
    Mat empty;
    return visit(empty);
  }
  std::vector<i64> diag(dim, 1);
  return recurse_diag(dim, 0, det, diag, diag_divides, visit);
}

}  // namespace tamebr
