#include "tamebr/finab.hpp"

#include <algorithm>

namespace tamebr {

std::vector<i64> FinAb::reduce(std::vector<i64> v) const {
  if (v.size() != orders.size()) throw DimensionError("coordinate length mismatch");
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] %= orders[i];
    if (v[i] < 0) v[i] += orders[i];
  }
  return v;
}

Mat sublat_trivial(const FinAb& g) {
  Mat m(g.dim(), std::vector<i64>(g.dim(), 0));
  for (int i = 0; i < g.dim(); ++i) m[i][i] = g.orders[i];
  return m;
}

Mat sublat_full(const FinAb& g) { return mat_identity(g.dim()); }

Mat sublat_from_gens(const FinAb& g, const std::vector<std::vector<i64>>& gens) {
  Mat rows = sublat_trivial(g);
  for (const auto& v : gens) {
    if (static_cast<int>(v.size()) != g.dim()) {
      throw DimensionError("generator coordinate length mismatch");
    }
    rows.push_back(v);
  }
  Mat h = hnf_basis(rows);
  if (static_cast<int>(h.size()) != g.dim()) {
    throw StructureError("subgroup lattice lost full rank");
  }
  return h;
}

i64 sublat_index_in_group(const FinAb& g, const Mat& lat) {
  i64 det = 1;
  for (int i = 0; i < g.dim(); ++i) det = checked_mul(det, lat[i][i]);
  return det;
}

i64 sublat_order(const FinAb& g, const Mat& lat) {
  i64 idx = sublat_index_in_group(g, lat);
  i64 total = g.order();
  if (total % idx != 0) throw StructureError("subgroup index does not divide order");
  return total / idx;
}

bool sublat_contains(const Mat& lat, const std::vector<i64>& v) {
  return solve_in_echelon(lat, v).has_value();
}

bool sublat_contains_lat(const Mat& outer, const Mat& inner) {
  for (const auto& row : inner) {
    if (!sublat_contains(outer, row)) return false;
  }
  return true;
}

Mat sublat_join(const FinAb& g, const Mat& a, const Mat& b) {
  Mat rows = a;
  rows.insert(rows.end(), b.begin(), b.end());
  return sublat_from_gens(g, rows);
}

Mat sublat_meet(const FinAb& g, const Mat& a, const Mat& b) {
  int r = g.dim();
  if (r == 0) return {};
  Mat stacked(2 * r, std::vector<i64>(2 * r, 0));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      stacked[i][j] = a[i][j];
      stacked[i][r + j] = a[i][j];
      stacked[r + i][j] = b[i][j];
    }
  }
  HnfResult h = hnf_with_transform(stacked);
  Mat inter;
  for (const auto& row : h.hnf) {
    bool left_zero = true;
    for (int j = 0; j < r; ++j) left_zero &= (row[j] == 0);
    bool right_zero = true;
    for (int j = 0; j < r; ++j) right_zero &= (row[r + j] == 0);
    if (left_zero && !right_zero) inter.emplace_back(row.begin() + r, row.end());
  }
  if (static_cast<int>(inter.size()) != r) {
    throw StructureError("subgroup meet lost rank");
  }
  return hnf_basis(inter);
}

std::vector<i64> quotient_shape(const FinAb& g, const Mat& lat) {
  (void)g;
  std::vector<i64> out;
  for (i64 d : snf_diagonal(lat)) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

std::vector<i64> subgroup_shape(const FinAb& g, const Mat& lat) {
  // The subgroup is lat / diag(orders); express the relations in the basis
  // of lat and take the Smith form.
  Mat rel;
  for (const auto& row : sublat_trivial(g)) {
    auto c = solve_in_echelon(lat, row);
    if (!c) throw StructureError("relations escape the subgroup lattice");
    rel.push_back(*c);
  }
  std::vector<i64> out;
  for (i64 d : snf_diagonal(rel)) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

RelativeDecomposition relative_decomposition(const FinAb& g, const Mat& inner,
                                             const Mat& outer) {
  if (!sublat_contains_lat(outer, inner)) {
    throw ContainmentError("decomposition requires inner inside outer");
  }
  RelativeDecomposition out;
  Mat c;
  for (const auto& row : inner) {
    auto coeff = solve_in_echelon(outer, row);
    if (!coeff) throw StructureError("containment lost during decomposition");
    c.push_back(*coeff);
  }
  SnfResult s = snf(c);
  int r = g.dim();
  for (int i = 0; i < r; ++i) {
    i64 inv = s.s[i][i] < 0 ? -s.s[i][i] : s.s[i][i];
    if (inv <= 1) continue;
    std::vector<i64> gen(r, 0);
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) {
        gen[k] = checked_add(gen[k], checked_mul(s.v_inv[i][j], outer[j][k]));
      }
    }
    out.invariants.push_back(inv);
    out.generators.push_back(g.reduce(gen));
  }
  return out;
}

bool for_each_between(const FinAb& g, const Mat& inner, const Mat& outer,
                      i64 index, const std::function<bool(const Mat&)>& visit) {
  i64 total = sublat_index_in_group(g, inner) / sublat_index_in_group(g, outer);
  if (index <= 0) throw Error("index must be positive");
  if (total % index != 0) return true;
  if (index == 1) return visit(outer);
  RelativeDecomposition dec = relative_decomposition(g, inner, outer);
  int k = static_cast<int>(dec.invariants.size());
  return for_each_hnf_with_det(
      k, index,
      [&](const Mat& h) {
        // Row space must contain the relations diag(invariants).
        for (int i = 0; i < k; ++i) {
          std::vector<i64> e(k, 0);
          e[i] = dec.invariants[i];
          if (!solve_in_echelon(h, e)) return true;
        }
        std::vector<std::vector<i64>> gens = inner;
        for (int i = 0; i < k; ++i) {
          std::vector<i64> v(g.dim(), 0);
          for (int j = 0; j < k; ++j) {
            for (int c = 0; c < g.dim(); ++c) {
              v[c] = checked_add(v[c], checked_mul(h[i][j], dec.generators[j][c]));
            }
          }
          gens.push_back(g.reduce(v));
        }
        return visit(sublat_from_gens(g, gens));
      },
      &dec.invariants);
}

std::vector<i64> sublat_coset_rep(const FinAb& g, const Mat& lat,
                                  std::vector<i64> v) {
  v = g.reduce(std::move(v));
  // lat is a full-rank upper-triangular Hermite basis; reducing by rows in
  // ascending pivot order leaves the unique representative with entry i in
  // [0, lat[i][i]).
  for (int i = 0; i < g.dim(); ++i) {
    i64 pivot = lat[i][i];
    i64 q = v[i] / pivot;
    if (v[i] % pivot < 0) --q;
    if (q == 0) continue;
    for (int j = i; j < g.dim(); ++j) {
      v[j] = checked_sub(v[j], checked_mul(q, lat[i][j]));
    }
  }
  return v;
}

Mat hom_kernel(const FinAb& dom, const FinAb& cod,
               const std::vector<std::vector<i64>>& images) {
  int gd = dom.dim();
  int gc = cod.dim();
  if (static_cast<int>(images.size()) != gd) {
    throw DimensionError("one image per domain generator required");
  }
  // Kernel of v -> v * M in ⊕ Z/cod.orders: rows (v | w) of the integer
  // kernel of [[M], [diag(cod.orders)]] projected to the first block.
  Mat stacked;
  for (const auto& img : images) {
    if (static_cast<int>(img.size()) != gc) {
      throw DimensionError("image coordinate length mismatch");
    }
    stacked.push_back(img);
  }
  for (const auto& row : sublat_trivial(cod)) stacked.push_back(row);
  Mat ker = left_kernel(stacked);
  std::vector<std::vector<i64>> gens;
  for (const auto& row : ker) {
    gens.emplace_back(row.begin(), row.begin() + gd);
  }
  return sublat_from_gens(dom, gens);
}

i64 element_order(const FinAb& g, const std::vector<i64>& v) {
  return element_order_mod(g, sublat_trivial(g), v);
}

i64 element_order_mod(const FinAb& g, const Mat& lat, const std::vector<i64>& v) {
  std::vector<i64> r = g.reduce(v);
  for (i64 k : divisors(g.order())) {
    std::vector<i64> kv(r.size());
    for (size_t i = 0; i < r.size(); ++i) kv[i] = checked_mul(k, r[i]);
    if (sublat_contains(lat, g.reduce(kv))) return k;
  }
  throw StructureError("element order exceeds group order");
}

}  // namespace tamebr
