#include "tamebr/qlattice.hpp"

#include <algorithm>
#include <sstream>

namespace tamebr {

namespace {

// Common denominator of a family of rational rows.
i64 common_denominator(const std::vector<std::vector<Rat>>& rows) {
  i64 l = 1;
  for (const auto& row : rows) {
    for (const Rat& x : row) l = lcm_i64(l, x.den());
  }
  return l;
}

Mat scale_to_int(const std::vector<std::vector<Rat>>& rows, i64 l) {
  Mat m(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    m[i].reserve(rows[i].size());
    for (const Rat& x : rows[i]) {
      m[i].push_back(checked_mul(x.num(), l / x.den()));
    }
  }
  return m;
}

std::vector<std::vector<Rat>> unscale(const Mat& m, i64 l) {
  std::vector<std::vector<Rat>> rows(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    rows[i].reserve(m[i].size());
    for (i64 x : m[i]) rows[i].emplace_back(x, l);
  }
  return rows;
}

}  // namespace

GradeGroup GradeGroup::from_generators(int rank,
                                       const std::vector<std::vector<Rat>>& gens) {
  if (rank < 0) throw DimensionError("negative rank");
  if (rank > 16) throw DimensionError("ambient rank beyond supported range");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != rank) {
      throw DimensionError("generator length differs from ambient rank");
    }
  }
  GradeGroup out;
  out.rank_ = rank;
  if (rank == 0) return out;
  i64 l = common_denominator(gens);
  Mat h = hnf_basis(scale_to_int(gens, l));
  if (static_cast<int>(h.size()) != rank) {
    throw DimensionError("generators do not span a full-rank group");
  }
  out.basis_ = unscale(h, l);
  return out;
}

GradeGroup GradeGroup::standard(int rank) {
  std::vector<std::vector<Rat>> gens(rank, std::vector<Rat>(rank, Rat(0)));
  for (int i = 0; i < rank; ++i) gens[i][i] = Rat(1);
  return from_generators(rank, gens);
}

std::optional<std::vector<i64>> GradeGroup::coordinates(
    const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != rank_) {
    throw DimensionError("vector length differs from ambient rank");
  }
  if (rank_ == 0) return std::vector<i64>{};
  std::vector<std::vector<Rat>> all = basis_;
  all.push_back(v);
  i64 l = common_denominator(all);
  Mat b = scale_to_int(basis_, l);
  std::vector<i64> t = scale_to_int({v}, l)[0];
  return solve_in_echelon(b, t);
}

bool GradeGroup::contains(const std::vector<Rat>& v) const {
  return coordinates(v).has_value();
}

bool GradeGroup::contains_group(const GradeGroup& other) const {
  if (other.rank_ != rank_) throw DimensionError("rank mismatch");
  for (const auto& row : other.basis_) {
    if (!contains(row)) return false;
  }
  return true;
}

Rat GradeGroup::covolume() const {
  Rat d(1);
  for (int i = 0; i < rank_; ++i) d *= basis_[i][i];
  return d;
}

bool GradeGroup::canonical_less(const GradeGroup& a, const GradeGroup& b) {
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
  for (int i = 0; i < a.rank_; ++i) {
    for (int j = 0; j < a.rank_; ++j) {
      if (a.basis_[i][j] != b.basis_[i][j]) return a.basis_[i][j] < b.basis_[i][j];
    }
  }
  return false;
}

std::string GradeGroup::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rank_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < rank_; ++j) {
      if (j) os << " ";
      os << basis_[i][j].str();
    }
  }
  os << "]";
  return os.str();
}

GradeGroup lattice_sum(const GradeGroup& a, const GradeGroup& b) {
  if (a.rank() != b.rank()) throw DimensionError("rank mismatch in sum");
  std::vector<std::vector<Rat>> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return GradeGroup::from_generators(a.rank(), gens);
}

GradeGroup lattice_intersect(const GradeGroup& a, const GradeGroup& b) {
  int r = a.rank();
  if (b.rank() != r) throw DimensionError("rank mismatch in intersection");
  if (r == 0) return a;
  // Stack [[A, A], [B, 0]] over a common denominator; kernel rows of the
  // first block with zero left half give x·A = -y·B, i.e. the intersection.
  std::vector<std::vector<Rat>> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  i64 l = common_denominator(all);
  Mat ai = scale_to_int(a.basis(), l);
  Mat bi = scale_to_int(b.basis(), l);
  Mat stacked(2 * r, std::vector<i64>(2 * r, 0));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      stacked[i][j] = ai[i][j];
      stacked[i][r + j] = ai[i][j];
      stacked[r + i][j] = bi[i][j];
    }
  }
  HnfResult h = hnf_with_transform(stacked);
  Mat inter;
  for (const auto& row : h.hnf) {
    bool left_zero = true;
    for (int j = 0; j < r; ++j) left_zero &= (row[j] == 0);
    bool right_zero = true;
    for (int j = 0; j < r; ++j) right_zero &= (row[r + j] == 0);
    if (left_zero && !right_zero) {
      inter.emplace_back(row.begin() + r, row.end());
    }
  }
  if (static_cast<int>(inter.size()) != r) {
    throw StructureError("intersection lost rank");
  }
  return GradeGroup::from_generators(r, unscale(inter, l));
}

i64 lattice_index(const GradeGroup& sub, const GradeGroup& sup) {
  if (!sup.contains_group(sub)) {
    throw ContainmentError("index requires the first group inside the second");
  }
  Rat ratio = sub.covolume() / sup.covolume();
  if (!ratio.is_integer()) throw StructureError("covolume ratio not integral");
  return ratio.num();
}

namespace {

// Integer coordinate matrix of sub's basis in sup's basis.
Mat coordinates_matrix(const GradeGroup& sub, const GradeGroup& sup) {
  Mat c;
  for (const auto& row : sub.basis()) {
    auto coords = sup.coordinates(row);
    if (!coords) {
      throw ContainmentError("quotient requires the first group inside the second");
    }
    c.push_back(*coords);
  }
  return c;
}

}  // namespace

QuotientShape quotient_invariants(const GradeGroup& sub, const GradeGroup& sup) {
  QuotientShape shape;
  if (sub.rank() == 0) return shape;
  std::vector<i64> d = snf_diagonal(coordinates_matrix(sub, sup));
  for (i64 x : d) {
    if (x == 0) throw StructureError("quotient of full-rank groups must be finite");
    if (x > 1) shape.invariant_factors.push_back(x);
  }
  return shape;
}

QuotientDecomposition quotient_decomposition(const GradeGroup& sub,
                                             const GradeGroup& sup) {
  QuotientDecomposition out;
  if (sub.rank() == 0) return out;
  Mat c = coordinates_matrix(sub, sup);
  SnfResult s = snf(c);
  // Rows of v_inv * B_sup represent sup in a basis where sub is diagonal
  // with entries s[i][i]; the i-th such row generates a cyclic factor of
  // order s[i][i] in the quotient.
  int r = sup.rank();
  for (int i = 0; i < r; ++i) {
    i64 inv = s.s[i][i] < 0 ? -s.s[i][i] : s.s[i][i];
    if (inv <= 1) continue;
    std::vector<Rat> gen(r, Rat(0));
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) {
        gen[k] += Rat(s.v_inv[i][j]) * sup.basis()[j][k];
      }
    }
    out.invariants.push_back(inv);
    out.generators.push_back(gen);
  }
  return out;
}

std::vector<GradeGroup> intermediate_groups(const GradeGroup& sub,
                                            const GradeGroup& sup, i64 index) {
  if (index <= 0) throw Error("intermediate group index must be positive");
  i64 total = lattice_index(sub, sup);
  std::vector<GradeGroup> out;
  if (total % index != 0) return out;
  if (index == 1) {
    out.push_back(sub);
    return out;
  }
  QuotientDecomposition q = quotient_decomposition(sub, sup);
  int g = static_cast<int>(q.invariants.size());
  // Subgroups of ⊕ Z/q.invariants of order `index` correspond to integer
  // lattices L with diag(invariants) ⊆ L ⊆ Z^g of index (total / index);
  // enumerate them as Hermite matrices with that determinant whose row space
  // contains the diagonal relations.
  i64 codet = total / index;
  for_each_hnf_with_det(
      g, codet,
      [&](const Mat& h) {
        for (int i = 0; i < g; ++i) {
          std::vector<i64> e(g, 0);
          e[i] = q.invariants[i];
          if (!solve_in_echelon(h, e)) return true;  // skip, keep enumerating
        }
        std::vector<std::vector<Rat>> gens = sub.basis();
        for (int i = 0; i < g; ++i) {
          std::vector<Rat> v(sub.rank(), Rat(0));
          for (int j = 0; j < g; ++j) {
            for (int k = 0; k < sub.rank(); ++k) {
              v[k] += Rat(h[i][j]) * q.generators[j][k];
            }
          }
          gens.push_back(v);
        }
        out.push_back(GradeGroup::from_generators(sub.rank(), gens));
        return true;
      },
      &q.invariants);
  std::sort(out.begin(), out.end(), GradeGroup::canonical_less);
  return out;
}

GradeGroup scale_group(const GradeGroup& g, const Rat& c) {
  if (c.is_zero()) throw Error("scaling a group by zero");
  std::vector<std::vector<Rat>> gens = g.basis();
  for (auto& row : gens) {
    for (auto& x : row) x *= c;
  }
  return GradeGroup::from_generators(g.rank(), gens);
}

}  // namespace tamebr
