#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamebr/intmat.hpp"
#include "tamebr/rational.hpp"

namespace tamebr {

// Finitely generated full-rank subgroup of Q^r, stored by its canonical
// basis: the unique upper-triangular basis with positive diagonal entries and
// the entries above each pivot reduced modulo it. Two groups are equal iff
// their canonical bases are identical.
class GradeGroup {
 public:
  GradeGroup() = default;

  // gens are rows spanning the group; must have full rank r.
  static GradeGroup from_generators(int rank,
                                    const std::vector<std::vector<Rat>>& gens);
  // Z^r.
  static GradeGroup standard(int rank);

  int rank() const { return rank_; }
  const std::vector<std::vector<Rat>>& basis() const { return basis_; }

  bool contains(const std::vector<Rat>& v) const;
  bool contains_group(const GradeGroup& other) const;

  // Coefficients of v in the canonical basis, or nullopt if v is outside.
  std::optional<std::vector<i64>> coordinates(const std::vector<Rat>& v) const;

  // Product of the diagonal of the canonical basis (the covolume).
  Rat covolume() const;

  friend bool operator==(const GradeGroup& a, const GradeGroup& b) {
    return a.rank_ == b.rank_ && a.basis_ == b.basis_;
  }

  // Lexicographic comparison of the flattened canonical basis; used for
  // deterministic ordering of enumerated groups.
  static bool canonical_less(const GradeGroup& a, const GradeGroup& b);

  std::string str() const;

 private:
  int rank_ = 0;
  std::vector<std::vector<Rat>> basis_;
};

GradeGroup lattice_sum(const GradeGroup& a, const GradeGroup& b);
GradeGroup lattice_intersect(const GradeGroup& a, const GradeGroup& b);

// [sup : sub]; requires sub ⊆ sup.
i64 lattice_index(const GradeGroup& sub, const GradeGroup& sup);

// Invariant factors (ascending divisibility, each > 1) of sup/sub.
struct QuotientShape {
  std::vector<i64> invariant_factors;
  i64 order() const {
    i64 o = 1;
    for (i64 f : invariant_factors) o = checked_mul(o, f);
    return o;
  }
  bool is_cyclic() const { return invariant_factors.size() <= 1; }
};

QuotientShape quotient_invariants(const GradeGroup& sub, const GradeGroup& sup);

// Invariant factors together with elements of sup whose classes generate the
// corresponding cyclic factors of sup/sub. Factors equal to 1 are dropped.
struct QuotientDecomposition {
  std::vector<i64> invariants;
  std::vector<std::vector<Rat>> generators;
};

QuotientDecomposition quotient_decomposition(const GradeGroup& sub,
                                             const GradeGroup& sup);

// All X with sub ⊆ X ⊆ sup and [X : sub] = index, sorted canonically.
std::vector<GradeGroup> intermediate_groups(const GradeGroup& sub,
                                            const GradeGroup& sup, i64 index);

GradeGroup scale_group(const GradeGroup& g, const Rat& c);

}  // namespace tamebr
