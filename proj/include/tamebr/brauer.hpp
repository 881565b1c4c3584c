#pragma once

#include <string>
#include <vector>

#include "tamebr/abelian_ext.hpp"

namespace tamebr {

// A place of an abelian extension of Q: the rational place it lies over and
// the position of its coset in the canonical listing (cosets of the
// decomposition subgroup, keyed by their smallest unit, ascending).
struct Place {
  QPlace under;
  i64 index = 0;

  friend bool operator<(const Place& a, const Place& b) {
    if (!(a.under == b.under)) return a.under < b.under;
    return a.index < b.index;
  }
  friend bool operator==(const Place& a, const Place& b) {
    return a.under == b.under && a.index == b.index;
  }
  std::string str() const {
    return "(" + under.str() + "," + std::to_string(index) + ")";
  }
};

// Number of places of z over the rational place.
i64 place_count(const AbelianExtQ& z, const QPlace& v);

// Smallest unit in each decomposition coset, ascending; position = index.
std::vector<i64> place_unit_reps(const AbelianExtQ& z, const QPlace& v);

// An element of the Brauer group of an abelian extension of Q with all local
// invariants rational: the base field plus the nonzero local invariants,
// each in (0,1), summing to 0 mod 1.
class BrauerClass {
 public:
  // Validates: places in range, values normalized into (0,1), reciprocity
  // (sum 0 mod 1), archimedean entries only 1/2 and only over real fields.
  static BrauerClass make(AbelianExtQ base,
                          std::vector<std::pair<Place, Rat>> inv);
  static BrauerClass trivial(AbelianExtQ base);

  const AbelianExtQ& base() const { return base_; }
  const std::vector<std::pair<Place, Rat>>& invariants() const { return inv_; }

  // Least common multiple of the local index over all places.
  i64 index() const;
  i64 local_index(const Place& w) const;
  Rat local_invariant(const Place& w) const;

  friend bool operator==(const BrauerClass& a, const BrauerClass& b) {
    return a.base_ == b.base_ && a.inv_ == b.inv_;
  }
  std::string str() const;

 private:
  AbelianExtQ base_;
  std::vector<std::pair<Place, Rat>> inv_;
};

// Restriction of a class over Q to the extension z.
BrauerClass restrict_to(const BrauerClass& alpha, const AbelianExtQ& z);

// Restriction of a class to an extension of its base field.
BrauerClass restrict_over(const BrauerClass& beta, const AbelianExtQ& l);

// Sum of two classes over the same base.
BrauerClass add(const BrauerClass& a, const BrauerClass& b);

// True when every local invariant dies in l: the local index divides the
// relative local degree everywhere. Requires base ⊆ l.
bool is_split_by(const BrauerClass& beta, const AbelianExtQ& l);

// A demanded local index at (every place of z over) the underlying
// rational place of the given place.
struct PrescribeTarget {
  Place place;
  i64 index = 1;
};

// Builds a class over Q whose restriction to z has index exactly m, local
// index `index` at every place over each target, and support disjoint from
// `avoid`. Auxiliary support is chosen at the smallest admissible primes up
// to prime_scan_bound. The result is re-verified before being returned.
BrauerClass prescribe_class(const AbelianExtQ& z, i64 m,
                            const std::vector<PrescribeTarget>& targets,
                            const std::vector<QPlace>& avoid,
                            i64 prime_scan_bound);

}  // namespace tamebr
