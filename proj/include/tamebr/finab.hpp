#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tamebr/intmat.hpp"

namespace tamebr {

// Computations inside a finite abelian group presented as ⊕ Z/orders[i].
// Subgroups are represented by integer lattices L ⊆ Z^g with
// diag(orders) ⊆ L, stored as canonical Hermite bases (g rows). The trivial
// subgroup is diag(orders) itself and the full group is Z^g.
struct FinAb {
  std::vector<i64> orders;  // each >= 1

  int dim() const { return static_cast<int>(orders.size()); }
  i64 order() const {
    i64 o = 1;
    for (i64 x : orders) o = checked_mul(o, x);
    return o;
  }
  std::vector<i64> reduce(std::vector<i64> v) const;
};

// Canonical Hermite basis of the lattice generated by the given coordinate
// rows together with the relations diag(orders).
Mat sublat_from_gens(const FinAb& g, const std::vector<std::vector<i64>>& gens);

Mat sublat_trivial(const FinAb& g);
Mat sublat_full(const FinAb& g);

// Order of the subgroup represented by lat: |G| / [Z^g : lat].
i64 sublat_order(const FinAb& g, const Mat& lat);

// Index [G : subgroup], i.e. [Z^g : lat].
i64 sublat_index_in_group(const FinAb& g, const Mat& lat);

bool sublat_contains(const Mat& lat, const std::vector<i64>& v);
bool sublat_contains_lat(const Mat& outer, const Mat& inner);

Mat sublat_join(const FinAb& g, const Mat& a, const Mat& b);
Mat sublat_meet(const FinAb& g, const Mat& a, const Mat& b);

// Invariant factors (> 1, ascending divisibility) of G / subgroup.
std::vector<i64> quotient_shape(const FinAb& g, const Mat& lat);

// Invariant factors of the subgroup itself (as an abstract group).
std::vector<i64> subgroup_shape(const FinAb& g, const Mat& lat);

// Invariant factors s_i (> 1) of outer/inner together with coordinate rows
// of elements of outer generating the cyclic factors.
struct RelativeDecomposition {
  std::vector<i64> invariants;
  std::vector<std::vector<i64>> generators;
};
RelativeDecomposition relative_decomposition(const FinAb& g, const Mat& inner,
                                             const Mat& outer);

// Enumerates subgroups X with inner ⊆ X ⊆ outer and [outer : X] = index, in a
// deterministic order. The callback returns false to stop; the function
// returns false if stopped early.
bool for_each_between(const FinAb& g, const Mat& inner, const Mat& outer,
                      i64 index, const std::function<bool(const Mat&)>& visit);

// Canonical representative of v modulo lat: the unique vector congruent to v
// with i-th entry in [0, lat[i][i]).
std::vector<i64> sublat_coset_rep(const FinAb& g, const Mat& lat,
                                  std::vector<i64> v);

// Kernel of the homomorphism dom -> cod determined by sending the i-th
// standard generator of dom (order dom.orders[i]) to the element of cod with
// coordinates images[i]. The caller must pass a well-defined map; the result
// is the sublattice {v : sum v_i * images[i] = 0 in cod}.
Mat hom_kernel(const FinAb& dom, const FinAb& cod,
               const std::vector<std::vector<i64>>& images);

// Order of the element with the given coordinates.
i64 element_order(const FinAb& g, const std::vector<i64>& v);

// Smallest k > 0 with k*v in lat (order of v modulo the subgroup).
i64 element_order_mod(const FinAb& g, const Mat& lat, const std::vector<i64>& v);

}  // namespace tamebr
