#pragma once

// Independent reference implementations used only by tests. Everything here
// recomputes results from first principles — brute-force enumeration, raw
// modular arithmetic, its own Gaussian elimination — and shares no algorithm
// with the main library. Library value types (Rat) appear purely as exact
// data carriers.

#include <cstdint>
#include <optional>
#include <vector>

#include "tamebr/rational.hpp"

namespace oracle {

using tamebr::i64;
using tamebr::Rat;
using RatRow = std::vector<Rat>;
using RatRows = std::vector<RatRow>;

// ---- rational lattices, by direct enumeration ----

// Solves x * rows = v for a square full-rank system by Gaussian elimination.
std::optional<RatRow> solve_square(const RatRows& rows, const RatRow& v);

// True if v is an integer combination of the given (square, full-rank) basis.
bool member(const RatRows& basis, const RatRow& v);

// All points sum c_i * rows_i with coefficients in [-box, box].
RatRows points_in_box(const RatRows& rows, i64 box);

// Number of cosets of sub inside sup, counting distinct fractional
// representations of sup-points over a coefficient box. Throws if the count
// is still growing between box and box+1 (box too small to be trusted).
i64 coset_count(const RatRows& sub, const RatRows& sup, i64 box);

// Number of cosets x of sub in sup with k*x = 0, same enumeration scheme.
i64 coset_count_killed_by(const RatRows& sub, const RatRows& sup, i64 k, i64 box);

// ---- unit groups mod n, by raw modular arithmetic ----

// Units of Z/n as sorted residues; n = 1 gives {0}.
std::vector<i64> unit_list(i64 n);

// Subgroup generated by the given units (all mod n), as a sorted list.
std::vector<i64> closure(i64 n, std::vector<i64> seed);

// Every subgroup of the unit group mod n, each a sorted element list,
// ordered by (size, lexicographic elements). Guarded by a work bound.
std::vector<std::vector<i64>> all_subgroups(i64 n, i64 work_bound = 512);

// Local degree at p (p = 0 means the real place) of the field fixed by H
// inside the n-th cyclotomic field, computed from raw decomposition data.
i64 local_degree(i64 n, const std::vector<i64>& h, i64 p);

// Degree-m covers: fields L of relative degree m over the field Z = (n, H),
// found inside every cyclotomic field of conductor N <= bound with exact
// conductor N, satisfying relative local degree demands (place -> degree,
// place 0 = real) and, optionally, cyclicity of Gal(L/Q). Each result is the
// pair (conductor, subgroup elements).
struct CoverFound {
  i64 conductor;
  std::vector<i64> subgroup;
};
std::vector<CoverFound> exhaustive_cover_check(
    i64 n, const std::vector<i64>& h, i64 m,
    const std::vector<std::pair<i64, i64>>& demands, i64 conductor_bound,
    bool require_cyclic);

}  // namespace oracle
