#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamebr/finab.hpp"

namespace tamebr {

// A place of Q: a finite prime, or the real place (p == 0).
struct QPlace {
  i64 p = 0;

  static QPlace finite(i64 prime) {
    if (prime < 2) throw Error("finite place needs a prime >= 2");
    return QPlace{prime};
  }
  static QPlace infinite() { return QPlace{0}; }

  bool is_infinite() const { return p == 0; }

  // Finite places ascending, the real place last.
  friend bool operator<(const QPlace& a, const QPlace& b) {
    if (a.is_infinite() != b.is_infinite()) return !a.is_infinite();
    return a.p < b.p;
  }
  friend bool operator==(const QPlace& a, const QPlace& b) { return a.p == b.p; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(p); }
};

// Structure of the unit group mod n, with a fixed generator decomposition
// used as the coordinate system for all subgroup computations. Cached by n.
class UnitGroup {
 public:
  static std::shared_ptr<const UnitGroup> get(i64 n);

  i64 n = 1;
  i64 phi = 1;
  // Component generators: residues mod n, their orders, and the prime of the
  // prime-power component each belongs to.
  std::vector<i64> gen_residues;
  std::vector<i64> gen_orders;
  std::vector<i64> gen_primes;

  FinAb group() const { return FinAb{gen_orders}; }

  // Sorted list of units (residue 0 stands for the trivial group mod 1).
  std::vector<i64> units;

  // Discrete logarithm: coordinates of a unit in the generator basis.
  std::vector<i64> coords_of(i64 u) const;
  i64 residue_of(const std::vector<i64>& coords) const;

  bool is_unit(i64 u) const;

 private:
  std::vector<std::vector<i64>> pow_tables_;  // pow_tables_[i][c] = gen_i^c
  std::vector<i64> dlog_keys_;                // sorted unit residues
  std::vector<std::vector<i64>> dlog_vals_;   // coords aligned with keys
};

// Finite abelian extension of Q, named by (conductor, unit subgroup): the
// fixed field of H inside the conductor-th cyclotomic field. Canonical form:
// minimal conductor (never 2 mod 4), subgroup as the full sorted element
// list. Q itself is (1, {0}).
class AbelianExtQ {
 public:
  AbelianExtQ() : conductor_(1), subgroup_{0} {}

  static AbelianExtQ rationals() { return AbelianExtQ(); }
  static AbelianExtQ cyclotomic(i64 n);
  // Validates elements (units, closed, containing 1) and canonicalizes.
  static AbelianExtQ from_subgroup(i64 n, std::vector<i64> elements);
  // Subgroup generated by the given units mod n.
  static AbelianExtQ from_generators(i64 n, const std::vector<i64>& gens);
  // Internal: elements already known to form a subgroup.
  static AbelianExtQ from_subgroup_trusted(i64 n, std::vector<i64> elements);

  i64 conductor() const { return conductor_; }
  const std::vector<i64>& subgroup() const { return subgroup_; }

  i64 degree() const;
  bool is_rationals() const { return conductor_ == 1; }
  bool is_real() const;
  bool is_cyclic() const { return galois_invariants().size() <= 1; }

  // Invariant factors (> 1, ascending divisibility) of the automorphism
  // group over Q; empty for Q itself.
  std::vector<i64> galois_invariants() const;
  // Smallest representative of each coset of the subgroup, sorted.
  std::vector<i64> galois_coset_reps() const;

  // Subgroup as a lattice in the coordinate system of UnitGroup::get(n).
  Mat subgroup_lattice() const;

  bool contains_unit(i64 u) const;

  friend bool operator==(const AbelianExtQ& a, const AbelianExtQ& b) {
    return a.conductor_ == b.conductor_ && a.subgroup_ == b.subgroup_;
  }
  friend bool operator<(const AbelianExtQ& a, const AbelianExtQ& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
    return a.subgroup_ < b.subgroup_;
  }

  std::string str() const;

 private:
  i64 conductor_;
  std::vector<i64> subgroup_;
};

// sub ⊆ sup as fields.
bool is_subfield(const AbelianExtQ& sub, const AbelianExtQ& sup);

AbelianExtQ compositum(const AbelianExtQ& a, const AbelianExtQ& b);
AbelianExtQ intersect_fields(const AbelianExtQ& a, const AbelianExtQ& b);

// Degree of the completion of z over the completion of Q at the place.
i64 local_degree(const AbelianExtQ& z, const QPlace& v);

// Lattice (in the coordinates of UnitGroup::get(z.conductor())) of the
// subgroup fixing a chosen place of z over v; its index counts the places
// of z over v.
Mat decomposition_lattice(const AbelianExtQ& z, const QPlace& v);

// Smallest unit in each coset of the sublattice, sorted ascending.
std::vector<i64> sublattice_coset_reps(const UnitGroup& u, const Mat& lat);

// [completion of sup : completion of sub] at the place; requires sub ⊆ sup.
i64 relative_local_degree(const AbelianExtQ& sub, const AbelianExtQ& sup,
                          const QPlace& v);

// Largest k with the p^k-th cyclotomic field inside z.
i64 roots_of_unity_exponent(const AbelianExtQ& z, i64 p);

// roots_of_unity_exponent at 2 after adjoining a fourth root of unity.
i64 r2_value(const AbelianExtQ& z);

// Subfield of z of degree the p-part of [z : Q].
AbelianExtQ primary_part(const AbelianExtQ& z, i64 p);

// Complement of a subgroup B inside ⊕ Z/shape when gcd(|B|, index) = 1.
struct FinSubgroup {
  std::vector<i64> shape;                    // invariant factors of the piece
  std::vector<std::vector<i64>> generators;  // coordinates in the big group
};
FinSubgroup primary_complement(const std::vector<i64>& shape,
                               const std::vector<std::vector<i64>>& b_gens);

// ---- cover search ----

struct Demand {
  QPlace place;
  i64 degree = 1;  // required relative local degree
};

struct CoverScan {
  i64 m = 1;                 // relative degree of the covers
  i64 conductor_bound = 2000;
  bool require_cyclic = false;  // cyclic over Q
  std::vector<Demand> demands;  // exact relative local degrees
  // Necessary lower bounds on the full local degree of any acceptable cover;
  // used to skip whole conductors cheaply.
  std::vector<std::pair<QPlace, i64>> full_degree_floor;
};

// Visits every abelian L ⊇ z with [L : z] = m and conductor ≤ the bound,
// in canonical order: conductor ascending, then subgroup element list
// ascending. Every L is visited exactly once (conductor-exact form). The
// callback returns false to stop; the function returns false if stopped.
bool for_each_cover(const AbelianExtQ& z, const CoverScan& scan,
                    const std::function<bool(const AbelianExtQ&)>& visit);

struct CoverSearchResult {
  std::optional<AbelianExtQ> cover;  // first hit in canonical order
  i64 conductor_bound = 0;
};

CoverSearchResult cover_search(const AbelianExtQ& z, const CoverScan& scan);

// Largest k such that z has a cyclic degree-p^k cover L with L/Q cyclic;
// nullopt when no finite bound exists. Requires z cyclic over Q.
std::optional<i64> cyclic_cover_max_k(const AbelianExtQ& z, i64 p);

enum class HeightVerdict { Yes, No, UnknownBeyondBound };

// Whether z admits cyclic covers of unbounded p-power relative degree for
// every p dividing [z : Q]. Requires z cyclic over Q.
HeightVerdict infinite_height(const AbelianExtQ& z);

// ---- small number-theory helpers shared across modules ----

bool is_prime(i64 n);
std::vector<i64> prime_factors(i64 n);
std::vector<std::pair<i64, i64>> factorize(i64 n);
i64 euler_phi(i64 n);
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2);  // moduli coprime
i64 powmod(i64 a, i64 e, i64 n);

}  // namespace tamebr
