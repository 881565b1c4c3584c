#include "tamebr/abelian_ext.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tamebr {

namespace {

constexpr i64 kMaxUnitGroupSize = i64{1} << 21;

struct ExtGcd {
  i64 g, x, y;  // a*x + b*y = g
};

ExtGcd ext_gcd(i64 a, i64 b) {
  if (b == 0) return {a, 1, 0};
  ExtGcd r = ext_gcd(b, a % b);
  return {r.g, r.y, r.x - (a / b) * r.y};
}

i64 mulmod(i64 a, i64 b, i64 n) { return static_cast<i64>(i128{a} * b % n); }

}  // namespace

i64 powmod(i64 a, i64 e, i64 n) {
  if (n <= 0) throw Error("modulus must be positive");
  if (n == 1) return 0;
  a %= n;
  if (a < 0) a += n;
  i64 r = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<i64, i64>> factorize(i64 n) {
  if (n < 1) throw Error("factorize needs a positive integer");
  std::vector<std::pair<i64, i64>> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    i64 e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

i64 euler_phi(i64 n) {
  i64 phi = 1;
  for (const auto& [p, e] : factorize(n)) {
    phi = checked_mul(phi, ipow(p, e - 1) * (p - 1));
  }
  return phi;
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  ExtGcd eg = ext_gcd(m1, m2);
  if (eg.g != 1) throw CoprimalityError("crt moduli must be coprime");
  i64 m = checked_mul(m1, m2);
  i128 t = (i128{r2} - r1) % m2 * eg.x % m2;
  i128 r = (i128{r1} + i128{m1} * t) % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

namespace {

i64 primitive_root(i64 p) {
  std::vector<i64> qs = prime_factors(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 q : qs) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw StructureError("no primitive root found");
}

std::map<i64, std::shared_ptr<const UnitGroup>>& unit_group_cache() {
  static std::map<i64, std::shared_ptr<const UnitGroup>> cache;
  return cache;
}

std::shared_ptr<const UnitGroup> build_unit_group(i64 n) {
  auto ug = std::make_shared<UnitGroup>();
  UnitGroup& u = *ug;
  u.n = n;
  if (n <= 2) {
    u.phi = 1;
    u.units = {n == 1 ? 0 : 1};
  } else {
    for (const auto& [p, e] : factorize(n)) {
      i64 pe = ipow(p, e);
      i64 rest = n / pe;
      if (p == 2) {
        if (e == 1) continue;
        if (e == 2) {
          u.gen_residues.push_back(crt(3, 4, 1 % rest, rest));
          u.gen_orders.push_back(2);
          u.gen_primes.push_back(2);
        } else {
          u.gen_residues.push_back(crt(pe - 1, pe, 1 % rest, rest));
          u.gen_orders.push_back(2);
          u.gen_primes.push_back(2);
          u.gen_residues.push_back(crt(5, pe, 1 % rest, rest));
          u.gen_orders.push_back(pe / 4);
          u.gen_primes.push_back(2);
        }
      } else {
        i64 g = primitive_root(p);
        if (e > 1 && powmod(g, p - 1, p * p) == 1) g += p;
        u.gen_residues.push_back(crt(g % pe, pe, 1 % rest, rest));
        u.gen_orders.push_back(ipow(p, e - 1) * (p - 1));
        u.gen_primes.push_back(p);
      }
    }
    u.phi = 1;
    for (i64 o : u.gen_orders) u.phi = checked_mul(u.phi, o);
  }
  if (u.phi > kMaxUnitGroupSize) {
    throw BoundError("unit group too large: modulus " + std::to_string(n));
  }
  return ug;
}

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(i64 n) {
  if (n < 1) throw Error("modulus must be positive");
  auto& cache = unit_group_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto ug = build_unit_group(n);
  // Fill the enumeration tables (units, discrete logs).
  UnitGroup& u = const_cast<UnitGroup&>(*ug);
  int g = static_cast<int>(u.gen_orders.size());
  u.pow_tables_.resize(g);
  for (int i = 0; i < g; ++i) {
    u.pow_tables_[i].resize(u.gen_orders[i]);
    i64 cur = 1;
    for (i64 c = 0; c < u.gen_orders[i]; ++c) {
      u.pow_tables_[i][c] = cur;
      cur = mulmod(cur, u.gen_residues[i], u.n);
    }
  }
  if (n > 2) {
    std::vector<std::pair<i64, std::vector<i64>>> table;
    table.reserve(u.phi);
    std::vector<i64> c(g, 0);
    while (true) {
      i64 r = 1;
      for (int i = 0; i < g; ++i) r = mulmod(r, u.pow_tables_[i][c[i]], u.n);
      table.emplace_back(r, c);
      int i = g - 1;
      while (i >= 0 && c[i] == u.gen_orders[i] - 1) {
        c[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++c[i];
    }
    std::sort(table.begin(), table.end());
    u.units.reserve(table.size());
    u.dlog_keys_.reserve(table.size());
    u.dlog_vals_.reserve(table.size());
    for (auto& [r, coords] : table) {
      u.units.push_back(r);
      u.dlog_keys_.push_back(r);
      u.dlog_vals_.push_back(std::move(coords));
    }
  } else {
    u.dlog_keys_ = u.units;
    u.dlog_vals_ = {std::vector<i64>{}};
  }
  cache.emplace(n, ug);
  return ug;
}

std::vector<i64> UnitGroup::coords_of(i64 u) const {
  i64 r = u % n;
  if (r < 0) r += n;
  if (n == 1) return {};
  auto it = std::lower_bound(dlog_keys_.begin(), dlog_keys_.end(), r);
  if (it == dlog_keys_.end() || *it != r) {
    throw ValidationError("not a unit: " + std::to_string(u) + " mod " +
                          std::to_string(n));
  }
  return dlog_vals_[it - dlog_keys_.begin()];
}

i64 UnitGroup::residue_of(const std::vector<i64>& coords) const {
  if (coords.size() != gen_orders.size()) {
    throw DimensionError("coordinate length mismatch");
  }
  if (n == 1) return 0;
  i64 r = 1;
  for (size_t i = 0; i < coords.size(); ++i) {
    i64 c = coords[i] % gen_orders[i];
    if (c < 0) c += gen_orders[i];
    r = mulmod(r, pow_tables_[i][c], n);
  }
  return r;
}

bool UnitGroup::is_unit(i64 u) const {
  if (n == 1) return true;
  i64 r = u % n;
  if (r < 0) r += n;
  return std::gcd(r, n) == 1;
}

// ---- AbelianExtQ ----

namespace {

// Iteratively lowers the conductor while the subgroup contains the kernel of
// reduction; elements stay sorted.
void canonicalize(i64& n, std::vector<i64>& elements) {
  while (n > 1) {
    bool reduced = false;
    for (i64 q : prime_factors(n)) {
      i64 np = n / q;
      bool kernel_inside = true;
      for (i64 s = 0; s < q && kernel_inside; ++s) {
        i64 u = 1 + s * np;
        if (u >= n || std::gcd(u, n) != 1) continue;
        kernel_inside = std::binary_search(elements.begin(), elements.end(), u);
      }
      if (!kernel_inside) continue;
      std::vector<i64> mapped;
      mapped.reserve(elements.size());
      for (i64 x : elements) mapped.push_back(np == 1 ? 0 : x % np);
      std::sort(mapped.begin(), mapped.end());
      mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
      n = np;
      elements = std::move(mapped);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
}

std::vector<i64> elements_of_lattice(const UnitGroup& u, const Mat& lat) {
  std::vector<i64> out;
  for (i64 r : u.units) {
    if (sublat_contains(lat, u.coords_of(r))) out.push_back(r);
  }
  return out;
}

// Coordinates, in the small group, of each generator of the big group; the
// small modulus must divide the big one.
Mat projection_matrix(const UnitGroup& big, const UnitGroup& small) {
  if (big.n % small.n != 0) throw ContainmentError("modulus must divide");
  Mat p;
  for (i64 r : big.gen_residues) p.push_back(small.coords_of(r % small.n));
  return p;
}

// Lattice of units of the big group whose reduction lands in the sublattice
// of the small group.
Mat preimage_lattice(const UnitGroup& big, const FinAb& big_fin,
                     const UnitGroup& small, const Mat& small_lat) {
  if (small.n <= 2) return sublat_full(big_fin);
  Mat stacked = projection_matrix(big, small);
  int gb = static_cast<int>(stacked.size());
  for (const auto& row : small_lat) stacked.push_back(row);
  Mat ker = left_kernel(stacked);
  std::vector<std::vector<i64>> gens;
  for (const auto& row : ker) gens.emplace_back(row.begin(), row.begin() + gb);
  return sublat_from_gens(big_fin, gens);
}

Mat decomposition_lattice_impl(const UnitGroup& u, const FinAb& fin,
                               const Mat& lat, const QPlace& v) {
  if (u.n <= 2) return sublat_full(fin);
  std::vector<std::vector<i64>> gens = lat;
  if (v.is_infinite()) {
    gens.push_back(u.coords_of(u.n - 1));
  } else {
    i64 p = v.p;
    if (u.n % p != 0) {
      gens.push_back(u.coords_of(p % u.n));
    } else {
      for (size_t i = 0; i < u.gen_primes.size(); ++i) {
        if (u.gen_primes[i] != p) continue;
        std::vector<i64> e(u.gen_orders.size(), 0);
        e[i] = 1;
        gens.push_back(e);
      }
      i64 a = vp(u.n, p);
      i64 pa = ipow(p, a);
      i64 n0 = u.n / pa;
      i64 frob = n0 == 1 ? 1 : crt(p % n0, n0, 1 % pa, pa);
      gens.push_back(u.coords_of(frob));
    }
  }
  return sublat_from_gens(fin, gens);
}

i64 lattice_local_degree(const UnitGroup& u, const FinAb& fin, const Mat& lat,
                         const QPlace& v) {
  Mat dec = decomposition_lattice_impl(u, fin, lat, v);
  i64 ih = sublat_index_in_group(fin, lat);
  i64 id = sublat_index_in_group(fin, dec);
  if (ih % id != 0) throw StructureError("decomposition index mismatch");
  return ih / id;
}

}  // namespace

AbelianExtQ AbelianExtQ::cyclotomic(i64 n) {
  if (n < 1) throw ValidationError("cyclotomic index must be positive");
  if (n % 4 == 2) n /= 2;
  if (n <= 2) return rationals();
  return from_subgroup_trusted(n, {1});
}

AbelianExtQ AbelianExtQ::from_subgroup(i64 n, std::vector<i64> elements) {
  if (n < 1) throw ValidationError("conductor must be positive");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (n == 1) {
    if (elements != std::vector<i64>{0}) {
      throw ValidationError("subgroup mod 1 must be {0}");
    }
    return AbelianExtQ();
  }
  if (elements.empty()) throw ValidationError("subgroup must be nonempty");
  for (i64 x : elements) {
    if (x < 1 || x >= n || std::gcd(x, n) != 1) {
      throw ValidationError("subgroup element " + std::to_string(x) +
                            " is not a unit mod " + std::to_string(n));
    }
  }
  if (!std::binary_search(elements.begin(), elements.end(), i64{1})) {
    throw ValidationError("subgroup must contain 1");
  }
  for (i64 a : elements) {
    for (i64 b : elements) {
      if (b > a) break;
      if (!std::binary_search(elements.begin(), elements.end(),
                              mulmod(a, b, n))) {
        throw ValidationError("subgroup is not closed under multiplication");
      }
    }
  }
  return from_subgroup_trusted(n, std::move(elements));
}

AbelianExtQ AbelianExtQ::from_subgroup_trusted(i64 n,
                                               std::vector<i64> elements) {
  std::sort(elements.begin(), elements.end());
  canonicalize(n, elements);
  AbelianExtQ z;
  z.conductor_ = n;
  z.subgroup_ = std::move(elements);
  return z;
}

AbelianExtQ AbelianExtQ::from_generators(i64 n, const std::vector<i64>& gens) {
  if (n < 1) throw ValidationError("conductor must be positive");
  if (n == 1) return rationals();
  std::vector<i64> closure = {1};
  std::vector<i64> seeds;
  for (i64 g : gens) {
    i64 r = g % n;
    if (r < 0) r += n;
    if (std::gcd(r, n) != 1) {
      throw ValidationError("generator " + std::to_string(g) +
                            " is not a unit mod " + std::to_string(n));
    }
    seeds.push_back(r);
  }
  std::vector<i64> queue = {1};
  while (!queue.empty()) {
    i64 x = queue.back();
    queue.pop_back();
    for (i64 s : seeds) {
      i64 y = mulmod(x, s, n);
      auto it = std::lower_bound(closure.begin(), closure.end(), y);
      if (it == closure.end() || *it != y) {
        closure.insert(it, y);
        queue.push_back(y);
      }
    }
  }
  return from_subgroup_trusted(n, std::move(closure));
}

i64 AbelianExtQ::degree() const {
  i64 phi = euler_phi(conductor_);
  i64 h = static_cast<i64>(subgroup_.size());
  if (phi % h != 0) throw StructureError("subgroup size does not divide phi");
  return phi / h;
}

bool AbelianExtQ::is_real() const { return contains_unit(conductor_ - 1); }

bool AbelianExtQ::contains_unit(i64 u) const {
  if (conductor_ == 1) return true;
  i64 r = u % conductor_;
  if (r < 0) r += conductor_;
  return std::binary_search(subgroup_.begin(), subgroup_.end(), r);
}

std::vector<i64> AbelianExtQ::galois_invariants() const {
  if (conductor_ == 1) return {};
  auto u = UnitGroup::get(conductor_);
  return quotient_shape(u->group(), subgroup_lattice());
}

std::vector<i64> AbelianExtQ::galois_coset_reps() const {
  if (conductor_ == 1) return {0};
  auto u = UnitGroup::get(conductor_);
  std::vector<bool> used(u->units.size(), false);
  std::vector<i64> reps;
  for (size_t i = 0; i < u->units.size(); ++i) {
    if (used[i]) continue;
    i64 r = u->units[i];
    reps.push_back(r);
    for (i64 h : subgroup_) {
      i64 x = mulmod(r, h, conductor_);
      auto it = std::lower_bound(u->units.begin(), u->units.end(), x);
      used[it - u->units.begin()] = true;
    }
  }
  return reps;
}

Mat AbelianExtQ::subgroup_lattice() const {
  auto u = UnitGroup::get(conductor_);
  std::vector<std::vector<i64>> gens;
  if (conductor_ > 2) {
    for (i64 h : subgroup_) gens.push_back(u->coords_of(h));
  }
  return sublat_from_gens(u->group(), gens);
}

std::string AbelianExtQ::str() const {
  std::ostringstream os;
  os << "(" << conductor_ << ", {";
  for (size_t i = 0; i < subgroup_.size(); ++i) {
    if (i) os << ",";
    os << subgroup_[i];
  }
  os << "})";
  return os.str();
}

bool is_subfield(const AbelianExtQ& sub, const AbelianExtQ& sup) {
  if (sub.conductor() == 1) return true;
  if (sup.conductor() % sub.conductor() != 0) return false;
  auto ubig = UnitGroup::get(sup.conductor());
  auto usmall = UnitGroup::get(sub.conductor());
  FinAb fin = ubig->group();
  Mat pre = preimage_lattice(*ubig, fin, *usmall, sub.subgroup_lattice());
  return sublat_contains_lat(pre, sup.subgroup_lattice());
}

AbelianExtQ compositum(const AbelianExtQ& a, const AbelianExtQ& b) {
  if (a.conductor() == 1) return b;
  if (b.conductor() == 1) return a;
  i64 n = checked_mul(a.conductor() / std::gcd(a.conductor(), b.conductor()),
                      b.conductor());
  auto u = UnitGroup::get(n);
  FinAb fin = u->group();
  auto ua = UnitGroup::get(a.conductor());
  auto ub = UnitGroup::get(b.conductor());
  Mat pa = preimage_lattice(*u, fin, *ua, a.subgroup_lattice());
  Mat pb = preimage_lattice(*u, fin, *ub, b.subgroup_lattice());
  Mat meet = sublat_meet(fin, pa, pb);
  return AbelianExtQ::from_subgroup_trusted(n, elements_of_lattice(*u, meet));
}

AbelianExtQ intersect_fields(const AbelianExtQ& a, const AbelianExtQ& b) {
  if (a.conductor() == 1 || b.conductor() == 1) return AbelianExtQ::rationals();
  i64 n = checked_mul(a.conductor() / std::gcd(a.conductor(), b.conductor()),
                      b.conductor());
  auto u = UnitGroup::get(n);
  FinAb fin = u->group();
  auto ua = UnitGroup::get(a.conductor());
  auto ub = UnitGroup::get(b.conductor());
  Mat pa = preimage_lattice(*u, fin, *ua, a.subgroup_lattice());
  Mat pb = preimage_lattice(*u, fin, *ub, b.subgroup_lattice());
  Mat join = sublat_join(fin, pa, pb);
  return AbelianExtQ::from_subgroup_trusted(n, elements_of_lattice(*u, join));
}

i64 local_degree(const AbelianExtQ& z, const QPlace& v) {
  auto u = UnitGroup::get(z.conductor());
  return lattice_local_degree(*u, u->group(), z.subgroup_lattice(), v);
}

i64 relative_local_degree(const AbelianExtQ& sub, const AbelianExtQ& sup,
                          const QPlace& v) {
  if (!is_subfield(sub, sup)) {
    throw ContainmentError("relative local degree requires a subfield");
  }
  i64 a = local_degree(sup, v);
  i64 b = local_degree(sub, v);
  if (a % b != 0) throw StructureError("local degrees fail divisibility");
  return a / b;
}

Mat decomposition_lattice(const AbelianExtQ& z, const QPlace& v) {
  auto u = UnitGroup::get(z.conductor());
  return decomposition_lattice_impl(*u, u->group(), z.subgroup_lattice(), v);
}

std::vector<i64> sublattice_coset_reps(const UnitGroup& u, const Mat& lat) {
  if (u.n <= 2) return {u.units.front()};
  FinAb fin = u.group();
  std::map<std::vector<i64>, i64> first_by_coset;
  for (i64 r : u.units) {
    std::vector<i64> key = sublat_coset_rep(fin, lat, u.coords_of(r));
    first_by_coset.emplace(std::move(key), r);
  }
  std::vector<i64> reps;
  reps.reserve(first_by_coset.size());
  for (const auto& [key, r] : first_by_coset) reps.push_back(r);
  std::sort(reps.begin(), reps.end());
  return reps;
}

i64 roots_of_unity_exponent(const AbelianExtQ& z, i64 p) {
  if (!is_prime(p)) throw Error("roots of unity exponent needs a prime");
  i64 k = 0;
  while (true) {
    i64 q = ipow(p, k + 1);
    if (q > z.conductor() && !(p == 2 && k == 0)) break;
    if (!is_subfield(AbelianExtQ::cyclotomic(q), z)) break;
    ++k;
  }
  return k;
}

i64 r2_value(const AbelianExtQ& z) {
  return roots_of_unity_exponent(compositum(z, AbelianExtQ::cyclotomic(4)), 2);
}

AbelianExtQ primary_part(const AbelianExtQ& z, i64 p) {
  if (!is_prime(p)) throw Error("primary part needs a prime");
  std::vector<i64> inv = z.galois_invariants();
  i64 exponent = inv.empty() ? 1 : inv.back();
  i64 v = vp(exponent, p);
  if (v == 0) return AbelianExtQ::rationals();
  auto u = UnitGroup::get(z.conductor());
  FinAb fin = u->group();
  i64 pv = ipow(p, v);
  std::vector<std::vector<i64>> gens = z.subgroup_lattice();
  for (int i = 0; i < fin.dim(); ++i) {
    std::vector<i64> e(fin.dim(), 0);
    e[i] = pv;
    gens.push_back(e);
  }
  Mat lat = sublat_from_gens(fin, gens);
  return AbelianExtQ::from_subgroup_trusted(z.conductor(),
                                            elements_of_lattice(*u, lat));
}

FinSubgroup primary_complement(const std::vector<i64>& shape,
                               const std::vector<std::vector<i64>>& b_gens) {
  for (i64 s : shape) {
    if (s < 1) throw ValidationError("shape entries must be positive");
  }
  FinAb g{shape};
  Mat lb = sublat_from_gens(g, b_gens);
  i64 b = sublat_order(g, lb);
  i64 a = g.order() / b;
  if (std::gcd(a, b) != 1) {
    throw CoprimalityError("subgroup order and index share a factor");
  }
  std::vector<std::vector<i64>> gens;
  for (int i = 0; i < g.dim(); ++i) {
    std::vector<i64> e(g.dim(), 0);
    e[i] = b % shape[i];
    gens.push_back(g.reduce(e));
  }
  Mat la = sublat_from_gens(g, gens);
  RelativeDecomposition dec = relative_decomposition(g, sublat_trivial(g), la);
  return FinSubgroup{dec.invariants, dec.generators};
}

// ---- cover search ----

namespace {

// Local degree of the full cyclotomic field of the given modulus, computed
// without building the unit group.
i64 cyclotomic_local_degree(i64 n, const QPlace& v) {
  if (n <= 2) return 1;
  if (v.is_infinite()) return 2;
  i64 p = v.p;
  i64 a = vp(n, p);
  i64 n0 = n / ipow(p, a);
  i64 e = a == 0 ? 1 : euler_phi(ipow(p, a));
  i64 f = 1;
  if (n0 > 1) {
    i64 x = p % n0;
    while (x != 1) {
      x = mulmod(x, p, n0);
      ++f;
    }
  }
  return checked_mul(e, f);
}

}  // namespace

bool for_each_cover(const AbelianExtQ& z, const CoverScan& scan,
                    const std::function<bool(const AbelianExtQ&)>& visit) {
  if (scan.m < 1) throw ValidationError("cover degree must be positive");
  if (scan.conductor_bound < 1) {
    throw ValidationError("conductor bound must be positive");
  }
  i64 fz = z.conductor();
  i64 dz = z.degree();
  auto uz = UnitGroup::get(fz);
  Mat lz = z.subgroup_lattice();

  std::vector<std::pair<QPlace, i64>> demand_base;
  for (const Demand& d : scan.demands) {
    demand_base.emplace_back(d.place, local_degree(z, d.place));
  }

  for (i64 n = fz; n <= scan.conductor_bound; n += fz) {
    if (n % 4 == 2) continue;
    if (euler_phi(n) % checked_mul(scan.m, dz) != 0) continue;
    bool feasible = true;
    for (const auto& [place, floor] : scan.full_degree_floor) {
      if (cyclotomic_local_degree(n, place) < floor) {
        feasible = false;
        break;
      }
    }
    for (size_t i = 0; i < scan.demands.size() && feasible; ++i) {
      i64 want_full = checked_mul(scan.demands[i].degree, demand_base[i].second);
      if (cyclotomic_local_degree(n, scan.demands[i].place) < want_full) {
        feasible = false;
      }
    }
    if (!feasible) continue;

    auto u = UnitGroup::get(n);
    FinAb fin = u->group();
    Mat pre = preimage_lattice(*u, fin, *uz, lz);

    // Kernels of reduction to each maximal proper level, for conductor
    // exactness.
    std::vector<Mat> reduction_kernels;
    for (i64 q : prime_factors(n)) {
      i64 np = n / q;
      std::vector<std::vector<i64>> kgens;
      for (i64 s = 0; s < q; ++s) {
        i64 x = 1 + s * np;
        if (x >= n || std::gcd(x, n) != 1) continue;
        kgens.push_back(u->coords_of(x));
      }
      reduction_kernels.push_back(sublat_from_gens(fin, kgens));
    }

    std::vector<std::pair<std::vector<i64>, Mat>> passing;
    for_each_between(fin, sublat_trivial(fin), pre, scan.m, [&](const Mat& x) {
      for (const Mat& k : reduction_kernels) {
        if (sublat_contains_lat(x, k)) return true;  // conductor drops
      }
      if (scan.require_cyclic && quotient_shape(fin, x).size() > 1) return true;
      for (size_t i = 0; i < scan.demands.size(); ++i) {
        i64 full = lattice_local_degree(*u, fin, x, scan.demands[i].place);
        if (full != checked_mul(scan.demands[i].degree, demand_base[i].second)) {
          return true;
        }
      }
      passing.emplace_back(elements_of_lattice(*u, x), x);
      return true;
    });
    std::sort(passing.begin(), passing.end());
    for (auto& [elements, lat] : passing) {
      AbelianExtQ cover = AbelianExtQ::from_subgroup_trusted(n, elements);
      if (cover.conductor() != n) {
        throw StructureError("conductor exactness filter failed");
      }
      if (!visit(cover)) return false;
    }
  }
  return true;
}

CoverSearchResult cover_search(const AbelianExtQ& z, const CoverScan& scan) {
  CoverSearchResult result;
  result.conductor_bound = scan.conductor_bound;

  std::vector<Demand> demands;
  for (const Demand& d : scan.demands) {
    if (d.degree < 1) throw ValidationError("demanded degree must be positive");
    bool dup = false;
    for (const Demand& seen : demands) {
      if (seen.place == d.place) {
        if (seen.degree != d.degree) {
          throw ValidationError("conflicting demands at place " +
                                d.place.str());
        }
        dup = true;
      }
    }
    if (!dup) demands.push_back(d);
  }
  for (const Demand& d : demands) {
    if (scan.m % d.degree != 0) return result;  // local degree divides degree
    if (d.place.is_infinite()) {
      i64 max_rel = z.is_real() ? 2 : 1;
      if (d.degree > max_rel) return result;
    }
  }

  CoverScan engine = scan;
  engine.demands = demands;
  for_each_cover(z, engine, [&](const AbelianExtQ& cover) {
    result.cover = cover;
    return false;
  });
  return result;
}

std::optional<i64> cyclic_cover_max_k(const AbelianExtQ& z, i64 p) {
  if (!is_prime(p)) throw Error("cover bound needs a prime");
  if (!z.is_cyclic()) {
    throw PreconditionError("cover bound requires a cyclic extension");
  }
  AbelianExtQ zp = primary_part(z, p);
  if (zp.is_rationals()) return std::nullopt;
  i64 fp = zp.conductor();
  auto u = UnitGroup::get(fp);
  FinAb fin = u->group();
  Mat lh = zp.subgroup_lattice();
  i64 ih = sublat_index_in_group(fin, lh);

  std::vector<i64> bounds;
  for (i64 q : prime_factors(fp)) {
    if (q == p || q == 2) continue;
    std::vector<std::vector<i64>> gens = lh;
    for (size_t i = 0; i < u->gen_primes.size(); ++i) {
      if (u->gen_primes[i] != q) continue;
      std::vector<i64> e(fin.dim(), 0);
      e[i] = 1;
      gens.push_back(e);
    }
    i64 inertia_order = ih / sublat_index_in_group(fin, sublat_from_gens(fin, gens));
    bounds.push_back(vp(q - 1, p) - vp(inertia_order, p));
  }
  if (p == 2 && fp % 2 == 0) {
    i64 v2 = vp(fp, 2);
    i64 tw = ipow(2, v2);
    i64 eps = crt(tw - 1, tw, 1 % (fp / tw), fp / tw);
    if (!zp.contains_unit(eps)) bounds.push_back(0);
  }
  if (bounds.empty()) return std::nullopt;
  return *std::min_element(bounds.begin(), bounds.end());
}

HeightVerdict infinite_height(const AbelianExtQ& z) {
  if (!z.is_cyclic()) {
    throw PreconditionError("height requires a cyclic extension");
  }
  for (i64 p : prime_factors(z.degree())) {
    if (cyclic_cover_max_k(z, p).has_value()) return HeightVerdict::No;
  }
  return HeightVerdict::Yes;
}

}  // namespace tamebr
