#include "tamebr/brauer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tamebr {

i64 place_count(const AbelianExtQ& z, const QPlace& v) {
  auto u = UnitGroup::get(z.conductor());
  return sublat_index_in_group(u->group(), decomposition_lattice(z, v));
}

std::vector<i64> place_unit_reps(const AbelianExtQ& z, const QPlace& v) {
  auto u = UnitGroup::get(z.conductor());
  return sublattice_coset_reps(*u, decomposition_lattice(z, v));
}

BrauerClass BrauerClass::make(AbelianExtQ base,
                              std::vector<std::pair<Place, Rat>> inv) {
  BrauerClass out;
  out.base_ = std::move(base);
  for (auto& [w, x] : inv) {
    x = x.frac();
    if (x == Rat(0)) continue;
    out.inv_.emplace_back(w, x);
  }
  std::sort(out.inv_.begin(), out.inv_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < out.inv_.size(); ++i) {
    if (out.inv_[i].first == out.inv_[i + 1].first) {
      throw ValidationError("repeated place " + out.inv_[i].first.str());
    }
  }
  bool real = out.base_.is_real();
  Rat sum(0);
  std::map<i64, i64> counts;  // place_count per rational place, cached
  for (const auto& [w, x] : out.inv_) {
    sum = sum + x;
    auto it = counts.find(w.under.p);
    if (it == counts.end()) {
      it = counts.emplace(w.under.p, place_count(out.base_, w.under)).first;
    }
    if (w.index < 0 || w.index >= it->second) {
      throw ValidationError("place index out of range: " + w.str());
    }
    if (w.under.is_infinite()) {
      if (!real) {
        throw ValidationError(
            "archimedean invariant over a field with no real embedding");
      }
      if (x != Rat(1, 2)) {
        throw ValidationError("archimedean invariant must be 1/2");
      }
    }
  }
  if (sum.frac() != Rat(0)) {
    throw ValidationError("local invariants must sum to 0 mod 1");
  }
  return out;
}

BrauerClass BrauerClass::trivial(AbelianExtQ base) {
  return make(std::move(base), {});
}

i64 BrauerClass::index() const {
  i64 m = 1;
  for (const auto& [w, x] : inv_) m = lcm_i64(m, x.den());
  return m;
}

i64 BrauerClass::local_index(const Place& w) const {
  return local_invariant(w).den();
}

Rat BrauerClass::local_invariant(const Place& w) const {
  for (const auto& [place, x] : inv_) {
    if (place == w) return x;
  }
  return Rat(0);
}

std::string BrauerClass::str() const {
  std::ostringstream os;
  os << base_.str() << "[";
  for (size_t i = 0; i < inv_.size(); ++i) {
    if (i) os << ", ";
    os << inv_[i].first.str() << ":" << inv_[i].second.str();
  }
  os << "]";
  return os.str();
}

BrauerClass restrict_to(const BrauerClass& alpha, const AbelianExtQ& z) {
  if (!alpha.base().is_rationals()) {
    throw PreconditionError("restriction source must be a class over Q");
  }
  return restrict_over(alpha, z);
}

BrauerClass restrict_over(const BrauerClass& beta, const AbelianExtQ& l) {
  const AbelianExtQ& z = beta.base();
  if (!is_subfield(z, l)) {
    throw ContainmentError("restriction needs an extension of the base");
  }
  auto uz = UnitGroup::get(z.conductor());
  auto ul = UnitGroup::get(l.conductor());
  FinAb fz = uz->group();

  std::vector<std::pair<Place, Rat>> out;
  QPlace cur{-1};
  i64 rel = 1;
  std::map<std::vector<i64>, i64> coset_index;  // over the current place
  std::vector<Rat> value_at;                    // beta's value per index
  Mat dec;
  for (const auto& [w, x] : beta.invariants()) {
    if (!(w.under == cur)) {
      cur = w.under;
      rel = relative_local_degree(z, l, cur);
      dec = decomposition_lattice(z, cur);
      coset_index.clear();
      std::vector<i64> reps = place_unit_reps(z, cur);
      value_at.assign(reps.size(), Rat(0));
      for (size_t i = 0; i < reps.size(); ++i) {
        coset_index.emplace(
            sublat_coset_rep(fz, dec, uz->coords_of(reps[i])), i);
      }
      // Fill the base values over this rational place, then map the places
      // of l onto them.
      for (const auto& [w2, x2] : beta.invariants()) {
        if (w2.under == cur) value_at[w2.index] = x2;
      }
      std::vector<i64> reps_l = place_unit_reps(l, cur);
      for (size_t j = 0; j < reps_l.size(); ++j) {
        i64 down = z.conductor() == 1 ? 0 : reps_l[j] % z.conductor();
        std::vector<i64> key = sublat_coset_rep(fz, dec, uz->coords_of(down));
        auto it = coset_index.find(key);
        if (it == coset_index.end()) {
          throw StructureError("place failed to land in a coset");
        }
        Rat y = (Rat(rel) * value_at[it->second]).frac();
        if (y != Rat(0)) {
          out.emplace_back(Place{cur, static_cast<i64>(j)}, y);
        }
      }
    }
  }
  return BrauerClass::make(l, std::move(out));
}

BrauerClass add(const BrauerClass& a, const BrauerClass& b) {
  if (!(a.base() == b.base())) {
    throw ValidationError("classes live over different fields");
  }
  std::vector<std::pair<Place, Rat>> inv = a.invariants();
  for (const auto& [w, x] : b.invariants()) inv.emplace_back(w, x);
  std::sort(inv.begin(), inv.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<std::pair<Place, Rat>> merged;
  for (const auto& [w, x] : inv) {
    if (!merged.empty() && merged.back().first == w) {
      merged.back().second = merged.back().second + x;
    } else {
      merged.emplace_back(w, x);
    }
  }
  return BrauerClass::make(a.base(), std::move(merged));
}

bool is_split_by(const BrauerClass& beta, const AbelianExtQ& l) {
  if (!is_subfield(beta.base(), l)) {
    throw ContainmentError("splitting test needs an extension of the base");
  }
  std::map<i64, i64> rel;  // by rational place
  for (const auto& [w, x] : beta.invariants()) {
    auto it = rel.find(w.under.p);
    if (it == rel.end()) {
      it = rel.emplace(w.under.p,
                       relative_local_degree(beta.base(), l, w.under))
               .first;
    }
    if (it->second % x.den() != 0) return false;
  }
  return true;
}

namespace {

// π-primary component of x mod 1: the part with denominator the π-power in
// the denominator of x.
Rat primary_component(const Rat& x, i64 pi) {
  i64 den = x.frac().den();
  i64 v = vp(den, pi);
  if (v == 0) return Rat(0);
  i64 q = ipow(pi, v);
  i64 rest = den / q;
  // b = num * rest^(-1) mod q.
  i64 inv = powmod(rest % q, euler_phi(q) - 1, q);
  i64 b = static_cast<i64>(i128{((x.frac().num() % q) + q) % q} * inv % q);
  return Rat(b, q).frac();
}

}  // namespace

BrauerClass prescribe_class(const AbelianExtQ& z, i64 m,
                            const std::vector<PrescribeTarget>& targets,
                            const std::vector<QPlace>& avoid,
                            i64 prime_scan_bound) {
  if (m < 1) throw ValidationError("requested index must be positive");

  // Collapse targets to their underlying rational places.
  std::map<QPlace, i64> want;
  for (const PrescribeTarget& t : targets) {
    if (t.index < 1) throw ValidationError("target index must be positive");
    if (t.place.index < 0 ||
        t.place.index >= place_count(z, t.place.under)) {
      throw ValidationError("target place out of range: " + t.place.str());
    }
    auto [it, fresh] = want.emplace(t.place.under, t.index);
    if (!fresh && it->second != t.index) {
      throw ValidationError("conflicting target indices over " +
                            t.place.under.str());
    }
  }
  std::set<i64> avoid_primes;
  bool avoid_inf = false;
  for (const QPlace& v : avoid) {
    if (v.is_infinite()) avoid_inf = true;
    else avoid_primes.insert(v.p);
  }
  for (const auto& [v, t] : want) {
    if (m % t != 0) {
      throw ValidationError("target index must divide the requested index");
    }
    if (v.is_infinite()) {
      if (t > 2) throw ValidationError("archimedean index is at most 2");
      if (t == 2 && !z.is_real()) {
        throw ValidationError(
            "archimedean index 2 needs a real embedding of the field");
      }
      if (t > 1 && avoid_inf) {
        throw ValidationError("target place is in the avoid set");
      }
    } else if (t > 1 && avoid_primes.count(v.p)) {
      throw ValidationError("target place is in the avoid set");
    }
  }

  // Primes barred from auxiliary support: everything the caller avoids and
  // every targeted place (an index-1 target must stay split).
  std::set<i64> barred = avoid_primes;
  for (const auto& [v, t] : want) {
    if (!v.is_infinite()) barred.insert(v.p);
  }

  std::vector<std::pair<Place, Rat>> entries;
  Rat sum(0);
  for (const auto& [v, t] : want) {
    if (t == 1) continue;
    i64 ell = local_degree(z, v);
    i64 h = 1;
    for (i64 pi : prime_factors(t)) h = checked_mul(h, ipow(pi, vp(ell, pi)));
    Rat x(1, checked_mul(t, h));
    entries.emplace_back(Place{v, 0}, x);
    sum = sum + x;
  }
  Rat delta = (Rat(0) - sum).frac();

  i64 exponent = 1;
  {
    std::vector<i64> inv = z.galois_invariants();
    if (!inv.empty()) exponent = inv.back();
  }
  auto next_prime = [&](const std::function<bool(i64)>& good) {
    for (i64 q = 2; q <= prime_scan_bound; ++q) {
      if (!is_prime(q)) continue;
      if (barred.count(q)) continue;
      if (z.conductor() % q == 0) continue;
      if (good(q)) return q;
    }
    throw BoundError("no admissible auxiliary prime within the scan bound");
  };

  // Offload denominator parts too large for the requested index onto primes
  // where the field's local degree absorbs the excess.
  for (i64 pi : prime_factors(delta.den())) {
    i64 vd = vp(delta.den(), pi);
    i64 vm = vp(m, pi);
    if (vd <= vm) continue;
    i64 need = vd - vm;
    if (vp(exponent, pi) < need) {
      throw InfeasibleError(
          "no unramified place can absorb the reciprocity defect at " +
          std::to_string(pi));
    }
    i64 q = next_prime([&](i64 c) {
      return vp(local_degree(z, QPlace::finite(c)), pi) >= need;
    });
    Rat part = primary_component(delta, pi);
    entries.emplace_back(Place{QPlace::finite(q), 0}, part);
    barred.insert(q);
    delta = (delta - part).frac();
  }
  if (m % delta.den() != 0) {
    throw StructureError("reciprocity defect still exceeds the index");
  }

  i64 r = 1;
  for (const auto& [v, t] : want) r = lcm_i64(r, t);
  auto next_split_prime = [&]() {
    i64 q = next_prime(
        [&](i64 c) { return z.contains_unit(c % z.conductor()); });
    barred.insert(q);
    return q;
  };
  if (delta != Rat(0) && lcm_i64(r, delta.den()) == m) {
    entries.emplace_back(Place{QPlace::finite(next_split_prime()), 0}, delta);
  } else if (delta != Rat(0)) {
    entries.emplace_back(Place{QPlace::finite(next_split_prime()), 0},
                         Rat(1, m));
    entries.emplace_back(Place{QPlace::finite(next_split_prime()), 0},
                         (delta - Rat(1, m)).frac());
  } else if (r < m) {
    entries.emplace_back(Place{QPlace::finite(next_split_prime()), 0},
                         Rat(1, m));
    entries.emplace_back(Place{QPlace::finite(next_split_prime()), 0},
                         Rat(m - 1, m));
  }

  BrauerClass alpha = BrauerClass::make(AbelianExtQ::rationals(), entries);

  // Self-check before handing the class out: the construction above must
  // deliver exactly what was asked.
  BrauerClass beta = restrict_to(alpha, z);
  if (beta.index() != m) {
    throw StructureError("constructed class has the wrong index");
  }
  for (const auto& [v, t] : want) {
    for (i64 i = 0; i < place_count(z, v); ++i) {
      if (beta.local_index(Place{v, i}) != t) {
        throw StructureError("constructed class misses a local index");
      }
    }
  }
  for (const auto& [w, x] : alpha.invariants()) {
    bool bad = w.under.is_infinite()
                   ? avoid_inf
                   : avoid_primes.count(w.under.p) > 0;
    if (bad) throw StructureError("constructed class touches an avoided place");
  }
  return alpha;
}

}  // namespace tamebr
