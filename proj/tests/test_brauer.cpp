#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle/oracle.hpp"
#include "tamebr/brauer.hpp"

using namespace tamebr;

namespace {

AbelianExtQ gauss_field() { return AbelianExtQ::from_subgroup(4, {1}); }
AbelianExtQ sqrt5_field() { return AbelianExtQ::from_subgroup(5, {1, 4}); }
AbelianExtQ eighth_roots() { return AbelianExtQ::from_subgroup(8, {1}); }

std::vector<AbelianExtQ> small_fields() {
  std::vector<AbelianExtQ> out;
  std::set<std::pair<i64, std::vector<i64>>> seen;
  for (i64 n : {1, 3, 4, 5, 7, 8, 9, 12, 15, 16}) {
    for (const auto& h : oracle::all_subgroups(n)) {
      AbelianExtQ z = AbelianExtQ::from_subgroup(n, h);
      if (seen.emplace(z.conductor(), z.subgroup()).second) out.push_back(z);
    }
  }
  return out;
}

// Random class over Q supported on the given primes (plus the real place
// occasionally), with invariants summing to zero.
BrauerClass random_rational_class(std::mt19937& rng, i64 max_den) {
  std::vector<i64> primes = {2, 3, 5, 7, 11, 13};
  std::shuffle(primes.begin(), primes.end(), rng);
  size_t k = 2 + rng() % 3;
  std::vector<std::pair<Place, Rat>> inv;
  Rat sum(0);
  for (size_t i = 0; i + 1 < k && i < primes.size(); ++i) {
    i64 den = 2 + static_cast<i64>(rng() % (max_den - 1));
    i64 num = 1 + static_cast<i64>(rng() % (den - 1));
    Rat x(num, den);
    inv.emplace_back(Place{QPlace::finite(primes[i]), 0}, x);
    sum = sum + x;
  }
  if (sum.frac() != Rat(0) && sum.frac().den() == 2 && rng() % 2 == 0) {
    inv.emplace_back(Place{QPlace::infinite(), 0}, Rat(1, 2));
    sum = sum + Rat(1, 2);
  }
  Rat leftover = (Rat(0) - sum).frac();
  if (leftover != Rat(0)) {
    inv.emplace_back(Place{QPlace::finite(primes[k - 1 + 2]), 0}, leftover);
  }
  return BrauerClass::make(AbelianExtQ::rationals(), std::move(inv));
}

}  // namespace

TEST_CASE("place counts and representatives") {
  AbelianExtQ zi = gauss_field();
  CHECK(place_count(zi, QPlace::finite(5)) == 2);
  CHECK(place_unit_reps(zi, QPlace::finite(5)) == std::vector<i64>{1, 3});
  CHECK(place_count(zi, QPlace::finite(3)) == 1);
  CHECK(place_count(zi, QPlace::finite(2)) == 1);
  CHECK(place_count(zi, QPlace::infinite()) == 1);

  AbelianExtQ z5 = sqrt5_field();
  CHECK(place_count(z5, QPlace::infinite()) == 2);
  CHECK(place_unit_reps(z5, QPlace::infinite()) == std::vector<i64>{1, 2});
  CHECK(place_count(z5, QPlace::finite(5)) == 1);
  CHECK(place_count(z5, QPlace::finite(11)) == 2);
  CHECK(place_count(z5, QPlace::finite(2)) == 1);

  CHECK(place_count(AbelianExtQ::rationals(), QPlace::finite(7)) == 1);
  CHECK(place_count(AbelianExtQ::rationals(), QPlace::infinite()) == 1);

  // Degree = local degree x number of places, across a field sample.
  for (const AbelianExtQ& z : small_fields()) {
    for (i64 p : {0, 2, 3, 5, 7}) {
      QPlace v = p == 0 ? QPlace::infinite() : QPlace::finite(p);
      CHECK(place_count(z, v) * local_degree(z, v) == z.degree());
    }
  }
}

TEST_CASE("class construction and validation") {
  // The classical quaternion class over Q.
  BrauerClass q = BrauerClass::make(
      AbelianExtQ::rationals(),
      {{Place{QPlace::finite(2), 0}, Rat(1, 2)},
       {Place{QPlace::infinite(), 0}, Rat(1, 2)}});
  CHECK(q.index() == 2);
  CHECK(q.local_index(Place{QPlace::finite(2), 0}) == 2);
  CHECK(q.local_index(Place{QPlace::finite(3), 0}) == 1);
  CHECK(q.local_invariant(Place{QPlace::infinite(), 0}) == Rat(1, 2));

  // Values are normalized mod 1 and zeros are dropped.
  BrauerClass r = BrauerClass::make(
      AbelianExtQ::rationals(),
      {{Place{QPlace::finite(3), 0}, Rat(4, 3)},
       {Place{QPlace::finite(5), 0}, Rat(-1, 3)},
       {Place{QPlace::finite(7), 0}, Rat(2)}});
  CHECK(r.invariants().size() == 2);
  CHECK(r.local_invariant(Place{QPlace::finite(5), 0}) == Rat(2, 3));
  CHECK(r.index() == 3);
  CHECK(BrauerClass::trivial(gauss_field()).index() == 1);

  // Reciprocity violation.
  CHECK_THROWS_AS(BrauerClass::make(AbelianExtQ::rationals(),
                                    {{Place{QPlace::finite(3), 0}, Rat(1, 3)}}),
                  ValidationError);
  // Archimedean invariant must be 1/2.
  CHECK_THROWS_AS(
      BrauerClass::make(AbelianExtQ::rationals(),
                        {{Place{QPlace::infinite(), 0}, Rat(1, 3)},
                         {Place{QPlace::finite(3), 0}, Rat(2, 3)}}),
      ValidationError);
  // No archimedean support over a field with no real embedding.
  CHECK_THROWS_AS(
      BrauerClass::make(gauss_field(),
                        {{Place{QPlace::infinite(), 0}, Rat(1, 2)},
                         {Place{QPlace::finite(3), 0}, Rat(1, 2)}}),
      ValidationError);
  // Place index out of range.
  CHECK_THROWS_AS(
      BrauerClass::make(gauss_field(),
                        {{Place{QPlace::finite(5), 2}, Rat(1, 2)},
                         {Place{QPlace::finite(3), 0}, Rat(1, 2)}}),
      ValidationError);
  // Repeated place.
  CHECK_THROWS_AS(
      BrauerClass::make(AbelianExtQ::rationals(),
                        {{Place{QPlace::finite(3), 0}, Rat(1, 3)},
                         {Place{QPlace::finite(3), 0}, Rat(2, 3)}}),
      ValidationError);
}

TEST_CASE("restriction to an extension kills or scales invariants") {
  // 2 and 3 both have local degree 2 in the Gaussian field.
  BrauerClass a = BrauerClass::make(
      AbelianExtQ::rationals(),
      {{Place{QPlace::finite(2), 0}, Rat(1, 2)},
       {Place{QPlace::finite(3), 0}, Rat(1, 2)}});
  CHECK(restrict_to(a, gauss_field()) == BrauerClass::trivial(gauss_field()));
  CHECK(is_split_by(a, gauss_field()));

  // 5 splits, so the invariant survives at both places over 5.
  BrauerClass b = BrauerClass::make(
      AbelianExtQ::rationals(),
      {{Place{QPlace::finite(5), 0}, Rat(1, 3)},
       {Place{QPlace::finite(2), 0}, Rat(2, 3)}});
  BrauerClass rb = restrict_to(b, gauss_field());
  CHECK(rb.local_invariant(Place{QPlace::finite(5), 0}) == Rat(1, 3));
  CHECK(rb.local_invariant(Place{QPlace::finite(5), 1}) == Rat(1, 3));
  CHECK(rb.local_invariant(Place{QPlace::finite(2), 0}) == Rat(1, 3));
  CHECK(rb.index() == 3);
  CHECK(!is_split_by(b, gauss_field()));

  CHECK_THROWS_AS(restrict_to(rb, eighth_roots()), PreconditionError);
}

TEST_CASE("restriction agrees with reference local degrees") {
  std::mt19937 rng(20240820);
  std::vector<AbelianExtQ> fields = small_fields();
  for (int trial = 0; trial < 120; ++trial) {
    BrauerClass alpha = random_rational_class(rng, 9);
    const AbelianExtQ& z = fields[rng() % fields.size()];
    BrauerClass beta = restrict_to(alpha, z);
    // Reconstruct the expected invariant list from the reference data.
    std::vector<std::pair<Place, Rat>> expect;
    for (const auto& [w, x] : alpha.invariants()) {
      i64 ell = oracle::local_degree(z.conductor(), z.subgroup(), w.under.p);
      Rat y = (Rat(ell) * x).frac();
      if (y == Rat(0)) continue;
      i64 count = z.degree() / ell;
      for (i64 i = 0; i < count; ++i) {
        expect.emplace_back(Place{w.under, i}, y);
      }
    }
    std::sort(expect.begin(), expect.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    CHECK(beta.invariants() == expect);
  }
}

TEST_CASE("restriction is transitive through towers") {
  std::mt19937 rng(911911);
  std::vector<AbelianExtQ> fields = small_fields();
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    const AbelianExtQ& z = fields[rng() % fields.size()];
    const AbelianExtQ& w = fields[rng() % fields.size()];
    AbelianExtQ l = compositum(z, w);
    if (l.degree() > 16) continue;
    BrauerClass alpha = random_rational_class(rng, 7);
    BrauerClass via_z = restrict_over(restrict_to(alpha, z), l);
    BrauerClass direct = restrict_to(alpha, l);
    CHECK(via_z == direct);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("sums of classes restrict additively") {
  std::mt19937 rng(777);
  std::vector<AbelianExtQ> fields = small_fields();
  for (int trial = 0; trial < 60; ++trial) {
    BrauerClass a = random_rational_class(rng, 6);
    BrauerClass b = random_rational_class(rng, 6);
    const AbelianExtQ& z = fields[rng() % fields.size()];
    CHECK(restrict_to(add(a, b), z) ==
          add(restrict_to(a, z), restrict_to(b, z)));
  }
  CHECK_THROWS_AS(add(BrauerClass::trivial(gauss_field()),
                      BrauerClass::trivial(sqrt5_field())),
                  ValidationError);
}

TEST_CASE("splitting test matches restriction triviality") {
  std::mt19937 rng(424242);
  std::vector<AbelianExtQ> fields = small_fields();
  int split_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    BrauerClass alpha = random_rational_class(rng, 6);
    const AbelianExtQ& z = fields[rng() % fields.size()];
    const AbelianExtQ& w = fields[rng() % fields.size()];
    AbelianExtQ l = compositum(z, w);
    if (l.degree() > 16) continue;
    BrauerClass beta = restrict_to(alpha, z);
    bool split = is_split_by(beta, l);
    bool trivial =
        restrict_over(beta, l) == BrauerClass::trivial(l);
    CHECK(split == trivial);
    split_seen += split ? 1 : 0;
  }
  CHECK(split_seen > 0);
  CHECK_THROWS_AS(
      is_split_by(BrauerClass::trivial(gauss_field()), sqrt5_field()),
      ContainmentError);
}

TEST_CASE("prescription: worked examples") {
  // Index 2 over Q with local index 2 at 3: the auxiliary entry lands at 2.
  BrauerClass a = prescribe_class(AbelianExtQ::rationals(), 2,
                                  {{Place{QPlace::finite(3), 0}, 2}}, {}, 500);
  std::vector<std::pair<Place, Rat>> expect_a = {
      {Place{QPlace::finite(2), 0}, Rat(1, 2)},
      {Place{QPlace::finite(3), 0}, Rat(1, 2)}};
  CHECK(a.invariants() == expect_a);

  // Same demand over the Gaussian field: 3 is inert, so the defect has
  // denominator 4 and must be absorbed by another inert prime (7).
  BrauerClass b = prescribe_class(gauss_field(), 2,
                                  {{Place{QPlace::finite(3), 0}, 2}}, {}, 500);
  std::vector<std::pair<Place, Rat>> expect_b = {
      {Place{QPlace::finite(3), 0}, Rat(1, 4)},
      {Place{QPlace::finite(7), 0}, Rat(3, 4)}};
  CHECK(b.invariants() == expect_b);
  BrauerClass rb = restrict_to(b, gauss_field());
  CHECK(rb.index() == 2);
  CHECK(rb.local_index(Place{QPlace::finite(3), 0}) == 2);

  // Archimedean demand over Q gives the quaternion class.
  BrauerClass c = prescribe_class(AbelianExtQ::rationals(), 2,
                                  {{Place{QPlace::infinite(), 0}, 2}}, {}, 500);
  std::vector<std::pair<Place, Rat>> expect_c = {
      {Place{QPlace::finite(2), 0}, Rat(1, 2)},
      {Place{QPlace::infinite(), 0}, Rat(1, 2)}};
  CHECK(c.invariants() == expect_c);

  // Large two-power index over the eighth-roots field: two ramified-free
  // targets, one split balancing prime.
  BrauerClass d = prescribe_class(eighth_roots(), 2048,
                                  {{Place{QPlace::finite(5), 0}, 2048},
                                   {Place{QPlace::finite(7), 0}, 2048}},
                                  {}, 500);
  std::vector<std::pair<Place, Rat>> expect_d = {
      {Place{QPlace::finite(5), 0}, Rat(1, 4096)},
      {Place{QPlace::finite(7), 0}, Rat(1, 4096)},
      {Place{QPlace::finite(17), 0}, Rat(2047, 2048)}};
  CHECK(d.invariants() == expect_d);
  CHECK(restrict_to(d, eighth_roots()).index() == 2048);

  // No targets at all: a split pair carrying 1/m and (m-1)/m.
  BrauerClass e = prescribe_class(gauss_field(), 4, {}, {}, 500);
  CHECK(restrict_to(e, gauss_field()).index() == 4);
  CHECK(e.invariants().size() == 2);

  // Index 1 demands the trivial class.
  CHECK(prescribe_class(AbelianExtQ::rationals(), 1, {}, {}, 500) ==
        BrauerClass::trivial(AbelianExtQ::rationals()));
}

TEST_CASE("prescription: validation and feasibility") {
  // Target index must divide the requested index.
  CHECK_THROWS_AS(prescribe_class(AbelianExtQ::rationals(), 2,
                                  {{Place{QPlace::finite(3), 0}, 3}}, {}, 500),
                  ValidationError);
  // Conflicting targets over one rational place.
  CHECK_THROWS_AS(prescribe_class(gauss_field(), 4,
                                  {{Place{QPlace::finite(5), 0}, 2},
                                   {Place{QPlace::finite(5), 1}, 4}},
                                  {}, 500),
                  ValidationError);
  // Matching duplicates collapse.
  BrauerClass ok = prescribe_class(gauss_field(), 4,
                                   {{Place{QPlace::finite(5), 0}, 2},
                                    {Place{QPlace::finite(5), 1}, 2}},
                                   {}, 500);
  CHECK(restrict_to(ok, gauss_field()).local_index(Place{QPlace::finite(5), 1}) ==
        2);
  // Archimedean index over a field with no real embedding.
  CHECK_THROWS_AS(prescribe_class(gauss_field(), 2,
                                  {{Place{QPlace::infinite(), 0}, 2}}, {}, 500),
                  ValidationError);
  // Archimedean index above 2.
  CHECK_THROWS_AS(prescribe_class(AbelianExtQ::rationals(), 4,
                                  {{Place{QPlace::infinite(), 0}, 4}}, {}, 500),
                  ValidationError);
  // Target inside the avoid set.
  CHECK_THROWS_AS(prescribe_class(AbelianExtQ::rationals(), 2,
                                  {{Place{QPlace::finite(3), 0}, 2}},
                                  {QPlace::finite(3)}, 500),
                  ValidationError);
  // A defect at a ramified place that no unramified prime can absorb: the
  // local degree at 2 is 4 but the automorphism group has exponent 2.
  CHECK_THROWS_AS(prescribe_class(eighth_roots(), 2,
                                  {{Place{QPlace::finite(2), 0}, 2}}, {}, 500),
                  InfeasibleError);
  // Too small a scan bound to find the balancing prime.
  CHECK_THROWS_AS(prescribe_class(eighth_roots(), 2,
                                  {{Place{QPlace::finite(5), 0}, 2},
                                   {Place{QPlace::finite(7), 0}, 2}},
                                  {}, 13),
                  BoundError);
}

TEST_CASE("prescription: postconditions on varied demands") {
  std::mt19937 rng(5150);
  std::vector<AbelianExtQ> fields = small_fields();
  std::vector<i64> ms = {2, 3, 4, 6, 8, 12};
  int built = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const AbelianExtQ& z = fields[rng() % fields.size()];
    i64 m = ms[rng() % ms.size()];
    std::vector<i64> divs = divisors(m);
    std::vector<PrescribeTarget> targets;
    std::vector<i64> primes = {3, 5, 7, 11, 13};
    std::shuffle(primes.begin(), primes.end(), rng);
    size_t nt = rng() % 3;
    for (size_t i = 0; i < nt; ++i) {
      targets.push_back(
          {Place{QPlace::finite(primes[i]), 0}, divs[rng() % divs.size()]});
    }
    std::vector<QPlace> avoid = {QPlace::finite(primes[4])};
    BrauerClass alpha;
    try {
      alpha = prescribe_class(z, m, targets, avoid, 500);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++built;
    // Determinism.
    CHECK(alpha == prescribe_class(z, m, targets, avoid, 500));
    BrauerClass beta = restrict_to(alpha, z);
    CHECK(beta.index() == m);
    for (const PrescribeTarget& t : targets) {
      for (i64 i = 0; i < place_count(z, t.place.under); ++i) {
        CHECK(beta.local_index(Place{t.place.under, i}) == t.index);
      }
    }
    for (const auto& [w, x] : alpha.invariants()) {
      CHECK(!(w.under == QPlace::finite(primes[4])));
    }
  }
  CHECK(built >= 100);
}
