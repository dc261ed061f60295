#include "helpers.hpp"
#include "k3ent/errors.hpp"
#include "k3ent/lattice.hpp"

#include <doctest.h>

using namespace k3ent;

namespace {

IntMatrix random_gram(oracle::Rng& rng, std::size_t n, std::int64_t bound) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Int x = rng.uniform(-bound, bound);
      g(i, j) = x;
      g(j, i) = x;
    }
  return g;
}

MukaiVector random_mukai(oracle::Rng& rng, std::int64_t d, std::int64_t bound) {
  return MukaiVector(rng.uniform(-bound, bound), rng.uniform(-bound, bound), rng.uniform(-bound, bound), d);
}

bool pairs_to_zero(const Sublattice& s, const MukaiVector& v) {
  for (const auto& b : s.basis_vectors())
    if (mukai_pairing(v, MukaiVector::from_coords(b, v.d)) != 0) return false;
  return true;
}

} // namespace

TEST_CASE("mukai pairing values") {
  for (int d = 1; d <= 5; ++d) CHECK(mukai_pairing({1, 0, 1, d}, {1, 0, 1, d}) == -2);
  CHECK(mukai_pairing({1, 0, 0, 3}, {0, 0, 1, 3}) == -1);
  CHECK(mukai_pairing({1, 0, -1, 2}, {3, 2, 3, 2}) == 0);
  CHECK_THROWS_AS(mukai_pairing({1, 0, 0, 2}, {1, 0, 0, 3}), InvalidInput);
}

TEST_CASE("mukai squares") {
  CHECK(square(MukaiVector(4, 1, 16, 66)) == 4);
  CHECK(square(MukaiVector(6, 1, 42, 255)) == 6);
  for (int d = 1; d <= 4; ++d) CHECK(square(MukaiVector(0, 0, 1, d)) == 0);
}

TEST_CASE("pairing is symmetric and squares are even") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::int64_t d = rng.uniform(1, 500);
    MukaiVector v = random_mukai(rng, d, 1000), w = random_mukai(rng, d, 1000);
    REQUIRE(mukai_pairing(v, w) == mukai_pairing(w, v));
    REQUIRE(square(v) % 2 == 0);
    oracle::i128 ref = oracle::mukai(d, {to_int64(v.r), to_int64(v.t), to_int64(v.s)},
                                     {to_int64(w.r), to_int64(w.t), to_int64(w.s)});
    REQUIRE(mukai_pairing(v, w) == from128(ref));
  }
}

TEST_CASE("primitivity") {
  CHECK(MukaiVector(4, 1, 16, 66).primitive());
  CHECK_FALSE(MukaiVector(2, 0, 4, 1).primitive());
  CHECK_FALSE(MukaiVector(0, 0, 0, 1).primitive());
}

TEST_CASE("orthogonal complement at h^2 = 132") {
  MukaiVector v(4, 1, 16, 66);
  Sublattice perp = orthogonal_complement(v);
  REQUIRE(perp.rank() == 2);
  CHECK(pairs_to_zero(perp, v));
  IntegerLattice got(perp.gram);
  IntegerLattice want(IntMatrix{{8, -33}, {-33, 132}});
  CHECK(abs(discriminant(got)) == abs(discriminant(want)));
  CHECK(discriminant_group(got) == discriminant_group(want));
  // The two listed generators lie in the computed complement.
  CHECK(perp.coordinates_of({1, 0, -4}).has_value());
  CHECK(perp.coordinates_of({0, 1, 33}).has_value());
}

TEST_CASE("orthogonal complement of the point class") {
  // <(0,0,1), (r,t,s)> = -r, so the complement is {(0, t, s)}: Gram
  // [[2,0],[0,0]] on (0,1,0), (0,0,1), i.e. [[0,0],[0,2]] after a swap.
  Sublattice perp = orthogonal_complement(MukaiVector(0, 0, 1, 1));
  CHECK(perp.coordinates_of({0, 1, 0}).has_value());
  CHECK(perp.coordinates_of({0, 0, 1}).has_value());
  CHECK_FALSE(perp.coordinates_of({1, 0, 0}).has_value());
  CHECK(determinant(perp.gram) == 0);
  CHECK(smith_invariants(perp.gram) == smith_invariants(IntMatrix{{0, 0}, {0, 2}}));
  CHECK(gcd(IntVector{perp.gram(0, 0), perp.gram(0, 1), perp.gram(1, 1)}) == 2);
}

TEST_CASE("orthogonal complement contains the structure sheaf class at h^2 = 4") {
  Sublattice perp = orthogonal_complement(MukaiVector(1, 0, -1, 2));
  CHECK(perp.coordinates_of({1, 0, 1}).has_value());
  CHECK(square(MukaiVector(1, 0, 1, 2)) == -2);
}

TEST_CASE("orthogonal complement rejects zero") {
  CHECK_THROWS_AS(orthogonal_complement(MukaiVector(0, 0, 0, 3)), InvalidInput);
}

TEST_CASE("orthogonal complement properties on random vectors") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::int64_t d = rng.uniform(1, 200);
    MukaiVector v = random_mukai(rng, d, 60);
    if (v.is_zero()) continue;
    Sublattice perp = orthogonal_complement(v);
    REQUIRE(perp.rank() == 2);
    REQUIRE(pairs_to_zero(perp, v));
    Sublattice sat = saturate(perp);
    REQUIRE(saturation_index(perp) == 1);
    REQUIRE(abs(determinant(sat.gram)) == abs(determinant(perp.gram)));
  }
}

TEST_CASE("discriminant values") {
  CHECK(discriminant(IntegerLattice(IntMatrix{{8, -33}, {-33, 132}})) == -33);
  CHECK(discriminant(IntegerLattice(IntMatrix{{6, -2}, {-2, -24}})) == -148);
  CHECK(discriminant(IntegerLattice(IntMatrix::identity(2))) == 1);
  CHECK_THROWS_AS(IntegerLattice(IntMatrix{{1, 2}, {2, 4}}), InvalidInput);
  CHECK_THROWS_AS(IntegerLattice(IntMatrix{{1, 2}, {3, 4}}), InvalidInput);
}

TEST_CASE("evenness flag") {
  CHECK(IntegerLattice(IntMatrix{{2, 1}, {1, 2}}).even());
  CHECK_FALSE(IntegerLattice(IntMatrix{{1, 0}, {0, 2}}).even());
  CHECK(mukai_lattice(7).even());
}

TEST_CASE("saturation") {
  IntMatrix id = IntMatrix::identity(2);
  Sublattice s = make_sublattice(id, IntMatrix{{2, 0}});
  Sublattice sat = saturate(s);
  CHECK(sat.coordinates_of({1, 0}).has_value());
  CHECK(saturation_index(s) == 2);

  Sublattice span = make_sublattice(mukai_gram(66), IntMatrix{{4, 1, 16}, {1, 0, -4}});
  Sublattice span_sat = saturate(span);
  Int index = saturation_index(span);
  CHECK(abs(determinant(span.gram)) == index * index * abs(determinant(span_sat.gram)));
  CHECK(saturate(span_sat).gram == span_sat.gram);
}

TEST_CASE("saturation is idempotent and keeps the rational span") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(n) - 1));
    IntMatrix basis(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) basis(i, j) = rng.uniform(-6, 6) * rng.uniform(1, 4);
    if (rank(basis) != k) continue;
    Sublattice s = make_sublattice(IntMatrix::identity(n), basis);
    Sublattice once = saturate(s);
    Sublattice twice = saturate(once);
    REQUIRE(once.basis == twice.basis);
    REQUIRE(saturation_index(once) == 1);
    // Same rational span: stacking the two bases does not raise the rank.
    IntMatrix stacked(2 * k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        stacked(i, j) = basis(i, j);
        stacked(k + i, j) = once.basis(i, j);
      }
    REQUIRE(rank(stacked) == k);
    for (const auto& b : s.basis_vectors()) REQUIRE(once.coordinates_of(b).has_value());
  }
}

TEST_CASE("discriminant group") {
  CHECK(discriminant_group(IntegerLattice(IntMatrix{{2, 0}, {0, 2}})) == IntVector{2, 2});
  CHECK(discriminant_group(IntegerLattice(IntMatrix{{8, -33}, {-33, 132}})) == IntVector{33});
  CHECK(discriminant_group(IntegerLattice(IntMatrix{{0, 1}, {1, 0}})).empty());
}

TEST_CASE("signature") {
  for (int d = 1; d <= 30; ++d) CHECK(signature(mukai_lattice(d)) == Signature{2, 1});
  CHECK(signature(IntegerLattice(IntMatrix{{6, -2}, {-2, -24}})) == Signature{1, 1});
  CHECK(signature(IntegerLattice(IntMatrix{{-2}})) == Signature{0, 1});
}

TEST_CASE("random Gram matrices: discriminant, invariant factors, signature") {
  oracle::Rng rng(14);
  int checked = 0;
  while (checked < 1000) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    IntMatrix g = random_gram(rng, n, 50);
    auto rows = to_rows(g);
    oracle::i128 det = oracle::det(rows);
    if (det == 0) continue;
    ++checked;
    IntegerLattice lat(g);
    REQUIRE(discriminant(lat) == from128(det));
    Int product = 1;
    for (const auto& f : discriminant_group(lat)) product *= f;
    REQUIRE(product == abs(from128(det)));
    auto ref = oracle::invariant_factors(rows);
    IntVector want;
    for (auto f : ref)
      if (f != 1) want.push_back(from128(f));
    REQUIRE(discriminant_group(lat) == want);
    Signature sig = signature(lat);
    REQUIRE(sig.positive + sig.negative == n);
    REQUIRE((det < 0) == (sig.negative % 2 == 1));
  }
}
