#include "helpers.hpp"
#include "k3ent/diophantine.hpp"
#include "k3ent/errors.hpp"
#include "k3ent/walls.hpp"

#include <doctest.h>

using namespace k3ent;

namespace {

QuadraticDiophantine eq(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e,
                        std::int64_t f) {
  return {a, b, c, d, e, f};
}

// Everything a certificate claims must hold exactly.
void check_sound(const SolvabilityCertificate& c) {
  const auto& q = c.equation;
  if (c.status == SolveStatus::Solvable) {
    REQUIRE(c.witness.has_value());
    REQUIRE(q.evaluate(c.witness->first, c.witness->second) == 0);
    for (const auto& fam : c.fundamental_solutions) {
      REQUIRE(q.evaluate(fam.base.first, fam.base.second) == 0);
      if (!fam.step) continue;
      Point p = fam.base, back = fam.base;
      for (int i = 0; i < 3; ++i) {
        p = fam.step->apply(p);
        back = fam.step->apply_inverse(back);
        REQUIRE(q.evaluate(p.first, p.second) == 0);
        REQUIRE(q.evaluate(back.first, back.second) == 0);
      }
      REQUIRE(fam.step->apply_inverse(fam.step->apply(fam.base)) == fam.base);
    }
  }
  if (c.status == SolveStatus::Unsolvable) {
    REQUIRE_FALSE(c.witness.has_value());
    // Hyperbolic non-square cases must cite an obstruction or a finished cycle.
    if (c.kind == ConicKind::HyperbolicNonSquare && c.method != "content")
      REQUIRE((c.obstruction.has_value() || c.cycle.has_value()));
    if (c.method == "modular-sieve") {
      REQUIRE(c.obstruction.has_value());
      REQUIRE(modular_obstruction(c.reduced_equation, to_int64(c.obstruction->modulus)).has_value());
    }
  }
}

} // namespace

TEST_CASE("unsolvable equations with small modular obstructions") {
  auto c3 = solve(eq(4, -33, 66, 0, 0, 1));
  CHECK(c3.status == SolveStatus::Unsolvable);
  REQUIRE(c3.obstruction.has_value());
  CHECK(c3.obstruction->modulus == 3);

  auto c5 = solve(eq(7, -85, 255, 0, 0, 1));
  CHECK(c5.status == SolveStatus::Unsolvable);
  REQUIRE(c5.obstruction.has_value());
  CHECK(c5.obstruction->modulus == 5);
}

TEST_CASE("unsolvable equations decided by the reduction cycle") {
  auto c = solve(eq(9, -145, 580, 0, 0, 1));
  CHECK(c.status == SolveStatus::Unsolvable);

  auto n = solve(eq(6, -4, -24, 0, 0, 2));
  CHECK(n.status == SolveStatus::Unsolvable);
  CHECK_FALSE(n.obstruction.has_value());
  REQUIRE(n.cycle.has_value());
  CHECK(n.cycle->cycle_length > 0);
  for (std::int64_t m = 2; m <= 64; ++m) CHECK_FALSE(modular_obstruction(n.equation, m).has_value());
}

TEST_CASE("small solvable equations") {
  auto c = solve(eq(1, 0, -2, 0, 0, 1));
  REQUIRE(c.status == SolveStatus::Solvable);
  CHECK(c.witness == Point{1, 1});
  CHECK(c.infinite);
  check_sound(c);

  auto z = solve(eq(1, 0, 1, 0, 0, 0));
  REQUIRE(z.status == SolveStatus::Solvable);
  CHECK(z.witness == Point{0, 0});
}

TEST_CASE("all-zero equation is degenerate") {
  auto c = solve(eq(0, 0, 0, 0, 0, 0));
  CHECK(c.status == SolveStatus::Degenerate);
  CHECK(c.solvable());
  CHECK(solve(eq(0, 0, 0, 0, 0, 3)).status == SolveStatus::Unsolvable);
}

TEST_CASE("linear cases") {
  auto c = solve(eq(0, 0, 0, 4, 6, -10));
  REQUIRE(c.status == SolveStatus::Solvable);
  check_sound(c);
  CHECK(solve(eq(0, 0, 0, 4, 6, -11)).status == SolveStatus::Unsolvable);
}

TEST_CASE("conic classification") {
  CHECK(classify_conic(eq(1, 0, 1, 0, 0, -1)) == ConicKind::Elliptic);
  CHECK(classify_conic(eq(1, 2, 1, 0, 1, 0)) == ConicKind::Parabolic);
  CHECK(classify_conic(eq(1, 0, -4, 0, 0, -1)) == ConicKind::HyperbolicSquare);
  CHECK(classify_conic(eq(1, 0, -2, 0, 0, -1)) == ConicKind::HyperbolicNonSquare);
  CHECK(classify_conic(eq(0, 0, 0, 1, 1, 0)) == ConicKind::Linear);
}

TEST_CASE("modular obstruction examples") {
  CHECK(modular_obstruction(eq(4, -33, 66, 0, 0, 1), 3).has_value());
  CHECK(modular_obstruction(eq(7, -85, 255, 0, 0, 1), 5).has_value());
  CHECK_FALSE(modular_obstruction(eq(1, 0, -2, 0, 0, 1), 8).has_value());
  CHECK_THROWS_AS(modular_obstruction(eq(1, 0, 1, 0, 0, 1), 1), InvalidInput);
}

TEST_CASE("modular obstruction agrees with an exhaustive residue scan") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    std::array<std::int64_t, 6> k{};
    for (auto& x : k) x = rng.uniform(-20, 20);
    std::int64_t n = rng.uniform(2, 30);
    bool hit = false;
    for (std::int64_t x = 0; x < n && !hit; ++x)
      for (std::int64_t y = 0; y < n && !hit; ++y) {
        std::int64_t val = k[0] * x * x + k[1] * x * y + k[2] * y * y + k[3] * x + k[4] * y + k[5];
        hit = ((val % n) + n) % n == 0;
      }
    auto q = eq(k[0], k[1], k[2], k[3], k[4], k[5]);
    REQUIRE(modular_obstruction(q, n).has_value() == !hit);
  }
}

TEST_CASE("an obstruction means small searches find nothing") {
  oracle::Rng rng(22);
  int seen = 0;
  for (int trial = 0; trial < 3000 && seen < 200; ++trial) {
    std::array<std::int64_t, 6> k{};
    for (auto& x : k) x = rng.uniform(-20, 20);
    auto c = solve(eq(k[0], k[1], k[2], k[3], k[4], k[5]));
    if (!c.obstruction) continue;
    ++seen;
    REQUIRE_FALSE(oracle::search_conic(k, 60).has_value());
  }
  CHECK(seen > 50);
}

TEST_CASE("represents") {
  auto c = represents(IntegerLattice(IntMatrix{{8, -33}, {-33, 132}}), -2);
  CHECK(c.status == SolveStatus::Unsolvable);

  auto h = represents(IntegerLattice(IntMatrix{{0, 1}, {1, 0}}), 0);
  REQUIRE(h.status == SolveStatus::Solvable);
  REQUIRE(h.witness.has_value());
  CHECK(*h.witness != Point{0, 0});
  CHECK(h.witness->first * h.witness->second == 0);

  auto m = represents(IntegerLattice(IntMatrix{{2, 0}, {0, -2}}), -2);
  REQUIRE(m.status == SolveStatus::Solvable);
  CHECK(m.witness == Point{0, 1});
}

TEST_CASE("isotropy") {
  CHECK_FALSE(exists_isotropic(IntegerLattice(IntMatrix{{8, -33}, {-33, 132}})).isotropic);
  auto n = exists_isotropic(IntegerLattice(IntMatrix{{6, -2}, {-2, -24}}));
  CHECK_FALSE(n.isotropic);
  CHECK(n.minus_det == 148);
  auto h = exists_isotropic(IntegerLattice(IntMatrix{{0, 1}, {1, 0}}));
  REQUIRE(h.isotropic);
  REQUIRE(h.witness.has_value());
  CHECK(*h.witness == Point{1, 0});
}

TEST_CASE("isotropy witnesses are genuine") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    std::int64_t a = rng.uniform(-30, 30), b = rng.uniform(-30, 30), c = rng.uniform(-30, 30);
    if (a * c - b * b == 0) continue;
    IntegerLattice lat(IntMatrix{{a, b}, {b, c}});
    auto iso = exists_isotropic(lat);
    // A rank-2 form is isotropic iff -det is a square.
    std::int64_t md = b * b - a * c;
    bool square = md >= 0 && oracle::isqrt64(md) * oracle::isqrt64(md) == md;
    REQUIRE(iso.isotropic == square);
    if (iso.isotropic) {
      REQUIRE(iso.witness.has_value());
      REQUIRE(*iso.witness != Point{0, 0});
      REQUIRE(lat.square({iso.witness->first, iso.witness->second}) == 0);
    }
  }
}

TEST_CASE("pell fundamental values") {
  CHECK(pell_fundamental(2) == std::pair<Int, Int>{3, 2});
  CHECK(pell_fundamental(5) == std::pair<Int, Int>{9, 4});
  auto [x, y] = pell_fundamental(148);
  CHECK(x * x - 148 * y * y == 1);
  auto ref = oracle::least_pell(148, 10000);
  REQUIRE(ref.has_value());
  CHECK(x == ref->first);
  CHECK(y == ref->second);
  CHECK_THROWS_AS(pell_fundamental(49), InvalidInput);
  CHECK_THROWS_AS(pell_fundamental(0), InvalidInput);
}

TEST_CASE("pell fundamental is minimal for D up to 1000") {
  const std::int64_t bound = 20000;
  for (std::int64_t D = 2; D <= 1000; ++D) {
    std::int64_t r = oracle::isqrt64(D);
    if (r * r == D) continue;
    auto [x, y] = pell_fundamental(D);
    REQUIRE(x * x - D * y * y == 1);
    REQUIRE(y > 0);
    auto ref = oracle::least_pell(D, y <= bound ? to_int64(y) : bound);
    if (y <= bound) {
      REQUIRE(ref.has_value());
      REQUIRE(Int(ref->second) == y);
    } else {
      REQUIRE_FALSE(ref.has_value());
    }
  }
}

TEST_CASE("solver agrees with exhaustive search on random equations") {
  oracle::Rng rng(24);
  int solvable = 0, unsolvable = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<std::int64_t, 6> k{};
    for (auto& x : k) x = rng.uniform(-20, 20);
    auto q = eq(k[0], k[1], k[2], k[3], k[4], k[5]);
    auto c = solve(q);
    check_sound(c);
    auto hit = oracle::search_conic(k, 2000);
    if (hit) {
      INFO(format_equation(q));
      REQUIRE(c.solvable());
    }
    (c.solvable() ? solvable : unsolvable)++;
  }
  CHECK(solvable > 100);
  CHECK(unsolvable > 100);
}

TEST_CASE("hyperbolic equations with larger coefficients") {
  oracle::Rng rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<std::int64_t, 6> k{};
    k[0] = rng.uniform(-60, 60);
    k[1] = rng.uniform(-200, 200);
    k[2] = rng.uniform(-60, 60);
    k[3] = rng.uniform(-30, 30);
    k[4] = rng.uniform(-30, 30);
    k[5] = rng.uniform(-500, 500);
    auto q = eq(k[0], k[1], k[2], k[3], k[4], k[5]);
    if (q.discriminant() <= 0) continue;
    auto c = solve(q);
    check_sound(c);
    if (oracle::search_conic(k, 500)) {
      INFO(format_equation(q));
      REQUIRE(c.solvable());
    }
  }
}

TEST_CASE("recurrence closure on Pell-type families") {
  for (std::int64_t D : {2, 3, 7, 13, 61, 148}) {
    auto c = solve(eq(1, 0, -D, 0, 0, -1));
    REQUIRE(c.status == SolveStatus::Solvable);
    REQUIRE_FALSE(c.fundamental_solutions.empty());
    check_sound(c);
    for (const auto& f : c.fundamental_solutions) REQUIRE(f.step.has_value());
  }
  auto shifted = solve(eq(2, 0, -74, 2, 0, 2));
  check_sound(shifted);
  auto star3 = solve(eq(2, 0, -14, 2, 0, 2));
  REQUIRE(star3.status == SolveStatus::Solvable);
  check_sound(star3);
}

TEST_CASE("canonical witness order") {
  CHECK(canonical_less({1, 0}, {0, 1}));
  CHECK(canonical_less({1, 1}, {-1, 1}));
  CHECK(canonical_less({2, 1}, {1, 2}));
  auto c = solve(eq(1, 0, -2, 0, 0, 1));
  REQUIRE(c.witness.has_value());
  CHECK(c.witness == Point{1, 1});
}

TEST_CASE("sieve schedule") {
  auto m = default_sieve_moduli(Int(-33 * 4), 256);
  CHECK(std::find(m.begin(), m.end(), 3) != m.end());
  CHECK(std::find(m.begin(), m.end(), 64) != m.end());
  CHECK(std::is_sorted(m.begin(), m.end()));
  SolveOptions off;
  off.sieve = false;
  auto c = solve(eq(4, -33, 66, 0, 0, 1), off);
  CHECK(c.status == SolveStatus::Unsolvable);
  CHECK_FALSE(c.obstruction.has_value());
}

TEST_CASE("twelve dimensional example equation") {
  // The equation printed for h^2 = 2210 is the one from the h^2 = 1160 case.
  QuadraticDiophantine printed = eq(9, -145, 580, 0, 0, 1);
  CHECK(solve(printed).status == SolveStatus::Unsolvable);
  CHECK(solve(eq(9, -145, 580, 0, 0, -1)).status == SolveStatus::Unsolvable);

  auto at = [](const MukaiVector& v) {
    for (const auto& p : enumerate_walls(v).pairs)
      if (p.m == -2 && p.k == 0) return *p.certificate;
    FAIL("pair (-2, 0) missing");
    return SolvabilityCertificate{};
  };
  auto ten = at(MukaiVector(8, 1, 72, 580));
  auto twelve = at(MukaiVector(10, 1, 110, 1105));
  // Discriminants of the homogeneous parts separate the two cases.
  CHECK(ten.equation.discriminant() == 145);
  CHECK(printed.discriminant() == 145);
  CHECK(twelve.equation.discriminant() == 221);
  CHECK(twelve.status == SolveStatus::Unsolvable);

  QuadraticDiophantine derived = eq(11, -221, 1105, 0, 0, 1);
  auto dc = solve(derived);
  CHECK(dc.status == SolveStatus::Unsolvable);
  REQUIRE(dc.obstruction.has_value());
  CHECK(dc.obstruction->modulus == 13);
  CHECK(solve(eq(11, -221, 1105, 0, 0, -1)).status == SolveStatus::Unsolvable);
}

TEST_CASE("solve is deterministic") {
  auto a = solve(eq(3, 7, -5, 2, -9, 11));
  auto b = solve(eq(3, 7, -5, 2, -9, 11));
  CHECK(a.status == b.status);
  CHECK(a.witness == b.witness);
  CHECK(a.method == b.method);
  CHECK(a.fundamental_solutions.size() == b.fundamental_solutions.size());
}
