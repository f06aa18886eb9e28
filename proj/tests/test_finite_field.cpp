#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <set>

#include "skdt/finite_field.hpp"

using namespace skdt;

TEST_CASE("prime field arithmetic") {
  auto F = make_field(7, 1);
  auto a = F.embed(3), b = F.embed(5);
  CHECK(F.add(a, b) == F.embed(1));
  CHECK(F.mul(a, b) == F.embed(1));
  CHECK(F.sub(a, b) == F.embed(-2));
  CHECK(F.neg(a) == F.embed(4));
  CHECK(F.embed(7) == F.zero());
  CHECK(F.add(F.embed(-1), F.one()) == F.zero());
  // Fermat
  for (auto x : enumerate(F))
    if (!(x == F.zero())) CHECK(F.pow(x, 6) == F.one());
}

TEST_CASE("modulus selection is deterministic") {
  // first irreducible in the ascending integer encoding of the
  // non-leading coefficients
  auto mod = [](std::int64_t p, int k) { return make_field(p, k).modulus(); };
  using A = std::array<std::int64_t, 4>;
  CHECK(mod(2, 2) == A{1, 1, 0, 0});   // x^2+x+1
  CHECK(mod(2, 3) == A{1, 1, 0, 0});   // x^3+x+1
  CHECK(mod(2, 4) == A{1, 1, 0, 0});   // x^4+x+1
  CHECK(mod(3, 2) == A{1, 0, 0, 0});   // x^2+1
  CHECK(mod(3, 3) == A{1, 2, 0, 0});   // x^3+2x+1
  CHECK(mod(3, 4) == A{2, 1, 0, 0});   // x^4+x+2
  CHECK(mod(5, 2) == A{2, 0, 0, 0});   // x^2+2
  CHECK(mod(5, 3) == A{1, 1, 0, 0});   // x^3+x+1
  CHECK(mod(7, 2) == A{1, 0, 0, 0});   // x^2+1
  CHECK(mod(11, 2) == A{1, 0, 0, 0});  // x^2+1
  CHECK(mod(13, 2) == A{2, 0, 0, 0});  // x^2+2
  CHECK(mod(13, 4) == A{2, 0, 0, 0});  // x^4+2
  CHECK(make_field(5, 2).describe().find("GF(25)") != std::string::npos);
}

TEST_CASE("enumeration is a bijection onto q elements") {
  for (auto [p, k] : {std::pair{5, 2}, {7, 2}, {3, 3}, {13, 1}}) {
    auto F = make_field(p, k);
    auto all = enumerate(F);
    std::int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    CHECK(std::int64_t(all.size()) == q);
    std::set<std::uint32_t> seen;
    for (auto e : all) seen.insert(e.ix);
    CHECK(std::int64_t(seen.size()) == q);
  }
}

TEST_CASE("extension field inverses and Frobenius") {
  auto F = make_field(7, 2);
  for (auto a : enumerate(F)) {
    if (a == F.zero()) continue;
    CHECK(F.mul(a, F.inv(a)) == F.one());
  }
  auto G = make_field(3, 3);
  for (auto a : enumerate(G))
    for (auto b : {G.embed(2), G.from_coeffs({1, 2, 0, 0})})
      CHECK(G.pow(G.add(a, b), 3) == G.add(G.pow(a, 3), G.pow(b, 3)));
}

TEST_CASE("coeffs round-trips through from_coeffs") {
  auto F = make_field(5, 2);
  for (auto a : enumerate(F)) CHECK(F.from_coeffs(F.coeffs(a)) == a);
  CHECK(F.coeffs(F.embed(3)) == std::array<std::int64_t, 4>{3, 0, 0, 0});
}

TEST_CASE("squares and square roots") {
  auto F = make_field(5, 2);
  int squares = 0;
  for (auto a : enumerate(F)) {
    if (!F.is_square(a)) continue;
    ++squares;
    FieldElement r{};
    CHECK(F.sqrt(a, r));
    CHECK(F.mul(r, r) == a);
  }
  CHECK(squares == 13);  // (25-1)/2 nonzero squares plus zero
  // a known non-square: any generator times a square misses half the field
  int non = 0;
  for (auto a : enumerate(F)) non += !F.is_square(a);
  CHECK(non == 12);
}

TEST_CASE("cube roots of 1 and of 4") {
  auto mu = [](std::int64_t p, int k, std::int64_t target) {
    auto F = make_field(p, k);
    auto roots = cube_roots(F, F.embed(target));
    for (auto r : roots) CHECK(F.pow(r, 3) == F.embed(target));
    return std::int64_t(roots.size());
  };
  CHECK(mu(5, 1, 1) == 1);
  CHECK(mu(7, 1, 1) == 3);
  CHECK(mu(13, 1, 1) == 3);
  CHECK(mu(5, 2, 1) == 3);
  CHECK(mu(7, 2, 1) == 3);
  CHECK(mu(5, 1, 4) == 1);
  CHECK(mu(7, 1, 4) == 0);
  CHECK(mu(13, 1, 4) == 0);
  CHECK(mu(5, 2, 4) == 3);
  CHECK(mu(7, 2, 4) == 0);
}

TEST_CASE("is_cube agrees with direct root search") {
  auto F = make_field(7, 2);
  for (auto a : enumerate(F))
    CHECK(F.is_cube(a) == !cube_roots(F, a).empty());
}

TEST_CASE("lookup tables match the polynomial arithmetic") {
  auto F = make_field(3, 2);
  REQUIRE(F.has_tables());
  for (auto a : enumerate(F))
    for (auto b : enumerate(F)) {
      CHECK(F.mul_row(a.ix)[b.ix] == F.mul(a, b).ix);
      CHECK(F.add_row(a.ix)[b.ix] == F.add(a, b).ix);
    }
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(make_field(6, 1), field_error);
  CHECK_THROWS_AS(make_field(5, 5), field_error);
  CHECK_THROWS_AS(make_field(5, 0), field_error);
  auto F = make_field(5, 1);
  CHECK_THROWS_AS(F.inv(F.zero()), field_error);
}
