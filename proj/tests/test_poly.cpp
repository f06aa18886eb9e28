#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "skdt/eigen_poly.hpp"
#include "skdt/finite_field.hpp"
#include "skdt/poly.hpp"

using namespace skdt;

namespace {
Poly V(const char* n) { return Poly::var(n); }
int slot(const char* n) { return VarTable::index_of(n); }
}  // namespace

TEST_CASE("ring arithmetic and canonical equality") {
  Poly x = V("x"), y = V("y");
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x + y).pow(2) == x * x + Poly(2) * x * y + y * y);
  CHECK(x - x == Poly(0));
  CHECK(Poly(0) * x == Poly(0));
  CHECK((x + Poly(1)).pow(3) ==
        x.pow(3) + Poly(3) * x.pow(2) + Poly(3) * x + Poly(1));
  CHECK(-x == Poly(0) - x);
}

TEST_CASE("degree, coefficient extraction, variables") {
  Poly x = V("x"), y = V("y");
  Poly f = Poly(Rational(1, 3)) * x.pow(3) + Poly(2) * x * y + y;
  CHECK(f.degree_in(slot("x")) == 3);
  CHECK(f.degree_in(slot("y")) == 1);
  CHECK(f.coeff_of(slot("x"), 1) == Poly(2) * y);
  CHECK(f.coeff_of(slot("x"), 3) == Poly(Rational(1, 3)));
  CHECK(f.coeff_of(slot("x"), 0) == y);
  CHECK(f.depends_on(slot("x")));
  CHECK_FALSE(f.depends_on(slot("z")));
  auto vars = f.variables();
  CHECK(vars.size() == 2);
}

TEST_CASE("substitution") {
  Poly x = V("x"), y = V("y");
  Poly f = x * x + y;
  CHECK(f.subs(slot("x"), y + Poly(1)) ==
        y * y + Poly(2) * y + Poly(1) + y);
  CHECK(f.subs(slot("y"), Poly(0)) == x * x);
  // substituting an absent variable is the identity
  CHECK(f.subs(slot("w"), Poly(5)) == f);
}

TEST_CASE("evaluation over a finite field") {
  auto F = make_field(7, 1);
  Poly x = V("x"), y = V("y");
  Poly f = x.pow(3) + Poly(2) * x * y - y + Poly(5);
  std::vector<FieldElement> vals(VarTable::count(), F.zero());
  for (std::int64_t a = 0; a < 7; ++a)
    for (std::int64_t b = 0; b < 7; ++b) {
      vals[slot("x")] = F.embed(a);
      vals[slot("y")] = F.embed(b);
      CHECK(f.eval(F, vals) == F.embed(a * a * a + 2 * a * b - b + 5));
    }
}

TEST_CASE("rational coefficients embed through modular inverses") {
  auto F = make_field(5, 1);
  Poly x = V("x");
  Poly f = Poly(Rational(1, 3)) * x;  // 1/3 = 2 mod 5
  std::vector<FieldElement> vals(VarTable::count(), F.zero());
  vals[slot("x")] = F.embed(3);
  CHECK(f.eval(F, vals) == F.embed(1));
  // char 3 cannot clear the denominator
  auto G = make_field(3, 1);
  std::vector<FieldElement> gvals(VarTable::count(), G.zero());
  CHECK_THROWS_AS(f.eval(G, gvals), field_error);
}

TEST_CASE("printing is deterministic and readable") {
  Poly x = V("x"), y = V("y");
  Poly f = Poly(2) * x * y + Poly(Rational(1, 3)) * x.pow(3);
  CHECK(f.str() == (Poly(Rational(1, 3)) * x.pow(3) + Poly(2) * x * y).str());
  CHECK(f.str().find("x") != std::string::npos);
  CHECK(Poly(0).str() == "0");
}

TEST_CASE("polynomial matrices through Eigen") {
  Poly x = V("x"), y = V("y"), z = V("z");
  PolyMat2 A, B;
  A << x, y, Poly(0), z;
  B << z, Poly(1), y, x;
  PolyMat2 C = A * B;
  CHECK(C(0, 0) == x * z + y * y);
  CHECK(C(0, 1) == x + x * y);
  CHECK((A * B + B * A).trace() == Poly(4) * x * z + Poly(2) * y * y);
  PolyMat3 M = PolyMat3::Zero();
  M(0, 0) = x;
  M(1, 1) = y;
  M(2, 2) = z;
  CHECK((M * M)(1, 1) == y * y);
  CHECK(M.transpose()(2, 2) == z);
}
