#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "skdt/counting.hpp"
#include "skdt/finite_field.hpp"
#include "skdt/strata.hpp"

using namespace skdt;

namespace {
int slot(const char* n) { return VarTable::index_of(n); }
}  // namespace

TEST_CASE("cell equations reproduce the catalog levels exactly") {
  CHECK(derive_cell_equation(1) == stratum("S1").level);
  CHECK(derive_cell_equation(2) == stratum("S2").level);
  CHECK(derive_cell_equation(3) == stratum("S3").level);
}

TEST_CASE("catalog is closed under name lookup") {
  for (const auto& n : stratum_names()) CHECK(stratum(n).name == n);
  CHECK_THROWS(stratum("S4"));
  CHECK(stratum("S1").fiber_var == "u");
  CHECK(stratum("S2").fiber_var == "x");
  CHECK(stratum("S3").fiber_var == "p");
  CHECK(stratum("X").level_scale == 3);
  CHECK(stratum("X").nonzero.size() == 1);
}

TEST_CASE("level polynomials are weight-3 homogeneous") {
  // entry (i, j) of each matrix weighs 1 + i - j; the catalog records this
  std::vector<std::pair<int, int>> w;
  for (const char* d : {"n", "r", "s", "v", "w", "z"}) w.push_back({slot(d), 1});
  for (const char* l : {"q", "u", "y"}) w.push_back({slot(l), 2});
  for (const char* u : {"p", "t", "x"}) w.push_back({slot(u), 0});
  for (const auto& sv : stratum("MW2").vars) {
    auto it = std::find_if(w.begin(), w.end(),
                           [&](auto p) { return p.first == slot(sv.name.c_str()); });
    REQUIRE(it != w.end());
    CHECK(sv.weight == it->second);
  }
  CHECK(is_weighted_homogeneous(stratum("MW2").level, w, 3));
  // MW1 and X are plain cubics: every variable weighs 1
  for (const char* n : {"MW1", "X"}) {
    std::vector<std::pair<int, int>> wc;
    for (const auto& sv : stratum(n).vars) {
      CHECK(sv.weight == 1);
      wc.push_back({slot(sv.name.c_str()), 1});
    }
    CHECK(is_weighted_homogeneous(stratum(n).level, wc, 3));
  }
  // the cells pin lower-left entries to 1, which collapses their grading:
  // the specialized equations mix weights 3 and 1 and are NOT homogeneous
  for (int cell : {1, 2, 3})
    CHECK_FALSE(is_weighted_homogeneous(derive_cell_equation(cell), w, 3));
  // negative control: a weight-1 term breaks the full-level grading
  CHECK_FALSE(is_weighted_homogeneous(
      stratum("MW2").level + Poly::var("n") * Poly::var("p"), w, 3));
}

TEST_CASE("cell representatives pin the section normalizations") {
  auto c1 = cell_rep(1);
  CHECK(c1.X(0, 0) == Poly(0));
  CHECK(c1.X(1, 0) == Poly(1));
  auto c2 = cell_rep(2);
  CHECK(c2.X(1, 0) == Poly(0));
  CHECK(c2.Y(0, 0) == Poly(0));
  CHECK(c2.Y(1, 0) == Poly(1));
  auto c3 = cell_rep(3);
  CHECK(c3.X(1, 0) == Poly(0));
  CHECK(c3.Y(1, 0) == Poly(0));
  CHECK(c3.Z(0, 0) == Poly(0));
  CHECK(c3.Z(1, 0) == Poly(1));
  CHECK_THROWS(cell_rep(4));
}

TEST_CASE("gram determinant is the degenerate-locus cubic") {
  Poly d = det_gram();
  Poly c3 = curve_c_cubic()
                .subs(slot("x"), Poly::var("u"))
                .subs(slot("y"), Poly::var("v"))
                .subs(slot("z"), Poly::var("w"));
  CHECK(d == c3);
  // fiber level cubic: 2xyz + (c/3) sum of cubes
  Poly dt = curve_dt_cubic();
  CHECK(dt.coeff_of(slot("x"), 3) == Poly(Rational(1, 3)) * Poly::var("c"));
  CHECK(dt.degree_in(slot("y")) == 3);
}

TEST_CASE("x-chart frame identity holds symbolically") {
  CHECK(x_frame_identity_holds());
}

TEST_CASE("x-chart frame change transforms the level numerically") {
  auto F = make_field(5, 2);
  auto cs = admissible_c(F);
  REQUIRE_FALSE(cs.empty());
  const Stratum& X = stratum("X");
  for (auto c : cs) {
    for (auto rho : cube_roots(F, F.one())) {
      XFrameChange fc = x_frame_change(F, c, rho);
      CHECK(F.mul(fc.alpha, fc.alpha) ==
            F.div(F.add(F.pow(c, 4), F.mul(F.embed(8), c)), F.embed(12)));
      CHECK(fc.unit == F.mul(F.embed(2), fc.alpha));
      std::vector<FieldElement> vals(VarTable::count(), F.zero());
      vals[slot("c")] = c;
      vals[slot("rho")] = rho;
      int checked = 0;
      for (std::int64_t i = 0; i < 25 && checked < 40; i += 3)
        for (std::int64_t j = 1; j < 25; j += 7, ++checked) {
          FieldElement xyz[3] = {FieldElement{std::uint32_t(i % 25)},
                                 FieldElement{std::uint32_t(j)},
                                 FieldElement{std::uint32_t((i + j) % 25)}};
          vals[slot("x")] = xyz[0];
          vals[slot("y")] = xyz[1];
          vals[slot("z")] = xyz[2];
          FieldElement uvw[3];
          for (int r = 0; r < 3; ++r) {
            uvw[r] = F.zero();
            for (int k = 0; k < 3; ++k)
              uvw[r] = F.add(uvw[r], F.mul(fc.m[r][k], xyz[k]));
          }
          // (U + W)(V^2 + U W) == unit * level / 3
          FieldElement lhs = F.mul(
              F.add(uvw[0], uvw[2]),
              F.add(F.mul(uvw[1], uvw[1]), F.mul(uvw[0], uvw[2])));
          FieldElement rhs =
              F.div(F.mul(fc.unit, X.level.eval(F, vals)), F.embed(3));
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("frame change reports which constant is missing") {
  auto F7 = make_field(7, 1);
  // c = 1 has c^3 = 1: the gamma constant degenerates
  CHECK_THROWS_AS(x_frame_change(F7, F7.embed(1), F7.one()), field_error);
  CHECK_THROWS_AS(x_frame_change(F7, F7.zero(), F7.one()), field_error);
  auto F3 = make_field(3, 1);
  CHECK_THROWS_AS(x_frame_change(F3, F3.embed(1), F3.one()), field_error);
  // rho must genuinely be a cube root of unity
  auto F25 = make_field(5, 2);
  auto cs = admissible_c(F25);
  REQUIRE_FALSE(cs.empty());
  CHECK_THROWS_AS(x_frame_change(F25, cs[0], F25.embed(2)), field_error);
}

TEST_CASE("inadmissible parameters over GF(49) are refused with a reason") {
  auto F = make_field(7, 2);
  std::string why;
  CHECK_FALSE(is_admissible(F, F.zero(), &why));
  CHECK(why.find("c = 0") != std::string::npos);
  CHECK_FALSE(is_admissible(F, F.one(), &why));
  CHECK(why.find("c^3 = 1") != std::string::npos);
}
