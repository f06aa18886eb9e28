#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skdt/motive.hpp"
#include "skdt/rational.hpp"

namespace skdt {

// Canonical series inputs: N1 = (L-1)[E_DT] + 1 - [S_DT] and
// N2 = [E_c] - (L^2 + L + 1).
MotiveExpr n1_motive();
MotiveExpr n2_motive();
// (L^2 - 1)(L^2 - L), the general linear group class used by the recursion.
MotiveExpr gl2_class();

struct SeriesInputs {
  MotiveExpr n1, n2;
};
SeriesInputs canonical_inputs();
// Opaque symbols [A], [B] in place of N1, N2 — lets tests separate the
// series combinatorics from the curve-count content.
SeriesInputs generic_inputs();

// t^order coefficient (order 1 or 2) of the product form of the series,
// assembled from the factor structure by summing the geometric tails in
// closed form.
MotiveExpr conjecture_coefficient(int order, const SeriesInputs& in);

// The pinned closed displays for the same coefficients.
MotiveExpr display_coefficient(int order, const SeriesInputs& in);

// t^0..t^2 of the defining product, truncated at factor index J, with the
// exact tail of every bracket restored in closed form. Independent of J.
std::array<MotiveExpr, 3> truncated_series(const SeriesInputs& in, int J);

// Coefficient-extraction view: evaluates every L-power at Lval and returns
// the coordinates of e in the monomial basis of its symbols
// (key "1" for the scalar part, else e.g. "[A]", "[A]^2", "sigma2([A])").
std::map<std::string, Rational> evaluate_symbolic(const MotiveExpr& e,
                                                  const Rational& Lval);

// (delta_bs + L^2/(L-1) * delta_m1^2) * L^-4 / (L^2 - 1).
MotiveExpr recursion_coefficient(const MotiveExpr& delta_bs,
                                 const MotiveExpr& delta_m1);

// The computed second coefficient:
// (L(L^3-1) - 2*mu^2*(L-1) + L^-2 N1^2) / ((L^2-1)(L-1)), where mu^2 is
// [MU3]^2, or [MU3]*[MU3_4] when the branch-count correction is applied.
MotiveExpr theorem_coefficient(bool strict_mu3);

// The stratified rank-two count L^7 + L^6 + L^5 + 2 L^3 [MU3] * dX with the
// chart contribution dX = -[MU3]*L (or -[MU3_4]*L under the correction).
MotiveExpr stratified_bs(bool strict_mu3);

struct DiscrepancyRow {
  std::int64_t q = 0;
  std::int64_t c = 0;
  Rational conjectured, computed, gap;
};

struct Discrepancy {
  MotiveExpr symbolic;             // conjectured - computed
  bool numerator_mentions_ec = false;
  std::vector<DiscrepancyRow> rows;
};

// Symbolic difference of the two second coefficients plus its numeric
// specializations over the given (q, c) grid.
Discrepancy discrepancy_report(const std::vector<std::int64_t>& qs,
                               const std::vector<std::int64_t>& cs,
                               bool strict_mu3, int threads = 1);

}  // namespace skdt
