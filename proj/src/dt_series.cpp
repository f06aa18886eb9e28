#include "skdt/dt_series.hpp"

#include <stdexcept>

#include "skdt/counting.hpp"

namespace skdt {

namespace {

MotiveExpr L() { return MotiveExpr::L(); }

MotiveExpr sym(const char* n) { return MotiveExpr::symbol(n); }

}  // namespace

MotiveExpr n1_motive() {
  return (L() - MotiveExpr(1)) * sym("E_DT") + MotiveExpr(1) - sym("S_DT");
}

MotiveExpr n2_motive() {
  return sym("E_c") - (L() * L() + L() + MotiveExpr(1));
}

MotiveExpr gl2_class() {
  return (L() * L() - MotiveExpr(1)) * (L() * L() - L());
}

SeriesInputs canonical_inputs() { return {n1_motive(), n2_motive()}; }

SeriesInputs generic_inputs() { return {sym("A"), sym("B")}; }

MotiveExpr conjecture_coefficient(int order, const SeriesInputs& in) {
  // Geometric sums over the factor index j >= 2 of the rank-one brackets:
  //   s1 = sum L^-j = 1/(L(L-1)),   s2 = sum L^-2j = 1/(L^2(L^2-1)).
  MotiveExpr s1 = MotiveExpr(1) / (L() * (L() - MotiveExpr(1)));
  MotiveExpr s2 =
      MotiveExpr(1) / (L() * L() * (L() * L() - MotiveExpr(1)));
  if (order == 1) return s1 * in.n1;
  if (order != 2)
    throw std::invalid_argument("conjecture_coefficient: order must be 1 or 2");
  // t^2 sources: unordered factor pairs (j1 < j2), the degree-two bracket of
  // a single factor, the k = 2 brackets, and the rank-two factor itself.
  MotiveExpr pairs = (s1 * s1 - s2) / MotiveExpr(2);
  MotiveExpr sig = s2;
  MotiveExpr k2 = s1;
  MotiveExpr n2f = L() / (L() - MotiveExpr(1));
  return pairs * in.n1 * in.n1 + k2 * in.n1 + sig * sigma2(in.n1) +
         n2f * in.n2;
}

MotiveExpr display_coefficient(int order, const SeriesInputs& in) {
  MotiveExpr Lm = L();
  MotiveExpr one(1);
  if (order == 1)
    return MotiveExpr::half_L(-2) * in.n1 / (Lm - one);
  if (order != 2)
    throw std::invalid_argument("display_coefficient: order must be 1 or 2");
  MotiveExpr l2m1 = Lm * Lm - one;
  MotiveExpr num = Lm * l2m1 * in.n2 +
                   MotiveExpr::half_L(-4) * in.n1 * in.n1 +
                   MotiveExpr::half_L(-2) * l2m1 * in.n1 +
                   MotiveExpr::half_L(-4) * (Lm - one) * sigma2(in.n1);
  return num / (l2m1 * (Lm - one));
}

std::array<MotiveExpr, 3> truncated_series(const SeriesInputs& in, int J) {
  if (J < 2) throw std::invalid_argument("truncated_series: J must be >= 2");
  MotiveExpr one(1), zero(0);
  // series coefficients of t^0, t^1, t^2
  std::array<MotiveExpr, 3> acc = {one, zero, zero};
  auto mul_factor = [&acc](const MotiveExpr& f1, const MotiveExpr& f2) {
    // acc *= 1 + f1 t + f2 t^2, truncated past t^2
    MotiveExpr a0 = acc[0];
    MotiveExpr a1 = acc[1] + a0 * f1;
    MotiveExpr a2 = acc[2] + acc[1] * f1 + a0 * f2;
    acc = {a0, a1, a2};
  };
  MotiveExpr s2a = sigma2(in.n1);
  for (int j = 2; j <= J; ++j) {
    MotiveExpr w = MotiveExpr::half_L(-2 * j);
    mul_factor(w * in.n1, w * w * s2a);     // k = 1 bracket
    mul_factor(zero, w * in.n1);            // k = 2 bracket
  }
  // exact tails over j > J
  MotiveExpr g1 = MotiveExpr::half_L(-2 * J) / (L() - one);
  MotiveExpr g2 = MotiveExpr::half_L(-4 * J) / (L() * L() - one);
  MotiveExpr tail1 = g1 * in.n1;
  MotiveExpr tail2 = (g1 * g1 - g2) / MotiveExpr(2) * in.n1 * in.n1 +
                     g2 * s2a + g1 * in.n1;
  mul_factor(tail1, tail2);
  // rank-two bracket, in closed form
  mul_factor(zero, L() / (L() - one) * in.n2);
  return acc;
}

std::map<std::string, Rational> evaluate_symbolic(const MotiveExpr& e,
                                                  const Rational& Lval) {
  std::map<std::string, Rational> out;
  Rational den = e.den().eval_at_L(Lval);
  if (den.is_zero())
    throw arithmetic_error("evaluate_symbolic: denominator vanishes");
  for (const auto& [mono, z] : e.num_terms()) {
    std::string key;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (!key.empty()) key += "*";
      const std::string& nm = SymTable::name_of(static_cast<int>(i));
      std::string base = SymTable::sigma_base(static_cast<int>(i)) >= 0
                             ? nm
                             : "[" + nm + "]";
      key += base;
      if (mono[i] > 1) key += "^" + std::to_string(int(mono[i]));
    }
    if (key.empty()) key = "1";
    Rational v = z.eval_at_L(Lval) / den;
    auto it = out.find(key);
    if (it == out.end())
      out[key] = v;
    else
      it->second = it->second + v;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

MotiveExpr recursion_coefficient(const MotiveExpr& delta_bs,
                                 const MotiveExpr& delta_m1) {
  MotiveExpr one(1);
  return (delta_bs + L() * L() / (L() - one) * delta_m1 * delta_m1) *
         MotiveExpr::half_L(-8) / (L() * L() - one);
}

MotiveExpr theorem_coefficient(bool strict_mu3) {
  MotiveExpr one(1);
  MotiveExpr mu2 = strict_mu3 ? sym("MU3") * sym("MU3_4")
                              : sym("MU3") * sym("MU3");
  MotiveExpr n1 = n1_motive();
  MotiveExpr num = L() * (L() * L() * L() - one) -
                   MotiveExpr(2) * mu2 * (L() - one) +
                   MotiveExpr::half_L(-4) * n1 * n1;
  return num / ((L() * L() - one) * (L() - one));
}

MotiveExpr stratified_bs(bool strict_mu3) {
  MotiveExpr dx = strict_mu3 ? -(sym("MU3_4") * L()) : -(sym("MU3") * L());
  return MotiveExpr::half_L(14) + MotiveExpr::half_L(12) +
         MotiveExpr::half_L(10) +
         MotiveExpr(2) * MotiveExpr::half_L(6) * sym("MU3") * dx;
}

Discrepancy discrepancy_report(const std::vector<std::int64_t>& qs,
                               const std::vector<std::int64_t>& cs,
                               bool strict_mu3, int threads) {
  Discrepancy d;
  MotiveExpr conj = conjecture_coefficient(2, canonical_inputs());
  MotiveExpr thm = theorem_coefficient(strict_mu3);
  d.symbolic = conj - thm;
  d.numerator_mentions_ec = d.symbolic.mentions("E_c");
  for (std::int64_t q : qs) {
    for (std::int64_t c : cs) {
      CountBundle b = curve_counts_bundle(q, c, threads);
      DiscrepancyRow row;
      row.q = q;
      row.c = c;
      row.conjectured = count_specialize(conj, b);
      row.computed = count_specialize(thm, b);
      row.gap = row.conjectured - row.computed;
      d.rows.push_back(row);
    }
  }
  return d;
}

}  // namespace skdt
