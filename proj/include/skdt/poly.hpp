#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skdt/finite_field.hpp"
#include "skdt/rational.hpp"

namespace skdt {

// Process-wide interning of polynomial variable names. Slots are handed out
// on first use and never reused, so exponent vectors from different call
// sites stay compatible.
class VarTable {
 public:
  static constexpr int kMaxVars = 24;
  static int index_of(std::string_view name);        // interns
  static int lookup(std::string_view name);          // -1 if absent
  static const std::string& name_of(int i);
  static int count();
};

using Mono = std::array<std::uint8_t, VarTable::kMaxVars>;

// Sparse multivariate polynomial with exact rational coefficients.
// Term order is the lexicographic order on exponent vectors, which makes
// printing and equality deterministic. Built for symbolic fidelity, not for
// inner counting loops (those compile their own evaluators).
class Poly {
 public:
  Poly() = default;
  Poly(Rational c) { if (!c.is_zero()) terms_[Mono{}] = c; }
  Poly(std::int64_t c) : Poly(Rational(c)) {}
  static Poly var(std::string_view name);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Mono, Rational>& terms() const { return terms_; }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(int e) const;

  int degree_in(int var) const;
  // coefficient of var^deg, as a polynomial in the remaining variables
  Poly coeff_of(int var, int deg) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }
  std::vector<int> variables() const;

  Poly subs(int var, const Poly& value) const;

  // evaluation over a finite field; `values` maps variable slot -> element,
  // and every rational coefficient must have denominator invertible mod p
  FieldElement eval(const FieldContext& ctx,
                    const std::vector<FieldElement>& values) const;

  std::string str() const;  // deterministic, e.g. "2*r*v*z + (1/3)*c*n^3"

 private:
  std::map<Mono, Rational> terms_;
};

}  // namespace skdt
