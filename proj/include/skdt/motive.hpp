#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skdt/rational.hpp"

namespace skdt {

// Dense univariate polynomial over Z in the formal variable s, where s^2 = L.
// Exponent i of s stands for L^(i/2); all exposed L-powers are even unless a
// quantity genuinely involves half powers (those refuse to specialize).
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(std::int64_t constant);  // NOLINT: implicit by design
  static ZPoly s_power(int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::int64_t coeff(int i) const;
  std::int64_t leading() const;
  int low_degree() const;  // smallest i with c[i] != 0; -1 for zero

  ZPoly operator-() const;
  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  std::int64_t content() const;        // gcd of coefficients, >= 0
  ZPoly divided_by_int(std::int64_t g) const;
  ZPoly shifted_down(int k) const;     // divide by s^k (requires low_degree >= k)
  ZPoly shifted_up(int k) const;

  // Exact polynomial division; throws arithmetic_error when not exact.
  ZPoly divided_by(const ZPoly& d) const;

  // Evaluate with s^2 -> q. Throws if any odd s-power survives.
  Rational eval_at_L(const Rational& q) const;
  bool has_odd_power() const;

  std::string str() const;  // in terms of L (and L^(k/2) for odd powers)

  static ZPoly gcd(const ZPoly& a, const ZPoly& b);  // primitive, leading > 0

 private:
  void trim();
  std::vector<std::int64_t> c_;  // c_[i] * s^i
};

// Registry of motive-level symbols ([E_DT], [E_c], ..., plus sigma2 atoms).
class SymTable {
 public:
  static constexpr int kMaxSyms = 24;
  static int index_of(const std::string& name);        // interns plain symbols
  static int lookup(const std::string& name);          // -1 if absent
  static int sigma_index(int base_index);              // interns sigma2 atom
  static const std::string& name_of(int index);
  static int sigma_base(int index);                    // -1 if not a sigma atom
  static int count();
};

using SymMono = std::array<std::uint8_t, SymTable::kMaxSyms>;

// Counting data used to specialize motive expressions at a prime power q:
// for each symbol name, the point counts over GF(q) and GF(q^2).
struct CountBundle {
  std::int64_t q = 0;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
};

// Element of the localized Grothendieck-style coefficient ring: a fraction
// whose numerator is a Z[s^{\pm1}]-combination of symbol monomials and whose
// denominator is a nonzero element of Z[s]. Always kept canonical: common
// s-powers and integer/polynomial content cancelled, denominator leading
// coefficient positive. Equality of canonical forms is structural equality.
class MotiveExpr {
 public:
  MotiveExpr() : den_(1) {}
  MotiveExpr(std::int64_t n);  // NOLINT: implicit by design
  static MotiveExpr L();                    // s^2
  static MotiveExpr half_L(int k);          // s^k, k may be negative
  static MotiveExpr symbol(const std::string& name);

  bool is_zero() const { return num_.empty(); }
  bool is_symbol_free() const;
  bool mentions(const std::string& name) const;

  MotiveExpr operator-() const;
  MotiveExpr operator+(const MotiveExpr& o) const;
  MotiveExpr operator-(const MotiveExpr& o) const;
  MotiveExpr operator*(const MotiveExpr& o) const;
  // Division requires a symbol-free nonzero divisor.
  MotiveExpr operator/(const MotiveExpr& o) const;
  MotiveExpr& operator+=(const MotiveExpr& o) { return *this = *this + o; }
  MotiveExpr& operator-=(const MotiveExpr& o) { return *this = *this - o; }
  MotiveExpr& operator*=(const MotiveExpr& o) { return *this = *this * o; }
  MotiveExpr& operator/=(const MotiveExpr& o) { return *this = *this / o; }
  MotiveExpr pow(int e) const;

  bool operator==(const MotiveExpr& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const MotiveExpr& o) const { return !(*this == o); }

  std::string str() const;

  const std::map<SymMono, ZPoly>& num_terms() const { return num_; }
  const ZPoly& den() const { return den_; }

  friend MotiveExpr sigma2(const MotiveExpr& x);
  friend Rational count_specialize(const MotiveExpr& x, const CountBundle& b);

 private:
  void canonicalize();
  static MotiveExpr make(std::map<SymMono, ZPoly> num, ZPoly den);

  std::map<SymMono, ZPoly> num_;
  ZPoly den_;
};

// Second symmetric power. Input must be a Z[L^{\pm1}]-combination of symbols
// with plain exponent-one monomials: sums, integer multiples and L^k shifts
// are expanded by the lambda-ring rules; anything else is rejected.
MotiveExpr sigma2(const MotiveExpr& x);

// Evaluate at a prime power: L -> q, [S] -> N_q(S), sigma2([S]) ->
// (N_q(S)^2 + N_{q^2}(S)) / 2. Throws if a symbol count is missing, an odd
// half power of L survives, or the denominator vanishes at q.
Rational count_specialize(const MotiveExpr& x, const CountBundle& b);

// Parse the textual format produced by MotiveExpr::str(): integers, L, L^k,
// L^(k/2), [Name], sigma2(expr), + - * / ^ and parentheses.
MotiveExpr parse_motive(const std::string& text);

}  // namespace skdt
