#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace skdt {

struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An element of GF(p^k), stored as the base-p digit encoding of its
// coefficient vector: ix = a0 + a1*p + ... + a_{k-1}*p^{k-1}, constant term
// least significant. Trivially copyable; all arithmetic lives on the context.
struct FieldElement {
  std::uint32_t ix = 0;
  friend bool operator==(FieldElement a, FieldElement b) { return a.ix == b.ix; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.ix != b.ix; }
  friend bool operator<(FieldElement a, FieldElement b) { return a.ix < b.ix; }
};

// Arithmetic context for GF(p^k), k <= 4. The modulus is the monic
// irreducible of degree k whose non-leading coefficient vector
// (a_{k-1},...,a_0) is lexicographically smallest, i.e. the one of smallest
// integer encoding; this makes every count in the toolkit reproducible
// byte-for-byte. Small fields (p^k <= kTableLimit) get full multiplication
// and inverse tables for tight counting loops; larger ones compute per call.
class FieldContext {
 public:
  static constexpr std::uint32_t kTableLimit = 4096;

  FieldContext(std::int64_t p, int k);

  std::int64_t p() const { return p_; }
  int k() const { return k_; }
  std::uint32_t size() const { return n_; }
  // modulus coefficients a0..a_{k-1} (the monic leading 1 implied)
  const std::array<std::int64_t, 4>& modulus() const { return modulus_; }
  std::string describe() const;  // e.g. "GF(25) = GF(5^2), modulus x^2+2"

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  // canonical embedding of an integer through the prime subfield
  FieldElement embed(std::int64_t v) const;
  // coefficient vector a0..a_{k-1} of an element
  std::array<std::int64_t, 4> coeffs(FieldElement a) const;
  FieldElement from_coeffs(const std::array<std::int64_t, 4>& c) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::int64_t e) const;

  bool is_square(FieldElement a) const;
  // first square root in enumeration order, if any
  bool sqrt(FieldElement a, FieldElement& out) const;
  bool is_cube(FieldElement a) const;

  bool has_tables() const { return !mul_table_.empty(); }
  // raw table access for hot counting loops (valid only when has_tables())
  const std::uint32_t* mul_row(std::uint32_t a) const { return &mul_table_[a * n_]; }
  const std::uint32_t* add_row(std::uint32_t a) const { return &add_table_[a * n_]; }

 private:
  void check(FieldElement a) const {
    if (a.ix >= n_) throw field_error("element out of range for this field");
  }
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;

  std::int64_t p_ = 0;
  int k_ = 0;
  std::uint32_t n_ = 0;
  std::array<std::int64_t, 4> modulus_{};  // a0..a_{k-1}
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<std::uint32_t> neg_table_;
  std::vector<bool> square_table_;
  std::vector<bool> cube_table_;
};

FieldContext make_field(std::int64_t p, int k);

// all p^k elements exactly once, ascending coefficient-lex order
std::vector<FieldElement> enumerate(const FieldContext& ctx);

// all x with x^3 = a; size 0, 1 or 3
std::vector<FieldElement> cube_roots(const FieldContext& ctx, FieldElement a);

}  // namespace skdt
