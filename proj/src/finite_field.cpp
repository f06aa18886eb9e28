#include "skdt/finite_field.hpp"

#include <algorithm>

namespace skdt {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Coeffs = std::vector<std::int64_t>;

// value of a monic degree-k candidate (with non-leading coeffs `c`) at x = a
std::int64_t eval_monic(const Coeffs& c, int k, std::int64_t a, std::int64_t p) {
  std::int64_t v = 1;  // leading coefficient
  for (int i = k - 1; i >= 0; --i) v = (v * a + c[i]) % p;
  return v;
}

// remainder of monic degree-k candidate divided by monic quadratic x^2+b1*x+b0
bool divisible_by_quadratic(const Coeffs& c, int k, std::int64_t b1,
                            std::int64_t b0, std::int64_t p) {
  Coeffs r(c.begin(), c.begin() + k);
  r.push_back(1);
  for (int i = k; i >= 2; --i) {
    std::int64_t q = r[i] % p;
    if (q) {
      r[i] = 0;
      r[i - 1] = ((r[i - 1] - q * b1) % p + p) % p;
      r[i - 2] = ((r[i - 2] - q * b0) % p + p) % p;
    }
  }
  return r[0] % p == 0 && r[1] % p == 0;
}

bool is_irreducible(const Coeffs& c, int k, std::int64_t p) {
  for (std::int64_t a = 0; a < p; ++a)
    if (eval_monic(c, k, a, p) == 0) return false;
  if (k < 4) return true;
  // degree 4 also needs to exclude products of two irreducible quadratics
  for (std::int64_t b1 = 0; b1 < p; ++b1)
    for (std::int64_t b0 = 0; b0 < p; ++b0) {
      bool has_root = false;
      for (std::int64_t a = 0; a < p && !has_root; ++a)
        has_root = ((a * a + b1 * a + b0) % p == 0);
      if (!has_root && divisible_by_quadratic(c, k, b1, b0, p)) return false;
    }
  return true;
}

}  // namespace

FieldContext::FieldContext(std::int64_t p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw field_error("characteristic must be prime");
  if (k < 1 || k > 4) throw field_error("extension degree must be in 1..4");
  std::int64_t n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  if (n > (std::int64_t(1) << 31)) throw field_error("field too large");
  n_ = static_cast<std::uint32_t>(n);

  if (k == 1) {
    modulus_ = {0, 0, 0, 0};  // modulus is x itself; no stored coefficients
  } else {
    Coeffs c(k, 0);
    bool found = false;
    for (std::int64_t v = 0; v < n && !found; ++v) {
      std::int64_t t = v;
      for (int i = 0; i < k; ++i) {
        c[i] = t % p;
        t /= p;
      }
      if (is_irreducible(c, k, p)) found = true;
    }
    if (!found) throw field_error("no irreducible modulus found");
    for (int i = 0; i < k; ++i) modulus_[i] = c[i];
  }

  if (n_ <= kTableLimit) {
    mul_table_.resize(std::size_t(n_) * n_);
    add_table_.resize(std::size_t(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = a; b < n_; ++b) {
        std::uint32_t m = mul_slow(a, b);
        std::uint32_t s = add_slow(a, b);
        mul_table_[std::size_t(a) * n_ + b] = m;
        mul_table_[std::size_t(b) * n_ + a] = m;
        add_table_[std::size_t(a) * n_ + b] = s;
        add_table_[std::size_t(b) * n_ + a] = s;
      }
    neg_table_.resize(n_);
    for (std::uint32_t a = 0; a < n_; ++a) {
      auto c = coeffs({a});
      for (int i = 0; i < k_; ++i) c[i] = (p_ - c[i]) % p_;
      neg_table_[a] = from_coeffs(c).ix;
    }
    inv_table_.assign(n_, 0);
    square_table_.assign(n_, false);
    cube_table_.assign(n_, false);
    square_table_[0] = cube_table_[0] = true;
    for (std::uint32_t a = 1; a < n_; ++a) {
      std::uint32_t sq = mul_table_[std::size_t(a) * n_ + a];
      square_table_[sq] = true;
      cube_table_[mul_table_[std::size_t(sq) * n_ + a]] = true;
      if (!inv_table_[a]) {
        for (std::uint32_t b = 1; b < n_; ++b)
          if (mul_table_[std::size_t(a) * n_ + b] == 1) {
            inv_table_[a] = b;
            inv_table_[b] = a;
            break;
          }
      }
    }
  }
}

std::string FieldContext::describe() const {
  std::string s = "GF(" + std::to_string(n_) + ")";
  if (k_ > 1) {
    s += " = GF(" + std::to_string(p_) + "^" + std::to_string(k_) + "), modulus x^" +
         std::to_string(k_);
    for (int i = k_ - 1; i >= 0; --i) {
      if (!modulus_[i]) continue;
      s += "+";
      if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
      if (i >= 1) s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s;
}

FieldElement FieldContext::embed(std::int64_t v) const {
  std::int64_t r = v % p_;
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

std::array<std::int64_t, 4> FieldContext::coeffs(FieldElement a) const {
  check(a);
  std::array<std::int64_t, 4> c{};
  std::uint32_t t = a.ix;
  for (int i = 0; i < k_; ++i) {
    c[i] = t % p_;
    t /= static_cast<std::uint32_t>(p_);
  }
  return c;
}

FieldElement FieldContext::from_coeffs(const std::array<std::int64_t, 4>& c) const {
  std::uint32_t ix = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    std::int64_t d = ((c[i] % p_) + p_) % p_;
    ix = ix * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(d);
  }
  return {ix};
}

std::uint32_t FieldContext::add_slow(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    std::uint32_t s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  auto ca = coeffs({a});
  auto cb = coeffs({b});
  for (int i = 0; i < k_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
  return from_coeffs(ca).ix;
}

std::uint32_t FieldContext::mul_slow(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) * b) % n_);
  auto ca = coeffs({a});
  auto cb = coeffs({b});
  std::array<std::int64_t, 7> prod{};
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    std::int64_t q = prod[d];
    if (q) {
      prod[d] = 0;
      for (int i = 0; i < k_; ++i)
        prod[d - k_ + i] = ((prod[d - k_ + i] - q * modulus_[i]) % p_ + p_) % p_;
    }
  }
  std::array<std::int64_t, 4> c{};
  for (int i = 0; i < k_; ++i) c[i] = prod[i];
  return from_coeffs(c).ix;
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (has_tables()) return {add_table_[std::size_t(a.ix) * n_ + b.ix]};
  return {add_slow(a.ix, b.ix)};
}

FieldElement FieldContext::neg(FieldElement a) const {
  check(a);
  if (!neg_table_.empty()) return {neg_table_[a.ix]};
  auto c = coeffs(a);
  for (int i = 0; i < k_; ++i) c[i] = (p_ - c[i]) % p_;
  return from_coeffs(c);
}

FieldElement FieldContext::sub(FieldElement a, FieldElement b) const {
  return add(a, neg(b));
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (has_tables()) return {mul_table_[std::size_t(a.ix) * n_ + b.ix]};
  return {mul_slow(a.ix, b.ix)};
}

FieldElement FieldContext::pow(FieldElement a, std::int64_t e) const {
  check(a);
  if (e < 0) return pow(inv(a), -e);
  FieldElement r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FieldElement FieldContext::inv(FieldElement a) const {
  check(a);
  if (a.ix == 0) throw field_error("inverse of zero");
  if (!inv_table_.empty()) return {inv_table_[a.ix]};
  return pow(a, std::int64_t(n_) - 2);
}

FieldElement FieldContext::div(FieldElement a, FieldElement b) const {
  return mul(a, inv(b));
}

bool FieldContext::is_square(FieldElement a) const {
  check(a);
  if (!square_table_.empty()) return square_table_[a.ix];
  if (a.ix == 0) return true;
  return pow(a, (std::int64_t(n_) - 1) / 2).ix == 1;
}

bool FieldContext::sqrt(FieldElement a, FieldElement& out) const {
  check(a);
  for (std::uint32_t y = 0; y < n_; ++y)
    if (mul({y}, {y}) == a) {
      out = {y};
      return true;
    }
  return false;
}

bool FieldContext::is_cube(FieldElement a) const {
  check(a);
  if (!cube_table_.empty()) return cube_table_[a.ix];
  if (a.ix == 0) return true;
  if ((std::int64_t(n_) - 1) % 3 != 0) return true;
  return pow(a, (std::int64_t(n_) - 1) / 3).ix == 1;
}

FieldContext make_field(std::int64_t p, int k) { return FieldContext(p, k); }

std::vector<FieldElement> enumerate(const FieldContext& ctx) {
  std::vector<FieldElement> out;
  out.reserve(ctx.size());
  for (std::uint32_t i = 0; i < ctx.size(); ++i) out.push_back({i});
  return out;
}

std::vector<FieldElement> cube_roots(const FieldContext& ctx, FieldElement a) {
  std::vector<FieldElement> out;
  for (std::uint32_t x = 0; x < ctx.size(); ++x) {
    FieldElement e{x};
    if (ctx.mul(ctx.mul(e, e), e) == a) out.push_back(e);
  }
  return out;
}

}  // namespace skdt
