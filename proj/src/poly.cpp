#include "skdt/poly.hpp"

#include <mutex>
#include <stdexcept>

namespace skdt {

namespace {
struct Registry {
  std::vector<std::string> names;
  std::mutex m;
};
Registry& registry() {
  static Registry r;
  return r;
}
}  // namespace

int VarTable::index_of(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.m);
  for (std::size_t i = 0; i < r.names.size(); ++i)
    if (r.names[i] == name) return static_cast<int>(i);
  if (r.names.size() >= kMaxVars) throw std::runtime_error("variable table full");
  r.names.emplace_back(name);
  return static_cast<int>(r.names.size() - 1);
}

int VarTable::lookup(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.m);
  for (std::size_t i = 0; i < r.names.size(); ++i)
    if (r.names[i] == name) return static_cast<int>(i);
  return -1;
}

const std::string& VarTable::name_of(int i) {
  auto& r = registry();
  std::lock_guard lock(r.m);
  return r.names.at(static_cast<std::size_t>(i));
}

int VarTable::count() {
  auto& r = registry();
  std::lock_guard lock(r.m);
  return static_cast<int>(r.names.size());
}

Poly Poly::var(std::string_view name) {
  Mono m{};
  m[static_cast<std::size_t>(VarTable::index_of(name))] = 1;
  Poly p;
  p.terms_[m] = Rational(1);
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms_) {
    auto it = r.terms_.find(m);
    if (it == r.terms_.end()) {
      r.terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Mono m;
      for (std::size_t i = 0; i < m.size(); ++i) {
        int e = ma[i] + mb[i];
        if (e > 255) throw std::runtime_error("monomial exponent overflow");
        m[i] = static_cast<std::uint8_t>(e);
      }
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        Rational c = ca * cb;
        if (!c.is_zero()) r.terms_[m] = c;
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::runtime_error("negative polynomial power");
  Poly r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, int(m[var]));
  return d;
}

Poly Poly::coeff_of(int var, int deg) const {
  Poly r;
  for (const auto& [m, c] : terms_)
    if (m[var] == deg) {
      Mono m2 = m;
      m2[var] = 0;
      r.terms_[m2] = c;
    }
  return r;
}

std::vector<int> Poly::variables() const {
  std::vector<int> out;
  for (int v = 0; v < VarTable::kMaxVars; ++v)
    if (degree_in(v) > 0) out.push_back(v);
  return out;
}

Poly Poly::subs(int var, const Poly& value) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    Mono m2 = m;
    int e = m2[var];
    m2[var] = 0;
    Poly base;
    base.terms_[m2] = Rational(1);
    term *= base;
    term *= value.pow(e);
    r += term;
  }
  return r;
}

FieldElement Poly::eval(const FieldContext& ctx,
                        const std::vector<FieldElement>& values) const {
  FieldElement acc = ctx.zero();
  for (const auto& [m, c] : terms_) {
    if (c.den() % ctx.p() == 0)
      throw field_error("coefficient denominator not invertible in field");
    FieldElement t = ctx.div(ctx.embed(c.num()), ctx.embed(c.den()));
    for (std::size_t v = 0; v < m.size(); ++v)
      for (int e = 0; e < m[v]; ++e) {
        if (v >= values.size()) throw field_error("missing variable value");
        t = ctx.mul(t, values[v]);
      }
    acc = ctx.add(acc, t);
  }
  return acc;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    bool neg = c < Rational(0);
    Rational a = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string factors;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) {
        if (!factors.empty()) factors += "*";
        factors += VarTable::name_of(static_cast<int>(v));
        if (m[v] > 1) factors += "^" + std::to_string(int(m[v]));
      }
    if (factors.empty()) {
      out += a.str();
    } else {
      if (a != Rational(1)) {
        out += a.is_integer() ? a.str() : "(" + a.str() + ")";
        out += "*";
      }
      out += factors;
    }
  }
  return out;
}

}  // namespace skdt
