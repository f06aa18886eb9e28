#include "skdt/motive.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace skdt {

namespace {

using detail::i128;

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// ZPoly

ZPoly::ZPoly(std::int64_t constant) {
  if (constant != 0) c_.push_back(constant);
}

ZPoly ZPoly::s_power(int k) {
  if (k < 0) throw arithmetic_error("s_power: negative exponent");
  ZPoly r;
  r.c_.assign(static_cast<std::size_t>(k) + 1, 0);
  r.c_.back() = 1;
  return r;
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t ZPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

std::int64_t ZPoly::leading() const {
  if (c_.empty()) throw arithmetic_error("leading coefficient of zero");
  return c_.back();
}

int ZPoly::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& v : r.c_) v = detail::narrow(-i128(v));
  return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = detail::narrow(i128(coeff(static_cast<int>(i))) +
                             i128(o.coeff(static_cast<int>(i))));
  r.trim();
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return ZPoly();
  std::vector<i128> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      acc[i + j] += i128(c_[i]) * i128(o.c_[j]);
  }
  ZPoly r;
  r.c_.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = detail::narrow(acc[i]);
  r.trim();
  return r;
}

std::int64_t ZPoly::content() const {
  std::int64_t g = 0;
  for (auto v : c_) g = gcd64(g, v);
  return g;
}

ZPoly ZPoly::divided_by_int(std::int64_t g) const {
  if (g == 0) throw arithmetic_error("division by zero content");
  ZPoly r = *this;
  for (auto& v : r.c_) {
    if (v % g != 0) throw arithmetic_error("inexact integer division of ZPoly");
    v /= g;
  }
  r.trim();
  return r;
}

ZPoly ZPoly::shifted_down(int k) const {
  if (k == 0) return *this;
  if (is_zero()) return *this;
  if (low_degree() < k) throw arithmetic_error("shifted_down would lose terms");
  ZPoly r;
  r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

ZPoly ZPoly::shifted_up(int k) const {
  if (k == 0 || is_zero()) return *this;
  ZPoly r;
  r.c_.assign(static_cast<std::size_t>(k), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

ZPoly ZPoly::divided_by(const ZPoly& d) const {
  if (d.is_zero()) throw arithmetic_error("ZPoly division by zero");
  if (is_zero()) return ZPoly();
  if (degree() < d.degree()) throw arithmetic_error("inexact ZPoly division");
  // Long division over Q, then insist on an integral, remainder-free result.
  std::vector<Rational> rem(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) rem[i] = Rational(c_[i]);
  int dd = d.degree();
  Rational dl(d.leading());
  std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd) + 1);
  for (int k = degree() - dd; k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + dd)] / dl;
    quo[static_cast<std::size_t>(k)] = f;
    if (!f.is_zero()) {
      for (int i = 0; i <= dd; ++i)
        rem[static_cast<std::size_t>(k + i)] =
            rem[static_cast<std::size_t>(k + i)] - f * Rational(d.coeff(i));
    }
  }
  for (int i = 0; i < dd; ++i)
    if (!rem[static_cast<std::size_t>(i)].is_zero())
      throw arithmetic_error("inexact ZPoly division (remainder)");
  ZPoly r;
  r.c_.resize(quo.size());
  for (std::size_t i = 0; i < quo.size(); ++i) {
    if (!quo[i].is_integer())
      throw arithmetic_error("inexact ZPoly division (fractional quotient)");
    r.c_[i] = quo[i].num();
  }
  r.trim();
  return r;
}

bool ZPoly::has_odd_power() const {
  for (std::size_t i = 1; i < c_.size(); i += 2)
    if (c_[i] != 0) return true;
  return false;
}

Rational ZPoly::eval_at_L(const Rational& q) const {
  if (has_odd_power())
    throw arithmetic_error("cannot specialize: odd half power of L survives");
  Rational acc(0);
  Rational p(1);
  for (std::size_t i = 0; i < c_.size(); i += 2) {
    if (c_[i] != 0) acc = acc + Rational(c_[i]) * p;
    p = p * q;
  }
  return acc;
}

ZPoly ZPoly::gcd(const ZPoly& a, const ZPoly& b) {
  // Primitive pseudo-remainder sequence on __int128 scratch vectors. The
  // primitive parts themselves can pass 2^63 midway even when both inputs and
  // the final gcd are small, so the whole sequence runs in 128 bits and only
  // the (primitive, small) result is narrowed back.
  using V = std::vector<i128>;
  auto gcd128 = [](i128 u, i128 v) {
    if (u < 0) u = -u;
    if (v < 0) v = -v;
    while (v != 0) {
      i128 t = u % v;
      u = v;
      v = t;
    }
    return u;
  };
  constexpr i128 kCap = i128(1) << 62;  // keeps every product within 128 bits
  auto primitive = [&](V v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    i128 ct = 0;
    for (auto c : v) ct = gcd128(ct, c);
    if (ct > 1)
      for (auto& c : v) c /= ct;
    if (!v.empty() && v.back() < 0)
      for (auto& c : v) c = -c;
    for (auto c : v)
      if (c >= kCap || c <= -kCap)
        throw arithmetic_error("ZPoly gcd coefficient blowup");
    return v;
  };
  auto lift = [&](const ZPoly& p) {
    return primitive(V(p.c_.begin(), p.c_.end()));
  };
  // A single Euclid mod a prime not dividing either leading coefficient
  // certifies a trivial gcd (the generic case) without any growth at all.
  auto mod_gcd_trivial = [](const V& a0, const V& b0) -> bool {
    for (std::int64_t p : {2147483647ll, 2147483629ll, 2147483587ll}) {
      if (a0.back() % p == 0 || b0.back() % p == 0) continue;
      auto red = [p](const V& src) {
        std::vector<std::int64_t> v;
        v.reserve(src.size());
        for (auto c : src)
          v.push_back(static_cast<std::int64_t>(((c % p) + p) % p));
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
      };
      auto mulmod = [p](std::int64_t u, std::int64_t w) {
        return static_cast<std::int64_t>(i128(u) * w % p);
      };
      auto invmod = [&](std::int64_t u) {
        std::int64_t r = 1, e = p - 2;
        while (e) {
          if (e & 1) r = mulmod(r, u);
          u = mulmod(u, u);
          e >>= 1;
        }
        return r;
      };
      auto u = red(a0), v = red(b0);
      if (u.size() < v.size()) std::swap(u, v);
      while (!v.empty()) {
        std::int64_t vli = invmod(v.back());
        while (u.size() >= v.size() && !u.empty()) {
          std::size_t k = u.size() - v.size();
          std::int64_t f = mulmod(u.back(), vli);
          for (std::size_t j = 0; j < v.size(); ++j) {
            u[k + j] -= mulmod(f, v[j]);
            if (u[k + j] < 0) u[k + j] += p;
          }
          while (!u.empty() && u.back() == 0) u.pop_back();
        }
        std::swap(u, v);
      }
      return u.size() == 1;
    }
    return false;
  };
  V x = lift(a), y = lift(b);
  if (x.size() < y.size()) std::swap(x, y);
  if (y.size() > 1 && mod_gcd_trivial(x, y)) return ZPoly(1);
  while (!y.empty()) {
    V r = x;
    while (r.size() >= y.size() && !r.empty()) {
      std::size_t k = r.size() - y.size();
      i128 rl = r.back(), yl = y.back();
      i128 g = gcd128(rl, yl);
      i128 fr = yl / g, fy = rl / g;
      for (auto& c : r) c *= fr;
      for (std::size_t j = 0; j < y.size(); ++j) r[k + j] -= fy * y[j];
      r = primitive(std::move(r));
    }
    x = std::move(y);
    y = std::move(r);
  }
  ZPoly out;
  out.c_.reserve(x.size());
  for (auto c : x) out.c_.push_back(detail::narrow(c));
  out.trim();
  return out;
}

std::string ZPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    std::int64_t v = coeff(i);
    if (v == 0) continue;
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    std::int64_t av = v < 0 ? -v : v;
    std::string lpart;
    if (i == 0) {
      lpart = "";
    } else if (i == 2) {
      lpart = "L";
    } else if (i % 2 == 0) {
      lpart = "L^" + std::to_string(i / 2);
    } else {
      lpart = "L^(" + std::to_string(i) + "/2)";
    }
    if (lpart.empty()) {
      os << av;
    } else if (av == 1) {
      os << lpart;
    } else {
      os << av << "*" << lpart;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SymTable

namespace {

struct SymEntry {
  std::string name;
  int sigma_of = -1;
};

struct SymRegistry {
  std::vector<SymEntry> entries;
  std::mutex mu;
  static SymRegistry& get() {
    static SymRegistry r;
    return r;
  }
};

}  // namespace

int SymTable::index_of(const std::string& name) {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  for (std::size_t i = 0; i < reg.entries.size(); ++i)
    if (reg.entries[i].name == name) return static_cast<int>(i);
  if (reg.entries.size() >= kMaxSyms)
    throw arithmetic_error("symbol table full");
  reg.entries.push_back({name, -1});
  return static_cast<int>(reg.entries.size()) - 1;
}

int SymTable::lookup(const std::string& name) {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  for (std::size_t i = 0; i < reg.entries.size(); ++i)
    if (reg.entries[i].name == name) return static_cast<int>(i);
  return -1;
}

int SymTable::sigma_index(int base_index) {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  for (std::size_t i = 0; i < reg.entries.size(); ++i)
    if (reg.entries[i].sigma_of == base_index) return static_cast<int>(i);
  if (base_index < 0 || base_index >= static_cast<int>(reg.entries.size()))
    throw arithmetic_error("sigma_index: unknown base symbol");
  if (reg.entries.size() >= kMaxSyms)
    throw arithmetic_error("symbol table full");
  std::string nm =
      "sigma2([" + reg.entries[static_cast<std::size_t>(base_index)].name +
      "])";
  reg.entries.push_back({nm, base_index});
  return static_cast<int>(reg.entries.size()) - 1;
}

const std::string& SymTable::name_of(int index) {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  return reg.entries.at(static_cast<std::size_t>(index)).name;
}

int SymTable::sigma_base(int index) {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  return reg.entries.at(static_cast<std::size_t>(index)).sigma_of;
}

int SymTable::count() {
  auto& reg = SymRegistry::get();
  std::lock_guard<std::mutex> lock(reg.mu);
  return static_cast<int>(reg.entries.size());
}

// ---------------------------------------------------------------------------
// MotiveExpr

namespace {

SymMono empty_mono() {
  SymMono m{};
  m.fill(0);
  return m;
}

bool mono_is_empty(const SymMono& m) {
  for (auto e : m)
    if (e != 0) return false;
  return true;
}

SymMono mono_mul(const SymMono& a, const SymMono& b) {
  SymMono r{};
  for (std::size_t i = 0; i < r.size(); ++i) {
    int e = int(a[i]) + int(b[i]);
    if (e > 255) throw arithmetic_error("symbol exponent overflow");
    r[i] = static_cast<std::uint8_t>(e);
  }
  return r;
}

}  // namespace

MotiveExpr::MotiveExpr(std::int64_t n) : den_(1) {
  if (n != 0) num_[empty_mono()] = ZPoly(n);
}

MotiveExpr MotiveExpr::L() { return half_L(2); }

MotiveExpr MotiveExpr::half_L(int k) {
  MotiveExpr r;
  if (k >= 0) {
    r.num_[empty_mono()] = ZPoly::s_power(k);
    r.den_ = ZPoly(1);
  } else {
    r.num_[empty_mono()] = ZPoly(1);
    r.den_ = ZPoly::s_power(-k);
  }
  return r;
}

MotiveExpr MotiveExpr::symbol(const std::string& name) {
  int ix = SymTable::index_of(name);
  SymMono m = empty_mono();
  m[static_cast<std::size_t>(ix)] = 1;
  MotiveExpr r;
  r.num_[m] = ZPoly(1);
  r.den_ = ZPoly(1);
  return r;
}

bool MotiveExpr::is_symbol_free() const {
  for (const auto& [m, z] : num_)
    if (!mono_is_empty(m)) return false;
  return true;
}

bool MotiveExpr::mentions(const std::string& name) const {
  int ix = SymTable::lookup(name);
  if (ix < 0) return false;
  for (const auto& [m, z] : num_)
    if (m[static_cast<std::size_t>(ix)] != 0) return true;
  return false;
}

MotiveExpr MotiveExpr::make(std::map<SymMono, ZPoly> num, ZPoly den) {
  MotiveExpr r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.canonicalize();
  return r;
}

void MotiveExpr::canonicalize() {
  if (den_.is_zero()) throw arithmetic_error("zero denominator");
  for (auto it = num_.begin(); it != num_.end();) {
    if (it->second.is_zero())
      it = num_.erase(it);
    else
      ++it;
  }
  if (num_.empty()) {
    den_ = ZPoly(1);
    return;
  }
  // Cancel the common power of s shared by numerator and denominator.
  int low = den_.low_degree();
  for (const auto& [m, z] : num_) low = std::min(low, z.low_degree());
  if (low > 0) {
    den_ = den_.shifted_down(low);
    for (auto& [m, z] : num_) z = z.shifted_down(low);
  }
  // Integer content.
  std::int64_t g = den_.content();
  for (const auto& [m, z] : num_) g = gcd64(g, z.content());
  if (g > 1) {
    den_ = den_.divided_by_int(g);
    for (auto& [m, z] : num_) z = z.divided_by_int(g);
  }
  // Polynomial content shared with the denominator.
  if (den_.degree() > 0) {
    ZPoly pg = den_;
    for (const auto& [m, z] : num_) {
      pg = ZPoly::gcd(pg, z);
      if (pg.degree() == 0) break;
    }
    if (pg.degree() > 0) {
      den_ = den_.divided_by(pg);
      for (auto& [m, z] : num_) z = z.divided_by(pg);
    }
  }
  if (den_.leading() < 0) {
    den_ = -den_;
    for (auto& [m, z] : num_) z = -z;
  }
}

MotiveExpr MotiveExpr::operator-() const {
  std::map<SymMono, ZPoly> num;
  for (const auto& [m, z] : num_) num[m] = -z;
  return make(std::move(num), den_);
}

MotiveExpr MotiveExpr::operator+(const MotiveExpr& o) const {
  // a/b + c/d = (a*d + c*b) / (b*d); canonicalization re-reduces.
  std::map<SymMono, ZPoly> num;
  for (const auto& [m, z] : num_) num[m] = z * o.den_;
  for (const auto& [m, z] : o.num_) {
    auto it = num.find(m);
    if (it == num.end())
      num[m] = z * den_;
    else
      it->second = it->second + z * den_;
  }
  return make(std::move(num), den_ * o.den_);
}

MotiveExpr MotiveExpr::operator-(const MotiveExpr& o) const {
  return *this + (-o);
}

MotiveExpr MotiveExpr::operator*(const MotiveExpr& o) const {
  std::map<SymMono, ZPoly> num;
  for (const auto& [ma, za] : num_) {
    for (const auto& [mb, zb] : o.num_) {
      SymMono m = mono_mul(ma, mb);
      ZPoly prod = za * zb;
      auto it = num.find(m);
      if (it == num.end())
        num[m] = std::move(prod);
      else
        it->second = it->second + prod;
    }
  }
  return make(std::move(num), den_ * o.den_);
}

MotiveExpr MotiveExpr::operator/(const MotiveExpr& o) const {
  if (o.is_zero()) throw arithmetic_error("division by zero");
  if (!o.is_symbol_free())
    throw arithmetic_error("division by a symbol-carrying expression");
  const ZPoly& u = o.num_.at(empty_mono());
  std::map<SymMono, ZPoly> num;
  for (const auto& [m, z] : num_) num[m] = z * o.den_;
  return make(std::move(num), den_ * u);
}

MotiveExpr MotiveExpr::pow(int e) const {
  if (e < 0) return MotiveExpr(1) / pow(-e);
  MotiveExpr r(1);
  MotiveExpr base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::string MotiveExpr::str() const {
  if (num_.empty()) return "0";
  std::ostringstream num_os;
  bool first = true;
  for (const auto& [m, z] : num_) {
    std::string zs = z.str();
    bool zcomposite = zs.find(" + ") != std::string::npos ||
                      zs.find(" - ") != std::string::npos;
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < int(m[i]); ++e) {
        if (!factors.empty()) factors += "*";
        const std::string& nm = SymTable::name_of(static_cast<int>(i));
        if (SymTable::sigma_base(static_cast<int>(i)) >= 0)
          factors += nm;  // already printed as sigma2([...])
        else
          factors += "[" + nm + "]";
      }
    }
    std::string term;
    if (factors.empty()) {
      term = zs;
    } else if (zcomposite) {
      term = "(" + zs + ")*" + factors;
    } else if (zs == "1") {
      term = factors;
    } else if (zs == "-1") {
      term = "-" + factors;
    } else {
      term = zs + "*" + factors;
    }
    if (first) {
      num_os << term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      num_os << " - " << term.substr(1);
    } else {
      num_os << " + " << term;
    }
  }
  if (den_ == ZPoly(1)) return num_os.str();
  return "(" + num_os.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// sigma2

namespace {

// One additive term of a sigma2-admissible expression: a * s^d * [sym]?
struct SplitTerm {
  std::int64_t a = 0;
  int sdeg = 0;       // relative to the cancelled denominator power
  int sym = -1;       // -1 for a pure L-power term
};

MotiveExpr sym_by_index(int ix) {
  return MotiveExpr::symbol(SymTable::name_of(ix));
}

MotiveExpr sigma2_atom(int base_ix) {
  int six = SymTable::sigma_index(base_ix);
  return sym_by_index(six);
}

MotiveExpr sigma2_term(const SplitTerm& t) {
  if (t.sdeg % 2 != 0)
    throw arithmetic_error(
        "sigma2: odd half power of L multiplies a term; not supported");
  MotiveExpr shift = MotiveExpr::half_L(2 * t.sdeg);
  std::int64_t a = t.a;
  if (t.sym < 0) {
    // sigma2 of the integer a.
    i128 tri = i128(a) * i128(a + 1) / 2;
    return shift * MotiveExpr(detail::narrow(tri));
  }
  // sigma2(a*S) = a*sigma2(S) + C(a,2)*S^2 for any integer a.
  i128 choose2 = i128(a) * i128(a - 1) / 2;
  MotiveExpr s = sym_by_index(t.sym);
  return shift * (MotiveExpr(a) * sigma2_atom(t.sym) +
                  MotiveExpr(detail::narrow(choose2)) * s * s);
}

MotiveExpr term_value(const SplitTerm& t) {
  MotiveExpr v = MotiveExpr(t.a) * MotiveExpr::half_L(t.sdeg);
  if (t.sym >= 0) v = v * sym_by_index(t.sym);
  return v;
}

}  // namespace

MotiveExpr sigma2(const MotiveExpr& x) {
  // The denominator must be a bare power of s: sigma2 is only defined here
  // on Z[L^{\pm 1/2}]-combinations of plain symbols.
  const ZPoly& d = x.den_;
  int dlow = d.low_degree();
  if (d.is_zero() || d.degree() != dlow || d.leading() != 1)
    throw arithmetic_error(
        "sigma2: input must be a Z[L^{\xc2\xb1}]-combination of symbols "
        "(denominator is not a power of L)");
  int k = dlow;  // x = num / s^k
  std::vector<SplitTerm> terms;
  for (const auto& [m, z] : x.num_) {
    int sym = -1;
    int total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      total += int(m[i]);
      if (m[i] != 0) sym = static_cast<int>(i);
    }
    if (total > 1)
      throw arithmetic_error(
          "sigma2: products of symbols are outside the supported domain");
    if (sym >= 0 && SymTable::sigma_base(sym) >= 0)
      throw arithmetic_error("sigma2: nested sigma2 is not supported");
    for (int i = 0; i <= z.degree(); ++i) {
      if (z.coeff(i) == 0) continue;
      terms.push_back({z.coeff(i), i - k, sym});
    }
  }
  // sigma2(sum t_i) = sum sigma2(t_i) + sum_{i<j} t_i * t_j.
  MotiveExpr acc(0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += sigma2_term(terms[i]);
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      acc += term_value(terms[i]) * term_value(terms[j]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// count_specialize

Rational count_specialize(const MotiveExpr& x, const CountBundle& b) {
  Rational q(b.q);
  auto sym_value = [&](int ix) -> Rational {
    int base = SymTable::sigma_base(ix);
    const std::string& nm =
        SymTable::name_of(base >= 0 ? base : ix);
    auto it = b.counts.find(nm);
    if (it == b.counts.end())
      throw arithmetic_error("count_specialize: no counts for symbol '" + nm +
                             "'");
    if (base >= 0) {
      // sigma2([S]) -> (N_q^2 + N_{q^2}) / 2
      Rational nq(it->second.first);
      Rational nq2(it->second.second);
      return (nq * nq + nq2) / Rational(2);
    }
    return Rational(it->second.first);
  };
  Rational num(0);
  for (const auto& [m, z] : x.num_terms()) {
    Rational v = z.eval_at_L(q);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Rational s = sym_value(static_cast<int>(i));
      for (int e = 0; e < int(m[i]); ++e) v = v * s;
    }
    num = num + v;
  }
  Rational den = x.den().eval_at_L(q);
  if (den.is_zero())
    throw arithmetic_error("count_specialize: denominator vanishes at q");
  return num / den;
}

// ---------------------------------------------------------------------------
// parse_motive

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw arithmetic_error("parse error at offset " + std::to_string(pos) +
                           ": " + what);
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) fail("expected integer");
    return std::stoll(s.substr(start, pos - start));
  }

  MotiveExpr expr() {
    MotiveExpr acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MotiveExpr term() {
    MotiveExpr acc = factor();
    for (;;) {
      if (eat('*'))
        acc *= factor();
      else if (eat('/'))
        acc /= factor();
      else
        return acc;
    }
  }

  MotiveExpr factor() {
    MotiveExpr base = atom();
    if (eat('^')) {
      bool neg = eat('-');
      std::int64_t e = integer();
      MotiveExpr p = base.pow(static_cast<int>(e));
      return neg ? MotiveExpr(1) / p : p;
    }
    return base;
  }

  MotiveExpr atom() {
    skip_ws();
    if (eat('-')) return -atom();
    if (eat('(')) {
      MotiveExpr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat('[')) {
      std::size_t start = pos;
      while (pos < s.size() && s[pos] != ']') ++pos;
      if (pos == s.size()) fail("unterminated symbol name");
      std::string name = s.substr(start, pos - start);
      ++pos;
      if (name.empty()) fail("empty symbol name");
      return MotiveExpr::symbol(name);
    }
    char c = peek();
    if (c == 'L') {
      ++pos;
      if (eat('^')) {
        skip_ws();
        if (eat('(')) {
          bool neg = eat('-');
          std::int64_t a = integer();
          if (!eat('/')) fail("expected '/' in half power");
          std::int64_t b = integer();
          if (b != 2) fail("only half powers L^(k/2) are supported");
          if (!eat(')')) fail("expected ')'");
          return MotiveExpr::half_L(static_cast<int>(neg ? -a : a));
        }
        bool neg = eat('-');
        std::int64_t e = integer();
        return MotiveExpr::half_L(static_cast<int>(2 * (neg ? -e : e)));
      }
      return MotiveExpr::L();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return MotiveExpr(integer());
    }
    if (s.compare(pos, 7, "sigma2(") == 0) {
      pos += 7;
      MotiveExpr inner = expr();
      if (!eat(')')) fail("expected ')' after sigma2 argument");
      return sigma2(inner);
    }
    fail("unexpected character");
  }
};

}  // namespace

MotiveExpr parse_motive(const std::string& text) {
  Parser p(text);
  MotiveExpr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw arithmetic_error("parse error: trailing input at offset " +
                           std::to_string(p.pos));
  return e;
}

}  // namespace skdt
