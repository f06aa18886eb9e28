#include "skdt/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

namespace skdt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Compiled polynomial evaluation: rational coefficients embedded once,
// parameters folded into the coefficients, variables resolved to positions in
// the stratum's enumeration order.

class CompiledPoly {
 public:
  CompiledPoly() = default;

  CompiledPoly(const Poly& p, const FieldContext& F,
               const std::vector<int>& slot_order,
               const std::vector<std::pair<int, FieldElement>>& params) {
    std::array<int, VarTable::kMaxVars> pos;
    pos.fill(-1);
    for (std::size_t i = 0; i < slot_order.size(); ++i)
      pos[static_cast<std::size_t>(slot_order[i])] = static_cast<int>(i);
    std::array<int, VarTable::kMaxVars> par;
    par.fill(-1);
    std::vector<FieldElement> parval;
    for (const auto& [slot, val] : params) {
      par[static_cast<std::size_t>(slot)] = static_cast<int>(parval.size());
      parval.push_back(val);
    }
    for (const auto& [mono, coef] : p.terms()) {
      Term t;
      std::int64_t den = coef.den() % F.p();
      if (den == 0)
        throw field_error("coefficient denominator not invertible here");
      t.coef = F.div(F.embed(coef.num()), F.embed(coef.den()));
      for (std::size_t s = 0; s < mono.size(); ++s) {
        int e = mono[s];
        if (e == 0) continue;
        if (par[s] >= 0) {
          t.coef = F.mul(t.coef,
                         F.pow(parval[static_cast<std::size_t>(par[s])], e));
        } else if (pos[s] >= 0) {
          t.pw.emplace_back(pos[s], e);
        } else {
          throw std::logic_error("compiled polynomial uses unbound variable " +
                                 VarTable::name_of(static_cast<int>(s)));
        }
      }
      if (t.coef != F.zero()) terms_.push_back(std::move(t));
    }
  }

  FieldElement eval(const FieldContext& F, const FieldElement* v) const {
    FieldElement acc = F.zero();
    for (const auto& t : terms_) {
      FieldElement x = t.coef;
      for (auto [p, e] : t.pw) x = F.mul(x, F.pow(v[p], e));
      acc = F.add(acc, x);
    }
    return acc;
  }

 private:
  struct Term {
    FieldElement coef;
    std::vector<std::pair<int, int>> pw;  // (position, exponent)
  };
  std::vector<Term> terms_;
};

std::vector<int> slot_order_of(const Stratum& st,
                               const std::string& skip = "") {
  std::vector<int> order;
  for (const auto& v : st.vars)
    if (v.name != skip) order.push_back(v.var);
  return order;
}

std::vector<std::pair<int, FieldElement>> param_binding(const Stratum& st,
                                                        FieldElement c,
                                                        FieldElement rho) {
  std::vector<std::pair<int, FieldElement>> params;
  for (const auto& pname : st.params)
    params.emplace_back(VarTable::index_of(pname),
                        pname == "rho" ? rho : c);
  return params;
}

void check_feasible(double points, const char* what) {
  if (points > 5e9)
    throw std::invalid_argument(std::string(what) +
                                ": enumeration would exceed 5e9 points");
}

// ---------------------------------------------------------------------------
// Generic strategies.

LevelCounts count_direct(const Stratum& st, const FieldContext& F,
                         FieldElement c, FieldElement rho) {
  auto t0 = Clock::now();
  std::vector<int> order = slot_order_of(st);
  auto params = param_binding(st, c, rho);
  CompiledPoly level(st.level, F, order, params);
  std::vector<CompiledPoly> nz;
  for (const auto& g : st.nonzero) nz.emplace_back(g, F, order, params);
  const std::uint32_t n = F.size();
  const std::size_t nv = order.size();
  check_feasible(std::pow(double(n), double(nv)), "direct");
  FieldElement t_lo = F.zero();
  FieldElement t_hi = F.embed(st.level_scale);
  std::vector<FieldElement> v(nv, F.zero());
  std::int64_t n0 = 0, n1 = 0;
  // odometer over all affine tuples
  for (;;) {
    bool live = true;
    for (const auto& g : nz)
      if (g.eval(F, v.data()) == F.zero()) {
        live = false;
        break;
      }
    if (live) {
      FieldElement lv = level.eval(F, v.data());
      if (lv == t_lo) ++n0;
      if (lv == t_hi) ++n1;
    }
    std::size_t i = 0;
    while (i < nv) {
      if (++v[i].ix < n) break;
      v[i].ix = 0;
      ++i;
    }
    if (i == nv) break;
  }
  return {{n0, n1}, seconds_since(t0), "direct"};
}

LevelCounts count_fiber(const Stratum& st, const FieldContext& F,
                        FieldElement c, FieldElement rho) {
  auto t0 = Clock::now();
  if (st.fiber_var.empty())
    throw std::invalid_argument("stratum " + st.name +
                                " has no linear fiber variable");
  int fslot = VarTable::index_of(st.fiber_var);
  if (st.level.degree_in(fslot) > 1)
    throw std::logic_error("fiber variable is not linear in the level");
  for (const auto& g : st.nonzero)
    if (g.depends_on(fslot))
      throw std::logic_error("open condition depends on the fiber variable");
  Poly A = st.level.coeff_of(fslot, 1);
  Poly B = st.level.coeff_of(fslot, 0);
  std::vector<int> order = slot_order_of(st, st.fiber_var);
  auto params = param_binding(st, c, rho);
  CompiledPoly ca(A, F, order, params), cb(B, F, order, params);
  std::vector<CompiledPoly> nz;
  for (const auto& g : st.nonzero) nz.emplace_back(g, F, order, params);
  const std::uint32_t n = F.size();
  const std::size_t nv = order.size();
  check_feasible(std::pow(double(n), double(nv)), "linear_fiber");
  FieldElement t_lo = F.zero();
  FieldElement t_hi = F.embed(st.level_scale);
  std::vector<FieldElement> v(nv, F.zero());
  std::int64_t n0 = 0, n1 = 0;
  for (;;) {
    bool live = true;
    for (const auto& g : nz)
      if (g.eval(F, v.data()) == F.zero()) {
        live = false;
        break;
      }
    if (live) {
      FieldElement a = ca.eval(F, v.data());
      if (a != F.zero()) {
        ++n0;
        ++n1;
      } else {
        FieldElement b = cb.eval(F, v.data());
        if (b == t_lo) n0 += n;
        if (b == t_hi) n1 += n;
      }
    }
    std::size_t i = 0;
    while (i < nv) {
      if (++v[i].ix < n) break;
      v[i].ix = 0;
      ++i;
    }
    if (i == nv) break;
  }
  return {{n0, n1}, seconds_since(t0), "linear_fiber"};
}

// ---------------------------------------------------------------------------
// Threads: split [0, total) into chunks, sum the per-chunk accumulators.

template <typename Work>
std::array<std::int64_t, 4> run_chunks(int total, int threads, Work work) {
  threads = std::max(1, std::min(threads, total));
  if (threads == 1) return work(0, total);
  std::vector<std::array<std::int64_t, 4>> parts(
      static_cast<std::size_t>(threads), {0, 0, 0, 0});
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    int lo = total * t / threads;
    int hi = total * (t + 1) / threads;
    pool.emplace_back([&parts, t, lo, hi, &work] {
      parts[static_cast<std::size_t>(t)] = work(lo, hi);
    });
  }
  for (auto& th : pool) th.join();
  std::array<std::int64_t, 4> acc{0, 0, 0, 0};
  for (const auto& p : parts)
    for (int i = 0; i < 4; ++i) acc[i] += p[i];
  return acc;
}

std::int64_t prime_of(const FieldContext& F, const char* who) {
  if (F.k() != 1)
    throw std::invalid_argument(std::string(who) +
                                " requires a prime field");
  return F.p();
}

// ---------------------------------------------------------------------------
// Specialized counters. All take counts for lambda = 0 and 1 in one pass.

// S3: free p-fiber with coefficient v+s over the 5 cubic variables, then the
// residual level K enumerated incrementally in t and x.
LevelCounts s3_specialized(const FieldContext& F, FieldElement ce) {
  auto tstart = Clock::now();
  const std::int64_t q = prime_of(F, "specialized S3");
  const std::int64_t c = ce.ix;
  const std::int64_t c3 = F.div(ce, F.embed(3)).ix;
  std::vector<std::int64_t> cube(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i)
    cube[static_cast<std::size_t>(i)] = i * i % q * i % q;
  std::int64_t both = 0, m0 = 0, m1 = 0;
  for (std::int64_t n = 0; n < q; ++n)
    for (std::int64_t r = 0; r < q; ++r)
      for (std::int64_t s = 0; s < q; ++s)
        for (std::int64_t v = 0; v < q; ++v)
          for (std::int64_t z = 0; z < q; ++z) {
            if ((v + s) % q != 0) {
              both += q * q;  // one p per target for every (t, x)
              continue;
            }
            std::int64_t base =
                (c3 * ((cube[n] + cube[r] + cube[s] + cube[v] + cube[z]) % q) +
                 2 * r % q * v % q * z) %
                q;
            std::int64_t dt = (n + r) % q;
            std::int64_t dx = c * z % q;
            std::int64_t kt = base;
            for (std::int64_t t = 0; t < q; ++t) {
              std::int64_t K = kt;
              for (std::int64_t x = 0; x < q; ++x) {
                m0 += (K == 0);
                m1 += (K == 1);
                K += dx;
                if (K >= q) K -= q;
              }
              kt += dt;
              if (kt >= q) kt -= q;
            }
          }
  return {{both + q * m0, both + q * m1}, seconds_since(tstart),
          "specialized"};
}

// S1: the (u, y) plane is fibered off analytically; the two linear
// coefficients a, b and the residual level K are walked incrementally over
// the innermost t and x loops.
LevelCounts s1_specialized(const FieldContext& F, FieldElement ce,
                           int threads) {
  auto tstart = Clock::now();
  const std::int64_t q = prime_of(F, "specialized S1");
  const std::int64_t c = ce.ix;
  const std::int64_t c3 = F.div(ce, F.embed(3)).ix;
  std::vector<std::int64_t> cube(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i)
    cube[static_cast<std::size_t>(i)] = i * i % q * i % q;
  auto work = [&](int plo, int phi) -> std::array<std::int64_t, 4> {
    std::int64_t M = 0, M0 = 0, M1 = 0;
    for (std::int64_t p = plo; p < phi; ++p)
      for (std::int64_t r = 0; r < q; ++r)
        for (std::int64_t s = 0; s < q; ++s)
          for (std::int64_t v = 0; v < q; ++v)
            for (std::int64_t w = 0; w < q; ++w)
              for (std::int64_t z = 0; z < q; ++z) {
                const std::int64_t a0 = p * ((w + z) % q) % q;
                const std::int64_t at = c * ((v + s) % q) % q;
                const std::int64_t ax = r;
                const std::int64_t b0 = p * ((v + s) % q) % q;
                const std::int64_t bt = r;
                const std::int64_t bx = c * ((z + w) % q) % q;
                const std::int64_t K0 =
                    (c3 * ((cube[r] + cube[s] + cube[v] + cube[w] + cube[z]) %
                           q) +
                     2 * r % q * v % q * z + c * p % q * r) %
                    q;
                const std::int64_t Kt = (z + w) % q;
                const std::int64_t Kx = (s + v) % q;
                std::int64_t a1 = a0, b1 = b0, K1 = K0;
                for (std::int64_t t = 0; t < q; ++t) {
                  std::int64_t a = a1, b = b1, K = K1;
                  for (std::int64_t x = 0; x < q; ++x) {
                    if ((a | b) == 0) {
                      ++M;
                      M0 += (K == 0);
                      M1 += (K == 1);
                    }
                    a += ax;
                    if (a >= q) a -= q;
                    b += bx;
                    if (b >= q) b -= q;
                    K += Kx;
                    if (K >= q) K -= q;
                  }
                  a1 += at;
                  if (a1 >= q) a1 -= q;
                  b1 += bt;
                  if (b1 >= q) b1 -= q;
                  K1 += Kt;
                  if (K1 >= q) K1 -= q;
                }
              }
    return {M, M0, M1, 0};
  };
  auto [M, M0, M1, unused] = run_chunks(static_cast<int>(q), threads, work);
  (void)unused;
  std::int64_t q8 = 1;
  for (int i = 0; i < 8; ++i) q8 *= q;
  std::int64_t open_part = q * (q8 - M);
  return {{open_part + q * q * M0, open_part + q * q * M1},
          seconds_since(tstart),
          "specialized"};
}

// S2: the (x, y) plane of the level is K + beta*x + (alpha + gamma*x)*y;
// its fiber count over a target has a three-way closed form.
LevelCounts s2_specialized(const FieldContext& F, FieldElement ce,
                           int threads) {
  auto tstart = Clock::now();
  const std::int64_t q = prime_of(F, "specialized S2");
  const std::int64_t c = ce.ix;
  const std::int64_t c3 = F.div(ce, F.embed(3)).ix;
  std::vector<std::int64_t> cube(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i)
    cube[static_cast<std::size_t>(i)] = i * i % q * i % q;
  auto work = [&](int nlo, int nhi) -> std::array<std::int64_t, 4> {
    std::int64_t n0 = 0, n1 = 0;
    for (std::int64_t n = nlo; n < nhi; ++n)
      for (std::int64_t p = 0; p < q; ++p)
        for (std::int64_t r = 0; r < q; ++r)
          for (std::int64_t v = 0; v < q; ++v)
            for (std::int64_t w = 0; w < q; ++w)
              for (std::int64_t z = 0; z < q; ++z) {
                const std::int64_t beta = (n + r) % q;
                const std::int64_t gamma = c * ((z + w) % q) % q;
                const std::int64_t dK = c * v % q;
                const std::int64_t dal = beta;
                std::int64_t K =
                    (c3 * ((cube[n] + cube[r] + cube[v] + cube[w] + cube[z]) %
                           q) +
                     2 * r % q * v % q * z + (w + z) % q * p) %
                    q;
                std::int64_t al = p * v % q;
                for (std::int64_t t = 0; t < q; ++t) {
                  if (gamma != 0) {
                    // T(lambda) = gamma*(lambda - K) + alpha*beta
                    std::int64_t T0 = (gamma * ((q - K) % q) + al * beta) % q;
                    std::int64_t T1 = T0 + gamma;
                    if (T1 >= q) T1 -= q;
                    n0 += (T0 != 0) ? q - 1 : 2 * q - 1;
                    n1 += (T1 != 0) ? q - 1 : 2 * q - 1;
                  } else if (al != 0 || beta != 0) {
                    n0 += q;
                    n1 += q;
                  } else {
                    if (K == 0) n0 += q * q;
                    if (K == 1) n1 += q * q;
                  }
                  al += dal;
                  if (al >= q) al -= q;
                  K += dK;
                  if (K >= q) K -= q;
                }
              }
    return {n0, n1, 0, 0};
  };
  auto [n0, n1, u2, u3] = run_chunks(static_cast<int>(q), threads, work);
  (void)u2;
  (void)u3;
  return {{n0, n1}, seconds_since(tstart), "specialized"};
}

// X chart: for fixed (x, y) the level is a quadratic in z, so the fiber size
// is 1 + chi(disc); needs field tables.
LevelCounts x_specialized(const FieldContext& F, FieldElement c,
                          FieldElement rho) {
  auto tstart = Clock::now();
  if (!F.has_tables())
    throw std::invalid_argument("specialized X counter needs field tables");
  const std::uint32_t n = F.size();
  FieldElement rho2 = F.mul(rho, rho);
  FieldElement A = F.mul(F.embed(3), F.mul(rho, c));
  FieldElement c2 = F.mul(c, c), c3 = F.mul(c2, c), c4 = F.mul(c3, c);
  std::int64_t n0 = 0, n1 = 0;
  if (A == F.zero()) {
    // degenerate quadratic (c = 0 or bad characteristic): walk z directly
    FieldElement three = F.embed(3);
    for (std::uint32_t xi = 1; xi < n; ++xi)
      for (std::uint32_t yi = 0; yi < n; ++yi)
        for (std::uint32_t zi = 0; zi < n; ++zi) {
          FieldElement x{xi}, y{yi}, z{zi};
          FieldElement Fv = F.add(
              F.sub(F.mul(F.mul(three, F.mul(rho, c)), F.mul(z, z)),
                    F.mul(F.mul(three, F.mul(rho2, c)), F.mul(x, z))),
              F.add(F.mul(F.embed(6), F.mul(y, z)),
                    F.add(F.mul(F.add(c4, F.mul(F.embed(2), c)), F.mul(x, x)),
                          F.sub(F.mul(F.mul(three, F.mul(rho2, c2)),
                                      F.mul(y, y)),
                                F.mul(F.mul(three, F.mul(rho, c3)),
                                      F.mul(x, y))))));
          FieldElement lev = F.mul(x, Fv);
          if (lev == F.zero()) ++n0;
          if (lev == three) ++n1;
        }
    return {{n0, n1}, seconds_since(tstart), "specialized"};
  }
  FieldElement fourA = F.mul(F.embed(4), A);
  FieldElement twelveA = F.mul(F.embed(12), A);
  FieldElement cB1 = F.neg(F.mul(F.embed(3), F.mul(rho2, c)));  // * x
  FieldElement cC1 = F.add(c4, F.mul(F.embed(2), c));           // * x^2
  FieldElement cC2 = F.neg(F.mul(F.embed(3), F.mul(rho, c3)));  // * x*y
  FieldElement cC3 = F.mul(F.embed(3), F.mul(rho2, c2));        // * y^2
  for (std::uint32_t xi = 1; xi < n; ++xi) {
    FieldElement x{xi};
    FieldElement bx = F.mul(cB1, x);
    FieldElement cxx = F.mul(cC1, F.mul(x, x));
    FieldElement shift = F.mul(twelveA, F.inv(x));
    for (std::uint32_t yi = 0; yi < n; ++yi) {
      FieldElement y{yi};
      FieldElement B = F.add(bx, F.mul(F.embed(6), y));
      FieldElement C = F.add(cxx, F.add(F.mul(cC2, F.mul(x, y)),
                                        F.mul(cC3, F.mul(y, y))));
      FieldElement d0 = F.sub(F.mul(B, B), F.mul(fourA, C));
      FieldElement d1 = F.add(d0, shift);
      auto chi = [&](FieldElement d) -> int {
        if (d == F.zero()) return 0;
        return F.is_square(d) ? 1 : -1;
      };
      n0 += 1 + chi(d0);
      n1 += 1 + chi(d1);
    }
  }
  return {{n0, n1}, seconds_since(tstart), "specialized"};
}

// MW1: plain table-driven triple loop.
LevelCounts mw1_specialized(const FieldContext& F, FieldElement c) {
  auto tstart = Clock::now();
  if (!F.has_tables())
    throw std::invalid_argument("specialized MW1 counter needs field tables");
  const std::uint32_t n = F.size();
  FieldElement c3 = F.div(c, F.embed(3));
  FieldElement two = F.embed(2);
  std::vector<FieldElement> cube(n);
  for (std::uint32_t i = 0; i < n; ++i)
    cube[i] = F.mul(FieldElement{i}, F.mul(FieldElement{i}, FieldElement{i}));
  std::int64_t n0 = 0, n1 = 0;
  FieldElement one = F.one();
  for (std::uint32_t xi = 0; xi < n; ++xi)
    for (std::uint32_t yi = 0; yi < n; ++yi) {
      FieldElement txy = F.mul(two, F.mul(FieldElement{xi}, FieldElement{yi}));
      FieldElement sxy = F.add(cube[xi], cube[yi]);
      for (std::uint32_t zi = 0; zi < n; ++zi) {
        FieldElement w = F.add(F.mul(txy, FieldElement{zi}),
                               F.mul(c3, F.add(sxy, cube[zi])));
        if (w == F.zero()) ++n0;
        if (w == one) ++n1;
      }
    }
  return {{n0, n1}, seconds_since(tstart), "specialized"};
}

// MW2: triples of 2x2 matrices. All q^4 matrices are tabulated once; the
// inner loop is a four-term dot product against precomputed entry arrays.
LevelCounts mw2_specialized(const FieldContext& F, FieldElement ce,
                            int threads) {
  auto tstart = Clock::now();
  const std::int64_t q = prime_of(F, "specialized MW2");
  const std::uint32_t qu = static_cast<std::uint32_t>(q);
  const std::uint32_t m = qu * qu * qu * qu;
  const std::uint32_t c3 =
      static_cast<std::uint32_t>(F.div(ce, F.embed(3)).ix);
  std::vector<std::uint16_t> e11(m), e12(m), e21(m), e22(m), ctr3(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    std::uint32_t a = i / (qu * qu * qu) % qu;
    std::uint32_t b = i / (qu * qu) % qu;
    std::uint32_t cc = i / qu % qu;
    std::uint32_t d = i % qu;
    e11[i] = static_cast<std::uint16_t>(a);
    e12[i] = static_cast<std::uint16_t>(b);
    e21[i] = static_cast<std::uint16_t>(cc);
    e22[i] = static_cast<std::uint16_t>(d);
    std::uint64_t tr3 =
        (std::uint64_t(a) * a % qu * a + std::uint64_t(d) * d % qu * d +
         3ull * b % qu * cc % qu * ((a + d) % qu)) %
        qu;
    ctr3[i] = static_cast<std::uint16_t>(std::uint64_t(c3) * tr3 % qu);
  }
  // small lookup for lev % q == target, sized by the maximal raw sum
  const std::uint32_t raw_max = 2 * qu + 4 * (qu - 1) * (qu - 1) + 2;
  std::vector<std::uint8_t> is0(raw_max + 1), is1(raw_max + 1);
  for (std::uint32_t v = 0; v <= raw_max; ++v) {
    is0[v] = (v % qu == 0);
    is1[v] = (v % qu == 1);
  }
  auto work = [&](int xlo, int xhi) -> std::array<std::int64_t, 4> {
    std::int64_t n0 = 0, n1 = 0;
    for (std::uint32_t iX = static_cast<std::uint32_t>(xlo);
         iX < static_cast<std::uint32_t>(xhi); ++iX) {
      const std::uint32_t x11 = e11[iX], x12 = e12[iX], x21 = e21[iX],
                          x22 = e22[iX];
      const std::uint32_t tX = ctr3[iX];
      for (std::uint32_t iY = 0; iY < m; ++iY) {
        const std::uint32_t y11 = e11[iY], y12 = e12[iY], y21 = e21[iY],
                            y22 = e22[iY];
        // P = XY + YX
        const std::uint32_t p11 = (2 * x11 * y11 + x12 * y21 + x21 * y12) % qu;
        const std::uint32_t p12 =
            (x11 * y12 + x12 * y22 + y11 * x12 + y12 * x22) % qu;
        const std::uint32_t p21 =
            (x21 * y11 + x22 * y21 + y21 * x11 + y22 * x21) % qu;
        const std::uint32_t p22 = (x21 * y12 + 2 * x22 * y22 + x12 * y21) % qu;
        const std::uint32_t base = (tX + ctr3[iY]) % qu;
        const std::uint16_t* z11 = e11.data();
        const std::uint16_t* z12 = e12.data();
        const std::uint16_t* z21 = e21.data();
        const std::uint16_t* z22 = e22.data();
        for (std::uint32_t iZ = 0; iZ < m; ++iZ) {
          const std::uint32_t lev = base + ctr3[iZ] + p11 * z11[iZ] +
                                    p12 * z21[iZ] + p21 * z12[iZ] +
                                    p22 * z22[iZ];
          n0 += is0[lev];
          n1 += is1[lev];
        }
      }
    }
    return {n0, n1, 0, 0};
  };
  auto [n0, n1, u2, u3] =
      run_chunks(static_cast<int>(m), std::max(1, threads), work);
  (void)u2;
  (void)u3;
  return {{n0, n1}, seconds_since(tstart), "specialized"};
}

bool has_specialized(const Stratum& st, const FieldContext& F) {
  if (st.name == "S1" || st.name == "S2" || st.name == "S3" ||
      st.name == "MW2")
    return F.k() == 1;
  if (st.name == "X" || st.name == "MW1") return F.has_tables();
  return false;
}

LevelCounts dispatch_specialized(const Stratum& st, const FieldContext& F,
                                 FieldElement c, FieldElement rho,
                                 int threads) {
  if (st.name == "S1") return s1_specialized(F, c, threads);
  if (st.name == "S2") return s2_specialized(F, c, threads);
  if (st.name == "S3") return s3_specialized(F, c);
  if (st.name == "X") return x_specialized(F, c, rho);
  if (st.name == "MW1") return mw1_specialized(F, c);
  if (st.name == "MW2") return mw2_specialized(F, c, threads);
  throw std::invalid_argument("no specialized counter for " + st.name);
}

}  // namespace

Strategy strategy_from_name(std::string_view name) {
  if (name == "auto" || name == "automatic") return Strategy::automatic;
  if (name == "direct") return Strategy::direct;
  if (name == "linear_fiber" || name == "fiber") return Strategy::linear_fiber;
  if (name == "specialized") return Strategy::specialized;
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::direct: return "direct";
    case Strategy::linear_fiber: return "linear_fiber";
    case Strategy::specialized: return "specialized";
  }
  return "?";
}

LevelCounts count_stratum(std::string_view name, const FieldContext& F,
                          FieldElement c, FieldElement rho,
                          const CountOptions& opts) {
  const Stratum& st = stratum(name);
  switch (opts.strategy) {
    case Strategy::direct:
      return count_direct(st, F, c, rho);
    case Strategy::linear_fiber:
      return count_fiber(st, F, c, rho);
    case Strategy::specialized:
      return dispatch_specialized(st, F, c, rho, opts.threads);
    case Strategy::automatic:
      break;
  }
  if (has_specialized(st, F))
    return dispatch_specialized(st, F, c, rho, opts.threads);
  if (!st.fiber_var.empty()) return count_fiber(st, F, c, rho);
  return count_direct(st, F, c, rho);
}

std::int64_t count_projective_cubic(const Poly& cubic, const FieldContext& F,
                                    FieldElement c) {
  int cslot = VarTable::index_of("c");
  std::vector<int> order = {VarTable::index_of("x"), VarTable::index_of("y"),
                            VarTable::index_of("z")};
  CompiledPoly f(cubic, F, order, {{cslot, c}});
  const std::uint32_t n = F.size();
  std::int64_t proj = 0;
  FieldElement v[3];
  // chart representatives (1,y,z), (0,1,z), (0,0,1)
  v[0] = F.one();
  for (std::uint32_t yi = 0; yi < n; ++yi)
    for (std::uint32_t zi = 0; zi < n; ++zi) {
      v[1] = FieldElement{yi};
      v[2] = FieldElement{zi};
      if (f.eval(F, v) == F.zero()) ++proj;
    }
  v[0] = F.zero();
  v[1] = F.one();
  for (std::uint32_t zi = 0; zi < n; ++zi) {
    v[2] = FieldElement{zi};
    if (f.eval(F, v) == F.zero()) ++proj;
  }
  v[1] = F.zero();
  v[2] = F.one();
  if (f.eval(F, v) == F.zero()) ++proj;
  // affine-cone cross check on fields small enough to brute force
  if (double(n) * n * n <= 2e7) {
    std::int64_t cone = 0;
    for (std::uint32_t xi = 0; xi < n; ++xi)
      for (std::uint32_t yi = 0; yi < n; ++yi)
        for (std::uint32_t zi = 0; zi < n; ++zi) {
          v[0] = FieldElement{xi};
          v[1] = FieldElement{yi};
          v[2] = FieldElement{zi};
          if (f.eval(F, v) == F.zero()) ++cone;
        }
    if (cone != (std::int64_t(n) - 1) * proj + 1)
      throw std::logic_error(
          "projective cubic count violates the affine-cone relation");
  }
  return proj;
}

CountBundle curve_counts_bundle(std::int64_t q, std::int64_t c, int threads) {
  CountBundle b;
  b.q = q;
  FieldContext Fq(q, 1), Fq2(q, 2);
  Poly edt = curve_dt_cubic();
  Poly ecc = curve_c_cubic();
  CountOptions opts;
  opts.threads = threads;
  auto per_field = [&](const FieldContext& F) {
    FieldElement ce = F.embed(c);
    std::int64_t e = count_projective_cubic(edt, F, ce);
    std::int64_t ec = count_projective_cubic(ecc, F, ce);
    LevelCounts mw1 = count_stratum("MW1", F, ce, F.one(), opts);
    // cone relation ties the affine zero fiber to the projective count
    if (mw1.n[0] != (std::int64_t(F.size()) - 1) * e + 1)
      throw std::logic_error("affine level-0 fiber disagrees with #E_DT");
    LevelCounts x = count_stratum("X", F, ce, F.one(), opts);
    std::int64_t mu3 =
        static_cast<std::int64_t>(cube_roots(F, F.one()).size());
    std::int64_t mu34 =
        static_cast<std::int64_t>(cube_roots(F, F.embed(4)).size());
    return std::array<std::int64_t, 7>{e,         ec, mw1.n[1], mu3,
                                       mu34,      x.n[0],       x.n[1]};
  };
  auto vq = per_field(Fq);
  auto vq2 = per_field(Fq2);
  const char* names[7] = {"E_DT", "E_c", "S_DT", "MU3", "MU3_4", "X0", "X1"};
  for (int i = 0; i < 7; ++i)
    b.counts[names[i]] = {vq[static_cast<std::size_t>(i)],
                          vq2[static_cast<std::size_t>(i)]};
  return b;
}

bool is_admissible(const FieldContext& F, FieldElement c, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (F.p() == 2 || F.p() == 3) return fail("characteristic below 5");
  if (c == F.zero()) return fail("c = 0");
  FieldElement c3 = F.pow(c, 3);
  if (c3 == F.one()) return fail("c^3 = 1");
  if (F.add(c3, F.embed(8)) == F.zero()) return fail("c^3 = -8");
  FieldElement m = F.div(F.add(F.mul(c3, c), F.mul(F.embed(8), c)),
                         F.embed(12));
  FieldElement alpha;
  if (!F.sqrt(m, alpha)) return fail("(c^4+8c)/12 is not a square");
  if (!F.is_square(F.sub(c3, F.one()))) return fail("c^3 - 1 is not a square");
  if (!F.is_cube(F.mul(F.embed(2), alpha)))
    return fail("2*alpha is not a cube");
  if (why) why->clear();
  return true;
}

std::vector<FieldElement> admissible_c(const FieldContext& F) {
  std::vector<FieldElement> out;
  for (std::uint32_t i = 1; i < F.size(); ++i)
    if (is_admissible(F, FieldElement{i})) out.push_back(FieldElement{i});
  return out;
}

}  // namespace skdt
