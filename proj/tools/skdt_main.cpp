// skdt — exact point counts, motivic series coefficients, and explicit
// rank-two representations for the degenerate three-variable Sklyanin
// algebras S(1,1,c).
//
// Exit codes: 0 verified / success, 1 mathematical mismatch, 2 bad config.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "skdt/clifford.hpp"
#include "skdt/counting.hpp"
#include "skdt/dt_series.hpp"
#include "skdt/finite_field.hpp"
#include "skdt/motive.hpp"
#include "skdt/rational.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& msg) { throw UsageError(msg); }

enum class Fmt { text, json, csv };

Fmt parse_fmt(const std::string& s) {
  if (s == "text") return Fmt::text;
  if (s == "json") return Fmt::json;
  if (s == "csv") return Fmt::csv;
  fail("unknown format '" + s + "' (expected text, json, or csv)");
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SKDT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// q = p^k with p prime, k <= 4.
struct FieldSpec {
  std::int64_t q = 0, p = 0;
  int k = 1;
};

FieldSpec factor_q(std::int64_t q) {
  if (q < 2) fail("q must be a prime power >= 2, got " + std::to_string(q));
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::int64_t m = q;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) fail(std::to_string(q) + " is not a prime power");
  if (k > 4) fail("extension degree " + std::to_string(k) + " exceeds 4");
  return {q, p, k};
}

void require_char_ge5(const FieldSpec& f) {
  if (f.p == 2 || f.p == 3)
    fail("characteristic " + std::to_string(f.p) +
         " is outside the toolkit's range (needs p >= 5): q = " +
         std::to_string(f.q));
}

skdt::FieldElement embed_c(const skdt::FieldContext& F, std::int64_t c) {
  skdt::FieldElement e = F.embed(c);
  if (e == F.zero())
    fail("c = " + std::to_string(c) + " vanishes in " + F.describe());
  return e;
}

std::string elt_str(const skdt::FieldContext& F, skdt::FieldElement e) {
  auto co = F.coeffs(e);
  std::string s;
  static const char* pw[4] = {"", "x", "x^2", "x^3"};
  for (int i = 3; i >= 0; --i) {
    if (!co[i]) continue;
    if (!s.empty()) s += "+";
    if (co[i] != 1 || i == 0) s += std::to_string(co[i]);
    s += pw[i];
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
  std::string target, label, expected, observed;
  bool pass = false;
};

struct Report {
  std::vector<CheckLine> lines;
  std::vector<std::string> notes;

  void add(std::string target, std::string label, std::int64_t expected,
           std::int64_t observed) {
    lines.push_back({std::move(target), std::move(label),
                     std::to_string(expected), std::to_string(observed),
                     expected == observed});
  }
  void add_str(std::string target, std::string label, std::string expected,
               std::string observed, bool pass) {
    lines.push_back({std::move(target), std::move(label), std::move(expected),
                     std::move(observed), pass});
  }
  int failures() const {
    int n = 0;
    for (const auto& l : lines) n += !l.pass;
    return n;
  }
};

std::int64_t stratum_delta(std::string_view name, const skdt::FieldContext& F,
                           skdt::FieldElement c, int threads) {
  skdt::CountOptions opts;
  opts.threads = threads;
  return skdt::delta(skdt::count_stratum(name, F, c, opts));
}

// Sum of the chart deltas over the cube roots of unity in F.
std::int64_t sum_dx(const skdt::FieldContext& F, skdt::FieldElement c,
                    int threads) {
  skdt::CountOptions opts;
  opts.threads = threads;
  std::int64_t s = 0;
  for (auto rho : skdt::cube_roots(F, F.one()))
    s += skdt::delta(skdt::count_stratum("X", F, c, rho, opts));
  return s;
}

void v_lemma3(Report& r) {
  struct Named {
    const char* name;
    skdt::SeriesInputs in;
  };
  const Named sets[2] = {{"opaque", skdt::generic_inputs()},
                         {"curves", skdt::canonical_inputs()}};
  for (const auto& [name, in] : sets) {
    for (int order : {1, 2}) {
      auto eng = skdt::conjecture_coefficient(order, in);
      auto disp = skdt::display_coefficient(order, in);
      std::string label =
          std::string(name) + " t^" + std::to_string(order) + " engine";
      r.add_str("lemma3", label, "== display", eng == disp ? "==" : "!=",
                eng == disp);
    }
    for (int J : {17, 60}) {
      auto tr = skdt::truncated_series(in, J);
      bool ok1 = tr[1] == skdt::display_coefficient(1, in);
      bool ok2 = tr[2] == skdt::display_coefficient(2, in);
      r.add_str("lemma3",
                std::string(name) + " truncated J=" + std::to_string(J),
                "tails match", ok1 && ok2 ? "match" : "differ", ok1 && ok2);
    }
  }
  // Numeric cross-check of the t^2 coefficient at small L.
  auto gen = skdt::generic_inputs();
  auto eng2 = skdt::conjecture_coefficient(2, gen);
  auto tr2 = skdt::truncated_series(gen, 40)[2];
  for (std::int64_t L : {2, 3, 5}) {
    auto a = skdt::evaluate_symbolic(eng2, skdt::Rational(L));
    auto b = skdt::evaluate_symbolic(tr2, skdt::Rational(L));
    r.add_str("lemma3", "numeric L=" + std::to_string(L), "maps equal",
              a == b ? "equal" : "differ", a == b);
  }
}

void v_lemma4(Report& r, const std::vector<std::int64_t>& qs,
              const std::vector<std::int64_t>& cs, int threads) {
  for (auto q : qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (f.k != 1) fail("stratum counts need prime q, got " + std::to_string(q));
    auto F = skdt::make_field(f.p, f.k);
    for (auto c : cs) {
      auto ce = embed_c(F, c);
      std::int64_t d = stratum_delta("S3", F, ce, threads);
      r.add("lemma4", "q=" + std::to_string(q) + " c=" + std::to_string(c),
            ipow(q, 5), d);
    }
  }
}

void v_branch_form(Report& r, const char* target, const char* stratum,
                   int lead_power, const std::vector<std::int64_t>& qs,
                   const std::vector<std::int64_t>& cs, int threads) {
  for (auto q : qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (f.k != 1) fail("stratum counts need prime q, got " + std::to_string(q));
    auto F = skdt::make_field(f.p, f.k);
    for (auto c : cs) {
      auto ce = embed_c(F, c);
      std::int64_t dx = sum_dx(F, ce, threads);
      std::int64_t predicted = ipow(q, lead_power) + ipow(q, 3) * dx;
      std::int64_t observed = stratum_delta(stratum, F, ce, threads);
      r.add(target, "q=" + std::to_string(q) + " c=" + std::to_string(c),
            predicted, observed);
    }
  }
}

void v_lemma7(Report& r, const std::vector<std::int64_t>& qs,
              const std::vector<std::int64_t>& cs, int threads) {
  for (auto q : qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (f.k != 1) fail("stratum counts need prime q, got " + std::to_string(q));
    auto F = skdt::make_field(f.p, f.k);
    for (auto c : cs) {
      auto ce = embed_c(F, c);
      std::int64_t dbs = stratum_delta("S1", F, ce, threads) +
                         stratum_delta("S2", F, ce, threads) +
                         stratum_delta("S3", F, ce, threads);
      std::string at = "q=" + std::to_string(q) + " c=" + std::to_string(c);
      if (q == 5) {
        // Independent handle on the cell sum: invert the rank-two moduli
        // recursion, which only needs the full q^12 enumeration at q = 5.
        std::int64_t dm2 = stratum_delta("MW2", F, ce, threads);
        std::int64_t dm1 = stratum_delta("MW1", F, ce, threads);
        std::int64_t G = (q * q - 1) * (q * q - q);
        std::int64_t num = (q * q - 1) * (q - 1) * dm2 - q * q * G * dm1 * dm1;
        std::int64_t den = (q - 1) * G;
        if (num % den != 0) {
          r.add_str("lemma7", at + " moduli", "divisible",
                    "remainder " + std::to_string(num % den), false);
        } else {
          r.add("lemma7", at + " cells == moduli", num / den, dbs);
        }
      }
      std::int64_t dx = sum_dx(F, ce, threads);
      std::int64_t closed =
          ipow(q, 7) + ipow(q, 6) + ipow(q, 5) + 2 * ipow(q, 3) * dx;
      r.add("lemma7", at + " closed form", closed, dbs);
    }
  }
  r.notes.push_back(
      "the closed form inherits the refuted first-cell identity (see verify "
      "lemma6); its failure here is the expected outcome");
}

void v_lemma8(Report& r, const std::vector<std::int64_t>& qs,
              const std::vector<std::int64_t>& cs_user, int threads) {
  for (auto q : qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (f.k != 1) fail("lemma8 takes the base prime q, got " + std::to_string(q));
    auto F2 = skdt::make_field(f.p, 2);
    std::vector<skdt::FieldElement> cs;
    if (!cs_user.empty()) {
      for (auto c : cs_user) {
        auto ce = embed_c(F2, c);
        std::string why;
        if (!skdt::is_admissible(F2, ce, &why))
          fail("c = " + std::to_string(c) + " is not admissible over " +
               F2.describe() + ": " + why);
        cs.push_back(ce);
      }
    } else {
      cs = skdt::admissible_c(F2);
      if (cs.empty()) {
        r.notes.push_back("no admissible c over " + F2.describe());
        continue;
      }
    }
    std::int64_t q2 = q * q;
    std::int64_t rcount =
        static_cast<std::int64_t>(skdt::cube_roots(F2, F2.embed(4)).size());
    skdt::CountOptions opts;
    opts.threads = threads;
    for (auto ce : cs) {
      auto lc = skdt::count_stratum("X", F2, ce, opts);
      std::string at = F2.describe() + " c=" + elt_str(F2, ce);
      r.add("lemma8", at + " X0", (q2 - 1) * (q2 - 1), lc.n[0]);
      r.add("lemma8", at + " X1", (q2 - 1) * (q2 - 1) + rcount * q2, lc.n[1]);
    }
    r.notes.push_back("#{a^3 = 4} = " + std::to_string(rcount) + " over " +
                      F2.describe());
  }
}

double mw2_estimate_seconds(std::int64_t q, int threads) {
  double ops = std::pow(static_cast<double>(q), 12);
  return ops / 2.4e8 / std::max(threads, 1);
}

void require_mw2_feasible(std::int64_t q, bool force, int threads) {
  if (q <= 5 || force) return;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "the full rank-two enumeration at q = %lld is ~q^12 = %.2g "
                "steps (about %.0f s at %d thread(s)); pass --force to run it",
                static_cast<long long>(q), std::pow(static_cast<double>(q), 12),
                mw2_estimate_seconds(q, threads), threads);
  fail(buf);
}

void v_recursion(Report& r, const std::vector<std::int64_t>& qs,
                 const std::vector<std::int64_t>& cs, int threads,
                 bool force) {
  for (auto q : qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (f.k != 1) fail("the recursion check needs prime q");
    require_mw2_feasible(q, force, threads);
    auto F = skdt::make_field(f.p, f.k);
    std::int64_t G = (q * q - 1) * (q * q - q);
    for (auto c : cs) {
      auto ce = embed_c(F, c);
      std::int64_t dm2 = stratum_delta("MW2", F, ce, threads);
      std::int64_t dm1 = stratum_delta("MW1", F, ce, threads);
      std::int64_t dbs = stratum_delta("S1", F, ce, threads) +
                         stratum_delta("S2", F, ce, threads) +
                         stratum_delta("S3", F, ce, threads);
      std::int64_t lhs = (q * q - 1) * (q - 1) * dm2;
      std::int64_t rhs = (q - 1) * G * dbs + q * q * G * dm1 * dm1;
      r.add("recursion", "q=" + std::to_string(q) + " c=" + std::to_string(c),
            lhs, rhs);
    }
  }
}

void v_theorem(Report& r) {
  for (bool strict : {false, true}) {
    auto lhs = skdt::recursion_coefficient(skdt::stratified_bs(strict),
                                           skdt::n1_motive());
    auto rhs = skdt::theorem_coefficient(strict);
    const char* mode = strict ? "strict mu3" : "merged mu3";
    r.add_str("theorem", mode, "recursion == closed",
              lhs == rhs ? "equal" : "distinct", lhs == rhs);
    if (lhs == rhs && !strict)
      r.notes.push_back("shared canonical form: " + lhs.str());
  }
}

const std::vector<std::string>& verify_targets() {
  static const std::vector<std::string> t = {
      "lemma3", "lemma4", "lemma5",    "lemma6",
      "lemma7", "lemma8", "recursion", "theorem",
      "all"};
  return t;
}

void run_one_verify(Report& r, const std::string& target,
                    const std::vector<std::int64_t>& qs_user,
                    const std::vector<std::int64_t>& cs_user, int threads,
                    bool force) {
  auto qs = [&](std::vector<std::int64_t> dflt) {
    return qs_user.empty() ? dflt : qs_user;
  };
  auto cs = [&](std::vector<std::int64_t> dflt) {
    return cs_user.empty() ? dflt : cs_user;
  };
  if (target == "lemma3") {
    v_lemma3(r);
  } else if (target == "lemma4") {
    v_lemma4(r, qs({5, 7, 13}), cs({1, 2}), threads);
  } else if (target == "lemma5") {
    v_branch_form(r, "lemma5", "S2", 6, qs({5, 7, 13}), cs({1, 2}), threads);
  } else if (target == "lemma6") {
    v_branch_form(r, "lemma6", "S1", 7, qs({5, 7, 13}), cs({1, 2}), threads);
    r.notes.push_back(
        "this closed form is refuted by the counts; the mismatch is the "
        "toolkit's headline finding, not a bug");
  } else if (target == "lemma7") {
    v_lemma7(r, qs({5, 7, 13}), cs({1, 2}), threads);
  } else if (target == "lemma8") {
    v_lemma8(r, qs({5, 7}), cs_user, threads);
  } else if (target == "recursion") {
    v_recursion(r, qs({5}), cs({1, 2}), threads, force);
  } else if (target == "theorem") {
    v_theorem(r);
  } else if (target == "all") {
    for (const auto& t : verify_targets())
      if (t != "all") run_one_verify(r, t, qs_user, cs_user, threads, force);
  } else {
    fail("unknown verify target '" + target + "'");
  }
}

int emit_verify(const Report& r, Fmt fmt) {
  int failures = r.failures();
  if (fmt == Fmt::json) {
    for (const auto& l : r.lines) {
      json j = {{"schema", "verify_report/1"}, {"target", l.target},
                {"label", l.label},            {"expected", l.expected},
                {"observed", l.observed},      {"pass", l.pass}};
      std::printf("%s\n", j.dump().c_str());
    }
    json s = {{"schema", "verify_summary/1"},
              {"checks", r.lines.size()},
              {"failures", failures},
              {"notes", r.notes}};
    std::printf("%s\n", s.dump().c_str());
  } else if (fmt == Fmt::csv) {
    fail("verify has no csv form (use text or json)");
  } else {
    std::string last;
    int sub_pass = 0, sub_fail = 0;
    auto flush = [&] {
      if (last.empty()) return;
      std::printf("%-10s %d/%d checks passed\n", last.c_str(), sub_pass,
                  sub_pass + sub_fail);
      sub_pass = sub_fail = 0;
    };
    for (const auto& l : r.lines) {
      if (l.target != last) {
        flush();
        last = l.target;
      }
      (l.pass ? sub_pass : sub_fail)++;
      std::printf("%-10s %-34s expected %-18s observed %-18s %s\n",
                  l.target.c_str(), l.label.c_str(), l.expected.c_str(),
                  l.observed.c_str(), l.pass ? "ok" : "MISMATCH");
    }
    flush();
    for (const auto& n : r.notes) std::printf("note: %s\n", n.c_str());
    std::printf("%s: %d/%zu checks passed\n", failures ? "FAIL" : "OK",
                static_cast<int>(r.lines.size()) - failures, r.lines.size());
  }
  return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  std::string stratum;
  std::vector<std::int64_t> qs, cs;
  std::int64_t rho = 1;
  int lambda = -1;  // -1 = both
  std::string strategy = "auto";
  int threads = 0;
  bool force = false;
  std::string format = "text";
};

int run_count(const CountArgs& a) {
  std::string name = a.stratum;
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  const auto& known = skdt::stratum_names();
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    std::string all;
    for (const auto& n : known) all += (all.empty() ? "" : ", ") + n;
    fail("unknown stratum '" + a.stratum + "' (one of: " + all + ")");
  }
  skdt::CountOptions opts;
  opts.strategy = skdt::strategy_from_name(a.strategy);
  opts.threads = resolve_threads(a.threads);
  Fmt fmt = parse_fmt(a.format);
  if (a.qs.empty()) fail("count needs --q");
  // feasibility gates come before the --c check: `count --stratum mw2 --q 7`
  // should explain the cost, not complain about a missing flag
  for (auto q : a.qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (name == "MW2") {
      if (f.k != 1) fail("MW2 counting needs prime q");
      require_mw2_feasible(q, a.force, opts.threads);
    }
  }
  if (a.cs.empty()) fail("count needs --c");

  if (fmt == Fmt::csv)
    std::printf("stratum,q,c,rho,lambda,count,strategy,seconds\n");
  for (auto q : a.qs) {
    auto f = factor_q(q);
    require_char_ge5(f);
    if (name == "MW2") {
      if (f.k != 1) fail("MW2 counting needs prime q");
      require_mw2_feasible(q, a.force, opts.threads);
    }
    auto F = skdt::make_field(f.p, f.k);
    skdt::FieldElement rho = F.one();
    if (name == "X") {
      rho = F.embed(a.rho);
      if (!(F.pow(rho, 3) == F.one()))
        fail("rho = " + std::to_string(a.rho) + " is not a cube root of 1 in " +
             F.describe());
    }
    for (auto c : a.cs) {
      auto ce = embed_c(F, c);
      auto lc = skdt::count_stratum(name, F, ce, rho, opts);
      auto row = [&](int lam) {
        if (fmt == Fmt::json) {
          json j = {{"schema", "count_result/1"},
                    {"stratum", name},
                    {"q", q},
                    {"c", c},
                    {"strategy", lc.strategy_used},
                    {"seconds", lc.seconds}};
          if (name == "X") j["rho"] = a.rho;
          if (lam >= 0) {
            j["lambda"] = lam;
            j["count"] = lc.n[lam];
          } else {
            j["n0"] = lc.n[0];
            j["n1"] = lc.n[1];
            j["delta"] = skdt::delta(lc);
          }
          std::printf("%s\n", j.dump().c_str());
        } else if (fmt == Fmt::csv) {
          for (int l : {0, 1}) {
            if (lam >= 0 && l != lam) continue;
            std::printf("%s,%lld,%lld,%lld,%d,%lld,%s,%.3f\n", name.c_str(),
                        static_cast<long long>(q), static_cast<long long>(c),
                        static_cast<long long>(name == "X" ? a.rho : 1), l,
                        static_cast<long long>(lc.n[l]),
                        lc.strategy_used.c_str(), lc.seconds);
          }
        } else {
          std::printf("%-4s q=%-6lld c=%-3lld", name.c_str(),
                      static_cast<long long>(q), static_cast<long long>(c));
          if (name == "X") std::printf(" rho=%-3lld", static_cast<long long>(a.rho));
          if (lam >= 0)
            std::printf(" n(%d)=%lld", lam, static_cast<long long>(lc.n[lam]));
          else
            std::printf(" n(0)=%-12lld n(1)=%-12lld delta=%-12lld",
                        static_cast<long long>(lc.n[0]),
                        static_cast<long long>(lc.n[1]),
                        static_cast<long long>(skdt::delta(lc)));
          std::printf("  [%s, %.3fs]\n", lc.strategy_used.c_str(), lc.seconds);
        }
      };
      row(a.lambda);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// coeff

struct SpecPair {
  std::int64_t q = 0, c = 0;
};

SpecPair parse_specialize(const std::string& s) {
  SpecPair out;
  bool got_q = false, got_c = false;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("bad --specialize entry '" + item + "'");
    std::string key = item.substr(0, eq);
    std::int64_t val = std::strtoll(item.c_str() + eq + 1, nullptr, 10);
    if (key == "q") {
      out.q = val;
      got_q = true;
    } else if (key == "c") {
      out.c = val;
      got_c = true;
    } else {
      fail("--specialize keys are q and c, got '" + key + "'");
    }
  }
  if (!got_q || !got_c) fail("--specialize needs both q and c, e.g. q=5,c=1");
  return out;
}

struct CoeffArgs {
  std::string mode;
  int order = 2;
  bool strict_mu3 = false;
  std::vector<std::string> specialize;
  int threads = 0;
  std::string format = "text";
};

int run_coeff(const CoeffArgs& a) {
  Fmt fmt = parse_fmt(a.format);
  if (fmt == Fmt::csv) fail("coeff has no csv form (use text or json)");
  int threads = resolve_threads(a.threads);
  if (a.order != 1 && a.order != 2) fail("--order must be 1 or 2");

  std::string expr;
  std::vector<json> specs;
  std::vector<std::string> spec_lines;

  auto add_spec = [&](std::int64_t q, std::int64_t c, const skdt::Rational& v) {
    specs.push_back({{"q", q}, {"c", c}, {"value", v.str()}});
    spec_lines.push_back("  q=" + std::to_string(q) + " c=" +
                         std::to_string(c) + "  ->  " + v.str());
  };

  if (a.mode == "conjecture") {
    auto e = skdt::display_coefficient(a.order, skdt::canonical_inputs());
    expr = e.str();
    for (const auto& s : a.specialize) {
      auto [q, c] = parse_specialize(s);
      auto f = factor_q(q);
      require_char_ge5(f);
      auto bundle = skdt::curve_counts_bundle(q, c, threads);
      add_spec(q, c, skdt::count_specialize(e, bundle));
    }
  } else if (a.mode == "theorem") {
    if (a.order != 2) fail("the closed second coefficient has order 2 only");
    auto e = skdt::theorem_coefficient(a.strict_mu3);
    expr = e.str();
    for (const auto& s : a.specialize) {
      auto [q, c] = parse_specialize(s);
      auto f = factor_q(q);
      require_char_ge5(f);
      auto bundle = skdt::curve_counts_bundle(q, c, threads);
      add_spec(q, c, skdt::count_specialize(e, bundle));
    }
  } else if (a.mode == "computed") {
    if (a.order != 2) fail("the recursion route computes order 2 only");
    if (a.specialize.empty())
      fail("coeff --mode computed needs --specialize q=...,c=...");
    expr = skdt::recursion_coefficient(skdt::MotiveExpr::symbol("DBS"),
                                       skdt::MotiveExpr::symbol("DM1"))
               .str();
    for (const auto& s : a.specialize) {
      auto [q, c] = parse_specialize(s);
      auto f = factor_q(q);
      require_char_ge5(f);
      if (f.k != 1) fail("stratum counts need prime q, got " + std::to_string(q));
      auto F = skdt::make_field(f.p, f.k);
      auto ce = embed_c(F, c);
      std::int64_t dbs = stratum_delta("S1", F, ce, threads) +
                         stratum_delta("S2", F, ce, threads) +
                         stratum_delta("S3", F, ce, threads);
      std::int64_t dm1 = stratum_delta("MW1", F, ce, threads);
      auto e = skdt::recursion_coefficient(skdt::MotiveExpr(dbs),
                                           skdt::MotiveExpr(dm1));
      skdt::CountBundle bare{q, {}};
      add_spec(q, c, skdt::count_specialize(e, bare));
    }
  } else {
    fail("unknown mode '" + a.mode + "' (conjecture, computed, theorem)");
  }

  if (fmt == Fmt::json) {
    json j = {{"schema", "coeff_report/1"}, {"mode", a.mode},
              {"order", a.order},           {"strict_mu3", a.strict_mu3},
              {"expression", expr},         {"specializations", specs}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("mode %s, t^%d coefficient:\n  %s\n", a.mode.c_str(), a.order,
                expr.c_str());
    for (const auto& l : spec_lines) std::printf("%s\n", l.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rep

std::complex<double> parse_cx(const std::string& s) {
  auto colon = s.find(':');
  char* end = nullptr;
  double re = std::strtod(s.c_str(), &end);
  double im = 0;
  if (colon != std::string::npos) im = std::strtod(s.c_str() + colon + 1, &end);
  return {re, im};
}

struct RepArgs {
  std::string c = "1";
  std::string point;
  std::string sign = "plus";
  std::uint64_t seed = 0;
  std::string format = "text";
};

json cx_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string cx_str(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

int run_rep(const RepArgs& a) {
  namespace cl = skdt::clifford;
  Fmt fmt = parse_fmt(a.format);
  if (fmt == Fmt::csv) fail("rep has no csv form (use text or json)");
  if (a.sign != "plus" && a.sign != "minus")
    fail("--sign is plus or minus, got '" + a.sign + "'");
  int sign = a.sign == "plus" ? +1 : -1;
  cl::Cx c = parse_cx(a.c);

  cl::Vec3 p;
  if (!a.point.empty()) {
    std::stringstream ss(a.point);
    std::string tok;
    std::vector<cl::Cx> coords;
    while (std::getline(ss, tok, ',')) coords.push_back(parse_cx(tok));
    if (coords.size() != 3) fail("--point needs three coordinates u,v,w");
    p << coords[0], coords[1], coords[2];
  } else {
    std::mt19937_64 rng(a.seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    p << cl::Cx(d(rng), d(rng)), cl::Cx(d(rng), d(rng)), cl::Cx(d(rng), d(rng));
  }
  if (std::abs(p(0)) + std::abs(p(1)) + std::abs(p(2)) == 0.0)
    fail("the zero point carries no two-dimensional representation "
         "(the only non-Azumaya fiber)");

  cl::Diagonalization dg;
  try {
    dg = cl::diagonalize(c, p);
  } catch (const std::runtime_error& e) {
    fail(e.what());
  }
  cl::Rep rep = cl::build_rep(c, p, sign, &dg);
  cl::RepCheck chk = cl::verify_rep(rep, c, p);
  bool pass = chk.relation_residual < 1e-9 && chk.center_residual < 1e-9 &&
              chk.trace_residual < 1e-9;

  if (fmt == Fmt::json) {
    auto mat = [](const cl::Mat2& m) {
      return json::array(
          {cx_json(m(0, 0)), cx_json(m(0, 1)), cx_json(m(1, 0)),
           cx_json(m(1, 1))});
    };
    json j = {{"schema", "rep/1"},
              {"c", cx_json(c)},
              {"point", json::array({cx_json(p(0)), cx_json(p(1)),
                                     cx_json(p(2))})},
              {"sign", a.sign},
              {"case", dg.case_tag},
              {"perm", dg.perm},
              {"D", json::array({cx_json(dg.D(0)), cx_json(dg.D(1)),
                                 cx_json(dg.D(2))})},
              {"matrices", json::array({mat(rep.X), mat(rep.Y), mat(rep.Z)})},
              {"residuals",
               {{"relation", chk.relation_residual},
                {"center", chk.center_residual},
                {"trace", chk.trace_residual}}},
              {"pass", pass}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("point (%s, %s, %s), c = %s, sign %s, tableau case %d\n",
                cx_str(p(0)).c_str(), cx_str(p(1)).c_str(),
                cx_str(p(2)).c_str(), cx_str(c).c_str(), a.sign.c_str(),
                dg.case_tag);
    const char* names[3] = {"X", "Y", "Z"};
    const cl::Mat2* mats[3] = {&rep.X, &rep.Y, &rep.Z};
    for (int i = 0; i < 3; ++i)
      std::printf("%s = [ %s  %s ; %s  %s ]\n", names[i],
                  cx_str((*mats[i])(0, 0)).c_str(),
                  cx_str((*mats[i])(0, 1)).c_str(),
                  cx_str((*mats[i])(1, 0)).c_str(),
                  cx_str((*mats[i])(1, 1)).c_str());
    std::printf(
        "residuals: relations %.3g, center %.3g, trace %.3g  ->  %s\n",
        chk.relation_residual, chk.center_residual, chk.trace_residual,
        pass ? "ok" : "FAIL");
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// discrepancy

struct DiscArgs {
  std::vector<std::int64_t> qs = {5, 7};
  std::vector<std::int64_t> cs = {1, 2};
  bool strict_mu3 = false;
  int threads = 0;
  std::string format = "text";
};

int run_discrepancy(const DiscArgs& a) {
  Fmt fmt = parse_fmt(a.format);
  int threads = resolve_threads(a.threads);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (auto q : a.qs) {
    auto f = factor_q(q);
    if (f.p == 2 || f.p == 3) {
      std::fprintf(stderr, "skipping q = %lld (characteristic %lld)\n",
                   static_cast<long long>(q), static_cast<long long>(f.p));
      continue;
    }
    for (auto c : a.cs) {
      if (c % f.p == 0) {
        std::fprintf(stderr, "skipping q = %lld, c = %lld (c vanishes)\n",
                     static_cast<long long>(q), static_cast<long long>(c));
        continue;
      }
      pairs.emplace_back(q, c);
    }
  }
  if (pairs.empty()) fail("no admissible (q, c) pairs left");

  skdt::Discrepancy d;
  bool first = true;
  for (auto [q, c] : pairs) {
    auto one = skdt::discrepancy_report({q}, {c}, a.strict_mu3, threads);
    if (first) {
      d.symbolic = one.symbolic;
      d.numerator_mentions_ec = one.numerator_mentions_ec;
      first = false;
    }
    for (auto& row : one.rows) d.rows.push_back(row);
  }

  if (fmt == Fmt::json) {
    json rows = json::array();
    for (const auto& r : d.rows)
      rows.push_back({{"q", r.q},
                      {"c", r.c},
                      {"conjectured", r.conjectured.str()},
                      {"computed", r.computed.str()},
                      {"gap", r.gap.str()}});
    json j = {{"schema", "discrepancy_report/1"},
              {"strict_mu3", a.strict_mu3},
              {"symbolic", d.symbolic.str()},
              {"symbolic_nonzero", !d.symbolic.is_zero()},
              {"numerator_mentions_ec", d.numerator_mentions_ec},
              {"rows", rows}};
    std::printf("%s\n", j.dump().c_str());
  } else if (fmt == Fmt::csv) {
    std::printf("q,c,conjectured,computed,gap\n");
    for (const auto& r : d.rows)
      std::printf("%lld,%lld,%s,%s,%s\n", static_cast<long long>(r.q),
                  static_cast<long long>(r.c), r.conjectured.str().c_str(),
                  r.computed.str().c_str(), r.gap.str().c_str());
  } else {
    std::printf("conjectured - computed (t^2 coefficients):\n  %s\n",
                d.symbolic.str().c_str());
    std::printf("symbolically nonzero: %s; numerator mentions [E_c]: %s\n",
                d.symbolic.is_zero() ? "no" : "yes",
                d.numerator_mentions_ec ? "yes" : "no");
    std::printf("%-6s %-4s %-22s %-22s %s\n", "q", "c", "conjectured",
                "computed", "gap");
    for (const auto& r : d.rows)
      std::printf("%-6lld %-4lld %-22s %-22s %s\n",
                  static_cast<long long>(r.q), static_cast<long long>(r.c),
                  r.conjectured.str().c_str(), r.computed.str().c_str(),
                  r.gap.str().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "skdt: exact point counts, motivic series coefficients, and explicit "
      "rank-two representations for the degenerate Sklyanin algebras "
      "S(1,1,c)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "skdt 1.0.0");

  // verify
  std::string v_target;
  std::vector<std::int64_t> v_qs, v_cs;
  int v_threads = 0;
  bool v_force = false;
  std::string v_format = "text";
  auto* sc_verify = app.add_subcommand(
      "verify", "run one identity's acceptance checks (exit 0 iff all hold)");
  sc_verify->add_option("target", v_target, "one of lemma3..lemma8, recursion, theorem, all")
      ->required()
      ->check(CLI::IsMember(verify_targets()));
  sc_verify->add_option("--q", v_qs, "prime list (default per target)")
      ->delimiter(',');
  sc_verify->add_option("--c", v_cs, "parameter list (default per target)")
      ->delimiter(',');
  sc_verify->add_option("--threads", v_threads,
                        "worker threads (default: SKDT_THREADS or all cores)");
  sc_verify->add_flag("--force", v_force, "allow the q^12 enumeration at q > 5");
  sc_verify->add_option("--format", v_format, "text or json");

  // count
  CountArgs ca;
  auto* sc_count = app.add_subcommand(
      "count", "count stratum points at level 0/1 over GF(q)");
  sc_count->add_option("--stratum", ca.stratum, "s1, s2, s3, x, mw1, mw2")
      ->required();
  sc_count->add_option("--q", ca.qs, "prime powers, comma-separated")
      ->required()
      ->delimiter(',');
  sc_count->add_option("--c", ca.cs, "parameter values, comma-separated")
      ->delimiter(',');
  sc_count->add_option("--rho", ca.rho, "cube root of 1 for the X chart (default 1)");
  sc_count->add_option("--lambda", ca.lambda, "level 0 or 1 (default: both)")
      ->check(CLI::Range(0, 1));
  sc_count->add_option("--strategy", ca.strategy,
                       "auto, direct, linear_fiber, specialized");
  sc_count->add_option("--threads", ca.threads, "worker threads");
  sc_count->add_flag("--force", ca.force, "allow the q^12 enumeration at q > 5");
  sc_count->add_option("--format", ca.format, "text, json, or csv");

  // coeff
  CoeffArgs fa;
  auto* sc_coeff = app.add_subcommand(
      "coeff", "print a series coefficient, optionally specialized at (q, c)");
  sc_coeff->add_option("--mode", fa.mode, "conjecture, computed, or theorem")
      ->required()
      ->check(CLI::IsMember({"conjecture", "computed", "theorem"}));
  sc_coeff->add_option("--order", fa.order, "t-power: 1 or 2 (default 2)");
  sc_coeff->add_flag("--strict-mu3", fa.strict_mu3,
                     "keep the two cube-root classes distinct");
  sc_coeff->add_option("--specialize", fa.specialize,
                       "q=<prime power>,c=<int>; repeatable");
  sc_coeff->add_option("--threads", fa.threads, "worker threads");
  sc_coeff->add_option("--format", fa.format, "text or json");

  // rep
  RepArgs ra;
  auto* sc_rep = app.add_subcommand(
      "rep", "build the two-dimensional representation at a point (u, v, w)");
  sc_rep->add_option("--c", ra.c, "parameter, re or re:im (default 1)");
  sc_rep->add_option("--point", ra.point,
                     "u,v,w with complex entries re[:im]; random if omitted");
  sc_rep->add_option("--sign", ra.sign, "plus or minus (default plus)");
  sc_rep->add_option("--seed", ra.seed, "rng seed for a random point");
  sc_rep->add_option("--format", ra.format, "text or json");

  // discrepancy
  DiscArgs da;
  auto* sc_disc = app.add_subcommand(
      "discrepancy",
      "symbolic and numeric gap between the two second coefficients");
  sc_disc->add_option("--q", da.qs, "prime powers (default 5,7)")->delimiter(',');
  sc_disc->add_option("--c", da.cs, "parameters (default 1,2)")->delimiter(',');
  sc_disc->add_flag("--strict-mu3", da.strict_mu3,
                    "keep the two cube-root classes distinct");
  sc_disc->add_option("--threads", da.threads, "worker threads");
  sc_disc->add_option("--format", da.format, "text, json, or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sc_verify) {
      Report r;
      run_one_verify(r, v_target, v_qs, v_cs, resolve_threads(v_threads),
                     v_force);
      return emit_verify(r, parse_fmt(v_format));
    }
    if (*sc_count) return run_count(ca);
    if (*sc_coeff) return run_coeff(fa);
    if (*sc_rep) return run_rep(ra);
    if (*sc_disc) return run_discrepancy(da);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
