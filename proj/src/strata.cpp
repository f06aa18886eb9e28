#include "skdt/strata.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace skdt {

namespace {

Poly V(std::string_view n) { return Poly::var(n); }

Rational third() { return Rational(1, 3); }

// Matrix-entry grading: diagonal entries weigh 1, lower-left 2, upper-right 0.
// Letters follow the fixed entry layout X=[[n,p],[q,r]], Y=[[s,t],[u,v]],
// Z=[[w,x],[y,z]].
int letter_weight(char ch) {
  switch (ch) {
    case 'n': case 'r': case 's': case 'v': case 'w': case 'z':
      return 1;
    case 'q': case 'u': case 'y':
      return 2;
    case 'p': case 't': case 'x':
      return 0;
    default:
      throw std::logic_error("letter_weight: unknown variable");
  }
}

StratumVar SV(const std::string& name) {
  return StratumVar{name, VarTable::index_of(name), letter_weight(name[0])};
}

std::vector<StratumVar> make_vars(std::string_view letters) {
  std::vector<StratumVar> out;
  for (char ch : letters) out.push_back(SV(std::string(1, ch)));
  return out;
}

Poly cube_sum(std::string_view letters) {
  Poly s(0);
  for (char ch : letters) s += V(std::string(1, ch)).pow(3);
  return s;
}

Stratum make_s1() {
  Poly c = V("c");
  Poly p = V("p"), r = V("r"), s = V("s"), t = V("t"), u = V("u"), v = V("v"),
       w = V("w"), x = V("x"), y = V("y"), z = V("z");
  Poly level = Poly(third()) * c * cube_sum("rsvwz") +
               Poly(2) * r * v * z +
               (r * x + p * (w + z) + c * t * (v + s)) * u +
               (p * (v + s) + r * t + c * x * (z + w)) * y +
               t * z + s * x + v * x + t * w + c * p * r;
  return Stratum{"S1", make_vars("prstuvwxyz"), {"c"}, level, 1, {}, "u"};
}

Stratum make_s2() {
  Poly c = V("c");
  Poly n = V("n"), p = V("p"), r = V("r"), t = V("t"), v = V("v"), w = V("w"),
       x = V("x"), y = V("y"), z = V("z");
  Poly level = Poly(third()) * c * cube_sum("nrvwz") +
               Poly(2) * r * v * z +
               (p * v + (n + r) * t + c * x * (z + w)) * y +
               (r + n) * x + (w + z) * p + c * v * t;
  return Stratum{"S2", make_vars("nprtvwxyz"), {"c"}, level, 1, {}, "x"};
}

Stratum make_s3() {
  Poly c = V("c");
  Poly n = V("n"), p = V("p"), r = V("r"), s = V("s"), t = V("t"), v = V("v"),
       x = V("x"), z = V("z");
  Poly level = Poly(third()) * c * cube_sum("nrsvz") +
               Poly(2) * r * v * z +
               (v + s) * p + (n + r) * t + c * z * x;
  return Stratum{"S3", make_vars("nprstvxz"), {"c"}, level, 1, {}, "p"};
}

Stratum make_x() {
  Poly c = V("c"), rho = V("rho");
  Poly x = V("x"), y = V("y"), z = V("z");
  Poly rho2 = rho * rho;
  Poly F = Poly(3) * rho * c * z.pow(2) - Poly(3) * rho2 * c * x * z +
           Poly(6) * y * z + (c.pow(4) + Poly(2) * c) * x.pow(2) -
           Poly(3) * rho * c.pow(3) * x * y +
           Poly(3) * rho2 * c.pow(2) * y.pow(2);
  Stratum st{"X", {}, {"c", "rho"}, x * F, 3, {x}, ""};
  st.vars = {StratumVar{"x", VarTable::index_of("x"), 1},
             StratumVar{"y", VarTable::index_of("y"), 1},
             StratumVar{"z", VarTable::index_of("z"), 1}};
  return st;
}

Stratum make_mw1() {
  Poly c = V("c");
  Poly x = V("x"), y = V("y"), z = V("z");
  Poly level = Poly(2) * x * y * z + Poly(third()) * c * cube_sum("xyz");
  Stratum st{"MW1", {}, {"c"}, level, 1, {}, ""};
  st.vars = {StratumVar{"x", VarTable::index_of("x"), 1},
             StratumVar{"y", VarTable::index_of("y"), 1},
             StratumVar{"z", VarTable::index_of("z"), 1}};
  return st;
}

PolyMat2 mat2(const Poly& a11, const Poly& a12, const Poly& a21,
              const Poly& a22) {
  PolyMat2 m;
  m(0, 0) = a11;
  m(0, 1) = a12;
  m(1, 0) = a21;
  m(1, 1) = a22;
  return m;
}

Stratum make_mw2() {
  CellRep g{mat2(V("n"), V("p"), V("q"), V("r")),
            mat2(V("s"), V("t"), V("u"), V("v")),
            mat2(V("w"), V("x"), V("y"), V("z"))};
  Poly level = trace_equation(g.X, g.Y, g.Z);
  return Stratum{"MW2", make_vars("npqrstuvwxyz"), {"c"}, level, 1, {}, ""};
}

const std::map<std::string, Stratum, std::less<>>& catalog() {
  static const std::map<std::string, Stratum, std::less<>> cat = [] {
    std::map<std::string, Stratum, std::less<>> m;
    for (Stratum st :
         {make_s1(), make_s2(), make_s3(), make_x(), make_mw1(), make_mw2()})
      m.emplace(st.name, std::move(st));
    return m;
  }();
  return cat;
}

}  // namespace

const Stratum& stratum(std::string_view name) {
  const auto& cat = catalog();
  auto it = cat.find(name);
  if (it == cat.end())
    throw std::invalid_argument("unknown stratum: " + std::string(name));
  return it->second;
}

const std::vector<std::string>& stratum_names() {
  static const std::vector<std::string> names = {"S1",  "S2", "S3",
                                                 "X",   "MW1", "MW2"};
  return names;
}

CellRep cell_rep(int cell) {
  Poly zero(0), one(1);
  switch (cell) {
    case 1:
      return {mat2(zero, V("p"), one, V("r")),
              mat2(V("s"), V("t"), V("u"), V("v")),
              mat2(V("w"), V("x"), V("y"), V("z"))};
    case 2:
      return {mat2(V("n"), V("p"), zero, V("r")),
              mat2(zero, V("t"), one, V("v")),
              mat2(V("w"), V("x"), V("y"), V("z"))};
    case 3:
      return {mat2(V("n"), V("p"), zero, V("r")),
              mat2(V("s"), V("t"), zero, V("v")),
              mat2(zero, V("x"), one, V("z"))};
    default:
      throw std::invalid_argument("cell_rep: cell must be 1, 2 or 3");
  }
}

Poly trace_equation(const PolyMat2& X, const PolyMat2& Y, const PolyMat2& Z) {
  PolyMat2 P = X * Y + Y * X;
  Poly mixed = (P * Z).trace();
  Poly cubes = (X * X * X).trace() + (Y * Y * Y).trace() + (Z * Z * Z).trace();
  return mixed + Poly(third()) * V("c") * cubes;
}

Poly derive_cell_equation(int cell) {
  CellRep r = cell_rep(cell);
  return trace_equation(r.X, r.Y, r.Z);
}

PolyMat3 gram_matrix() {
  Poly c = V("c"), u = V("u"), v = V("v"), w = V("w");
  PolyMat3 Q;
  Q(0, 0) = Poly(2) * u;
  Q(0, 1) = c * w;
  Q(0, 2) = c * v;
  Q(1, 0) = c * w;
  Q(1, 1) = Poly(2) * v;
  Q(1, 2) = c * u;
  Q(2, 0) = c * v;
  Q(2, 1) = c * u;
  Q(2, 2) = Poly(2) * w;
  return Q;
}

Poly det_gram() {
  PolyMat3 Q = gram_matrix();
  Poly det(0);
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    det += Q(0, j) * (Q(1, j1) * Q(2, j2) - Q(1, j2) * Q(2, j1));
  }
  return det;
}

Poly curve_dt_cubic() {
  Poly c = V("c");
  return Poly(2) * V("x") * V("y") * V("z") +
         Poly(third()) * c * cube_sum("xyz");
}

Poly curve_c_cubic() {
  Poly c = V("c");
  return (Poly(8) + Poly(2) * c.pow(3)) * V("x") * V("y") * V("z") -
         Poly(2) * c.pow(2) * cube_sum("xyz");
}

bool is_weighted_homogeneous(const Poly& f,
                             const std::vector<std::pair<int, int>>& weights,
                             int total) {
  std::array<int, VarTable::kMaxVars> w{};
  w.fill(0);
  for (auto [slot, wt] : weights) w[static_cast<std::size_t>(slot)] = wt;
  for (const auto& [mono, coef] : f.terms()) {
    int acc = 0;
    for (std::size_t i = 0; i < mono.size(); ++i)
      acc += int(mono[i]) * w[i];
    if (acc != total) return false;
  }
  return true;
}

XFrameChange x_frame_change(const FieldContext& F, FieldElement c,
                            FieldElement rho) {
  if (F.p() == 2 || F.p() == 3)
    throw field_error("x_frame_change: characteristic must be at least 5");
  if (c == F.zero()) throw field_error("x_frame_change: c = 0 is degenerate");
  FieldElement c2 = F.mul(c, c);
  FieldElement c3 = F.mul(c2, c);
  FieldElement c4 = F.mul(c3, c);
  if (c3 == F.one())
    throw field_error("x_frame_change: c^3 = 1 makes the frame singular");
  if (F.add(c3, F.embed(8)) == F.zero())
    throw field_error("x_frame_change: c^3 = -8 makes alpha vanish");
  if (F.mul(rho, F.mul(rho, rho)) != F.one())
    throw field_error("x_frame_change: rho must be a cube root of unity");
  FieldElement m =
      F.div(F.add(c4, F.mul(F.embed(8), c)), F.embed(12));
  FieldElement alpha;
  if (!F.sqrt(m, alpha))
    throw field_error("x_frame_change: (c^4+8c)/12 has no square root in " +
                      F.describe());
  FieldElement gb2 =
      F.mul(F.neg(F.sub(c3, F.one())), rho);  // -(c^3-1) * rho
  FieldElement gbar;
  if (!F.sqrt(gb2, gbar))
    throw field_error("x_frame_change: -(c^3-1)*rho has no square root in " +
                      F.describe());
  FieldElement gamma = F.div(gbar, c);
  FieldElement rho2 = F.mul(rho, rho);
  XFrameChange out;
  out.alpha = alpha;
  out.gamma = gamma;
  out.unit = F.mul(F.embed(2), alpha);
  // U = alpha x + gamma z ; V = -(c^2/2) x + rho c y + (rho^2/c) z ;
  // W = alpha x - gamma z.
  out.m[0] = {alpha, F.zero(), gamma};
  out.m[1] = {F.neg(F.div(c2, F.embed(2))), F.mul(rho, c), F.div(rho2, c)};
  out.m[2] = {alpha, F.zero(), F.neg(gamma)};
  return out;
}

namespace {

// Repeatedly rewrite var^order -> repl inside f until the degree drops.
Poly reduce_power(Poly f, int slot, int order, const Poly& repl) {
  for (;;) {
    int d = f.degree_in(slot);
    if (d < order) return f;
    Poly vlow = Poly::var(VarTable::name_of(slot));
    Poly low(0), high(0);
    for (int k = 0; k <= d; ++k) {
      Poly ck = f.coeff_of(slot, k);
      if (ck.is_zero()) continue;
      if (k < order)
        low += ck * vlow.pow(k);
      else
        high += ck * vlow.pow(k - order);
    }
    f = low + repl * high;
  }
}

}  // namespace

bool x_frame_identity_holds() {
  Poly c = V("c"), rho = V("rho"), ab = V("ab"), gb = V("gb");
  Poly x = V("x"), y = V("y"), z = V("z");
  Poly rho2 = rho * rho;
  Poly U = c * ab * x + Poly(6) * gb * z;
  Poly Vv = Poly(-3) * c.pow(3) * x + Poly(6) * rho * c.pow(2) * y +
            Poly(6) * rho2 * z;
  Poly W = c * ab * x - Poly(6) * gb * z;
  Poly lhs = (U + W) * (Vv * Vv + U * W);
  Poly F = Poly(3) * rho * c * z.pow(2) - Poly(3) * rho2 * c * x * z +
           Poly(6) * y * z + (c.pow(4) + Poly(2) * c) * x.pow(2) -
           Poly(3) * rho * c.pow(3) * x * y +
           Poly(3) * rho2 * c.pow(2) * y.pow(2);
  Poly rhs = Poly(24) * c.pow(3) * ab * x * F;
  Poly diff = lhs - rhs;
  diff = reduce_power(diff, VarTable::index_of("ab"), 2,
                      Poly(3) * c.pow(4) + Poly(24) * c);
  diff = reduce_power(diff, VarTable::index_of("gb"), 2,
                      -(c.pow(3) - Poly(1)) * rho);
  diff = reduce_power(diff, VarTable::index_of("rho"), 3, Poly(1));
  return diff.is_zero();
}

}  // namespace skdt
