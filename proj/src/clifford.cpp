#include "skdt/clifford.hpp"

#include <cmath>
#include <stdexcept>

#include "skdt/strata.hpp"

namespace skdt::clifford {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0},
}};

Mat3 perm_matrix(const std::array<int, 3>& perm) {
  // rows pick original coordinates: (Pm x)_i = x_{perm[i]}
  Mat3 m = Mat3::Zero();
  for (int i = 0; i < 3; ++i) m(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return m;
}

struct Tableau {
  Mat3 Pt;
  Vec3 D;
  bool usable = false;
};

// First tableau at a permuted point: pivots 2u, then 2uA with A = 4uv-c^2w^2.
Tableau case1_at(Cx c, Cx u, Cx v, Cx w, double eps) {
  Tableau t;
  Cx A = 4.0 * u * v - c * c * w * w;
  if (std::abs(u) <= eps || std::abs(A) <= eps) return t;
  Cx B = c * u * w - 2.0 * v * v;
  Cx C = c * v * w - 2.0 * u * u;
  Cx D = det_gram_value(c, Vec3(u, v, w));
  t.Pt << Cx(1), Cx(0), Cx(0),
      -c * w, 2.0 * u, Cx(0),
      2.0 * c * u * B, 2.0 * c * u * C, 2.0 * u * A;
  t.D = Vec3(2.0 * u, 2.0 * u * A, 4.0 * u * u * A * D);
  t.usable = true;
  return t;
}

// Second tableau: used when every first-tableau pivot degenerates.
Tableau case2_at(Cx c, Cx u, Cx v, Cx w, double eps) {
  Tableau t;
  Cx Q1 = c * c * v * w - 4.0 * u * w + c * c * v * v - 2.0 * c * u * u;
  Cx Q2 = c * c * w * w + c * c * v * w - 4.0 * u * v - 2.0 * c * u * u;
  Cx piv = Q1 + Q2;
  if (std::abs(u) <= eps || std::abs(piv) <= eps) return t;
  Cx Q0 = (w - v) * (2.0 * w + 2.0 * v + c * u);
  Cx D = det_gram_value(c, Vec3(u, v, w));
  Cx u2 = u * u;
  t.Pt << Cx(1), Cx(0), Cx(0),
      -c * v - c * w, 2.0 * u, 2.0 * u,
      4.0 * c * u2 * Q0, 4.0 * u2 * Q1, -4.0 * u2 * Q2;
  t.D = Vec3(2.0 * u, -2.0 * u * piv, -16.0 * u2 * u2 * piv * D);
  t.usable = true;
  return t;
}

double fro(const Mat2& m) { return m.norm(); }

Poly pv(const char* n) { return Poly::var(n); }

}  // namespace

Mat3 gram(Cx c, const Vec3& p) {
  Cx u = p(0), v = p(1), w = p(2);
  Mat3 q;
  q << 2.0 * u, c * w, c * v,
      c * w, 2.0 * v, c * u,
      c * v, c * u, 2.0 * w;
  return q;
}

Cx det_gram_value(Cx c, const Vec3& p) {
  Cx u = p(0), v = p(1), w = p(2);
  return 8.0 * u * v * w + 2.0 * c * c * c * u * v * w -
         2.0 * c * c * (u * u * u + v * v * v + w * w * w);
}

Diagonalization diagonalize(Cx c, const Vec3& p, double eps, int force_case) {
  if (p.norm() <= eps)
    throw std::runtime_error("diagonalize: the zero point has no frame");
  for (int pass = 1; pass <= 2; ++pass) {
    if (force_case != 0 && force_case != pass) continue;
    for (const auto& perm : kPerms) {
      Cx u = p(perm[0]), v = p(perm[1]), w = p(perm[2]);
      Tableau t = pass == 1 ? case1_at(c, u, v, w, eps)
                            : case2_at(c, u, v, w, eps);
      if (!t.usable) continue;
      Diagonalization d;
      // t diagonalizes the permuted Gram matrix Qp = Pm Q Pm^T, so
      // P = Pm^T * t.Pt^T diagonalizes Q itself.
      Mat3 pm = perm_matrix(perm);
      d.P = pm.transpose() * t.Pt.transpose();
      d.D = t.D;
      d.case_tag = pass;
      d.perm = perm;
      return d;
    }
  }
  throw std::runtime_error(
      "diagonalize: no pivot tableau applies at this point (all first "
      "pivots and both-tableau pivots vanish; this is the c^3 = 8 "
      "degeneration of the quadratic form)");
}

Rep build_rep(Cx c, const Vec3& p, int sign, const Diagonalization* dg) {
  Diagonalization local;
  if (dg == nullptr) {
    local = diagonalize(c, p);
    dg = &local;
  }
  Mat3 M = dg->P.inverse();
  Vec3 s;
  for (int k = 0; k < 3; ++k) s(k) = std::sqrt(dg->D(k));
  const Cx i(0, 1);
  Mat2 sig[3];
  sig[0] << Cx(0), Cx(1), Cx(1), Cx(0);
  sig[1] << Cx(0), i, -i, Cx(0);
  sig[2] << Cx(1), Cx(0), Cx(0), Cx(-1);
  const double r = 1.0 / std::sqrt(2.0);
  Rep rep;
  rep.sign = sign;
  Mat2* out[3] = {&rep.X, &rep.Y, &rep.Z};
  for (int col = 0; col < 3; ++col) {
    Mat2 acc = Mat2::Zero();
    for (int k = 0; k < 3; ++k) {
      Cx coef = M(k, col) * s(k) * r;
      if (k == 2 && sign < 0) coef = -coef;
      acc += coef * sig[k];
    }
    *out[col] = acc;
  }
  return rep;
}

RepCheck verify_rep(const Rep& r, Cx c, const Vec3& p) {
  const Mat2 I = Mat2::Identity();
  RepCheck out;
  Mat2 r1 = r.X * r.Y + r.Y * r.X - c * r.Z * r.Z;
  Mat2 r2 = r.Y * r.Z + r.Z * r.Y - c * r.X * r.X;
  Mat2 r3 = r.Z * r.X + r.X * r.Z - c * r.Y * r.Y;
  out.relation_residual = std::max({fro(r1), fro(r2), fro(r3)});
  Mat2 c1 = r.X * r.X - p(0) * I;
  Mat2 c2 = r.Y * r.Y - p(1) * I;
  Mat2 c3 = r.Z * r.Z - p(2) * I;
  out.center_residual = std::max({fro(c1), fro(c2), fro(c3)});
  Cx tr = (r.X * r.Y * r.Z).trace();
  out.trace_residual = std::abs(tr * tr + det_gram_value(c, p) / 2.0);
  return out;
}

bool equivalent(const Rep& a, const Rep& b, double tol) {
  auto words = [](const Rep& r) {
    return std::array<Cx, 7>{
        r.X.trace(),           r.Y.trace(),           r.Z.trace(),
        (r.X * r.Y).trace(),   (r.Y * r.Z).trace(),   (r.Z * r.X).trace(),
        (r.X * r.Y * r.Z).trace()};
  };
  auto wa = words(a), wb = words(b);
  double gap = 0;
  for (std::size_t i = 0; i < wa.size(); ++i)
    gap = std::max(gap, std::abs(wa[i] - wb[i]));
  return gap < tol;
}

SymDiag case1_tableau() {
  Poly u = pv("u"), v = pv("v"), w = pv("w"), c = pv("c");
  Poly A = Poly(4) * u * v - c * c * w * w;
  Poly B = c * u * w - Poly(2) * v * v;
  Poly C = c * v * w - Poly(2) * u * u;
  Poly D = det_gram();
  SymDiag t;
  t.Pt(0, 0) = Poly(1); t.Pt(0, 1) = Poly(0); t.Pt(0, 2) = Poly(0);
  t.Pt(1, 0) = -(c * w); t.Pt(1, 1) = Poly(2) * u; t.Pt(1, 2) = Poly(0);
  t.Pt(2, 0) = Poly(2) * c * u * B;
  t.Pt(2, 1) = Poly(2) * c * u * C;
  t.Pt(2, 2) = Poly(2) * u * A;
  t.D = {Poly(2) * u, Poly(2) * u * A, Poly(4) * u * u * A * D};
  return t;
}

SymDiag case2_tableau() {
  Poly u = pv("u"), v = pv("v"), w = pv("w"), c = pv("c");
  Poly Q0 = (w - v) * (Poly(2) * w + Poly(2) * v + c * u);
  Poly Q1 = c * c * v * w - Poly(4) * u * w + c * c * v * v -
            Poly(2) * c * u * u;
  Poly Q2 = c * c * w * w + c * c * v * w - Poly(4) * u * v -
            Poly(2) * c * u * u;
  Poly piv = Q1 + Q2;
  Poly D = det_gram();
  Poly u2 = u * u;
  SymDiag t;
  t.Pt(0, 0) = Poly(1); t.Pt(0, 1) = Poly(0); t.Pt(0, 2) = Poly(0);
  t.Pt(1, 0) = -(c * v) - c * w;
  t.Pt(1, 1) = Poly(2) * u;
  t.Pt(1, 2) = Poly(2) * u;
  t.Pt(2, 0) = Poly(4) * c * u2 * Q0;
  t.Pt(2, 1) = Poly(4) * u2 * Q1;
  t.Pt(2, 2) = -(Poly(4) * u2 * Q2);
  t.D = {Poly(2) * u, -(Poly(2) * u * piv),
         -(Poly(16) * u2 * u2 * piv * D)};
  return t;
}

bool tableau_identity_holds(const SymDiag& t) {
  PolyMat3 Q = gram_matrix();
  PolyMat3 M = t.Pt * Q * t.Pt.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Poly& want = (i == j) ? t.D[static_cast<std::size_t>(i)] : Poly(0);
      if (M(i, j) != want) return false;
    }
  return true;
}

std::vector<Vec3> degenerate_locus_points(Cx c, std::mt19937_64& rng,
                                          int count) {
  if (std::abs(c) < 1e-12)
    throw std::invalid_argument("degenerate_locus_points: c must be nonzero");
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rnd = [&] { return Cx(unif(rng), unif(rng)); };
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < count) {
    Cx u = rnd() + Cx(0.5, 0), v = rnd() + Cx(0, 0.5);
    // det Q = 0 as a monic cubic in w:
    //   w^3 - (4 + c^3) u v / c^2 * w + (u^3 + v^3) = 0
    Cx a1 = -(4.0 + c * c * c) * u * v / (c * c);
    Cx a0 = u * u * u + v * v * v;
    Mat3 comp = Mat3::Zero();
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    comp(0, 2) = -a0;
    comp(1, 2) = -a1;
    Eigen::ComplexEigenSolver<Mat3> es(comp);
    for (int k = 0; k < 3 && static_cast<int>(pts.size()) < count; ++k) {
      Cx w = es.eigenvalues()(k);
      // polish the root to machine precision: the representation-equivalence
      // gap scales like sqrt(|det Q|), so 1e-8 residue is not small enough
      for (int it = 0; it < 3; ++it) {
        Cx f = w * w * w + a1 * w + a0;
        Cx df = 3.0 * w * w + a1;
        if (std::abs(df) < 1e-12) break;
        w -= f / df;
      }
      Vec3 p(u, v, w);
      if (std::abs(det_gram_value(c, p)) < 1e-12) pts.push_back(p);
    }
  }
  return pts;
}

Vec3 case2_locus_point(Cx c, Cx u, int which_root) {
  const double tau = 2.0 * M_PI * (which_root % 3) / 3.0;
  Cx omega = std::polar(1.0, tau);
  Cx v = 4.0 * u * omega * omega / (c * c);
  Cx w = 4.0 * u * omega / (c * c);
  return Vec3(u, v, w);
}

}  // namespace skdt::clifford
