#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <random>
#include <vector>

#include "skdt/eigen_poly.hpp"
#include "skdt/poly.hpp"

namespace skdt::clifford {

using Cx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

// Gram matrix of the defining quadratic form at the point p = (u, v, w).
Mat3 gram(Cx c, const Vec3& p);
Cx det_gram_value(Cx c, const Vec3& p);

// Congruence diagonalization P^T Q P = diag(D) by one of two pivot tableaux,
// applied after an automatic search over coordinate permutations. Throws
// std::runtime_error with a descriptive message when no tableau applies
// (the c^3 = 8 degeneration), or when u = v = w = 0.
struct Diagonalization {
  Mat3 P;
  Vec3 D;
  int case_tag = 0;          // 1 or 2
  std::array<int, 3> perm{}; // original index of each permuted coordinate
};
Diagonalization diagonalize(Cx c, const Vec3& p, double eps = 1e-9,
                            int force_case = 0);

// Two-dimensional representation attached to the diagonalization: the images
// of the three generators in Pauli coordinates. `sign` picks the branch of
// the third square root, giving the two candidate representations.
struct Rep {
  Mat2 X, Y, Z;
  int sign = +1;
};
Rep build_rep(Cx c, const Vec3& p, int sign,
              const Diagonalization* dg = nullptr);

struct RepCheck {
  double relation_residual = 0;  // the three quadratic exchange relations
  double center_residual = 0;    // generator squares against u, v, w
  double trace_residual = 0;     // |tr(XYZ)^2 + det(Q)/2|
};
RepCheck verify_rep(const Rep& r, Cx c, const Vec3& p);

// Trace-character comparison on all words of length <= 3.
bool equivalent(const Rep& a, const Rep& b, double tol);

// Exact symbolic tableaux in Q[u, v, w, c]; both satisfy
// Pt * Q * Pt^T == diag(D) identically.
struct SymDiag {
  PolyMat3 Pt;
  std::array<Poly, 3> D;
};
SymDiag case1_tableau();
SymDiag case2_tableau();
bool tableau_identity_holds(const SymDiag& t);

// Sample points with det Q = 0 by solving the degree-three resolvent in the
// last coordinate at random (u, v).
std::vector<Vec3> degenerate_locus_points(Cx c, std::mt19937_64& rng,
                                          int count);

// The family where the first tableau's pivot vanishes for the identity
// frame: (u, 4u w^2/c^2, 4u w/c^2) with w a cube root of unity.
Vec3 case2_locus_point(Cx c, Cx u, int which_root);

}  // namespace skdt::clifford
