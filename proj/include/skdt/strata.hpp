#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "skdt/eigen_poly.hpp"
#include "skdt/finite_field.hpp"
#include "skdt/poly.hpp"

namespace skdt {

// One affine enumeration variable of a stratum, in counting order.
struct StratumVar {
  std::string name;
  int var;     // VarTable slot
  int weight;  // grading weight inherited from the matrix-entry grading
};

// A locally closed piece of the representation space, presented as an affine
// chart: free variables, a level polynomial, and open (nonvanishing)
// conditions. Points are counted against level == level_scale * lambda.
struct Stratum {
  std::string name;
  std::vector<StratumVar> vars;
  std::vector<std::string> params;  // symbolic parameters ("c", maybe "rho")
  Poly level;
  int level_scale = 1;
  std::vector<Poly> nonzero;
  std::string fiber_var;  // preferred variable for the linear-fiber strategy
};

// Catalog access by name: "S1", "S2", "S3", "X", "MW1", "MW2".
const Stratum& stratum(std::string_view name);
const std::vector<std::string>& stratum_names();

// The three section-normalized chart representatives for the rank-two piece,
// as symbolic 2x2 matrix triples.
struct CellRep {
  PolyMat2 X, Y, Z;
};
CellRep cell_rep(int cell);  // cell in {1, 2, 3}

// tr((XY + YX) Z) + (c/3) (tr X^3 + tr Y^3 + tr Z^3).
Poly trace_equation(const PolyMat2& X, const PolyMat2& Y, const PolyMat2& Z);

// The trace equation evaluated on cell_rep(cell); equals the catalog level
// polynomial of S1/S2/S3 exactly.
Poly derive_cell_equation(int cell);

// Gram matrix of the quadratic form attached to a point (u, v, w), with the
// symbolic parameter c, and its determinant (a plane cubic in u, v, w).
PolyMat3 gram_matrix();
Poly det_gram();

// The two plane cubics whose point counts feed the series coefficients:
// 2xyz + (c/3)(x^3+y^3+z^3) and (8+2c^3)xyz - 2c^2(x^3+y^3+z^3).
Poly curve_dt_cubic();
Poly curve_c_cubic();

// True when every monomial of f has the same total weight `total` under the
// given (VarTable slot, weight) assignment.
bool is_weighted_homogeneous(const Poly& f,
                             const std::vector<std::pair<int, int>>& weights,
                             int total);

// Linear change of frame that takes the X-chart level to the Hesse-pencil
// normal form (U + W)(V^2 + U W) = unit * lambda. Requires characteristic
// at least 5 and the square roots listed in the thrown message to exist.
struct XFrameChange {
  std::array<std::array<FieldElement, 3>, 3> m;  // rows: U, V, W coefficients
  FieldElement alpha;                            // alpha^2 = (c^4 + 8c)/12
  FieldElement gamma;                            // (c*gamma)^2 = -(c^3-1)*rho
  FieldElement unit;                             // 2 * alpha
};
XFrameChange x_frame_change(const FieldContext& F, FieldElement c,
                            FieldElement rho);

// Exact symbolic verification of the identity behind x_frame_change, in
// Q[x,y,z,c,rho,ab,gb] modulo rho^3 = 1, ab^2 = 3c^4 + 24c,
// gb^2 = -(c^3 - 1) rho.
bool x_frame_identity_holds();

}  // namespace skdt
