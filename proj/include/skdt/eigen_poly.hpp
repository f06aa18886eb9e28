#pragma once

#include <Eigen/Core>

#include "skdt/poly.hpp"

// Lets Eigen dense matrices carry exact polynomial entries, so 2x2/3x3
// symbolic trace and congruence computations reuse Eigen's expression
// machinery instead of hand-rolled loops.
namespace Eigen {

template <>
struct NumTraits<skdt::Poly> : GenericNumTraits<skdt::Poly> {
  typedef skdt::Poly Real;
  typedef skdt::Poly NonInteger;
  typedef skdt::Poly Nested;
  typedef skdt::Poly Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256,
  };
  static inline Real epsilon() { return skdt::Poly(0); }
  static inline Real dummy_precision() { return skdt::Poly(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace skdt {

using PolyMat2 = Eigen::Matrix<Poly, 2, 2>;
using PolyMat3 = Eigen::Matrix<Poly, 3, 3>;

}  // namespace skdt
