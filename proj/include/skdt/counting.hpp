#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skdt/finite_field.hpp"
#include "skdt/motive.hpp"
#include "skdt/poly.hpp"
#include "skdt/strata.hpp"

namespace skdt {

enum class Strategy {
  automatic,     // specialized when available, else linear_fiber, else direct
  direct,        // enumerate every affine tuple, evaluate the level
  linear_fiber,  // fiber over the stratum's designated linear variable
  specialized,   // handwritten incremental loop for this stratum
};

Strategy strategy_from_name(std::string_view name);
std::string_view strategy_name(Strategy s);

struct CountOptions {
  Strategy strategy = Strategy::automatic;
  int threads = 1;
};

// Point counts of one stratum at level = level_scale * lambda for
// lambda in {0, 1}, from a single enumeration pass.
struct LevelCounts {
  std::array<std::int64_t, 2> n{0, 0};
  double seconds = 0.0;
  std::string strategy_used;
};

// n(0) - n(1): the coefficient-extraction combination every series
// computation consumes.
inline std::int64_t delta(const LevelCounts& lc) { return lc.n[0] - lc.n[1]; }

// Count `stratum(name)` over F at parameter c (and rho for the X chart).
LevelCounts count_stratum(std::string_view name, const FieldContext& F,
                          FieldElement c, FieldElement rho,
                          const CountOptions& opts = {});
inline LevelCounts count_stratum(std::string_view name, const FieldContext& F,
                                 FieldElement c,
                                 const CountOptions& opts = {}) {
  return count_stratum(name, F, c, F.one(), opts);
}

// #{cubic = 0} in P^2(F); `cubic` must live in x, y, z with parameter c.
// Verifies the affine-cone relation #cone = (|F|-1) * #proj + 1 internally.
std::int64_t count_projective_cubic(const Poly& cubic, const FieldContext& F,
                                    FieldElement c);

// Counting data for every symbol the series layer can specialize, over GF(q)
// and GF(q^2): E_DT, E_c (projective cubics), S_DT (affine level-1 fiber),
// MU3, MU3_4 (cube-root counts), X0, X1 (rho = 1 branch of the X chart).
CountBundle curve_counts_bundle(std::int64_t q, std::int64_t c,
                                int threads = 1);

// Frame-change admissibility of c over F (meant for GF(q^2)): c nonzero,
// c^3 not 1 or -8, (c^4+8c)/12 and c^3-1 both squares, and 2*alpha a cube.
// `why`, when non-null, receives the first failing condition.
bool is_admissible(const FieldContext& F, FieldElement c,
                   std::string* why = nullptr);
std::vector<FieldElement> admissible_c(const FieldContext& F);

}  // namespace skdt
