#pragma once

#include "mdh/json_io.hpp"
#include "mdh/providers.hpp"
#include "mdh/urep.hpp"

namespace mdh {

/// Genus-2 part of G-bar_D (D >= 2), fixed by [G-bar_D, G-bar_1] = 0 at weight 3 given the genus <= 1
/// densities and G-bar_1 = int(u^3/6 + eps^2 u u_2/24). The solution is unique modulo total derivatives
/// (checked); throws std::runtime_error otherwise.
UPolynomial solve_genus2_functional(int D, const IntegralProvider& genus01, Json* log = nullptr);

/// MD shape-H genus-2 entries for d = -1..d_max read off H_d = delta G-bar_{d+1} / delta u.
IntegralTable derive_genus2_md_table(int d_max, const IntegralProvider& genus01, Json* log = nullptr);

}  // namespace mdh
