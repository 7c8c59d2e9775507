#pragma once

#include "retset/config.hpp"
#include "retset/subvariety.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace retset {

/// E x E for E: y^2 = x^3 + A x + B over F_p, with g = ((t+1, sqrt(rhs(t+1))), (t, sqrt(rhs(t)))).
std::string curve_pair_text(std::uint32_t p = 5, std::int64_t A = 0, std::int64_t B = 1);
GroupConfig curve_pair_config(std::uint32_t p = 5, std::int64_t A = 0, std::int64_t B = 1);

/// G_m^3 over F_{p^2} with alpha the least generator of F_{p^2}^* and g = (t+alpha, t-alpha, t).
std::string torus_text(std::uint32_t p = 5);
GroupConfig torus_config(std::uint32_t p = 5);
/// x + y = 2 z + 2 alpha^2.
std::string torus_hyperplane_text();
PolySystem torus_hyperplane(const GroupConfig& cfg);

/// G_m^2 x E^2 with E: y^2 = x^3 + 1 over F_p and g = (t+1, t, (t+1, .), (t, .)).
std::string three_factor_text(std::uint32_t p = 5);
GroupConfig three_factor_config(std::uint32_t p = 5);
/// Factors C_1, C_2, C_3 whose sum contains the multiples (p^j + p^(2j)) g:
///   C_1 = {(x+1, x, O, O)}, C_2 = {(1, 1, (y+1, .), (y, .))}, C_3 = {(z+1, z, (z+1, .), (z, .))}
/// with x, z not in {0, -1}.
std::vector<std::string> three_factor_system_texts();
std::vector<PolySystem> three_factor_systems(const FieldPtr& f);
/// (t^(p^j)+1, t^(p^j), O, O) + (1, 1, p^(2j) Q_1, p^(2j) Q_2) + (t^(p^(2j))+1, t^(p^(2j)), p^j Q_1, p^j Q_2).
SumWitness three_factor_witness(const GroupConfig& cfg, unsigned j);

}  // namespace retset
