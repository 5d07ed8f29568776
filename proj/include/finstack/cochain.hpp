#pragma once

#include <vector>

#include "finstack/abelian.hpp"
#include "finstack/group.hpp"

namespace finstack {

/// Group cochain G^n -> A stored as a total table. Tuples (g_1,...,g_n) are
/// indexed little-endian: index = sum g_i |G|^{i-1}.
struct Cochain {
    int degree = 0;
    FiniteAbelianGroup coeff;
    std::vector<int> values; // |G|^degree entries of A-element indices
    bool normalized = false;

    int at(const std::vector<int>& tuple, int group_order) const;
};

long long pow_ll(long long b, int e);
int tuple_index(int group_order, const std::vector<int>& tuple);
std::vector<int> index_tuple(int group_order, int degree, long long index);

Cochain zero_cochain(const GroupTable& g, const FiniteAbelianGroup& a, int degree);

/// True when the cochain vanishes on every tuple containing the unit.
bool is_normalized(const GroupTable& g, const Cochain& c);

/// Twisted bar differential:
///   (dc)(g_1,...,g_{n+1}) = rho(g_1)·c(g_2,...,g_{n+1})
///     + sum_i (-1)^i c(g_1,..,g_i g_{i+1},..,g_{n+1})
///     + (-1)^{n+1} c(g_1,...,g_n).
/// Preserves normalization.
Cochain bar_differential(const GroupTable& g, const GAction& rho, const Cochain& c);

bool is_zero(const Cochain& c);
Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_sub(const Cochain& a, const Cochain& b);

} // namespace finstack
