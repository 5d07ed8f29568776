#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finstack/report.hpp"

namespace finstack {

/// A finite group given by its full multiplication table.
struct GroupTable {
    int n = 0;
    std::vector<int> mul;     // mul[a*n + b] = a*b
    int unit = 0;
    std::vector<int> inverse; // inverse[a]

    int op(int a, int b) const { return mul[a * n + b]; }
    int inv(int a) const { return inverse[a]; }
    bool is_abelian() const;
    int order_of(int a) const;
};

ValidationReport validate_group(const GroupTable& g);

/// Builds the table from `n` and the multiplication only; computes unit and
/// inverses, throws validation_error when the table is not a group.
GroupTable group_from_mul(int n, std::vector<int> mul);

GroupTable cyclic_group(int n);
GroupTable klein_four();
GroupTable symmetric_group_3();
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Brute-force isomorphism search; groups here have order <= ~24.
std::optional<std::vector<int>> group_isomorphism(const GroupTable& a, const GroupTable& b);

/// All homomorphisms a -> b, each as an element map. Exponential in |a|; meant
/// for desk-scale groups only.
std::vector<std::vector<int>> enumerate_group_homs(const GroupTable& a, const GroupTable& b);

std::string group_name(const GroupTable& g);

} // namespace finstack
