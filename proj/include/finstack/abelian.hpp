#pragma once

#include <optional>
#include <vector>

#include "finstack/group.hpp"
#include "finstack/report.hpp"
#include "finstack/zlin.hpp"

namespace finstack {

/// Finite abelian group presented by a list of moduli; elements are tuples of
/// residues, addressed by a mixed-radix index (first modulus least
/// significant). Written additively.
struct FiniteAbelianGroup {
    std::vector<int> moduli;

    int size() const {
        int s = 1;
        for (int m : moduli) s *= m;
        return s;
    }
    int rank() const { return static_cast<int>(moduli.size()); }
    bool trivial() const { return size() == 1; }

    std::vector<int> tuple_of(int a) const;
    int index_of(const std::vector<int>& t) const;

    int zero() const { return 0; }
    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int smul(long long k, int a) const;
    int order_of(int a) const;

    GroupTable as_group_table() const;
};

FiniteAbelianGroup zmod(int n);
FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

/// Canonical invariant factors (divisibility chain, 1s dropped) of a moduli list.
std::vector<int> canonical_invariants(const std::vector<int>& moduli);
bool abelian_isomorphic(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

/// Endomorphisms/automorphisms of A, as element maps of length |A|.
std::vector<std::vector<int>> enumerate_endomorphisms(const FiniteAbelianGroup& a);
std::vector<std::vector<int>> enumerate_automorphisms(const FiniteAbelianGroup& a);

/// Aut(A) as a group table; perms_out receives the element map of each
/// automorphism, indexed consistently with the table.
GroupTable automorphism_group(const FiniteAbelianGroup& a,
                              std::vector<std::vector<int>>* perms_out);

/// Action of a finite group on A by automorphisms: rho[g] is an element map.
struct GAction {
    std::vector<std::vector<int>> rho;

    int apply(int g, int a) const { return rho[g][a]; }
    bool is_trivial() const;

    static GAction trivial(const GroupTable& g, const FiniteAbelianGroup& a);
};

ValidationReport validate_action(const GroupTable& g, const FiniteAbelianGroup& a,
                                 const GAction& act);

/// All homomorphisms G -> Aut(A); exponential in |G|, desk scale only.
std::vector<GAction> enumerate_actions(const GroupTable& g, const FiniteAbelianGroup& a);

/// Identify an abelian group table with a canonical FiniteAbelianGroup.
struct AbelianPresentation {
    FiniteAbelianGroup group;
    std::vector<int> to_canonical;   // table element -> canonical index
    std::vector<int> from_canonical; // canonical index -> table element
};
AbelianPresentation abelianize(const GroupTable& g);

/// Solve an A-valued linear system: unknowns x_0..x_{N-1} in A, equations
/// sum_j coeff[i][j] * x_j = rhs[i] with integer coefficients. Componentwise
/// over the moduli of A. Returns element indices.
std::optional<std::vector<int>> solve_linear_over(const FiniteAbelianGroup& a, const ZMat& coeff,
                                                  const std::vector<int>& rhs);

/// Spanning set for the homogeneous solutions of the same system.
std::vector<std::vector<int>> kernel_over(const FiniteAbelianGroup& a, const ZMat& coeff,
                                          int unknowns);

/// Difference constraints x[v] - x[u] = diff on a graph; BFS per component
/// with roots pinned to 0. Returns std::nullopt on inconsistency.
struct PotentialEdge {
    int u, v, diff;
};
std::optional<std::vector<int>> solve_potentials(const FiniteAbelianGroup& a, int nodes,
                                                 const std::vector<PotentialEdge>& edges);

} // namespace finstack
