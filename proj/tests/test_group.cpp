#include <doctest.h>

#include "finstack/abelian.hpp"
#include "finstack/group.hpp"

using namespace finstack;

TEST_CASE("group constructors satisfy the axioms") {
    for (int n = 1; n <= 8; ++n) CHECK(validate_group(cyclic_group(n)).ok());
    CHECK(validate_group(klein_four()).ok());
    CHECK(validate_group(symmetric_group_3()).ok());
    CHECK(!symmetric_group_3().is_abelian());
    CHECK(klein_four().is_abelian());
}

TEST_CASE("isomorphism search distinguishes Z/4 from Z/2 x Z/2") {
    CHECK(!group_isomorphism(cyclic_group(4), klein_four()).has_value());
    CHECK(group_isomorphism(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)))
              .has_value());
    auto iso = group_isomorphism(symmetric_group_3(), symmetric_group_3());
    REQUIRE(iso.has_value());
    auto g = symmetric_group_3();
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK((*iso)[g.op(a, b)] == g.op((*iso)[a], (*iso)[b]));
}

TEST_CASE("hom enumeration: Hom(Z/4, Z/2) has two elements") {
    auto homs = enumerate_group_homs(cyclic_group(4), cyclic_group(2));
    CHECK(homs.size() == 2);
    auto homs2 = enumerate_group_homs(cyclic_group(3), cyclic_group(2));
    CHECK(homs2.size() == 1);
}

TEST_CASE("finite abelian group arithmetic") {
    FiniteAbelianGroup a{{2, 4}};
    CHECK(a.size() == 8);
    int x = a.index_of({1, 3});
    CHECK(a.tuple_of(x) == std::vector<int>{1, 3});
    CHECK(a.add(x, x) == a.index_of({0, 2}));
    CHECK(a.add(x, a.neg(x)) == 0);
    CHECK(a.order_of(x) == 4);
    CHECK(a.smul(3, x) == a.index_of({1, 1}));
}

TEST_CASE("canonical invariants") {
    CHECK(canonical_invariants({2, 3}) == std::vector<int>{6});
    CHECK(canonical_invariants({2, 4}) == std::vector<int>{2, 4});
    CHECK(canonical_invariants({1, 5}) == std::vector<int>{5});
    CHECK(abelian_isomorphic(FiniteAbelianGroup{{2, 3}}, FiniteAbelianGroup{{6}}));
    CHECK(!abelian_isomorphic(FiniteAbelianGroup{{4}}, FiniteAbelianGroup{{2, 2}}));
}

TEST_CASE("automorphism groups of small abelian groups") {
    std::vector<std::vector<int>> perms;
    CHECK(automorphism_group(zmod(4), &perms).n == 2);
    CHECK(automorphism_group(FiniteAbelianGroup{{2, 2}}, &perms).n == 6); // GL(2, F2)
    CHECK(automorphism_group(zmod(5), &perms).n == 4);
    for (const auto& p : perms) { // Z/5 automorphism maps are additive
        FiniteAbelianGroup a = zmod(5);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) CHECK(p[a.add(x, y)] == a.add(p[x], p[y]));
    }
}

TEST_CASE("actions: enumerate and validate") {
    auto g = cyclic_group(2);
    auto a = zmod(3);
    auto actions = enumerate_actions(g, a);
    CHECK(actions.size() == 2); // trivial and inversion
    for (const auto& act : actions) CHECK(validate_action(g, a, act).ok());
    int nontrivial = 0;
    for (const auto& act : actions) nontrivial += !act.is_trivial();
    CHECK(nontrivial == 1);
}

TEST_CASE("abelianize recovers invariant factors from a table") {
    auto t = direct_product(cyclic_group(2), cyclic_group(4));
    auto pres = abelianize(t);
    CHECK(canonical_invariants(pres.group.moduli) == std::vector<int>{2, 4});
    // the identification is an isomorphism
    for (int x = 0; x < t.n; ++x)
        for (int y = 0; y < t.n; ++y)
            CHECK(pres.to_canonical[t.op(x, y)] ==
                  pres.group.add(pres.to_canonical[x], pres.to_canonical[y]));

    auto z6 = direct_product(cyclic_group(2), cyclic_group(3));
    CHECK(canonical_invariants(abelianize(z6).group.moduli) == std::vector<int>{6});
}

TEST_CASE("linear solving over an abelian group") {
    FiniteAbelianGroup a{{2, 4}};
    // x + y = c, x - y = d
    ZMat coeff = {{1, 1}, {1, -1}};
    int c = a.index_of({1, 2}), d = a.index_of({1, 0});
    auto sol = solve_linear_over(a, coeff, {c, d});
    REQUIRE(sol.has_value());
    CHECK(a.add((*sol)[0], (*sol)[1]) == c);
    CHECK(a.sub((*sol)[0], (*sol)[1]) == d);
}

TEST_CASE("potential solving on a graph") {
    FiniteAbelianGroup a{{4}};
    // consistent triangle: x1-x0 = 1, x2-x1 = 1, x2-x0 = 2
    auto sol = solve_potentials(a, 3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}});
    REQUIRE(sol.has_value());
    CHECK(a.sub((*sol)[1], (*sol)[0]) == 1);
    CHECK(a.sub((*sol)[2], (*sol)[0]) == 2);
    // inconsistent cycle
    CHECK(!solve_potentials(a, 3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}}).has_value());
}
