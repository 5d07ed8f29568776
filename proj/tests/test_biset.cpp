#include <doctest.h>

#include <memory>
#include <random>

#include "finstack/biset.hpp"
#include "util/gen.hpp"

using namespace finstack;

namespace {

GpdPtr share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

GroupoidFunctor group_hom_functor(GpdPtr dom, GpdPtr cod, const std::vector<int>& elem_map) {
    GroupoidFunctor f;
    f.dom = dom;
    f.cod = cod;
    f.obj_map = {0};
    f.mor_map = elem_map;
    require_valid(check_functor(f));
    return f;
}

/// Relabel the total set of a biset by a random permutation.
PrincipalBiset shuffle_biset(std::mt19937& rng, const PrincipalBiset& p) {
    std::vector<int> perm(p.total);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> inv(p.total);
    for (int i = 0; i < p.total; ++i) inv[perm[i]] = i;
    std::vector<int> tau(p.total), sigma(p.total);
    for (int i = 0; i < p.total; ++i) {
        tau[perm[i]] = p.tau[i];
        sigma[perm[i]] = p.sigma[i];
    }
    return make_biset(
        p.src_gpd, p.tgt_gpd, p.total, tau, sigma,
        [&](int g, int x) { return perm[p.lact(g, inv[x])]; },
        [&](int x, int h) { return perm[p.ract(inv[x], h)]; });
}

} // namespace

TEST_CASE("identity bibundle and bundlization of identities") {
    auto x = share(discrete_groupoid(3));
    auto idb = identity_bibundle(x);
    CHECK(idb.total == 3);
    CHECK(validate_biset(idb).ok());

    auto bz2 = share(delooping(cyclic_group(2)));
    auto idb2 = identity_bibundle(bz2);
    CHECK(idb2.total == 2);
    CHECK(validate_biset(idb2).ok());

    auto bd = bundlize(identity_functor(bz2));
    CHECK(validate_biset(bd).ok());
    CHECK(bisets_isomorphic(bd, idb2));
}

TEST_CASE("bundlize doubling Z/2 -> Z/4") {
    auto h = share(delooping(cyclic_group(2)));
    auto g = share(delooping(cyclic_group(4)));
    auto f = group_hom_functor(h, g, {0, 2});
    auto p = bundlize(f);
    CHECK(p.total == 4);
    CHECK(validate_biset(p).ok());
    // left Z/4-action is regular: single sigma-fiber, transporters exist
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(p.transporter(a, b) >= 0);
}

TEST_CASE("bundlize pt -> [pt/Z2] is not Morita") {
    auto pt = share(discrete_groupoid(1));
    auto bz2 = share(delooping(cyclic_group(2)));
    GroupoidFunctor f;
    f.dom = pt;
    f.cod = bz2;
    f.obj_map = {0};
    f.mor_map = {bz2->ident(0)};
    auto p = bundlize(f);
    CHECK(p.total == 2);
    CHECK(validate_biset(p).ok());
    CHECK(!is_morita(p));
    CHECK(is_morita(identity_bibundle(bz2)));
}

TEST_CASE("cech cover bundlization is Morita and inverts") {
    std::vector<int> cover = {0, 0, 1};
    auto cech = share(cech_groupoid(cover, 2));
    auto base = share(discrete_groupoid(2));
    auto p = bundlize(cech_projection(cech, cover, base));
    REQUIRE(validate_biset(p).ok());
    CHECK(is_morita(p));
    auto pinv = invert(p);
    CHECK(validate_biset(pinv).ok());
    auto round1 = compose_bibundles(p, pinv);   // base -> base
    auto round2 = compose_bibundles(pinv, p);   // cech -> cech
    CHECK(bisets_isomorphic(round1, identity_bibundle(base)));
    CHECK(bisets_isomorphic(round2, identity_bibundle(cech)));
}

TEST_CASE("quotient-then-double composes to the trivial endomorphism") {
    auto bz2 = share(delooping(cyclic_group(2)));
    auto bz4 = share(delooping(cyclic_group(4)));
    auto dbl = group_hom_functor(bz2, bz4, {0, 2});       // Z/2 -> Z/4
    auto quot = group_hom_functor(bz4, bz2, {0, 1, 0, 1}); // Z/4 -> Z/2
    auto composite = compose_bibundles(bundlize(quot), bundlize(dbl));
    CHECK(validate_biset(composite).ok());
    auto triv = group_hom_functor(bz2, bz2, {0, 0});
    CHECK(bisets_isomorphic(composite, bundlize(triv)));
    CHECK(!bisets_isomorphic(composite, bundlize(identity_functor(bz2))));
}

TEST_CASE("bundlization functoriality on random instances") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        auto k = testgen::random_groupoid(rng, 3);
        auto h = testgen::random_groupoid(rng, 3);
        auto g = testgen::random_groupoid(rng, 3);
        auto fun_g = testgen::random_functor(rng, k, h); // K -> H
        auto fun_f = testgen::random_functor(rng, h, g); // H -> G
        REQUIRE(check_functor(fun_g).ok());
        REQUIRE(check_functor(fun_f).ok());
        auto lhs = compose_bibundles(bundlize(fun_f), bundlize(fun_g));
        auto rhs = bundlize(compose_functors(fun_g, fun_f));
        CHECK(validate_biset(lhs).ok());
        CHECK(bisets_isomorphic(lhs, rhs));
    }
}

TEST_CASE("identity laws and invert round trip on random bisets") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto h = testgen::random_groupoid(rng, 3);
        auto g = testgen::random_groupoid(rng, 3);
        auto p = shuffle_biset(rng, bundlize(testgen::random_functor(rng, h, g)));
        REQUIRE(validate_biset(p).ok());
        CHECK(bisets_isomorphic(compose_bibundles(identity_bibundle(g), p), p));
        CHECK(bisets_isomorphic(compose_bibundles(p, identity_bibundle(h)), p));
        if (is_morita(p)) {
            auto q = invert(p);
            CHECK(bisets_isomorphic(invert(q), p));
            CHECK(same_homotopy_type(homotopy_invariants(*p.src_gpd),
                                     homotopy_invariants(*p.tgt_gpd)));
        }
    }
}

TEST_CASE("find_section recovers a presenting functor") {
    std::mt19937 rng(5);
    auto bz2 = share(delooping(cyclic_group(2)));
    auto idb = identity_bibundle(bz2);
    auto sec = find_section(idb);
    CHECK(sec.choice_count == 2);
    CHECK(bisets_isomorphic(bundlize(sec.functor), idb));

    for (int trial = 0; trial < 25; ++trial) {
        auto h = testgen::random_groupoid(rng, 3);
        auto g = testgen::random_groupoid(rng, 3);
        auto p = shuffle_biset(rng, bundlize(testgen::random_functor(rng, h, g)));
        auto s = find_section(p);
        CHECK(bisets_isomorphic(bundlize(s.functor), p));
    }
}

TEST_CASE("pullback of discrete sets is the fiber product") {
    auto x = share(discrete_groupoid(3));
    auto z = share(discrete_groupoid(2));
    auto y = share(discrete_groupoid(2));
    GroupoidFunctor fx; // 0,1 -> 0; 2 -> 1
    fx.dom = x;
    fx.cod = y;
    fx.obj_map = {0, 0, 1};
    fx.mor_map = {0, 0, 1};
    GroupoidFunctor fz; // 0 -> 0, 1 -> 1
    fz.dom = z;
    fz.cod = y;
    fz.obj_map = {0, 1};
    fz.mor_map = {0, 1};
    auto pb = pullback(bundlize(fx), bundlize(fz));
    // fiber product has pairs (0,0), (1,0), (2,1)
    CHECK(pb.groupoid.n_objects() == 3);
    CHECK(pb.groupoid.n_morphisms() == 3);
}

TEST_CASE("pullback of group homomorphisms is the two-sided action groupoid") {
    // pt -> Z/2 <- pt : trivial two-sided action, so the pullback is the
    // discrete set underlying Z/2 (the loop space of [pt/Z2])
    auto pt = share(discrete_groupoid(1));
    auto bz2 = share(delooping(cyclic_group(2)));
    GroupoidFunctor unit1;
    unit1.dom = pt;
    unit1.cod = bz2;
    unit1.obj_map = {0};
    unit1.mor_map = {bz2->ident(0)};
    auto pb = pullback(bundlize(unit1), bundlize(unit1));
    auto inv = homotopy_invariants(pb.groupoid);
    CHECK(check_bibundle_map(pb.witness).ok());
    // oracle: action groupoid of X x Z = pt acting on Y = Z/2 trivially
    auto act = action_groupoid(cyclic_group(1), 2, {0, 1});
    CHECK(same_homotopy_type(inv, homotopy_invariants(act)));

    // Z/2 -> Z/2 <- pt with the identity on the left: the two-sided action is
    // free and transitive, so the pullback is equivalent to a point
    auto bz2dom = share(delooping(cyclic_group(2)));
    GroupoidFunctor idf = identity_functor(bz2);
    auto pb2 = pullback(bundlize(idf), bundlize(unit1));
    auto inv2 = homotopy_invariants(pb2.groupoid);
    CHECK(inv2.representative.size() == 1);
    CHECK(inv2.isotropy[0].n == 1);
    (void)bz2dom;
}

TEST_CASE("pulling the canonical cover of [pt/G] against itself gives G1") {
    auto pt = share(discrete_groupoid(1));
    auto bz3 = share(delooping(cyclic_group(3)));
    GroupoidFunctor incl;
    incl.dom = pt;
    incl.cod = bz3;
    incl.obj_map = {0};
    incl.mor_map = {bz3->ident(0)};
    auto p = bundlize(incl);
    auto pb = pullback(p, p);
    CHECK(pb.groupoid.n_objects() == 3);     // |Z/3| = |X_1|
    CHECK(pb.groupoid.n_morphisms() == 3);   // discrete
}

TEST_CASE("pullback universal property: mediator exists and composes correctly") {
    auto pt = share(discrete_groupoid(1));
    auto bz2 = share(delooping(cyclic_group(2)));
    GroupoidFunctor unit1;
    unit1.dom = pt;
    unit1.cod = bz2;
    unit1.obj_map = {0};
    unit1.mor_map = {bz2->ident(0)};
    auto g_xy = bundlize(unit1);
    auto f_zy = bundlize(unit1);
    auto pb = pullback(g_xy, f_zy);

    // competing cone: the pullback itself with its projections
    auto med = pullback_mediator(pb, g_xy, f_zy, pb.proj1_biset, pb.proj2_biset, pb.witness);
    CHECK(validate_biset(med).ok());
    auto back1 = compose_bibundles(pb.proj1_biset, med);
    CHECK(bisets_isomorphic(back1, pb.proj1_biset));
    auto back2 = compose_bibundles(pb.proj2_biset, med);
    CHECK(bisets_isomorphic(back2, pb.proj2_biset));
}
