#pragma once

// Random instance generators shared by the unit and acceptance suites.
// Groupoids are built from their structure theory (disjoint unions of
// connected pieces, each a pair groupoid twisted by a vertex group), which
// guarantees validity; functors are generated from base-point images, vertex
// homomorphisms and spanning-tree transports, which guarantees functoriality.

#include <memory>
#include <random>
#include <vector>

#include "finstack/groupoid.hpp"

namespace finstack::testgen {

inline GroupTable random_vertex_group(std::mt19937& rng, int max_order) {
    std::vector<GroupTable> pool;
    for (int n = 1; n <= max_order; ++n) pool.push_back(cyclic_group(n));
    if (max_order >= 4) pool.push_back(klein_four());
    if (max_order >= 6) pool.push_back(symmetric_group_3());
    return pool[rng() % pool.size()];
}

/// Connected groupoid on `n` objects with vertex group `h`: objects 0..n-1,
/// morphism (x, y, e) from x to y for e in h.
inline FiniteGroupoid connected_groupoid(int n, const GroupTable& h) {
    int nm = n * n * h.n;
    auto enc = [&](int x, int y, int e) { return (x * n + y) * h.n + e; };
    std::vector<int> src(nm), tgt(nm), ident(n), inv(nm);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int e = 0; e < h.n; ++e) {
                src[enc(x, y, e)] = x;
                tgt[enc(x, y, e)] = y;
                inv[enc(x, y, e)] = enc(y, x, h.inv(e));
            }
    for (int x = 0; x < n; ++x) ident[x] = enc(x, x, h.unit);
    return FiniteGroupoid::build(n, src, tgt, ident, inv, [&](int f, int g) {
        int x = f / h.n / n, e1 = f % h.n;
        int y2 = (g / h.n) % n, e2 = g % h.n;
        return enc(x, y2, h.op(e1, e2));
    });
}

inline GpdPtr random_groupoid(std::mt19937& rng, int max_objects, int max_vertex_order = 4) {
    int remaining = 1 + static_cast<int>(rng() % max_objects);
    std::vector<FiniteGroupoid> pieces;
    while (remaining > 0) {
        int n = 1 + static_cast<int>(rng() % remaining);
        remaining -= n;
        pieces.push_back(connected_groupoid(n, random_vertex_group(rng, max_vertex_order)));
    }
    // disjoint union
    int no = 0, nm = 0;
    for (const auto& p : pieces) {
        no += p.n_objects();
        nm += p.n_morphisms();
    }
    std::vector<int> src(nm), tgt(nm), ident(no), inv(nm), piece_of(nm), base_m(nm);
    int oo = 0, mo = 0;
    std::vector<std::pair<int, int>> offsets;
    for (const auto& p : pieces) {
        offsets.push_back({oo, mo});
        for (int m = 0; m < p.n_morphisms(); ++m) {
            src[mo + m] = oo + p.src(m);
            tgt[mo + m] = oo + p.tgt(m);
            inv[mo + m] = mo + p.inv(m);
            piece_of[mo + m] = static_cast<int>(offsets.size()) - 1;
            base_m[mo + m] = mo;
        }
        for (int x = 0; x < p.n_objects(); ++x) ident[oo + x] = mo + p.ident(x);
        oo += p.n_objects();
        mo += p.n_morphisms();
    }
    auto g = FiniteGroupoid::build(no, src, tgt, ident, inv, [&](int f, int h) {
        const auto& p = pieces[piece_of[f]];
        return base_m[f] + p.compose(f - base_m[f], h - base_m[f]);
    });
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

/// Aut(x) of a groupoid as a group table plus the list of morphisms indexing it.
inline std::pair<GroupTable, std::vector<int>> vertex_group_at(const FiniteGroupoid& g, int x) {
    auto auts = g.hom(x, x);
    int k = static_cast<int>(auts.size());
    auto pos = [&](int m) {
        for (int i = 0; i < k; ++i)
            if (auts[i] == m) return i;
        return -1;
    };
    std::vector<int> mul(k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) mul[i * k + j] = pos(g.compose(auts[i], auts[j]));
    return {group_from_mul(k, std::move(mul)), auts};
}

/// Random functor dom -> cod, valid by construction.
inline GroupoidFunctor random_functor(std::mt19937& rng, GpdPtr dom, GpdPtr cod) {
    const auto& d = *dom;
    const auto& c = *cod;
    auto dinv = homotopy_invariants(d);
    auto cinv = homotopy_invariants(c);

    GroupoidFunctor f;
    f.dom = dom;
    f.cod = cod;
    f.obj_map.assign(d.n_objects(), -1);
    f.mor_map.assign(d.n_morphisms(), -1);

    int ncomp = static_cast<int>(dinv.representative.size());
    std::vector<int> tree(d.n_objects(), -1); // tree[x] : rep -> x
    std::vector<int> f_tree(d.n_objects(), -1);

    for (int comp = 0; comp < ncomp; ++comp) {
        int r = dinv.representative[comp];
        // spanning tree from the representative
        tree[r] = d.ident(r);
        std::vector<int> stack = {r};
        std::vector<int> members = {r};
        for (size_t k = 0; k < stack.size(); ++k) {
            int u = stack[k];
            for (int m : d.from(u)) {
                int v = d.tgt(m);
                if (tree[v] < 0) {
                    tree[v] = d.compose(tree[u], m);
                    stack.push_back(v);
                    members.push_back(v);
                }
            }
        }
        auto [h_table, h_morphs] = vertex_group_at(d, r);
        // image base point
        int cobj = static_cast<int>(rng() % c.n_objects());
        auto [k_table, k_morphs] = vertex_group_at(c, cobj);
        auto homs = enumerate_group_homs(h_table, k_table);
        const auto& phi = homs[rng() % homs.size()];
        auto phi_mor = [&](int m) { // vertex morphism at r -> vertex morphism at cobj
            for (size_t i = 0; i < h_morphs.size(); ++i)
                if (h_morphs[i] == m) return k_morphs[phi[i]];
            return -1;
        };
        // object images within the component of cobj, with transports
        int ccomp = cinv.component_of[cobj];
        std::vector<int> c_members;
        for (int y = 0; y < c.n_objects(); ++y)
            if (cinv.component_of[y] == ccomp) c_members.push_back(y);
        for (int x : members) {
            int img = (x == r) ? cobj : c_members[rng() % c_members.size()];
            f.obj_map[x] = img;
            auto h = c.hom(cobj, img);
            f_tree[x] = (x == r) ? c.ident(cobj) : h[rng() % h.size()];
        }
        for (int x : members)
            for (int m : d.from(x)) {
                int y = d.tgt(m);
                // m = tree[x]^{-1} then loop then tree[y]
                int loop = d.compose(d.compose(tree[x], m), d.inv(tree[y]));
                int img = c.compose(c.compose(c.inv(f_tree[x]), phi_mor(loop)), f_tree[y]);
                f.mor_map[m] = img;
            }
    }
    return f;
}

} // namespace finstack::testgen
