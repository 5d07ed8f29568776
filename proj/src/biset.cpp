#include "finstack/biset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace finstack {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b); // min-root for determinism
    }
};

} // namespace

int PrincipalBiset::transporter(int p, int q) const {
    const auto& g = *tgt_gpd;
    for (int m = 0; m < g.n_morphisms(); ++m)
        if (g.src(m) == tau[p] && lact(m, p) == q) return m;
    return -1;
}

ValidationReport validate_biset(const PrincipalBiset& p) {
    ValidationReport rep;
    const auto& g = *p.tgt_gpd;
    const auto& h = *p.src_gpd;
    int n = p.total;
    if (static_cast<int>(p.tau.size()) != n || static_cast<int>(p.sigma.size()) != n) {
        rep.add("anchor-shape", {});
        return rep;
    }
    for (int x = 0; x < n; ++x)
        if (p.tau[x] < 0 || p.tau[x] >= g.n_objects() || p.sigma[x] < 0 ||
            p.sigma[x] >= h.n_objects()) {
            rep.add("anchor-range", {x});
            return rep;
        }
    std::vector<bool> hit(h.n_objects(), false);
    for (int x = 0; x < n; ++x) hit[p.sigma[x]] = true;
    for (int y = 0; y < h.n_objects(); ++y)
        if (!hit[y]) rep.add("sigma-surjective", {y});

    // domain of definition and anchor transformation
    for (int m = 0; m < g.n_morphisms(); ++m)
        for (int x = 0; x < n; ++x) {
            int r = p.lact(m, x);
            bool def = g.src(m) == p.tau[x];
            if (def != (r >= 0)) {
                rep.add("left-domain", {m, x});
                return rep;
            }
            if (r >= 0) {
                if (p.tau[r] != g.tgt(m)) rep.add("left-tau", {m, x});
                if (p.sigma[r] != p.sigma[x]) rep.add("left-sigma", {m, x});
            }
        }
    for (int x = 0; x < n; ++x)
        for (int m = 0; m < h.n_morphisms(); ++m) {
            int r = p.ract(x, m);
            bool def = p.sigma[x] == h.tgt(m);
            if (def != (r >= 0)) {
                rep.add("right-domain", {x, m});
                return rep;
            }
            if (r >= 0) {
                if (p.sigma[r] != h.src(m)) rep.add("right-sigma", {x, m});
                if (p.tau[r] != p.tau[x]) rep.add("right-tau", {x, m});
            }
        }
    if (!rep.ok()) return rep;

    for (int x = 0; x < n; ++x) {
        if (p.lact(g.ident(p.tau[x]), x) != x) rep.add("left-unit", {x});
        if (p.ract(x, h.ident(p.sigma[x])) != x) rep.add("right-unit", {x});
    }

    // g1·(g2·p) = (g2 then g1)·p
    for (int g2 = 0; g2 < g.n_morphisms() && rep.ok(); ++g2)
        for (int x = 0; x < n; ++x) {
            if (g.src(g2) != p.tau[x]) continue;
            int y = p.lact(g2, x);
            bool stop = false;
            for (int g1 : g.from(g.tgt(g2)))
                if (p.lact(g1, y) != p.lact(g.compose(g2, g1), x)) {
                    rep.add("left-associativity", {g1, g2, x});
                    stop = true;
                    break;
                }
            if (stop) break;
        }
    // (p·h1)·h2 = p·(h2 then h1)
    for (int x = 0; x < n && rep.ok(); ++x)
        for (int h1 = 0; h1 < h.n_morphisms(); ++h1) {
            if (p.sigma[x] != h.tgt(h1)) continue;
            int y = p.ract(x, h1);
            bool stop = false;
            for (int h2 : h.into(h.src(h1)))
                if (p.ract(y, h2) != p.ract(x, h.compose(h2, h1))) {
                    rep.add("right-associativity", {x, h1, h2});
                    stop = true;
                    break;
                }
            if (stop) break;
        }
    // commutation
    for (int m = 0; m < g.n_morphisms() && rep.ok(); ++m)
        for (int x = 0; x < n; ++x) {
            if (g.src(m) != p.tau[x]) continue;
            bool stop = false;
            for (int h1 : h.into(p.sigma[x]))
                if (p.lact(m, p.ract(x, h1)) != p.ract(p.lact(m, x), h1)) {
                    rep.add("action-commutation", {m, x, h1});
                    stop = true;
                    break;
                }
            if (stop) break;
        }
    if (!rep.ok()) return rep;

    // simple transitivity: (g, p) -> (g·p, p) bijects onto sigma-fiber pairs
    std::map<std::pair<int, int>, int> seen;
    long long pairs_lhs = 0;
    for (int m = 0; m < g.n_morphisms(); ++m)
        for (int x = 0; x < n; ++x) {
            if (g.src(m) != p.tau[x]) continue;
            ++pairs_lhs;
            auto key = std::make_pair(p.lact(m, x), x);
            if (seen.count(key)) {
                rep.add("simply-transitive-injective", {m, x});
                return rep;
            }
            seen[key] = m;
        }
    long long pairs_rhs = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (p.sigma[x] == p.sigma[y]) {
                ++pairs_rhs;
                if (!seen.count({x, y})) rep.add("simply-transitive-surjective", {x, y});
            }
    if (pairs_lhs != pairs_rhs && rep.ok()) rep.add("simply-transitive-count", {});
    return rep;
}

ValidationReport check_bibundle_map(const BibundleMap& m) {
    ValidationReport rep;
    const auto& a = m.dom;
    const auto& b = m.cod;
    if (static_cast<int>(m.carrier.size()) != a.total) {
        rep.add("carrier-shape", {});
        return rep;
    }
    for (int x = 0; x < a.total; ++x) {
        if (b.tau[m.carrier[x]] != a.tau[x]) rep.add("commutes-tau", {x});
        if (b.sigma[m.carrier[x]] != a.sigma[x]) rep.add("commutes-sigma", {x});
    }
    if (!rep.ok()) return rep;
    const auto& g = *a.tgt_gpd;
    const auto& h = *a.src_gpd;
    for (int e = 0; e < g.n_morphisms(); ++e)
        for (int x = 0; x < a.total; ++x)
            if (g.src(e) == a.tau[x] && m.carrier[a.lact(e, x)] != b.lact(e, m.carrier[x]))
                rep.add("left-equivariance", {e, x});
    for (int x = 0; x < a.total; ++x)
        for (int e = 0; e < h.n_morphisms(); ++e)
            if (a.sigma[x] == h.tgt(e) && m.carrier[a.ract(x, e)] != b.ract(m.carrier[x], e))
                rep.add("right-equivariance", {x, e});
    // automatic bijectivity, asserted
    std::vector<bool> seen(b.total, false);
    for (int x = 0; x < a.total; ++x) {
        if (seen[m.carrier[x]]) rep.add("bijective", {x});
        seen[m.carrier[x]] = true;
    }
    if (a.total != b.total) rep.add("bijective-count", {});
    return rep;
}

PrincipalBiset bundlize(const GroupoidFunctor& f) {
    require_valid(check_functor(f));
    const auto& h = *f.dom;
    const auto& g = *f.cod;
    // total = {(x, m) : x in H_0, m in G_1, s(m) = f(x)}
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> idx;
    for (int x = 0; x < h.n_objects(); ++x)
        for (int m = 0; m < g.n_morphisms(); ++m)
            if (g.src(m) == f.on_obj(x)) {
                idx[{x, m}] = static_cast<int>(elems.size());
                elems.push_back({x, m});
            }
    int n = static_cast<int>(elems.size());
    std::vector<int> tau(n), sigma(n);
    for (int i = 0; i < n; ++i) {
        sigma[i] = elems[i].first;
        tau[i] = g.tgt(elems[i].second);
    }
    return make_biset(
        f.dom, f.cod, n, tau, sigma,
        [&](int g1, int i) { return idx.at({elems[i].first, g.compose(elems[i].second, g1)}); },
        [&](int i, int h1) {
            return idx.at({h.src(h1), g.compose(f.on_mor(h1), elems[i].second)});
        });
}

PrincipalBiset identity_bibundle(GpdPtr gp) {
    const auto& g = *gp;
    int n = g.n_morphisms();
    std::vector<int> tau(n), sigma(n);
    for (int m = 0; m < n; ++m) {
        tau[m] = g.tgt(m);
        sigma[m] = g.src(m);
    }
    return make_biset(
        gp, gp, n, tau, sigma, [&](int g1, int m) { return g.compose(m, g1); },
        [&](int m, int h1) { return g.compose(h1, m); });
}

struct BisetComposition {
    PrincipalBiset biset;
    std::vector<std::pair<int, int>> pairs; // (p, q) with sigma_P(p) = tau_Q(q)
    std::vector<int> class_of_pair;         // pair index -> class id
    std::map<std::pair<int, int>, int> pair_index;
};

static BisetComposition compose_bibundles_full(const PrincipalBiset& p, const PrincipalBiset& q) {
    if (p.src_gpd != q.tgt_gpd)
        throw validation_error("compose_bibundles: middle groupoids do not match");
    const auto& h = *p.src_gpd;
    BisetComposition res;
    for (int a = 0; a < p.total; ++a)
        for (int b = 0; b < q.total; ++b)
            if (p.sigma[a] == q.tau[b]) {
                res.pair_index[{a, b}] = static_cast<int>(res.pairs.size());
                res.pairs.push_back({a, b});
            }
    int np = static_cast<int>(res.pairs.size());
    Dsu dsu(np);
    // coequalizer relation: (p·h, q) ~ (p, h·q) over triples with
    // sigma(p) = t(h), s(h) = tau(q)
    for (int a = 0; a < p.total; ++a)
        for (int m = 0; m < h.n_morphisms(); ++m) {
            if (h.tgt(m) != p.sigma[a]) continue;
            int am = p.ract(a, m);
            for (int b = 0; b < q.total; ++b)
                if (q.tau[b] == h.src(m))
                    dsu.unite(res.pair_index.at({am, b}),
                              res.pair_index.at({a, q.lact(m, b)}));
        }
    std::map<int, int> root_to_class;
    res.class_of_pair.resize(np);
    std::vector<int> class_rep;
    for (int i = 0; i < np; ++i) {
        int r = dsu.find(i);
        if (!root_to_class.count(r)) {
            root_to_class[r] = static_cast<int>(class_rep.size());
            class_rep.push_back(r);
        }
        res.class_of_pair[i] = root_to_class[r];
    }
    int n = static_cast<int>(class_rep.size());
    std::vector<int> tau(n), sigma(n);
    for (int c = 0; c < n; ++c) {
        auto [a, b] = res.pairs[class_rep[c]];
        tau[c] = p.tau[a];
        sigma[c] = q.sigma[b];
    }
    res.biset = make_biset(
        q.src_gpd, p.tgt_gpd, n, tau, sigma,
        [&](int g1, int c) {
            auto [a, b] = res.pairs[class_rep[c]];
            return res.class_of_pair[res.pair_index.at({p.lact(g1, a), b})];
        },
        [&](int c, int k1) {
            auto [a, b] = res.pairs[class_rep[c]];
            return res.class_of_pair[res.pair_index.at({a, q.ract(b, k1)})];
        });
    return res;
}

PrincipalBiset compose_bibundles(const PrincipalBiset& p, const PrincipalBiset& q) {
    return compose_bibundles_full(p, q).biset;
}

bool is_morita(const PrincipalBiset& p) {
    const auto& g = *p.tgt_gpd;
    const auto& h = *p.src_gpd;
    std::vector<bool> hit(g.n_objects(), false);
    for (int x = 0; x < p.total; ++x) hit[p.tau[x]] = true;
    for (int z = 0; z < g.n_objects(); ++z)
        if (!hit[z]) return false;
    // right action simply transitive: (p, h) -> (p·h, p) bijects onto tau-fiber pairs
    std::map<std::pair<int, int>, bool> seen;
    long long lhs = 0, rhs = 0;
    for (int x = 0; x < p.total; ++x)
        for (int m = 0; m < h.n_morphisms(); ++m) {
            if (p.sigma[x] != h.tgt(m)) continue;
            ++lhs;
            auto key = std::make_pair(p.ract(x, m), x);
            if (seen.count(key)) return false;
            seen[key] = true;
        }
    for (int x = 0; x < p.total; ++x)
        for (int y = 0; y < p.total; ++y)
            if (p.tau[x] == p.tau[y]) {
                ++rhs;
                if (!seen.count({x, y})) return false;
            }
    return lhs == rhs;
}

PrincipalBiset invert(const PrincipalBiset& p) {
    if (!is_morita(p)) throw validation_error("invert: biset is not a Morita equivalence");
    const auto& g = *p.tgt_gpd;
    const auto& h = *p.src_gpd;
    return make_biset(
        p.tgt_gpd, p.src_gpd, p.total, p.sigma, p.tau,
        [&](int h1, int x) { return p.ract(x, h.inv(h1)); },
        [&](int x, int g1) { return p.lact(g.inv(g1), x); });
}

SectionResult find_section(const PrincipalBiset& p) {
    const auto& h = *p.src_gpd;
    const auto& g = *p.tgt_gpd;
    SectionResult res;
    res.section.assign(h.n_objects(), -1);
    res.choice_count = 1;
    for (int x = 0; x < h.n_objects(); ++x) {
        long long fiber = 0;
        for (int e = 0; e < p.total; ++e)
            if (p.sigma[e] == x) {
                ++fiber;
                if (res.section[x] < 0) res.section[x] = e;
            }
        res.choice_count *= fiber;
    }
    GroupoidFunctor f;
    f.dom = p.src_gpd;
    f.cod = p.tgt_gpd;
    f.obj_map.resize(h.n_objects());
    for (int x = 0; x < h.n_objects(); ++x) f.obj_map[x] = p.tau[res.section[x]];
    f.mor_map.resize(h.n_morphisms());
    for (int m = 0; m < h.n_morphisms(); ++m) {
        int x = h.src(m), y = h.tgt(m);
        int moved = p.ract(res.section[y], m); // sigma = x, same fiber as section[x]
        f.mor_map[m] = p.transporter(res.section[x], moved);
    }
    require_valid(check_functor(f));
    res.functor = f;
    return res;
}

std::optional<std::vector<int>> biset_isomorphism(const PrincipalBiset& a,
                                                  const PrincipalBiset& b) {
    if (a.src_gpd != b.src_gpd || a.tgt_gpd != b.tgt_gpd || a.total != b.total)
        return std::nullopt;
    const auto& h = *a.src_gpd;
    const auto& g = *a.tgt_gpd;
    int nh = h.n_objects();
    std::vector<std::vector<int>> fiber_a(nh), fiber_b(nh);
    for (int x = 0; x < a.total; ++x) fiber_a[a.sigma[x]].push_back(x);
    for (int x = 0; x < b.total; ++x) fiber_b[b.sigma[x]].push_back(x);
    for (int y = 0; y < nh; ++y)
        if (fiber_a[y].size() != fiber_b[y].size()) return std::nullopt;

    std::vector<int> carrier(a.total, -1);

    // extend the rep image over the fiber by left transport
    auto fill_fiber = [&](int y, int img) -> bool {
        int rep = fiber_a[y][0];
        for (int e : fiber_a[y]) {
            int t = a.transporter(rep, e);
            int be = b.lact(t, img);
            carrier[e] = be;
        }
        return true;
    };
    auto clear_fiber = [&](int y) {
        for (int e : fiber_a[y]) carrier[e] = -1;
    };
    // right-equivariance among currently assigned elements
    auto consistent = [&](int y) -> bool {
        for (int e : fiber_a[y]) {
            if (b.tau[carrier[e]] != a.tau[e]) return false;
            for (int m = 0; m < h.n_morphisms(); ++m) {
                if (a.sigma[e] != h.tgt(m)) continue;
                int ae = a.ract(e, m);
                if (carrier[ae] >= 0 && carrier[ae] != b.ract(carrier[e], m)) return false;
            }
            for (int m = 0; m < h.n_morphisms(); ++m) {
                if (h.src(m) != a.sigma[e]) continue;
                // e also appears on the right of elements in fiber tgt(m)
                for (int e2 : fiber_a[h.tgt(m)]) {
                    if (carrier[e2] < 0) continue;
                    if (a.ract(e2, m) == e && b.ract(carrier[e2], m) != carrier[e]) return false;
                }
            }
        }
        return true;
    };

    std::vector<int> order;
    for (int y = 0; y < nh; ++y)
        if (!fiber_a[y].empty()) order.push_back(y);

    auto rec = [&](auto&& self, size_t k) -> bool {
        if (k == order.size()) return true;
        int y = order[k];
        int rep = fiber_a[y][0];
        std::vector<int> cands;
        for (int q : fiber_b[y])
            if (b.tau[q] == a.tau[rep]) cands.push_back(q);
        std::sort(cands.begin(), cands.end());
        for (int q : cands) {
            fill_fiber(y, q);
            if (consistent(y) && self(self, k + 1)) return true;
            clear_fiber(y);
        }
        return false;
    };
    (void)g;
    if (rec(rec, 0)) return carrier;
    return std::nullopt;
}

bool bisets_isomorphic(const PrincipalBiset& a, const PrincipalBiset& b) {
    return biset_isomorphism(a, b).has_value();
}

PullbackResult pullback(const PrincipalBiset& g_xy, const PrincipalBiset& f_zy) {
    if (g_xy.tgt_gpd != f_zy.tgt_gpd)
        throw validation_error("pullback: bisets must share the target groupoid");
    const auto& y = *g_xy.tgt_gpd;
    const auto& x_gpd = *g_xy.src_gpd;
    const auto& z_gpd = *f_zy.src_gpd;

    // objects: pairs (g, f) with tau_G(g) = tau_F(f), modulo (g,f) ~ (y·g, y·f)
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> pidx;
    for (int a = 0; a < g_xy.total; ++a)
        for (int b = 0; b < f_zy.total; ++b)
            if (g_xy.tau[a] == f_zy.tau[b]) {
                pidx[{a, b}] = static_cast<int>(pairs.size());
                pairs.push_back({a, b});
            }
    Dsu dsu(static_cast<int>(pairs.size()));
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [a, b] = pairs[i];
        for (int m = 0; m < y.n_morphisms(); ++m)
            if (y.src(m) == g_xy.tau[a])
                dsu.unite(static_cast<int>(i), pidx.at({g_xy.lact(m, a), f_zy.lact(m, b)}));
    }
    std::map<int, int> root_to_class;
    std::vector<int> class_rep;
    std::vector<int> class_of(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        int r = dsu.find(static_cast<int>(i));
        if (!root_to_class.count(r)) {
            root_to_class[r] = static_cast<int>(class_rep.size());
            class_rep.push_back(r);
        }
        class_of[i] = root_to_class[r];
    }
    int n_obj = static_cast<int>(class_rep.size());
    std::vector<int> sig_x(n_obj), sig_z(n_obj);
    for (int c = 0; c < n_obj; ++c) {
        auto [a, b] = pairs[class_rep[c]];
        sig_x[c] = g_xy.sigma[a];
        sig_z[c] = f_zy.sigma[b];
    }

    // morphisms: (xi, class, zeta) with s(xi) = sig_x(class), s(zeta) = sig_z(class)
    struct Mor {
        int xi, cls, zeta;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int>, int> midx;
    for (int c = 0; c < n_obj; ++c)
        for (int xi : x_gpd.from(sig_x[c]))
            for (int zeta : z_gpd.from(sig_z[c])) {
                midx[{xi, c, zeta}] = static_cast<int>(mors.size());
                mors.push_back({xi, c, zeta});
            }
    auto act_class = [&](int c, int xi, int zeta) {
        auto [a, b] = pairs[class_rep[c]];
        int a2 = g_xy.ract(a, x_gpd.inv(xi));
        int b2 = f_zy.ract(b, z_gpd.inv(zeta));
        return class_of[pidx.at({a2, b2})];
    };
    int n_mor = static_cast<int>(mors.size());
    std::vector<int> src(n_mor), tgt(n_mor), ident(n_obj), inv(n_mor);
    for (int m = 0; m < n_mor; ++m) {
        src[m] = mors[m].cls;
        tgt[m] = act_class(mors[m].cls, mors[m].xi, mors[m].zeta);
    }
    for (int c = 0; c < n_obj; ++c)
        ident[c] = midx.at({x_gpd.ident(sig_x[c]), c, z_gpd.ident(sig_z[c])});
    for (int m = 0; m < n_mor; ++m)
        inv[m] = midx.at({x_gpd.inv(mors[m].xi), tgt[m], z_gpd.inv(mors[m].zeta)});

    PullbackResult res;
    res.groupoid = FiniteGroupoid::build(n_obj, src, tgt, ident, inv, [&](int m1, int m2) {
        return midx.at({x_gpd.compose(mors[m1].xi, mors[m2].xi), mors[m1].cls,
                        z_gpd.compose(mors[m1].zeta, mors[m2].zeta)});
    });
    require_valid(res.groupoid.self_check());
    res.groupoid_ptr = std::make_shared<const FiniteGroupoid>(res.groupoid);
    res.object_class_of_pair.assign(g_xy.total * f_zy.total, -1);
    for (size_t i = 0; i < pairs.size(); ++i)
        res.object_class_of_pair[pairs[i].first * f_zy.total + pairs[i].second] =
            class_of[i];

    res.proj1.dom = res.groupoid_ptr;
    res.proj1.cod = g_xy.src_gpd;
    res.proj1.obj_map = sig_x;
    res.proj1.mor_map.resize(n_mor);
    for (int m = 0; m < n_mor; ++m) res.proj1.mor_map[m] = mors[m].xi;
    require_valid(check_functor(res.proj1));

    res.proj2.dom = res.groupoid_ptr;
    res.proj2.cod = f_zy.src_gpd;
    res.proj2.obj_map = sig_z;
    res.proj2.mor_map.resize(n_mor);
    for (int m = 0; m < n_mor; ++m) res.proj2.mor_map[m] = mors[m].zeta;
    require_valid(check_functor(res.proj2));

    res.proj1_biset = bundlize(res.proj1);
    res.proj2_biset = bundlize(res.proj2);

    auto left = compose_bibundles(g_xy, res.proj1_biset);
    auto right = compose_bibundles(f_zy, res.proj2_biset);
    auto iso = biset_isomorphism(left, right);
    if (!iso)
        throw validation_error("pullback: projection composites are not isomorphic");
    res.witness.dom = left;
    res.witness.cod = right;
    res.witness.carrier = *iso;
    require_valid(check_bibundle_map(res.witness));
    return res;
}

PrincipalBiset pullback_mediator(const PullbackResult& pb, const PrincipalBiset& g_xy,
                                 const PrincipalBiset& f_zy, const PrincipalBiset& cone_g,
                                 const PrincipalBiset& cone_f, const BibundleMap& phi) {
    // cone_g : W -> X, cone_f : W -> Z, phi : G∘cone_g -> F∘cone_f.
    auto gg = compose_bibundles_full(g_xy, cone_g);
    auto ff = compose_bibundles_full(f_zy, cone_f);
    if (phi.dom.total != gg.biset.total || phi.cod.total != ff.biset.total)
        throw validation_error("pullback_mediator: phi endpoints mismatch");

    std::vector<std::pair<int, int>> elems; // (a in cone_g, b in cone_f), same W-object
    std::map<std::pair<int, int>, int> eidx;
    for (int a = 0; a < cone_g.total; ++a)
        for (int b = 0; b < cone_f.total; ++b)
            if (cone_g.sigma[a] == cone_f.sigma[b]) {
                eidx[{a, b}] = static_cast<int>(elems.size());
                elems.push_back({a, b});
            }
    int n = static_cast<int>(elems.size());

    // project (a, b) to a pullback object
    auto project = [&](int a, int b) {
        // lift a through G: any g0 with sigma_G(g0) = tau_{cone_g}(a)
        int g0 = -1;
        for (int t = 0; t < g_xy.total && g0 < 0; ++t)
            if (g_xy.sigma[t] == cone_g.tau[a]) g0 = t;
        int cls_g = gg.class_of_pair[gg.pair_index.at({g0, a})];
        int cls_f = phi.carrier[cls_g];
        // unique representative of cls_f with second component b
        for (size_t i = 0; i < ff.pairs.size(); ++i)
            if (ff.class_of_pair[i] == cls_f && ff.pairs[i].second == b) {
                int ftilde = ff.pairs[i].first;
                return pb.object_class_of_pair[g0 * f_zy.total + ftilde];
            }
        return -1;
    };

    std::vector<int> tau(n), sigma(n);
    for (int i = 0; i < n; ++i) {
        auto [a, b] = elems[i];
        tau[i] = project(a, b);
        sigma[i] = cone_g.sigma[a];
        if (tau[i] < 0) throw validation_error("pullback_mediator: projection failed");
    }
    const auto& w_gpd = pb.groupoid;
    (void)w_gpd;
    const auto& cone_dom = *cone_g.src_gpd;
    return make_biset(
        cone_g.src_gpd, pb.groupoid_ptr, n, tau, sigma,
        [&](int m, int i) {
            // m = (xi, cls, zeta) acting on (a, b)
            auto [a, b] = elems[i];
            // recover xi and zeta from the pullback groupoid's projections
            int xi = pb.proj1.on_mor(m);
            int zeta = pb.proj2.on_mor(m);
            return eidx.at({cone_g.lact(xi, a), cone_f.lact(zeta, b)});
        },
        [&](int i, int w1) {
            auto [a, b] = elems[i];
            (void)cone_dom;
            return eidx.at({cone_g.ract(a, w1), cone_f.ract(b, w1)});
        });
}

} // namespace finstack
