#include "finstack/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace finstack {

ValidationReport validate_groupoid(const GroupoidData& d) {
    ValidationReport rep;
    int no = d.objects, nm = d.morphisms;
    if (static_cast<int>(d.src.size()) != nm || static_cast<int>(d.tgt.size()) != nm ||
        static_cast<int>(d.inv.size()) != nm || static_cast<int>(d.ident.size()) != no) {
        rep.add("table-shape", {}, "src/tgt/inv need one entry per morphism, ident one per object");
        return rep;
    }
    for (int f = 0; f < nm; ++f)
        if (d.src[f] < 0 || d.src[f] >= no || d.tgt[f] < 0 || d.tgt[f] >= no || d.inv[f] < 0 ||
            d.inv[f] >= nm) {
            rep.add("range", {f}, "src/tgt/inv out of range");
            return rep;
        }
    for (int x = 0; x < no; ++x)
        if (d.ident[x] < 0 || d.ident[x] >= nm) {
            rep.add("range", {x}, "ident out of range");
            return rep;
        }

    std::map<std::pair<int, int>, int> comp;
    for (const auto& [f, g, h] : d.compose) {
        if (f < 0 || f >= nm || g < 0 || g >= nm || h < 0 || h >= nm) {
            rep.add("range", {f, g, h}, "compose entry out of range");
            return rep;
        }
        if (comp.count({f, g})) {
            rep.add("compose-duplicate", {f, g});
            return rep;
        }
        comp[{f, g}] = h;
    }

    // compose defined exactly when tgt(f) = src(g)
    for (const auto& [fg, h] : comp) {
        auto [f, g] = fg;
        if (d.tgt[f] != d.src[g])
            rep.add("composability", {f, g},
                    "compose defined although tgt(f) != src(g)");
        else {
            if (d.src[h] != d.src[f]) rep.add("compose-src", {f, g, h});
            if (d.tgt[h] != d.tgt[g]) rep.add("compose-tgt", {f, g, h});
        }
    }
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g)
            if (d.tgt[f] == d.src[g] && !comp.count({f, g}))
                rep.add("compose-missing", {f, g});
    if (!rep.ok()) return rep;

    auto cmp = [&](int f, int g) { return comp.at({f, g}); };

    for (int x = 0; x < no; ++x) {
        int e = d.ident[x];
        if (d.src[e] != x || d.tgt[e] != x) rep.add("ident-endpoints", {x, e});
    }
    if (!rep.ok()) return rep;

    for (int f = 0; f < nm; ++f) {
        if (cmp(d.ident[d.src[f]], f) != f) rep.add("left-unit", {f});
        if (cmp(f, d.ident[d.tgt[f]]) != f) rep.add("right-unit", {f});
        int g = d.inv[f];
        if (d.src[g] != d.tgt[f] || d.tgt[g] != d.src[f])
            rep.add("inverse-endpoints", {f, g});
        else {
            if (cmp(f, g) != d.ident[d.src[f]]) rep.add("right-inverse", {f});
            if (cmp(g, f) != d.ident[d.tgt[f]]) rep.add("left-inverse", {f});
        }
    }

    for (int f = 0; f < nm && rep.ok(); ++f)
        for (int g = 0; g < nm; ++g) {
            if (d.tgt[f] != d.src[g]) continue;
            bool stop = false;
            for (int h = 0; h < nm; ++h) {
                if (d.tgt[g] != d.src[h]) continue;
                if (cmp(cmp(f, g), h) != cmp(f, cmp(g, h))) {
                    rep.add("associativity", {f, g, h});
                    stop = true;
                    break;
                }
            }
            if (stop) break;
        }
    return rep;
}

void FiniteGroupoid::index_morphisms() {
    by_src_.assign(n_obj_, {});
    by_tgt_.assign(n_obj_, {});
    pos_in_src_.resize(n_mor_);
    for (int f = 0; f < n_mor_; ++f) {
        pos_in_src_[f] = static_cast<int>(by_src_[src_[f]].size());
        by_src_[src_[f]].push_back(f);
        by_tgt_[tgt_[f]].push_back(f);
    }
}

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
    std::vector<int> out;
    for (int f : by_src_[x])
        if (tgt_[f] == y) out.push_back(f);
    return out;
}

GroupoidData FiniteGroupoid::dump() const {
    GroupoidData d;
    d.objects = n_obj_;
    d.morphisms = n_mor_;
    d.src = src_;
    d.tgt = tgt_;
    d.ident = ident_;
    d.inv = inv_;
    for (int f = 0; f < n_mor_; ++f)
        for (int g : by_src_[tgt_[f]]) d.compose.push_back({f, g, compose(f, g)});
    return d;
}

ValidationReport FiniteGroupoid::self_check() const { return validate_groupoid(dump()); }

FiniteGroupoid FiniteGroupoid::compile(const GroupoidData& d) {
    require_valid(validate_groupoid(d));
    std::map<std::pair<int, int>, int> comp;
    for (const auto& [f, g, h] : d.compose) comp[{f, g}] = h;
    return build(d.objects, d.src, d.tgt, d.ident, d.inv,
                 [&](int f, int g) { return comp.at({f, g}); });
}

FiniteGroupoid discrete_groupoid(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return FiniteGroupoid::build(n, idx, idx, idx, idx, [](int f, int) { return f; });
}

FiniteGroupoid pair_groupoid(int n) {
    // morphism (x -> y) has index x*n + y
    std::vector<int> src(n * n), tgt(n * n), ident(n), inv(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            src[x * n + y] = x;
            tgt[x * n + y] = y;
            inv[x * n + y] = y * n + x;
        }
    for (int x = 0; x < n; ++x) ident[x] = x * n + x;
    return FiniteGroupoid::build(n, src, tgt, ident, inv, [n](int f, int g) {
        return (f / n) * n + (g % n);
    });
}

FiniteGroupoid delooping(const GroupTable& g) {
    require_valid(validate_group(g));
    std::vector<int> src(g.n, 0), tgt(g.n, 0), ident{g.unit};
    return FiniteGroupoid::build(1, src, tgt, ident, g.inverse,
                                 [&](int f, int h) { return g.op(f, h); });
}

FiniteGroupoid action_groupoid(const GroupTable& g, int n_points, const std::vector<int>& act) {
    require_valid(validate_group(g));
    ValidationReport rep;
    if (static_cast<int>(act.size()) != n_points * g.n) {
        rep.add("action-shape", {}, "act needs n_points * |g| entries");
        throw validation_error(rep);
    }
    auto a = [&](int x, int e) { return act[x * g.n + e]; };
    for (int x = 0; x < n_points; ++x) {
        if (a(x, g.unit) != x) rep.add("action-unit", {x});
        for (int e = 0; e < g.n; ++e)
            for (int f = 0; f < g.n; ++f)
                if (a(a(x, e), f) != a(x, g.op(e, f))) rep.add("action-compat", {x, e, f});
    }
    require_valid(rep);

    // morphism (x, e) has index x*|g| + e and runs from x·e to x
    int nm = n_points * g.n;
    std::vector<int> src(nm), tgt(nm), ident(n_points), inv(nm);
    for (int x = 0; x < n_points; ++x)
        for (int e = 0; e < g.n; ++e) {
            int m = x * g.n + e;
            src[m] = a(x, e);
            tgt[m] = x;
            inv[m] = a(x, e) * g.n + g.inv(e);
        }
    for (int x = 0; x < n_points; ++x) ident[x] = x * g.n + g.unit;
    return FiniteGroupoid::build(n_points, src, tgt, ident, inv, [&](int f, int h) {
        // f = (x, e) : x·e -> x, h = (y, d) : y·d -> y with y·d = x, i.e. the
        // composite acts first by e then is carried by h; result (y, d·e).
        int e = f % g.n;
        int y = h / g.n, d = h % g.n;
        return y * g.n + g.op(d, e);
    });
}

FiniteGroupoid cech_groupoid(const std::vector<int>& p, int n_base) {
    int ny = static_cast<int>(p.size());
    ValidationReport rep;
    std::vector<bool> hit(n_base, false);
    for (int y = 0; y < ny; ++y) {
        if (p[y] < 0 || p[y] >= n_base) {
            rep.add("range", {y}, "cover map out of range");
            throw validation_error(rep);
        }
        hit[p[y]] = true;
    }
    for (int x = 0; x < n_base; ++x)
        if (!hit[x]) rep.add("surjectivity", {x}, "cover misses a base point");
    require_valid(rep);

    // morphisms = fiber pairs (y0, y1) with p(y0) = p(y1)
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> idx;
    for (int y0 = 0; y0 < ny; ++y0)
        for (int y1 = 0; y1 < ny; ++y1)
            if (p[y0] == p[y1]) {
                idx[{y0, y1}] = static_cast<int>(pairs.size());
                pairs.push_back({y0, y1});
            }
    int nm = static_cast<int>(pairs.size());
    std::vector<int> src(nm), tgt(nm), ident(ny), inv(nm);
    for (int m = 0; m < nm; ++m) {
        src[m] = pairs[m].first;
        tgt[m] = pairs[m].second;
        inv[m] = idx.at({pairs[m].second, pairs[m].first});
    }
    for (int y = 0; y < ny; ++y) ident[y] = idx.at({y, y});
    return FiniteGroupoid::build(ny, src, tgt, ident, inv, [&](int f, int g) {
        return idx.at({pairs[f].first, pairs[g].second});
    });
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    long long nm = static_cast<long long>(a.n_morphisms()) * b.n_morphisms();
    if (nm > (1 << 22))
        throw validation_error("product_groupoid: too many morphisms to materialize");
    int no = a.n_objects() * b.n_objects();
    int bo = b.n_objects(), bm = b.n_morphisms();
    std::vector<int> src(nm), tgt(nm), ident(no), inv(nm);
    for (int f = 0; f < a.n_morphisms(); ++f)
        for (int g = 0; g < bm; ++g) {
            int m = f * bm + g;
            src[m] = a.src(f) * bo + b.src(g);
            tgt[m] = a.tgt(f) * bo + b.tgt(g);
            inv[m] = a.inv(f) * bm + b.inv(g);
        }
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < bo; ++y) ident[x * bo + y] = a.ident(x) * bm + b.ident(y);
    return FiniteGroupoid::build(no, src, tgt, ident, inv, [&](int f, int g) {
        return a.compose(f / bm, g / bm) * bm + b.compose(f % bm, g % bm);
    });
}

// ---------------------------------------------------------------------------

ValidationReport check_functor(const GroupoidFunctor& f) {
    ValidationReport rep;
    const auto& d = *f.dom;
    const auto& c = *f.cod;
    if (static_cast<int>(f.obj_map.size()) != d.n_objects() ||
        static_cast<int>(f.mor_map.size()) != d.n_morphisms()) {
        rep.add("functor-shape", {});
        return rep;
    }
    for (int m = 0; m < d.n_morphisms(); ++m) {
        if (c.src(f.on_mor(m)) != f.on_obj(d.src(m))) rep.add("preserves-src", {m});
        if (c.tgt(f.on_mor(m)) != f.on_obj(d.tgt(m))) rep.add("preserves-tgt", {m});
    }
    if (!rep.ok()) return rep;
    for (int x = 0; x < d.n_objects(); ++x)
        if (f.on_mor(d.ident(x)) != c.ident(f.on_obj(x))) rep.add("preserves-ident", {x});
    for (int m = 0; m < d.n_morphisms() && rep.ok(); ++m)
        for (int g : d.from(d.tgt(m)))
            if (f.on_mor(d.compose(m, g)) != c.compose(f.on_mor(m), f.on_mor(g))) {
                rep.add("preserves-compose", {m, g});
                break;
            }
    return rep;
}

GroupoidFunctor identity_functor(GpdPtr g) {
    GroupoidFunctor f;
    f.dom = g;
    f.cod = g;
    f.obj_map.resize(g->n_objects());
    f.mor_map.resize(g->n_morphisms());
    std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
    std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
    return f;
}

GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    GroupoidFunctor h;
    h.dom = f.dom;
    h.cod = g.cod;
    h.obj_map.resize(f.obj_map.size());
    h.mor_map.resize(f.mor_map.size());
    for (size_t i = 0; i < f.obj_map.size(); ++i) h.obj_map[i] = g.on_obj(f.obj_map[i]);
    for (size_t i = 0; i < f.mor_map.size(); ++i) h.mor_map[i] = g.on_mor(f.mor_map[i]);
    return h;
}

GroupoidFunctor cech_projection(GpdPtr cech, const std::vector<int>& p, GpdPtr base) {
    GroupoidFunctor f;
    f.dom = cech;
    f.cod = base;
    f.obj_map = p;
    f.mor_map.resize(cech->n_morphisms());
    for (int m = 0; m < cech->n_morphisms(); ++m)
        f.mor_map[m] = base->ident(p[cech->src(m)]);
    return f;
}

ValidationReport check_natural(const NaturalTransformation& eta) {
    ValidationReport rep;
    const auto& d = *eta.from.dom;
    const auto& c = *eta.from.cod;
    if (eta.from.dom != eta.to.dom || eta.from.cod != eta.to.cod)
        rep.add("nat-endpoints", {}, "functors must share dom and cod");
    if (static_cast<int>(eta.comp.size()) != d.n_objects()) rep.add("nat-shape", {});
    if (!rep.ok()) return rep;
    for (int x = 0; x < d.n_objects(); ++x) {
        int m = eta.comp[x];
        if (c.src(m) != eta.from.on_obj(x) || c.tgt(m) != eta.to.on_obj(x))
            rep.add("component-endpoints", {x, m});
    }
    if (!rep.ok()) return rep;
    for (int m = 0; m < d.n_morphisms(); ++m) {
        int lhs = c.compose(eta.from.on_mor(m), eta.comp[d.tgt(m)]);
        int rhs = c.compose(eta.comp[d.src(m)], eta.to.on_mor(m));
        if (lhs != rhs) rep.add("naturality", {m});
    }
    return rep;
}

EquivalenceCheck is_equivalence(const GroupoidFunctor& f) {
    EquivalenceCheck res;
    const auto& d = *f.dom;
    const auto& c = *f.cod;
    res.fully_faithful = true;
    for (int x = 0; x < d.n_objects() && res.fully_faithful; ++x)
        for (int y = 0; y < d.n_objects(); ++y) {
            auto h = d.hom(x, y);
            auto hc = c.hom(f.on_obj(x), f.on_obj(y));
            std::vector<bool> hit(hc.size(), false);
            bool ok = true;
            for (int m : h) {
                auto it = std::find(hc.begin(), hc.end(), f.on_mor(m));
                size_t pos = it - hc.begin();
                if (it == hc.end() || hit[pos]) {
                    ok = false;
                    break;
                }
                hit[pos] = true;
            }
            ok = ok && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
            if (!ok) {
                res.fully_faithful = false;
                res.report.add("fully-faithful", {x, y});
                break;
            }
        }
    res.essentially_surjective = true;
    for (int z = 0; z < c.n_objects(); ++z) {
        bool reached = false;
        for (int x = 0; x < d.n_objects() && !reached; ++x)
            reached = !c.hom(f.on_obj(x), z).empty();
        if (!reached) {
            res.essentially_surjective = false;
            res.report.add("essentially-surjective", {z});
            break;
        }
    }
    return res;
}

AdjointEquivalence quasi_inverse(const GroupoidFunctor& q) {
    auto eq = is_equivalence(q);
    if (!eq.ok()) throw validation_error("quasi_inverse: functor is not an equivalence");
    const auto& d = *q.dom;
    const auto& c = *q.cod;

    std::vector<int> s_obj(c.n_objects(), -1);
    std::vector<int> eta(c.n_objects(), -1); // eta[b] : b -> q(s(b))
    for (int b = 0; b < c.n_objects(); ++b) {
        for (int x = 0; x < d.n_objects() && s_obj[b] < 0; ++x) {
            auto h = c.hom(b, q.on_obj(x));
            if (!h.empty()) {
                s_obj[b] = x;
                eta[b] = *std::min_element(h.begin(), h.end());
            }
        }
    }

    auto lift = [&](int x, int y, int beta) {
        // unique m : x -> y in dom with q(m) = beta
        for (int m : d.hom(x, y))
            if (q.on_mor(m) == beta) return m;
        throw validation_error("quasi_inverse: fully-faithful lift failed");
    };

    GroupoidFunctor s;
    s.dom = q.cod;
    s.cod = q.dom;
    s.obj_map = s_obj;
    s.mor_map.resize(c.n_morphisms());
    for (int m = 0; m < c.n_morphisms(); ++m) {
        int b0 = c.src(m), b1 = c.tgt(m);
        int beta = c.compose(c.compose(c.inv(eta[b0]), m), eta[b1]);
        s.mor_map[m] = lift(s_obj[b0], s_obj[b1], beta);
    }

    AdjointEquivalence adj;
    adj.inverse = s;
    adj.eta.from = identity_functor(q.cod);
    adj.eta.to = compose_functors(s, q);
    adj.eta.comp = eta;
    adj.xi.from = compose_functors(q, s);
    adj.xi.to = identity_functor(q.dom);
    adj.xi.comp.resize(d.n_objects());
    for (int x = 0; x < d.n_objects(); ++x)
        adj.xi.comp[x] = lift(s_obj[q.on_obj(x)], x, c.inv(eta[q.on_obj(x)]));
    return adj;
}

Nerve nerve(const FiniteGroupoid& g, int max_level, std::size_t materialize_cap) {
    Nerve nv;
    nv.counts.resize(max_level + 1);
    nv.simplices.resize(max_level + 1);
    nv.counts[0] = g.n_objects();
    for (int x = 0; x < g.n_objects(); ++x) nv.simplices[0].push_back({x});

    // chains[k][y] = number of composable k-chains ending at object y
    std::vector<unsigned long long> ending(g.n_objects(), 0);
    for (int x = 0; x < g.n_objects(); ++x) ending[x] = 1;
    for (int k = 1; k <= max_level; ++k) {
        std::vector<unsigned long long> next(g.n_objects(), 0);
        unsigned long long total = 0;
        for (int m = 0; m < g.n_morphisms(); ++m) {
            next[g.tgt(m)] += ending[g.src(m)];
            total += ending[g.src(m)];
        }
        nv.counts[k] = total;
        ending = std::move(next);
        if (total <= materialize_cap) {
            if (k == 1) {
                for (int m = 0; m < g.n_morphisms(); ++m) nv.simplices[1].push_back({m});
            } else if (!nv.simplices[k - 1].empty()) {
                for (const auto& chain : nv.simplices[k - 1])
                    for (int m : g.from(g.tgt(chain.back()))) {
                        auto ext = chain;
                        ext.push_back(m);
                        nv.simplices[k].push_back(std::move(ext));
                    }
            }
        }
    }
    return nv;
}

HomotopyInvariants homotopy_invariants(const FiniteGroupoid& g) {
    int n = g.n_objects();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int m = 0; m < g.n_morphisms(); ++m) {
        int a = find(g.src(m)), b = find(g.tgt(m));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    HomotopyInvariants inv;
    inv.component_of.resize(n);
    std::map<int, int> comp_id;
    for (int x = 0; x < n; ++x) {
        int r = find(x);
        if (!comp_id.count(r)) {
            comp_id[r] = static_cast<int>(inv.representative.size());
            inv.representative.push_back(r);
        }
        inv.component_of[x] = comp_id[r];
    }
    for (int rep : inv.representative) {
        auto auts = g.hom(rep, rep);
        std::sort(auts.begin(), auts.end());
        int k = static_cast<int>(auts.size());
        auto pos = [&](int m) {
            return static_cast<int>(std::lower_bound(auts.begin(), auts.end(), m) - auts.begin());
        };
        std::vector<int> mul(k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) mul[i * k + j] = pos(g.compose(auts[i], auts[j]));
        inv.isotropy.push_back(group_from_mul(k, std::move(mul)));
        inv.isotropy_morphisms.push_back(auts);
    }
    return inv;
}

bool same_homotopy_type(const HomotopyInvariants& a, const HomotopyInvariants& b) {
    size_t n = a.isotropy.size();
    if (n != b.isotropy.size()) return false;
    std::vector<bool> used(n, false);
    // backtracking match of components by isotropy isomorphism
    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (group_isomorphism(a.isotropy[i], b.isotropy[j])) {
                used[j] = true;
                if (self(self, i + 1)) return true;
                used[j] = false;
            }
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace finstack
