#include "finstack/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace finstack {

std::vector<int> FiniteAbelianGroup::tuple_of(int a) const {
    std::vector<int> t(moduli.size());
    for (size_t i = 0; i < moduli.size(); ++i) {
        t[i] = a % moduli[i];
        a /= moduli[i];
    }
    return t;
}

int FiniteAbelianGroup::index_of(const std::vector<int>& t) const {
    int idx = 0, stride = 1;
    for (size_t i = 0; i < moduli.size(); ++i) {
        int r = ((t[i] % moduli[i]) + moduli[i]) % moduli[i];
        idx += r * stride;
        stride *= moduli[i];
    }
    return idx;
}

int FiniteAbelianGroup::add(int a, int b) const {
    int idx = 0, stride = 1;
    for (int m : moduli) {
        int ra = a % m, rb = b % m;
        idx += ((ra + rb) % m) * stride;
        stride *= m;
        a /= m;
        b /= m;
    }
    return idx;
}

int FiniteAbelianGroup::neg(int a) const {
    int idx = 0, stride = 1;
    for (int m : moduli) {
        int r = a % m;
        idx += ((m - r) % m) * stride;
        stride *= m;
        a /= m;
    }
    return idx;
}

int FiniteAbelianGroup::smul(long long k, int a) const {
    int idx = 0, stride = 1;
    for (int m : moduli) {
        long long r = (static_cast<long long>(a % m) * (k % m)) % m;
        if (r < 0) r += m;
        idx += static_cast<int>(r) * stride;
        stride *= m;
        a /= m;
    }
    return idx;
}

int FiniteAbelianGroup::order_of(int a) const {
    int k = 1, x = a;
    while (x != 0) {
        x = add(x, a);
        ++k;
    }
    return k;
}

GroupTable FiniteAbelianGroup::as_group_table() const {
    int n = size();
    std::vector<int> mul(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a * n + b] = add(a, b);
    return group_from_mul(n, std::move(mul));
}

FiniteAbelianGroup zmod(int n) { return FiniteAbelianGroup{{n}}; }

FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    FiniteAbelianGroup r;
    r.moduli = a.moduli;
    r.moduli.insert(r.moduli.end(), b.moduli.begin(), b.moduli.end());
    return r;
}

std::vector<int> canonical_invariants(const std::vector<int>& moduli) {
    int k = static_cast<int>(moduli.size());
    if (k == 0) return {};
    ZMat diag = zmat(k, k);
    for (int i = 0; i < k; ++i) diag[i][i] = moduli[i];
    auto inv = cokernel_invariants(diag, k);
    std::vector<int> out;
    for (long long d : inv) out.push_back(static_cast<int>(d));
    return out;
}

bool abelian_isomorphic(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return canonical_invariants(a.moduli) == canonical_invariants(b.moduli);
}

namespace {

// Matrix entries e[i][j] describe a candidate endomorphism sending the j-th
// generator to the column vector; e[i][j] must vanish mod m_i/gcd(m_i, m_j).
std::vector<std::vector<int>> enumerate_hom_maps(const FiniteAbelianGroup& a, bool only_bijective) {
    int k = a.rank();
    int n = a.size();
    std::vector<std::vector<int>> result;
    std::vector<std::vector<int>> entries(k, std::vector<int>(k, 0));

    auto emit = [&]() {
        std::vector<int> map(n);
        for (int x = 0; x < n; ++x) {
            auto t = a.tuple_of(x);
            std::vector<int> img(k, 0);
            for (int i = 0; i < k; ++i) {
                long long s = 0;
                for (int j = 0; j < k; ++j) s += static_cast<long long>(entries[i][j]) * t[j];
                img[i] = static_cast<int>(s % a.moduli[i]);
            }
            map[x] = a.index_of(img);
        }
        if (only_bijective) {
            std::vector<bool> seen(n, false);
            for (int x = 0; x < n; ++x) {
                if (seen[map[x]]) return;
                seen[map[x]] = true;
            }
        }
        result.push_back(std::move(map));
    };

    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == k) {
            emit();
            return;
        }
        int ni = (j + 1 == k) ? i + 1 : i;
        int nj = (j + 1 == k) ? 0 : j + 1;
        int step = a.moduli[i] / std::gcd(a.moduli[i], a.moduli[j]);
        for (int v = 0; v < a.moduli[i]; v += step) {
            entries[i][j] = v;
            self(self, ni, nj);
        }
        entries[i][j] = 0;
    };
    if (k == 0) {
        result.push_back({0});
        return result;
    }
    rec(rec, 0, 0);
    return result;
}

} // namespace

std::vector<std::vector<int>> enumerate_endomorphisms(const FiniteAbelianGroup& a) {
    return enumerate_hom_maps(a, false);
}

std::vector<std::vector<int>> enumerate_automorphisms(const FiniteAbelianGroup& a) {
    return enumerate_hom_maps(a, true);
}

GroupTable automorphism_group(const FiniteAbelianGroup& a,
                              std::vector<std::vector<int>>* perms_out) {
    auto perms = enumerate_automorphisms(a);
    int n = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& p) {
        for (int i = 0; i < n; ++i)
            if (perms[i] == p) return i;
        return -1;
    };
    std::vector<int> mul(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> comp(a.size());
            for (int x = 0; x < a.size(); ++x) comp[x] = perms[i][perms[j][x]];
            mul[i * n + j] = find(comp);
        }
    if (perms_out) *perms_out = perms;
    return group_from_mul(n, std::move(mul));
}

bool GAction::is_trivial() const {
    for (const auto& p : rho)
        for (size_t x = 0; x < p.size(); ++x)
            if (p[x] != static_cast<int>(x)) return false;
    return true;
}

GAction GAction::trivial(const GroupTable& g, const FiniteAbelianGroup& a) {
    GAction act;
    std::vector<int> id(a.size());
    std::iota(id.begin(), id.end(), 0);
    act.rho.assign(g.n, id);
    return act;
}

ValidationReport validate_action(const GroupTable& g, const FiniteAbelianGroup& a,
                                 const GAction& act) {
    ValidationReport rep;
    if (static_cast<int>(act.rho.size()) != g.n) {
        rep.add("action-shape", {}, "rho must have one map per group element");
        return rep;
    }
    int n = a.size();
    for (int x = 0; x < n; ++x)
        if (act.apply(g.unit, x) != x) rep.add("unit-acts-trivially", {x});
    for (int e = 0; e < g.n; ++e) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (act.apply(e, a.add(x, y)) != a.add(act.apply(e, x), act.apply(e, y))) {
                    rep.add("additivity", {e, x, y});
                    x = y = n;
                }
        std::vector<bool> seen(n, false);
        for (int x = 0; x < n; ++x) {
            if (seen[act.apply(e, x)]) {
                rep.add("bijectivity", {e});
                break;
            }
            seen[act.apply(e, x)] = true;
        }
    }
    for (int e = 0; e < g.n && rep.ok(); ++e)
        for (int f = 0; f < g.n && rep.ok(); ++f)
            for (int x = 0; x < n; ++x)
                if (act.apply(g.op(e, f), x) != act.apply(e, act.apply(f, x))) {
                    rep.add("homomorphism", {e, f, x});
                    break;
                }
    return rep;
}

std::vector<GAction> enumerate_actions(const GroupTable& g, const FiniteAbelianGroup& a) {
    std::vector<std::vector<int>> perms;
    GroupTable aut = automorphism_group(a, &perms);
    auto homs = enumerate_group_homs(g, aut);
    std::vector<GAction> out;
    for (const auto& h : homs) {
        GAction act;
        act.rho.resize(g.n);
        for (int e = 0; e < g.n; ++e) act.rho[e] = perms[h[e]];
        out.push_back(std::move(act));
    }
    return out;
}

AbelianPresentation abelianize(const GroupTable& g) {
    if (!g.is_abelian()) throw validation_error("abelianize: group is not abelian");
    int n = g.n;
    // Present by generators e_x (one per element) and relations
    // e_x + e_y - e_{xy} = 0; the Smith transform yields the canonical form.
    ZMat rel = zmat(n, n * n);
    {
        int col = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y, ++col) {
                rel[x][col] += 1;
                rel[y][col] += 1;
                rel[g.op(x, y)][col] -= 1;
            }
    }
    Smith sn = smith_normal_form(rel); // s = u * rel * v
    // Z^n / colspan(rel) has coordinates u*e in the canonical basis; factor i
    // has modulus s[i][i] (0 would mean free, impossible for a finite group).
    std::vector<int> mods;
    std::vector<int> keep; // rows of u contributing nontrivial factors
    for (int i = 0; i < n; ++i) {
        long long d = sn.s[i][i];
        if (d == 1) continue;
        if (d == 0) throw validation_error("abelianize: free factor in finite group");
        mods.push_back(static_cast<int>(d));
        keep.push_back(i);
    }
    FiniteAbelianGroup can{mods};
    AbelianPresentation pres;
    pres.group = can;
    pres.to_canonical.resize(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> t(mods.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            long long c = sn.u[keep[i]][x] % mods[i];
            if (c < 0) c += mods[i];
            t[i] = static_cast<int>(c);
        }
        pres.to_canonical[x] = can.index_of(t);
    }
    pres.from_canonical.assign(can.size(), -1);
    for (int x = 0; x < n; ++x) pres.from_canonical[pres.to_canonical[x]] = x;
    for (int c = 0; c < can.size(); ++c)
        if (pres.from_canonical[c] < 0)
            throw validation_error("abelianize: presentation is not bijective");
    return pres;
}

std::optional<std::vector<int>> solve_linear_over(const FiniteAbelianGroup& a, const ZMat& coeff,
                                                  const std::vector<int>& rhs) {
    int unknowns = coeff.empty() ? 0 : static_cast<int>(coeff[0].size());
    int k = a.rank();
    std::vector<std::vector<int>> sol_components(k);
    for (int t = 0; t < k; ++t) {
        std::vector<int> b(rhs.size());
        for (size_t i = 0; i < rhs.size(); ++i) b[i] = a.tuple_of(rhs[i])[t];
        auto s = solve_mod(coeff, b, a.moduli[t]);
        if (!s) return std::nullopt;
        sol_components[t] = *s;
    }
    std::vector<int> out(unknowns);
    for (int j = 0; j < unknowns; ++j) {
        std::vector<int> tup(k);
        for (int t = 0; t < k; ++t) tup[t] = sol_components[t][j];
        out[j] = a.index_of(tup);
    }
    return out;
}

std::vector<std::vector<int>> kernel_over(const FiniteAbelianGroup& a, const ZMat& coeff,
                                          int unknowns) {
    int k = a.rank();
    std::vector<std::vector<int>> out;
    for (int t = 0; t < k; ++t) {
        for (const auto& kv : kernel_mod(coeff, a.moduli[t])) {
            std::vector<int> gen(unknowns, a.zero());
            for (int j = 0; j < unknowns; ++j) {
                std::vector<int> tup(k, 0);
                tup[t] = kv[j];
                gen[j] = a.index_of(tup);
            }
            out.push_back(std::move(gen));
        }
    }
    return out;
}

std::optional<std::vector<int>> solve_potentials(const FiniteAbelianGroup& a, int nodes,
                                                 const std::vector<PotentialEdge>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(nodes); // (neighbor, signed diff idx)
    for (const auto& e : edges) {
        adj[e.u].push_back({e.v, e.diff});
        adj[e.v].push_back({e.u, a.neg(e.diff)});
    }
    std::vector<int> x(nodes, -1);
    for (int root = 0; root < nodes; ++root) {
        if (x[root] >= 0) continue;
        x[root] = a.zero();
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, d] : adj[u]) {
                int want = a.add(x[u], d);
                if (x[v] < 0) {
                    x[v] = want;
                    q.push(v);
                } else if (x[v] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return x;
}

} // namespace finstack
