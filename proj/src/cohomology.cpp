#include "finstack/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "finstack/zlin.hpp"

namespace finstack {

// ---------------------------------------------------------------------------
// Generic cohomology of a complex of finitely generated Z-modules
//   (Z^prev / mod_prev) --d_prev--> (Z^mid / mod_mid) --d_mid--> (Z^next / mod_next)

namespace {

// Basis of the lattice spanned by the columns of `gens` (mid x s).
ZMat lattice_basis(const ZMat& gens) {
    int rows = static_cast<int>(gens.size());
    Smith sn = smith_normal_form(gens);
    // colspace(gens) = colspace(U^{-1} S); the nonzero columns of U^{-1} S
    // form a basis. Compute U^{-1} column by column.
    ZMat uinv = zmat(rows, rows);
    for (int j = 0; j < rows; ++j) {
        ZVec e(rows, 0);
        e[j] = 1;
        auto col = solve_integer(sn.u, e);
        if (!col) throw validation_error("lattice_basis: U not unimodular");
        for (int i = 0; i < rows; ++i) uinv[i][j] = (*col)[i];
    }
    ZMat basis;
    int cols = gens.empty() ? 0 : static_cast<int>(gens[0].size());
    for (int j = 0; j < std::min(rows, cols); ++j) {
        if (sn.s[j][j] == 0) continue;
        ZVec b(rows);
        for (int i = 0; i < rows; ++i) b[i] = uinv[i][j] * sn.s[j][j];
        basis.push_back(std::move(b)); // stored as rows; transpose on use
    }
    return basis; // basis[k] is the k-th basis vector
}

struct ZComplexPoint {
    ZMat d_prev;                 // mid x prev (empty allowed)
    ZMat d_mid;                  // next x mid (empty allowed)
    std::vector<long long> mod_prev, mod_mid, mod_next;
};

struct ZCohomology {
    std::vector<int> invariants;
    long long order = 1;
    std::vector<std::vector<long long>> generators; // coords in Z^mid, reduced
};

ZCohomology z_complex_cohomology(const ZComplexPoint& pt) {
    int mid = static_cast<int>(pt.mod_mid.size());
    int next = static_cast<int>(pt.mod_next.size());
    int prev = static_cast<int>(pt.mod_prev.size());

    // K = { x : d_mid x = 0 mod mod_next }
    std::vector<ZVec> kgens;
    if (next == 0 || pt.d_mid.empty()) {
        for (int j = 0; j < mid; ++j) {
            ZVec e(mid, 0);
            e[j] = 1;
            kgens.push_back(e);
        }
    } else {
        ZMat aug = zmat(next, mid + next);
        for (int i = 0; i < next; ++i) {
            for (int j = 0; j < mid; ++j) aug[i][j] = pt.d_mid[i][j];
            aug[i][mid + i] = pt.mod_next[i];
        }
        for (const auto& k : integer_kernel(aug)) {
            ZVec x(k.begin(), k.begin() + mid);
            kgens.push_back(std::move(x));
        }
    }
    ZMat kgen_mat = zmat(mid, static_cast<int>(kgens.size()));
    for (size_t j = 0; j < kgens.size(); ++j)
        for (int i = 0; i < mid; ++i) kgen_mat[i][j] = kgens[j][i];
    ZMat basis_rows = lattice_basis(kgen_mat); // r vectors of length mid
    int r = static_cast<int>(basis_rows.size());
    ZMat basis = zmat(mid, r);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < mid; ++i) basis[i][k] = basis_rows[k][i];

    // L generators: columns of d_prev plus the modulus lattice of C_mid
    std::vector<ZVec> lgens;
    for (int j = 0; j < prev; ++j) {
        ZVec v(mid, 0);
        bool nz = false;
        for (int i = 0; i < mid; ++i) {
            v[i] = pt.d_prev.empty() ? 0 : pt.d_prev[i][j];
            nz |= v[i] != 0;
        }
        if (nz) lgens.push_back(std::move(v));
    }
    for (int i = 0; i < mid; ++i) {
        ZVec v(mid, 0);
        v[i] = pt.mod_mid[i];
        lgens.push_back(std::move(v));
    }

    // coefficients of L in the K-basis
    ZMat coeff = zmat(r, static_cast<int>(lgens.size()));
    for (size_t j = 0; j < lgens.size(); ++j) {
        auto c = solve_integer(basis, lgens[j]);
        if (!c) throw validation_error("z_complex_cohomology: L not inside K");
        for (int i = 0; i < r; ++i) coeff[i][j] = (*c)[i];
    }

    Smith sn = smith_normal_form(coeff);
    ZCohomology res;
    // generator i of the quotient corresponds to U^{-1} e_i in K-coords
    ZMat uinv = zmat(r, r);
    for (int j = 0; j < r; ++j) {
        ZVec e(r, 0);
        e[j] = 1;
        auto col = solve_integer(sn.u, e);
        if (!col) throw validation_error("z_complex_cohomology: U not unimodular");
        for (int i = 0; i < r; ++i) uinv[i][j] = (*col)[i];
    }
    for (int i = 0; i < r; ++i) {
        long long d = (i < static_cast<int>(sn.s.size()) &&
                       i < (sn.s.empty() ? 0 : static_cast<int>(sn.s[0].size())))
                          ? sn.s[i][i]
                          : 0;
        if (d == 0) throw validation_error("z_complex_cohomology: free factor in finite module");
        if (d == 1) continue;
        res.invariants.push_back(static_cast<int>(d));
        res.order *= d;
        ZVec x(mid, 0);
        for (int t = 0; t < mid; ++t) {
            long long acc = 0;
            for (int k = 0; k < r; ++k) acc += basis[t][k] * uinv[k][i];
            long long m = pt.mod_mid[t];
            acc %= m;
            if (acc < 0) acc += m;
            x[t] = acc;
        }
        res.generators.push_back(std::move(x));
    }
    return res;
}

} // namespace

// ---------------------------------------------------------------------------
// Bar cohomology

namespace {

// Integer matrix of the bar differential C^n -> C^{n+1}, coordinates
// (tuple, slot) with slot index fastest.
ZMat bar_matrix(const GroupTable& g, const FiniteAbelianGroup& a, const GAction& rho, int n) {
    int ar = a.rank();
    long long rows_t = pow_ll(g.n, n + 1), cols_t = pow_ll(g.n, n);
    ZMat m = zmat(static_cast<int>(rows_t * ar), static_cast<int>(cols_t * ar));
    // integer lift of rho(e): column j = tuple of rho(e)(generator_j)
    std::vector<ZMat> rmat(g.n, zmat(ar, ar));
    for (int e = 0; e < g.n; ++e)
        for (int j = 0; j < ar; ++j) {
            std::vector<int> gen(ar, 0);
            gen[j] = 1;
            auto img = a.tuple_of(rho.apply(e, a.index_of(gen)));
            for (int i = 0; i < ar; ++i) rmat[e][i][j] = img[i];
        }
    std::vector<int> sub(n);
    for (long long ti = 0; ti < rows_t; ++ti) {
        auto t = index_tuple(g.n, n + 1, ti);
        // face 0 (twisted)
        for (int k = 0; k < n; ++k) sub[k] = t[k + 1];
        long long ci = tuple_index(g.n, sub);
        for (int i = 0; i < ar; ++i)
            for (int j = 0; j < ar; ++j) m[ti * ar + i][ci * ar + j] += rmat[t[0]][i][j];
        // inner faces
        for (int f = 1; f <= n; ++f) {
            for (int k = 0; k < n; ++k)
                sub[k] = (k < f - 1) ? t[k] : (k == f - 1 ? g.op(t[f - 1], t[f]) : t[k + 1]);
            ci = tuple_index(g.n, sub);
            int sign = (f % 2) ? -1 : 1;
            for (int i = 0; i < ar; ++i) m[ti * ar + i][ci * ar + i] += sign;
        }
        // last face
        for (int k = 0; k < n; ++k) sub[k] = t[k];
        ci = tuple_index(g.n, sub);
        int sign = ((n + 1) % 2) ? -1 : 1;
        for (int i = 0; i < ar; ++i) m[ti * ar + i][ci * ar + i] += sign;
    }
    return m;
}

std::vector<long long> repeat_moduli(const FiniteAbelianGroup& a, long long tuples) {
    std::vector<long long> mods;
    mods.reserve(tuples * a.rank());
    for (long long t = 0; t < tuples; ++t)
        for (int m : a.moduli) mods.push_back(m);
    return mods;
}

Cochain cochain_from_coords(const GroupTable& g, const FiniteAbelianGroup& a, int degree,
                            const std::vector<long long>& coords) {
    Cochain c = zero_cochain(g, a, degree);
    int ar = a.rank();
    for (size_t t = 0; t < c.values.size(); ++t) {
        std::vector<int> tup(ar);
        for (int s = 0; s < ar; ++s) tup[s] = static_cast<int>(coords[t * ar + s]);
        c.values[t] = a.index_of(tup);
    }
    c.normalized = is_normalized(g, c);
    return c;
}

} // namespace

CohomologyResult cohomology_group_snf(const GroupTable& g, const FiniteAbelianGroup& a,
                                      const GAction& rho, int degree, long long class_list_cap) {
    ZComplexPoint pt;
    pt.mod_mid = repeat_moduli(a, pow_ll(g.n, degree));
    pt.mod_next = repeat_moduli(a, pow_ll(g.n, degree + 1));
    pt.d_mid = bar_matrix(g, a, rho, degree);
    if (degree > 0) {
        pt.mod_prev = repeat_moduli(a, pow_ll(g.n, degree - 1));
        pt.d_prev = bar_matrix(g, a, rho, degree - 1);
    }
    auto z = z_complex_cohomology(pt);
    CohomologyResult res;
    res.invariants = z.invariants;
    res.order = z.order;
    for (const auto& gen : z.generators)
        res.generators.push_back(cochain_from_coords(g, a, degree, gen));
    if (res.order <= class_list_cap) {
        // enumerate all classes as combinations of the generators
        std::vector<int> radix;
        for (int d : res.invariants) radix.push_back(d);
        std::vector<int> idx(radix.size(), 0);
        bool done = false;
        while (!done) {
            Cochain c = zero_cochain(g, a, degree);
            for (size_t k = 0; k < idx.size(); ++k)
                for (int rep = 0; rep < idx[k]; ++rep) c = cochain_add(c, res.generators[k]);
            c.normalized = is_normalized(g, c);
            res.classes.push_back(c);
            done = true;
            for (size_t k = 0; k < radix.size(); ++k) {
                if (++idx[k] < radix[k]) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if (radix.empty()) break;
        }
    }
    return res;
}

namespace {

// positions of tuples avoiding the unit (free coordinates of normalized cochains)
std::vector<long long> normalized_positions(const GroupTable& g, int degree) {
    std::vector<long long> pos;
    long long total = pow_ll(g.n, degree);
    for (long long i = 0; i < total; ++i) {
        auto t = index_tuple(g.n, degree, i);
        bool unit = false;
        for (int x : t) unit |= (x == g.unit);
        if (!unit) pos.push_back(i);
    }
    return pos;
}

} // namespace

CohomologyResult cohomology_group_enumerated(const GroupTable& g, const FiniteAbelianGroup& a,
                                             const GAction& rho, int degree,
                                             long long class_list_cap) {
    auto free_n = normalized_positions(g, degree);
    long long an = a.size();

    // all normalized cocycles, in lexicographic order of their value vectors
    std::vector<std::vector<int>> cocycles;
    {
        std::vector<int> assign(free_n.size(), 0);
        bool done = free_n.empty() ? false : false;
        while (true) {
            Cochain c = zero_cochain(g, a, degree);
            for (size_t k = 0; k < free_n.size(); ++k) c.values[free_n[k]] = assign[k];
            if (is_zero(bar_differential(g, rho, c))) cocycles.push_back(c.values);
            done = true;
            for (size_t k = 0; k < assign.size(); ++k) {
                size_t kk = assign.size() - 1 - k; // increment most significant last
                if (++assign[kk] < an) {
                    done = false;
                    break;
                }
                assign[kk] = 0;
            }
            if (done) break;
        }
    }

    // all coboundaries of normalized cochains
    std::set<std::vector<int>> boundaries;
    if (degree > 0) {
        auto free_p = normalized_positions(g, degree - 1);
        std::vector<int> assign(free_p.size(), 0);
        while (true) {
            Cochain c = zero_cochain(g, a, degree - 1);
            for (size_t k = 0; k < free_p.size(); ++k) c.values[free_p[k]] = assign[k];
            boundaries.insert(bar_differential(g, rho, c).values);
            bool done = true;
            for (size_t k = 0; k < assign.size(); ++k) {
                size_t kk = assign.size() - 1 - k;
                if (++assign[kk] < an) {
                    done = false;
                    break;
                }
                assign[kk] = 0;
            }
            if (done) break;
        }
    } else {
        boundaries.insert(zero_cochain(g, a, 0).values);
    }

    // classes: first unvisited cocycle (lex order) is the minimal representative
    auto add_vec = [&](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> r(x.size());
        for (size_t i = 0; i < x.size(); ++i) r[i] = a.add(x[i], y[i]);
        return r;
    };
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> reps;
    std::map<std::vector<int>, int> class_of;
    for (const auto& z : cocycles) {
        if (seen.count(z)) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(z);
        for (const auto& b : boundaries) {
            auto v = add_vec(z, b);
            seen.insert(v);
            class_of[v] = id;
        }
    }

    CohomologyResult res;
    res.order = static_cast<long long>(reps.size());
    // group structure on classes via representative addition
    int n_classes = static_cast<int>(reps.size());
    std::vector<int> mul(n_classes * n_classes);
    for (int i = 0; i < n_classes; ++i)
        for (int j = 0; j < n_classes; ++j) mul[i * n_classes + j] = class_of.at(add_vec(reps[i], reps[j]));
    auto pres = abelianize(group_from_mul(n_classes, std::move(mul)));
    res.invariants = canonical_invariants(pres.group.moduli);
    // one generator per invariant factor
    {
        std::vector<int> mods = pres.group.moduli;
        for (size_t k = 0; k < mods.size(); ++k) {
            if (mods[k] == 1) continue;
            std::vector<int> t(mods.size(), 0);
            t[k] = 1;
            int cls = pres.from_canonical[pres.group.index_of(t)];
            Cochain c = zero_cochain(g, a, degree);
            c.values = reps[cls];
            c.normalized = true;
            res.generators.push_back(c);
        }
    }
    if (res.order <= class_list_cap) {
        for (const auto& r : reps) {
            Cochain c = zero_cochain(g, a, degree);
            c.values = r;
            c.normalized = true;
            res.classes.push_back(c);
        }
    }
    return res;
}

CohomologyResult cohomology_group(const GroupTable& g, const FiniteAbelianGroup& a,
                                  const GAction& rho, int degree, const CohomologyOptions& opts) {
    // size of the normalized cochain space at this and the previous degree
    auto space = [&](int deg) -> long long {
        if (deg < 0) return 1;
        long long free_pos = 1;
        for (int i = 0; i < deg; ++i) {
            free_pos *= (g.n - 1);
            if (free_pos > opts.enumeration_threshold) return opts.enumeration_threshold + 1;
        }
        long long total = 1;
        for (long long i = 0; i < free_pos; ++i) {
            total *= a.size();
            if (total > opts.enumeration_threshold) return opts.enumeration_threshold + 1;
        }
        return total;
    };
    if (space(degree) <= opts.enumeration_threshold &&
        space(degree - 1) <= opts.enumeration_threshold)
        return cohomology_group_enumerated(g, a, rho, degree, opts.class_list_cap);
    return cohomology_group_snf(g, a, rho, degree, opts.class_list_cap);
}

std::optional<Cochain> bar_cohomologous(const GroupTable& g, const FiniteAbelianGroup& a,
                                        const GAction& rho, const Cochain& x, const Cochain& y) {
    int degree = x.degree;
    if (degree == 0) {
        if (x.values == y.values) return zero_cochain(g, a, 0);
        return std::nullopt;
    }
    ZMat d = bar_matrix(g, a, rho, degree - 1);
    int ar = a.rank();
    long long rows_t = pow_ll(g.n, degree);
    long long cols_t = pow_ll(g.n, degree - 1);
    // augment with the modulus lattice of the target
    ZMat aug = zmat(static_cast<int>(rows_t * ar),
                    static_cast<int>(cols_t * ar + rows_t * ar));
    for (long long i = 0; i < rows_t * ar; ++i) {
        for (long long j = 0; j < cols_t * ar; ++j) aug[i][j] = d[i][j];
        aug[i][cols_t * ar + i] = a.moduli[i % ar];
    }
    ZVec rhs(rows_t * ar);
    for (long long t = 0; t < rows_t; ++t) {
        auto diff = a.tuple_of(a.sub(x.values[t], y.values[t]));
        for (int s = 0; s < ar; ++s) rhs[t * ar + s] = diff[s];
    }
    auto sol = solve_integer(aug, rhs);
    if (!sol) return std::nullopt;
    std::vector<long long> coords(sol->begin(), sol->begin() + cols_t * ar);
    for (long long j = 0; j < cols_t * ar; ++j) {
        long long m = a.moduli[j % ar];
        coords[j] = ((coords[j] % m) + m) % m;
    }
    return cochain_from_coords(g, a, degree - 1, coords);
}

// ---------------------------------------------------------------------------
// Covers

namespace {

std::vector<int> base_face(const GroupTable& g, int q, int i, const std::vector<int>& t) {
    std::vector<int> r;
    r.reserve(q - 1);
    if (i == 0) {
        for (int k = 1; k < q; ++k) r.push_back(t[k]);
    } else if (i == q) {
        for (int k = 0; k + 1 < q; ++k) r.push_back(t[k]);
    } else {
        for (int k = 0; k < q; ++k) {
            if (k == i - 1)
                r.push_back(g.op(t[i - 1], t[i]));
            else if (k != i)
                r.push_back(t[k]);
        }
    }
    return r;
}

std::vector<int> base_degen(const GroupTable& g, int q, int i, const std::vector<int>& t) {
    std::vector<int> r;
    r.reserve(q + 1);
    for (int k = 0; k < i; ++k) r.push_back(t[k]);
    r.push_back(g.unit);
    for (int k = i; k < q; ++k) r.push_back(t[k]);
    return r;
}

} // namespace

ValidationReport validate_cover(const SimplicialCover& c) {
    ValidationReport rep;
    const auto& g = c.group;
    int qmax = c.q_max;
    if (static_cast<int>(c.level_size.size()) != qmax + 1 ||
        static_cast<int>(c.proj.size()) != qmax + 1) {
        rep.add("cover-shape", {});
        return rep;
    }
    for (int q = 0; q <= qmax; ++q) {
        long long base = pow_ll(g.n, q);
        std::vector<bool> hit(base, false);
        if (static_cast<int>(c.proj[q].size()) != c.level_size[q]) {
            rep.add("proj-shape", {q});
            return rep;
        }
        for (int u = 0; u < c.level_size[q]; ++u) {
            if (c.proj[q][u] < 0 || c.proj[q][u] >= base) {
                rep.add("proj-range", {q, u});
                return rep;
            }
            hit[c.proj[q][u]] = true;
        }
        for (long long b = 0; b < base; ++b)
            if (!hit[b]) rep.add("proj-surjective", {q, b});
    }
    if (!rep.ok()) return rep;

    auto face = [&](int q, int i, int u) { return c.face[q][i][u]; };
    auto degen = [&](int q, int i, int u) { return c.degen[q][i][u]; };

    // faces commute with projection
    for (int q = 1; q <= qmax; ++q)
        for (int i = 0; i <= q; ++i)
            for (int u = 0; u < c.level_size[q]; ++u) {
                auto t = index_tuple(g.n, q, c.proj[q][u]);
                if (c.proj[q - 1][face(q, i, u)] != tuple_index(g.n, base_face(g, q, i, t)))
                    rep.add("face-over-base", {q, i, u});
            }
    for (int q = 0; q < qmax; ++q)
        for (int i = 0; i <= q; ++i)
            for (int u = 0; u < c.level_size[q]; ++u) {
                auto t = index_tuple(g.n, q, c.proj[q][u]);
                if (c.proj[q + 1][degen(q, i, u)] != tuple_index(g.n, base_degen(g, q, i, t)))
                    rep.add("degen-over-base", {q, i, u});
            }
    if (!rep.ok()) return rep;

    // simplicial identities within available levels
    for (int q = 2; q <= qmax; ++q)
        for (int i = 0; i <= q - 1; ++i)
            for (int j = i + 1; j <= q; ++j)
                for (int u = 0; u < c.level_size[q]; ++u)
                    if (face(q - 1, i, face(q, j, u)) != face(q - 1, j - 1, face(q, i, u)))
                        rep.add("face-face", {q, i, j, u});
    for (int q = 0; q + 1 <= qmax && q < qmax; ++q)
        for (int j = 0; j <= q; ++j)
            for (int u = 0; u < c.level_size[q]; ++u) {
                if (face(q + 1, j, degen(q, j, u)) != u) rep.add("face-degen-id", {q, j, u});
                if (face(q + 1, j + 1, degen(q, j, u)) != u)
                    rep.add("face-degen-id2", {q, j, u});
            }
    for (int q = 1; q < qmax; ++q)
        for (int i = 0; i <= q + 1; ++i)
            for (int j = 0; j <= q - 1 && j <= q; ++j)
                for (int u = 0; u < c.level_size[q]; ++u) {
                    if (i < j && face(q + 1, i, degen(q, j, u)) !=
                                     degen(q - 1, j - 1, face(q, i, u)))
                        rep.add("face-degen-comm", {q, i, j, u});
                    if (i > j + 1 && face(q + 1, i, degen(q, j, u)) !=
                                         degen(q - 1, j, face(q, i - 1, u)))
                        rep.add("face-degen-comm2", {q, i, j, u});
                }
    for (int q = 0; q + 2 <= qmax; ++q)
        for (int i = 0; i <= q; ++i)
            for (int j = i; j <= q; ++j)
                for (int u = 0; u < c.level_size[q]; ++u)
                    if (degen(q + 1, i, degen(q, j, u)) != degen(q + 1, j + 1, degen(q, i, u)))
                        rep.add("degen-degen", {q, i, j, u});
    return rep;
}

SimplicialCover identity_cover(const GroupTable& g, int q_max) {
    SimplicialCover c;
    c.group = g;
    c.q_max = q_max;
    c.level_size.resize(q_max + 1);
    c.proj.resize(q_max + 1);
    c.face.resize(q_max + 1);
    c.degen.resize(q_max + 1);
    for (int q = 0; q <= q_max; ++q) {
        long long n = pow_ll(g.n, q);
        c.level_size[q] = static_cast<int>(n);
        c.proj[q].resize(n);
        for (long long u = 0; u < n; ++u) c.proj[q][u] = static_cast<int>(u);
        if (q >= 1) {
            c.face[q].assign(q + 1, std::vector<int>(n));
            for (int i = 0; i <= q; ++i)
                for (long long u = 0; u < n; ++u)
                    c.face[q][i][u] =
                        tuple_index(g.n, base_face(g, q, i, index_tuple(g.n, q, u)));
        }
        if (q < q_max) {
            c.degen[q].assign(q + 1, std::vector<int>(n));
            for (int i = 0; i <= q; ++i)
                for (long long u = 0; u < n; ++u)
                    c.degen[q][i][u] =
                        tuple_index(g.n, base_degen(g, q, i, index_tuple(g.n, q, u)));
        }
    }
    return c;
}

SimplicialCover sheeted_cover(const GroupTable& g, int q_max, int sheets) {
    SimplicialCover base = identity_cover(g, q_max);
    SimplicialCover c;
    c.group = g;
    c.q_max = q_max;
    c.level_size.resize(q_max + 1);
    c.proj.resize(q_max + 1);
    c.face.resize(q_max + 1);
    c.degen.resize(q_max + 1);
    for (int q = 0; q <= q_max; ++q) {
        int n = base.level_size[q] * sheets;
        c.level_size[q] = n;
        c.proj[q].resize(n);
        for (int u = 0; u < n; ++u) c.proj[q][u] = base.proj[q][u / sheets];
        if (q >= 1) {
            c.face[q].assign(q + 1, std::vector<int>(n));
            for (int i = 0; i <= q; ++i)
                for (int u = 0; u < n; ++u)
                    c.face[q][i][u] = base.face[q][i][u / sheets] * sheets + u % sheets;
        }
        if (q < q_max) {
            c.degen[q].assign(q + 1, std::vector<int>(n));
            for (int i = 0; i <= q; ++i)
                for (int u = 0; u < n; ++u)
                    c.degen[q][i][u] = base.degen[q][i][u / sheets] * sheets + u % sheets;
        }
    }
    return c;
}

SimplicialCover nerve_product_cover(const GroupTable& g, const GroupTable& k, int q_max) {
    GroupTable gk = direct_product(g, k);
    SimplicialCover big = identity_cover(gk, q_max);
    SimplicialCover c = big;
    c.group = g;
    for (int q = 0; q <= q_max; ++q) {
        for (int u = 0; u < c.level_size[q]; ++u) {
            auto t = index_tuple(gk.n, q, big.proj[q][u]);
            std::vector<int> gt(q);
            for (int s = 0; s < q; ++s) gt[s] = t[s] / k.n; // pair index = x*|k| + y
            c.proj[q][u] = tuple_index(g.n, gt);
        }
    }
    return c;
}

SimplicialCover cover_product(const SimplicialCover& a, const SimplicialCover& b,
                              CoverRefinement* proj1, CoverRefinement* proj2) {
    SimplicialCover c;
    c.group = a.group;
    c.q_max = std::min(a.q_max, b.q_max);
    c.level_size.resize(c.q_max + 1);
    c.proj.resize(c.q_max + 1);
    c.face.resize(c.q_max + 1);
    c.degen.resize(c.q_max + 1);
    std::vector<std::map<std::pair<int, int>, int>> code(c.q_max + 1);
    std::vector<std::vector<std::pair<int, int>>> decode(c.q_max + 1);
    for (int q = 0; q <= c.q_max; ++q) {
        for (int u = 0; u < a.level_size[q]; ++u)
            for (int v = 0; v < b.level_size[q]; ++v)
                if (a.proj[q][u] == b.proj[q][v]) {
                    code[q][{u, v}] = static_cast<int>(decode[q].size());
                    decode[q].push_back({u, v});
                }
        c.level_size[q] = static_cast<int>(decode[q].size());
        c.proj[q].resize(c.level_size[q]);
        for (int w = 0; w < c.level_size[q]; ++w) c.proj[q][w] = a.proj[q][decode[q][w].first];
    }
    for (int q = 1; q <= c.q_max; ++q) {
        c.face[q].assign(q + 1, std::vector<int>(c.level_size[q]));
        for (int i = 0; i <= q; ++i)
            for (int w = 0; w < c.level_size[q]; ++w) {
                auto [u, v] = decode[q][w];
                c.face[q][i][w] = code[q - 1].at({a.face[q][i][u], b.face[q][i][v]});
            }
    }
    for (int q = 0; q < c.q_max; ++q) {
        c.degen[q].assign(q + 1, std::vector<int>(c.level_size[q]));
        for (int i = 0; i <= q; ++i)
            for (int w = 0; w < c.level_size[q]; ++w) {
                auto [u, v] = decode[q][w];
                c.degen[q][i][w] = code[q + 1].at({a.degen[q][i][u], b.degen[q][i][v]});
            }
    }
    if (proj1) {
        proj1->map.assign(c.q_max + 1, {});
        for (int q = 0; q <= c.q_max; ++q) {
            proj1->map[q].resize(c.level_size[q]);
            for (int w = 0; w < c.level_size[q]; ++w) proj1->map[q][w] = decode[q][w].first;
        }
    }
    if (proj2) {
        proj2->map.assign(c.q_max + 1, {});
        for (int q = 0; q <= c.q_max; ++q) {
            proj2->map[q].resize(c.level_size[q]);
            for (int w = 0; w < c.level_size[q]; ++w) proj2->map[q][w] = decode[q][w].second;
        }
    }
    return c;
}

ValidationReport validate_refinement(const SimplicialCover& fine, const SimplicialCover& coarse,
                                     const CoverRefinement& r) {
    ValidationReport rep;
    int qmax = std::min(fine.q_max, coarse.q_max);
    if (static_cast<int>(r.map.size()) < qmax + 1) {
        rep.add("refinement-shape", {});
        return rep;
    }
    for (int q = 0; q <= qmax; ++q)
        for (int u = 0; u < fine.level_size[q]; ++u) {
            if (coarse.proj[q][r.map[q][u]] != fine.proj[q][u]) rep.add("refinement-base", {q, u});
        }
    for (int q = 1; q <= qmax; ++q)
        for (int i = 0; i <= q; ++i)
            for (int u = 0; u < fine.level_size[q]; ++u)
                if (r.map[q - 1][fine.face[q][i][u]] != coarse.face[q][i][r.map[q][u]])
                    rep.add("refinement-face", {q, i, u});
    for (int q = 0; q < qmax; ++q)
        for (int i = 0; i <= q; ++i)
            for (int u = 0; u < fine.level_size[q]; ++u)
                if (r.map[q + 1][fine.degen[q][i][u]] != coarse.degen[q][i][r.map[q][u]])
                    rep.add("refinement-degen", {q, i, u});
    return rep;
}

// ---------------------------------------------------------------------------
// Double complex

DoubleComplex::DoubleComplex(const SimplicialCover& cover, FiniteAbelianGroup coeff, int p_max,
                             int q_max)
    : cover_(cover), coeff_(std::move(coeff)), p_max_(p_max), q_max_(q_max) {
    if (q_max_ > cover_.q_max)
        throw validation_error("double complex needs cover levels up to q_max");
    tuples_.assign(p_max_ + 2, {});
    for (int p = 0; p <= p_max_ + 1; ++p) {
        tuples_[p].assign(q_max_ + 1, {});
        for (int q = 0; q <= q_max_; ++q) index_level(p, q);
    }
}

void DoubleComplex::index_level(int p, int q) {
    // group cover elements by their base point, enumerate fiber (p+1)-tuples
    long long base = pow_ll(cover_.group.n, q);
    std::vector<std::vector<int>> fibers(base);
    for (int u = 0; u < cover_.level_size[q]; ++u) fibers[cover_.proj[q][u]].push_back(u);
    auto& out = tuples_[p][q];
    std::vector<int> tup(p + 1);
    for (long long b = 0; b < base; ++b) {
        const auto& f = fibers[b];
        long long count = 1;
        for (int k = 0; k <= p; ++k) count *= f.size();
        for (long long i = 0; i < count; ++i) {
            long long x = i;
            for (int k = 0; k <= p; ++k) {
                tup[k] = f[x % f.size()];
                x /= f.size();
            }
            out.push_back(tup);
        }
    }
}

int DoubleComplex::entry_size(int p, int q) const {
    return static_cast<int>(tuples_[p][q].size());
}

const std::vector<int>& DoubleComplex::tuple_at(int p, int q, int idx) const {
    return tuples_[p][q][idx];
}

int DoubleComplex::tuple_id(int p, int q, const std::vector<int>& tuple) const {
    const auto& list = tuples_[p][q];
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == tuple) return static_cast<int>(i);
    return -1;
}

std::vector<int> DoubleComplex::dh(int p, int q, const std::vector<int>& vals) const {
    const auto& out_t = tuples_[p + 1][q];
    std::vector<int> out(out_t.size(), coeff_.zero());
    std::vector<int> sub(p + 1);
    for (size_t i = 0; i < out_t.size(); ++i) {
        const auto& t = out_t[i];
        int acc = coeff_.zero();
        for (int drop = 0; drop <= p + 1; ++drop) {
            int k2 = 0;
            for (int k = 0; k <= p + 1; ++k)
                if (k != drop) sub[k2++] = t[k];
            int v = vals[tuple_id(p, q, sub)];
            acc = (drop % 2) ? coeff_.sub(acc, v) : coeff_.add(acc, v);
        }
        out[i] = acc;
    }
    return out;
}

std::vector<int> DoubleComplex::dv(int p, int q, const std::vector<int>& vals) const {
    const auto& out_t = tuples_[p][q + 1];
    std::vector<int> out(out_t.size(), coeff_.zero());
    std::vector<int> sub(p + 1);
    for (size_t i = 0; i < out_t.size(); ++i) {
        const auto& t = out_t[i];
        int acc = coeff_.zero();
        for (int f = 0; f <= q + 1; ++f) {
            for (int k = 0; k <= p; ++k) sub[k] = cover_.face[q + 1][f][t[k]];
            int v = vals[tuple_id(p, q, sub)];
            acc = (f % 2) ? coeff_.sub(acc, v) : coeff_.add(acc, v);
        }
        out[i] = acc;
    }
    return out;
}

DoubleComplex build_double_complex(const GroupTable& g, const FiniteAbelianGroup& a,
                                   const SimplicialCover& cover, int p_max, int q_max) {
    if (cover.group.n != g.n) throw validation_error("cover is over a different group");
    require_valid(validate_cover(cover));
    return DoubleComplex(cover, a, p_max, q_max);
}

// ---------------------------------------------------------------------------
// Total complex

TotalCochain zero_total(const DoubleComplex& dc, int degree) {
    TotalCochain t;
    t.degree = degree;
    t.comp.resize(degree + 1);
    for (int p = 0; p <= degree; ++p) {
        int q = degree - p;
        if (p <= dc.p_max() && q <= dc.q_max())
            t.comp[p].assign(dc.entry_size(p, q), dc.coeff().zero());
    }
    return t;
}

TotalCochain total_add(const DoubleComplex& dc, const TotalCochain& a, const TotalCochain& b) {
    TotalCochain r = a;
    for (size_t p = 0; p < r.comp.size(); ++p)
        for (size_t i = 0; i < r.comp[p].size(); ++i)
            r.comp[p][i] = dc.coeff().add(a.comp[p][i], b.comp[p][i]);
    return r;
}

TotalCochain total_sub(const DoubleComplex& dc, const TotalCochain& a, const TotalCochain& b) {
    TotalCochain r = a;
    for (size_t p = 0; p < r.comp.size(); ++p)
        for (size_t i = 0; i < r.comp[p].size(); ++i)
            r.comp[p][i] = dc.coeff().sub(a.comp[p][i], b.comp[p][i]);
    return r;
}

bool total_is_zero(const TotalCochain& t) {
    for (const auto& c : t.comp)
        for (int v : c)
            if (v != 0) return false;
    return true;
}

TotalCochain total_differential(const DoubleComplex& dc, const TotalCochain& t) {
    int n = t.degree;
    TotalCochain out = zero_total(dc, n + 1);
    const auto& a = dc.coeff();
    int sign_h = (n % 2) ? -1 : 1; // (-1)^{p+q} = (-1)^n uniformly in degree n
    for (int p = 0; p <= n; ++p) {
        int q = n - p;
        if (p > dc.p_max() || q > dc.q_max() || t.comp[p].empty()) continue;
        // vertical part lands in (p, q+1)
        if (q + 1 <= dc.q_max() && !out.comp[p].empty()) {
            auto dvv = dc.dv(p, q, t.comp[p]);
            for (size_t i = 0; i < dvv.size(); ++i) out.comp[p][i] = a.add(out.comp[p][i], dvv[i]);
        }
        // horizontal part lands in (p+1, q)
        if (p + 1 <= dc.p_max() && !out.comp[p + 1].empty()) {
            auto dhh = dc.dh(p, q, t.comp[p]);
            for (size_t i = 0; i < dhh.size(); ++i)
                out.comp[p + 1][i] = (sign_h > 0) ? a.add(out.comp[p + 1][i], dhh[i])
                                                  : a.sub(out.comp[p + 1][i], dhh[i]);
        }
    }
    return out;
}

TotalCochain total_from_bar(const DoubleComplex& dc, const Cochain& bar) {
    int n = bar.degree;
    TotalCochain t = zero_total(dc, n);
    const auto& cov = dc.cover();
    for (int i = 0; i < dc.entry_size(0, n); ++i) {
        int u = dc.tuple_at(0, n, i)[0];
        t.comp[0][i] = bar.values[cov.proj[n][u]];
    }
    return t;
}

namespace {

struct TotalLayout {
    std::vector<int> p_of_slot;      // flattened coordinate -> p
    std::vector<int> offset;         // per p: starting coordinate (tuple units)
    int tuple_count = 0;             // total tuples across components
};

TotalLayout layout(const DoubleComplex& dc, int degree) {
    TotalLayout l;
    l.offset.assign(degree + 1, -1);
    for (int p = 0; p <= degree; ++p) {
        int q = degree - p;
        if (p > dc.p_max() || q > dc.q_max()) continue;
        l.offset[p] = l.tuple_count;
        l.tuple_count += dc.entry_size(p, q);
    }
    return l;
}

std::vector<long long> flatten(const DoubleComplex& dc, const TotalLayout& l,
                               const TotalCochain& t) {
    int ar = dc.coeff().rank();
    std::vector<long long> out(static_cast<long long>(l.tuple_count) * ar, 0);
    for (int p = 0; p <= t.degree; ++p) {
        if (l.offset[p] < 0 || t.comp[p].empty()) continue;
        for (size_t i = 0; i < t.comp[p].size(); ++i) {
            auto tup = dc.coeff().tuple_of(t.comp[p][i]);
            for (int s = 0; s < ar; ++s)
                out[(static_cast<long long>(l.offset[p]) + i) * ar + s] = tup[s];
        }
    }
    return out;
}

TotalCochain unflatten(const DoubleComplex& dc, const TotalLayout& l, int degree,
                       const std::vector<long long>& coords) {
    int ar = dc.coeff().rank();
    TotalCochain t = zero_total(dc, degree);
    for (int p = 0; p <= degree; ++p) {
        if (l.offset[p] < 0) continue;
        for (size_t i = 0; i < t.comp[p].size(); ++i) {
            std::vector<int> tup(ar);
            for (int s = 0; s < ar; ++s) {
                long long m = dc.coeff().moduli[s];
                long long v = coords[(static_cast<long long>(l.offset[p]) + i) * ar + s] % m;
                if (v < 0) v += m;
                tup[s] = static_cast<int>(v);
            }
            t.comp[p][i] = dc.coeff().index_of(tup);
        }
    }
    return t;
}

// integer matrix of the total differential, per tuple coordinate (the action
// is trivial, so it is slot-diagonal and we expand by the coefficient rank)
ZMat total_matrix(const DoubleComplex& dc, int degree) {
    TotalLayout lin = layout(dc, degree);
    TotalLayout lout = layout(dc, degree + 1);
    int ar = dc.coeff().rank();
    ZMat m = zmat(lout.tuple_count * ar, lin.tuple_count * ar);
    int sign_h = (degree % 2) ? -1 : 1;
    for (int p = 0; p <= degree; ++p) {
        int q = degree - p;
        if (lin.offset[p] < 0) continue;
        // vertical: (p, q+1)
        if (q + 1 <= dc.q_max() && lout.offset[p] >= 0) {
            std::vector<int> sub(p + 1);
            for (int i = 0; i < dc.entry_size(p, q + 1); ++i) {
                const auto& t = dc.tuple_at(p, q + 1, i);
                for (int f = 0; f <= q + 1; ++f) {
                    for (int k = 0; k <= p; ++k) sub[k] = dc.cover().face[q + 1][f][t[k]];
                    int cid = dc.tuple_id(p, q, sub);
                    int sign = (f % 2) ? -1 : 1;
                    for (int s = 0; s < ar; ++s)
                        m[(lout.offset[p] + i) * ar + s][(lin.offset[p] + cid) * ar + s] += sign;
                }
            }
        }
        // horizontal: (p+1, q)
        if (p + 1 <= degree + 1 && lout.offset[p + 1] >= 0 && p + 1 <= dc.p_max()) {
            std::vector<int> sub(p + 1);
            for (int i = 0; i < dc.entry_size(p + 1, q); ++i) {
                const auto& t = dc.tuple_at(p + 1, q, i);
                for (int drop = 0; drop <= p + 1; ++drop) {
                    int k2 = 0;
                    for (int k = 0; k <= p + 1; ++k)
                        if (k != drop) sub[k2++] = t[k];
                    int cid = dc.tuple_id(p, q, sub);
                    int sign = ((drop % 2) ? -1 : 1) * sign_h;
                    for (int s = 0; s < ar; ++s)
                        m[(lout.offset[p + 1] + i) * ar + s][(lin.offset[p] + cid) * ar + s] +=
                            sign;
                }
            }
        }
    }
    return m;
}

std::vector<long long> total_moduli(const DoubleComplex& dc, int degree) {
    TotalLayout l = layout(dc, degree);
    std::vector<long long> mods;
    mods.reserve(static_cast<size_t>(l.tuple_count) * dc.coeff().rank());
    for (int t = 0; t < l.tuple_count; ++t)
        for (int m : dc.coeff().moduli) mods.push_back(m);
    return mods;
}

} // namespace

TotalCohomologyResult total_cohomology(const DoubleComplex& dc, int degree,
                                       long long class_list_cap) {
    if (degree + 1 > dc.q_max() || degree + 1 > dc.p_max())
        throw validation_error("total_cohomology: complex bounds too small for this degree");
    ZComplexPoint pt;
    pt.mod_mid = total_moduli(dc, degree);
    pt.mod_next = total_moduli(dc, degree + 1);
    pt.d_mid = total_matrix(dc, degree);
    if (degree > 0) {
        pt.mod_prev = total_moduli(dc, degree - 1);
        pt.d_prev = total_matrix(dc, degree - 1);
    }
    auto z = z_complex_cohomology(pt);
    TotalLayout l = layout(dc, degree);
    TotalCohomologyResult res;
    res.invariants = z.invariants;
    res.order = z.order;
    for (const auto& gen : z.generators) res.generators.push_back(unflatten(dc, l, degree, gen));
    if (res.order <= class_list_cap) {
        std::vector<int> idx(res.invariants.size(), 0);
        while (true) {
            TotalCochain t = zero_total(dc, degree);
            for (size_t k = 0; k < idx.size(); ++k)
                for (int r = 0; r < idx[k]; ++r) t = total_add(dc, t, res.generators[k]);
            res.classes.push_back(t);
            bool done = true;
            for (size_t k = 0; k < idx.size(); ++k) {
                if (++idx[k] < res.invariants[k]) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if (done) break;
        }
    }
    return res;
}

std::optional<TotalCochain> cohomologous(const DoubleComplex& dc, const TotalCochain& x,
                                         const TotalCochain& y) {
    int degree = x.degree;
    if (degree == 0) {
        TotalCochain diff = total_sub(dc, x, y);
        if (total_is_zero(diff)) return zero_total(dc, 0);
        return std::nullopt;
    }
    TotalLayout lp = layout(dc, degree - 1);
    TotalLayout lm = layout(dc, degree);
    int ar = dc.coeff().rank();
    ZMat d = total_matrix(dc, degree - 1);
    int rows = lm.tuple_count * ar, cols = lp.tuple_count * ar;
    ZMat aug = zmat(rows, cols + rows);
    auto mods = total_moduli(dc, degree);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = d[i][j];
        aug[i][cols + i] = mods[i];
    }
    auto diff = flatten(dc, lm, total_sub(dc, x, y));
    ZVec rhs(diff.begin(), diff.end());
    auto sol = solve_integer(aug, rhs);
    if (!sol) return std::nullopt;
    std::vector<long long> coords(sol->begin(), sol->begin() + cols);
    return unflatten(dc, lp, degree - 1, coords);
}

TotalCochain refine_total(const DoubleComplex& fine, const DoubleComplex& coarse,
                          const CoverRefinement& r, const TotalCochain& t) {
    TotalCochain out = zero_total(fine, t.degree);
    for (int p = 0; p <= t.degree; ++p) {
        int q = t.degree - p;
        if (out.comp[p].empty() || t.comp[p].empty()) continue;
        std::vector<int> sub(p + 1);
        for (int i = 0; i < fine.entry_size(p, q); ++i) {
            const auto& tup = fine.tuple_at(p, q, i);
            for (int k = 0; k <= p; ++k) sub[k] = r.map[q][tup[k]];
            out.comp[p][i] = t.comp[p][coarse.tuple_id(p, q, sub)];
        }
    }
    return out;
}

TotalCochain edge_include_bar(const DoubleComplex& dc, const Cochain& bar) {
    return total_from_bar(dc, bar);
}

CechEdgeResult edge_cech_component(const DoubleComplex& dc, const TotalCochain& t) {
    CechEdgeResult res;
    int n = t.degree;
    int p = n - 1;
    res.component = t.comp[p];
    // solve dh(kappa) = component on the q = 1 row
    int in_sz = dc.entry_size(p - 1, 1);
    int out_sz = dc.entry_size(p, 1);
    int ar = dc.coeff().rank();
    ZMat d = zmat(out_sz * ar, in_sz * ar);
    std::vector<int> sub(p);
    for (int i = 0; i < out_sz; ++i) {
        const auto& tup = dc.tuple_at(p, 1, i);
        for (int drop = 0; drop <= p; ++drop) {
            int k2 = 0;
            for (int k = 0; k <= p; ++k)
                if (k != drop) sub[k2++] = tup[k];
            int cid = dc.tuple_id(p - 1, 1, sub);
            int sign = (drop % 2) ? -1 : 1;
            for (int s = 0; s < ar; ++s) d[i * ar + s][cid * ar + s] += sign;
        }
    }
    ZMat aug = zmat(out_sz * ar, in_sz * ar + out_sz * ar);
    for (int i = 0; i < out_sz * ar; ++i) {
        for (int j = 0; j < in_sz * ar; ++j) aug[i][j] = d[i][j];
        aug[i][in_sz * ar + i] = dc.coeff().moduli[i % ar];
    }
    ZVec rhs(out_sz * ar);
    for (int i = 0; i < out_sz; ++i) {
        auto tup = dc.coeff().tuple_of(res.component[i]);
        for (int s = 0; s < ar; ++s) rhs[i * ar + s] = tup[s];
    }
    auto sol = solve_integer(aug, rhs);
    res.class_is_trivial = sol.has_value();
    if (sol) {
        res.trivializing_kappa.resize(in_sz);
        for (int i = 0; i < in_sz; ++i) {
            std::vector<int> tup(ar);
            for (int s = 0; s < ar; ++s) {
                long long m = dc.coeff().moduli[s];
                long long v = (*sol)[i * ar + s] % m;
                if (v < 0) v += m;
                tup[s] = static_cast<int>(v);
            }
            res.trivializing_kappa[i] = dc.coeff().index_of(tup);
        }
    }
    return res;
}

} // namespace finstack
