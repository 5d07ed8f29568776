#pragma once

#include <optional>
#include <vector>

#include "finstack/groupoid.hpp"
#include "finstack/report.hpp"

namespace finstack {

/// Left-principal biset from H to G: a finite set P with anchors
/// tau : P -> objects(G), sigma : P -> objects(H) (surjective), a left
/// G-action defined when s(g) = tau(p) and a right H-action defined when
/// sigma(p) = t(h). The left action is simply transitive on sigma-fibers.
struct PrincipalBiset {
    GpdPtr src_gpd; // H
    GpdPtr tgt_gpd; // G
    int total = 0;
    std::vector<int> tau, sigma;
    std::vector<int> left;  // left[g * total + p], -1 when undefined
    std::vector<int> right; // right[p * |H_1| + h], -1 when undefined

    int lact(int g, int p) const { return left[g * total + p]; }
    int ract(int p, int h) const { return right[p * src_gpd->n_morphisms() + h]; }

    /// Unique g with g·p = q (p, q in one sigma-fiber).
    int transporter(int p, int q) const;
};

ValidationReport validate_biset(const PrincipalBiset& p);

/// Helper for assembling a biset from action callables; fills the partial
/// tables and leaves undefined entries at -1.
template <class LFn, class RFn>
PrincipalBiset make_biset(GpdPtr h, GpdPtr g, int total, std::vector<int> tau,
                          std::vector<int> sigma, LFn&& lfn, RFn&& rfn) {
    PrincipalBiset p;
    p.src_gpd = std::move(h);
    p.tgt_gpd = std::move(g);
    p.total = total;
    p.tau = std::move(tau);
    p.sigma = std::move(sigma);
    p.left.assign(static_cast<size_t>(p.tgt_gpd->n_morphisms()) * total, -1);
    p.right.assign(static_cast<size_t>(total) * p.src_gpd->n_morphisms(), -1);
    for (int g1 = 0; g1 < p.tgt_gpd->n_morphisms(); ++g1)
        for (int x = 0; x < total; ++x)
            if (p.tgt_gpd->src(g1) == p.tau[x]) p.left[g1 * total + x] = lfn(g1, x);
    for (int x = 0; x < total; ++x)
        for (int h1 = 0; h1 < p.src_gpd->n_morphisms(); ++h1)
            if (p.sigma[x] == p.src_gpd->tgt(h1))
                p.right[x * p.src_gpd->n_morphisms() + h1] = rfn(x, h1);
    return p;
}

/// Map of bisets over the same endpoint groupoids, commuting with anchors and
/// both actions. Such maps are automatically bijections.
struct BibundleMap {
    PrincipalBiset dom, cod;
    std::vector<int> carrier;
};

ValidationReport check_bibundle_map(const BibundleMap& m);

PrincipalBiset bundlize(const GroupoidFunctor& f);
PrincipalBiset identity_bibundle(GpdPtr g);

/// Coequalizer composite: p : H -> G after q : K -> H, giving K -> G.
PrincipalBiset compose_bibundles(const PrincipalBiset& p, const PrincipalBiset& q);

/// Morita = simultaneously left and right principal (tau surjective and the
/// right action simply transitive).
bool is_morita(const PrincipalBiset& p);

PrincipalBiset invert(const PrincipalBiset& p);

struct SectionResult {
    std::vector<int> section;  // H-object -> element of P
    GroupoidFunctor functor;   // H -> G with bundlize(functor) ≅ p
    long long choice_count;    // number of available sections
};

/// Every finite surjection sigma admits a section, so a functor presentation
/// always exists; the count records the contractible choice space.
SectionResult find_section(const PrincipalBiset& p);

/// Exhaustive equivariant-bijection search, pruned by anchors and
/// left-transitivity; deterministic (lexicographically minimal).
std::optional<std::vector<int>> biset_isomorphism(const PrincipalBiset& a,
                                                  const PrincipalBiset& b);
bool bisets_isomorphic(const PrincipalBiset& a, const PrincipalBiset& b);

// ---------------------------------------------------------------------------
// Pullbacks

struct PullbackResult {
    FiniteGroupoid groupoid;                  // the pullback W
    GpdPtr groupoid_ptr;                      // shared handle to the same W
    GroupoidFunctor proj1;                    // W -> X
    GroupoidFunctor proj2;                    // W -> Z
    PrincipalBiset proj1_biset, proj2_biset;  // bundlizations
    BibundleMap witness;                      // G∘<proj1> ≅ F∘<proj2>
    std::vector<int> object_class_of_pair;    // pair (g,f) -> W-object id
};

/// Weak pullback of G : X -> Y against F : Z -> Y. Objects are the coequalizer
/// classes of {(g,f) : tau_G(g) = tau_F(f)} under the diagonal Y-action;
/// morphisms are X_1 x classes x Z_1 triples.
PullbackResult pullback(const PrincipalBiset& g_xy, const PrincipalBiset& f_zy);

/// Mediating biset for a competing cone (g : W -> X, f : W -> Z, phi), built
/// per the universal property; phi is an isomorphism G∘g -> F∘f.
PrincipalBiset pullback_mediator(const PullbackResult& pb, const PrincipalBiset& g_xy,
                                 const PrincipalBiset& f_zy, const PrincipalBiset& cone_g,
                                 const PrincipalBiset& cone_f, const BibundleMap& phi);

} // namespace finstack
