#pragma once

#include <map>
#include <optional>
#include <vector>

#include "finstack/cochain.hpp"

namespace finstack {

// ---------------------------------------------------------------------------
// Bar cohomology

struct CohomologyResult {
    std::vector<int> invariants;       // invariant factors of H^n (1s dropped)
    long long order = 1;               // |H^n|
    std::vector<Cochain> generators;   // one representative cocycle per factor
    std::vector<Cochain> classes;      // lex-minimal representative per class,
                                       // populated when |H^n| is small
};

struct CohomologyOptions {
    long long enumeration_threshold = 1 << 20; // max cochain-space size for the
                                               // exhaustive engine
    long long class_list_cap = 4096;           // materialize per-class reps when
                                               // |H^n| is at most this
};

/// ker d / im d of the bar complex. Below the threshold this runs the
/// exhaustive engine on normalized cochains; above it, Smith normal form on
/// the full integral complex. The two engines agree (tested) since the
/// normalized subcomplex computes the same cohomology.
CohomologyResult cohomology_group(const GroupTable& g, const FiniteAbelianGroup& a,
                                  const GAction& rho, int degree,
                                  const CohomologyOptions& opts = {});

/// Force one engine, for cross-validation.
CohomologyResult cohomology_group_enumerated(const GroupTable& g, const FiniteAbelianGroup& a,
                                             const GAction& rho, int degree,
                                             long long class_list_cap = 4096);
CohomologyResult cohomology_group_snf(const GroupTable& g, const FiniteAbelianGroup& a,
                                      const GAction& rho, int degree,
                                      long long class_list_cap = 4096);

/// Witness theta with bar_differential(theta) = x - y, or absence.
std::optional<Cochain> bar_cohomologous(const GroupTable& g, const FiniteAbelianGroup& a,
                                        const GAction& rho, const Cochain& x, const Cochain& y);

// ---------------------------------------------------------------------------
// Simplicial covers of the nerve BG

/// Levelwise surjections U_q -> G^q together with face and degeneracy lifts
/// satisfying the simplicial identities. Base tuples are indexed as in
/// cochain.hpp (little-endian).
struct SimplicialCover {
    GroupTable group;
    int q_max = 0;
    std::vector<int> level_size;                      // |U_q|
    std::vector<std::vector<int>> proj;               // proj[q][u] -> tuple index in G^q
    std::vector<std::vector<std::vector<int>>> face;  // face[q][i], 0 <= i <= q, maps U_q -> U_{q-1}
    std::vector<std::vector<std::vector<int>>> degen; // degen[q][i], 0 <= i <= q, maps U_q -> U_{q+1}
};

ValidationReport validate_cover(const SimplicialCover& c);

SimplicialCover identity_cover(const GroupTable& g, int q_max);
/// U_q = G^q x {sheets} with constant sheet under faces and degeneracies.
SimplicialCover sheeted_cover(const GroupTable& g, int q_max, int sheets);
/// U_q = (G x K)^q, the nerve of the product group projected to the nerve of G.
SimplicialCover nerve_product_cover(const GroupTable& g, const GroupTable& k, int q_max);

/// Levelwise fiber product of two covers of the same group: the canonical
/// common refinement. Projections are returned through `proj1`/`proj2`.
struct CoverRefinement {
    std::vector<std::vector<int>> map; // map[q] : U'_q -> U_q over G^q
};
SimplicialCover cover_product(const SimplicialCover& a, const SimplicialCover& b,
                              CoverRefinement* proj1, CoverRefinement* proj2);

ValidationReport validate_refinement(const SimplicialCover& fine, const SimplicialCover& coarse,
                                     const CoverRefinement& r);

// ---------------------------------------------------------------------------
// Double complex C^{p,q} = Maps(U_q^{[p+1]}, A)

/// Entry values are vectors of A-element indices over the fiber-power tuple
/// enumeration exposed below. The sign convention for the total differential
/// is D = delta_v + (-1)^{p+q} delta_h; with it a degree-3 total cocycle
/// (lambda1, lambda2, lambda3) satisfies literally
///   dh l1 = 0,  dv l1 = dh l2,  dv l2 = dh l3,  dv l3 = 0.
class DoubleComplex {
  public:
    DoubleComplex() = default;
    DoubleComplex(const SimplicialCover& cover, FiniteAbelianGroup coeff, int p_max, int q_max);

    const SimplicialCover& cover() const { return cover_; }
    const FiniteAbelianGroup& coeff() const { return coeff_; }
    int p_max() const { return p_max_; }
    int q_max() const { return q_max_; }

    /// Number of tuples in U_q^{[p+1]}.
    int entry_size(int p, int q) const;
    /// Tuple decode: entry index -> p+1 cover element ids.
    const std::vector<int>& tuple_at(int p, int q, int idx) const;
    int tuple_id(int p, int q, const std::vector<int>& tuple) const;

    /// Čech differential C^{p,q} -> C^{p+1,q}.
    std::vector<int> dh(int p, int q, const std::vector<int>& vals) const;
    /// Simplicial differential C^{p,q} -> C^{p,q+1}.
    std::vector<int> dv(int p, int q, const std::vector<int>& vals) const;

  private:
    void index_level(int p, int q);

    SimplicialCover cover_;
    FiniteAbelianGroup coeff_;
    int p_max_ = 0, q_max_ = 0;
    std::vector<std::vector<std::vector<std::vector<int>>>> tuples_;
    std::vector<std::vector<std::map<std::vector<int>, int>>> lookup_;
};

DoubleComplex build_double_complex(const GroupTable& g, const FiniteAbelianGroup& a,
                                   const SimplicialCover& cover, int p_max, int q_max);

/// Total cochain of a fixed degree: comp[p] holds the C^{p, degree-p} values
/// (empty when that entry is outside the complex).
struct TotalCochain {
    int degree = 0;
    std::vector<std::vector<int>> comp;
};

TotalCochain zero_total(const DoubleComplex& dc, int degree);
TotalCochain total_add(const DoubleComplex& dc, const TotalCochain& a, const TotalCochain& b);
TotalCochain total_sub(const DoubleComplex& dc, const TotalCochain& a, const TotalCochain& b);
bool total_is_zero(const TotalCochain& t);

/// D = delta_v + (-1)^{p+q} delta_h.
TotalCochain total_differential(const DoubleComplex& dc, const TotalCochain& t);

/// Embed a bar cochain as the (0, n) component of a total cochain.
TotalCochain total_from_bar(const DoubleComplex& dc, const Cochain& bar);

struct TotalCohomologyResult {
    std::vector<int> invariants;
    long long order = 1;
    std::vector<TotalCochain> generators;
    std::vector<TotalCochain> classes; // populated when small
};

TotalCohomologyResult total_cohomology(const DoubleComplex& dc, int degree,
                                       long long class_list_cap = 4096);

/// Witness theta with D(theta) = x - y, or absence.
std::optional<TotalCochain> cohomologous(const DoubleComplex& dc, const TotalCochain& x,
                                         const TotalCochain& y);

/// Pull a total cochain back along a refinement of covers.
TotalCochain refine_total(const DoubleComplex& fine, const DoubleComplex& coarse,
                          const CoverRefinement& r, const TotalCochain& t);

// ---------------------------------------------------------------------------
// Edge maps

/// Row-0 edge: a bar n-cocycle included as the pure (0, n) component.
TotalCochain edge_include_bar(const DoubleComplex& dc, const Cochain& bar);

/// Čech edge: the (n-1, 1) component of a total cocycle, together with its
/// class in the Čech cohomology of the level-1 cover. Over finite sets this
/// class always vanishes (finite covers have no higher Čech cohomology), and
/// the witness kappa with dh(kappa) = component is returned.
struct CechEdgeResult {
    std::vector<int> component;          // values on U_1^{[n]}
    bool class_is_trivial = false;
    std::vector<int> trivializing_kappa; // values on U_1^{[n-1]}
};

CechEdgeResult edge_cech_component(const DoubleComplex& dc, const TotalCochain& t);

} // namespace finstack
