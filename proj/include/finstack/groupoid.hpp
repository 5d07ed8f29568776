#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "finstack/group.hpp"
#include "finstack/report.hpp"

namespace finstack {

/// Raw groupoid tables as exchanged through JSON. May be invalid; see
/// validate_groupoid.
struct GroupoidData {
    int objects = 0;
    int morphisms = 0;
    std::vector<int> src, tgt;
    std::vector<int> ident, inv;
    std::vector<std::array<int, 3>> compose; // (f, g, f-then-g)
};

/// Reports every violated groupoid axiom with a witness tuple. Composition is
/// read as compose(f,g) = "f then g", defined exactly when tgt(f) = src(g);
/// this convention is global to the library.
ValidationReport validate_groupoid(const GroupoidData& d);

/// Compiled, always-valid finite groupoid. Immutable after construction.
class FiniteGroupoid {
  public:
    FiniteGroupoid() = default;

    int n_objects() const { return n_obj_; }
    int n_morphisms() const { return n_mor_; }
    int src(int f) const { return src_[f]; }
    int tgt(int f) const { return tgt_[f]; }
    int ident(int x) const { return ident_[x]; }
    int inv(int f) const { return inv_[f]; }
    bool composable(int f, int g) const { return tgt_[f] == src_[g]; }
    int compose(int f, int g) const { return comp_[row_off_[f] + pos_in_src_[g]]; }

    const std::vector<int>& from(int x) const { return by_src_[x]; }
    const std::vector<int>& into(int x) const { return by_tgt_[x]; }
    std::vector<int> hom(int x, int y) const;

    GroupoidData dump() const;
    ValidationReport self_check() const;

    /// comp_fn(f, g) is consulted once for every composable pair.
    template <class Fn>
    static FiniteGroupoid build(int n_obj, std::vector<int> src, std::vector<int> tgt,
                                std::vector<int> ident, std::vector<int> inv, Fn&& comp_fn) {
        FiniteGroupoid g;
        g.n_obj_ = n_obj;
        g.n_mor_ = static_cast<int>(src.size());
        g.src_ = std::move(src);
        g.tgt_ = std::move(tgt);
        g.ident_ = std::move(ident);
        g.inv_ = std::move(inv);
        g.index_morphisms();
        g.row_off_.resize(g.n_mor_ + 1);
        long long total = 0;
        for (int f = 0; f < g.n_mor_; ++f) {
            g.row_off_[f] = total;
            total += static_cast<long long>(g.by_src_[g.tgt_[f]].size());
        }
        g.row_off_[g.n_mor_] = total;
        g.comp_.resize(total);
        for (int f = 0; f < g.n_mor_; ++f) {
            const auto& out = g.by_src_[g.tgt_[f]];
            for (size_t i = 0; i < out.size(); ++i)
                g.comp_[g.row_off_[f] + i] = comp_fn(f, out[i]);
        }
        return g;
    }

    /// Throws validation_error when the data is not a groupoid.
    static FiniteGroupoid compile(const GroupoidData& d);

  private:
    void index_morphisms();

    int n_obj_ = 0, n_mor_ = 0;
    std::vector<int> src_, tgt_, ident_, inv_;
    std::vector<std::vector<int>> by_src_, by_tgt_;
    std::vector<int> pos_in_src_;
    std::vector<long long> row_off_;
    std::vector<int> comp_;
};

using GpdPtr = std::shared_ptr<const FiniteGroupoid>;

FiniteGroupoid discrete_groupoid(int n);
FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid delooping(const GroupTable& g);

/// Action groupoid for a right action act[x*|g|+e] of g on {0..n_points-1}.
/// Objects are the points; a morphism (x, e) runs from x·e to x.
FiniteGroupoid action_groupoid(const GroupTable& g, int n_points, const std::vector<int>& act);

/// Čech groupoid of a surjection p : Y -> X given as p[y] = x.
FiniteGroupoid cech_groupoid(const std::vector<int>& p, int n_base);

/// Materialized binary product. Pair indices are big-endian:
/// (a,b) -> a * |B| + b on both objects and morphisms.
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct GroupoidFunctor {
    GpdPtr dom, cod;
    std::vector<int> obj_map, mor_map;

    int on_obj(int x) const { return obj_map[x]; }
    int on_mor(int f) const { return mor_map[f]; }
};

ValidationReport check_functor(const GroupoidFunctor& f);
GroupoidFunctor identity_functor(GpdPtr g);
GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g);

/// The canonical projection functor from a Čech groupoid to its base,
/// viewed as a discrete groupoid.
GroupoidFunctor cech_projection(GpdPtr cech, const std::vector<int>& p, GpdPtr base);

struct NaturalTransformation {
    GroupoidFunctor from, to;
    std::vector<int> comp; // comp[x] : from(x) -> to(x) in the codomain
};

ValidationReport check_natural(const NaturalTransformation& eta);

// ---------------------------------------------------------------------------
// Equivalences

struct EquivalenceCheck {
    bool fully_faithful = false;
    bool essentially_surjective = false;
    ValidationReport report;
    bool ok() const { return fully_faithful && essentially_surjective; }
};

EquivalenceCheck is_equivalence(const GroupoidFunctor& f);

/// Quasi-inverse of an equivalence q, with unit and counit forming an adjoint
/// equivalence: eta : id_cod => q∘s and xi : s∘q => id_dom. Object and
/// morphism choices are lexicographically minimal, so the output is
/// deterministic.
struct AdjointEquivalence {
    GroupoidFunctor inverse;
    NaturalTransformation eta;
    NaturalTransformation xi;
};

AdjointEquivalence quasi_inverse(const GroupoidFunctor& q);

// ---------------------------------------------------------------------------
// Nerve and homotopy invariants

struct Nerve {
    std::vector<unsigned long long> counts;
    std::vector<std::vector<std::vector<int>>> simplices; // may be empty above the cap
};

Nerve nerve(const FiniteGroupoid& g, int max_level, std::size_t materialize_cap = 1u << 20);

struct HomotopyInvariants {
    std::vector<int> component_of;   // object -> component id
    std::vector<int> representative; // component -> minimal object
    std::vector<GroupTable> isotropy;
    std::vector<std::vector<int>> isotropy_morphisms;
};

HomotopyInvariants homotopy_invariants(const FiniteGroupoid& g);

/// Complete invariant for equivalence of finite groupoids: a bijection of
/// components with isomorphic isotropy groups.
bool same_homotopy_type(const HomotopyInvariants& a, const HomotopyInvariants& b);

} // namespace finstack
