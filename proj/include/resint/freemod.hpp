#ifndef RESINT_FREEMOD_HPP
#define RESINT_FREEMOD_HPP

#include "resint/ideal.hpp"

#include <functional>
#include <limits>

namespace resint {

// depth of the zero module, by the min-convention on depth bounds
inline constexpr int kDepthInfinity = std::numeric_limits<int>::max() / 2;

/* Graded free module F = (+)_i R(-twists[i]). */
template <class K> struct FreeModule {
    RingPtr<K> ring;
    std::vector<int> twists;

    FreeModule() = default;
    FreeModule(RingPtr<K> R, std::vector<int> tw) : ring(std::move(R)), twists(std::move(tw)) {}
    static FreeModule trivial(RingPtr<K> R, int rank, int twist = 0) {
        return FreeModule(std::move(R), std::vector<int>(rank, twist));
    }
    int rank() const { return static_cast<int>(twists.size()); }
};

/* degree of a homogeneous vector relative to the ambient twists; nullopt if
   inhomogeneous, no value constraint for the zero vector (reported as nullopt) */
template <class K>
std::optional<int> vec_degree(const FreeModule<K>& F, const Vec<K>& v) {
    std::optional<int> d;
    for (auto& tm : v.t) {
        int td = tm.m.deg + F.twists[tm.comp];
        if (!d)
            d = td;
        else if (*d != td)
            return std::nullopt;
    }
    return d;
}

template <class K> bool vec_homogeneous(const FreeModule<K>& F, const Vec<K>& v) {
    return v.is_zero() || vec_degree(F, v).has_value();
}

/* Map of graded free modules given by a target.rank x source.rank matrix;
   entry (i,j) is zero or homogeneous of degree source.twists[j] - target.twists[i]. */
template <class K> struct ModuleMap {
    FreeModule<K> source, target;
    std::vector<std::vector<Poly<K>>> mat;

    ModuleMap() = default;
    ModuleMap(FreeModule<K> src, FreeModule<K> tgt, std::vector<std::vector<Poly<K>>> m)
        : source(std::move(src)), target(std::move(tgt)), mat(std::move(m)) {}

    Vec<K> apply(const Vec<K>& v) const {
        const RingPtr<K>& R = source.ring;
        ModCtx<K> ctx(R, target.rank());
        std::vector<VTerm<K>> acc;
        for (auto& tm : v.t) {
            for (int i = 0; i < target.rank(); ++i) {
                const Poly<K>& e = mat[i][tm.comp];
                for (auto& et : e.t)
                    acc.push_back({mono_mul(et.m, tm.m, R->n), i, R->field.mul(et.c, tm.c)});
            }
        }
        return vec_normalize(ctx, std::move(acc));
    }

    std::vector<Vec<K>> columns() const {
        std::vector<Vec<K>> cols;
        ModCtx<K> ctx(source.ring, target.rank());
        for (int j = 0; j < source.rank(); ++j) {
            std::vector<VTerm<K>> ts;
            for (int i = 0; i < target.rank(); ++i)
                for (auto& tm : mat[i][j].t)
                    ts.push_back({tm.m, i, tm.c});
            cols.push_back(vec_normalize(ctx, std::move(ts)));
        }
        return cols;
    }

    bool graded_consistent() const {
        for (int i = 0; i < target.rank(); ++i)
            for (int j = 0; j < source.rank(); ++j) {
                const Poly<K>& e = mat[i][j];
                if (e.is_zero())
                    continue;
                auto [hom, deg] = degree_info(e);
                if (!hom || *deg != source.twists[j] - target.twists[i])
                    return false;
            }
        return true;
    }
};

template <class K>
ModuleMap<K> map_from_columns(const FreeModule<K>& target, const std::vector<Vec<K>>& cols,
                              std::vector<int> col_twists) {
    std::vector<std::vector<Poly<K>>> mat(
        target.rank(), std::vector<Poly<K>>(cols.size(), poly_zero(target.ring)));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < target.rank(); ++i)
            mat[i][j] = poly_from_vec(target.ring, cols[j], i);
    return ModuleMap<K>(FreeModule<K>(target.ring, std::move(col_twists)), target,
                        std::move(mat));
}

template <class K> ModuleMap<K> map_compose(const ModuleMap<K>& g, const ModuleMap<K>& f) {
    // g after f
    if (g.source.rank() != f.target.rank())
        throw std::invalid_argument("map_compose: rank mismatch");
    std::vector<std::vector<Poly<K>>> mat(
        g.target.rank(), std::vector<Poly<K>>(f.source.rank(), poly_zero(f.source.ring)));
    for (int i = 0; i < g.target.rank(); ++i)
        for (int j = 0; j < f.source.rank(); ++j)
            for (int l = 0; l < f.target.rank(); ++l)
                mat[i][j] = poly_add(mat[i][j], poly_mul(g.mat[i][l], f.mat[l][j]));
    return ModuleMap<K>(f.source, g.target, std::move(mat));
}

template <class K> bool map_is_zero(const ModuleMap<K>& f) {
    for (auto& row : f.mat)
        for (auto& e : row)
            if (!e.is_zero())
                return false;
    return true;
}

/* Finitely generated graded module presented inside a twisted free module:
   the module is span(gens)/span(rels), rels a submodule of span(gens). */
template <class K> struct Subquotient {
    FreeModule<K> ambient;
    std::vector<Vec<K>> gens;
    std::vector<Vec<K>> rels;

    Subquotient() = default;
    Subquotient(FreeModule<K> amb, std::vector<Vec<K>> g, std::vector<Vec<K>> r = {})
        : ambient(std::move(amb)), gens(std::move(g)), rels(std::move(r)) {
        auto prune = [](std::vector<Vec<K>>& vs) {
            vs.erase(std::remove_if(vs.begin(), vs.end(),
                                    [](const Vec<K>& v) { return v.is_zero(); }),
                     vs.end());
        };
        prune(gens);
        prune(rels);
    }

    static Subquotient free_cover(FreeModule<K> amb) {
        std::vector<Vec<K>> g;
        for (int i = 0; i < amb.rank(); ++i) {
            Vec<K> e;
            e.t.push_back({Monomial::one(), i, amb.ring->field.one()});
            g.push_back(e);
        }
        return Subquotient(std::move(amb), std::move(g));
    }

    // R/A as a subquotient of R
    static Subquotient cyclic(const Ideal<K>& A, int twist = 0) {
        FreeModule<K> amb(A.ring(), {twist});
        std::vector<Vec<K>> gens = free_cover(amb).gens;
        std::vector<Vec<K>> rels;
        for (auto& g : A.gens())
            rels.push_back(vec_from_poly(g));
        return Subquotient(std::move(amb), std::move(gens), std::move(rels));
    }
};

/* ---- monomial enumeration (Hilbert function counting) ---- */

inline void for_each_monomial(int n, int deg, const std::function<void(const Monomial&)>& fn) {
    if (deg < 0)
        return;
    Monomial m;
    m.deg = deg;
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == n - 1) {
            m.e[var] = static_cast<std::uint8_t>(rem);
            fn(m);
            m.e[var] = 0;
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            m.e[var] = static_cast<std::uint8_t>(e);
            rec(var + 1, rem - e);
        }
        m.e[var] = 0;
    };
    rec(0, deg);
}

inline long long count_monomials(int n, int deg) {
    if (deg < 0)
        return 0;
    long long r = 1; // binom(deg+n-1, n-1)
    for (int i = 1; i <= n - 1; ++i)
        r = r * (deg + i) / i;
    return r;
}

} // namespace resint

#endif
