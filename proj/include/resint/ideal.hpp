#ifndef RESINT_IDEAL_HPP
#define RESINT_IDEAL_HPP

#include "resint/modgb.hpp"
#include "resint/poly.hpp"

#include <map>
#include <set>

namespace resint {

/* ---- ring extension helpers (used by intersection, saturation,
        Rabinowitsch, and the T-extension S = R[T_1..T_r]) ---- */

template <class K>
RingPtr<K> extend_ring(const RingPtr<K>& R, const std::vector<std::string>& extra,
                       MonoOrder ord = {}) {
    std::vector<std::string> vars = R->vars;
    vars.insert(vars.end(), extra.begin(), extra.end());
    return make_ring(R->field, std::move(vars), ord);
}

// reinterpret p in a ring that contains p's variables as a prefix block
template <class K> Poly<K> promote(const RingPtr<K>& big, const Poly<K>& p) {
    std::vector<Term<K>> ts(p.t.begin(), p.t.end());
    return poly_normalize(big, std::move(ts));
}

// inverse of promote; every monomial must avoid the extra variables
template <class K> Poly<K> restrict_poly(const RingPtr<K>& small, const Poly<K>& p) {
    for (auto& tm : p.t)
        for (int i = small->n; i < static_cast<int>(tm.m.e.size()); ++i)
            if (tm.m.e[i])
                throw std::invalid_argument("restrict_poly: polynomial involves extension vars");
    std::vector<Term<K>> ts(p.t.begin(), p.t.end());
    return poly_normalize(small, std::move(ts));
}

// same ring, different monomial order
template <class K> RingPtr<K> with_order(const RingPtr<K>& R, MonoOrder ord) {
    return make_ring(R->field, R->vars, ord);
}

template <class K> Poly<K> reorder(const RingPtr<K>& target, const Poly<K>& p) {
    std::vector<Term<K>> ts(p.t.begin(), p.t.end());
    return poly_normalize(target, std::move(ts));
}

/* The polynomial extension S = R[T_1..T_r].  In the bigraded mode each T_i
   carries internal x-degree deg(f_i) on top of its T-degree 1. */
template <class K> struct TExtension {
    RingPtr<K> base;
    int t_count = 0;
    RingPtr<K> combined;
    std::vector<int> t_internal_deg;

    MonoOrder elim_order() const { return MonoOrder{OrderKind::elim, base->n}; }
    int t_index(int i) const { return base->n + i; } // i-th T variable in `combined`
};

template <class K>
TExtension<K> make_t_extension(const RingPtr<K>& R, int r, std::vector<int> t_internal_deg = {}) {
    std::vector<std::string> extra;
    for (int i = 1; i <= r; ++i)
        extra.push_back("T" + std::to_string(i));
    TExtension<K> ext;
    ext.base = R;
    ext.t_count = r;
    ext.combined = extend_ring(R, extra);
    ext.t_internal_deg =
        t_internal_deg.empty() ? std::vector<int>(r, 1) : std::move(t_internal_deg);
    return ext;
}

/* ---- ideals ---- */

template <class K> struct GBResult {
    std::vector<Poly<K>> basis; // reduced, monic, sorted descending by lead term
    MonoOrder order;
    std::vector<Monomial> staircase;       // lead monomials
    std::shared_ptr<ModGB<K>> engine;      // reducer over the basis (shared, immutable)
};

template <class K> int poly_cmp_canonical(const Poly<K>& a, const Poly<K>& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? -1 : 1;
    const auto& R = *a.ring;
    for (std::size_t i = 0; i < a.t.size() && i < b.t.size(); ++i) {
        int c = R.cmp(a.t[i].m, b.t[i].m);
        if (c)
            return c;
        std::string ca = R.field.to_string(a.t[i].c), cb = R.field.to_string(b.t[i].c);
        if (ca != cb)
            return ca < cb ? -1 : 1;
    }
    if (a.t.size() != b.t.size())
        return a.t.size() < b.t.size() ? -1 : 1;
    return 0;
}

template <class K> class Ideal {
  public:
    Ideal() = default;
    Ideal(RingPtr<K> R, std::vector<Poly<K>> gens) : ring_(std::move(R)) {
        for (auto& g : gens) {
            if (g.ring != ring_)
                throw ring_mismatch{};
            if (!g.is_zero())
                gens_.push_back(g);
        }
        std::sort(gens_.begin(), gens_.end(),
                  [](const Poly<K>& a, const Poly<K>& b) { return poly_cmp_canonical(a, b) < 0; });
    }

    const RingPtr<K>& ring() const { return ring_; }
    const std::vector<Poly<K>>& gens() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }

    // write-once per order; duplicate computation across threads is tolerated
    const GBResult<K>& groebner(MonoOrder ord) const {
        auto key = std::pair<int, int>(static_cast<int>(ord.kind), ord.split);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        GBResult<K> res;
        res.order = ord;
        RingPtr<K> Rw = (ord.kind == ring_->order.kind && ord.split == ring_->order.split)
                            ? ring_
                            : with_order(ring_, ord);
        std::vector<Vec<K>> vs;
        for (auto& g : gens_)
            vs.push_back(vec_from_poly(reorder(Rw, g)));
        ModCtx<K> ctx(Rw, 1);
        auto gb = std::make_shared<ModGB<K>>(ctx, vs);
        for (auto& v : gb->basis()) {
            res.basis.push_back(poly_from_vec(Rw, v));
            res.staircase.push_back(v.lead().m);
        }
        res.engine = std::move(gb);
        return cache_.emplace(key, std::move(res)).first->second;
    }
    const GBResult<K>& groebner() const { return groebner(ring_->order); }

  private:
    RingPtr<K> ring_;
    std::vector<Poly<K>> gens_;
    mutable std::map<std::pair<int, int>, GBResult<K>> cache_;
};

template <class K> Ideal<K> make_ideal(const RingPtr<K>& R, std::vector<Poly<K>> gens) {
    return Ideal<K>(R, std::move(gens));
}

template <class K> Poly<K> normal_form(const Poly<K>& p, const GBResult<K>& gb) {
    if (gb.basis.empty())
        return p;
    RingPtr<K> Rw = gb.basis.front().ring;
    return reorder(p.ring,
                   poly_from_vec(Rw, gb.engine->normal_form(vec_from_poly(reorder(Rw, p)))));
}

template <class K> bool ideal_contains(const Ideal<K>& A, const Poly<K>& p) {
    if (p.is_zero())
        return true;
    if (A.is_zero_ideal())
        return false;
    return normal_form(p, A.groebner()).is_zero();
}

template <class K> bool is_unit_ideal(const Ideal<K>& A) {
    return !A.is_zero_ideal() && A.groebner().basis.size() == 1 &&
           A.groebner().basis[0].t.size() == 1 && A.groebner().basis[0].lead().m.is_one();
}

template <class K> bool ideal_equal(const Ideal<K>& A, const Ideal<K>& B) {
    for (auto& g : B.gens())
        if (!ideal_contains(A, g))
            return false;
    for (auto& g : A.gens())
        if (!ideal_contains(B, g))
            return false;
    return true;
}

template <class K> struct CofactorResult {
    std::vector<Poly<K>> cofactors;
    Poly<K> remainder;
};

/* p = sum cofactor_i * gens_i + remainder, remainder in normal form w.r.t. a
   Groebner basis of (gens).  Cofactors are expressed over the original
   generators by tracking the transformation rows. */
template <class K>
CofactorResult<K> divide_with_cofactors(const Poly<K>& p, const std::vector<Poly<K>>& gens) {
    if (gens.empty())
        return {{}, p};
    RingPtr<K> R = p.ring;
    std::vector<Vec<K>> cols;
    for (auto& g : gens) {
        if (g.ring != R)
            throw ring_mismatch{};
        cols.push_back(vec_from_poly(g));
    }
    TracedModule<K> tm(R, 1, cols);
    auto dv = tm.divide(vec_from_poly(p));
    return {std::move(dv.cofactors), poly_from_vec(R, dv.remainder)};
}

/* ---- colon, intersection, saturation, elimination ---- */

// (A : b) via syzygies of (gens(A), b): the b-coordinates of the syzygies
template <class K> Ideal<K> ideal_colon_elem(const Ideal<K>& A, const Poly<K>& b) {
    RingPtr<K> R = A.ring();
    if (b.is_zero())
        return make_ideal(R, {poly_one(R)});
    if (A.is_zero_ideal()) {
        // (0 : b) = 0 in a domain
        return make_ideal(R, {});
    }
    std::vector<Vec<K>> cols;
    for (auto& g : A.gens())
        cols.push_back(vec_from_poly(g));
    cols.push_back(vec_from_poly(b));
    auto syz = syzygy_generators(R, 1, cols);
    int bpos = static_cast<int>(A.gens().size());
    std::vector<Poly<K>> out;
    for (auto& s : syz) {
        Poly<K> q = poly_from_vec(R, s, bpos);
        if (!q.is_zero())
            out.push_back(poly_monic(q));
    }
    return make_ideal(R, std::move(out));
}

template <class K> Ideal<K> ideal_colon(const Ideal<K>& A, const Ideal<K>& B) {
    if (A.ring() != B.ring())
        throw ring_mismatch{};
    RingPtr<K> R = A.ring();
    if (B.is_zero_ideal())
        return make_ideal(R, {poly_one(R)});
    bool first = true;
    Ideal<K> acc;
    for (auto& b : B.gens()) {
        Ideal<K> c = ideal_colon_elem(A, b);
        acc = first ? c : ideal_intersection(acc, c);
        first = false;
    }
    return acc;
}

// A (cap) B via the one-variable elimination t*A + (1-t)*B
template <class K> Ideal<K> ideal_intersection(const Ideal<K>& A, const Ideal<K>& B) {
    if (A.ring() != B.ring())
        throw ring_mismatch{};
    RingPtr<K> R = A.ring();
    if (A.is_zero_ideal() || B.is_zero_ideal())
        return make_ideal(R, {});
    MonoOrder elim{OrderKind::elim, R->n};
    RingPtr<K> Rt = extend_ring(R, {"@t"}, elim);
    Poly<K> t = poly_var(Rt, R->n);
    Poly<K> omt = poly_sub(poly_one(Rt), t);
    std::vector<Vec<K>> vs;
    for (auto& a : A.gens())
        vs.push_back(vec_from_poly(poly_mul(t, promote(Rt, a))));
    for (auto& b : B.gens())
        vs.push_back(vec_from_poly(poly_mul(omt, promote(Rt, b))));
    ModCtx<K> ctx(Rt, 1);
    ModGB<K> gb(ctx, vs);
    std::vector<Poly<K>> out;
    for (auto& v : gb.basis()) {
        bool uses_t = false;
        for (auto& tm : v.t)
            if (tm.m.e[R->n])
                uses_t = true;
        if (!uses_t)
            out.push_back(restrict_poly(R, poly_from_vec(Rt, v)));
    }
    return make_ideal(R, std::move(out));
}

// A : B^infinity by iterated colon (stabilizes by the ascending chain condition)
template <class K> Ideal<K> saturation(const Ideal<K>& A, const Ideal<K>& B, int max_iter = 64) {
    Ideal<K> cur = A;
    for (int it = 0; it < max_iter; ++it) {
        Ideal<K> next = ideal_colon(cur, B);
        if (ideal_equal(next, cur))
            return cur;
        cur = next;
    }
    throw std::runtime_error("saturation: did not stabilize within iteration cap");
}

/* A (cap) k[vars \ block]: Groebner basis under a block order with the
   eliminated variables dominant, keeping the block-free elements.  Arbitrary
   variable subsets are handled by permuting them to the suffix. */
template <class K> Ideal<K> eliminate(const Ideal<K>& A, const std::vector<int>& block) {
    RingPtr<K> R = A.ring();
    if (block.empty())
        return A;
    std::set<int> bl(block.begin(), block.end());
    std::vector<int> perm; // old index per new position: kept vars first
    for (int i = 0; i < R->n; ++i)
        if (!bl.count(i))
            perm.push_back(i);
    int kept = static_cast<int>(perm.size());
    for (int i = 0; i < R->n; ++i)
        if (bl.count(i))
            perm.push_back(i);
    std::vector<std::string> names;
    for (int i : perm)
        names.push_back(R->vars[i]);
    RingPtr<K> Rp = make_ring(R->field, names, MonoOrder{OrderKind::elim, kept});
    std::vector<int> inv(R->n);
    for (int i = 0; i < R->n; ++i)
        inv[perm[i]] = i;
    auto permute = [&](const Poly<K>& p, const RingPtr<K>& target,
                       const std::vector<int>& to_new) {
        std::vector<Term<K>> ts;
        for (auto& tm : p.t) {
            Monomial m;
            m.deg = tm.m.deg;
            for (int i = 0; i < R->n; ++i)
                m.e[to_new[i]] = tm.m.e[i];
            ts.push_back({m, tm.c});
        }
        return poly_normalize(target, std::move(ts));
    };
    std::vector<Vec<K>> vs;
    for (auto& g : A.gens())
        vs.push_back(vec_from_poly(permute(g, Rp, inv)));
    ModCtx<K> ctx(Rp, 1);
    ModGB<K> gb(ctx, vs);
    std::vector<Poly<K>> out;
    for (auto& v : gb.basis()) {
        bool uses_block = false;
        for (auto& tm : v.t)
            for (int i = kept; i < R->n; ++i)
                if (tm.m.e[i])
                    uses_block = true;
        if (!uses_block)
            out.push_back(permute(poly_from_vec(Rp, v), R, perm));
    }
    return make_ideal(R, std::move(out));
}

// Rabinowitsch: f in rad(A) iff 1 in (A, 1 - w*f)
template <class K> bool radical_membership(const Poly<K>& f, const Ideal<K>& A) {
    if (f.is_zero())
        return true;
    RingPtr<K> R = A.ring();
    RingPtr<K> Rw = extend_ring(R, {"@w"});
    std::vector<Poly<K>> gens;
    for (auto& g : A.gens())
        gens.push_back(promote(Rw, g));
    gens.push_back(poly_sub(poly_one(Rw), poly_mul(poly_var(Rw, R->n), promote(Rw, f))));
    return is_unit_ideal(make_ideal(Rw, std::move(gens)));
}

/* ---- dimension and height ---- */

namespace detail {
// maximal independent variable set for a monomial ideal; -1 if unit
inline int monomial_ideal_codim_complement(std::vector<Monomial> lts, int n) {
    for (auto& m : lts)
        if (m.is_one())
            return -1;
    // drop redundant generators
    std::vector<Monomial> min;
    for (auto& m : lts) {
        bool red = false;
        for (auto& o : lts)
            if (&o != &m && mono_divides(o, m, n) && !(o == m))
                red = true;
        if (!red)
            min.push_back(m);
    }
    int best = -1;
    std::set<std::uint32_t> seen;
    // S independent iff every generator has an excluded variable
    auto rec = [&](auto&& self, std::vector<const Monomial*> gens, std::uint32_t excluded,
                   int nexcl) -> void {
        if (n - nexcl <= best)
            return;
        if (gens.empty()) {
            best = std::max(best, n - nexcl);
            return;
        }
        if (seen.count(excluded))
            return;
        seen.insert(excluded);
        const Monomial* g = gens.front();
        for (int v = 0; v < n; ++v) {
            if (!g->e[v] || (excluded & (1u << v)))
                continue;
            std::vector<const Monomial*> rest;
            for (auto* h : gens)
                if (!h->e[v])
                    rest.push_back(h);
            self(self, std::move(rest), excluded | (1u << v), nexcl + 1);
        }
    };
    std::vector<const Monomial*> ptrs;
    for (auto& m : min)
        ptrs.push_back(&m);
    rec(rec, ptrs, 0u, 0);
    return best;
}
} // namespace detail

// Krull dimension of R/A; unit ideal reports the sentinel -1
template <class K> int krull_dim(const Ideal<K>& A) {
    if (A.is_zero_ideal())
        return A.ring()->n;
    const auto& gb = A.groebner();
    return detail::monomial_ideal_codim_complement(gb.staircase, A.ring()->n);
}

// height(A) = n - dim(R/A); unit ideal reports the sentinel n+1
template <class K> int height(const Ideal<K>& A) {
    int d = krull_dim(A);
    if (d < 0)
        return A.ring()->n + 1;
    return A.ring()->n - d;
}

/* ---- graded minimal generators ---- */

template <class K> std::vector<Poly<K>> min_gens_graded(const Ideal<K>& A) {
    std::vector<Poly<K>> gens = A.gens();
    for (auto& g : gens)
        if (!is_homogeneous(g))
            throw std::invalid_argument("min_gens_graded: inhomogeneous generator");
    std::stable_sort(gens.begin(), gens.end(), [](const Poly<K>& a, const Poly<K>& b) {
        return a.degree() < b.degree();
    });
    std::vector<Poly<K>> kept;
    for (auto& g : gens) {
        if (kept.empty()) {
            kept.push_back(poly_monic(g));
            continue;
        }
        Ideal<K> span = make_ideal(A.ring(), kept);
        if (!ideal_contains(span, g))
            kept.push_back(poly_monic(g));
    }
    return kept;
}

/* ---- assorted ideal algebra ---- */

template <class K> Ideal<K> ideal_sum(const Ideal<K>& A, const Ideal<K>& B) {
    std::vector<Poly<K>> gens = A.gens();
    for (auto& g : B.gens())
        gens.push_back(g);
    return make_ideal(A.ring(), std::move(gens));
}

template <class K> Ideal<K> ideal_product(const Ideal<K>& A, const Ideal<K>& B) {
    std::vector<Poly<K>> gens;
    for (auto& a : A.gens())
        for (auto& b : B.gens())
            gens.push_back(poly_mul(a, b));
    return make_ideal(A.ring(), std::move(gens));
}

template <class K> Ideal<K> ideal_power(const Ideal<K>& A, int e) {
    Ideal<K> r = make_ideal(A.ring(), {poly_one(A.ring())});
    for (int i = 0; i < e; ++i)
        r = ideal_product(r, A);
    return r;
}

template <class K> bool ideal_subset(const Ideal<K>& A, const Ideal<K>& B) {
    for (auto& g : A.gens())
        if (!ideal_contains(B, g))
            return false;
    return true;
}

} // namespace resint

#endif
