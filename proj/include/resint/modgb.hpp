#ifndef RESINT_MODGB_HPP
#define RESINT_MODGB_HPP

#include "resint/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace resint {

struct guard_exceeded : std::runtime_error {
    explicit guard_exceeded(int deg)
        : std::runtime_error("Groebner degree guard exceeded at degree " + std::to_string(deg)) {}
};

// Global degree guard for Buchberger loops; the CLI lowers it via
// RESINT_MAX_DEGREE.  Generous default so library tests are unaffected.
inline int& gb_degree_guard() {
    static int guard = 100;
    return guard;
}

template <class K> struct VTerm {
    Monomial m;
    int comp = 0;
    typename K::Elem c;
};

/* Element of a free module R^rank: terms sorted strictly descending in the
   module order (component blocks first, then the ring's monomial order,
   then component index). */
template <class K> struct Vec {
    std::vector<VTerm<K>> t;
    bool is_zero() const { return t.empty(); }
    const VTerm<K>& lead() const { return t.front(); }
};

/* Order context for free-module computations.  `block` (smaller = more
   dominant) realizes position-block elimination: any term in a lower block
   beats any term in a higher block.  Empty block vector = single block. */
template <class K> struct ModCtx {
    RingPtr<K> R;
    int rank = 1;
    std::vector<int> block;

    ModCtx(RingPtr<K> r, int rk, std::vector<int> blk = {})
        : R(std::move(r)), rank(rk), block(std::move(blk)) {}

    int block_of(int comp) const { return block.empty() ? 0 : block[comp]; }

    // >0 if a is greater than b in the module order
    int term_cmp(const VTerm<K>& a, const VTerm<K>& b) const {
        int ba = block_of(a.comp), bb = block_of(b.comp);
        if (ba != bb)
            return ba < bb ? 1 : -1;
        int c = R->cmp(a.m, b.m);
        if (c)
            return c;
        if (a.comp != b.comp)
            return a.comp < b.comp ? 1 : -1;
        return 0;
    }
};

/* ---- basic vector arithmetic ---- */

template <class K> Vec<K> vec_normalize(const ModCtx<K>& ctx, std::vector<VTerm<K>> terms) {
    std::sort(terms.begin(), terms.end(),
              [&](const VTerm<K>& a, const VTerm<K>& b) { return ctx.term_cmp(a, b) > 0; });
    Vec<K> v;
    for (auto& tm : terms) {
        if (!v.t.empty() && v.t.back().m == tm.m && v.t.back().comp == tm.comp)
            v.t.back().c = ctx.R->field.add(v.t.back().c, tm.c);
        else
            v.t.push_back(tm);
        if (!v.t.empty() && ctx.R->field.is_zero(v.t.back().c))
            v.t.pop_back();
    }
    return v;
}

template <class K> Vec<K> vec_add(const ModCtx<K>& ctx, const Vec<K>& a, const Vec<K>& b) {
    const auto& F = ctx.R->field;
    Vec<K> r;
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        int c = ctx.term_cmp(a.t[i], b.t[j]);
        if (c > 0)
            r.t.push_back(a.t[i++]);
        else if (c < 0)
            r.t.push_back(b.t[j++]);
        else {
            auto s = F.add(a.t[i].c, b.t[j].c);
            if (!F.is_zero(s))
                r.t.push_back({a.t[i].m, a.t[i].comp, s});
            ++i, ++j;
        }
    }
    for (; i < a.t.size(); ++i)
        r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j)
        r.t.push_back(b.t[j]);
    return r;
}

template <class K> Vec<K> vec_neg(const ModCtx<K>& ctx, const Vec<K>& a) {
    Vec<K> r = a;
    for (auto& tm : r.t)
        tm.c = ctx.R->field.neg(tm.c);
    return r;
}

template <class K> Vec<K> vec_sub(const ModCtx<K>& ctx, const Vec<K>& a, const Vec<K>& b) {
    return vec_add(ctx, a, vec_neg(ctx, b));
}

template <class K>
Vec<K> vec_mul_term(const ModCtx<K>& ctx, const Vec<K>& a, const Monomial& m,
                    const typename K::Elem& c) {
    const auto& F = ctx.R->field;
    if (F.is_zero(c))
        return {};
    Vec<K> r;
    r.t.reserve(a.t.size());
    for (auto& tm : a.t)
        r.t.push_back({mono_mul(tm.m, m, ctx.R->n), tm.comp, F.mul(tm.c, c)});
    return r;
}

template <class K> Vec<K> vec_mul_poly(const ModCtx<K>& ctx, const Vec<K>& a, const Poly<K>& p) {
    std::vector<VTerm<K>> acc;
    acc.reserve(a.t.size() * p.t.size());
    for (auto& tp : p.t)
        for (auto& ta : a.t)
            acc.push_back({mono_mul(ta.m, tp.m, ctx.R->n), ta.comp, ctx.R->field.mul(ta.c, tp.c)});
    return vec_normalize(ctx, std::move(acc));
}

template <class K> Vec<K> vec_scale(const ModCtx<K>& ctx, const Vec<K>& a, typename K::Elem c) {
    return vec_mul_term(ctx, a, Monomial::one(), c);
}

template <class K> bool vec_eq(const Vec<K>& a, const Vec<K>& b, const K& field) {
    if (a.t.size() != b.t.size())
        return false;
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (a.t[i].m != b.t[i].m || a.t[i].comp != b.t[i].comp ||
            !field.eq(a.t[i].c, b.t[i].c))
            return false;
    return true;
}

template <class K> Vec<K> vec_monic(const ModCtx<K>& ctx, const Vec<K>& a) {
    if (a.is_zero())
        return a;
    return vec_scale(ctx, a, ctx.R->field.inv(a.lead().c));
}

// poly <-> rank-1 vector
template <class K> Vec<K> vec_from_poly(const Poly<K>& p, int comp = 0) {
    Vec<K> v;
    v.t.reserve(p.t.size());
    for (auto& tm : p.t)
        v.t.push_back({tm.m, comp, tm.c});
    return v;
}

template <class K> Poly<K> poly_from_vec(const RingPtr<K>& R, const Vec<K>& v, int comp = 0) {
    std::vector<Term<K>> ts;
    for (auto& tm : v.t)
        if (tm.comp == comp)
            ts.push_back({tm.m, tm.c});
    return poly_normalize(R, std::move(ts));
}

// canonical deterministic comparison used when sorting bases for output
template <class K> int vec_cmp_canonical(const ModCtx<K>& ctx, const Vec<K>& a, const Vec<K>& b) {
    std::size_t i = 0;
    for (; i < a.t.size() && i < b.t.size(); ++i) {
        int c = ctx.term_cmp(a.t[i], b.t[i]);
        if (c)
            return c;
    }
    if (a.t.size() != b.t.size())
        return a.t.size() < b.t.size() ? -1 : 1;
    return 0;
}

/* ---- Buchberger ---- */

template <class K> class ModGB {
  public:
    ModGB(ModCtx<K> ctx, std::vector<Vec<K>> gens) : ctx_(std::move(ctx)) { compute(std::move(gens)); }

    const ModCtx<K>& ctx() const { return ctx_; }
    const std::vector<Vec<K>>& basis() const { return g_; }

    // Full normal form: no term of the result is divisible by any lead term.
    Vec<K> normal_form(Vec<K> v) const {
        const auto& F = ctx_.R->field;
        Vec<K> out;
        while (!v.is_zero()) {
            bool reduced = false;
            const VTerm<K>& lt = v.t.front();
            for (auto& gi : g_) {
                const VTerm<K>& glt = gi.lead();
                if (glt.comp == lt.comp && mono_divides(glt.m, lt.m, ctx_.R->n)) {
                    Monomial q = mono_div(lt.m, glt.m, ctx_.R->n);
                    v = vec_sub(ctx_, v, vec_mul_term(ctx_, gi, q, F.div(lt.c, glt.c)));
                    reduced = true;
                    break;
                }
            }
            if (!reduced) {
                out.t.push_back(v.t.front());
                v.t.erase(v.t.begin());
            }
        }
        return out;
    }

    bool contains(const Vec<K>& v) const { return normal_form(v).is_zero(); }

  private:
    ModCtx<K> ctx_;
    std::vector<Vec<K>> g_;

    struct Pair {
        int i, j;
        Monomial lcm;
        bool alive = true;
    };

    void compute(std::vector<Vec<K>> gens) {
        const auto& F = ctx_.R->field;
        const int n = ctx_.R->n;
        g_.clear();
        for (auto& v : gens)
            if (!v.is_zero())
                g_.push_back(vec_monic(ctx_, v));
        std::sort(g_.begin(), g_.end(),
                  [&](const Vec<K>& a, const Vec<K>& b) { return vec_cmp_canonical(ctx_, a, b) < 0; });
        g_.erase(std::unique(g_.begin(), g_.end(),
                             [&](const Vec<K>& a, const Vec<K>& b) { return vec_eq(a, b, F); }),
                 g_.end());

        bool product_criterion = (ctx_.rank == 1);

        std::vector<Pair> pairs;
        auto add_pairs_for = [&](int k) {
            for (int i = 0; i < k; ++i) {
                if (g_[i].lead().comp != g_[k].lead().comp)
                    continue;
                if (product_criterion && mono_coprime(g_[i].lead().m, g_[k].lead().m, n))
                    continue;
                pairs.push_back({i, k, mono_lcm(g_[i].lead().m, g_[k].lead().m, n), true});
            }
        };
        for (int k = 0; k < static_cast<int>(g_.size()); ++k)
            add_pairs_for(k);

        auto pending = [&](int i, int j) {
            for (auto& p : pairs)
                if (p.alive && ((p.i == i && p.j == j) || (p.i == j && p.j == i)))
                    return true;
            return false;
        };

        while (true) {
            // normal selection: smallest lcm degree, ties by order then index
            int best = -1;
            for (int idx = 0; idx < static_cast<int>(pairs.size()); ++idx) {
                if (!pairs[idx].alive)
                    continue;
                if (best < 0 || pairs[idx].lcm.deg < pairs[best].lcm.deg ||
                    (pairs[idx].lcm.deg == pairs[best].lcm.deg &&
                     ctx_.R->cmp(pairs[idx].lcm, pairs[best].lcm) < 0))
                    best = idx;
            }
            if (best < 0)
                break;
            Pair pr = pairs[best];
            pairs[best].alive = false;

            if (pr.lcm.deg > gb_degree_guard())
                throw guard_exceeded(pr.lcm.deg);

            // chain criterion (Buchberger's second criterion)
            {
                bool skip = false;
                for (int k = 0; k < static_cast<int>(g_.size()) && !skip; ++k) {
                    if (k == pr.i || k == pr.j)
                        continue;
                    if (g_[k].lead().comp != g_[pr.i].lead().comp)
                        continue;
                    if (mono_divides(g_[k].lead().m, pr.lcm, n) && !pending(pr.i, k) &&
                        !pending(pr.j, k))
                        skip = true;
                }
                if (skip)
                    continue;
            }

            const Vec<K>&u = g_[pr.i], &v = g_[pr.j];
            Vec<K> s = vec_sub(
                ctx_, vec_mul_term(ctx_, u, mono_div(pr.lcm, u.lead().m, n), F.one()),
                vec_mul_term(ctx_, v, mono_div(pr.lcm, v.lead().m, n), F.one()));
            s = normal_form(std::move(s));
            if (s.is_zero())
                continue;
            if (s.lead().m.deg > gb_degree_guard())
                throw guard_exceeded(s.lead().m.deg);
            g_.push_back(vec_monic(ctx_, s));
            add_pairs_for(static_cast<int>(g_.size()) - 1);
        }

        reduce_basis();
    }

    void reduce_basis() {
        const int n = ctx_.R->n;
        // minimalize: drop elements whose lead term is divisible by another's
        std::vector<bool> keep(g_.size(), true);
        for (std::size_t i = 0; i < g_.size(); ++i)
            for (std::size_t j = 0; j < g_.size(); ++j) {
                if (i == j || !keep[i] || !keep[j])
                    continue;
                if (g_[j].lead().comp == g_[i].lead().comp &&
                    mono_divides(g_[j].lead().m, g_[i].lead().m, n)) {
                    if (mono_divides(g_[i].lead().m, g_[j].lead().m, n) && i < j)
                        continue; // equal lead terms: keep the first
                    keep[i] = false;
                }
            }
        std::vector<Vec<K>> min;
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (keep[i])
                min.push_back(std::move(g_[i]));
        g_ = std::move(min);
        // inter-reduce tails
        for (std::size_t i = 0; i < g_.size(); ++i) {
            std::vector<Vec<K>> others;
            for (std::size_t j = 0; j < g_.size(); ++j)
                if (j != i)
                    others.push_back(g_[j]);
            ModGBView view(ctx_, others);
            g_[i] = vec_monic(ctx_, view.normal_form(g_[i]));
        }
        std::sort(g_.begin(), g_.end(),
                  [&](const Vec<K>& a, const Vec<K>& b) { return vec_cmp_canonical(ctx_, a, b) > 0; });
    }

    // lightweight reducer over a fixed basis (no fixpoint computation)
    class ModGBView {
      public:
        ModGBView(const ModCtx<K>& ctx, const std::vector<Vec<K>>& g) : ctx_(ctx), g_(g) {}
        Vec<K> normal_form(Vec<K> v) const {
            const auto& F = ctx_.R->field;
            Vec<K> out;
            while (!v.is_zero()) {
                bool reduced = false;
                const VTerm<K>& lt = v.t.front();
                for (auto& gi : g_) {
                    const VTerm<K>& glt = gi.lead();
                    if (glt.comp == lt.comp && mono_divides(glt.m, lt.m, ctx_.R->n)) {
                        Monomial q = mono_div(lt.m, glt.m, ctx_.R->n);
                        v = vec_sub(ctx_, v, vec_mul_term(ctx_, gi, q, F.div(lt.c, glt.c)));
                        reduced = true;
                        break;
                    }
                }
                if (!reduced) {
                    out.t.push_back(v.t.front());
                    v.t.erase(v.t.begin());
                }
            }
            return out;
        }

      private:
        const ModCtx<K>& ctx_;
        const std::vector<Vec<K>>& g_;
    };
};

/* ---- derived computations: cofactor division and syzygies ----

   Both use the classic trick of appending unit-vector tails in a trailing
   position block: a Groebner basis of {(g_i, e_i)} in F (+) R^m under the
   block order yields membership certificates over the *original* generators
   and, from the elements with vanishing F-part, generators of Syz(g). */

template <class K> class TracedModule {
  public:
    // columns: elements of R^rank
    TracedModule(RingPtr<K> R, int rank, const std::vector<Vec<K>>& columns)
        : R_(std::move(R)), rank_(rank), m_(static_cast<int>(columns.size())),
          ctx_(make_ctx()), gb_(make_gb(columns)) {}

    int rank() const { return rank_; }
    int ncols() const { return m_; }

    // v = sum cofactor_i * columns_i + remainder
    struct DivResult {
        std::vector<Poly<K>> cofactors;
        Vec<K> remainder;
    };

    DivResult divide(const Vec<K>& v) const {
        Vec<K> w = widen(v);
        Vec<K> nf = gb_.normal_form(w);
        DivResult res;
        res.cofactors.assign(m_, poly_zero(R_));
        for (auto& tm : nf.t) {
            if (tm.comp < rank_)
                res.remainder.t.push_back(tm);
            else {
                int i = tm.comp - rank_;
                res.cofactors[i] =
                    poly_add(res.cofactors[i],
                             poly_term(R_, tm.m, R_->field.neg(tm.c)));
            }
        }
        return res;
    }

    bool contains(const Vec<K>& v) const { return divide(v).remainder.is_zero(); }

    // generators of the syzygy module of the columns, as elements of R^m
    std::vector<Vec<K>> syzygies() const {
        ModCtx<K> out_ctx(R_, m_);
        std::vector<Vec<K>> syz;
        for (auto& g : gb_.basis()) {
            if (g.is_zero() || g.lead().comp < rank_)
                continue; // nonzero F-part
            Vec<K> s;
            for (auto& tm : g.t)
                s.t.push_back({tm.m, tm.comp - rank_, tm.c});
            syz.push_back(vec_normalize(out_ctx, std::move(s.t)));
        }
        std::sort(syz.begin(), syz.end(), [&](const Vec<K>& a, const Vec<K>& b) {
            return vec_cmp_canonical(out_ctx, a, b) > 0;
        });
        return syz;
    }

    // Groebner basis of the column span itself (F-parts of mixed elements)
    std::vector<Vec<K>> span_groebner() const {
        std::vector<Vec<K>> out;
        ModCtx<K> plain(R_, rank_);
        for (auto& g : gb_.basis()) {
            if (g.is_zero() || g.lead().comp >= rank_)
                continue;
            Vec<K> f;
            for (auto& tm : g.t)
                if (tm.comp < rank_)
                    f.t.push_back(tm);
            out.push_back(vec_monic(plain, f));
        }
        return out;
    }

  private:
    RingPtr<K> R_;
    int rank_;
    int m_;
    ModCtx<K> ctx_;
    ModGB<K> gb_;

    ModCtx<K> make_ctx() const {
        std::vector<int> block(rank_ + m_, 0);
        for (int i = 0; i < m_; ++i)
            block[rank_ + i] = 1;
        return ModCtx<K>(R_, rank_ + m_, std::move(block));
    }
    ModGB<K> make_gb(const std::vector<Vec<K>>& columns) const {
        std::vector<Vec<K>> gens;
        for (int i = 0; i < m_; ++i) {
            Vec<K> w = columns[i];
            w.t.push_back({Monomial::one(), rank_ + i, R_->field.one()});
            gens.push_back(vec_normalize(ctx_, std::move(w.t)));
        }
        return ModGB<K>(ctx_, gens);
    }
    Vec<K> widen(const Vec<K>& v) const { return vec_normalize(ctx_, std::vector<VTerm<K>>(v.t)); }
};

// Convenience: syzygies of a list of column vectors in R^rank.
template <class K>
std::vector<Vec<K>> syzygy_generators(const RingPtr<K>& R, int rank,
                                      const std::vector<Vec<K>>& columns) {
    if (columns.empty())
        return {};
    return TracedModule<K>(R, rank, columns).syzygies();
}

} // namespace resint

#endif
