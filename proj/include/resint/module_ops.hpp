#ifndef RESINT_MODULE_OPS_HPP
#define RESINT_MODULE_OPS_HPP

#include "resint/freemod.hpp"

#include <set>

namespace resint {

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

/* ---- span membership and minimal generators ---- */

template <class K>
bool in_span(const RingPtr<K>& R, int rank, const std::vector<Vec<K>>& cols, const Vec<K>& v) {
    if (v.is_zero())
        return true;
    if (cols.empty())
        return false;
    return TracedModule<K>(R, rank, cols).contains(v);
}

/* Minimal generators of span(cand) modulo span(base), graded greedy by
   ascending degree (valid by Nakayama for homogeneous input). */
template <class K>
std::vector<Vec<K>> min_gens_module(const FreeModule<K>& F, std::vector<Vec<K>> cand,
                                    const std::vector<Vec<K>>& base = {}) {
    for (auto& v : cand)
        if (!vec_homogeneous(F, v))
            throw std::invalid_argument("min_gens_module: inhomogeneous generator");
    ModCtx<K> ctx(F.ring, F.rank());
    std::stable_sort(cand.begin(), cand.end(), [&](const Vec<K>& a, const Vec<K>& b) {
        auto da = vec_degree(F, a), db = vec_degree(F, b);
        int ia = da ? *da : 0, ib = db ? *db : 0;
        if (ia != ib)
            return ia < ib;
        return vec_cmp_canonical(ctx, a, b) > 0;
    });
    std::vector<Vec<K>> kept = base;
    std::vector<Vec<K>> out;
    for (auto& v : cand) {
        if (v.is_zero())
            continue;
        if (!in_span(F.ring, F.rank(), kept, v)) {
            kept.push_back(v);
            out.push_back(vec_monic(ctx, v));
        }
    }
    return out;
}

/* ---- minimal presentation ---- */

template <class K> struct MinPres {
    FreeModule<K> F0;               // free cover on the minimal generators
    std::vector<Vec<K>> min_gens;   // minimal generators as ambient elements
    std::vector<Vec<K>> rel_cols;   // minimal relations, columns in R^{F0.rank}
    std::vector<int> rel_twists;    // their degrees (twists of F1)
};

template <class K> MinPres<K> minimal_presentation(const Subquotient<K>& M) {
    const RingPtr<K>& R = M.ambient.ring;
    MinPres<K> res;
    res.min_gens = min_gens_module(M.ambient, M.gens, M.rels);
    std::vector<int> tw;
    for (auto& g : res.min_gens) {
        auto d = vec_degree(M.ambient, g);
        if (!d)
            throw std::invalid_argument("minimal_presentation: inhomogeneous generator");
        tw.push_back(*d);
    }
    res.F0 = FreeModule<K>(R, tw);
    if (res.min_gens.empty())
        return res;

    // relations among the minimal generators: gens-block coordinates of
    // Syz([min_gens | rels])
    std::vector<Vec<K>> cols = res.min_gens;
    for (auto& r : M.rels)
        cols.push_back(r);
    auto syz = syzygy_generators(R, M.ambient.rank(), cols);
    int g = static_cast<int>(res.min_gens.size());
    ModCtx<K> ctx0(R, g);
    std::vector<Vec<K>> raw;
    for (auto& s : syz) {
        Vec<K> u;
        for (auto& tm : s.t)
            if (tm.comp < g)
                u.t.push_back(tm);
        u = vec_normalize(ctx0, std::move(u.t));
        if (!u.is_zero())
            raw.push_back(u);
    }
    res.rel_cols = min_gens_module(res.F0, raw);
    for (auto& c : res.rel_cols) {
        auto d = vec_degree(res.F0, c);
        res.rel_twists.push_back(d ? *d : 0);
    }
    return res;
}

template <class K> bool is_zero_module(const Subquotient<K>& M) {
    for (auto& g : M.gens)
        if (!in_span(M.ambient.ring, M.ambient.rank(), M.rels, g))
            return false;
    return true;
}

/* ---- minimal free resolution ---- */

template <class K> struct Resolution {
    FreeModule<K> F0;
    std::vector<ModuleMap<K>> maps; // maps[i]: F_{i+1} -> F_i
    bool minimal = true;

    int pd() const { return static_cast<int>(maps.size()); }
    const FreeModule<K>& component(int i) const {
        if (i == 0)
            return F0;
        return maps[i - 1].source;
    }
    int length() const { return static_cast<int>(maps.size()); }

    // graded Betti numbers as (homological index, degree) -> count
    std::map<std::pair<int, int>, int> betti() const {
        std::map<std::pair<int, int>, int> b;
        for (int d : F0.twists)
            b[{0, d}]++;
        for (int i = 0; i < length(); ++i)
            for (int d : maps[i].source.twists)
                b[{i + 1, d}]++;
        return b;
    }
};

template <class K>
Resolution<K> minimal_free_resolution(const Subquotient<K>& M, int cap = -1) {
    const RingPtr<K>& R = M.ambient.ring;
    if (cap < 0)
        cap = R->n + 1;
    Resolution<K> res;
    MinPres<K> pres = minimal_presentation(M);
    res.F0 = pres.F0;
    if (pres.min_gens.empty())
        return res;
    std::vector<Vec<K>> cur_cols = pres.rel_cols;
    std::vector<int> cur_tw = pres.rel_twists;
    FreeModule<K> cur_target = pres.F0;
    int step = 0;
    while (!cur_cols.empty()) {
        if (step >= cap)
            throw internal_error("minimal_free_resolution: exceeded Hilbert syzygy bound");
        ModuleMap<K> d = map_from_columns(cur_target, cur_cols, cur_tw);
        res.maps.push_back(d);
        FreeModule<K> next_src = res.maps.back().source;
        auto syz = syzygy_generators(R, cur_target.rank(), cur_cols);
        cur_cols = min_gens_module(next_src, syz);
        cur_tw.clear();
        for (auto& c : cur_cols) {
            auto dg = vec_degree(next_src, c);
            cur_tw.push_back(dg ? *dg : 0);
        }
        cur_target = next_src;
        ++step;
    }
    return res;
}

/* ---- Hilbert data ---- */

/* staircase-based Hilbert function of F0/span(rel_cols) */
template <class K> class HilbertCounter {
  public:
    explicit HilbertCounter(const MinPres<K>& pres) : F0_(pres.F0) {
        if (!pres.rel_cols.empty()) {
            ModCtx<K> ctx(F0_.ring, F0_.rank());
            ModGB<K> gb(ctx, pres.rel_cols);
            for (auto& v : gb.basis())
                leads_.push_back({v.lead().m, v.lead().comp});
        }
    }

    long long value(int d) const {
        long long total = 0;
        for (int i = 0; i < F0_.rank(); ++i) {
            int mdeg = d - F0_.twists[i];
            if (mdeg < 0)
                continue;
            long long cnt = 0;
            for_each_monomial(F0_.ring->n, mdeg, [&](const Monomial& m) {
                for (auto& [lm, lc] : leads_)
                    if (lc == i && mono_divides(lm, m, F0_.ring->n))
                        return;
                ++cnt;
            });
            total += cnt;
        }
        return total;
    }

    std::vector<long long> range(int lo, int hi) const {
        std::vector<long long> out;
        for (int d = lo; d <= hi; ++d)
            out.push_back(value(d));
        return out;
    }

    int min_twist() const {
        int t = 0;
        for (std::size_t i = 0; i < F0_.twists.size(); ++i)
            t = i == 0 ? F0_.twists[i] : std::min(t, F0_.twists[i]);
        return t;
    }
    int max_twist() const {
        int t = 0;
        for (std::size_t i = 0; i < F0_.twists.size(); ++i)
            t = i == 0 ? F0_.twists[i] : std::max(t, F0_.twists[i]);
        return t;
    }
    bool empty() const { return F0_.rank() == 0; }

    /* total k-dimension; requires finite length (no gaps can occur: the
       standard monomials are closed under division) */
    long long total_dimension(int hard_cap = 512) const {
        if (empty())
            return 0;
        long long sum = 0;
        int d = min_twist();
        for (;; ++d) {
            long long v = value(d);
            sum += v;
            if (v == 0 && d >= max_twist())
                return sum;
            if (d - min_twist() > hard_cap)
                throw internal_error("total_dimension: module does not look finite-length");
        }
    }

  private:
    FreeModule<K> F0_;
    std::vector<std::pair<Monomial, int>> leads_;
};

template <class K>
std::vector<long long> hilbert_function(const Subquotient<K>& M, int lo, int hi) {
    return HilbertCounter<K>(minimal_presentation(M)).range(lo, hi);
}

// Hilbert series numerator over (1-t)^n, from a minimal free resolution
template <class K> std::map<int, long long> hilbert_numerator(const Resolution<K>& res) {
    std::map<int, long long> num;
    for (auto& [key, cnt] : res.betti()) {
        auto [i, d] = key;
        num[d] += (i % 2 == 0 ? cnt : -cnt);
    }
    for (auto it = num.begin(); it != num.end();)
        it = it->second == 0 ? num.erase(it) : std::next(it);
    return num;
}

/* ---- annihilator, dimension, depth ---- */

template <class K> Ideal<K> annihilator_module(const Subquotient<K>& M) {
    const RingPtr<K>& R = M.ambient.ring;
    MinPres<K> pres = minimal_presentation(M);
    if (pres.min_gens.empty())
        return make_ideal(R, {poly_one(R)});
    bool first = true;
    Ideal<K> acc;
    for (auto& g : pres.min_gens) {
        // (rels : g) = coefficients r with r*g in span(rels)
        std::vector<Vec<K>> cols;
        cols.push_back(g);
        for (auto& r : M.rels)
            cols.push_back(r);
        auto syz = syzygy_generators(R, M.ambient.rank(), cols);
        std::vector<Poly<K>> out;
        for (auto& s : syz) {
            Poly<K> q = poly_from_vec(R, s, 0);
            if (!q.is_zero())
                out.push_back(poly_monic(q));
        }
        Ideal<K> Ai = make_ideal(R, std::move(out));
        acc = first ? Ai : ideal_intersection(acc, Ai);
        first = false;
        if (acc.is_zero_ideal())
            break;
    }
    return acc;
}

template <class K> int dim_module(const Subquotient<K>& M) {
    return krull_dim(annihilator_module(M)); // dim of R/Ann; -1 for the zero module
}

template <class K> int pd_module(const Subquotient<K>& M) {
    return minimal_free_resolution(M).pd();
}

// depth via Auslander-Buchsbaum: n - pd; zero module reports +infinity
template <class K> int depth_ab(const Subquotient<K>& M) {
    if (is_zero_module(M))
        return kDepthInfinity;
    return M.ambient.ring->n - pd_module(M);
}

template <class K> bool is_cm_module(const Subquotient<K>& M) {
    if (is_zero_module(M))
        return true;
    return dim_module(M) == depth_ab(M);
}

template <class K> int regularity(const Resolution<K>& res) {
    int reg = std::numeric_limits<int>::min();
    for (auto& [key, cnt] : res.betti()) {
        (void)cnt;
        reg = std::max(reg, key.second - key.first);
    }
    return reg;
}

template <class K> int regularity(const Subquotient<K>& M) {
    return regularity(minimal_free_resolution(M));
}

// beg(M) = inf{ d : M_d != 0 } = least degree of a minimal generator
template <class K> int beg_module(const Subquotient<K>& M) {
    MinPres<K> pres = minimal_presentation(M);
    if (pres.min_gens.empty())
        throw std::invalid_argument("beg_module: zero module");
    int b = pres.F0.twists[0];
    for (int t : pres.F0.twists)
        b = std::min(b, t);
    return b;
}

/* ---- homology ---- */

// helper: image of v under a map given by the images of the basis vectors
template <class K>
Vec<K> apply_columns(const ModCtx<K>& target_ctx, const std::vector<Vec<K>>& cols,
                     const Vec<K>& v) {
    std::vector<VTerm<K>> acc;
    for (auto& tm : v.t)
        for (auto& ct : cols[tm.comp].t)
            acc.push_back({mono_mul(ct.m, tm.m, target_ctx.R->n), ct.comp,
                           target_ctx.R->field.mul(ct.c, tm.c)});
    return vec_normalize(target_ctx, std::move(acc));
}

// kernel of a free-module map as a subquotient of its source (no relations)
template <class K> Subquotient<K> syzygy_module(const ModuleMap<K>& f) {
    auto syz = syzygy_generators(f.source.ring, f.target.rank(), f.columns());
    // syzygy coordinates live in the source
    return Subquotient<K>(f.source, syz);
}

/* Homology ker(B)/im(A) at the middle of  src --A--> mid --B--> tgt
   of free modules; rejects pairs that do not compose to zero. */
template <class K> Subquotient<K> homology_at(const ModuleMap<K>& A, const ModuleMap<K>& B) {
    if (!map_is_zero(map_compose(B, A)))
        throw std::invalid_argument("homology_at: maps do not compose to zero");
    Subquotient<K> ker = syzygy_module(B);
    return Subquotient<K>(B.source, ker.gens, A.columns());
}

/* Homology of a strand of subquotient modules sitting in ambient free
   modules:        (prev) --in_cols--> [amb; gens, rels] --out--> (next)
   where `in_images` are the images of the previous spot's generators and
   `out_cols[c]` is the image of basis vector c of `amb` in the next ambient;
   `next_rels` are the relations at the next spot (targets are taken modulo
   them).  Returns {g in span(gens) : out(g) in span(next_rels)} / (rels +
   in_images). */
/* Same, but with the outgoing map given by the images of the generators
   rather than by ambient columns. */
template <class K>
Subquotient<K> homology_from_images(const FreeModule<K>& amb, const std::vector<Vec<K>>& gens,
                                    const std::vector<Vec<K>>& rels,
                                    const std::vector<Vec<K>>& gen_images, int next_rank,
                                    const std::vector<Vec<K>>& next_rels,
                                    const std::vector<Vec<K>>& in_images) {
    const RingPtr<K>& R = amb.ring;
    ModCtx<K> ctx_amb(R, amb.rank());
    std::vector<Vec<K>> ker_gens;
    if (gen_images.empty()) {
        ker_gens = gens; // no outgoing map: everything is a cycle
    } else {
        std::vector<Vec<K>> cols = gen_images;
        int ng = static_cast<int>(gens.size());
        for (auto& r : next_rels)
            cols.push_back(r);
        auto syz = syzygy_generators(R, next_rank, cols);
        for (auto& s : syz) {
            // coefficient vector on gens
            Vec<K> combo;
            for (auto& tm : s.t) {
                if (tm.comp >= ng)
                    continue;
                for (auto& gt : gens[tm.comp].t)
                    combo.t.push_back({mono_mul(gt.m, tm.m, R->n), gt.comp,
                                       R->field.mul(gt.c, tm.c)});
            }
            combo = vec_normalize(ctx_amb, std::move(combo.t));
            if (!combo.is_zero())
                ker_gens.push_back(combo);
        }
    }
    std::vector<Vec<K>> hrels = rels;
    for (auto& im : in_images)
        hrels.push_back(im);
    return Subquotient<K>(amb, std::move(ker_gens), std::move(hrels));
}

template <class K>
Subquotient<K> homology_sq(const FreeModule<K>& amb, const std::vector<Vec<K>>& gens,
                           const std::vector<Vec<K>>& rels, const std::vector<Vec<K>>& out_cols,
                           int next_rank, const std::vector<Vec<K>>& next_rels,
                           const std::vector<Vec<K>>& in_images) {
    std::vector<Vec<K>> gen_images;
    if (!out_cols.empty()) {
        ModCtx<K> ctx_next(amb.ring, next_rank);
        for (auto& g : gens)
            gen_images.push_back(apply_columns(ctx_next, out_cols, g));
    }
    return homology_from_images(amb, gens, rels, gen_images, next_rank, next_rels, in_images);
}

/* ---- Ext modules and the canonical module ---- */

/* Ext^i_R(M, R(-e)): dualize a minimal free resolution into R(-e) and take
   homology at spot i.  The dual of F = (+)R(-a_j) has twists {e - a_j}. */
template <class K> Subquotient<K> ext_module(const Subquotient<K>& M, int i, int e = 0) {
    const RingPtr<K>& R = M.ambient.ring;
    Resolution<K> res = minimal_free_resolution(M);
    int l = res.length();
    auto dual_free = [&](const FreeModule<K>& F) {
        std::vector<int> tw;
        for (int a : F.twists)
            tw.push_back(e - a);
        return FreeModule<K>(R, tw);
    };
    auto dual_map = [&](const ModuleMap<K>& d) { // Hom(target,R(-e)) -> Hom(source,R(-e))
        std::vector<std::vector<Poly<K>>> mat(
            d.source.rank(), std::vector<Poly<K>>(d.target.rank(), poly_zero(R)));
        for (int a = 0; a < d.source.rank(); ++a)
            for (int b = 0; b < d.target.rank(); ++b)
                mat[a][b] = d.mat[b][a];
        return ModuleMap<K>(dual_free(d.target), dual_free(d.source), std::move(mat));
    };
    if (i < 0)
        throw std::invalid_argument("ext_module: negative index");
    if (i > l)
        return Subquotient<K>(dual_free(res.F0), {}); // zero module
    FreeModule<K> amb = dual_free(res.component(i));
    std::vector<Vec<K>> ker_gens, im_cols;
    if (i < l) {
        ModuleMap<K> dB = dual_map(res.maps[i]); // F_i^* -> F_{i+1}^*
        ker_gens = syzygy_module(dB).gens;
    } else {
        ker_gens = Subquotient<K>::free_cover(amb).gens;
    }
    if (i > 0) {
        ModuleMap<K> dA = dual_map(res.maps[i - 1]); // F_{i-1}^* -> F_i^*
        im_cols = dA.columns();
    }
    return Subquotient<K>(amb, std::move(ker_gens), std::move(im_cols));
}

// canonical module of R/J for a polynomial ring: Ext^c(R/J, R(-n)), c = height(J)
template <class K> Subquotient<K> canonical_module(const Ideal<K>& J, int codim = -1) {
    const RingPtr<K>& R = J.ring();
    if (codim < 0)
        codim = height(J);
    return ext_module(Subquotient<K>::cyclic(J), codim, R->n);
}

/* ---- Koszul matrices (shared with the koszul module) ---- */

inline std::vector<std::vector<int>> subsets_lex(int r, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > r)
        return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    for (;;) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == r - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    if (k == 0)
        out = {{}};
    return out;
}

/* differential K_k -> K_{k-1} of the Koszul complex on f, with basis e_S (S
   in lex order) and d(e_S) = sum_l (-1)^{pos(l,S)+1} f_l e_{S\l} */
template <class K>
std::vector<std::vector<Poly<K>>> koszul_matrix(const std::vector<Poly<K>>& f, int k) {
    int r = static_cast<int>(f.size());
    const RingPtr<K>& R = f.front().ring;
    auto rows = subsets_lex(r, k - 1), cols = subsets_lex(r, k);
    std::map<std::vector<int>, int> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i)
        row_index[rows[i]] = static_cast<int>(i);
    std::vector<std::vector<Poly<K>>> mat(rows.size(),
                                          std::vector<Poly<K>>(cols.size(), poly_zero(R)));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& S = cols[j];
        for (int pos = 0; pos < k; ++pos) {
            std::vector<int> T = S;
            int l = T[pos];
            T.erase(T.begin() + pos);
            int sign = (pos % 2 == 0) ? 1 : -1; // (-1)^{pos+1} with 1-based pos
            Poly<K> entry = sign > 0 ? f[l] : poly_neg(f[l]);
            mat[row_index[T]][j] = poly_add(mat[row_index[T]][j], entry);
        }
    }
    return mat;
}

/* ---- Cohen-Macaulay type ----

   r(M) = dim_k Ext^depth(M)(k, M), computed from the Koszul complex on the
   variables with coefficients in M (matching the dual-Koszul proof device):
   Ext^i(k, M) = H^i(Hom(K_bullet(x_1..x_n), M)). */
template <class K> long long cm_type(const Subquotient<K>& M) {
    const RingPtr<K>& R = M.ambient.ring;
    if (is_zero_module(M))
        return 0;
    int dep = depth_ab(M);
    int n = R->n;
    std::vector<Poly<K>> xs;
    for (int v = 0; v < n; ++v)
        xs.push_back(poly_var(R, v));

    // C^i = M^{binom(n,i)} with component twists shifted by -i
    auto hom_ambient = [&](int i) {
        int copies = static_cast<int>(subsets_lex(n, i).size());
        std::vector<int> tw;
        for (int c = 0; c < copies; ++c)
            for (int a : M.ambient.twists)
                tw.push_back(a - i);
        return FreeModule<K>(R, tw);
    };
    auto block_vecs = [&](int copies, const std::vector<Vec<K>>& base) {
        std::vector<Vec<K>> out;
        int rk = M.ambient.rank();
        for (int c = 0; c < copies; ++c)
            for (auto& b : base) {
                Vec<K> v = b;
                for (auto& tm : v.t)
                    tm.comp += c * rk;
                out.push_back(v);
            }
        return out;
    };
    // transpose Koszul matrix as columns: C^i -> C^{i+1}
    auto out_cols = [&](int i) {
        auto D = koszul_matrix(xs, i + 1); // K_{i+1} -> K_i
        int rk = M.ambient.rank();
        int src_copies = static_cast<int>(subsets_lex(n, i).size());
        int tgt_copies = static_cast<int>(subsets_lex(n, i + 1).size());
        ModCtx<K> ctx(R, tgt_copies * rk);
        std::vector<Vec<K>> cols(src_copies * rk);
        for (int s = 0; s < src_copies; ++s)
            for (int a = 0; a < rk; ++a) {
                std::vector<VTerm<K>> ts;
                for (int t = 0; t < tgt_copies; ++t) {
                    const Poly<K>& entry = D[s][t]; // transpose of K_{i+1} -> K_i
                    for (auto& tm : entry.t)
                        ts.push_back({tm.m, t * rk + a, tm.c});
                }
                cols[s * rk + a] = vec_normalize(ctx, std::move(ts));
            }
        return cols;
    };

    int i = dep;
    int copies_i = static_cast<int>(subsets_lex(n, i).size());
    FreeModule<K> amb = hom_ambient(i);
    std::vector<Vec<K>> gens = block_vecs(copies_i, M.gens);
    std::vector<Vec<K>> rels = block_vecs(copies_i, M.rels);
    std::vector<Vec<K>> out = i < n ? out_cols(i) : std::vector<Vec<K>>{};
    int next_copies = i < n ? static_cast<int>(subsets_lex(n, i + 1).size()) : 0;
    std::vector<Vec<K>> next_rels =
        i < n ? block_vecs(next_copies, M.rels) : std::vector<Vec<K>>{};
    std::vector<Vec<K>> in_images;
    if (i > 0) {
        auto into = out_cols(i - 1); // C^{i-1} -> C^i
        int prev_copies = static_cast<int>(subsets_lex(n, i - 1).size());
        ModCtx<K> ctx_i(R, amb.rank());
        for (auto& g : block_vecs(prev_copies, M.gens))
            in_images.push_back(apply_columns(ctx_i, into, g));
    }
    Subquotient<K> H = homology_sq(amb, gens, rels, out, next_copies * M.ambient.rank(),
                                   next_rels, in_images);
    return HilbertCounter<K>(minimal_presentation(H)).total_dimension();
}

/* ---- Fitting ideals, local number of generators ---- */

template <class K> Poly<K> matrix_det(const std::vector<std::vector<Poly<K>>>& m,
                                      const RingPtr<K>& R) {
    int k = static_cast<int>(m.size());
    if (k == 0)
        return poly_one(R);
    if (k == 1)
        return m[0][0];
    Poly<K> det = poly_zero(R);
    // Laplace along the first row
    for (int j = 0; j < k; ++j) {
        if (m[0][j].is_zero())
            continue;
        std::vector<std::vector<Poly<K>>> minor;
        for (int i = 1; i < k; ++i) {
            std::vector<Poly<K>> row;
            for (int jj = 0; jj < k; ++jj)
                if (jj != j)
                    row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        Poly<K> term = poly_mul(m[0][j], matrix_det(minor, R));
        det = (j % 2 == 0) ? poly_add(det, term) : poly_sub(det, term);
    }
    return det;
}

/* Fitt_j(M) for M presented by a rows x cols matrix P: the ideal of
   (rows-j)-minors; R for j >= rows, (0) when the minor size exceeds P. */
template <class K>
Ideal<K> fitting_ideal(const std::vector<std::vector<Poly<K>>>& P, const RingPtr<K>& R, int j) {
    int rows = static_cast<int>(P.size());
    int cols = rows ? static_cast<int>(P[0].size()) : 0;
    int k = rows - j;
    if (k <= 0)
        return make_ideal(R, {poly_one(R)});
    if (k > rows || k > cols)
        return make_ideal(R, {});
    std::vector<Poly<K>> minors;
    for (auto& rsel : subsets_lex(rows, k))
        for (auto& csel : subsets_lex(cols, k)) {
            std::vector<std::vector<Poly<K>>> sub(k, std::vector<Poly<K>>(k, poly_zero(R)));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    sub[a][b] = P[rsel[a]][csel[b]];
            Poly<K> d = matrix_det(sub, R);
            if (!d.is_zero())
                minors.push_back(poly_monic(d));
        }
    return make_ideal(R, std::move(minors));
}

template <class K> Ideal<K> fitting_ideal(const MinPres<K>& pres, int j) {
    const RingPtr<K>& R = pres.F0.ring;
    std::vector<std::vector<Poly<K>>> P(pres.F0.rank(),
                                        std::vector<Poly<K>>(pres.rel_cols.size(), poly_zero(R)));
    for (std::size_t c = 0; c < pres.rel_cols.size(); ++c)
        for (int i = 0; i < pres.F0.rank(); ++i)
            P[i][c] = poly_from_vec(R, pres.rel_cols[c], i);
    return fitting_ideal(P, R, j);
}

// least m with Fitt_m(M) not contained in p
template <class K> int local_mu(const MinPres<K>& pres, const Ideal<K>& p) {
    for (int m = 0; m <= pres.F0.rank(); ++m) {
        Ideal<K> f = fitting_ideal(pres, m);
        bool inside = true;
        for (auto& g : f.gens())
            if (!ideal_contains(p, g)) {
                inside = false;
                break;
            }
        if (is_unit_ideal(f))
            inside = false;
        if (!inside)
            return m;
    }
    return pres.F0.rank() + 1; // unreachable for a proper prime p
}

/* ---- module colon (B :_Z f) ---- */

// generators of {z in span(Z) : f*z in span(B)}
template <class K>
std::vector<Vec<K>> module_colon_gens(const RingPtr<K>& R, int rank,
                                      const std::vector<Vec<K>>& Zcols,
                                      const std::vector<Vec<K>>& Bcols, const Poly<K>& f) {
    ModCtx<K> ctx(R, rank);
    if (f.is_zero())
        return Zcols;
    std::vector<Vec<K>> cols;
    for (auto& z : Zcols)
        cols.push_back(vec_mul_poly(ctx, z, f));
    int nz = static_cast<int>(Zcols.size());
    for (auto& b : Bcols)
        cols.push_back(b);
    auto syz = syzygy_generators(R, rank, cols);
    std::vector<Vec<K>> out;
    for (auto& s : syz) {
        Vec<K> combo;
        for (auto& tm : s.t) {
            if (tm.comp >= nz)
                continue;
            for (auto& zt : Zcols[tm.comp].t)
                combo.t.push_back(
                    {mono_mul(zt.m, tm.m, R->n), zt.comp, R->field.mul(zt.c, tm.c)});
        }
        combo = vec_normalize(ctx, std::move(combo.t));
        if (!combo.is_zero())
            out.push_back(combo);
    }
    return out;
}

/* ---- unmixedness via the Ext-codimension criterion ---- */

/* an associated prime of height i exists iff dim Ext^i(R/J, R) = n - i */
template <class K>
std::pair<bool, std::set<int>> unmixedness_test(const Ideal<K>& J) {
    const RingPtr<K>& R = J.ring();
    int n = R->n;
    std::set<int> profile;
    Subquotient<K> M = Subquotient<K>::cyclic(J);
    int lo = height(J);
    if (lo > n)
        throw std::invalid_argument("unmixedness_test: unit ideal");
    for (int i = lo; i <= n; ++i) {
        Subquotient<K> E = ext_module(M, i);
        if (is_zero_module(E))
            continue;
        if (dim_module(E) == n - i)
            profile.insert(i);
    }
    bool unmixed = profile.size() == 1 && *profile.begin() == height(J);
    return {unmixed, profile};
}

/* ---- invariant report ---- */

template <class K> struct InvariantReport {
    bool zero = false;
    int dim = -1;
    int depth = kDepthInfinity;
    int pd = 0;
    int reg = 0;
    long long type = 0;
    int beg = 0;
    bool is_cm = true;
    std::map<int, long long> hilbert_numerator;
    std::vector<long long> hilbert_values; // degrees hf_lo..hf_hi
    int hf_lo = 0, hf_hi = 0;
};

template <class K>
InvariantReport<K> invariant_report(const Subquotient<K>& M, int hf_lo = 0, int hf_hi = 12,
                                    bool with_type = true) {
    InvariantReport<K> rep;
    rep.hf_lo = hf_lo;
    rep.hf_hi = hf_hi;
    if (is_zero_module(M)) {
        rep.zero = true;
        rep.hilbert_values.assign(hf_hi - hf_lo + 1, 0);
        return rep;
    }
    Resolution<K> res = minimal_free_resolution(M);
    rep.pd = res.pd();
    rep.depth = M.ambient.ring->n - rep.pd;
    rep.dim = dim_module(M);
    rep.is_cm = rep.dim == rep.depth;
    rep.reg = regularity(res);
    rep.beg = beg_module(M);
    rep.hilbert_numerator = hilbert_numerator(res);
    rep.hilbert_values = hilbert_function(M, hf_lo, hf_hi);
    if (with_type)
        rep.type = cm_type(M);
    if (rep.depth + rep.pd != M.ambient.ring->n)
        throw internal_error("Auslander-Buchsbaum identity violated");
    return rep;
}

} // namespace resint

#endif
