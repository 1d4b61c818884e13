#ifndef RESINT_KOSZUL_HPP
#define RESINT_KOSZUL_HPP

#include "resint/module_ops.hpp"

namespace resint {

/* Koszul complex of a homogeneous sequence f_1..f_r with basis e_S indexed
   by subsets S of {0..r-1} in lex order and differential
   d(e_S) = sum_l (-1)^{pos(l,S)+1} f_l e_{S minus l}.  Cycles, boundaries
   and homologies are cached per spot. */
template <class K> class KoszulComplex {
  public:
    KoszulComplex(RingPtr<K> R, std::vector<Poly<K>> f) : R_(std::move(R)), f_(std::move(f)) {
        if (f_.empty())
            throw std::invalid_argument("KoszulComplex: empty sequence");
        for (auto& p : f_) {
            if (p.ring != R_)
                throw ring_mismatch{};
            if (p.is_zero() || !is_homogeneous(p))
                throw std::invalid_argument("KoszulComplex: generators must be nonzero homogeneous");
            fdeg_.push_back(p.degree());
        }
        r_ = static_cast<int>(f_.size());
    }

    const RingPtr<K>& ring() const { return R_; }
    const std::vector<Poly<K>>& sequence() const { return f_; }
    int length() const { return r_; }
    const std::vector<int>& degrees() const { return fdeg_; }

    FreeModule<K> component(int i) const {
        check_range(i);
        std::vector<int> tw;
        for (auto& S : subsets_lex(r_, i)) {
            int d = 0;
            for (int l : S)
                d += fdeg_[l];
            tw.push_back(d);
        }
        return FreeModule<K>(R_, tw);
    }

    ModuleMap<K> differential(int i) const { // K_i -> K_{i-1}, 1 <= i <= r
        if (i < 1 || i > r_)
            throw std::out_of_range("KoszulComplex: differential index");
        return ModuleMap<K>(component(i), component(i - 1), koszul_matrix(f_, i));
    }

    // generating columns of Z_i = ker(d_i) inside K_i
    const std::vector<Vec<K>>& cycle_gens(int i) const {
        check_range(i);
        auto it = cycles_.find(i);
        if (it != cycles_.end())
            return it->second;
        std::vector<Vec<K>> gens;
        if (i == 0) {
            gens = Subquotient<K>::free_cover(component(0)).gens;
        } else {
            gens = min_gens_module(component(i),
                                   syzygy_generators(R_, component(i - 1).rank(),
                                                     differential(i).columns()));
        }
        return cycles_.emplace(i, std::move(gens)).first->second;
    }

    // generating columns of B_i = im(d_{i+1}) inside K_i
    std::vector<Vec<K>> boundary_gens(int i) const {
        check_range(i);
        if (i == r_)
            return {};
        return differential(i + 1).columns();
    }

    Subquotient<K> cycles(int i) const { return Subquotient<K>(component(i), cycle_gens(i)); }
    Subquotient<K> boundaries(int i) const {
        return Subquotient<K>(component(i), boundary_gens(i));
    }
    Subquotient<K> homology(int i) const {
        check_range(i);
        return Subquotient<K>(component(i), cycle_gens(i), boundary_gens(i));
    }

    /* image of multiplication by b on H_i, presented as Z_i/(B_i :_{Z_i} b)
       with ambient twists raised by deg b (so that degrees agree with the
       submodule bH_i of H_i) */
    Subquotient<K> mult_image(int i, const Poly<K>& b) const {
        check_range(i);
        if (!is_homogeneous(b))
            throw std::invalid_argument("mult_image: b must be homogeneous");
        FreeModule<K> amb = component(i);
        if (!b.is_zero())
            for (auto& t : amb.twists)
                t += b.degree();
        auto colon = module_colon_gens(R_, amb.rank(), cycle_gens(i), boundary_gens(i), b);
        return Subquotient<K>(amb, cycle_gens(i), colon);
    }

    Ideal<K> ann_homology(int i) const { return annihilator_module(homology(i)); }

    // intersection of Ann(H_i) over i in [lo, hi], skipping zero homologies
    Ideal<K> uniform_annihilator(int lo, int hi) const {
        Ideal<K> acc = make_ideal(R_, {poly_one(R_)});
        bool first = true;
        for (int i = lo; i <= hi && i <= r_; ++i) {
            Subquotient<K> H = homology(i);
            if (is_zero_module(H))
                continue;
            Ideal<K> a = annihilator_module(H);
            acc = first ? a : ideal_intersection(acc, a);
            first = false;
        }
        return acc;
    }

    int height_of_ideal() const { // g = height((f)), recomputed from scratch
        return height(make_ideal(R_, f_));
    }

  private:
    RingPtr<K> R_;
    std::vector<Poly<K>> f_;
    std::vector<int> fdeg_;
    int r_ = 0;
    mutable std::map<int, std::vector<Vec<K>>> cycles_;

    void check_range(int i) const {
        if (i < 0 || i > r_)
            throw std::out_of_range("KoszulComplex: index out of range");
    }
};

/* ---- sliding depth conditions (SD_k, SDC_k, SCM) ---- */

struct SDWitness {
    int i;
    int depth;  // kDepthInfinity for the zero module
    int bound;
    bool pass;
};

struct SDReport {
    std::string condition; // "SD_k" | "SDC_k" | "SCM"
    int k = 0;
    int t = 0; // level
    int d = 0, g = 0, r = 0;
    bool verdict = true;
    std::vector<SDWitness> rows;
};

/* depth(H_i(f;R)) >= min{d-g, d-r+i+k} for all i >= r-g-t; level t defaults
   to r-g (the plain SD_k condition). */
template <class K>
SDReport sd_check(const KoszulComplex<K>& Kz, int k, std::optional<int> level = std::nullopt) {
    SDReport rep;
    rep.k = k;
    rep.d = Kz.ring()->n;
    rep.r = Kz.length();
    rep.g = Kz.height_of_ideal();
    rep.t = level ? *level : rep.r - rep.g;
    rep.condition = "SD_" + std::to_string(k);
    for (int i = std::max(0, rep.r - rep.g - rep.t); i <= rep.r; ++i) {
        int bound = std::min(rep.d - rep.g, rep.d - rep.r + i + k);
        int dep = depth_ab(Kz.homology(i));
        bool pass = dep >= bound;
        rep.rows.push_back({i, dep, bound, pass});
        rep.verdict = rep.verdict && pass;
    }
    return rep;
}

/* depth(Z_i(f;R)) >= min{d-r+i+k, d-g+2, d} for all i >= r-g-t */
template <class K>
SDReport sdc_check(const KoszulComplex<K>& Kz, int k, std::optional<int> level = std::nullopt) {
    SDReport rep;
    rep.k = k;
    rep.d = Kz.ring()->n;
    rep.r = Kz.length();
    rep.g = Kz.height_of_ideal();
    rep.t = level ? *level : rep.r - rep.g;
    rep.condition = "SDC_" + std::to_string(k);
    for (int i = std::max(0, rep.r - rep.g - rep.t); i <= rep.r; ++i) {
        int bound = std::min({rep.d - rep.r + i + k, rep.d - rep.g + 2, rep.d});
        int dep = depth_ab(Kz.cycles(i));
        bool pass = dep >= bound;
        rep.rows.push_back({i, dep, bound, pass});
        rep.verdict = rep.verdict && pass;
    }
    return rep;
}

/* SCM: every nonzero Koszul homology is Cohen-Macaulay (equivalent to
   SD_{r-g}) */
template <class K> SDReport scm_check(const KoszulComplex<K>& Kz) {
    SDReport rep;
    rep.condition = "SCM";
    rep.d = Kz.ring()->n;
    rep.r = Kz.length();
    rep.g = Kz.height_of_ideal();
    rep.t = rep.r - rep.g;
    for (int i = 0; i <= rep.r; ++i) {
        Subquotient<K> H = Kz.homology(i);
        if (is_zero_module(H)) {
            rep.rows.push_back({i, kDepthInfinity, 0, true});
            continue;
        }
        int dep = depth_ab(H);
        int dim = dim_module(H);
        bool pass = dep == dim;
        rep.rows.push_back({i, dep, dim, pass});
        rep.verdict = rep.verdict && pass;
    }
    return rep;
}

/* ---- the inductive cycle sequence 0 -> Z_j -> Z'_j -> Gamma_{j-1} -> 0 ----

   Z for the sequence (f_1..f_r), Z' for (f_0, f_1..f_r), and
   Gamma_{j-1} = (B_{j-1} :_{Z_{j-1}} f_0); the projection sends
   theta = e_0 ^ w + v to w. */
template <class K> struct CycleSequence {
    Subquotient<K> Z;      // Z_j(f_rest), in wedge^j R^r
    Subquotient<K> Zp;     // Z_j(f_0, f_rest), in wedge^j R^{r+1}
    Subquotient<K> Gamma;  // (B_{j-1} :_{Z_{j-1}} f_0), in wedge^{j-1} R^r
    std::vector<Vec<K>> incl_images; // Z_j gens embedded into wedge^j R^{r+1}
    std::vector<Vec<K>> proj_cols;   // columns of phi on the big ambient
    bool exact = false;
};

template <class K>
CycleSequence<K> cycle_sequence(const Poly<K>& f0, const std::vector<Poly<K>>& rest, int j) {
    const RingPtr<K>& R = f0.ring;
    int r = static_cast<int>(rest.size());
    if (j < 1 || j > r + 1)
        throw std::out_of_range("cycle_sequence: index out of range");
    std::vector<Poly<K>> all = {f0};
    for (auto& p : rest)
        all.push_back(p);
    KoszulComplex<K> Kz(R, rest), Kzp(R, all);

    CycleSequence<K> seq;
    seq.Z = j <= r ? Kz.cycles(j) : Subquotient<K>(FreeModule<K>(R, {}), {});
    seq.Zp = Kzp.cycles(j);
    {
        FreeModule<K> ambG = Kz.component(j - 1);
        auto colon = module_colon_gens(R, ambG.rank(), Kz.cycle_gens(j - 1),
                                       Kz.boundary_gens(j - 1), f0);
        seq.Gamma = Subquotient<K>(ambG, colon);
    }

    // subset index tables: S in {0..r} for the big complex, T in {1..r} small
    auto big = subsets_lex(r + 1, j);
    auto small_j = subsets_lex(r, j);
    auto small_jm1 = subsets_lex(r, j - 1);
    std::map<std::vector<int>, int> big_index, small_index;
    for (std::size_t i = 0; i < big.size(); ++i)
        big_index[big[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < small_jm1.size(); ++i)
        small_index[small_jm1[i]] = static_cast<int>(i);

    // inclusion wedge^j R^r -> wedge^j R^{r+1}: e_T -> e_{T+1}
    ModCtx<K> ctx_big(R, static_cast<int>(big.size()));
    auto embed = [&](const Vec<K>& v) {
        std::vector<VTerm<K>> ts;
        for (auto& tm : v.t) {
            std::vector<int> T = small_j[tm.comp];
            for (int& x : T)
                ++x;
            ts.push_back({tm.m, big_index[T], tm.c});
        }
        return vec_normalize(ctx_big, std::move(ts));
    };
    for (auto& z : seq.Z.gens)
        seq.incl_images.push_back(embed(z));

    // phi: e_S -> e_{S minus 0, shifted down} when 0 in S (no sign: e_0 is first)
    ModCtx<K> ctx_small(R, static_cast<int>(small_jm1.size()));
    seq.proj_cols.assign(big.size(), Vec<K>{});
    for (std::size_t c = 0; c < big.size(); ++c) {
        if (big[c].empty() || big[c][0] != 0)
            continue;
        std::vector<int> T(big[c].begin() + 1, big[c].end());
        for (int& x : T)
            --x;
        Vec<K> col;
        col.t.push_back({Monomial::one(), small_index[T], R->field.one()});
        seq.proj_cols[c] = col;
    }

    // exactness: phi surjects onto Gamma and ker(phi|Z') = incl(Z)
    bool onto = true;
    {
        std::vector<Vec<K>> images;
        for (auto& z : seq.Zp.gens)
            images.push_back(apply_columns(ctx_small, seq.proj_cols, z));
        for (auto& g : seq.Gamma.gens)
            if (!in_span(R, seq.Gamma.ambient.rank(), images, g))
                onto = false;
        for (auto& im : images)
            if (!in_span(R, seq.Gamma.ambient.rank(), seq.Gamma.gens, im))
                onto = false;
    }
    Subquotient<K> mid = homology_sq(seq.Zp.ambient, seq.Zp.gens, {}, seq.proj_cols,
                                     static_cast<int>(small_jm1.size()), {}, seq.incl_images);
    bool ker_ok = is_zero_module(mid);
    bool inj = true; // the embedding e_T -> e_{T+1} is injective on components
    seq.exact = onto && ker_ok && inj;
    return seq;
}

} // namespace resint

#endif
