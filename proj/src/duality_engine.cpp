#include "duality_engine.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

namespace drw {

int64_t pair(const Form& a, const Form& b) {
    if (a.q() + b.q() != 1) fail(ErrorKind::Degree, "pairing needs degrees adding up to 1");
    if (a.p() != b.p() || a.n() != b.n()) fail(ErrorKind::Context, "pairing of forms from different contexts");
    return residue(nf_mul(a, b));
}

namespace {

using WKey = std::pair<int64_t, int>;

WKey wkey(const Key& k) { return {k.j, k.s}; }

WeightQ min_weight(int p, const Form& f) {
    WeightQ best{0, 0};
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        (void)c;
        WeightQ w = key_weight(k);
        if (first || compare_weight(p, w, best) < 0) best = w;
        first = false;
    }
    return best;
}

bool key_regular(const Key& k, int q) {
    if (k.s > 0) return k.j > 0;
    return q == 0 ? k.j >= 0 : k.j >= 1;
}

std::vector<Form> forms_of(const WindowModule& m) {
    std::vector<Form> out;
    for (const Vec& v : m.generators()) out.push_back(v[0]);
    return out;
}

// opposite generators sorted by their lowest weight
struct SortedGens {
    int p;
    std::vector<Form> gens;
    std::vector<WeightQ> lows;
    SortedGens(int p_, std::vector<Form> g) : p(p_) {
        std::vector<std::pair<WeightQ, Form>> tmp;
        for (auto& f : g)
            if (!f.is_zero()) tmp.emplace_back(min_weight(p, f), std::move(f));
        std::sort(tmp.begin(), tmp.end(),
                  [this](const auto& a, const auto& b) { return compare_weight(p, a.first, b.first) < 0; });
        for (auto& [w, f] : tmp) {
            lows.push_back(w);
            gens.push_back(std::move(f));
        }
    }
    // calls fn(g) for every generator whose lowest weight is at most -w
    template <class Fn>
    void upto_neg(const WeightQ& w, Fn fn) const {
        const WeightQ neg{-w.num, w.e};
        for (size_t i = 0; i < gens.size(); ++i) {
            if (compare_weight(p, lows[i], neg) > 0) break;
            fn(gens[i]);
        }
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

WindowModule annihilator_space(const PrimeContext& ctx, const AnnihilatorSpec& spec) {
    const int p = ctx.p, n = ctx.n, q = spec.q;
    if (q < 0 || q > 1) fail(ErrorKind::Degree, "annihilator degree must be 0 or 1");
    if (spec.r < 0) fail(ErrorKind::Usage, "annihilator level must be nonnegative");
    const WindowModule opp = spec.side == AnnihilatorSide::PoleOfZero ? zero_space(p, n, 1 - q, spec.r, spec.window)
                                                                       : pole_space(p, n, 1 - q, spec.r, spec.window);
    const SortedGens og(p, forms_of(opp));
    auto amb = Ambient::single(p, n, q, spec.window);
    const int dim = amb->dim();

    // condition columns: (generator index, irregular key of the product)
    std::map<std::pair<size_t, Key>, int> cond_id;
    std::vector<SparseRow> conds(dim);
    for (int c = 0; c < dim; ++c) {
        const Key& k = amb->col_key(c);
        const Form x = single(p, n, q, k);
        std::map<int, int64_t> row;
        size_t gi = 0;
        og.upto_neg(key_weight(k), [&](const Form& g) {
            const Form prod = nf_mul(x, g);
            for (const auto& [t, v] : prod.terms()) {
                if (key_regular(t, 1)) continue;
                auto [it, fresh] = cond_id.try_emplace({gi, t}, static_cast<int>(cond_id.size()));
                (void)fresh;
                row[it->second] = mod(row[it->second] + v * ipow(p, t.s), ipow(p, n));
            }
            ++gi;
        });
        for (const auto& [col, v] : row)
            if (v) conds[c].emplace_back(col, v);
    }
    const int C = static_cast<int>(cond_id.size());
    HowellForm big(p, n);
    for (int c = 0; c < dim; ++c) {
        SparseRow r = conds[c];
        r.emplace_back(C + c, ipow(p, n - amb->col_exp(c)));
        big.insert(std::move(r));
    }
    WindowModule out(amb);
    for (const auto& [piv, row] : big.rows()) {
        if (piv < C) continue;
        out.add(amb->unembed(row, n, C), Clip::Error);
    }
    return out;
}

PairingReport residue_pairing(const WindowModule& L, const WindowModule& Lsub, const WindowModule& R,
                              const WindowModule& Rsub, int N) {
    PairingReport rep;
    const int p = L.ambient()->p();
    const int64_t P = ipow(p, N);
    const std::vector<Form> lg = forms_of(L), rg = forms_of(R);

    std::map<WKey, std::vector<int>> by_weight;
    for (size_t j = 0; j < rg.size(); ++j)
        for (const auto& [k, c] : rg[j].terms()) {
            (void)c;
            by_weight[wkey(k)].push_back(static_cast<int>(j));
        }
    auto partners = [&](const Form& a) {
        std::vector<int> js;
        for (const auto& [k, c] : a.terms()) {
            (void)c;
            // partner weight -j/p^s has the same exponent s
            auto it = by_weight.find({-k.j, k.s});
            if (it != by_weight.end()) js.insert(js.end(), it->second.begin(), it->second.end());
        }
        std::sort(js.begin(), js.end());
        js.erase(std::unique(js.begin(), js.end()), js.end());
        return js;
    };

    const int m = static_cast<int>(lg.size()), k = static_cast<int>(rg.size());
    rep.gram = DenseMatrix(m, k);
    UnionFind uf(m + k);
    for (int i = 0; i < m; ++i)
        for (int j : partners(lg[i])) {
            int64_t v = mod(pair(lg[i], rg[j]), P);
            rep.gram.at(i, j) = v;
            if (v) uf.unite(i, m + j);
        }

    // well-definedness on the submodules
    for (const Form& a : forms_of(Lsub))
        for (int j : partners(a))
            if (mod(pair(a, rg[j]), P) != 0) {
                rep.well_defined = false;
                rep.witness = "pairing nonzero on " + to_string(a) + " x " + to_string(rg[j]);
            }
    {
        std::map<WKey, std::vector<Form>> lw;
        for (const Form& a : lg)
            for (const auto& [kk, c] : a.terms()) {
                (void)c;
                lw[{-kk.j, kk.s}].push_back(a);
            }
        for (const Form& b : forms_of(Rsub))
            for (const auto& [kk, c] : b.terms()) {
                (void)c;
                auto it = lw.find(wkey(kk));
                if (it == lw.end()) continue;
                for (const Form& a : it->second)
                    if (mod(pair(a, b), P) != 0) {
                        rep.well_defined = false;
                        rep.witness = "pairing nonzero on " + to_string(a) + " x " + to_string(b);
                    }
            }
    }

    std::map<int, std::pair<std::vector<int>, std::vector<int>>> comps;
    for (int i = 0; i < m; ++i) comps[uf.find(i)].first.push_back(i);
    for (int j = 0; j < k; ++j) comps[uf.find(m + j)].second.push_back(j);
    for (const auto& [root, rc] : comps) {
        (void)root;
        const auto& [rows, cols] = rc;
        if (rows.empty() || cols.empty()) continue;
        DenseMatrix sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < cols.size(); ++b) sub.at(a, b) = rep.gram.at(rows[a], cols[b]);
        for (int64_t d : snf(sub, p, N).divisors) {
            rep.divisors.push_back(d);
            rep.rank_length += N - vp(d, p);
        }
    }
    std::sort(rep.divisors.begin(), rep.divisors.end());
    rep.left_length = L.quotient_length(Lsub);
    rep.right_length = R.quotient_length(Rsub);
    rep.left_kernel_length = rep.left_length - rep.rank_length;
    rep.right_kernel_length = rep.right_length - rep.rank_length;
    rep.perfect = rep.well_defined && rep.left_kernel_length == 0 && rep.right_kernel_length == 0 &&
                  rep.left_length == rep.right_length;
    if (!rep.perfect && rep.witness.empty())
        rep.witness = "kernel lengths " + std::to_string(rep.left_kernel_length) + "/" +
                      std::to_string(rep.right_kernel_length);
    return rep;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig config_for(int p, int n, int q, int64_t r, const Window& w) {
    RunConfig c;
    c.p = p;
    c.n = n;
    c.q = q;
    c.r = r;
    c.window_min = w.lo;
    c.window_max = w.hi;
    return c;
}

std::string tag(int p, int n, int q, int64_t r) {
    return " [p=" + std::to_string(p) + " n=" + std::to_string(n) + " q=" + std::to_string(q) +
           " r=" + std::to_string(r) + "]";
}

// first product of generators that is not regular
std::string irregular_product(int p, const WindowModule& A, const WindowModule& B) {
    const SortedGens bg(p, forms_of(B));
    for (const Form& a : forms_of(A)) {
        std::string bad;
        bg.upto_neg(min_weight(p, a), [&](const Form& b) {
            if (!bad.empty()) return;
            if (!is_regular(nf_mul(a, b))) bad = to_string(a) + " * " + to_string(b);
        });
        if (!bad.empty()) return bad;
    }
    return {};
}

void add_pairing(Report& rep, const std::string& name, const std::string& ref, const PairingReport& pr) {
    rep.add(name, ref, pr.perfect,
            {{"left", pr.left_length},
             {"right", pr.right_length},
             {"rank", pr.rank_length},
             {"left_kernel", pr.left_kernel_length},
             {"right_kernel", pr.right_kernel_length}},
            pr.perfect ? "" : pr.witness);
}

}  // namespace

LocalDualityResult verify_local_duality(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    const auto t0 = std::chrono::steady_clock::now();
    const int p = ctx.p, n = ctx.n;
    LocalDualityResult res;
    Report& rep = res.report;
    rep.config = config_for(p, n, q, r, w);
    rep.suite = "duality";
    const std::string t = tag(p, n, q, r);

    const WindowModule pole = pole_space(p, n, q, r, w);
    const WindowModule reg = regular_space(p, n, q, w);
    const WindowModule reg_o = regular_space(p, n, 1 - q, w);
    const WindowModule zero_o = zero_space(p, n, 1 - q, r, w);

    const std::string bad = irregular_product(p, pole, zero_o);
    rep.add("pole x zero products regular" + t, "product of poles and zeros lands in regular forms", bad.empty(), {},
            bad);

    const WindowModule ann_pole = annihilator_space(ctx, {AnnihilatorSide::PoleOfZero, r, q, w});
    const bool eq1 = ann_pole.equals(pole);
    rep.add("pole = annihilator of zeros" + t, "pole space is the dual of the zero space", eq1,
            {{"pole", pole.length()}, {"annihilator", ann_pole.length()}}, eq1 ? "" : "modules differ");
    const WindowModule ann_zero = annihilator_space(ctx, {AnnihilatorSide::ZeroOfPole, r, 1 - q, w});
    const bool eq2 = ann_zero.equals(zero_o);
    rep.add("zero = annihilator of poles" + t, "zero space is the dual of the pole space", eq2,
            {{"zero", zero_o.length()}, {"annihilator", ann_zero.length()}}, eq2 ? "" : "modules differ");

    res.pairing = residue_pairing(pole, reg, reg_o, zero_o, n);
    add_pairing(rep, "graded residue pairing perfect" + t, "residue pairing of the graded quotients", res.pairing);
    if (q == 1) {
        const bool ok = res.pairing.left_length == n * r && res.pairing.right_length == n * r;
        rep.add("graded lengths equal n*r" + t, "length of the graded pieces", ok,
                {{"left", res.pairing.left_length}, {"right", res.pairing.right_length}, {"n*r", n * r}});
    }
    rep.elapsed = seconds_since(t0);
    return res;
}

CartierDualityResult verify_cartier_duality(int p, int n, int q, int64_t r, const Window& w) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n < 0) fail(ErrorKind::Usage, "n must be nonnegative");
    CartierDualityResult res;
    Report& rep = res.report;
    rep.config = config_for(p, n, q, r, w);
    rep.suite = "cartier";
    const std::string t = tag(p, n, q, r);
    auto trivial = [&](int qq, const Window& ww) {
        WindowModule z = WindowModule::zero(Ambient::single(p, 1, qq, ww));
        return residue_pairing(z, z, z, z, 1);
    };
    if (n == 0) {
        res.omega_b = residue_pairing(regular_space(p, 1, q, w), zero_space(p, 1, q, r, w),
                                      pole_space(p, 1, 1 - q, r, w), regular_space(p, 1, 1 - q, w), 1);
        res.omega_z = trivial(q, w);
    } else {
        const PrimeContext ctx(p, n);
        const Window wn = w.scaled_up(p, n);
        const OmegaBZ obz = omega_bz_zero(ctx, q, r, w);
        const BZPair pole = bn_zn_pole(ctx, 1 - q, r, w);
        const BZPair reg = bn_zn_pole(ctx, 1 - q, 0, w);
        res.omega_b = residue_pairing(regular_space(p, 1, q, wn), obz.A0, pole.Z, reg.Z, 1);
        if (q == 0) {
            const OmegaBZ obz1 = omega_bz_zero(ctx, 1, r, w);
            res.omega_z = residue_pairing(regular_space(p, 1, 0, wn), obz1.A1, pole.B, reg.B, 1);
        } else {
            res.omega_z = trivial(q, wn);
        }
    }
    add_pairing(rep, "(Omega/B) x Z_n perfect" + t, "Cartier pairing of Omega/B with Z_n", res.omega_b);
    add_pairing(rep, "(Omega/Z) x B_n perfect" + t, "Cartier pairing of Omega/Z with B_n", res.omega_z);
    rep.elapsed = seconds_since(t0);
    return res;
}

namespace {

LinearMap on1(std::function<Form(const Form&)> f) {
    return [f](const Vec& v) { return Vec{f(v[0])}; };
}

}  // namespace

LogHomology log_complex_homology(const PrimeContext& ctx, LogSign sign, int q, int64_t r, const Window& w) {
    const int p = ctx.p, n = ctx.n;
    LogHomology h;
    auto amb = Ambient::single(p, n, q, w);
    if (sign == LogSign::Pole) {
        const WindowModule target = pole_space(p, n, q, r, w);
        WindowModule dom = target;
        if (q == 0)
            dom = kernel(target, Ambient::single(p, 1, 1, w.scaled_up(p, n - 1)),
                         on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); }));
        const LinearMap phi = on1([](const Form& x) { return nf_sub(x, cartier(x)); });
        h.kernel_length = kernel(dom, amb, phi).length();
        const WindowModule im = image(dom, amb, phi);
        h.image_in_target = im.subset_of(target);
        const WindowModule cut = im.intersect(target);
        h.cokernel_length = target.length() - cut.length();
        const WindowModule fil =
            window_space_unchecked(FiltrationId{FilKind::Fil, r, q, ctx}, w);
        h.fil_image_length = cut.sum(fil.intersect(target)).length() - cut.length();
    } else {
        const WindowModule target = zero_space(p, n, q, r, w);
        const WindowModule dom = zero_space(p, n, q, r, w.scaled_down(p, 1));
        WindowModule sub(amb);
        if (q == 1) {
            const WindowModule reg0 = regular_space(p, 1, 0, w.scaled_up(p, n - 1));
            sub = image(reg0, amb, on1([n](const Form& x) { return nf_d(nf_Vs(x, n - 1)); })).intersect(target);
        }
        const LinearMap phi = on1([](const Form& x) { return nf_sub(inv_cartier(x), x); });
        // domain generators embedded in the larger window
        WindowModule dom_big(amb);
        for (const Vec& g : dom.generators()) dom_big.add(g, Clip::Error);
        h.kernel_length = preimage(dom_big, sub, phi).length();
        const WindowModule im = image(dom_big, amb, phi).sum(sub);
        h.image_in_target = im.subset_of(target);
        h.cokernel_length = target.length() - im.intersect(target).length();
    }
    return h;
}

Report verify_kernel_one_minus_c(const PrimeContext& ctx, const Window& w, int64_t guard) {
    const auto t0 = std::chrono::steady_clock::now();
    const int p = ctx.p, n = ctx.n;
    Report rep;
    rep.config = config_for(p, n, 0, 0, w);
    rep.suite = "kerc";
    const std::string t = tag(p, n, 0, 0);
    auto amb = Ambient::single(p, n, 0, w);
    const WindowModule dom = kernel(regular_space(p, n, 0, w), Ambient::single(p, 1, 1, w.scaled_up(p, n - 1)),
                                    on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); }));
    const WindowModule ker = kernel(dom, amb, on1([](const Form& x) { return nf_sub(x, cartier(x)); }));
    const WindowModule consts = WindowModule::span(amb, {vec1(single(p, n, 0, {0, 0}))});
    rep.add("Ker(1-C) = constants" + t, "fixed points of the Cartier operator", ker.equals(consts),
            {{"kernel", ker.length()}, {"n", n}});
    const Window wide{w.lo - guard, w.hi + guard, w.e};
    const LogHomology a = log_complex_homology(ctx, LogSign::Pole, 0, 0, w);
    const LogHomology b = log_complex_homology(ctx, LogSign::Pole, 0, 0, wide);
    rep.add("Ker(1-C) length n, window stable" + t, "fixed points of the Cartier operator",
            a.kernel_length == n && b.kernel_length == n, {{"kernel", a.kernel_length}, {"kernel_wide", b.kernel_length}});
    rep.elapsed = seconds_since(t0);
    return rep;
}

}  // namespace drw
