#include "filtrations.hpp"

#include <algorithm>

namespace drw {

const char* kind_name(FilKind k) {
    switch (k) {
        case FilKind::Log: return "log";
        case FilKind::LogPrime: return "logprime";
        case FilKind::Fil: return "fil";
        case FilKind::FilBig: return "Fil";
        case FilKind::FilP: return "filp";
    }
    return "?";
}

FilKind parse_kind(const std::string& s) {
    if (s == "log") return FilKind::Log;
    if (s == "logprime" || s == "logPrime") return FilKind::LogPrime;
    if (s == "fil") return FilKind::Fil;
    if (s == "Fil") return FilKind::FilBig;
    if (s == "filp" || s == "FilP") return FilKind::FilP;
    fail(ErrorKind::Usage, "unknown filtration kind '" + s + "'");
}

namespace {

bool regular_key(const Key& k, int q, bool log_poles) {
    if (k.s > 0) return k.j > 0;
    return (q == 0 || log_poles) ? k.j >= 0 : k.j >= 1;
}

// window [0, hi * p^j - i] for the coefficient alpha in V^j([t]^i alpha)
Window alpha_window(int p, const Window& w, int j, int64_t i) {
    int64_t hi = w.hi * ipow(p, j) - i * ipow(p, w.e);
    return {std::min<int64_t>(0, hi), hi, w.e};
}

enum class Alpha { Regular, LogRegular, DlogTimesRegular };

void emit_layer(GeneratorFamily& out, int p, int n, int q, int j, int64_t i, Alpha kind, const Window& w,
                int64_t scale, const std::string& tag) {
    const int level = n - j;
    if (level <= 0) return;
    Window aw = alpha_window(p, w, j, i);
    Form ti = single(p, level, 0, {0, i});
    std::vector<Form> alphas = regular_basis(p, level, kind == Alpha::DlogTimesRegular ? 0 : q, aw,
                                             kind == Alpha::LogRegular);
    for (const Form& a : alphas) {
        Form prod;
        if (kind == Alpha::DlogTimesRegular)
            prod = nf_times_dlog(nf_mul0(ti, a));
        else
            prod = (q == 0) ? nf_mul0(ti, a) : nf_mul01(ti, a);
        Form g = nf_scale(nf_Vs(prod, j), scale);
        if (g.is_zero()) continue;
        out.push_back({g, tag + " V^" + std::to_string(j) + "([t]^" + std::to_string(i) + " * " + to_string(a) + ")"});
    }
}

// H^q_R for R >= 1 at level n
void h_gens(GeneratorFamily& out, int p, int n, int q, int64_t R, const Window& w, int64_t scale,
            const std::string& tag) {
    const int m = std::min(vp(R, p), n);
    for (int j = 0; j < n; ++j) {
        const int64_t e = ipow(p, n - 1 - j);
        const int64_t imin = ceil_div(-R + 1, e);
        emit_layer(out, p, n, q, j, imin, Alpha::Regular, w, scale, tag + " c1");
        if (q == 1) emit_layer(out, p, n, q, j, imin, Alpha::DlogTimesRegular, w, scale, tag + " c2");
        if (m >= 1 && j >= n - m && (-R) % e == 0) emit_layer(out, p, n, q, j, -R / e, Alpha::Regular, w, scale, tag + " c3");
    }
}

void log_gens(GeneratorFamily& out, int p, int level, int q, int64_t r, bool prime, const Window& w,
              const std::string& tag) {
    for (int j = 0; j < level; ++j) {
        const int64_t imin = ceil_div(-r, ipow(p, level - 1 - j));
        emit_layer(out, p, level, q, j, imin, prime ? Alpha::Regular : Alpha::LogRegular, w, 1, tag);
    }
}

void fil_gens(GeneratorFamily& out, int p, int n, int q, int64_t r, const Window& w) {
    if (r == 0) {
        for (const Form& f : regular_basis(p, n, q, w)) out.push_back({f, "regular"});
        return;
    }
    log_gens(out, p, n, q, r - 1, false, w, "log_{r-1}");
    const int m = std::min(vp(r, p), n);
    if (m >= 1) {
        GeneratorFamily inner;
        log_gens(inner, p, m, q, r, true, w.scaled_up(p, n - m), "log'_r");
        for (auto& g : inner) out.push_back({nf_Vs(g.form, n - m), "V^" + std::to_string(n - m) + " " + g.recipe});
    }
}

void fil_big_gens(GeneratorFamily& out, int p, int n, int q, int64_t r, const Window& w) {
    fil_gens(out, p, n, q, r, w);
    if (q == 1) {
        GeneratorFamily zero;
        fil_gens(zero, p, n, 0, r, w);
        for (auto& g : zero) out.push_back({nf_d(g.form), "d " + g.recipe});
    }
}

void filp_gens(GeneratorFamily& out, int p, int n, int q, int64_t r, const Window& w) {
    if (r == 0) {
        for (const Form& f : regular_basis(p, n, q, w)) out.push_back({f, "regular"});
        return;
    }
    for (int s = 0; s < n; ++s) {
        const int64_t R = r * ipow(p, s), scale = ipow(p, s);
        const std::string tag = "p^" + std::to_string(s) + " H_" + std::to_string(R);
        h_gens(out, p, n, q, R, w, scale, tag);
        if (q == 1) {
            GeneratorFamily zero;
            h_gens(zero, p, n, 0, R, w, scale, tag);
            for (auto& g : zero) {
                Form dg = nf_d(g.form);
                if (!dg.is_zero()) out.push_back({dg, "d " + g.recipe});
            }
        }
    }
}

}  // namespace

std::vector<Form> regular_basis(int p, int level, int q, const Window& w, bool log_poles) {
    std::vector<Form> out;
    if (level <= 0) return out;
    for (const Key& k : w.keys(p, level))
        if (regular_key(k, q, log_poles)) out.push_back(single(p, level, q, k));
    return out;
}

WindowModule regular_space(int p, int level, int q, const Window& w, bool log_poles) {
    auto amb = Ambient::single(p, level, q, w);
    return WindowModule::span(amb, as_vecs(regular_basis(p, level, q, w, log_poles)));
}

WeightQ pole_floor(const FiltrationId& id) { return {-id.r, 0}; }

GeneratorFamily generators_unchecked(const FiltrationId& id, const Window& w) {
    GeneratorFamily raw;
    const int p = id.ctx.p, n = id.ctx.n, q = id.q;
    if (id.r < 0) fail(ErrorKind::Usage, "filtration level must be nonnegative");
    switch (id.kind) {
        case FilKind::Log: log_gens(raw, p, n, q, id.r, false, w, "log"); break;
        case FilKind::LogPrime: log_gens(raw, p, n, q, id.r, true, w, "log'"); break;
        case FilKind::Fil: fil_gens(raw, p, n, q, id.r, w); break;
        case FilKind::FilBig: fil_big_gens(raw, p, n, q, id.r, w); break;
        case FilKind::FilP: filp_gens(raw, p, n, q, id.r, w); break;
    }
    GeneratorFamily out;
    for (auto& g : raw) {
        bool inside = true;
        for (const auto& [k, c] : g.form.terms()) {
            (void)c;
            if (!w.contains(p, k)) inside = false;
        }
        if (inside) out.push_back(std::move(g));
    }
    return out;
}

GeneratorFamily generators(const FiltrationId& id, const Window& w) {
    const int p = id.ctx.p;
    if (w.lo > w.hi) fail(ErrorKind::Window, "window-too-small: empty window");
    if (!w.contains_weight(p, {0, 0}) || !w.contains_weight(p, pole_floor(id)))
        fail(ErrorKind::Window, "window-too-small: " + w.to_string(p) + " must reach weights " +
                                    weight_to_string(p, pole_floor(id)) + " and 0 for level r=" + std::to_string(id.r));
    return generators_unchecked(id, w);
}

namespace {

WindowModule span_family(const FiltrationId& id, const Window& w, const GeneratorFamily& fam) {
    auto amb = Ambient::single(id.ctx.p, id.ctx.n, id.q, w);
    WindowModule m(amb);
    for (const auto& g : fam) m.add(Vec{g.form}, Clip::Error);
    return m;
}

}  // namespace

WindowModule window_space(const FiltrationId& id, const Window& w) { return span_family(id, w, generators(id, w)); }

WindowModule window_space_unchecked(const FiltrationId& id, const Window& w) {
    return span_family(id, w, generators_unchecked(id, w));
}

WindowModule filp_space(int p, int level, int q, int64_t r, const Window& w) {
    if (level <= 0) return WindowModule::zero(Ambient::single(p, 0, q, w));
    return window_space_unchecked(FiltrationId{FilKind::FilP, r, q, PrimeContext(p, level)}, w);
}

WindowModule filp_by_saturation(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    auto amb = Ambient::single(ctx.p, ctx.n, q, w);
    WindowModule m(amb);
    for (int s = 0; s < ctx.n; ++s) {
        FiltrationId id{FilKind::FilBig, r * ipow(ctx.p, s), q, ctx};
        for (const auto& g : generators_unchecked(id, w)) m.add(Vec{nf_scale(g.form, ipow(ctx.p, s))}, Clip::Error);
    }
    return m;
}

Window support_window(const Form& x) {
    SupportProfile sp = support_profile(x);
    if (!sp.min_weight) return {0, 0, 0};
    int e = std::max(sp.min_weight->e, sp.max_weight->e);
    const int p = x.p();
    int64_t lo = sp.min_weight->num * ipow(p, e - sp.min_weight->e);
    int64_t hi = sp.max_weight->num * ipow(p, e - sp.max_weight->e);
    return {std::min<int64_t>(lo, 0), std::max<int64_t>(hi, 0), e};
}

int64_t conductor(const Form& x) {
    if (x.is_zero() || is_regular(x)) return 0;
    const int p = x.p(), n = x.n();
    const Window w = support_window(x);
    SupportProfile sp = support_profile(x);
    const WeightQ mw = *sp.min_weight;
    const int64_t lower = std::max<int64_t>(1, ceil_div(-mw.num, ipow(p, mw.e)));
    int64_t upper = 1;
    if (mw.num < 0) {
        int up = n - 1;
        upper = (up >= mw.e) ? -mw.num * ipow(p, up - mw.e) : ceil_div(-mw.num, ipow(p, mw.e - up));
        upper += 1;
    }
    for (int64_t r = lower; r <= std::max(lower, upper); ++r) {
        FiltrationId id{FilKind::FilP, r, x.q(), PrimeContext(p, n)};
        if (window_space_unchecked(id, w).contains(Vec{x})) return r;
    }
    fail(ErrorKind::Domain, "conductor search exhausted its bound for " + to_string(x));
}

}  // namespace drw
