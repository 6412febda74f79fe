#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "duality_engine.hpp"
#include "filtrations.hpp"
#include "modulus_spaces.hpp"

namespace drw {

Form random_form(std::mt19937_64& rng, int p, int n, int q, int64_t span, int terms) {
    Form x(p, n, q);
    std::uniform_int_distribution<int> sd(0, n - 1);
    for (int t = 0; t < terms; ++t) {
        const int s = sd(rng);
        const int64_t ps = ipow(p, s);
        std::uniform_int_distribution<int64_t> jd(-span * ps, span * ps);
        int64_t j = jd(rng);
        if (s > 0)
            while (j % p == 0) j = jd(rng);
        std::uniform_int_distribution<int64_t> cd(1, ipow(p, n - s) - 1);
        x.add_term({s, j}, cd(rng));
    }
    return x;
}

WittVector<LaurentRing> random_witt(std::mt19937_64& rng, const PrimeContext& ctx, int64_t span) {
    const int p = ctx.p;
    LaurentRing ring{p};
    WittVector<LaurentRing> a(ctx, ring);
    std::uniform_int_distribution<int> nterms(0, 2);
    std::uniform_int_distribution<int64_t> ed(-span, span), cd(1, p - 1);
    for (auto& c : a.coords) {
        LaurentPoly f(p);
        for (int k = nterms(rng); k > 0; --k) f = f + LaurentPoly::monomial(p, cd(rng), ed(rng));
        c = f;
    }
    return a;
}

namespace {

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

Window window_of(const RunConfig& cfg) {
    if (cfg.window_min > cfg.window_max) fail(ErrorKind::Window, "window minimum exceeds maximum");
    return {cfg.window_min, cfg.window_max, 0};
}

Report start(const std::string& name, const RunConfig& cfg) {
    Report rep;
    rep.suite = name;
    rep.config = cfg;
    return rep;
}

std::mt19937_64 rng_for(const RunConfig& cfg, uint64_t salt) {
    std::seed_seq seq{cfg.seed, static_cast<uint64_t>(cfg.p), static_cast<uint64_t>(cfg.n), salt};
    return std::mt19937_64(seq);
}

LinearMap on1(std::function<Form(const Form&)> f) {
    return [f](const Vec& v) { return Vec{f(v[0])}; };
}

std::string witt_string(const WittVector<LaurentRing>& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.coords.size(); ++i) s += (i ? ", " : "") + a.coords[i].to_string();
    return s + ")";
}

std::string first_missing(const WindowModule& a, const WindowModule& b) {
    for (const Vec& g : a.generators())
        if (!b.contains(g)) {
            std::string s;
            for (const Form& f : g) s += (s.empty() ? "" : " | ") + to_string(f);
            return s;
        }
    return {};
}

void add_equal(Report& rep, const std::string& name, const std::string& ref, const WindowModule& a,
               const WindowModule& b, const std::string& la, const std::string& lb) {
    const bool ok = a.equals(b);
    std::string w;
    if (!ok) {
        w = first_missing(a, b);
        w = w.empty() ? "right side has " + first_missing(b, a) : "left side has " + w;
    }
    rep.add(name, ref, ok, {{la, a.length()}, {lb, b.length()}}, w);
}

// Accumulates a sampled identity: one check line, the first counterexample as witness.
struct Tally {
    std::string name, ref;
    int64_t samples = 0, failures = 0;
    std::string witness;
    void record(bool ok, const std::function<std::string()>& why) {
        ++samples;
        if (ok) return;
        if (failures++ == 0) witness = why();
    }
    void flush(Report& rep) const {
        rep.add(name, ref, failures == 0, {{"samples", samples}, {"failures", failures}}, witness);
    }
};

struct TallyBook {
    std::vector<Tally> items;
    Tally& operator[](const std::string& name) {
        for (auto& t : items)
            if (t.name == name) return t;
        items.push_back(Tally{name, "", 0, 0, {}});
        return items.back();
    }
    void ref(const std::string& name, const std::string& r) { (*this)[name].ref = r; }
    void flush(Report& rep) const {
        for (const auto& t : items) t.flush(rep);
    }
};

std::string tag(const RunConfig& cfg, int q, int64_t r) {
    std::ostringstream os;
    os << " [p=" << cfg.p << " n=" << cfg.n << " q=" << q << " r=" << r << "]";
    return os.str();
}

WindowModule log_space(int p, int level, int q, const Window& w) { return regular_space(p, level, q, w, true); }

// level-1 forms whose head keys satisfy `keep`
WindowModule head_space(int p, int q, const Window& w, const std::function<bool(int64_t)>& keep) {
    auto amb = Ambient::single(p, 1, q, w);
    WindowModule m(amb);
    for (const Key& k : w.keys(p, 1))
        if (k.s == 0 && keep(k.j)) m.add(vec1(single(p, 1, q, k)));
    return m;
}

}  // namespace

Report suite_witt(const RunConfig& cfg, int samples) {
    Timer timer;
    Report rep = start("witt", cfg);
    const PrimeContext ctx(cfg.p, cfg.n);
    const int p = cfg.p, n = cfg.n;
    LaurentRing ring{p};
    ZLaurentRing zring{p};
    auto rng = rng_for(cfg, 11);
    TallyBook book;

    auto ghost_combine = [&](const WittVector<LaurentRing>& a, const WittVector<LaurentRing>& b, bool mul) {
        auto ga = ghost_oracle(lift(a)), gb = ghost_oracle(lift(b));
        std::vector<ZLaurent> g(ga.size());
        for (size_t i = 0; i < g.size(); ++i) g[i] = mul ? zring.mul(ga[i], gb[i]) : zring.add(ga[i], gb[i]);
        return reduce(from_ghosts(ctx, g));
    };

    for (int t = 0; t < samples; ++t) {
        auto a = random_witt(rng, ctx, 3), b = random_witt(rng, ctx, 3);
        auto sum = wadd(a, b), prod = wmul(a, b);
        book["wadd agrees with the ghost pipeline"].record(ghost_combine(a, b, false) == sum, [&] {
            return witt_string(a) + " + " + witt_string(b);
        });
        book["wmul agrees with the ghost pipeline"].record(ghost_combine(a, b, true) == prod, [&] {
            return witt_string(a) + " * " + witt_string(b);
        });
        // F on length n+1 against the shifted ghost vector
        const PrimeContext up(p, n + 1);
        auto c = random_witt(rng, up, 3);
        auto gc = ghost_oracle(lift(c));
        std::vector<ZLaurent> shifted(gc.begin() + 1, gc.end());
        book["F agrees with the ghost shift"].record(reduce(from_ghosts(ctx, shifted)) == wF(c),
                                                    [&] { return witt_string(c); });

        WittVector<LaurentRing> acc(ctx, ring);
        for (int i = 0; i < n; ++i) {
            auto term = teich(PrimeContext(p, n - i), ring, a.coords[i]);
            for (int k = 0; k < i; ++k) term = wV(term);
            acc = wadd(acc, term);
        }
        book["a = sum V^i([a_i])"].record(acc == a, [&] { return witt_string(a); });

        if (t % 5 == 0) {
            auto x = random_witt(rng, ctx, 2);
            book["addition associative"].record(wadd(wadd(a, b), x) == wadd(a, wadd(b, x)),
                                                 [&] { return witt_string(x); });
            book["addition commutative"].record(wadd(b, a) == sum, [&] { return witt_string(a); });
            book["multiplication associative"].record(wmul(wmul(a, b), x) == wmul(a, wmul(b, x)),
                                                       [&] { return witt_string(x); });
            book["multiplication commutative"].record(wmul(b, a) == prod, [&] { return witt_string(a); });
            book["distributive"].record(wmul(a, wadd(b, x)) == wadd(prod, wmul(a, x)),
                                        [&] { return witt_string(x); });
            book["additive inverse"].record(wadd(a, wneg(a)) == WittVector<LaurentRing>(ctx, ring),
                                            [&] { return witt_string(a); });

            // FV = p, VF = p, F[a] = [a^p], V(x F y) = V(x) y
            book["FV = p"].record(wF(wV(a)) == wscale(p, a), [&] { return witt_string(a); });
            book["VF = p"].record(wV(wF(c)) == wscale(p, c), [&] { return witt_string(c); });
            const LaurentPoly h = a.coords[0];
            book["F[a] = [a^p]"].record(wF(teich(up, ring, h)) == teich(ctx, ring, h.pow(p)),
                                        [&] { return h.to_string(); });
            book["V(x F(y)) = V(x) y"].record(wV(wmul(a, wF(c))) == wmul(wV(a), c),
                                              [&] { return witt_string(a) + ", " + witt_string(c); });
            if (n >= 2) {
                book["RF = FR"].record(wR(wF(c)) == wF(wR(c)), [&] { return witt_string(c); });
                book["RV = VR"].record(wR(wV(a)) == wV(wR(a)), [&] { return witt_string(a); });
            }
        }
    }
    book.flush(rep);
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_relations(const RunConfig& cfg, int samples) {
    Timer timer;
    Report rep = start("relations", cfg);
    const int p = cfg.p, n = cfg.n;
    auto rng = rng_for(cfg, 23);
    TallyBook book;
    std::uniform_int_distribution<int> nterms(1, 4), qd(0, 1);

    for (int t = 0; t < samples; ++t) {
        const int q = qd(rng);
        const Form x = random_form(rng, p, n, q, 6, nterms(rng));
        const Form y1 = random_form(rng, p, n + 1, q, 6, nterms(rng));
        const Form x0 = random_form(rng, p, n, 0, 6, nterms(rng));
        const Form z0 = random_form(rng, p, n, 0, 6, nterms(rng));
        const Form y0 = random_form(rng, p, n + 1, 0, 6, nterms(rng));
        const Form y2 = random_form(rng, p, n + 2, q, 6, nterms(rng));
        auto show = [](const Form& f) { return [f] { return to_string(f); }; };

        book["decompose(recompose) = id"].record(decompose(recompose(x0)) == x0, show(x0));
        book["FV = p"].record(nf_F(nf_V(x)) == nf_scale(x, p), show(x));
        book["VF = p"].record(nf_V(nf_F(y1)) == nf_scale(y1, p), show(y1));
        book["FdV = d"].record(nf_F(nf_d(nf_V(x0))) == nf_d(x0), show(x0));
        book["Vd = p dV"].record(nf_V(nf_d(x0)) == nf_scale(nf_d(nf_V(x0)), p), show(x0));
        {
            bool vanishes = false;
            try {
                vanishes = nf_d(nf_d(x0)).is_zero();
            } catch (const Error& e) {
                vanishes = e.kind() == ErrorKind::Degree;  // degree 2 is zero in one variable
            }
            book["dd = 0"].record(vanishes, show(x0));
        }
        book["RF = FR"].record(nf_R(nf_F(y2)) == nf_F(nf_R(y2)), show(y2));
        book["RV = VR"].record(nf_R(nf_V(y1)) == nf_V(nf_R(y1)), show(y1));
        book["Rd = dR"].record(nf_R(nf_d(y0)) == nf_d(nf_R(y0)), show(y0));
        book["V(x F(y)) = V(x) y"].record(nf_V(nf_mul(x0, nf_F(y1))) == nf_mul(nf_V(x0), y1),
                                          [&] { return to_string(x0) + " ; " + to_string(y1); });
        book["V(x F(y)) = V(x) y, x a 1-form"].record(
            nf_V(nf_mul(x, nf_F(y0))) == nf_mul(nf_V(x), y0), [&] { return to_string(x) + " ; " + to_string(y0); });
        book["F multiplicative"].record(nf_F(nf_mul(y0, y1)) == nf_mul(nf_F(y0), nf_F(y1)),
                                        [&] { return to_string(y0) + " ; " + to_string(y1); });
        book["Leibniz rule"].record(nf_d(nf_mul0(x0, z0)) == nf_add(nf_mul(nf_d(x0), z0), nf_mul(x0, nf_d(z0))),
                                    [&] { return to_string(x0) + " ; " + to_string(z0); });
        book["p_ R = p"].record(nf_pline(nf_R(y1)) == nf_scale(y1, p), show(y1));
        book["R p_ = p"].record(nf_R(nf_pline(x)) == nf_scale(x, p), show(x));
        book["residue(d x) = 0"].record(residue(nf_d(x0)) == 0, show(x0));
        if (q == 1)
            book["residue(p_ w) = p residue(w)"].record(
                residue(nf_pline(x)) == mod(p * residue(x), ipow(p, n + 1)), show(x));
        if (q == 1) book["C(F(w)) = R(w)"].record(cartier(nf_F(y1)) == nf_R(y1), show(y1));
    }
    {
        std::uniform_int_distribution<int64_t> ed(-8, 8);
        for (int t = 0; t < 50; ++t) {
            const int64_t i = ed(rng);
            book["F[t^i] = [t^ip]"].record(nf_F(nf_teich(p, n + 1, 1, i)) == nf_teich(p, n, 1, p * i),
                                           [&] { return std::to_string(i); });
            const Form ti = nf_teich(p, n + 1, 1, i);
            book["F d[t^i] = [t^i]^{p-1} d[t^i]"].record(
                nf_F(nf_d(ti)) == nf_mul(nf_teich(p, n, 1, (p - 1) * i), nf_d(nf_teich(p, n, 1, i))),
                [&] { return std::to_string(i); });
        }
    }
    book.flush(rep);

    // Ker(F^{n-1} d) on the degree-0 window equals F(W_{n+1})
    const Window w{-12, 12, 0};
    const WindowModule full = WindowModule::full(Ambient::single(p, n, 0, w));
    const WindowModule ker = kernel(full, Ambient::single(p, 1, 1, w.scaled_up(p, n - 1)),
                                    on1([n](const Form& f) { return nf_Fs(nf_d(f), n - 1); }));
    const WindowModule up = WindowModule::full(Ambient::single(p, n + 1, 0, w.scaled_down(p, 1)));
    const WindowModule fim = image(up, full.ambient(), on1([](const Form& f) { return nf_F(f); }));
    add_equal(rep, "Ker F^{n-1}d = F(W_{n+1}) on window spans", "kernel of F^{n-1} d in degree 0", ker, fim, "ker",
              "F-image");
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_filp(const RunConfig& cfg) {
    Timer timer;
    Report rep = start("filp", cfg);
    const int p = cfg.p, n = cfg.n;
    const Window w = window_of(cfg);
    const PrimeContext ctx(p, n);
    for (int q = 0; q <= 1; ++q) {
        const std::string t = tag(cfg, q, cfg.r);
        add_equal(rep, "FilP_0 = regular" + t, "level 0 is the regular lattice",
                  window_space(FiltrationId{FilKind::FilP, 0, q, ctx}, w), regular_space(p, n, q, w), "FilP_0",
                  "regular");
        add_equal(rep, "FilP_1 = log" + t, "level 1 is the log lattice",
                  window_space(FiltrationId{FilKind::FilP, 1, q, ctx}, w), log_space(p, n, q, w), "FilP_1", "log");
        const WindowModule M = window_space(FiltrationId{FilKind::FilP, cfg.r, q, ctx}, w);
        add_equal(rep, "FilP_r = sum p^s Fil_{rp^s}" + t, "explicit presentation against the saturation", M,
                  filp_by_saturation(ctx, q, cfg.r, w), "FilP", "saturation");
        const WindowModule next = window_space(FiltrationId{FilKind::FilP, cfg.r + 1, q, ctx}, w);
        rep.add("FilP_r inside FilP_{r+1}" + t, "monotonicity", M.subset_of(next),
                {{"r", M.length()}, {"r+1", next.length()}});

        // closed under multiplication by regular 0-forms
        bool closed = true;
        std::string witness;
        const Window cw{0, std::min<int64_t>(w.hi, 6), 0};
        const auto units = regular_basis(p, n, 0, cw);
        for (const Vec& g : M.generators()) {
            for (const Form& a : units) {
                Form prod = nf_mul(a, g[0]);
                bool inside = true;
                for (const auto& [k, c] : prod.terms()) {
                    (void)c;
                    inside = inside && w.contains(p, k);
                }
                if (inside && !M.contains(vec1(prod))) {
                    closed = false;
                    witness = to_string(a) + " * " + to_string(g[0]);
                    break;
                }
            }
            if (!closed) break;
        }
        rep.add("FilP_r is a W_nO-module" + t, "closed under regular multiplication", closed, {}, witness);
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_rfil(const RunConfig& cfg) {
    Timer timer;
    Report rep = start("rfil", cfg);
    const int p = cfg.p, n = cfg.n;
    const int64_t r = cfg.r;
    const Window w = window_of(cfg);
    const int64_t pn = ipow(p, n);
    const bool low = vp(r, p, 64) <= n;
    for (int q = 0; q <= 1; ++q) {
        const WindowModule M = filp_space(p, n + 1, q, r, w);
        const AmbientPtr amb1 = Ambient::single(p, 1, q, w);
        const WindowModule img = image(M, amb1, on1([n](const Form& f) { return nf_Rs(f, n); }));
        WindowModule want(amb1);
        if (low) {
            const int64_t b = -ceil_div(r, pn) + 1;
            want = head_space(p, q, w, [b](int64_t j) { return j >= b; });
        } else {
            const int64_t b = -r / pn + (q == 1 ? 1 : 0);
            want = head_space(p, q, w, [b](int64_t j) { return j >= b; });
        }
        add_equal(rep, std::string("R^n FilP_r = ") + (low ? "log support" : "regular support") + tag(cfg, q, r),
                  low ? "restriction, v_p(r) <= n" : "restriction, v_p(r) > n", img, want, "image", "support");
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_n1(const RunConfig& cfg) {
    Timer timer;
    Report rep = start("n1", cfg);
    const int p = cfg.p;
    const int64_t r = cfg.r;
    const Window w = window_of(cfg);
    for (int q = 0; q <= 1; ++q) {
        const WindowModule M = window_space(FiltrationId{FilKind::FilP, r, q, PrimeContext(p, 1)}, w);
        int64_t b;
        if (r == 0)
            b = q;
        else if (r % p != 0)
            b = -(r - 1);
        else
            b = q == 0 ? -r : -r + 1;
        RunConfig c1 = cfg;
        c1.n = 1;
        add_equal(rep, "FilP_r at n=1 = closed form" + tag(c1, q, r),
                  r % p ? "log poles of order r-1" : "poles of order r", M,
                  head_space(p, q, w, [b](int64_t j) { return j >= b; }), "FilP", "closed form");
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_fvr(const RunConfig& cfg) {
    Timer timer;
    Report rep = start("fvr", cfg);
    const int p = cfg.p, n = cfg.n;
    const int64_t r = cfg.r;
    const Window w = window_of(cfg);
    for (int q = 0; q <= 1; ++q) {
        const std::string t = tag(cfg, q, r);
        struct Op {
            std::string name;
            int from_level, to_level, to_q;
            Window to_window;
            std::function<Form(const Form&)> f;
        };
        std::vector<Op> ops = {
            {"F", n + 1, n, q, w.scaled_up(p, 1), [](const Form& x) { return nf_F(x); }},
            {"V", n, n + 1, q, w, [](const Form& x) { return nf_V(x); }},
            {"R", n + 1, n, q, w, [](const Form& x) { return nf_R(x); }},
            {"p_", n, n + 1, q, w, [](const Form& x) { return nf_pline(x); }},
        };
        if (q == 0) ops.push_back({"d", n, n, 1, w, [](const Form& x) { return nf_d(x); }});
        for (const Op& op : ops) {
            const WindowModule src = filp_space(p, op.from_level, q, r, w);
            const WindowModule dst = filp_space(p, op.to_level, op.to_q, r, op.to_window);
            bool ok = true;
            std::string witness;
            for (const Vec& g : src.generators()) {
                const Form y = op.f(g[0]);
                if (!dst.contains(vec1(y))) {
                    ok = false;
                    witness = op.name + "(" + to_string(g[0]) + ") = " + to_string(y);
                    break;
                }
            }
            rep.add(op.name + " preserves FilP_r" + t, "stability under " + op.name, ok,
                    {{"source", src.length()}, {"target", dst.length()}}, witness);
        }
        // p_(FilP_r at n-1) = p FilP_{pr} at n
        const WindowModule big = filp_space(p, n, q, p * r, w);
        const AmbientPtr amb = big.ambient();
        const WindowModule pb = image(big, amb, on1([p](const Form& x) { return nf_scale(x, p); }));
        WindowModule lifted(amb);
        if (n >= 2) lifted = image(filp_space(p, n - 1, q, r, w), amb, on1([](const Form& x) { return nf_pline(x); }));
        add_equal(rep, "p_(FilP_r at n-1) = p FilP_{pr}" + t, "p-line of the pole filtration", lifted, pb, "p_",
                  "p FilP_pr");
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_conductor(const RunConfig& cfg, int samples) {
    Timer timer;
    Report rep = start("conductor", cfg);
    const int p = cfg.p, n = cfg.n;
    auto rng = rng_for(cfg, 37);
    TallyBook book;
    std::uniform_int_distribution<int> nterms(1, 3), qd(0, 1);
    std::vector<std::pair<Form, int64_t>> seen[2];
    for (int t = 0; t < samples; ++t) {
        const int q = qd(rng);
        const Form x = random_form(rng, p, n, q, 5, nterms(rng));
        const int64_t c = conductor(x);
        book["c = 0 iff regular"].record((c == 0) == is_regular(x), [&] { return to_string(x); });
        book["x in FilP_c, not in FilP_{c-1}"].record(
            [&] {
                const Window sw = support_window(x);
                const PrimeContext ctx(p, n);
                if (!window_space_unchecked(FiltrationId{FilKind::FilP, c, q, ctx}, sw).contains(vec1(x)))
                    return false;
                return c == 0 || !window_space_unchecked(FiltrationId{FilKind::FilP, c - 1, q, ctx}, sw).contains(vec1(x));
            }(),
            [&] { return to_string(x) + " c=" + std::to_string(c); });
        seen[q].push_back({x, c});
    }
    for (int q = 0; q <= 1; ++q) {
        const auto& v = seen[q];
        for (size_t i = 0; i + 1 < v.size(); i += 2) {
            const Form s = nf_add(v[i].first, v[i + 1].first);
            const int64_t cs = conductor(s);
            book["c(x+y) <= max(c(x), c(y))"].record(cs <= std::max(v[i].second, v[i + 1].second), [&] {
                return to_string(v[i].first) + " ; " + to_string(v[i + 1].first) + " c=" + std::to_string(cs);
            });
        }
    }
    book.flush(rep);
    rep.elapsed = timer.seconds();
    return rep;
}

Report suite_char(const RunConfig& cfg) {
    Timer timer;
    Report rep = start("char", cfg);
    const int p = cfg.p, n = cfg.n;
    const int64_t r = cfg.r;
    if (r < 2) fail(ErrorKind::Usage, "the graded checks need r >= 2");
    const Window w = window_of(cfg);
    const Window top = w.scaled_up(p, n - 1);
    const LinearMap Fn1 = on1([n](const Form& x) { return nf_Fs(x, n - 1); });
    const LinearMap Fn1d = on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); });
    for (int q = 0; q <= 1; ++q) {
        const std::string t = tag(cfg, q, r);
        const WindowModule M = filp_space(p, n, q, r, w);
        const AmbientPtr amb = M.ambient();
        WindowModule S = filp_space(p, n, q, r - 1, w);
        if (n >= 2) S = S.sum(image(filp_space(p, n - 1, q, r, w), amb, on1([](const Form& x) { return nf_pline(x); })));
        rep.add("denominator inside FilP_r" + t, "well-defined graded piece", S.subset_of(M),
                {{"M", M.length()}, {"S", S.length()}});

        const WindowModule T0 = filp_space(p, 1, q, r - 1, top);
        const WindowModule kerF = preimage(M, T0, Fn1);
        WindowModule kerFd = M;
        if (q == 0) kerFd = preimage(M, filp_space(p, 1, 1, r - 1, top), Fn1d);
        add_equal(rep, "(F^{n-1}, F^{n-1}d) injective on gr" + t, "graded injectivity", kerF.intersect(kerFd), S,
                  "kernel", "denominator");

        const WindowModule Fim =
            image(WindowModule::full(Ambient::single(p, n + 1, q, w.scaled_down(p, 1))), amb,
                  on1([](const Form& x) { return nf_F(x); }));
        add_equal(rep, "exact at gr for F^{n-1}d" + t, "F-image fills the kernel of F^{n-1}d", kerFd,
                  Fim.intersect(M).sum(S), "kernel", "F-image + S");

        WindowModule Vim(amb);
        if (n >= 2)
            Vim = image(WindowModule::full(Ambient::single(p, n - 1, q, w.scaled_up(p, 1))), amb,
                        on1([](const Form& x) { return nf_V(x); }));
        add_equal(rep, "exact at gr for F^{n-1}" + t, "V-image fills the kernel of F^{n-1}", kerF,
                  Vim.intersect(M).sum(S), "kernel", "V-image + S");
    }
    rep.elapsed = timer.seconds();
    return rep;
}

namespace {

struct SuiteEntry {
    std::string name;
    std::function<Report(const RunConfig&)> run;
};

Window cfg_window(const RunConfig& cfg) { return window_of(cfg); }

Report wrap(const std::string& name, const RunConfig& cfg, Report rep) {
    rep.suite = name;
    rep.config = cfg;
    return rep;
}

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> entries = {
        {"bnzn", [](const RunConfig& c) {
             return wrap("bnzn", c, verify_bn_zn(PrimeContext(c.p, c.n), c.q, c.r, cfg_window(c)));
         }},
        {"cartier", [](const RunConfig& c) {
             CartierDualityResult res = verify_cartier_duality(c.p, c.n, c.q, c.r, cfg_window(c));
             return wrap("cartier", c, res.report);
         }},
        {"char", [](const RunConfig& c) { return suite_char(c); }},
        {"conductor", [](const RunConfig& c) { return suite_conductor(c); }},
        {"duality", [](const RunConfig& c) {
             return wrap("duality", c, verify_local_duality(PrimeContext(c.p, c.n), c.q, c.r, cfg_window(c)).report);
         }},
        {"filp", [](const RunConfig& c) { return suite_filp(c); }},
        {"fvr", [](const RunConfig& c) { return suite_fvr(c); }},
        {"kerc", [](const RunConfig& c) {
             return wrap("kerc", c, verify_kernel_one_minus_c(PrimeContext(c.p, c.n), cfg_window(c), 8));
         }},
        {"longmod", [](const RunConfig& c) {
             const PrimeContext ctx(c.p, c.n);
             Report rep = verify_long_mod_seq(ctx, c.q, c.r, 1, cfg_window(c));
             rep.merge(verify_long_mod_seq(ctx, c.q, c.r, 2, cfg_window(c)));
             return wrap("longmod", c, rep);
         }},
        {"n1", [](const RunConfig& c) { return suite_n1(c); }},
        {"relations", [](const RunConfig& c) { return suite_relations(c); }},
        {"rfil", [](const RunConfig& c) { return suite_rfil(c); }},
        {"strhwm", [](const RunConfig& c) {
             return wrap("strhwm", c, verify_strHWM(PrimeContext(c.p, c.n), c.q, c.r, cfg_window(c)));
         }},
        {"witt", [](const RunConfig& c) { return suite_witt(c); }},
        {"zero", [](const RunConfig& c) {
             return wrap("zero", c, verify_zero_side(PrimeContext(c.p, c.n), c.q, c.r, cfg_window(c)));
         }},
        {"zero-cartesian", [](const RunConfig& c) {
             return wrap("zero-cartesian", c, verify_zero_cartesian(PrimeContext(c.p, c.n), c.r, cfg_window(c)));
         }},
    };
    return entries;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
}

bool is_suite(const std::string& name) {
    if (name == "all") return true;
    for (const auto& e : registry())
        if (e.name == name) return true;
    return false;
}

Report run_suite(const std::string& name, const RunConfig& cfg) {
    // cartier is the only suite defined at level n = 0
    PrimeContext(cfg.p, name == "cartier" && cfg.n == 0 ? 1 : cfg.n);
    if (cfg.r < 0) fail(ErrorKind::Usage, "r must be nonnegative");
    if (cfg.q < 0 || cfg.q > 1) fail(ErrorKind::Usage, "q must be 0 or 1");
    if (name == "all") {
        Timer timer;
        Report all = start("all", cfg);
        for (const auto& e : registry()) {
            if (e.name == "char" && cfg.r < 2) continue;
            all.merge(e.run(cfg));
        }
        all.elapsed = timer.seconds();
        return all;
    }
    for (const auto& e : registry())
        if (e.name == name) {
            Timer timer;
            Report rep = e.run(cfg);
            if (rep.elapsed == 0.0) rep.elapsed = timer.seconds();
            return rep;
        }
    fail(ErrorKind::Usage, "unknown suite '" + name + "'");
}

}  // namespace drw
