#include "modulus_spaces.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

namespace drw {

ModulusDivisor::ModulusDivisor(std::map<std::string, int64_t> points) {
    for (auto& [pt, m] : points) {
        if (m < 0) fail(ErrorKind::Usage, "divisor multiplicity must be nonnegative at " + pt);
        if (m > 0) pts_[pt] = m;
    }
}

ModulusDivisor ModulusDivisor::at_origin(int64_t r) { return ModulusDivisor({{"0", r}}); }

int64_t ModulusDivisor::multiplicity(const std::string& pt) const {
    auto it = pts_.find(pt);
    return it == pts_.end() ? 0 : it->second;
}

ModulusDivisor ModulusDivisor::operator+(const ModulusDivisor& o) const {
    auto m = pts_;
    for (const auto& [pt, v] : o.pts_) m[pt] += v;
    return ModulusDivisor(m);
}

ModulusDivisor ModulusDivisor::scaled(int64_t c) const {
    auto m = pts_;
    for (auto& [pt, v] : m) v *= c;
    return ModulusDivisor(m);
}

ModulusDivisor ModulusDivisor::ceil_div(int64_t m) const {
    auto out = pts_;
    for (auto& [pt, v] : out) v = drw::ceil_div(v, m);
    return ModulusDivisor(out);
}

ModulusDivisor ModulusDivisor::floor_div(int64_t m) const {
    auto out = pts_;
    for (auto& [pt, v] : out) v = drw::floor_div(v, m);
    return ModulusDivisor(out);
}

ModulusDivisor ModulusDivisor::reduced() const {
    auto out = pts_;
    for (auto& [pt, v] : out) v = 1;
    return ModulusDivisor(out);
}

std::string ModulusDivisor::to_string() const {
    if (pts_.empty()) return "0";
    std::string s;
    for (const auto& [pt, v] : pts_) {
        if (!s.empty()) s += " + ";
        s += std::to_string(v) + "*" + pt;
    }
    return s;
}

ModulusDivisor PDivDecomposition::reconstruct() const {
    ModulusDivisor out = prime;
    for (size_t i = 0; i < parts.size(); ++i) out = out + parts[i].scaled(ipow(p, ladder[i]));
    return out;
}

PDivDecomposition p_div_decompose(int p, const ModulusDivisor& e, const std::vector<int>& ladder) {
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] < 1 || (i > 0 && ladder[i] <= ladder[i - 1]))
            fail(ErrorKind::Usage, "decomposition ladder must be strictly increasing and positive");
    }
    PDivDecomposition out;
    out.p = p;
    out.ladder = ladder;
    std::map<std::string, int64_t> prime;
    std::vector<std::map<std::string, int64_t>> parts(ladder.size());
    for (const auto& [pt, m] : e.points()) {
        int top = -1;
        for (size_t i = 0; i < ladder.size(); ++i)
            if (vp(m, p) >= ladder[i]) top = static_cast<int>(i);
        if (top < 0)
            prime[pt] = m;
        else
            parts[top][pt] = m / ipow(p, ladder[top]);
    }
    out.prime = ModulusDivisor(prime);
    for (auto& m : parts) out.parts.emplace_back(m);
    return out;
}

LocalSplit split_local(int p, int64_t r, int k) {
    if (r != 0 && vp(r, p) >= k) return {0, r / ipow(p, k)};
    return {r, 0};
}

WindowModule pole_space(int p, int level, int q, int64_t r, const Window& w) { return filp_space(p, level, q, r, w); }

std::vector<Form> zero_ideal_generators(int p, int level, int64_t r, const Window& w) {
    std::vector<Form> out;
    for (int i = 0; i < level; ++i) {
        // weight m / p^i <= hi / p^e
        int64_t mmax = (w.e >= i) ? floor_div(w.hi, ipow(p, w.e - i)) : w.hi * ipow(p, i - w.e);
        int64_t mmin = std::max<int64_t>(r, (w.e >= i) ? ceil_div(w.lo, ipow(p, w.e - i)) : w.lo * ipow(p, i - w.e));
        for (int64_t m = mmin; m <= mmax; ++m) {
            Form f(p, level, 0);
            f.add_V(i, m, 1);
            if (!f.is_zero()) out.push_back(f);
        }
    }
    return out;
}

namespace {

LinearMap on1(std::function<Form(const Form&)> f) {
    return [f](const Vec& v) { return Vec{f(v[0])}; };
}

// window [0, hi - wt] for the cofactor of a generator of weight wt
std::optional<Window> cofactor_window(int p, const Window& w, const WeightQ& wt) {
    const int e = std::max(w.e, wt.e);
    const int64_t hi = w.hi * ipow(p, e - w.e) - wt.num * ipow(p, e - wt.e);
    if (hi < 0) return std::nullopt;
    return Window{0, hi, e};
}

}  // namespace

WindowModule zero_space(int p, int level, int q, int64_t r, const Window& w) {
    auto amb = Ambient::single(p, level, q, w);
    WindowModule m(amb);
    if (level <= 0) return m;
    if (r == 0) return regular_space(p, level, q, w);
    if (q == 0) {
        for (const Form& z : zero_ideal_generators(p, level, r, w)) m.add(vec1(z));
        return m;
    }
    // q = 1: W_n(I) Omega^1 + d W_n(I); multiples of [t] are absorbed into the cofactor
    for (int i = 0; i < level; ++i) {
        const int64_t pi = ipow(p, i);
        for (int64_t u = r; u < r + pi; ++u) {
            Form z(p, level, 0);
            z.add_V(i, u, 1);
            if (z.is_zero()) continue;
            auto cw = cofactor_window(p, w, {u, i});
            if (!cw) continue;
            for (const Form& om : regular_basis(p, level, 1, *cw)) m.add(vec1(nf_mul01(z, om)));
        }
    }
    for (const Form& z : zero_ideal_generators(p, level, r, w)) m.add(vec1(nf_d(z)));
    return m;
}

namespace {

bool twisted_key_ok(int q, const Key& k, int64_t bound, bool log_poles) {
    if (k.s != 0) return false;
    if (q == 0 || log_poles) return k.j >= bound;
    return k.j >= bound + 1;
}

WindowModule support_space(int p, int q, int64_t bound, bool log_poles, const Window& w) {
    auto amb = Ambient::single(p, 1, q, w);
    WindowModule m(amb);
    for (const Key& k : w.keys(p, 1))
        if (twisted_key_ok(q, k, bound, log_poles)) m.add(vec1(single(p, 1, q, k)));
    return m;
}

}  // namespace

WindowModule twisted_pole_space(int p, int q, int k, int64_t d, int64_t e, const Window& w) {
    const int64_t c = ceil_div(d, ipow(p, k)) - (d > 0 ? 1 : 0) + e;
    return support_space(p, q, -c, d > 0, w);
}

WindowModule twisted_zero_space(int p, int q, int k, int64_t d, int64_t e, const Window& w) {
    const int64_t c = ceil_div(d, ipow(p, k)) + e;
    return support_space(p, q, c, d > 0, w);
}

BZPair bn_zn_pole(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    const int p = ctx.p, n = ctx.n;
    const Window wn = w.scaled_up(p, n);
    auto ambq = Ambient::single(p, 1, q, wn);
    BZPair out{WindowModule(ambq), WindowModule(ambq)};
    out.Z = image(pole_space(p, n + 1, q, r, w), ambq, on1([n](const Form& x) { return nf_Fs(x, n); }));
    if (q == 1)
        out.B = image(pole_space(p, n, 0, r, w.scaled_up(p, 1)), ambq,
                      on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); }));
    return out;
}

BZPair bn_zn_by_intersection(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    const int p = ctx.p, n = ctx.n;
    const Window wn = w.scaled_up(p, n);
    auto ambq = Ambient::single(p, 1, q, wn);
    const WindowModule target = pole_space(p, 1, q, r, wn);
    BZPair out{WindowModule(ambq), WindowModule(ambq)};
    auto full_n1 = WindowModule::full(Ambient::single(p, n + 1, q, w));
    out.Z = image(full_n1, ambq, on1([n](const Form& x) { return nf_Fs(x, n); })).intersect(target);
    if (q == 1) {
        auto full_n = WindowModule::full(Ambient::single(p, n, 0, w.scaled_up(p, 1)));
        out.B = image(full_n, ambq, on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); })).intersect(target);
    }
    return out;
}

namespace {

// closed forms of a level-1 support space: everything in degree 1, p-th powers in degree 0
WindowModule closed_part(const WindowModule& m) {
    const auto& amb = m.ambient();
    const int p = amb->p();
    if (amb->blocks()[0].q == 1) return m;
    WindowModule out(amb);
    for (const Vec& g : m.generators()) {
        bool ok = true;
        for (const auto& [k, c] : g[0].terms()) {
            (void)c;
            if (k.j % p != 0) ok = false;
        }
        if (ok) out.add(g);
    }
    return out;
}

struct TwistParts {
    int64_t lower = 0;  // D_{n-j} underlined
    int64_t upper = 0;  // D^j underlined
};

// D = D_0 + p D_1 + ... + p^n D_n at one point: a single part sits at index min(v_p d, n)
TwistParts twist_parts(int p, int n, int64_t d, int j) {
    if (d == 0) return {};
    const int m = std::min(vp(d, p), n);
    TwistParts t;
    t.lower = (n - j >= m) ? d : 0;
    t.upper = (m >= n - j + 1) ? d / ipow(p, n - j) : 0;
    return t;
}

}  // namespace

BZPair twisted_bz(const PrimeContext& ctx, int q, int64_t d, int64_t e, const Window& w) {
    const int p = ctx.p, n = ctx.n;
    auto amb0 = Ambient::single(p, 1, q, w);
    WindowModule Z = twisted_pole_space(p, q, n, d, e, w);
    WindowModule B(amb0);
    for (int j = 1; j <= n; ++j) {
        const Window wj = w.scaled_up(p, j);
        const TwistParts t = twist_parts(p, n, d, j);
        const WindowModule omega = twisted_pole_space(p, q, n - j, t.lower, t.upper + ipow(p, j) * e, wj);
        const WindowModule closed = closed_part(omega);
        const LinearMap C = on1([](const Form& x) { return cartier(x); });
        WindowModule Zj = preimage(closed, Z, C);
        WindowModule Bj = preimage(closed, B, C);
        Z = std::move(Zj);
        B = std::move(Bj);
    }
    return {B, Z};
}

OmegaBZ omega_bz_zero(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    const int p = ctx.p, n = ctx.n;
    const Window wn = w.scaled_up(p, n);
    if (n == 0) {
        WindowModule z = zero_space(p, 1, q, r, w);
        auto amb = z.ambient();
        OmegaBZ out{z, WindowModule(amb), WindowModule(amb), WindowModule(amb), false};
        return out;
    }
    const WindowModule reg = regular_space(p, 1, q, wn);
    const WindowModule zero_top = zero_space(p, n + 1, q, r, w);
    const LinearMap Vn = on1([n](const Form& x) { return nf_Vs(x, n); });
    OmegaBZ out{preimage(reg, zero_top, Vn), kernel(reg, zero_top.ambient(), Vn), WindowModule(reg.ambient()),
                WindowModule(reg.ambient()), false};
    if (q == 1) {
        const WindowModule reg0 = regular_space(p, 1, 0, wn);
        const WindowModule zero_n = zero_space(p, n, 1, r, w.scaled_up(p, 1));
        const LinearMap dV = on1([n](const Form& x) { return nf_d(nf_Vs(x, n - 1)); });
        out.A1 = preimage(reg0, zero_n, dV);
        out.Z1 = kernel(reg0, zero_n.ambient(), dV);
        out.has_z = true;
    }
    return out;
}

namespace {

RunConfig config_of(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    RunConfig c;
    c.p = ctx.p;
    c.n = ctx.n;
    c.q = q;
    c.r = r;
    c.window_min = w.lo;
    c.window_max = w.hi;
    return c;
}

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

std::string tag(const PrimeContext& ctx, int q, int64_t r) {
    std::ostringstream os;
    os << "p=" << ctx.p << " n=" << ctx.n << " q=" << q << " r=" << r;
    return os.str();
}

// equal modules; on failure reports both lengths
void add_equal(Report& rep, const std::string& name, const std::string& ref, const WindowModule& a,
               const WindowModule& b, const std::string& la, const std::string& lb) {
    const bool ok = a.equals(b);
    rep.add(name, ref, ok, {{la, a.length()}, {lb, b.length()}}, ok ? "" : "modules differ");
}

}  // namespace

Report verify_strHWM(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    Timer timer;
    const int p = ctx.p, n = ctx.n;
    Report rep;
    rep.config = config_of(ctx, q, r, w);
    rep.suite = "strhwm";
    const std::string t = " [" + tag(ctx, q, r) + "]";

    const Window wp = w.scaled_up(p, 1), wn = w.scaled_up(p, n);
    const WindowModule M = pole_space(p, n + 1, q, r, w);
    const WindowModule low = pole_space(p, n, q, r, w);
    const WindowModule P = image(low, M.ambient(), on1([](const Form& x) { return nf_pline(x); }));
    auto amb1 = Ambient::single(p, 1, q, wn);
    const LinearMap Fn = on1([n](const Form& x) { return nf_Fs(x, n); });
    const WindowModule K = kernel(M, amb1, Fn);
    const WindowModule Zn = image(M, amb1, Fn);

    rep.add("p-line inside Ker F^n" + t, "Ker F^n contains the p-line image", P.subset_of(K),
            {{"P", P.length()}, {"KerFn", K.length()}});

    // Ker F^n  and  Ker F^n d
    WindowModule KF = K;
    if (q == 0) {
        auto amb1d = Ambient::single(p, 1, 1, wn);
        KF = kernel(K, amb1d, on1([n](const Form& x) { return nf_Fs(nf_d(x), n); }));
    }
    add_equal(rep, "Ker F^n cap Ker F^n d = p-line" + t, "kernel of (F^n, F^n d) on the pole space", KF, P, "ker",
              "P");

    const WindowModule pole_np = pole_space(p, n, q, r, wp);
    const LinearMap V1 = on1([](const Form& x) { return nf_V(x); });
    const WindowModule VP = image(pole_np, M.ambient(), V1).sum(P);
    add_equal(rep, "Ker F^n = V(pole_n) + p-line" + t, "kernel of F^n", K, VP, "KerFn", "V+P");

    const WindowModule Vfull = image(WindowModule::full(Ambient::single(p, n, q, wp)), M.ambient(), V1);
    add_equal(rep, "Ker F^n = V(W_n) cap pole" + t, "kernel of F^n", K, Vfull.intersect(M), "KerFn", "V cap M");

    int64_t lenB = 0;
    WindowModule kerB = pole_np;
    WindowModule B(Ambient::single(p, 1, 0, wn));
    if (q == 0) {
        auto amb1d = Ambient::single(p, 1, 1, wn);
        const LinearMap Fd = on1([n](const Form& x) { return nf_Fs(nf_d(x), n - 1); });
        B = image(pole_np, amb1d, Fd);
        kerB = kernel(pole_np, amb1d, Fd);
        lenB = B.length();
    }
    add_equal(rep, "Ker F^{n-1}d on pole_n = V^{-1}(p-line)" + t, "the middle map has the p-line as kernel", kerB,
              preimage(pole_np, P, V1), "ker", "V^-1 P");

    const int64_t mid = M.quotient_length(P);
    rep.add("length B + Z = W_{n+1}/p-line" + t, "short exact sequence of the graded piece",
            mid == lenB + Zn.length(), {{"middle", mid}, {"B", lenB}, {"Z", Zn.length()}});

    // twisted Cartier recursion
    const LocalSplit sp = split_local(p, r, n + 1);
    const int64_t E = p * sp.top;
    const BZPair tw = twisted_bz(ctx, q, sp.prime, E, w);
    add_equal(rep, "Z_n = Z_{n,n}(D', pD_{n+1})" + t, "Cartier recursion for Z", Zn, tw.Z, "Z", "Znn");
    if (q == 1) {
        const BZPair own = bn_zn_pole(ctx, 1, r, w);
        add_equal(rep, "B_n = B_{n,n}(D', pD_{n+1})" + t, "Cartier recursion for B", own.B, tw.B, "B", "Bnn");
        if (own.B.subset_of(Zn)) {
            const int64_t gr = Zn.quotient_length(own.B);
            const int64_t want = twisted_pole_space(p, q, n, sp.prime, E, w).length();
            rep.add("len Z_n/B_n = len Omega_n(D', pD_{n+1})" + t, "iterated inverse Cartier isomorphism", gr == want,
                    {{"Z/B", gr}, {"Omega", want}});
        } else {
            rep.add("len Z_n/B_n = len Omega_n(D', pD_{n+1})" + t, "iterated inverse Cartier isomorphism", false, {},
                    "B_n not inside Z_n");
        }
    } else {
        const int64_t want = twisted_pole_space(p, q, n, sp.prime, E, w).length();
        rep.add("len Z_n = len Omega_n(D', pD_{n+1})" + t, "iterated inverse Cartier isomorphism",
                Zn.length() == want, {{"Z", Zn.length()}, {"Omega", want}});
    }

    if (r == 0) {
        WindowModule classical(amb1);
        for (const Key& k : wn.keys(p, 1)) {
            bool in = (q == 0) ? (k.j >= 0 && k.j % ipow(p, n) == 0) : k.j >= 1;
            if (in) classical.add(vec1(single(p, 1, q, k)));
        }
        add_equal(rep, "classical Z_n at D=0" + t, "classical description", Zn, classical, "Z", "classical");
        if (q == 0) {
            WindowModule cb(B.ambient());
            for (const Key& k : wn.keys(p, 1))
                if (k.j > 0 && vp(k.j, p) <= n - 1) cb.add(vec1(single(p, 1, 1, k)));
            add_equal(rep, "classical B_n at D=0" + t, "classical description", B, cb, "B", "classical");
        }
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report verify_long_mod_seq(const PrimeContext& ctx, int q, int64_t r, int r_w, const Window& w) {
    Timer timer;
    const int p = ctx.p, n = ctx.n;
    if (r_w < 1) fail(ErrorKind::Usage, "long sequence needs r_w >= 1");
    Report rep;
    rep.config = config_of(ctx, q, r, w);
    rep.suite = "longmod";
    const std::string t = " [" + tag(ctx, q, r) + " r_w=" + std::to_string(r_w) + "]";
    const Window wn = w.scaled_up(p, n);

    const WindowModule A = pole_space(p, n, q, r, w);
    const WindowModule M = pole_space(p, n + r_w, q, r, w);
    const LinearMap pl = on1([r_w](const Form& x) {
        Form y = x;
        for (int i = 0; i < r_w; ++i) y = nf_pline(y);
        return y;
    });
    const WindowModule injk = kernel(A, M.ambient(), pl);
    rep.add("p-line^r injective" + t, "injectivity of the p-line power", injk.length() == 0,
            {{"kernel", injk.length()}});
    const WindowModule im1 = image(A, M.ambient(), pl);

    std::vector<BlockSpec> blocks{{r_w, q, wn}};
    if (q == 0) blocks.push_back({r_w, 1, wn});
    auto amb2 = Ambient::make(p, blocks);
    const LinearMap phi = [n, q](const Vec& v) {
        Vec out{nf_Fs(v[0], n)};
        if (q == 0) out.push_back(nf_Fs(nf_d(v[0]), n));
        return out;
    };
    WindowModule node2(amb2);
    for (const Vec& g : pole_space(p, r_w, q, r, wn).generators()) {
        Vec v = amb2->zero_vec();
        v[0] = g[0];
        node2.add(v, Clip::Error);
    }
    if (q == 0) {
        for (const Vec& g : pole_space(p, r_w, 1, r, wn).generators()) {
            Vec v = amb2->zero_vec();
            v[1] = g[0];
            node2.add(v, Clip::Error);
        }
    }
    const WindowModule ker1 = kernel(M, amb2, phi);
    add_equal(rep, "exact at W_{n+r}" + t, "exactness at the second term", ker1, im1, "ker", "im");

    const WindowModule im2 = image(M, amb2, phi);
    WindowModule ker2 = node2;
    if (q == 0) {
        auto amb3 = Ambient::single(p, n + r_w, 1, w);
        const LinearMap psi = [n](const Vec& v) { return Vec{nf_sub(nf_d(nf_Vs(v[0], n)), nf_Vs(v[1], n))}; };
        ker2 = kernel(node2, amb3, psi);
    }
    const bool inside = im2.subset_of(node2);
    rep.add("image lands in the pole sum" + t, "(F^n, F^n d) preserves the modulus", inside,
            {{"im", im2.length()}, {"node", node2.length()}});
    add_equal(rep, "exact at W_r + W_r" + t, "exactness at the third term", ker2, im2, "ker", "im");
    rep.elapsed = timer.seconds();
    return rep;
}

Report verify_zero_side(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    Timer timer;
    const int p = ctx.p, n = ctx.n;
    Report rep;
    rep.config = config_of(ctx, q, r, w);
    rep.suite = "zero";
    const std::string t = " [" + tag(ctx, q, r) + "]";
    const Window wp = w.scaled_up(p, 1), wn = w.scaled_up(p, n);

    // n = 1 support formula
    {
        const WindowModule z1 = zero_space(p, 1, q, r, w);
        WindowModule want(z1.ambient());
        const bool pr = (r % p != 0);
        for (const Key& k : w.keys(p, 1)) {
            bool in;
            if (r == 0)
                in = (q == 0) ? k.j >= 0 : k.j >= 1;
            else if (q == 0)
                in = k.j >= r;
            else
                in = pr ? k.j >= r : k.j >= r + 1;
            if (in) want.add(vec1(single(p, 1, q, k)));
        }
        add_equal(rep, "n=1 zeros support" + t, "zeros at level one are Omega(log D_0)(-D)", z1, want, "zero",
                  "support");
    }

    const WindowModule top = zero_space(p, n + 1, q, r, w);
    const WindowModule mid = zero_space(p, n, q, r, w);
    const LinearMap R1 = on1([](const Form& x) { return nf_R(x); });
    const WindowModule gr = kernel(top, mid.ambient(), R1);

    add_equal(rep, "R surjective on zeros" + t, "restriction of the zero modules", image(top, mid.ambient(), R1), mid,
              "R(top)", "zero_n");
    for (int j = 2; j <= 3; ++j) {
        const WindowModule up = zero_space(p, n + j, q, r, w);
        add_equal(rep, "R^" + std::to_string(j) + " surjective on zeros" + t, "iterated restriction",
                  image(up, mid.ambient(), on1([j](const Form& x) { return nf_Rs(x, j); })), mid, "R^j(up)",
                  "zero_n");
    }

    const OmegaBZ obz = omega_bz_zero(ctx, q, r, w);
    const LinearMap Vn = on1([n](const Form& x) { return nf_Vs(x, n); });
    const WindowModule VA0 = image(obz.A0, top.ambient(), Vn);
    rep.add("V^n (Omega/B) inside gr" + t, "first map of the zero-side sequence", VA0.subset_of(gr),
            {{"VA0", VA0.length()}, {"gr", gr.length()}});
    const LinearMap F1 = on1([](const Form& x) { return nf_F(x); });
    const WindowModule kerF = kernel(gr, Ambient::single(p, n, q, wp), F1);
    add_equal(rep, "Ker(F on gr) = V^n(Omega/B)" + t, "exactness in the middle", kerF, VA0, "ker", "VA0");
    if (q == 1) {
        const WindowModule Fgr = image(gr, Ambient::single(p, n, q, wp), F1);
        const WindowModule dVA1 =
            image(obz.A1, Fgr.ambient(), on1([n](const Form& x) { return nf_d(nf_Vs(x, n - 1)); }));
        add_equal(rep, "F(gr) = dV^{n-1}(Omega/Z)" + t, "surjectivity onto the quotient", Fgr, dVA1, "F(gr)", "dVA1");
    }
    const int64_t lb = obz.omega_b_length(), lz = obz.omega_z_length();
    rep.add("len gr = len Omega/B + len Omega/Z" + t, "length accounting of the zero-side sequence",
            gr.length() == lb + lz, {{"gr", gr.length()}, {"Omega/B", lb}, {"Omega/Z", lz}});

    // VdV decomposition
    {
        const WindowModule regq = regular_space(p, 1, q, wn);
        const WindowModule lhs = image(regq, top.ambient(), Vn).intersect(top);
        WindowModule rhs(top.ambient());
        for (int j = 0; j <= n; ++j) {
            const Window wj = w.scaled_up(p, j);
            const WindowModule zj = zero_space(p, n + 1 - j, q, r, wj);
            const WindowModule pj = image(regular_space(p, 1, q, wj), zj.ambient(), on1([n, j](const Form& x) {
                                              Form y = x;
                                              for (int i = 0; i < n - j; ++i) y = nf_pline(y);
                                              return y;
                                          }));
            rhs = rhs.sum(image(zj.intersect(pj), top.ambient(), on1([j](const Form& x) { return nf_Vs(x, j); })));
        }
        add_equal(rep, "VdV zeros (V)" + t, "V^n part of the zeros", lhs, rhs, "lhs", "rhs");
        if (q == 1) {
            const WindowModule reg0 = regular_space(p, 1, 0, wn);
            const WindowModule lhs1 =
                image(reg0, top.ambient(), on1([n](const Form& x) { return nf_d(nf_Vs(x, n)); })).intersect(top);
            WindowModule rhs1(top.ambient());
            for (int j = 0; j <= n; ++j) {
                const Window wj = w.scaled_up(p, j);
                const WindowModule zj = zero_space(p, n + 1 - j, 0, r, wj);
                const WindowModule pj = image(regular_space(p, 1, 0, wj), zj.ambient(), on1([n, j](const Form& x) {
                                                  Form y = x;
                                                  for (int i = 0; i < n - j; ++i) y = nf_pline(y);
                                                  return y;
                                              }));
                rhs1 = rhs1.sum(image(zj.intersect(pj), top.ambient(),
                                      on1([j](const Form& x) { return nf_d(nf_Vs(x, j)); })));
            }
            add_equal(rep, "VdV zeros (dV)" + t, "dV^n part of the zeros", lhs1, rhs1, "lhs", "rhs");
        }
    }

    // exact forms meeting the twisted zero spaces
    if (q == 1) {
        auto check_d = [&](const std::string& name, int k, int64_t d, int64_t e) {
            const WindowModule o0 = twisted_zero_space(p, 0, k, d, e, w);
            const WindowModule o1 = twisted_zero_space(p, 1, k, d, e, w);
            const LinearMap dd = on1([](const Form& x) { return nf_d(x); });
            const WindowModule exact = image(regular_space(p, 1, 0, w), o1.ambient(), dd);
            add_equal(rep, name + t, "exact forms with zeros", exact.intersect(o1), image(o0, o1.ambient(), dd), "cap",
                      "d(zeros)");
        };
        const WindowModule z0 = zero_space(p, 1, 0, r, w), z1 = zero_space(p, 1, 1, r, w);
        const LinearMap dd = on1([](const Form& x) { return nf_d(x); });
        const WindowModule exact = image(regular_space(p, 1, 0, w), z1.ambient(), dd);
        add_equal(rep, "d(O) cap zeros = d(zeros)" + t, "exact forms with zeros", exact.intersect(z1),
                  image(z0, z1.ambient(), dd), "cap", "d(zeros)");
        for (int k = 0; k <= n; ++k) {
            const LocalSplit sp = split_local(p, r, k + 1);
            check_d("dzeros Omega_" + std::to_string(k) + "(-D)", k, r, 0);
            check_d("dzeros Omega_" + std::to_string(k) + "(-D',-pD_top)", k, sp.prime, p * sp.top);
        }
    }

    // p-line^n membership
    {
        const LocalSplit sp = split_local(p, r, n + 1);
        const WindowModule regq = regular_space(p, 1, q, w);
        const WindowModule zt = zero_space(p, n + 1, q, r, w);
        const LinearMap pln = on1([n](const Form& x) {
            Form y = x;
            for (int i = 0; i < n; ++i) y = nf_pline(y);
            return y;
        });
        const WindowModule got = preimage(regq, zt, pln);
        const WindowModule want = twisted_zero_space(p, q, n, sp.prime, p * sp.top, w).intersect(regq);
        add_equal(rep, "p-line^n zeros iff" + t, "p-line^n membership in the zeros", got, want, "preimage", "support");
        // Moreover: R^j surjects on the p-line^n-divisible part
        const WindowModule target = zt.intersect(image(regq, zt.ambient(), pln));
        for (int j = 1; j <= 2; ++j) {
            const WindowModule zj = zero_space(p, n + j + 1, q, r, w);
            const WindowModule regj = regular_space(p, j + 1, q, w);
            const WindowModule src = zj.intersect(image(regj, zj.ambient(), pln));
            add_equal(rep, "R^" + std::to_string(j) + " on p-line^n zeros" + t, "lifting p-line^n divisible zeros",
                      image(src, zt.ambient(), on1([j](const Form& x) { return nf_Rs(x, j); })), target, "R^j",
                      "target");
        }
    }
    rep.elapsed = timer.seconds();
    return rep;
}

Report verify_bn_zn(const PrimeContext& ctx, int q, int64_t r, const Window& w) {
    Timer timer;
    Report rep;
    rep.config = config_of(ctx, q, r, w);
    rep.suite = "bnzn";
    const std::string t = " [" + tag(ctx, q, r) + "]";
    const BZPair own = bn_zn_pole(ctx, q, r, w);
    const BZPair cut = bn_zn_by_intersection(ctx, q, r, w);
    // for q = 0 the right side is the Frobenius-saturated variant; both lengths are reported
    add_equal(rep, "Z_n = j_*Z_n cap pole" + t, "intersection description of Z_n", own.Z, cut.Z, "Z", "j*Z cap");
    if (q == 1)
        add_equal(rep, "B_n = j_*B_n cap pole" + t, "intersection description of B_n", own.B, cut.B, "B", "j*B cap");
    rep.elapsed = timer.seconds();
    return rep;
}

Report verify_zero_cartesian(const PrimeContext& ctx, int64_t r, const Window& w) {
    Timer timer;
    const int p = ctx.p, n = ctx.n;
    Report rep;
    rep.config = config_of(ctx, 1, r, w);
    rep.suite = "zero-cartesian";
    const std::string t = " [" + tag(ctx, 1, r) + "]";
    const WindowModule top = zero_space(p, n + 1, 1, r, w);
    const WindowModule reg0 = regular_space(p, 1, 0, w.scaled_up(p, n));
    const WindowModule dVn = image(reg0, top.ambient(), on1([n](const Form& x) { return nf_d(nf_Vs(x, n)); }));
    const WindowModule cap = dVn.intersect(top);
    const WindowModule pre =
        preimage(dVn, zero_space(p, n, 1, r, w.scaled_up(p, 1)), on1([](const Form& x) { return nf_F(x); }));
    std::string witness;
    if (!pre.subset_of(cap)) {
        for (const Vec& g : pre.generators())
            if (!cap.contains(g)) {
                witness = "F-preimage element outside the zeros: " + to_string(g[0]);
                break;
            }
    }
    rep.add("dV^n cartesian square" + t, "F detects zeros on dV^n", cap.equals(pre),
            {{"cap", cap.length()}, {"F-preimage", pre.length()}}, witness);
    rep.elapsed = timer.seconds();
    return rep;
}

}  // namespace drw
