#include "drw_forms.hpp"

#include <algorithm>
#include <sstream>

namespace drw {

namespace {

__int128 p_pow128(int p, int e) {
    __int128 r = 1;
    while (e-- > 0) r *= p;
    return r;
}

}  // namespace

int compare_weight(int p, const WeightQ& a, const WeightQ& b) {
    int e = std::max(a.e, b.e);
    __int128 x = static_cast<__int128>(a.num) * p_pow128(p, e - a.e);
    __int128 y = static_cast<__int128>(b.num) * p_pow128(p, e - b.e);
    return x < y ? -1 : (x > y ? 1 : 0);
}

WeightQ key_weight(const Key& k) { return {k.j, k.s}; }

std::string weight_to_string(int p, const WeightQ& w) {
    if (w.e == 0) return std::to_string(w.num);
    return std::to_string(w.num) + "/" + std::to_string(ipow(p, w.e));
}

bool Window::contains_weight(int p, const WeightQ& w) const {
    return compare_weight(p, {lo, e}, w) <= 0 && compare_weight(p, w, {hi, e}) <= 0;
}

bool Window::contains(int p, const Key& k) const { return contains_weight(p, key_weight(k)); }

Window Window::scaled_up(int p, int k) const {
    if (e >= k) return {lo, hi, e - k};
    int64_t f = ipow(p, k - e);
    return {lo * f, hi * f, 0};
}

std::vector<Key> Window::keys(int p, int n) const {
    std::vector<Key> out;
    for (int s = 0; s < n; ++s) {
        // j / p^s in [lo / p^e, hi / p^e]
        int64_t ps = ipow(p, s), pe = ipow(p, e);
        int64_t jmin = ceil_div(lo * ps, pe), jmax = floor_div(hi * ps, pe);
        for (int64_t j = jmin; j <= jmax; ++j) {
            if (s > 0 && j % p == 0) continue;
            out.push_back({s, j});
        }
    }
    return out;
}

std::string Window::to_string(int p) const {
    return "[" + weight_to_string(p, {lo, e}) + ", " + weight_to_string(p, {hi, e}) + "]";
}

Window window_hull(int p, const Window& a, const Window& b) {
    int e = std::max(a.e, b.e);
    Window x = a.scaled_down(p, e - a.e);
    Window y = b.scaled_down(p, e - b.e);
    x.lo *= ipow(p, e - a.e);
    x.hi *= ipow(p, e - a.e);
    y.lo *= ipow(p, e - b.e);
    y.hi *= ipow(p, e - b.e);
    return {std::min(x.lo, y.lo), std::max(x.hi, y.hi), e};
}

Form::Form(int p, int n, int q) : p_(p), n_(n), q_(q) {
    if (n < 0) fail(ErrorKind::Context, "negative level");
    if (q < 0 || q > 1) fail(ErrorKind::Degree, "only degrees 0 and 1 are nonzero in one variable");
}

int64_t Form::modulus(const Key& k) const { return k.s >= n_ ? 1 : ipow(p_, n_ - k.s); }

int64_t Form::coeff(const Key& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? 0 : it->second;
}

void Form::add_term(const Key& k, int64_t c) {
    int64_t m = modulus(k);
    if (m <= 1) return;
    int64_t v = mod(coeff(k) + mod(c, m), m);
    if (v)
        c_[k] = v;
    else
        c_.erase(k);
}

void Form::add_V(int s, int64_t J, int64_t c) {
    int64_t top = ipow(p_, n_);
    c = mod(c, top);
    while (s > 0 && J % p_ == 0) {
        J /= p_;
        c = mulmod(c, p_, top);
        --s;
    }
    if (s == 0) {
        add_term({0, J}, c);
        return;
    }
    if (s >= n_) return;
    if (q_ == 0) {
        add_term({s, J}, c);
    } else {
        int64_t m = ipow(p_, n_ - s);
        add_term({s, J}, mulmod(mulmod(ipow(p_, s), c, m), invmod(mod(J, m), m), m));
    }
}

Form single(int p, int n, int q, const Key& k, int64_t c) {
    Form f(p, n, q);
    f.add_term(k, c);
    return f;
}

namespace {

void check_compatible(const Form& x, const Form& y) {
    if (x.p() != y.p() || x.n() != y.n()) fail(ErrorKind::Context, "forms live at different (p, n)");
}

}  // namespace

Form nf_add(const Form& x, const Form& y) {
    check_compatible(x, y);
    if (x.q() != y.q()) fail(ErrorKind::Degree, "cannot add forms of different degree");
    Form out = x;
    for (const auto& [k, c] : y.terms()) out.add_term(k, c);
    return out;
}

Form nf_scale(const Form& x, int64_t c) {
    Form out(x.p(), x.n(), x.q());
    for (const auto& [k, v] : x.terms()) out.add_term(k, mulmod(v, c, x.modulus(k)));
    return out;
}

Form nf_sub(const Form& x, const Form& y) { return nf_add(x, nf_scale(y, -1)); }

Form nf_F(const Form& x) {
    if (x.n() < 1) fail(ErrorKind::Context, "F needs level at least 1");
    const int p = x.p();
    Form out(p, x.n() - 1, x.q());
    for (const auto& [k, c] : x.terms()) {
        if (k.s == 0) {
            out.add_term({0, p * k.j}, c);
        } else if (x.q() == 0) {
            out.add_V(k.s - 1, k.j, mulmod(c, p, x.modulus(k) * p));
        } else if (k.s == 1) {
            out.add_term({0, k.j}, mulmod(mod(k.j, x.modulus(k)), c, x.modulus(k)));
        } else {
            out.add_term({k.s - 1, k.j}, c);
        }
    }
    return out;
}

Form nf_V(const Form& x) {
    const int p = x.p();
    Form out(p, x.n() + 1, x.q());
    for (const auto& [k, c] : x.terms()) {
        if (k.s == 0)
            out.add_V(1, k.j, c);
        else if (x.q() == 0)
            out.add_term({k.s + 1, k.j}, c);
        else
            out.add_term({k.s + 1, k.j}, c * p);
    }
    return out;
}

Form nf_R(const Form& x) {
    if (x.n() < 1) fail(ErrorKind::Context, "R needs level at least 1");
    Form out(x.p(), x.n() - 1, x.q());
    for (const auto& [k, c] : x.terms()) out.add_term(k, c);
    return out;
}

Form nf_pline(const Form& x) {
    Form out(x.p(), x.n() + 1, x.q());
    for (const auto& [k, c] : x.terms()) out.add_term(k, c * x.p());
    return out;
}

Form nf_Fs(const Form& x, int s) {
    Form a = x;
    for (int t = 0; t < s; ++t) a = nf_F(a);
    return a;
}

Form nf_Vs(const Form& x, int s) {
    Form a = x;
    for (int t = 0; t < s; ++t) a = nf_V(a);
    return a;
}

Form nf_Rs(const Form& x, int s) {
    Form a = x;
    for (int t = 0; t < s; ++t) a = nf_R(a);
    return a;
}

Form nf_d(const Form& x) {
    if (x.q() != 0) fail(ErrorKind::Degree, "d of a 1-form lands in degree 2");
    Form out(x.p(), x.n(), 1);
    for (const auto& [k, c] : x.terms()) {
        if (k.s == 0)
            out.add_term(k, mulmod(mod(k.j, x.modulus(k)), c, x.modulus(k)));
        else
            out.add_term(k, c);
    }
    return out;
}

Form nf_times_dlog(const Form& x) {
    if (x.q() != 0) fail(ErrorKind::Degree, "dlog t times a 1-form lands in degree 2");
    Form out(x.p(), x.n(), 1);
    for (const auto& [k, c] : x.terms()) {
        if (k.s == 0)
            out.add_term(k, c);
        else
            out.add_V(k.s, k.j, c);
    }
    return out;
}

namespace {

void mul_basis00(Form& out, Key k1, int64_t c1, Key k2, int64_t c2) {
    const int p = out.p();
    const int64_t top = ipow(p, out.n());
    if (k1.s > 0 && k2.s == 0) {
        std::swap(k1, k2);
        std::swap(c1, c2);
    }
    int64_t cc = mulmod(c1, c2, top);
    if (k1.s == 0 && k2.s == 0) {
        out.add_term({0, k1.j + k2.j}, cc);
        return;
    }
    if (k1.s == 0) {
        out.add_V(k2.s, ipow(p, k2.s) * k1.j + k2.j, cc);
        return;
    }
    if (k1.s > k2.s) std::swap(k1, k2);
    out.add_V(k2.s, ipow(p, k2.s - k1.s) * k1.j + k2.j, mulmod(ipow(p, k1.s), cc, top));
}

}  // namespace

Form nf_mul0(const Form& a, const Form& b) {
    check_compatible(a, b);
    if (a.q() != 0 || b.q() != 0) fail(ErrorKind::Degree, "nf_mul0 expects two 0-forms");
    Form out(a.p(), a.n(), 0);
    for (const auto& [k1, c1] : a.terms())
        for (const auto& [k2, c2] : b.terms()) mul_basis00(out, k1, c1, k2, c2);
    return out;
}

namespace {

// V^a(c0[t]^u) * (c1[t]^k dlog t) or V^a(c0[t]^u) * dV^s(c1[t]^j), accumulated into out.
void mul_basis01(Form& out, const Key& k0, int64_t c0, const Key& k1, int64_t c1) {
    const int p = out.p(), n = out.n();
    const int64_t top = ipow(p, n);
    const int64_t cc = mulmod(c0, c1, top);
    const int a = k0.s;
    const int64_t u = k0.j;
    if (k1.s == 0) {
        out.add_V(a, u + ipow(p, a) * k1.j, cc);
        return;
    }
    const int s = k1.s;
    const int64_t j = k1.j;
    if (a <= s) {
        // V^a([t]^u dV^{s-a}[t]^j), and V^a d V^{s-a} = p^a dV^s
        if (a == s) {
            out.add_V(a, u + j, mulmod(cc, mod(j, top), top));
            return;
        }
        if (s >= n) return;
        const int64_t J = ipow(p, s - a) * u + j;
        const int64_t m = ipow(p, n - s);
        int64_t f = mulmod(mod(j, m), invmod(mod(J, m), m), m);
        out.add_term({s, J}, mulmod(mulmod(ipow(p, a) % m, f, m), cc, m));
        return;
    }
    // a > s: x dy = d(xy) - y dx
    Form xy(p, n, 0);
    mul_basis00(xy, k0, 1, {s, j}, 1);
    Form dxy = nf_d(xy);
    for (const auto& [k, c] : dxy.terms()) out.add_term(k, mulmod(c, cc, top));
    mul_basis01(out, {s, j}, mod(-cc, top), {a, u}, 1);
}

}  // namespace

Form nf_mul01(const Form& a, const Form& w) {
    check_compatible(a, w);
    if (a.q() != 0 || w.q() != 1) fail(ErrorKind::Degree, "nf_mul01 expects a 0-form and a 1-form");
    Form out(a.p(), a.n(), 1);
    for (const auto& [k0, c0] : a.terms())
        for (const auto& [k1, c1] : w.terms()) mul_basis01(out, k0, c0, k1, c1);
    return out;
}

Form nf_mul(const Form& a, const Form& b) {
    if (a.q() == 0 && b.q() == 0) return nf_mul0(a, b);
    if (a.q() == 0) return nf_mul01(a, b);
    if (b.q() == 0) return nf_mul01(b, a);
    fail(ErrorKind::Degree, "product of two 1-forms has degree 2");
}

Form nf_teich(int p, int n, int64_t c, int64_t i) {
    Form out(p, n, 0);
    if (n > 0) out.add_term({0, i}, teichmuller_lift(p, n, c));
    return out;
}

Form dlog_monomial(int p, int n, int64_t c, int64_t i) {
    if (mod(c, p) == 0) fail(ErrorKind::Domain, "dlog of zero");
    Form out(p, n, 1);
    out.add_term({0, 0}, i);
    return out;
}

int64_t residue(const Form& w) {
    if (w.q() != 1) fail(ErrorKind::Degree, "residue is defined on 1-forms");
    return w.coeff({0, 0});
}

Form cartier(const Form& w) {
    const int p = w.p(), n = w.n();
    Form out(p, n, w.q());
    for (const auto& [k, c] : w.terms()) {
        if (w.q() == 0) {
            if (k.s == 0 && k.j % p == 0) {
                out.add_term({0, k.j / p}, c);
                continue;
            }
            if (c % p != 0) fail(ErrorKind::Domain, "not in F-image");
            out.add_term({k.s + 1, k.j}, c / p);
        } else if (k.s == 0) {
            if (k.j % p == 0) {
                out.add_term({0, k.j / p}, c);
            } else if (n > 1) {
                int64_t m = ipow(p, n - 1);
                out.add_term({1, k.j}, mulmod(c, invmod(mod(k.j, m), m), m));
            }
        } else {
            out.add_term({k.s + 1, k.j}, c);
        }
    }
    return out;
}

Form inv_cartier(const Form& w) {
    Form lift(w.p(), w.n() + 1, w.q());
    for (const auto& [k, c] : w.terms()) lift.add_term(k, c);
    return nf_F(lift);
}

bool is_regular(const Form& x, bool log_poles) {
    for (const auto& [k, c] : x.terms()) {
        (void)c;
        if (k.s > 0) {
            if (k.j < 0) return false;
        } else if (x.q() == 0 || log_poles) {
            if (k.j < 0) return false;
        } else if (k.j < 1) {
            return false;
        }
    }
    return true;
}

WittVector<LaurentRing> recompose(const Form& x) {
    if (x.q() != 0) fail(ErrorKind::Degree, "raw Witt coordinates exist only for 0-forms");
    const int p = x.p(), n = x.n();
    PrimeContext ctx(p, n);
    LaurentRing ring{p};
    WittVector<LaurentRing> acc(ctx, ring);
    for (const auto& [k, c] : x.terms()) {
        auto digits = int_to_witt(PrimeContext(p, n - k.s), c);
        WittVector<LaurentRing> term(ctx, ring);
        for (int i = 0; i + k.s < n; ++i)
            term.coords[i + k.s] = LaurentPoly::monomial(p, digits.coords[i], k.j * ipow(p, i));
        acc = wadd(acc, term);
    }
    return acc;
}

Form decompose(const WittVector<LaurentRing>& w) {
    const int p = w.ctx.p, n = w.ctx.n;
    Form out(p, n, 0);
    WittVector<LaurentRing> heads(w.ctx, w.ring);
    for (const auto& [e, a] : w.coords[0].coeffs()) {
        out.add_term({0, e}, teichmuller_lift(p, n, a));
        heads = wadd(heads, teich(w.ctx, w.ring, LaurentPoly::monomial(p, a, e)));
    }
    if (n == 1) return out;
    auto rest = wsub(w, heads);
    if (!rest.coords[0].is_zero()) fail(ErrorKind::Domain, "peeling Teichmueller heads left a nonzero first coordinate");
    std::vector<LaurentPoly> tail(rest.coords.begin() + 1, rest.coords.end());
    WittVector<LaurentRing> y(PrimeContext(p, n - 1), w.ring, tail);
    return nf_add(out, nf_V(decompose(y)));
}

bool fil_log_membership(const Form& x, int64_t r) {
    auto w = recompose(x);
    for (int i = 0; i < w.ctx.n; ++i) {
        if (w.coords[i].is_zero()) continue;
        if (ipow(w.ctx.p, w.ctx.n - 1 - i) * w.coords[i].valuation() < -r) return false;
    }
    return true;
}

SupportProfile support_profile(const Form& x) {
    SupportProfile sp;
    const int p = x.p();
    for (const auto& [k, c] : x.terms()) {
        (void)c;
        if (k.s == 0) {
            if (!sp.head)
                sp.head = std::make_pair(k.j, k.j);
            else
                sp.head->second = std::max(sp.head->second, k.j);
        } else {
            auto it = sp.deep.find(k.s);
            if (it == sp.deep.end())
                sp.deep[k.s] = {k.j, k.j};
            else
                it->second.second = std::max(it->second.second, k.j);
        }
        WeightQ w = key_weight(k);
        if (!sp.min_weight || compare_weight(p, w, *sp.min_weight) < 0) sp.min_weight = w;
        if (!sp.max_weight || compare_weight(p, w, *sp.max_weight) > 0) sp.max_weight = w;
    }
    if (sp.min_weight && sp.min_weight->num < 0)
        sp.pole_order = ceil_div(-sp.min_weight->num, ipow(p, sp.min_weight->e));
    return sp;
}

std::string to_string(const Form& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        std::string tj = "T(1," + std::to_string(k.j) + ")";
        if (k.s == 0) {
            if (x.q() == 0)
                os << tj;
            else if (k.j == 0)
                os << "dlogt";
            else
                os << tj << "*dlogt";
        } else {
            os << (x.q() == 0 ? "V^" : "dV^") << k.s << "(" << tj << ")";
        }
    }
    return os.str();
}

}  // namespace drw
