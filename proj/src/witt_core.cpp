#include "witt_core.hpp"

#include <atomic>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace drw {

PrimeContext::PrimeContext(int p_, int n_) : p(p_), n(n_) {
    if (!is_prime(p)) fail(ErrorKind::Usage, "p=" + std::to_string(p) + " is not prime");
    if (n < 1) fail(ErrorKind::Usage, "n must be at least 1");
}

namespace {

std::atomic<size_t> g_budget{2000000};

IntPoly::Mono mono_mul(const IntPoly::Mono& a, const IntPoly::Mono& b) {
    IntPoly::Mono out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void set_term_budget(size_t terms) { g_budget = terms; }
size_t term_budget() { return g_budget; }

IntPoly IntPoly::var(int v) {
    IntPoly out;
    out.terms_[{{static_cast<uint16_t>(v), 1u}}] = 1;
    return out;
}

IntPoly IntPoly::constant(const BigInt& c) {
    IntPoly out;
    if (c != 0) out.terms_[{}] = c;
    return out;
}

void IntPoly::add_term(const Mono& m, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void IntPoly::check_budget() const {
    if (terms_.size() > g_budget)
        fail(ErrorKind::Resource, "universal polynomial exceeds the term budget of " + std::to_string(g_budget.load()));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    out.check_budget();
    return out;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    out.check_budget();
    return out;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    IntPoly out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) out.add_term(mono_mul(m1, m2), c1 * c2);
        out.check_budget();
    }
    return out;
}

IntPoly IntPoly::scaled(const BigInt& c) const {
    IntPoly out;
    if (c == 0) return out;
    for (const auto& [m, x] : terms_) out.terms_[m] = x * c;
    return out;
}

IntPoly IntPoly::pow(unsigned e) const {
    IntPoly result = constant(1), base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

IntPoly IntPoly::divexact(const BigInt& c) const {
    IntPoly out;
    for (const auto& [m, x] : terms_) {
        if (x % c != 0) fail(ErrorKind::Domain, "inexact division in ghost inversion");
        out.terms_[m] = x / c;
    }
    return out;
}

BigInt IntPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
}

IntPoly ghost_poly(int p, int i, const std::vector<IntPoly>& coords) {
    IntPoly w;
    for (int j = 0; j <= i; ++j) w = w + coords[j].pow(static_cast<unsigned>(ipow(p, i - j))).scaled(BigInt(ipow(p, j)));
    return w;
}

namespace {

std::shared_mutex g_cache_mutex;
std::map<int, std::vector<std::shared_ptr<const UniversalLevel>>> g_cache;

IntPoly invert_ghost(int p, int i, const IntPoly& rhs, const std::vector<IntPoly>& lower) {
    IntPoly acc = rhs;
    for (int j = 0; j < i; ++j) acc = acc - lower[j].pow(static_cast<unsigned>(ipow(p, i - j))).scaled(BigInt(ipow(p, j)));
    return acc.divexact(BigInt(ipow(p, i)));
}

std::vector<std::shared_ptr<const UniversalLevel>> compute_levels(int p, int max_level) {
    std::vector<IntPoly> X, Y, Xf, S, P, F;
    for (int j = 0; j <= max_level + 1; ++j) {
        X.push_back(IntPoly::var(2 * j));
        Y.push_back(IntPoly::var(2 * j + 1));
        Xf.push_back(IntPoly::var(j));
    }
    std::vector<std::shared_ptr<const UniversalLevel>> out;
    for (int i = 0; i <= max_level; ++i) {
        IntPoly wx = ghost_poly(p, i, X), wy = ghost_poly(p, i, Y);
        S.push_back(invert_ghost(p, i, wx + wy, S));
        P.push_back(invert_ghost(p, i, wx * wy, P));
        F.push_back(invert_ghost(p, i, ghost_poly(p, i + 1, Xf), F));
        out.push_back(std::make_shared<const UniversalLevel>(UniversalLevel{S.back(), P.back(), F.back()}));
    }
    return out;
}

}  // namespace

std::vector<std::shared_ptr<const UniversalLevel>> build_universal_polys(int p, int max_level) {
    if (max_level < 0) return {};
    {
        std::shared_lock lock(g_cache_mutex);
        auto it = g_cache.find(p);
        if (it != g_cache.end() && static_cast<int>(it->second.size()) > max_level)
            return {it->second.begin(), it->second.begin() + max_level + 1};
    }
    auto fresh = compute_levels(p, max_level);
    std::unique_lock lock(g_cache_mutex);
    auto& slot = g_cache[p];
    if (slot.size() < fresh.size()) slot = fresh;
    return {slot.begin(), slot.begin() + max_level + 1};
}

LaurentPoly LaurentPoly::monomial(int p, int64_t c, int64_t e) {
    LaurentPoly out(p);
    out.set(e, c);
    return out;
}

int64_t LaurentPoly::coeff(int64_t e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
}

void LaurentPoly::set(int64_t e, int64_t c) {
    c = mod(c, p_);
    if (c == 0)
        c_.erase(e);
    else
        c_[e] = c;
}

int64_t LaurentPoly::valuation() const { return c_.empty() ? INT64_MAX : c_.begin()->first; }
int64_t LaurentPoly::degree() const { return c_.empty() ? INT64_MIN : c_.rbegin()->first; }

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.c_) out.set(e, out.coeff(e) + c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.c_) out.set(e, out.coeff(e) - c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    std::map<int64_t, int64_t> acc;
    for (const auto& [e1, c1] : c_)
        for (const auto& [e2, c2] : o.c_) acc[e1 + e2] = (acc[e1 + e2] + c1 * c2) % p_;
    LaurentPoly out(p_);
    for (const auto& [e, c] : acc)
        if (c) out.c_[e] = c;
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly result = constant(p_, 1), base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

LaurentPoly LaurentPoly::frobenius() const {
    LaurentPoly out(p_);
    for (const auto& [e, c] : c_) out.c_[e * p_] = c;
    return out;
}

std::string LaurentPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (e != 0) os << "*t^" << e;
    }
    return os.str();
}

FpRing::T FpRing::from_int(const BigInt& c) const {
    BigInt r = c % p;
    if (r < 0) r += p;
    return static_cast<int64_t>(r);
}

LaurentRing::T LaurentRing::from_int(const BigInt& c) const {
    BigInt r = c % p;
    if (r < 0) r += p;
    return LaurentPoly::constant(p, static_cast<int64_t>(r));
}

ZLaurentRing::T ZLaurentRing::one() const {
    ZLaurent z;
    z.c[0] = 1;
    return z;
}

ZLaurentRing::T ZLaurentRing::add(const T& a, const T& b) const {
    T out = a;
    for (const auto& [e, c] : b.c) {
        BigInt& slot = out.c[e];
        slot += c;
        if (slot == 0) out.c.erase(e);
    }
    return out;
}

ZLaurentRing::T ZLaurentRing::sub(const T& a, const T& b) const { return add(a, scale(b, -1)); }

ZLaurentRing::T ZLaurentRing::mul(const T& a, const T& b) const {
    T out;
    for (const auto& [e1, c1] : a.c)
        for (const auto& [e2, c2] : b.c) out.c[e1 + e2] += c1 * c2;
    for (auto it = out.c.begin(); it != out.c.end();) it = (it->second == 0) ? out.c.erase(it) : std::next(it);
    return out;
}

ZLaurentRing::T ZLaurentRing::from_int(const BigInt& c) const {
    T out;
    if (c != 0) out.c[0] = c;
    return out;
}

ZLaurentRing::T ZLaurentRing::pow(const T& a, unsigned e) const {
    T result = one(), base = a;
    while (e > 0) {
        if (e & 1u) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

ZLaurentRing::T ZLaurentRing::scale(const T& a, const BigInt& s) const {
    T out;
    if (s == 0) return out;
    for (const auto& [e, c] : a.c) out.c[e] = c * s;
    return out;
}

ZLaurentRing::T ZLaurentRing::divexact(const T& a, const BigInt& s) const {
    T out;
    for (const auto& [e, c] : a.c) {
        if (c % s != 0) fail(ErrorKind::Domain, "ghost vector is not in the image of the ghost map");
        out.c[e] = c / s;
    }
    return out;
}

std::vector<ZLaurent> ghost_oracle(const WittVector<ZLaurentRing>& a) {
    const auto& R = a.ring;
    std::vector<ZLaurent> g;
    for (int i = 0; i < a.ctx.n; ++i) {
        ZLaurent w;
        for (int j = 0; j <= i; ++j)
            w = R.add(w, R.scale(R.pow(a.coords[j], static_cast<unsigned>(ipow(a.ctx.p, i - j))), BigInt(ipow(a.ctx.p, j))));
        g.push_back(w);
    }
    return g;
}

WittVector<ZLaurentRing> from_ghosts(const PrimeContext& ctx, const std::vector<ZLaurent>& ghosts) {
    ZLaurentRing R{ctx.p};
    WittVector<ZLaurentRing> out(ctx, R);
    for (int i = 0; i < ctx.n; ++i) {
        ZLaurent acc = ghosts[i];
        for (int j = 0; j < i; ++j)
            acc = R.sub(acc, R.scale(R.pow(out.coords[j], static_cast<unsigned>(ipow(ctx.p, i - j))), BigInt(ipow(ctx.p, j))));
        out.coords[i] = R.divexact(acc, BigInt(ipow(ctx.p, i)));
    }
    return out;
}

WittVector<ZLaurentRing> lift(const WittVector<LaurentRing>& a) {
    ZLaurentRing R{a.ctx.p};
    WittVector<ZLaurentRing> out(a.ctx, R);
    for (int i = 0; i < a.ctx.n; ++i)
        for (const auto& [e, c] : a.coords[i].coeffs()) out.coords[i].c[e] = c;
    return out;
}

WittVector<LaurentRing> reduce(const WittVector<ZLaurentRing>& a) {
    LaurentRing R{a.ctx.p};
    WittVector<LaurentRing> out(a.ctx, R);
    for (int i = 0; i < a.ctx.n; ++i) {
        LaurentPoly f(a.ctx.p);
        for (const auto& [e, c] : a.coords[i].c) {
            BigInt r = c % a.ctx.p;
            f.set(e, static_cast<int64_t>(r));
        }
        out.coords[i] = f;
    }
    return out;
}

int64_t teichmuller_lift(int p, int n, int64_t c) {
    int64_t m = ipow(p, n);
    return powmod(mod(c, p), ipow(p, n - 1), m);
}

int64_t witt_to_int(const WittVector<FpRing>& a) {
    const int p = a.ctx.p, n = a.ctx.n;
    int64_t m = ipow(p, n), x = 0;
    for (int i = 0; i < n; ++i) x = mod(x + ipow(p, i) * teichmuller_lift(p, n, a.coords[i]), m);
    return x;
}

WittVector<FpRing> int_to_witt(const PrimeContext& ctx, int64_t x) {
    WittVector<FpRing> out(ctx, FpRing{ctx.p});
    int64_t m = ctx.modulus();
    x = mod(x, m);
    for (int i = 0; i < ctx.n; ++i) {
        int64_t digit = x % ctx.p;
        out.coords[i] = digit;
        x = mod(x - teichmuller_lift(ctx.p, ctx.n, digit), m);
        x /= ctx.p;
        m /= ctx.p;
    }
    return out;
}

WittVector<FpRing> wadd_fast(const WittVector<FpRing>& a, const WittVector<FpRing>& b) {
    detail::check_same(a, b);
    return int_to_witt(a.ctx, witt_to_int(a) + witt_to_int(b));
}

WittVector<FpRing> wmul_fast(const WittVector<FpRing>& a, const WittVector<FpRing>& b) {
    detail::check_same(a, b);
    return int_to_witt(a.ctx, mulmod(witt_to_int(a), witt_to_int(b), a.ctx.modulus()));
}

WittVector<LaurentRing> wscale(int64_t c, const WittVector<LaurentRing>& a) {
    auto digits = int_to_witt(a.ctx, c);
    WittVector<LaurentRing> s(a.ctx, a.ring);
    for (int i = 0; i < a.ctx.n; ++i) s.coords[i] = LaurentPoly::constant(a.ctx.p, digits.coords[i]);
    return wmul(s, a);
}

WittVector<LaurentRing> wneg(const WittVector<LaurentRing>& a) { return wscale(-1, a); }

WittVector<LaurentRing> wsub(const WittVector<LaurentRing>& a, const WittVector<LaurentRing>& b) {
    return wadd(a, wneg(b));
}

}  // namespace drw
