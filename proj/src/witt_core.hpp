#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace drw {

using BigInt = boost::multiprecision::cpp_int;

struct PrimeContext {
    int p = 2;
    int n = 1;
    PrimeContext() = default;
    PrimeContext(int p_, int n_);
    bool operator==(const PrimeContext& o) const { return p == o.p && n == o.n; }
    bool operator!=(const PrimeContext& o) const { return !(*this == o); }
    int64_t modulus() const { return ipow(p, n); }
};

// Integer polynomial in sparse monomials; a monomial is a sorted list of (variable, exponent).
class IntPoly {
public:
    using Mono = std::vector<std::pair<uint16_t, uint32_t>>;

    IntPoly() = default;
    static IntPoly var(int v);
    static IntPoly constant(const BigInt& c);

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly scaled(const BigInt& c) const;
    IntPoly pow(unsigned e) const;
    IntPoly divexact(const BigInt& c) const;

    size_t size() const { return terms_.size(); }
    const std::map<Mono, BigInt>& terms() const { return terms_; }
    BigInt coeff(const Mono& m) const;
    bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }

private:
    void add_term(const Mono& m, const BigInt& c);
    void check_budget() const;
    std::map<Mono, BigInt> terms_;
};

// Variables: in S_i, P_i the coordinate x_j is variable 2j and y_j is 2j+1; in F_i x_j is variable j.
struct UniversalLevel {
    IntPoly S, P, F;
};

std::vector<std::shared_ptr<const UniversalLevel>> build_universal_polys(int p, int max_level);
void set_term_budget(size_t terms);
size_t term_budget();

IntPoly ghost_poly(int p, int i, const std::vector<IntPoly>& coords);

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(int p) : p_(p) {}
    static LaurentPoly monomial(int p, int64_t c, int64_t e);
    static LaurentPoly constant(int p, int64_t c) { return monomial(p, c, 0); }

    int prime() const { return p_; }
    int64_t coeff(int64_t e) const;
    void set(int64_t e, int64_t c);
    const std::map<int64_t, int64_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // valuation of 0 is reported as INT64_MAX
    int64_t valuation() const;
    int64_t degree() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly pow(unsigned e) const;
    LaurentPoly frobenius() const;
    bool operator==(const LaurentPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    int p_ = 2;
    std::map<int64_t, int64_t> c_;
};

struct ZLaurent {
    std::map<int64_t, BigInt> c;
    bool operator==(const ZLaurent& o) const { return c == o.c; }
};

struct FpRing {
    using T = int64_t;
    int p = 2;
    T zero() const { return 0; }
    T one() const { return 1 % p; }
    T add(T a, T b) const { return (a + b) % p; }
    T mul(T a, T b) const { return (a * b) % p; }
    T from_int(const BigInt& c) const;
    bool is_zero(T a) const { return a == 0; }
    bool same(const FpRing& o) const { return p == o.p; }
};

struct LaurentRing {
    using T = LaurentPoly;
    int p = 2;
    T zero() const { return LaurentPoly(p); }
    T one() const { return LaurentPoly::constant(p, 1); }
    T add(const T& a, const T& b) const { return a + b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T from_int(const BigInt& c) const;
    bool is_zero(const T& a) const { return a.is_zero(); }
    bool same(const LaurentRing& o) const { return p == o.p; }
};

struct ZLaurentRing {
    using T = ZLaurent;
    int p = 2;
    T zero() const { return {}; }
    T one() const;
    T add(const T& a, const T& b) const;
    T mul(const T& a, const T& b) const;
    T from_int(const BigInt& c) const;
    bool is_zero(const T& a) const { return a.c.empty(); }
    bool same(const ZLaurentRing& o) const { return p == o.p; }
    T pow(const T& a, unsigned e) const;
    T scale(const T& a, const BigInt& s) const;
    T sub(const T& a, const T& b) const;
    T divexact(const T& a, const BigInt& s) const;
};

template <class Ring>
struct WittVector {
    PrimeContext ctx;
    Ring ring;
    std::vector<typename Ring::T> coords;

    WittVector(PrimeContext c, Ring r) : ctx(c), ring(r), coords(c.n, r.zero()) {}
    WittVector(PrimeContext c, Ring r, std::vector<typename Ring::T> xs) : ctx(c), ring(r), coords(std::move(xs)) {
        if (static_cast<int>(coords.size()) != ctx.n) fail(ErrorKind::Context, "Witt vector length differs from n");
    }
    bool operator==(const WittVector& o) const { return ctx == o.ctx && coords == o.coords; }
    bool operator!=(const WittVector& o) const { return !(*this == o); }
};

namespace detail {

template <class Ring>
typename Ring::T eval_poly(const Ring& ring, const IntPoly& f, const std::vector<typename Ring::T>& vals) {
    using T = typename Ring::T;
    std::map<std::pair<int, unsigned>, T> powers;
    auto power = [&](int v, unsigned e) -> const T& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        T r = ring.one(), base = vals[v];
        for (unsigned k = e; k > 0; k >>= 1) {
            if (k & 1u) r = ring.mul(r, base);
            if (k > 1) base = ring.mul(base, base);
        }
        return powers.emplace(key, std::move(r)).first->second;
    };
    T acc = ring.zero();
    for (const auto& [mono, c] : f.terms()) {
        T cf = ring.from_int(c);
        if (ring.is_zero(cf)) continue;
        T term = cf;
        for (const auto& [v, e] : mono) {
            if (v >= vals.size()) fail(ErrorKind::Context, "polynomial variable out of range");
            term = ring.mul(term, power(v, e));
        }
        acc = ring.add(acc, term);
    }
    return acc;
}

template <class Ring>
void check_same(const WittVector<Ring>& a, const WittVector<Ring>& b) {
    if (a.ctx != b.ctx || !a.ring.same(b.ring)) fail(ErrorKind::Context, "Witt vectors live in different contexts");
}

template <class Ring>
std::vector<typename Ring::T> interleave(const WittVector<Ring>& a, const WittVector<Ring>& b) {
    std::vector<typename Ring::T> vals;
    for (int j = 0; j < a.ctx.n; ++j) {
        vals.push_back(a.coords[j]);
        vals.push_back(b.coords[j]);
    }
    return vals;
}

}  // namespace detail

template <class Ring>
WittVector<Ring> wadd(const WittVector<Ring>& a, const WittVector<Ring>& b) {
    detail::check_same(a, b);
    auto polys = build_universal_polys(a.ctx.p, a.ctx.n - 1);
    auto vals = detail::interleave(a, b);
    WittVector<Ring> out(a.ctx, a.ring);
    for (int i = 0; i < a.ctx.n; ++i) out.coords[i] = detail::eval_poly(a.ring, polys[i]->S, vals);
    return out;
}

template <class Ring>
WittVector<Ring> wmul(const WittVector<Ring>& a, const WittVector<Ring>& b) {
    detail::check_same(a, b);
    auto polys = build_universal_polys(a.ctx.p, a.ctx.n - 1);
    auto vals = detail::interleave(a, b);
    WittVector<Ring> out(a.ctx, a.ring);
    for (int i = 0; i < a.ctx.n; ++i) out.coords[i] = detail::eval_poly(a.ring, polys[i]->P, vals);
    return out;
}

template <class Ring>
WittVector<Ring> teich(const PrimeContext& ctx, const Ring& ring, const typename Ring::T& a) {
    WittVector<Ring> out(ctx, ring);
    out.coords[0] = a;
    return out;
}

template <class Ring>
WittVector<Ring> wV(const WittVector<Ring>& a) {
    WittVector<Ring> out(PrimeContext(a.ctx.p, a.ctx.n + 1), a.ring);
    for (int i = 0; i < a.ctx.n; ++i) out.coords[i + 1] = a.coords[i];
    return out;
}

template <class Ring>
WittVector<Ring> wR(const WittVector<Ring>& a) {
    if (a.ctx.n < 2) fail(ErrorKind::Context, "restriction needs length at least 2");
    std::vector<typename Ring::T> xs(a.coords.begin(), a.coords.end() - 1);
    return WittVector<Ring>(PrimeContext(a.ctx.p, a.ctx.n - 1), a.ring, xs);
}

template <class Ring>
WittVector<Ring> wF(const WittVector<Ring>& a) {
    if (a.ctx.n < 2) fail(ErrorKind::Context, "Frobenius needs length at least 2");
    auto polys = build_universal_polys(a.ctx.p, a.ctx.n - 2);
    WittVector<Ring> out(PrimeContext(a.ctx.p, a.ctx.n - 1), a.ring);
    for (int i = 0; i < a.ctx.n - 1; ++i) out.coords[i] = detail::eval_poly(a.ring, polys[i]->F, a.coords);
    return out;
}

std::vector<ZLaurent> ghost_oracle(const WittVector<ZLaurentRing>& a);
// Solve the ghost system for coordinates; every division is exact for genuine ghost vectors.
WittVector<ZLaurentRing> from_ghosts(const PrimeContext& ctx, const std::vector<ZLaurent>& ghosts);
WittVector<ZLaurentRing> lift(const WittVector<LaurentRing>& a);
WittVector<LaurentRing> reduce(const WittVector<ZLaurentRing>& a);

// W_n(F_p) is identified with Z/p^n through x = sum p^i omega(a_i), omega the Teichmueller lift.
int64_t teichmuller_lift(int p, int n, int64_t c);
int64_t witt_to_int(const WittVector<FpRing>& a);
WittVector<FpRing> int_to_witt(const PrimeContext& ctx, int64_t x);
WittVector<FpRing> wadd_fast(const WittVector<FpRing>& a, const WittVector<FpRing>& b);
WittVector<FpRing> wmul_fast(const WittVector<FpRing>& a, const WittVector<FpRing>& b);

WittVector<LaurentRing> wneg(const WittVector<LaurentRing>& a);
WittVector<LaurentRing> wsub(const WittVector<LaurentRing>& a, const WittVector<LaurentRing>& b);
// Scalar from W_n(F_p) acting on a Laurent Witt vector.
WittVector<LaurentRing> wscale(int64_t c, const WittVector<LaurentRing>& a);

}  // namespace drw
