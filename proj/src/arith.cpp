#include "arith.hpp"

namespace drw {

void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int vp(int64_t x, int64_t p, int cap) {
    if (x == 0) return cap;
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

int64_t mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    __int128 r = static_cast<__int128>(mod(a, m)) * mod(b, m);
    return static_cast<int64_t>(r % m);
}

int64_t powmod(int64_t a, int64_t e, int64_t m) {
    int64_t r = 1 % m, b = mod(a, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

int64_t invmod(int64_t a, int64_t m) {
    int64_t g0 = m, g1 = mod(a, m), x0 = 0, x1 = 1;
    while (g1 != 0) {
        int64_t q = g0 / g1;
        int64_t t = g0 - q * g1;
        g0 = g1;
        g1 = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (g0 != 1) fail(ErrorKind::Domain, "element is not invertible");
    return mod(x0, m);
}

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

}  // namespace drw
