#include <random>

#include "doctest.h"
#include "suites.hpp"
#include "witt_core.hpp"

using namespace drw;

namespace {

// ghost components computed directly: w_i = sum_j p^j x_j^{p^{i-j}}
std::vector<ZLaurent> ghost_by_hand(const WittVector<ZLaurentRing>& a) {
    const ZLaurentRing& R = a.ring;
    const int p = a.ctx.p;
    std::vector<ZLaurent> out;
    for (int i = 0; i < a.ctx.n; ++i) {
        ZLaurent acc;
        for (int j = 0; j <= i; ++j) {
            BigInt pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            acc = R.add(acc, R.scale(R.pow(a.coords[j], static_cast<unsigned>(ipow(p, i - j))), pj));
        }
        out.push_back(acc);
    }
    return out;
}

ZLaurent zmono(int64_t c, int64_t e) {
    ZLaurent z;
    z.c[e] = c;
    return z;
}

}  // namespace

TEST_CASE("prime context validation") {
    CHECK_THROWS_AS(PrimeContext(4, 2), Error);
    CHECK_THROWS_AS(PrimeContext(2, 0), Error);
    CHECK_NOTHROW(PrimeContext(3, 4));
}

TEST_CASE("universal polynomials at level one for p = 2") {
    auto polys = build_universal_polys(2, 1);
    REQUIRE(polys.size() == 2);
    const IntPoly x0 = IntPoly::var(0), y0 = IntPoly::var(1), x1 = IntPoly::var(2), y1 = IntPoly::var(3);
    // x0^2 + 2 x1 + y0^2 + 2 y1 = (x0 + y0)^2 + 2 S_1
    CHECK(polys[1]->S == x1 + y1 - x0 * y0);
    // (x0^2 + 2 x1)(y0^2 + 2 y1) = x0^2 y0^2 + 2 P_1
    CHECK(polys[1]->P == x0.pow(2) * y1 + y0.pow(2) * x1 + (x1 * y1).scaled(2));
    // F-coordinates use x_j as variable j
    CHECK(polys[0]->F == IntPoly::var(0).pow(2) + IntPoly::var(1).scaled(2));
}

TEST_CASE("W_n(F_p) agrees with integers mod p^n") {
    for (auto [p, n] : {std::pair{2, 3}, std::pair{3, 2}}) {
        PrimeContext ctx(p, n);
        const int64_t m = ctx.modulus();
        for (int64_t x = 0; x < m; ++x)
            for (int64_t y = 0; y < m; ++y) {
                auto a = int_to_witt(ctx, x), b = int_to_witt(ctx, y);
                CHECK(witt_to_int(a) == x);
                CHECK(witt_to_int(wadd(a, b)) == (x + y) % m);
                CHECK(witt_to_int(wmul(a, b)) == (x * y) % m);
            }
    }
}

TEST_CASE("integer Witt addition and multiplication are additive and multiplicative on ghosts") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int64_t> cd(-3, 3), ed(-2, 2);
    for (int p : {2, 3}) {
        PrimeContext ctx(p, 3);
        ZLaurentRing R{p};
        for (int t = 0; t < 20; ++t) {
            WittVector<ZLaurentRing> a(ctx, R), b(ctx, R);
            for (int i = 0; i < 3; ++i) {
                a.coords[i] = R.add(zmono(cd(rng), ed(rng)), zmono(cd(rng), ed(rng)));
                b.coords[i] = zmono(cd(rng), ed(rng));
                // drop zero coefficients
                for (auto* z : {&a.coords[i], &b.coords[i]})
                    for (auto it = z->c.begin(); it != z->c.end();) it = it->second == 0 ? z->c.erase(it) : std::next(it);
            }
            auto ga = ghost_by_hand(a), gb = ghost_by_hand(b);
            auto gs = ghost_by_hand(wadd(a, b)), gm = ghost_by_hand(wmul(a, b));
            for (int i = 0; i < 3; ++i) {
                CHECK(gs[i] == R.add(ga[i], gb[i]));
                CHECK(gm[i] == R.mul(ga[i], gb[i]));
            }
            CHECK(ghost_oracle(a) == ga);
        }
    }
}

TEST_CASE("Teichmueller ghosts are p-power towers") {
    PrimeContext ctx(2, 3);
    ZLaurentRing R{2};
    auto a = teich(ctx, R, zmono(1, -1));
    auto g = ghost_oracle(a);
    CHECK(g[0] == zmono(1, -1));
    CHECK(g[1] == zmono(1, -2));
    CHECK(g[2] == zmono(1, -4));
}

TEST_CASE("operators on Laurent Witt vectors") {
    std::mt19937_64 rng(3);
    for (int p : {2, 3}) {
        PrimeContext ctx(p, 3);
        for (int t = 0; t < 30; ++t) {
            auto a = random_witt(rng, ctx, 2);
            auto b = random_witt(rng, ctx, 2);
            CHECK(wF(wV(a)) == wscale(p, a));
            CHECK(wR(wV(a)) == wV(wR(a)));
            CHECK(wsub(wadd(a, b), b) == a);
            CHECK(wadd(a, wneg(a)) == WittVector<LaurentRing>(ctx, LaurentRing{p}));
            CHECK(reduce(lift(a)) == a);
        }
    }
}

TEST_CASE("mixed contexts are rejected") {
    LaurentRing R{2};
    WittVector<LaurentRing> a(PrimeContext(2, 2), R), b(PrimeContext(2, 3), R);
    CHECK_THROWS_AS(wadd(a, b), Error);
    CHECK_THROWS_AS(wR(WittVector<LaurentRing>(PrimeContext(2, 1), R)), Error);
}

TEST_CASE("term budget is enforced") {
    const size_t old = term_budget();
    set_term_budget(4);
    try {
        build_universal_polys(7, 2);
        FAIL("budget not enforced");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
    set_term_budget(old);
    CHECK_NOTHROW(build_universal_polys(7, 1));
}
