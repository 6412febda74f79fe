#include <random>

#include "doctest.h"
#include "drw_forms.hpp"
#include "suites.hpp"

using namespace drw;

TEST_CASE("key normal form and basic values") {
    const int p = 2, n = 2;
    Form x = nf_d(nf_V(nf_teich(p, n - 1, 1, 3)));
    CHECK(x.q() == 1);
    CHECK(x.coeff({1, 3}) == 1);
    CHECK(x.size() == 1);
    // d[t]^3 = 3 [t]^3 dlog t
    CHECK(nf_d(nf_teich(p, n, 1, 3)) == single(p, n, 1, {0, 3}, 3));
    CHECK(residue(dlog_monomial(p, n, 1, 1)) == 1);
    // V([t]^4) = V(F[t]^2) = p [t]^2
    Form v(p, n, 0);
    v.add_V(1, 4, 1);
    CHECK(v == single(p, n, 0, {0, 2}, 2));
}

TEST_CASE("0-form operators agree with Witt vector arithmetic") {
    std::mt19937_64 rng(1);
    for (int p : {2, 3})
        for (int n : {1, 2, 3}) {
            for (int t = 0; t < 40; ++t) {
                Form x = random_form(rng, p, n, 0, 4, 3), y = random_form(rng, p, n, 0, 4, 2);
                Form z = random_form(rng, p, n + 1, 0, 4, 3);
                CHECK(recompose(nf_add(x, y)) == wadd(recompose(x), recompose(y)));
                CHECK(recompose(nf_mul0(x, y)) == wmul(recompose(x), recompose(y)));
                CHECK(recompose(nf_V(x)) == wV(recompose(x)));
                CHECK(recompose(nf_F(z)) == wF(recompose(z)));
                CHECK(recompose(nf_R(z)) == wR(recompose(z)));
                CHECK(decompose(recompose(x)) == x);
            }
        }
}

TEST_CASE("differential relations") {
    std::mt19937_64 rng(2);
    for (int p : {2, 3})
        for (int n : {1, 2, 3})
            for (int t = 0; t < 40; ++t) {
                Form x = random_form(rng, p, n, 0, 5, 3), y = random_form(rng, p, n, 0, 5, 2);
                Form w = random_form(rng, p, n + 1, 1, 5, 3);
                CHECK(nf_F(nf_d(nf_V(x))) == nf_d(x));
                CHECK(nf_V(nf_d(x)) == nf_scale(nf_d(nf_V(x)), p));
                CHECK(nf_d(nf_mul0(x, y)) == nf_add(nf_mul(nf_d(x), y), nf_mul(x, nf_d(y))));
                CHECK(residue(nf_d(x)) == 0);
                CHECK(cartier(nf_F(w)) == nf_R(w));
                CHECK(nf_R(nf_pline(w)) == nf_scale(w, p));
            }
}

TEST_CASE("fil log membership through raw coordinates") {
    // [t^-1] at p=2, n=2: coordinate condition 2 * (-1) >= -r
    Form t1 = nf_teich(2, 2, 1, -1);
    CHECK_FALSE(fil_log_membership(t1, 1));
    CHECK(fil_log_membership(t1, 2));
    CHECK(fil_log_membership(nf_V(nf_teich(2, 1, 1, -2)), 2));
    CHECK(fil_log_membership(nf_teich(2, 2, 1, 5), 0));
}

TEST_CASE("degree and context errors") {
    Form w = dlog_monomial(2, 2, 1, 1);
    CHECK_THROWS_AS(nf_d(w), Error);
    CHECK_THROWS_AS(nf_mul(w, w), Error);
    CHECK_THROWS_AS(nf_add(nf_teich(2, 2, 1, 1), nf_teich(3, 2, 1, 1)), Error);
    CHECK_THROWS_AS(residue(nf_teich(2, 2, 1, 0)), Error);
    try {
        nf_d(w);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degree);
    }
}

TEST_CASE("regular support") {
    CHECK(is_regular(nf_teich(2, 2, 1, 0)));
    CHECK_FALSE(is_regular(dlog_monomial(2, 2, 1, 1)));
    CHECK(is_regular(dlog_monomial(2, 2, 1, 1), true));
    CHECK_FALSE(is_regular(nf_teich(3, 1, 1, -1)));
}
