#include <random>

#include "doctest.h"
#include "filtrations.hpp"
#include "suites.hpp"

using namespace drw;

TEST_CASE("FilP at levels 0 and 1") {
    const Window w{-20, 20, 0};
    for (int p : {2, 3})
        for (int n : {1, 2, 3})
            for (int q : {0, 1}) {
                PrimeContext ctx(p, n);
                CHECK(window_space(FiltrationId{FilKind::FilP, 0, q, ctx}, w).equals(regular_space(p, n, q, w)));
                CHECK(window_space(FiltrationId{FilKind::FilP, 1, q, ctx}, w).equals(regular_space(p, n, q, w, true)));
            }
}

TEST_CASE("FilP_3 for q=1 at p=2, n=1 is t^-2 Omega(log)") {
    const Window w{-10, 10, 0};
    WindowModule m = window_space(FiltrationId{FilKind::FilP, 3, 1, PrimeContext(2, 1)}, w);
    WindowModule want(m.ambient());
    for (int64_t i = -2; i <= 10; ++i) want.add(vec1(single(2, 1, 1, {0, i})));
    CHECK(m.equals(want));
}

TEST_CASE("log filtration matches the coordinate valuation test") {
    std::mt19937_64 rng(4);
    const Window w{-8, 8, 0};
    for (int p : {2, 3})
        for (int n : {1, 2, 3})
            for (int64_t r : {0, 1, 2, 3, 5}) {
                WindowModule m = window_space(FiltrationId{FilKind::Log, r, 0, PrimeContext(p, n)}, w);
                for (int t = 0; t < 15; ++t) {
                    Form x = random_form(rng, p, n, 0, 3, 1);
                    CHECK(m.contains(vec1(x)) == fil_log_membership(x, r));
                }
            }
}

TEST_CASE("p^s fil^log_{(r-1)p^s} = p^s fil^log_{rp^s - 1}") {
    const Window w{-40, 40, 0};
    for (int p : {2, 3})
        for (int n : {2, 3})
            for (int64_t r : {1, 2, 3})
                for (int s = 1; s < n; ++s) {
                    PrimeContext ctx(p, n);
                    const int64_t ps = ipow(p, s);
                    auto scaled = [&](int64_t level) {
                        WindowModule m = window_space(FiltrationId{FilKind::Log, level, 0, ctx}, w);
                        return image(m, m.ambient(), [ps](const Vec& v) { return Vec{nf_scale(v[0], ps)}; });
                    };
                    CHECK(scaled((r - 1) * ps).equals(scaled(r * ps - 1)));
                }
}

TEST_CASE("conductor values") {
    CHECK(conductor(dlog_monomial(2, 2, 1, 1)) == 1);
    CHECK(conductor(nf_teich(2, 2, 1, 3)) == 0);
    // at n = 1 and q = 0, FilP_r has heads down to -(r-1) for p not dividing r and -r otherwise
    CHECK(conductor(nf_teich(2, 1, 1, -1)) == 2);
    CHECK(conductor(nf_teich(3, 1, 1, -1)) == 2);
    CHECK(conductor(nf_teich(3, 1, 1, -3)) == 3);
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(generators(FiltrationId{FilKind::FilP, 10, 0, PrimeContext(2, 2)}, Window{-5, 5, 0}), Error);
    CHECK_THROWS_AS(parse_kind("nope"), Error);
    CHECK(parse_kind("Fil") == FilKind::FilBig);
    CHECK_THROWS_AS(generators(FiltrationId{FilKind::Fil, -1, 0, PrimeContext(2, 2)}, Window{-5, 5, 0}), Error);
}

TEST_CASE("generator recipes are inside the window") {
    const Window w{-12, 12, 0};
    for (FilKind k : {FilKind::Log, FilKind::LogPrime, FilKind::Fil, FilKind::FilBig, FilKind::FilP}) {
        auto fam = generators(FiltrationId{k, 4, 1, PrimeContext(2, 2)}, w);
        CHECK_FALSE(fam.empty());
        for (const auto& g : fam) {
            CHECK_FALSE(g.recipe.empty());
            for (const auto& [key, c] : g.form.terms()) {
                CHECK(c != 0);
                CHECK(w.contains(2, key));
            }
        }
    }
}
