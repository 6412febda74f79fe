#include "doctest.h"
#include "modulus_spaces.hpp"

using namespace drw;

TEST_CASE("divisor arithmetic") {
    ModulusDivisor a({{"0", 3}, {"1", 0}, {"inf", 2}});
    CHECK(a.points().size() == 2);
    CHECK(a.multiplicity("1") == 0);
    CHECK((a + ModulusDivisor::at_origin(1)).multiplicity("0") == 4);
    CHECK(a.scaled(2).multiplicity("inf") == 4);
    CHECK(a.ceil_div(2).multiplicity("0") == 2);
    CHECK(a.floor_div(2).multiplicity("0") == 1);
    CHECK(a.reduced() == ModulusDivisor({{"0", 1}, {"inf", 1}}));
    CHECK_THROWS_AS(ModulusDivisor({{"0", -1}}), Error);
}

TEST_CASE("p-divisibility decomposition") {
    ModulusDivisor e({{"a", 3}, {"b", 4}, {"c", 8}, {"d", 2}});
    auto dec = p_div_decompose(2, e, {1, 2});
    CHECK(dec.prime == ModulusDivisor({{"a", 3}}));
    REQUIRE(dec.parts.size() == 2);
    CHECK(dec.parts[0] == ModulusDivisor({{"d", 1}}));
    CHECK(dec.parts[1] == ModulusDivisor({{"b", 1}, {"c", 2}}));
    CHECK(dec.reconstruct() == e);
    CHECK_THROWS_AS(p_div_decompose(2, e, {2, 2}), Error);
    CHECK_THROWS_AS(p_div_decompose(2, e, {0}), Error);

    CHECK(split_local(2, 12, 2).top == 3);
    CHECK(split_local(2, 12, 2).prime == 0);
    CHECK(split_local(2, 6, 2).prime == 6);
    CHECK(split_local(3, 9, 2).top == 1);
}

TEST_CASE("zeros at level one in degree zero are t^r O") {
    const Window w{-10, 20, 0};
    for (int p : {2, 3})
        for (int64_t r : {1, 2, 3, 4}) {
            WindowModule z = zero_space(p, 1, 0, r, w);
            WindowModule want(z.ambient());
            for (int64_t j = r; j <= 20; ++j) want.add(vec1(single(p, 1, 0, {0, j})));
            CHECK(z.equals(want));
        }
}

TEST_CASE("zero ideal is closed under regular multiplication") {
    const Window w{0, 16, 0};
    const int p = 2, n = 2;
    WindowModule z = zero_space(p, n, 0, 3, w);
    for (const Vec& g : z.generators())
        for (int64_t j = 0; j <= 3; ++j) {
            Form prod = nf_mul0(nf_teich(p, n, 1, j), g[0]);
            bool inside = true;
            for (const auto& [k, c] : prod.terms()) inside = inside && w.contains(p, k) && c != 0;
            if (inside) CHECK(z.contains(vec1(prod)));
        }
}

TEST_CASE("structure verifiers at small configurations") {
    const Window w{-16, 16, 0};
    for (int q : {0, 1}) {
        CHECK(verify_strHWM(PrimeContext(2, 2), q, 3, w).passed());
        CHECK(verify_long_mod_seq(PrimeContext(2, 2), q, 3, 1, w).passed());
        CHECK(verify_zero_side(PrimeContext(2, 2), q, 3, w).passed());
    }
    CHECK(verify_bn_zn(PrimeContext(2, 1), 0, 3, w).passed());
}

TEST_CASE("intersection description reports both lengths") {
    // v_p(r) = n with q = 0 is the recorded open case; the report must carry both lengths
    Report rep = verify_bn_zn(PrimeContext(2, 1), 0, 2, Window{-16, 16, 0});
    REQUIRE_FALSE(rep.checks.empty());
    bool has_lengths = false;
    for (const auto& c : rep.checks) has_lengths = has_lengths || c.lengths.size() >= 2;
    CHECK(has_lengths);
}

TEST_CASE("twisted spaces at d = 0 are the classical cycles") {
    const Window w{-12, 12, 0};
    BZPair own = bn_zn_pole(PrimeContext(2, 1), 1, 0, w);
    BZPair tw = twisted_bz(PrimeContext(2, 1), 1, 0, 0, w);
    CHECK(own.Z.equals(tw.Z));
    CHECK(own.B.equals(tw.B));
}
