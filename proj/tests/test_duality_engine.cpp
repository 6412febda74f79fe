#include "doctest.h"
#include "duality_engine.hpp"

using namespace drw;

TEST_CASE("residue pairing of monomials") {
    const int p = 2, n = 2;
    CHECK(pair(dlog_monomial(p, n, 1, 1), nf_teich(p, n, 1, 0)) == 1);
    // [t]^-1 * [t] dlog t = dlog t
    CHECK(pair(nf_teich(p, n, 1, -1), single(p, n, 1, {0, 1})) == 1);
    CHECK(pair(nf_teich(p, n, 1, -1), single(p, n, 1, {0, 2})) == 0);
    // d([t]^-1 [t]^0) has no residue
    CHECK(pair(nf_teich(p, n, 1, 0), nf_d(nf_teich(p, n, 1, -1))) == 0);
    CHECK_THROWS_AS(pair(nf_teich(p, n, 1, 0), nf_teich(p, n, 1, 0)), Error);
    CHECK_THROWS_AS(pair(nf_teich(2, 1, 1, 0), dlog_monomial(2, 2, 1, 1)), Error);
}

TEST_CASE("smallest perfect pairing by hand") {
    // p=2, n=1, r=1: Omega(log)/Omega against O/tO, both of length 1, Gram matrix (1)
    const Window w{-4, 4, 0};
    const int p = 2;
    PairingReport pr = residue_pairing(pole_space(p, 1, 1, 1, w), regular_space(p, 1, 1, w), regular_space(p, 1, 0, w),
                                       zero_space(p, 1, 0, 1, w), 1);
    CHECK(pr.well_defined);
    CHECK(pr.perfect);
    CHECK(pr.left_length == 1);
    CHECK(pr.right_length == 1);
    CHECK(pr.rank_length == 1);
}

TEST_CASE("pairing with a degenerate quotient is not perfect") {
    const Window w{-4, 4, 0};
    const int p = 2;
    // Omega(log)/Omega of length 1 against O/t^2 O of length 2: [t] pairs to zero with dlog t
    PairingReport pr = residue_pairing(pole_space(p, 1, 1, 1, w), regular_space(p, 1, 1, w), regular_space(p, 1, 0, w),
                                       zero_space(p, 1, 0, 2, w), 1);
    CHECK(pr.well_defined);
    CHECK(pr.left_length == 1);
    CHECK(pr.right_length == 2);
    CHECK(pr.rank_length == 1);
    CHECK(pr.right_kernel_length == 1);
    CHECK_FALSE(pr.perfect);
}

TEST_CASE("local duality at p=2, n=2, r=3") {
    LocalDualityResult res = verify_local_duality(PrimeContext(2, 2), 1, 3, Window{-24, 24, 0});
    CHECK(res.report.passed());
    CHECK(res.pairing.perfect);
    CHECK(res.pairing.left_length == 6);
    CHECK(res.pairing.right_length == 6);
}

TEST_CASE("annihilators reproduce both spaces") {
    const Window w{-16, 16, 0};
    for (int p : {2, 3}) {
        PrimeContext ctx(p, 2);
        CHECK(annihilator_space(ctx, {AnnihilatorSide::PoleOfZero, 2, 1, w}).equals(pole_space(p, 2, 1, 2, w)));
        CHECK(annihilator_space(ctx, {AnnihilatorSide::ZeroOfPole, 2, 0, w}).equals(zero_space(p, 2, 0, 2, w)));
    }
}

TEST_CASE("Cartier duality for small n") {
    const Window w{-12, 12, 0};
    for (int n : {0, 1})
        for (int q : {0, 1}) CHECK(verify_cartier_duality(2, n, q, 2, w).report.passed());
}

TEST_CASE("fixed points of 1 - C") {
    for (int n : {1, 2}) {
        Report rep = verify_kernel_one_minus_c(PrimeContext(3, n), Window{-9, 9, 0}, 6);
        CHECK(rep.passed());
    }
    LogHomology h = log_complex_homology(PrimeContext(2, 1), LogSign::Pole, 0, 0, Window{-8, 8, 0});
    CHECK(h.kernel_length == 1);
    CHECK(h.image_in_target);
}
