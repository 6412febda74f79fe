#include <random>

#include "doctest.h"
#include "expr.hpp"

using namespace drw;

namespace {

ExprPtr random_expr(std::mt19937_64& rng, int depth, int want_degree) {
    using K = Expr::Kind;
    auto e = std::make_shared<Expr>();
    std::uniform_int_distribution<int> pick(0, 9), small(-5, 5), expo(0, 2);
    if (depth == 0) {
        if (want_degree == 1) {
            if (pick(rng) % 2) {
                e->kind = K::Dlog;
            } else {
                e->kind = K::D;
                e->kids = {random_expr(rng, 0, 0)};
            }
        } else if (pick(rng) % 3 == 0) {
            e->kind = K::Int;
            e->value = small(rng);
        } else {
            e->kind = K::Teich;
            e->value = 1 + pick(rng) % 2;
            e->expo = small(rng);
        }
        return e;
    }
    switch (pick(rng)) {
        case 0:
        case 1:
            e->kind = pick(rng) % 2 ? K::Add : K::Sub;
            e->kids = {random_expr(rng, depth - 1, want_degree), random_expr(rng, depth - 1, want_degree)};
            break;
        case 2:
            e->kind = K::Mul;
            e->kids = {random_expr(rng, depth - 1, 0), random_expr(rng, depth - 1, want_degree)};
            break;
        case 3:
            e->kind = K::V;
            e->value = expo(rng);
            e->kids = {random_expr(rng, depth - 1, want_degree)};
            break;
        case 4:
            e->kind = K::F;
            e->kids = {random_expr(rng, depth - 1, want_degree)};
            break;
        case 5:
            e->kind = K::R;
            e->kids = {random_expr(rng, depth - 1, want_degree)};
            break;
        case 6:
            e->kind = K::PLine;
            e->kids = {random_expr(rng, depth - 1, want_degree)};
            break;
        case 7:
            if (want_degree == 1) {
                e->kind = pick(rng) % 2 ? K::D : K::DV;
                e->value = e->kind == K::DV ? expo(rng) : 0;
                e->kids = {random_expr(rng, depth - 1, 0)};
                break;
            }
            [[fallthrough]];
        default: return random_expr(rng, 0, want_degree);
    }
    return e;
}

}  // namespace

TEST_CASE("grammar examples") {
    PrimeContext ctx(2, 2);
    CHECK(parse_form("T(1,-2)", ctx) == nf_teich(2, 2, 1, -2));
    Form dv = parse_form("dV^1(T(1,3))", ctx);
    CHECK(dv.size() == 1);
    CHECK(dv.coeff({1, 3}) == 1);
    CHECK(parse_form("dlogt", ctx) == dlog_monomial(2, 2, 1, 1));
    CHECK(parse_form("V^1(T(1,-2))", ctx) == nf_V(nf_teich(2, 1, 1, -2)));
    CHECK(parse_form("F(T(1,1))", ctx) == nf_teich(2, 2, 1, 2));
    CHECK(parse_form("p_(T(1,1))", ctx) == nf_scale(nf_teich(2, 2, 1, 1), 2));
    CHECK(parse_form("3 - 3", ctx).is_zero());
    CHECK(parse_form("T(1,2)*dlogt", ctx) == single(2, 2, 1, {0, 2}));
    CHECK(parse_form("d(T(1,1)*T(1,1))", ctx) == parse_form("2*T(1,2)*dlogt", ctx));
}

TEST_CASE("degree errors") {
    try {
        parse_expr("V^1(T(1,-2)) + d(T(1,3))*dlogt");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degree);
        CHECK(std::string(e.what()).find("column 25") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr("T(1,1) + dlogt"), Error);
    CHECK_THROWS_AS(parse_expr("d(dlogt)"), Error);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_expr("T(1,2) +\n  V^1(T(1,3)");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr(""), Error);
    CHECK_THROWS_AS(parse_expr("T(1,2))"), Error);
    CHECK_THROWS_AS(parse_expr("V^-1(T(1,1))"), Error);
    CHECK_THROWS_AS(parse_expr("G(1)"), Error);
}

TEST_CASE("printer round trip") {
    std::mt19937_64 rng(17);
    PrimeContext ctx(3, 2);
    for (int t = 0; t < 300; ++t) {
        ExprPtr e = random_expr(rng, 3, t % 2);
        const std::string once = print_expr(*e);
        ExprPtr back = parse_expr(once);
        CHECK_MESSAGE(same_tree(*e, *back), once);
        CHECK(print_expr(*back) == once);
        CHECK(eval_expr(*e, ctx) == eval_expr(*back, ctx));
    }
    // normal forms print in the grammar
    for (const char* s : {"3*V^1(T(1,5)) + T(1,-2)", "dV^1(T(1,-1)) + 2*T(1,3)*dlogt + dlogt"}) {
        Form f = parse_form(s, ctx);
        CHECK(parse_form(to_string(f), ctx) == f);
    }
}
