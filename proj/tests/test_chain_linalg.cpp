#include <random>
#include <set>

#include "chain_linalg.hpp"
#include "doctest.h"
#include "filtrations.hpp"

using namespace drw;

namespace {

using Dense = std::vector<int64_t>;

// every element of the row span, by closure under adding generators
std::set<Dense> brute_span(const std::vector<Dense>& gens, int cols, int64_t P) {
    std::set<Dense> seen{Dense(cols, 0)};
    std::vector<Dense> frontier{Dense(cols, 0)};
    while (!frontier.empty()) {
        std::vector<Dense> next;
        for (const auto& v : frontier)
            for (const auto& g : gens) {
                Dense w(cols);
                for (int j = 0; j < cols; ++j) w[j] = (v[j] + g[j]) % P;
                if (seen.insert(w).second) next.push_back(w);
            }
        frontier.swap(next);
    }
    return seen;
}

SparseRow sparse(const Dense& d) {
    SparseRow r;
    for (int j = 0; j < static_cast<int>(d.size()); ++j)
        if (d[j]) r.push_back({j, d[j]});
    return r;
}

int64_t log_p(size_t size, int p) {
    int64_t e = 0;
    while (size > 1) {
        size /= p;
        ++e;
    }
    return e;
}

}  // namespace

TEST_CASE("Howell form length and membership against enumeration") {
    std::mt19937_64 rng(5);
    for (auto [p, N] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{2, 3}}) {
        const int64_t P = ipow(p, N);
        std::uniform_int_distribution<int64_t> cd(0, P - 1);
        for (int t = 0; t < 25; ++t) {
            const int cols = 3;
            std::vector<Dense> gens(2 + t % 2, Dense(cols));
            for (auto& g : gens)
                for (auto& x : g) x = cd(rng);
            HowellForm h(p, N);
            for (const auto& g : gens) h.insert(sparse(g));
            const auto span = brute_span(gens, cols, P);
            CHECK(h.length() == log_p(span.size(), p));
            for (int k = 0; k < 10; ++k) {
                Dense v(cols);
                for (auto& x : v) x = cd(rng);
                CHECK(h.contains(sparse(v)) == (span.count(v) == 1));
            }
        }
    }
}

TEST_CASE("Smith normal form certificate") {
    std::mt19937_64 rng(9);
    for (auto [p, N] : {std::pair{2, 3}, std::pair{3, 2}}) {
        const int64_t P = ipow(p, N);
        std::uniform_int_distribution<int64_t> cd(0, P - 1);
        for (int t = 0; t < 30; ++t) {
            DenseMatrix m(2 + t % 3, 3 + t % 2);
            for (auto& x : m.a) x = cd(rng) * (t % 4 == 0 ? p : 1) % P;
            SNFResult s = snf(m, p, N);
            CHECK(mat_mul(mat_mul(s.left, m, P), s.right, P).a == s.diag.a);
            for (size_t i = 0; i + 1 < s.divisors.size(); ++i) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
            for (int i = 0; i < s.diag.rows; ++i)
                for (int j = 0; j < s.diag.cols; ++j)
                    if (i != j) CHECK(s.diag.at(i, j) == 0);
            // length of the row span from the divisors
            std::vector<Dense> rows;
            for (int i = 0; i < m.rows; ++i) rows.emplace_back(m.a.begin() + i * m.cols, m.a.begin() + (i + 1) * m.cols);
            int64_t len = 0;
            for (int64_t d : s.divisors) len += N - vp(d, p, N);
            CHECK(len == log_p(brute_span(rows, m.cols, P).size(), p));
        }
    }
}

TEST_CASE("window module length identities") {
    const int p = 2, n = 2;
    const Window w{-6, 6, 0};
    auto amb = Ambient::single(p, n, 0, w);
    const WindowModule full = WindowModule::full(amb);
    const WindowModule a = filp_space(p, n, 0, 3, w);
    const WindowModule b = filp_space(p, n, 0, 1, w).sum(WindowModule::span(amb, {vec1(nf_teich(p, n, 1, -3))}));
    CHECK(a.length() + b.length() == a.sum(b).length() + a.intersect(b).length());
    CHECK(a.intersect(b).subset_of(a));
    CHECK(a.subset_of(a.sum(b)));
    CHECK(a.quotient_length(a.intersect(b)) == a.length() - a.intersect(b).length());

    // rank-nullity for F on a window
    auto target = Ambient::single(p, n - 1, 0, w.scaled_up(p, 1));
    auto F = [](const Vec& v) { return Vec{nf_F(v[0])}; };
    CHECK(full.length() == image(full, target, F).length() + kernel(full, target, F).length());
}

TEST_CASE("mixed moduli embedding") {
    // level-2 ambient: heads have modulus 4, V-keys modulus 2
    auto amb = Ambient::single(2, 2, 0, Window{0, 1, 1});
    CHECK(amb->N() == 2);
    int64_t total = 0;
    for (int c = 0; c < amb->dim(); ++c) total += amb->col_exp(c);
    CHECK(amb->full_length() == total);
    Form v(2, 2, 0);
    v.add_V(1, 1, 1);
    SparseRow row;
    CHECK(amb->embed(Vec{v}, 2, 0, row));
    CHECK(amb->unembed(row, 2, 0)[0] == v);
}
