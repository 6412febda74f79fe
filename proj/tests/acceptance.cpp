// Runs criteria 1-13 over the configuration sweep and prints one verdict line each.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "suites.hpp"

using namespace drw;

namespace {

struct Job {
    int criterion;
    std::string label;
    std::function<Report()> run;
};

struct Outcome {
    int criterion;
    std::string label;
    Report report;
    std::string error;
};

RunConfig cfg(int p, int n, int64_t r, int q, int64_t w) {
    RunConfig c;
    c.p = p;
    c.n = n;
    c.r = r;
    c.q = q;
    c.window_min = -w;
    c.window_max = w;
    c.seed = 20261014;
    return c;
}

std::string label(const RunConfig& c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "p=%d n=%d r=%lld q=%d", c.p, c.n, static_cast<long long>(c.r), c.q);
    return buf;
}

void add(std::vector<Job>& jobs, int k, const std::string& suite, const RunConfig& c) {
    jobs.push_back({k, suite + " " + label(c), [suite, c] { return run_suite(suite, c); }});
}

std::vector<Job> build_jobs() {
    std::vector<Job> jobs;
    const int ps[] = {2, 3};
    for (int p : ps) {
        for (int n = 1; n <= 4; ++n) {
            RunConfig c = cfg(p, n, 0, 0, 48);
            jobs.push_back({1, "witt " + label(c), [c] { return suite_witt(c, 500); }});
        }
        for (int n = 1; n <= 3; ++n)
            for (int q : {0, 1}) {
                RunConfig c = cfg(p, n, 0, q, 48);
                jobs.push_back({2, "relations " + label(c), [c] { return suite_relations(c, 1000); }});
                jobs.push_back({3, "filp " + label(c), [c] { return suite_filp(c); }});
                jobs.push_back({7, "conductor " + label(c), [c] { return suite_conductor(c, 200); }});
            }
        for (int n = 1; n <= 3; ++n)
            for (int q : {0, 1})
                for (int64_t r = 0; r <= 10; ++r) {
                    RunConfig c = cfg(p, n, r, q, 48);
                    jobs.push_back({4, "rfil " + label(c), [c] { return suite_rfil(c); }});
                    if (n == 1) jobs.push_back({5, "n1 " + label(c), [c] { return suite_n1(c); }});
                    if (r <= 8) jobs.push_back({6, "fvr " + label(c), [c] { return suite_fvr(c); }});
                }
        for (int n = 1; n <= 3; ++n)
            for (int q : {0, 1})
                for (int64_t r = 0; r <= 8; ++r) {
                    add(jobs, 8, "duality", cfg(p, n, r, q, 48));
                    add(jobs, 9, "strhwm", cfg(p, n, r, q, 48));
                    add(jobs, 9, "longmod", cfg(p, n, r, q, 48));
                    add(jobs, 10, "zero", cfg(p, n, r, q, 48));
                    // char covers both degrees in one run
                    if (r >= 2 && q == 0) add(jobs, 12, "char", cfg(p, n, r, q, 48));
                }
        for (int n = 0; n <= 2; ++n)
            for (int q : {0, 1})
                for (int64_t r = 0; r <= 6; ++r) add(jobs, 11, "cartier", cfg(p, n, r, q, 48));
        for (int n = 1; n <= 4; ++n) add(jobs, 13, "kerc", cfg(p, n, 0, 0, 48));
    }
    return jobs;
}

const char* const titles[] = {"",
                              "Witt ghost oracle and ring axioms",
                              "operator relations",
                              "FilP_0 and FilP_1",
                              "restriction of FilP",
                              "n = 1 closed form",
                              "F, V, R stability and p_ identity",
                              "conductor axioms",
                              "local duality",
                              "structure exactness",
                              "zero side",
                              "Cartier duality",
                              "graded injectivity and exactness",
                              "fixed points of 1 - C"};

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    std::vector<Job> jobs = build_jobs();
    // heavy jobs first so the tail of the queue is short
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        auto weight = [](const Job& j) { return j.criterion == 8 || j.criterion == 9 || j.criterion == 12; };
        return weight(a) > weight(b);
    });

    std::vector<Outcome> out(jobs.size());
    std::atomic<size_t> next{0};
    const unsigned workers = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < jobs.size(); i = next++) {
                out[i].criterion = jobs[i].criterion;
                out[i].label = jobs[i].label;
                try {
                    out[i].report = jobs[i].run();
                } catch (const std::exception& e) {
                    out[i].error = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();

    std::map<int, std::vector<const Outcome*>> by;
    for (const auto& o : out) by[o.criterion].push_back(&o);
    int failed = 0;
    for (int k = 1; k <= 13; ++k) {
        size_t runs = 0, checks = 0;
        std::vector<std::string> bad;
        for (const Outcome* o : by[k]) {
            ++runs;
            checks += o->report.checks.size();
            if (!o->error.empty()) {
                bad.push_back(o->label + ": error " + o->error);
                continue;
            }
            for (const Check& c : o->report.checks)
                if (!c.pass) bad.push_back(o->label + ": " + c.name + (c.witness.empty() ? "" : " [" + c.witness + "]"));
        }
        const bool ok = bad.empty() && runs > 0;
        failed += !ok;
        std::printf("%s criterion %d: %s (%zu configurations, %zu checks", ok ? "PASS" : "FAIL", k, titles[k], runs,
                    checks);
        if (!ok) std::printf(", %zu failing", bad.size());
        std::printf(")\n");
        for (size_t i = 0; i < bad.size() && i < 6; ++i) std::printf("    %s\n", bad[i].c_str());
        if (bad.size() > 6) std::printf("    ... %zu more\n", bad.size() - 6);
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("%d of 13 criteria failed, %.1f s on %u threads\n", failed, secs, workers);
    return failed ? 1 : 0;
}
