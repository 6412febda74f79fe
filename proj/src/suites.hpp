#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "drw_forms.hpp"
#include "report.hpp"
#include "witt_core.hpp"

namespace drw {

// Random normal form with `terms` monomials whose weights lie in [-span, span].
Form random_form(std::mt19937_64& rng, int p, int n, int q, int64_t span, int terms);
WittVector<LaurentRing> random_witt(std::mt19937_64& rng, const PrimeContext& ctx, int64_t span);

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
// Runs one suite at one configuration. "all" merges every suite that makes sense for the configuration.
Report run_suite(const std::string& name, const RunConfig& cfg);

// Individual suites, also called by the acceptance harness.
Report suite_witt(const RunConfig& cfg, int samples = 500);
Report suite_relations(const RunConfig& cfg, int samples = 1000);
Report suite_filp(const RunConfig& cfg);
Report suite_rfil(const RunConfig& cfg);
Report suite_n1(const RunConfig& cfg);
Report suite_fvr(const RunConfig& cfg);
Report suite_conductor(const RunConfig& cfg, int samples = 200);
Report suite_char(const RunConfig& cfg);

}  // namespace drw
