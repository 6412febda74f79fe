#include "drwlab/drwlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "duality_engine.hpp"
#include "expr.hpp"
#include "filtrations.hpp"
#include "json.hpp"
#include "suites.hpp"

struct drw_config {
    drw::RunConfig cfg;
};

struct drw_form {
    drw::Form form;
};

struct drw_report {
    drw::Report report;
};

namespace {

thread_local std::string g_last_error;

drw_status status_of(drw::ErrorKind k) {
    switch (k) {
        case drw::ErrorKind::Usage: return DRW_ERR_USAGE;
        case drw::ErrorKind::Parse: return DRW_ERR_PARSE;
        case drw::ErrorKind::Degree: return DRW_ERR_DEGREE;
        case drw::ErrorKind::Window: return DRW_ERR_WINDOW;
        case drw::ErrorKind::Domain: return DRW_ERR_DOMAIN;
        case drw::ErrorKind::Resource: return DRW_ERR_RESOURCE;
        case drw::ErrorKind::Context: return DRW_ERR_CONTEXT;
    }
    return DRW_ERR_INTERNAL;
}

template <class Fn>
drw_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DRW_OK;
    } catch (const drw::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DRW_ERR_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DRW_ERR_INTERNAL;
    }
}

drw_status null_arg(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return DRW_ERR_NULL;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

drw::PrimeContext ctx_of(const drw::RunConfig& c) { return drw::PrimeContext(c.p, c.n); }

drw::Window window_of(const drw::RunConfig& c) { return {c.window_min, c.window_max, 0}; }

}  // namespace

extern "C" {

const char* drw_last_error(void) { return g_last_error.c_str(); }

const char* drw_status_name(drw_status s) {
    switch (s) {
        case DRW_OK: return "ok";
        case DRW_ERR_USAGE: return "usage";
        case DRW_ERR_PARSE: return "parse";
        case DRW_ERR_DEGREE: return "degree";
        case DRW_ERR_WINDOW: return "window";
        case DRW_ERR_DOMAIN: return "domain";
        case DRW_ERR_RESOURCE: return "resource";
        case DRW_ERR_CONTEXT: return "context";
        case DRW_ERR_NULL: return "null";
        case DRW_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* drw_version(void) { return "0.1.0"; }

void drw_string_free(char* s) { std::free(s); }

drw_status drw_config_new(int p, int n, drw_config** out) {
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        drw::PrimeContext check(p, n);
        auto* c = new drw_config;
        c->cfg.p = p;
        c->cfg.n = n;
        *out = c;
    });
}

void drw_config_free(drw_config* cfg) { delete cfg; }

drw_status drw_config_set_window(drw_config* cfg, int64_t lo, int64_t hi) {
    if (!cfg) return null_arg("cfg");
    return guarded([&] {
        if (lo > hi) drw::fail(drw::ErrorKind::Window, "window minimum exceeds maximum");
        if (lo > 0 || hi < 0) drw::fail(drw::ErrorKind::Window, "window must contain weight 0");
        cfg->cfg.window_min = lo;
        cfg->cfg.window_max = hi;
    });
}

drw_status drw_config_set_r(drw_config* cfg, int64_t r) {
    if (!cfg) return null_arg("cfg");
    return guarded([&] {
        if (r < 0) drw::fail(drw::ErrorKind::Usage, "r must be nonnegative");
        cfg->cfg.r = r;
    });
}

drw_status drw_config_set_q(drw_config* cfg, int q) {
    if (!cfg) return null_arg("cfg");
    return guarded([&] {
        if (q < 0 || q > 1) drw::fail(drw::ErrorKind::Usage, "q must be 0 or 1");
        cfg->cfg.q = q;
    });
}

drw_status drw_config_set_seed(drw_config* cfg, uint64_t seed) {
    if (!cfg) return null_arg("cfg");
    cfg->cfg.seed = seed;
    g_last_error.clear();
    return DRW_OK;
}

drw_status drw_config_set_jobs(drw_config* cfg, int jobs) {
    if (!cfg) return null_arg("cfg");
    return guarded([&] {
        if (jobs < 1) drw::fail(drw::ErrorKind::Usage, "jobs must be at least 1");
        cfg->cfg.jobs = jobs;
    });
}

drw_status drw_form_parse(const drw_config* cfg, const char* src, drw_form** out) {
    if (!cfg) return null_arg("cfg");
    if (!src) return null_arg("src");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new drw_form{drw::parse_form(src, ctx_of(cfg->cfg))}; });
}

void drw_form_free(drw_form* f) { delete f; }

drw_status drw_form_to_string(const drw_form* f, char** out) {
    if (!f) return null_arg("form");
    if (!out) return null_arg("out");
    return guarded([&] { *out = dup(drw::to_string(f->form)); });
}

drw_status drw_form_degree(const drw_form* f, int* out) {
    if (!f) return null_arg("form");
    if (!out) return null_arg("out");
    *out = f->form.q();
    g_last_error.clear();
    return DRW_OK;
}

drw_status drw_form_conductor(const drw_form* f, int64_t* out) {
    if (!f) return null_arg("form");
    if (!out) return null_arg("out");
    return guarded([&] { *out = drw::conductor(f->form); });
}

drw_status drw_form_residue(const drw_form* f, int64_t* out) {
    if (!f) return null_arg("form");
    if (!out) return null_arg("out");
    return guarded([&] { *out = drw::residue(f->form); });
}

drw_status drw_form_equal(const drw_form* a, const drw_form* b, int* out) {
    if (!a || !b) return null_arg("form");
    if (!out) return null_arg("out");
    *out = a->form == b->form ? 1 : 0;
    g_last_error.clear();
    return DRW_OK;
}

drw_status drw_expr_normalize(const char* src, char** out) {
    if (!src) return null_arg("src");
    if (!out) return null_arg("out");
    return guarded([&] { *out = dup(drw::print_expr(*drw::parse_expr(src))); });
}

size_t drw_suite_count(void) { return drw::suite_names().size(); }

const char* drw_suite_name(size_t i) {
    static const std::vector<std::string> names = drw::suite_names();
    return i < names.size() ? names[i].c_str() : nullptr;
}

drw_status drw_run_suite(const drw_config* cfg, const char* suite, drw_report** out) {
    if (!cfg) return null_arg("cfg");
    if (!suite) return null_arg("suite");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new drw_report{drw::run_suite(suite, cfg->cfg)}; });
}

drw_status drw_fil_basis(const drw_config* cfg, const char* kind, int json, char** out) {
    if (!cfg) return null_arg("cfg");
    if (!kind) return null_arg("kind");
    if (!out) return null_arg("out");
    return guarded([&] {
        const auto& c = cfg->cfg;
        drw::FiltrationId id{drw::parse_kind(kind), c.r, c.q, ctx_of(c)};
        const drw::Window w = window_of(c);
        const drw::GeneratorFamily fam = drw::generators(id, w);
        const drw::WindowModule m = drw::window_space(id, w);
        std::vector<std::string> basis;
        for (const drw::Vec& g : m.generators()) basis.push_back(drw::to_string(g[0]));
        if (json) {
            nlohmann::ordered_json j;
            j["kind"] = drw::kind_name(id.kind);
            j["p"] = c.p;
            j["n"] = c.n;
            j["r"] = c.r;
            j["q"] = c.q;
            j["window"] = {c.window_min, c.window_max};
            j["length"] = m.length();
            j["basis"] = basis;
            auto gens = nlohmann::ordered_json::array();
            for (const auto& g : fam) gens.push_back({{"form", drw::to_string(g.form)}, {"recipe", g.recipe}});
            j["generators"] = gens;
            *out = dup(j.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << "# " << drw::kind_name(id.kind) << " r=" << c.r << " q=" << c.q << " p=" << c.p << " n=" << c.n
               << " window=" << c.window_min << ":" << c.window_max << " length=" << m.length()
               << " basis=" << basis.size() << " generators=" << fam.size() << "\n";
            for (const auto& b : basis) os << b << "\n";
            *out = dup(os.str());
        }
    });
}

drw_status drw_duality(const drw_config* cfg, drw_pairing_info* info, drw_report** out) {
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        const auto& c = cfg->cfg;
        drw::LocalDualityResult res = drw::verify_local_duality(ctx_of(c), c.q, c.r, window_of(c));
        res.report.suite = "duality";
        res.report.config = c;
        if (info) {
            info->left_length = res.pairing.left_length;
            info->right_length = res.pairing.right_length;
            info->rank_length = res.pairing.rank_length;
            info->well_defined = res.pairing.well_defined ? 1 : 0;
            info->perfect = res.pairing.perfect ? 1 : 0;
        }
        *out = new drw_report{std::move(res.report)};
    });
}

void drw_report_free(drw_report* r) { delete r; }

drw_status drw_report_passed(const drw_report* r, int* out) {
    if (!r) return null_arg("report");
    if (!out) return null_arg("out");
    *out = r->report.passed() ? 1 : 0;
    g_last_error.clear();
    return DRW_OK;
}

drw_status drw_report_check_count(const drw_report* r, size_t* total, size_t* passed) {
    if (!r) return null_arg("report");
    size_t ok = 0;
    for (const auto& c : r->report.checks) ok += c.pass ? 1 : 0;
    if (total) *total = r->report.checks.size();
    if (passed) *passed = ok;
    g_last_error.clear();
    return DRW_OK;
}

drw_status drw_report_json(const drw_report* r, char** out) {
    if (!r) return null_arg("report");
    if (!out) return null_arg("out");
    return guarded([&] { *out = dup(r->report.to_json()); });
}

drw_status drw_report_text(const drw_report* r, char** out) {
    if (!r) return null_arg("report");
    if (!out) return null_arg("out");
    return guarded([&] { *out = dup(r->report.to_text()); });
}

}  // extern "C"
