#include <drwlab/drwlab.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct Options {
    int p = 2;
    int n = 2;
    std::string window = "-48:48";
    int64_t r = 3;
    int q = 1;
    std::string format = "text";
    uint64_t seed = 1;
    int jobs = 1;
};

struct ConfigDeleter {
    void operator()(drw_config* c) const { drw_config_free(c); }
};
struct ReportDeleter {
    void operator()(drw_report* r) const { drw_report_free(r); }
};
struct FormDeleter {
    void operator()(drw_form* f) const { drw_form_free(f); }
};
using ConfigPtr = std::unique_ptr<drw_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<drw_report, ReportDeleter>;
using FormPtr = std::unique_ptr<drw_form, FormDeleter>;

class CallError : public std::runtime_error {
public:
    CallError(drw_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
    drw_status status;
};

void check(drw_status s) {
    if (s != DRW_OK) throw CallError(s, drw_last_error());
}

std::string take(char* s) {
    std::string out = s ? s : "";
    drw_string_free(s);
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void parse_window(const std::string& w, int64_t& lo, int64_t& hi) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) throw CallError(DRW_ERR_USAGE, "window must look like MIN:MAX, got '" + w + "'");
    try {
        size_t used = 0;
        lo = std::stoll(w.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing text");
        const std::string rest = w.substr(colon + 1);
        hi = std::stoll(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing text");
    } catch (const std::logic_error&) {
        throw CallError(DRW_ERR_USAGE, "window must look like MIN:MAX, got '" + w + "'");
    }
}

ConfigPtr make_config(const Options& o) {
    drw_config* raw = nullptr;
    check(drw_config_new(o.p, o.n, &raw));
    ConfigPtr cfg(raw);
    int64_t lo = 0, hi = 0;
    parse_window(o.window, lo, hi);
    check(drw_config_set_window(cfg.get(), lo, hi));
    check(drw_config_set_r(cfg.get(), o.r));
    check(drw_config_set_q(cfg.get(), o.q));
    check(drw_config_set_seed(cfg.get(), o.seed));
    check(drw_config_set_jobs(cfg.get(), o.jobs));
    return cfg;
}

int exit_for(drw_status s) {
    if (s == DRW_ERR_RESOURCE) return kResource;
    return kUsage;
}

int report_error(const Options& o, drw_status s, const std::string& msg) {
    if (o.format == "json")
        std::cout << "{\"error\": {\"kind\": \"" << drw_status_name(s) << "\", \"message\": \"" << json_escape(msg)
                  << "\"}}\n";
    else
        std::cerr << "error[" << drw_status_name(s) << "]: " << msg << "\n";
    return exit_for(s);
}

std::vector<std::string> expand_suites(const std::string& spec) {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_verify(const Options& o, const std::string& suite_spec) {
    ConfigPtr cfg = make_config(o);
    std::vector<std::string> suites = expand_suites(suite_spec);
    if (suites.empty()) throw CallError(DRW_ERR_USAGE, "no suite given");
    if (suites.size() == 1 && suites[0] == "all" && o.jobs > 1) {
        suites.clear();
        for (size_t i = 0; i < drw_suite_count(); ++i) {
            std::string name = drw_suite_name(i);
            if (name == "char" && o.r < 2) continue;
            suites.push_back(name);
        }
    }
    std::sort(suites.begin(), suites.end());

    struct Outcome {
        drw_status status = DRW_OK;
        std::string error;
        ReportPtr report;
    };
    auto run_one = [&cfg](const std::string& name) {
        Outcome out;
        drw_report* raw = nullptr;
        out.status = drw_run_suite(cfg.get(), name.c_str(), &raw);
        if (out.status != DRW_OK) out.error = drw_last_error();
        out.report.reset(raw);
        return out;
    };

    std::vector<Outcome> results(suites.size());
    const size_t width = static_cast<size_t>(std::max(1, o.jobs));
    for (size_t start = 0; start < suites.size(); start += width) {
        std::vector<std::future<Outcome>> batch;
        for (size_t i = start; i < std::min(suites.size(), start + width); ++i)
            batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, run_one, suites[i]));
        for (size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
    }

    for (const auto& r : results)
        if (r.status != DRW_OK) throw CallError(r.status, r.error);

    bool all_pass = true;
    std::vector<std::string> bodies;
    for (const auto& r : results) {
        int passed = 0;
        check(drw_report_passed(r.report.get(), &passed));
        all_pass = all_pass && passed;
        char* s = nullptr;
        check(o.format == "json" ? drw_report_json(r.report.get(), &s) : drw_report_text(r.report.get(), &s));
        bodies.push_back(take(s));
    }
    if (o.format == "json" && bodies.size() > 1) {
        std::cout << "{\"passed\": " << (all_pass ? "true" : "false") << ", \"reports\": [\n";
        for (size_t i = 0; i < bodies.size(); ++i) std::cout << bodies[i] << (i + 1 < bodies.size() ? ",\n" : "\n");
        std::cout << "]}\n";
    } else {
        for (const auto& b : bodies) std::cout << b << (o.format == "json" ? "\n" : "");
    }
    return all_pass ? kPass : kFail;
}

int cmd_conductor(const Options& o, const std::string& expr) {
    ConfigPtr cfg = make_config(o);
    drw_form* raw = nullptr;
    check(drw_form_parse(cfg.get(), expr.c_str(), &raw));
    FormPtr f(raw);
    int64_t c = 0;
    check(drw_form_conductor(f.get(), &c));
    if (o.format == "json") {
        char* s = nullptr;
        check(drw_form_to_string(f.get(), &s));
        std::cout << "{\"expr\": \"" << json_escape(expr) << "\", \"normal_form\": \"" << json_escape(take(s))
                  << "\", \"conductor\": " << c << "}\n";
    } else {
        std::cout << c << "\n";
    }
    return kPass;
}

int cmd_eval(const Options& o, const std::string& expr) {
    ConfigPtr cfg = make_config(o);
    drw_form* raw = nullptr;
    check(drw_form_parse(cfg.get(), expr.c_str(), &raw));
    FormPtr f(raw);
    char* s = nullptr;
    check(drw_form_to_string(f.get(), &s));
    const std::string nf = take(s);
    int degree = 0;
    check(drw_form_degree(f.get(), &degree));
    if (o.format == "json") {
        std::cout << "{\"expr\": \"" << json_escape(expr) << "\", \"normal_form\": \"" << json_escape(nf)
                  << "\", \"degree\": " << degree;
        if (degree == 1) {
            int64_t res = 0;
            check(drw_form_residue(f.get(), &res));
            std::cout << ", \"residue\": " << res;
        }
        std::cout << "}\n";
    } else {
        std::cout << nf << "\n";
    }
    return kPass;
}

int cmd_fil_basis(const Options& o, const std::string& kind) {
    ConfigPtr cfg = make_config(o);
    char* s = nullptr;
    check(drw_fil_basis(cfg.get(), kind.c_str(), o.format == "json", &s));
    std::cout << take(s);
    return kPass;
}

int cmd_duality(const Options& o) {
    ConfigPtr cfg = make_config(o);
    drw_pairing_info info{};
    drw_report* raw = nullptr;
    check(drw_duality(cfg.get(), &info, &raw));
    ReportPtr rep(raw);
    int passed = 0;
    check(drw_report_passed(rep.get(), &passed));
    char* s = nullptr;
    if (o.format == "json") {
        check(drw_report_json(rep.get(), &s));
        std::cout << take(s) << "\n";
    } else {
        check(drw_report_text(rep.get(), &s));
        std::cout << "local duality p=" << o.p << " n=" << o.n << " r=" << o.r << " q=" << o.q << ": "
                  << (info.perfect ? "perfect" : "degenerate") << ", lengths " << info.left_length << "/"
                  << info.right_length << " (rank " << info.rank_length << ")\n"
                  << take(s);
    }
    return passed ? kPass : kFail;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.p, "prime (2 or 3 are exercised)");
    sub->add_option("--n", o.n, "Witt length n >= 1");
    sub->add_option("--window", o.window, "weight window MIN:MAX; write --window=-48:48 for negative bounds");
    sub->add_option("--r", o.r, "multiplicity of the divisor at the origin");
    sub->add_option("--q", o.q, "form degree, 0 or 1");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "seed for sampled suites");
    sub->add_option("--jobs", o.jobs, "parallel suite jobs");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drwlab: de Rham-Witt forms with modulus"};
    app.require_subcommand(1);
    Options o;
    std::string expr, kind = "filp", suite, suite_flag;

    auto* conductor = app.add_subcommand("conductor", "smallest r with the element in FilP_r");
    add_common(conductor, o);
    conductor->add_option("expr", expr, "element expression")->required();

    auto* eval = app.add_subcommand("eval", "normal form of an element expression");
    add_common(eval, o);
    eval->add_option("expr", expr, "element expression")->required();

    auto* fil = app.add_subcommand("fil-basis", "window basis of a filtration step");
    add_common(fil, o);
    fil->add_option("kind", kind, "log, logprime, fil, Fil or filp");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, o);
    verify->add_option("suites", suite, "suite name, comma list, or all");
    verify->add_option("--suite", suite_flag, "suite name, comma list, or all");

    auto* duality = app.add_subcommand("duality", "local residue duality report");
    add_common(duality, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*conductor) return cmd_conductor(o, expr);
        if (*eval) return cmd_eval(o, expr);
        if (*fil) return cmd_fil_basis(o, kind);
        if (*verify) {
            if (!suite_flag.empty()) suite = suite.empty() ? suite_flag : suite + "," + suite_flag;
            if (suite.empty()) throw CallError(DRW_ERR_USAGE, "verify needs a suite name");
            return cmd_verify(o, suite);
        }
        if (*duality) return cmd_duality(o);
    } catch (const CallError& e) {
        return report_error(o, e.status, e.what());
    } catch (const std::bad_alloc&) {
        return report_error(o, DRW_ERR_RESOURCE, "out of memory");
    }
    return kUsage;
}
