#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace drw {

bool Report::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Check& Report::add(std::string name, std::string ref, bool pass, std::map<std::string, int64_t> lengths,
                   std::string witness) {
    checks.push_back(Check{std::move(name), std::move(ref), pass, std::move(lengths), std::move(witness)});
    return checks.back();
}

void Report::merge(const Report& other) {
    for (const auto& c : other.checks) checks.push_back(c);
    elapsed += other.elapsed;
}

std::string Report::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["config"] = {{"p", config.p},
                   {"n", config.n},
                   {"window", {config.window_min, config.window_max}},
                   {"r", config.r},
                   {"q", config.q},
                   {"seed", config.seed},
                   {"jobs", config.jobs}};
    j["suite"] = suite;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["paper_ref"] = c.paper_ref;
        cj["verdict"] = c.pass ? "pass" : "fail";
        if (!c.lengths.empty()) cj["lengths"] = c.lengths;
        if (!c.witness.empty()) cj["witness"] = c.witness;
        arr.push_back(cj);
    }
    j["checks"] = arr;
    j["elapsed"] = elapsed;
    return j.dump(indent);
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "  p=" << config.p << " n=" << config.n << " r=" << config.r << " q=" << config.q
       << " window=" << config.window_min << ":" << config.window_max << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "  pass  " : "  FAIL  ") << c.name;
        if (!c.lengths.empty()) {
            os << "  [";
            bool first = true;
            for (const auto& [k, v] : c.lengths) {
                os << (first ? "" : " ") << k << "=" << v;
                first = false;
            }
            os << "]";
        }
        if (!c.witness.empty()) os << "  witness: " << c.witness;
        os << "\n";
    }
    size_t ok = 0;
    for (const auto& c : checks) ok += c.pass;
    os << (passed() ? "PASS" : "FAIL") << " " << ok << "/" << checks.size() << " checks, " << std::fixed
       << std::setprecision(3) << elapsed << " s\n";
    return os.str();
}

}  // namespace drw
