#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace drw {

struct RunConfig {
    int p = 2;
    int n = 2;
    int64_t window_min = -48;
    int64_t window_max = 48;
    int64_t r = 3;
    int q = 1;
    uint64_t seed = 1;
    int jobs = 1;
};

struct Check {
    std::string name;
    std::string paper_ref;
    bool pass = false;
    std::map<std::string, int64_t> lengths;
    std::string witness;
};

struct Report {
    RunConfig config;
    std::string suite;
    std::vector<Check> checks;
    double elapsed = 0.0;

    bool passed() const;
    Check& add(std::string name, std::string ref, bool pass, std::map<std::string, int64_t> lengths = {},
               std::string witness = {});
    void merge(const Report& other);
    std::string to_json(int indent = 2) const;
    std::string to_text() const;
};

}  // namespace drw
