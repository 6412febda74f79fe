#include <drwlab/drwlab.h>

#include <string>
#include <thread>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    drw_string_free(s);
    return out;
}

drw_config* config(int p, int n) {
    drw_config* c = nullptr;
    REQUIRE(drw_config_new(p, n, &c) == DRW_OK);
    return c;
}

// the report layout every JSON consumer relies on
void check_schema(const nlohmann::json& j) {
    REQUIRE(j.is_object());
    CHECK(j.contains("config"));
    CHECK(j["config"].contains("p"));
    CHECK(j["config"]["window"].is_array());
    CHECK(j["suite"].is_string());
    REQUIRE(j["checks"].is_array());
    for (const auto& c : j["checks"]) {
        CHECK(c["name"].is_string());
        CHECK(c["paper_ref"].is_string());
        CHECK((c["verdict"] == "pass" || c["verdict"] == "fail"));
        if (c.contains("lengths")) CHECK(c["lengths"].is_object());
        if (c.contains("witness")) CHECK(c["witness"].is_string());
    }
    CHECK(j["elapsed"].is_number());
}

}  // namespace

TEST_CASE("configuration errors") {
    drw_config* c = nullptr;
    CHECK(drw_config_new(4, 2, &c) == DRW_ERR_USAGE);
    CHECK(c == nullptr);
    CHECK(std::string(drw_last_error()).size() > 0);
    CHECK(drw_config_new(2, 0, &c) != DRW_OK);
    CHECK(drw_config_new(2, 2, nullptr) == DRW_ERR_NULL);
    c = config(2, 2);
    CHECK(drw_config_set_window(c, 5, -5) == DRW_ERR_WINDOW);
    CHECK(drw_config_set_q(c, 2) == DRW_ERR_USAGE);
    CHECK(drw_config_set_r(c, -1) == DRW_ERR_USAGE);
    CHECK(drw_config_set_r(c, 3) == DRW_OK);
    CHECK(std::string(drw_last_error()).empty());
    drw_config_free(c);
}

TEST_CASE("forms through the C interface") {
    drw_config* c = config(2, 2);
    drw_form* f = nullptr;
    REQUIRE(drw_form_parse(c, "dlogt", &f) == DRW_OK);
    int64_t cond = -1;
    CHECK(drw_form_conductor(f, &cond) == DRW_OK);
    CHECK(cond == 1);
    int64_t res = -1;
    CHECK(drw_form_residue(f, &res) == DRW_OK);
    CHECK(res == 1);
    int deg = -1;
    CHECK(drw_form_degree(f, &deg) == DRW_OK);
    CHECK(deg == 1);
    char* s = nullptr;
    CHECK(drw_form_to_string(f, &s) == DRW_OK);
    CHECK(take(s) == "dlogt");
    drw_form_free(f);

    drw_form* g = nullptr;
    CHECK(drw_form_parse(c, "V^1(T(1,-2)) + d(T(1,3))*dlogt", &g) == DRW_ERR_DEGREE);
    CHECK(g == nullptr);
    CHECK(drw_form_parse(c, "T(1,", &g) == DRW_ERR_PARSE);
    CHECK(std::string(drw_last_error()).find("column") != std::string::npos);
    drw_form* x = nullptr;
    REQUIRE(drw_form_parse(c, "T(1,0)", &x) == DRW_OK);
    CHECK(drw_form_residue(x, &res) == DRW_ERR_DEGREE);
    drw_form_free(x);

    CHECK(drw_expr_normalize("(T(1,1)+T(1,2))*dlogt", &s) == DRW_OK);
    CHECK(take(s) == "(T(1,1) + T(1,2))*dlogt");
    drw_config_free(c);
}

TEST_CASE("suites and reports") {
    CHECK(drw_suite_count() > 10);
    bool has_strhwm = false;
    for (size_t i = 0; i < drw_suite_count(); ++i) has_strhwm = has_strhwm || std::string(drw_suite_name(i)) == "strhwm";
    CHECK(has_strhwm);
    CHECK(drw_suite_name(1000) == nullptr);

    drw_config* c = config(2, 2);
    drw_config_set_window(c, -24, 24);
    drw_report* r = nullptr;
    REQUIRE(drw_run_suite(c, "strhwm", &r) == DRW_OK);
    int passed = 0;
    CHECK(drw_report_passed(r, &passed) == DRW_OK);
    CHECK(passed == 1);
    size_t total = 0, ok = 0;
    drw_report_check_count(r, &total, &ok);
    CHECK(total == ok);
    char* js = nullptr;
    REQUIRE(drw_report_json(r, &js) == DRW_OK);
    auto j = nlohmann::json::parse(take(js));
    check_schema(j);
    CHECK(j["suite"] == "strhwm");
    char* txt = nullptr;
    REQUIRE(drw_report_text(r, &txt) == DRW_OK);
    const std::string text = take(txt);
    // text and json carry the same verdicts
    size_t fails_text = 0, pos = 0;
    while ((pos = text.find("  FAIL  ", pos)) != std::string::npos) ++fails_text, ++pos;
    size_t fails_json = 0;
    for (const auto& ch : j["checks"]) fails_json += ch["verdict"] == "fail";
    CHECK(fails_text == fails_json);
    drw_report_free(r);

    CHECK(drw_run_suite(c, "no-such-suite", &r) == DRW_ERR_USAGE);
    drw_config_free(c);
}

TEST_CASE("duality and basis listings") {
    drw_config* c = config(2, 2);
    drw_config_set_r(c, 3);
    drw_config_set_q(c, 1);
    drw_config_set_window(c, -24, 24);
    drw_pairing_info info{};
    drw_report* r = nullptr;
    REQUIRE(drw_duality(c, &info, &r) == DRW_OK);
    CHECK(info.perfect == 1);
    CHECK(info.left_length == 6);
    CHECK(info.right_length == 6);
    drw_report_free(r);

    char* s = nullptr;
    REQUIRE(drw_fil_basis(c, "filp", 1, &s) == DRW_OK);
    auto j = nlohmann::json::parse(take(s));
    CHECK(j["length"].get<int64_t>() > 0);
    CHECK(j["basis"].is_array());
    CHECK(drw_fil_basis(c, "bogus", 0, &s) == DRW_ERR_USAGE);
    drw_config_set_window(c, -2, 2);
    CHECK(drw_fil_basis(c, "filp", 0, &s) == DRW_ERR_WINDOW);
    drw_config_free(c);
}

TEST_CASE("last error is per thread") {
    drw_config* c = nullptr;
    CHECK(drw_config_new(6, 1, &c) != DRW_OK);
    std::string other;
    std::thread th([&] {
        drw_config* d = nullptr;
        drw_config_new(2, 1, &d);
        other = drw_last_error();
        drw_config_free(d);
    });
    th.join();
    CHECK(other.empty());
    CHECK_FALSE(std::string(drw_last_error()).empty());
}
