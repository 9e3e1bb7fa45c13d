#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fns/errors.hpp"

namespace fns {

using Json = nlohmann::json;

/// Knobs shared by every randomized suite.
struct CaseConfig {
    int dim = 2;           // base-chart dimensions cycle through 1..dim
    int coeff_degree = 2;  // max total degree of random coefficients
    int form_degree = 2;   // max form degree of random fields
    int sym_degree = 2;    // max symmetric degree of random fields
    int cases = 25;
    std::uint64_t seed = 20260823;

    Json to_json() const {
        return Json{{"dim", dim},
                    {"coeff_degree", coeff_degree},
                    {"form_degree", form_degree},
                    {"sym_degree", sym_degree},
                    {"cases", cases},
                    {"seed", seed}};
    }
    static CaseConfig from_json(const Json& j) {
        CaseConfig c;
        c.dim = j.at("dim").get<int>();
        c.coeff_degree = j.at("coeff_degree").get<int>();
        c.form_degree = j.at("form_degree").get<int>();
        c.sym_degree = j.at("sym_degree").get<int>();
        c.cases = j.at("cases").get<int>();
        c.seed = j.at("seed").get<std::uint64_t>();
        return c;
    }
};

struct CaseResult {
    std::string id;
    bool pass = false;
    Json witness;  // null when passing; inputs + both sides when not

    Json to_json() const {
        Json j{{"id", id}, {"verdict", pass ? "pass" : "fail"}};
        if (!witness.is_null()) j["witness"] = witness;
        return j;
    }
    static CaseResult from_json(const Json& j) {
        CaseResult r;
        r.id = j.at("id").get<std::string>();
        r.pass = j.at("verdict").get<std::string>() == "pass";
        if (j.contains("witness")) r.witness = j.at("witness");
        return r;
    }
};

struct Report {
    std::string suite;
    CaseConfig config;
    bool expected_failure = false;
    std::vector<CaseResult> cases;
    std::int64_t elapsed_ms = 0;

    int failures() const {
        int n = 0;
        for (const auto& c : cases)
            if (!c.pass) ++n;
        return n;
    }

    /// A normal suite is ok when every case passes; an expected-failure
    /// suite is ok only when at least one case produced a witness.
    bool suite_ok() const { return expected_failure ? failures() > 0 : failures() == 0; }

    Json to_json() const {
        Json arr = Json::array();
        for (const auto& c : cases) arr.push_back(c.to_json());
        return Json{{"suite", suite},
                    {"config", config.to_json()},
                    {"expected_failure", expected_failure},
                    {"cases", arr},
                    {"elapsed_ms", elapsed_ms},
                    {"ok", suite_ok()}};
    }

    static Report from_json(const Json& j) {
        Report r;
        r.suite = j.at("suite").get<std::string>();
        r.config = CaseConfig::from_json(j.at("config"));
        r.expected_failure = j.at("expected_failure").get<bool>();
        for (const auto& c : j.at("cases")) r.cases.push_back(CaseResult::from_json(c));
        r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
        return r;
    }

    std::string to_text() const {
        std::string s = suite;
        s += expected_failure ? " [expected-failure]" : "";
        s += ": ";
        s += std::to_string(static_cast<int>(cases.size()) - failures()) + "/" +
             std::to_string(cases.size()) + " cases pass";
        s += suite_ok() ? " -- OK" : " -- SUITE FAILED";
        s += " (" + std::to_string(elapsed_ms) + " ms)\n";
        for (const auto& c : cases) {
            if (c.pass) continue;
            s += "  " + c.id + ": fail";
            if (!c.witness.is_null()) s += "  witness: " + c.witness.dump();
            s += "\n";
        }
        return s;
    }
};

} // namespace fns
