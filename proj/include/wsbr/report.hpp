#pragma once

#include "wsbr/certify.hpp"
#include "wsbr/identities.hpp"
#include "wsbr/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wsbr {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json to_json(const BoundedValue& v);
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const Kappa0Estimate& e);
nlohmann::json to_json(const IdentityResult& r);
nlohmann::json to_json(const TelescopingReport& t);

struct AcceptanceConfig {
    std::uint64_t seed = 20240611;
    bool quick = false;  // reduced sample sizes; used by the determinism check
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double budget_seconds = 0.0;
    double seconds = 0.0;  // wall time; kept out of the JSON report
    std::string summary;
    nlohmann::json data;
};

// Runs acceptance criteria 1..11 (all when ids is empty).
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& ids = {});

// Consolidated report: criteria, seeds, version and the telescoping section.
nlohmann::json build_report(const AcceptanceConfig& cfg, const std::vector<CriterionResult>& results);

}  // namespace wsbr
