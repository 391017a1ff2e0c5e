#pragma once

#include "wsbr/certify.hpp"
#include "wsbr/measures.hpp"
#include "wsbr/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wsbr {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitInconclusive = 3 };

int exit_code(Verdict v);

struct RunConfig {
    double kappa = 0.55;
    int terms = kCertTerms;
    int depth = kDefaultDepth;
    std::int64_t samples = 100000;
    std::uint64_t seed = 20240611;
    int bins = kDefaultBins;
    int grid = 1000;
    std::string out_dir = "out";
    std::string format = "csv";

    // Throws ValidityError on non-positive counts or kappa outside [1/2, 1).
    void validate() const;
    Roughness roughness() const { return Roughness::from_kappa(kappa); }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// csv or json
std::string render(const Table& t, const std::string& format);

// Writes content to out_dir/name, creating the directory; returns the path.
std::string write_output(const RunConfig& cfg, const std::string& name, const std::string& content);

// Targets W, S, g, g1, g2, k1..k4, l1..l4; rows (x, lo, hi) on grid + 1 points.
// S uses xi drawn from the seed at the configured depth.
Table cmd_eval(const RunConfig& cfg, const std::string& target, double lo = 0.0, double hi = 1.0);

struct CommandResult {
    nlohmann::json json;
    int exit = kExitPass;
};

// Scopes g-roots, k, l, cases, kappa, kappa0; case_id 0 means all rows.
CommandResult cmd_certify(const RunConfig& cfg, const std::string& scope, int case_id = 0);

Table cmd_measure(const RunConfig& cfg, bool restricted);
CommandResult cmd_telescoping(const RunConfig& cfg, int n_max);
// n_max < 0 gives the density of rho_hat, otherwise the telescoped density of rho.
Table cmd_density(const RunConfig& cfg, int n_max);
Table cmd_sbr(const RunConfig& cfg, double x);
Table cmd_l2diag(const RunConfig& cfg, double u_max);
std::vector<std::string> cmd_figures(const RunConfig& cfg, const std::vector<int>& ids);

struct ReportResult {
    std::string text;
    std::string path;
    int exit = kExitPass;
};

ReportResult cmd_report(const RunConfig& cfg, bool quick = false);

}  // namespace wsbr
