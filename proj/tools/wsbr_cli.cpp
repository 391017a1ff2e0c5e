// wsbr: command-line front end for the series, certificates, measures and figures.
#include "wsbr/commands.hpp"
#include "wsbr/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

struct Flags {
    wsbr::RunConfig cfg;
    std::optional<double> kappa, gamma;
};

void add_common(CLI::App* app, Flags& f)
{
    auto* k = app->add_option("--kappa", f.kappa, "kappa = 1/(2 gamma), in [0.5, 1)");
    auto* g = app->add_option("--gamma", f.gamma, "gamma, in (1/2, 1]");
    k->excludes(g);
    app->add_option("--terms", f.cfg.terms, "series terms")->capture_default_str();
    app->add_option("--depth", f.cfg.depth, "digit depth of random sequences")->capture_default_str();
    app->add_option("--samples", f.cfg.samples, "Monte Carlo samples (pairs for density)")->capture_default_str();
    app->add_option("--seed", f.cfg.seed, "random seed")->capture_default_str();
    app->add_option("--bins", f.cfg.bins, "histogram bins / density grid intervals")->capture_default_str();
    app->add_option("--grid", f.cfg.grid, "grid intervals")->capture_default_str();
    app->add_option("--out", f.cfg.out_dir, "output directory, '-' for stdout")->capture_default_str();
    app->add_option("--format", f.cfg.format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
}

void resolve(Flags& f)
{
    if (f.gamma) {
        if (!(*f.gamma > 0.5 && *f.gamma <= 1.0))
            throw wsbr::ValidityError("gamma must lie in (1/2, 1]");
        f.cfg.kappa = 1.0 / (2.0 * *f.gamma);
    } else if (f.kappa) {
        f.cfg.kappa = *f.kappa;
    }
    f.cfg.validate();
}

void emit(const wsbr::RunConfig& cfg, const std::string& name, const std::string& text)
{
    if (cfg.out_dir == "-") {
        std::cout << text;
        return;
    }
    std::cout << wsbr::write_output(cfg, name, text) << '\n';
}

std::string ext(const wsbr::RunConfig& cfg) { return cfg.format == "json" ? ".json" : ".csv"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weierstrass-type attractors: series, certificates, SBR measures"};
    app.require_subcommand(1);
    Flags f;
    if (const char* d = std::getenv("WSBR_OUT_DIR"))
        f.cfg.out_dir = d;

    std::string target = "g";
    std::vector<double> range{0.0, 1.0};
    std::string scope = "kappa";
    int case_id = 0;
    int n_max = -1;
    double u_max = 0.0;
    double x = 0.55;
    std::vector<std::string> which{"all"};
    bool quick = false;

    auto* eval = app.add_subcommand("eval", "tabulate an enclosure (x, lo, hi)");
    add_common(eval, f);
    eval->add_option("--target", target, "W, S, g, g1, g2, k1..k4, l1..l4")->capture_default_str();
    eval->add_option("--range", range, "lo hi")->expected(2);

    auto* cert = app.add_subcommand("certify", "run a certificate, JSON output");
    add_common(cert, f);
    cert->add_option("--scope", scope, "g-roots, k, l, cases, kappa, kappa0")->capture_default_str();
    cert->add_option("--case", case_id, "case row 1..10 (cases scope; 0 = all)");

    auto* meas = app.add_subcommand("measure", "histogram of rho or rho_hat, or the telescoping report");
    add_common(meas, f);
    std::string mtarget = "rho";
    meas->add_option("--target", mtarget, "rho, rho_hat or telescoping")
        ->check(CLI::IsMember({"rho", "rho_hat", "telescoping"}))
        ->capture_default_str();
    meas->add_option("--nmax", n_max, "telescoping truncation");

    auto* dens = app.add_subcommand("density", "closed-form density of rho_hat, or of rho with --nmax");
    add_common(dens, f);
    dens->add_option("--nmax", n_max, "telescoped density of rho truncated at nmax");

    auto* sbr = app.add_subcommand("sbr", "SBR marginal mu_x, or the L2 diagnostic with --umax");
    add_common(sbr, f);
    sbr->add_option("--x", x, "fiber coordinate")->capture_default_str();
    sbr->add_option("--umax", u_max, "run the characteristic-function L2 diagnostic up to this frequency");

    auto* figs = app.add_subcommand("figures", "write SVG figures");
    add_common(figs, f);
    figs->add_option("--which", which, "figure numbers 1..10 or all")->capture_default_str();

    auto* rep = app.add_subcommand("report", "run the acceptance suite and write report.json");
    add_common(rep, f);
    rep->add_flag("--quick", quick, "reduced sample sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wsbr::kExitUsage;
    }

    try {
        resolve(f);
        const wsbr::RunConfig& cfg = f.cfg;
        if (*eval) {
            emit(cfg, "eval_" + target + ext(cfg), wsbr::render(wsbr::cmd_eval(cfg, target, range[0], range[1]), cfg.format));
            return wsbr::kExitPass;
        }
        if (*cert) {
            const wsbr::CommandResult r = wsbr::cmd_certify(cfg, scope, case_id);
            emit(cfg, "certify_" + scope + ".json", r.json.dump(2) + "\n");
            return r.exit;
        }
        if (*meas) {
            if (mtarget == "telescoping") {
                const wsbr::CommandResult r = wsbr::cmd_telescoping(cfg, n_max < 0 ? 40 : n_max);
                emit(cfg, "telescoping.json", r.json.dump(2) + "\n");
                return r.exit;
            }
            emit(cfg, "measure_" + mtarget + ext(cfg),
                 wsbr::render(wsbr::cmd_measure(cfg, mtarget == "rho_hat"), cfg.format));
            return wsbr::kExitPass;
        }
        if (*dens) {
            emit(cfg, std::string(n_max < 0 ? "density_rho_hat" : "density_rho") + ext(cfg),
                 wsbr::render(wsbr::cmd_density(cfg, n_max), cfg.format));
            return wsbr::kExitPass;
        }
        if (*sbr) {
            if (u_max > 0.0)
                emit(cfg, "l2diag" + ext(cfg), wsbr::render(wsbr::cmd_l2diag(cfg, u_max), cfg.format));
            else
                emit(cfg, "sbr" + ext(cfg), wsbr::render(wsbr::cmd_sbr(cfg, x), cfg.format));
            return wsbr::kExitPass;
        }
        if (*figs) {
            std::vector<int> ids;
            for (const std::string& w : which) {
                if (w == "all") {
                    for (int i = 1; i <= 10; ++i)
                        ids.push_back(i);
                } else {
                    ids.push_back(std::stoi(w));
                }
            }
            for (const std::string& p : wsbr::cmd_figures(cfg, ids))
                std::cout << p << '\n';
            return wsbr::kExitPass;
        }
        if (*rep) {
            const wsbr::ReportResult r = wsbr::cmd_report(cfg, quick);
            std::cout << r.path << '\n';
            return r.exit;
        }
    } catch (const wsbr::ValidityError& e) {
        std::cerr << "wsbr: " << e.what() << '\n';
        return wsbr::kExitUsage;
    } catch (const wsbr::DomainError& e) {
        std::cerr << "wsbr: " << e.what() << '\n';
        return wsbr::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "wsbr: bad argument: " << e.what() << '\n';
        return wsbr::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "wsbr: " << e.what() << '\n';
        return wsbr::kExitFail;
    }
    return wsbr::kExitUsage;
}
