#pragma once

#include "wsbr/dyadic.hpp"
#include "wsbr/series.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wsbr {

inline constexpr int kDefaultBins = 512;

// Binned Monte Carlo estimate of a pushforward of Lebesgue measure. mass[i]
// estimates the lambda^3 (or lambda) mass of bin i; for a restricted sample
// rejected proposals still count in n_samples.
struct EmpiricalMeasure {
    std::vector<double> bin_edges;
    std::vector<double> mass;
    std::vector<double> stderr_mass;
    std::vector<std::int64_t> counts;
    std::int64_t n_samples = 0;
    std::int64_t n_accepted = 0;
    double total_mass = 0.0;
    double total_mass_stderr = 0.0;
    double half_width = 0.0;  // support [-L, L]
    double mean = 0.0;        // mean of the accepted values
    double mean_stderr = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;

    int bins() const { return static_cast<int>(mass.size()); }
    // Mass between bin coordinates ta <= tb (bin i spans [i, i+1]), linear inside bins.
    double mass_between_coords(double ta, double tb) const;
    double coord(double y) const { return (y + half_width) / (2.0 * half_width) * bins(); }
};

// Draws of S(xi,x) - S(eta,x), (xi,eta,x) uniform; restricted keeps |xi - eta| > 1/2.
EmpiricalMeasure sample_rho(const Roughness& r, std::int64_t n, bool restricted, std::uint64_t seed,
                            int bins = kDefaultBins, int terms = 40);

// Histogram of S(xi,x) over uniform xi, on [-sup_S, sup_S].
EmpiricalMeasure sbr_marginal(double x, const Roughness& r, std::int64_t n, std::uint64_t seed,
                              int bins = kDefaultBins, int terms = kCertTerms);

struct TelescopingReport {
    std::vector<double> bin_lo, bin_hi;
    std::vector<double> lhs, rhs, defect, n0_term;
    double total_lhs = 0.0;
    double total_rhs = 0.0;
    double total_defect = 0.0;
    double tail_bound = 0.0;
    int n_max = 0;
    bool n0_matches = false;
    std::string note;
};

TelescopingReport telescoping_check(const EmpiricalMeasure& rho, const EmpiricalMeasure& rho_hat, const Roughness& r,
                                    int n_max);

// Solutions of S(xi,x) - S(eta,x) = y on [0,1] for a macroscopic pair, using
// the certified shape (one minimum, monotone branches).
std::vector<double> roots_of_f(const BitSequence& xi, const BitSequence& eta, double y, const Roughness& r,
                               double tol);

struct DensityOptions {
    int terms = 40;
    double root_tol = 1e-11;
    double cap = 1e6;  // cap on 1/|f'| per root
    int bin_stride = 1;  // bin masses over [y_{s i}, y_{s (i+1)}]
};

struct DensityEstimate {
    std::vector<double> y_grid;
    std::vector<double> phi;
    std::vector<double> stderr_phi;
    std::vector<double> cap_rate;
    std::string method = "closed_form";
    std::int64_t n_pairs = 0;
    // Integral of the density over consecutive grid intervals (bin_stride of
    // them per bin), from exact preimage lengths.
    std::vector<double> bin_mass;
    std::vector<double> bin_mass_stderr;
    double integral = 0.0;  // trapezoid rule on y_grid
    double integral_stderr = 0.0;
    double tail_bound = 0.0;
};

DensityEstimate density_rho_hat(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs,
                                std::uint64_t seed, const DensityOptions& opt = {});

DensityEstimate density_rho(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs, int n_max,
                            std::uint64_t seed, const DensityOptions& opt = {});

std::complex<double> empirical_char_fn(const std::vector<double>& samples, double u);

struct L2Options {
    int x_slices = 16;
    int bins_log2 = 22;
    int points_per_decade = 4;
    int decades = 4;
    int terms = 40;
};

struct L2Diag {
    std::vector<double> K;
    std::vector<double> l2_partial;
    std::vector<double> stderr_l2;
    std::vector<double> increment;
    double last_decade_ratio = 0.0;
    bool saturated = false;
    // x-averaged L2 norm of the mu_x histogram density under bin refinement
    std::vector<int> refinement_bins;
    std::vector<double> refinement_l2;
    double refinement_last_change = 0.0;
    bool stabilized = false;
    // (f * f)(0) estimated as the K -> infinity limit divided by 2 pi
    double conv_at_zero = 0.0;
};

// K -> int_0^1 int_{-K}^{K} |phi_x(u)|^2 du dx from per-x U-statistics of
// the pairwise differences S(xi,x) - S(xi',x); n samples of xi per x-slice.
L2Diag char_fn_l2_diag(const Roughness& r, double u_max, std::int64_t n, std::uint64_t seed, const L2Options& opt = {});

std::vector<double> uniform_grid(double lo, double hi, int intervals);

}  // namespace wsbr
