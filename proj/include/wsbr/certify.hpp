#pragma once

#include "wsbr/bounded.hpp"
#include "wsbr/dyadic.hpp"
#include "wsbr/series.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wsbr {

// Parameter ranges stated for the certificates.
inline constexpr double kCertKappaMin = 0.5;
inline constexpr double kCertKappaMax = 0.56;
inline constexpr double kEnvelopeKappaMax = 0.6;

enum class Target { g, g1, g2 };
std::string to_string(Target t);

// Envelope pair for the normalized targets
//   g  -> g / (4 pi),  g1 -> -g' / (4 pi^2),  g2 -> -g'' / (4 pi^3),
// each equal to a two-term trigonometric core plus a remainder R(kappa, x)
// with lower_const <= R <= upper_const.
struct EnvelopePair {
    Target target = Target::g2;
    double kappa = 0.0;
    double lower_const = 0.0;
    double upper_const = 0.0;

    double core(double x) const;
    double lower(double x) const { return core(x) + lower_const; }
    double upper(double x) const { return core(x) + upper_const; }
};

BoundedValue normalized_target(Target t, double x, const Roughness& r, int terms = kCertTerms);

EnvelopePair envelope(Target t, const Roughness& r);

// Remainder constants exactly as printed for the target. For Target::g these
// are not valid bounds; see README.
std::pair<double, double> printed_envelope_constants(Target t, const Roughness& r);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Bisection on certified signs of f. f(lo) and f(hi) must be strictly of
// opposite sign.
Interval bracket_root(const std::function<BoundedValue(double)>& f, double lo, double hi, double tol);

// Root of a closed-form function with a sign change on [lo, hi].
Interval bisect_plain(const std::function<double(double)>& f, double lo, double hi, double tol);

// k_1..k_3 and l_1..l_3 by their series, k_4 and l_4 by g-derivative combinations.
BoundedValue eval_k(int i, double x, const Roughness& r, int terms = kCertTerms);
BoundedValue eval_l(int i, double x, const Roughness& r, int terms = kCertTerms);

// k_3 and l_3 with the phase 3 + x as printed (the identity requires 5/2 + x).
double printed_k3(double x, const Roughness& r, int terms = kCertTerms);
double printed_l3(double x, const Roughness& r, int terms = kCertTerms);

// Upper bound on |k_i'| (family 'k') or |l_i'| (family 'l') over [0,1].
double aux_derivative_bound(char family, int i, const Roughness& r);

enum class Verdict { pass, inconclusive, fail };
std::string to_string(Verdict v);
Verdict combine(Verdict a, Verdict b);

struct Check {
    std::string name;
    double domain_lo = 0.0;
    double domain_hi = 0.0;
    Verdict verdict = Verdict::inconclusive;
    double margin = 0.0;
    bool gating = true;
    std::string note;
};

struct CertConfig {
    int terms = kCertTerms;
    int grid = 1000;  // points per unit length
    int prefix_depth = 5;
};

struct CertificateReport {
    std::string lemma_id;
    double kappa = 0.0;
    CertConfig config;
    std::vector<Check> checks;
    Verdict verdict = Verdict::inconclusive;
    // Verdict of the computation alone, before the parameter-range gate.
    Verdict computed_verdict = Verdict::inconclusive;
    std::string note;

    void finalize();
};

// Grid-plus-modulus certificate of sign(f) = sign on [a, b]. f returns, per
// grid point, a pair [certain, possible]: for sign +1 the margin uses .lo and
// a counterexample needs .hi < 0; for sign -1 the margin uses -.hi and a
// counterexample needs .lo > 0.
Check certify_sign(const std::string& name, const std::function<BoundedValue(double)>& f, double a, double b,
                   double h, double deriv_bound, int sign);

Check point_check(const std::string& name, double x, const BoundedValue& v, int sign);

// The ten case rows.
struct Constraint {
    int value = 0;
    bool at_least = false;
};

struct CaseSpec {
    int id = 0;
    // (xi_{-1}, eta_{-1}, xi_{-2}, eta_{-2})
    std::array<int, 4> digits{};
    Constraint tau2, tau3, sigma1, sigma2;
};

const std::array<CaseSpec, 10>& table1();
const CaseSpec& case_spec(int id);

// A concrete macroscopic pair for the case. tail_choice fills the ">="
// entries among (tau2, tau3, sigma1, sigma2), in that order.
std::pair<JumpTimes, JumpTimes> case_pair(const CaseSpec& c, const std::vector<int>& tail_choice,
                                          int depth = kDefaultDepth);

struct CaseOptions {
    CertConfig config{40, 1000, 5};
    bool enforce_range = true;
};

// Worst-case band of S^(order)(xi,.) - S^(order)(eta,.) over all pairs of the
// case: digits at positions 0..2 fixed by the row, positions 3..prefix_depth-1
// enumerated, later positions bounded analytically.
struct DerivativeBand {
    std::vector<double> x;
    std::vector<double> lo;       // certain lower bound over all pairs
    std::vector<double> hi;       // certain upper bound over all pairs
    std::vector<double> min_hi;   // smallest upper bound among enumerated prefixes
    std::vector<double> max_lo;   // largest lower bound among enumerated prefixes
};

DerivativeBand case_derivative_band(const CaseSpec& c, const Roughness& r, int order, const std::vector<double>& xs,
                                    int prefix_depth, int terms);

CertificateReport certify_case(const CaseSpec& c, const Roughness& r, const CaseOptions& opt = {});

// S(xi,.55) - S(eta,.55) over all pairs of the case: explicit_levels leading
// jump positions, remaining ones bounded by 2 kappa^(levels+1)/(1-kappa) ||g||.
// sup_g <= 0 computes a certified ||g|| on a dense grid.
BoundedValue value_at_test_point(const CaseSpec& c, const Roughness& r, int explicit_levels = 3, double sup_g = -1.0,
                                 bool enforce_range = true);

inline constexpr double kTestPoint = 0.55;

struct KappaOptions {
    CaseOptions cases;
    int terms = kCertTerms;
    int grid = 1000;
    bool enforce_range = true;
};

CertificateReport certify_g_roots(const Roughness& r, const KappaOptions& opt = {});
CertificateReport certify_aux(char family, const Roughness& r, const KappaOptions& opt = {});
CertificateReport certify_kappa(const Roughness& r, const KappaOptions& opt = {});

struct Kappa0Estimate {
    Interval interval;
    std::vector<std::pair<double, Verdict>> evaluations;
};

// Bisection on the computed certificate over kappa in [0.5, 0.6].
Kappa0Estimate estimate_kappa0(double tol, const KappaOptions& opt = {});

struct InfVResult {
    double value = 0.0;
    double width = 0.0;  // bound on the truncation error of |V|
};

InfVResult inf_V_sample(const Roughness& r, int n, std::uint64_t seed, int grid = 1000, int terms = kCertTerms);

}  // namespace wsbr
