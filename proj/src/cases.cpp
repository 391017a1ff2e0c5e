#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wsbr {

namespace {

Constraint first_jump(int d1, int d2)
{
    if (d1)
        return {1, false};
    if (d2)
        return {2, false};
    return {3, true};
}

Constraint second_jump(int d1, int d2)
{
    if (d1 && d2)
        return {2, false};
    if (d1 || d2)
        return {3, true};
    return {4, true};
}

std::array<CaseSpec, 10> build_table()
{
    const int rows[10][4] = {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 1},
                             {1, 0, 1, 0}, {1, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}};
    std::array<CaseSpec, 10> t{};
    for (int i = 0; i < 10; ++i) {
        CaseSpec& c = t[static_cast<std::size_t>(i)];
        c.id = i + 1;
        for (int j = 0; j < 4; ++j)
            c.digits[static_cast<std::size_t>(j)] = rows[i][j];
        c.tau2 = first_jump(c.digits[0], c.digits[2]);
        c.tau3 = second_jump(c.digits[0], c.digits[2]);
        c.sigma1 = first_jump(c.digits[1], c.digits[3]);
        c.sigma2 = second_jump(c.digits[1], c.digits[3]);
    }
    return t;
}

void check_kappa(const Roughness& r, bool enforce, const char* what)
{
    if (enforce && (r.kappa() < kCertKappaMin || r.kappa() > kCertKappaMax))
        throw ValidityError(std::string(what) + ": kappa must lie in [0.5, 0.56]");
}

// Jump contributions of one sequence over positions 0..P-1 for every
// assignment of the free positions 3..P-1; returns min/max of lo and hi.
struct PartRange {
    double min_lo = std::numeric_limits<double>::infinity();
    double max_lo = -std::numeric_limits<double>::infinity();
    double min_hi = std::numeric_limits<double>::infinity();
    double max_hi = -std::numeric_limits<double>::infinity();
};

PartRange part_range(const std::array<int, 3>& fixed, int prefix, double x, int order, const Roughness& r, int terms)
{
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order);
    const int free_bits = prefix - 3;
    PartRange out;
    for (int mask = 0; mask < (1 << free_bits); ++mask) {
        double b = x;
        double qj = 1.0;
        BoundedValue acc{0.0, 0.0};
        for (int j = 0; j < prefix; ++j) {
            const int bit = j < 3 ? fixed[static_cast<std::size_t>(j)] : (mask >> (j - 3)) & 1;
            if (bit)
                acc = acc + (k * qj) * eval_g(b, order, r, terms);
            b = (bit + b) * 0.5;
            qj *= q;
        }
        out.min_lo = std::min(out.min_lo, acc.lo);
        out.max_lo = std::max(out.max_lo, acc.lo);
        out.min_hi = std::min(out.min_hi, acc.hi);
        out.max_hi = std::max(out.max_hi, acc.hi);
    }
    return out;
}

double tail_bound(int order, int prefix, const Roughness& r, double sup)
{
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order);
    return 2.0 * k * std::pow(q, prefix) / (1.0 - q) * sup;
}

// |d/dx S^(order)-difference| over all pairs of a case.
double next_derivative_bound(int order, const Roughness& r)
{
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order + 1);
    return k * sup_bounds(r).for_order(order + 1) * (1.0 + 2.0 * q / (1.0 - q));
}

}  // namespace

const std::array<CaseSpec, 10>& table1()
{
    static const std::array<CaseSpec, 10> t = build_table();
    return t;
}

const CaseSpec& case_spec(int id)
{
    if (id < 1 || id > 10)
        throw DomainError("case id must be in 1..10");
    return table1()[static_cast<std::size_t>(id - 1)];
}

std::pair<JumpTimes, JumpTimes> case_pair(const CaseSpec& c, const std::vector<int>& tail_choice, int depth)
{
    std::array<Constraint, 4> cons{c.tau2, c.tau3, c.sigma1, c.sigma2};
    std::array<int, 4> v{};
    std::size_t used = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!cons[i].at_least) {
            v[i] = cons[i].value;
            continue;
        }
        if (used >= tail_choice.size())
            throw CaseConstraintError("case_pair: too few tail choices for case " + std::to_string(c.id));
        v[i] = tail_choice[used++];
        if (v[i] < cons[i].value)
            throw CaseConstraintError("case_pair: choice " + std::to_string(v[i]) + " violates bound >= "
                                      + std::to_string(cons[i].value) + " in case " + std::to_string(c.id));
    }
    if (used != tail_choice.size())
        throw CaseConstraintError("case_pair: too many tail choices for case " + std::to_string(c.id));
    const int tau2 = v[0], tau3 = v[1], sigma1 = v[2], sigma2 = v[3];
    if (!(tau2 < tau3 && sigma1 < sigma2))
        throw CaseConstraintError("case_pair: jump times must increase");
    if (sigma1 < tau2)
        throw CaseConstraintError("case_pair: sigma1 >= tau2 is required");
    if (tau3 >= depth || sigma2 >= depth)
        throw CaseConstraintError("case_pair: jump time beyond depth");
    JumpTimes xi{{0, tau2, tau3}, depth};
    JumpTimes eta{{sigma1, sigma2}, depth};
    // xi - eta > 1/2  <=>  (xi without its leading digit) > eta, digitwise.
    BitSequence a = bits_from_jumps(xi, depth);
    const BitSequence b = bits_from_jumps(eta, depth);
    a.bits[0] = 0;
    if (a == b) {
        // Equal leading jumps (case 10) give xi - eta = 1/2 exactly; a later
        // jump of xi, which the row leaves free, restores the strict inequality.
        const int extra = std::max(tau3, sigma2) + 1;
        if (extra >= depth)
            throw CaseConstraintError("case_pair: jump time beyond depth");
        xi.times.push_back(extra);
        a.bits[static_cast<std::size_t>(extra)] = 1;
    }
    if (!std::lexicographical_compare(b.bits.begin(), b.bits.end(), a.bits.begin(), a.bits.end()))
        throw CaseConstraintError("case_pair: the choice does not give xi - eta > 1/2");
    // Row digits must be reproduced.
    const BitSequence xb = bits_from_jumps(xi, depth);
    if (xb[1] != c.digits[0] || b[1] != c.digits[1] || xb[2] != c.digits[2] || b[2] != c.digits[3])
        throw CaseConstraintError("case_pair: the choice changes the row digits");
    return {xi, eta};
}

DerivativeBand case_derivative_band(const CaseSpec& c, const Roughness& r, int order, const std::vector<double>& xs,
                                    int prefix_depth, int terms)
{
    if (prefix_depth < 3 || prefix_depth > 12)
        throw DomainError("prefix_depth must be in 3..12");
    if (order < 0 || order > 2)
        throw DomainError("case_derivative_band: order must be in 0..2");
    const std::array<int, 3> fx{1, c.digits[0], c.digits[2]};
    const std::array<int, 3> fe{0, c.digits[1], c.digits[3]};
    const double tail = tail_bound(order, prefix_depth, r, sup_bounds(r).for_order(order));
    DerivativeBand band;
    band.x = xs;
    for (double x : xs) {
        const PartRange a = part_range(fx, prefix_depth, x, order, r, terms);
        const PartRange b = part_range(fe, prefix_depth, x, order, r, terms);
        band.lo.push_back(a.min_lo - b.max_hi - tail);
        band.hi.push_back(a.max_hi - b.min_lo + tail);
        band.min_hi.push_back(a.min_hi - b.max_lo + tail);
        band.max_lo.push_back(a.max_lo - b.min_hi - tail);
    }
    return band;
}

CertificateReport certify_case(const CaseSpec& c, const Roughness& r, const CaseOptions& opt)
{
    check_kappa(r, opt.enforce_range, "certify_case");
    CertificateReport rep;
    rep.lemma_id = "case_" + std::to_string(c.id);
    rep.kappa = r.kappa();
    rep.config = opt.config;
    const int P = opt.config.prefix_depth;
    const int n = opt.config.terms;
    const double h = 1.0 / opt.config.grid;

    auto band_fn = [&](int order, int sign) {
        return [&, order, sign](double x) {
            const DerivativeBand b = case_derivative_band(c, r, order, {x}, P, n);
            return sign > 0 ? BoundedValue{b.lo[0], b.min_hi[0]} : BoundedValue{b.max_lo[0], b.hi[0]};
        };
    };
    rep.checks.push_back(certify_sign("S2_diff_positive", band_fn(2, +1), 0.1, 0.9, h, next_derivative_bound(2, r), +1));
    rep.checks.push_back(certify_sign("S1_diff_negative", band_fn(1, -1), 0.0, 0.1, h, next_derivative_bound(1, r), -1));
    rep.checks.push_back(certify_sign("S1_diff_positive", band_fn(1, +1), 0.9, 1.0, h, next_derivative_bound(1, r), +1));

    // The printed point checks of the expansion argument; informational.
    const double q = r.kappa() / 4.0;
    if (c.id == 8) {
        const BoundedValue g2 = eval_g(0.9, 2, r, n);
        const BoundedValue k1 = eval_k(1, 0.9, r, n);
        Check w = point_check("case8_as_printed", 0.9, g2 + q * g2 + (q * q) * k1, +1);
        w.gating = false;
        w.note = "g''(.9) + (k/4) g''(.9) + (k/4)^2 k1(.9)";
        Check i = point_check("case8_intended", 0.9, g2 + q * k1, +1);
        i.gating = false;
        i.note = "g''(.9) + (k/4) k1(.9)";
        rep.checks.push_back(w);
        rep.checks.push_back(i);
    }
    if (c.id == 10) {
        const BoundedValue v = eval_g(0.9, 2, r, n) + q * eval_k(1, 0.9, r, n) + (q * q) * eval_k(2, 0.9, r, n);
        Check p = point_check("case10_point", 0.9, v, +1);
        p.gating = false;
        p.note = "g''(.9) + (k/4) k1(.9) + (k/4)^2 k2(.9)";
        rep.checks.push_back(p);
    }
    rep.finalize();
    return rep;
}

BoundedValue value_at_test_point(const CaseSpec& c, const Roughness& r, int explicit_levels, double sup_g,
                                 bool enforce_range)
{
    check_kappa(r, enforce_range, "value_at_test_point");
    if (explicit_levels < 3 || explicit_levels > 12)
        throw DomainError("value_at_test_point: explicit_levels must be in 3..12");
    if (sup_g <= 0.0)
        sup_g = certified_sup_abs_g(r, 0);
    const double k = r.kappa();
    const std::array<int, 3> fx{1, c.digits[0], c.digits[2]};
    const std::array<int, 3> fe{0, c.digits[1], c.digits[3]};
    const PartRange a = part_range(fx, explicit_levels, kTestPoint, 0, r, kCertTerms);
    const PartRange b = part_range(fe, explicit_levels, kTestPoint, 0, r, kCertTerms);
    const double err = 2.0 * std::pow(k, explicit_levels + 1) / (1.0 - k) * sup_g;
    return {a.min_lo - b.max_hi - err, a.max_hi - b.min_lo + err};
}

}  // namespace wsbr
