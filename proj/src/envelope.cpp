#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wsbr {

namespace {
constexpr double pi = std::numbers::pi;
}

std::string to_string(Target t)
{
    switch (t) {
    case Target::g: return "g";
    case Target::g1: return "g1";
    case Target::g2: return "g2";
    }
    return "?";
}

double EnvelopePair::core(double x) const
{
    const double s = std::sin(pi * x / 2.0);
    const double c = std::cos(pi * x / 2.0);
    switch (target) {
    case Target::g: return -2.0 * s * c + kappa / 2.0 * (c - s);
    case Target::g1: return c * c - s * s + kappa / 4.0 * (c + s);
    case Target::g2: return -2.0 * s * c + kappa / 8.0 * (c - s);
    }
    return 0.0;
}

BoundedValue normalized_target(Target t, double x, const Roughness& r, int terms)
{
    switch (t) {
    case Target::g: return (1.0 / (4.0 * pi)) * eval_g(x, 0, r, terms);
    case Target::g1: return (-1.0 / (4.0 * pi * pi)) * eval_g(x, 1, r, terms);
    case Target::g2: return (-1.0 / (4.0 * pi * pi * pi)) * eval_g(x, 2, r, terms);
    }
    return {};
}

EnvelopePair envelope(Target t, const Roughness& r)
{
    const double k = r.kappa();
    if (k > kEnvelopeKappaMax)
        throw ValidityError("envelope: kappa > 0.6 is outside the stated validity range");
    EnvelopePair e;
    e.target = t;
    e.kappa = k;
    const double c8 = k * k / (8.0 - k);
    switch (t) {
    case Target::g2:
        e.lower_const = 0.27 * pi / 16.0 * c8;
        e.upper_const = pi / 16.0 * c8;
        break;
    case Target::g1:
        e.lower_const = 0.28 * c8;
        e.upper_const = 3.0 * pi * pi / 32.0 * c8;
        break;
    case Target::g:
        // Remainder bounds for g itself divided by 4 pi; the printed pair is
        // off by factors 2 and pi/2 (see printed_envelope_constants).
        e.lower_const = k * k * (4.0 - pi + k * (pi - 2.0)) / (4.0 * (2.0 - k));
        e.upper_const = pi * k * k / (4.0 * (2.0 - k));
        break;
    }
    return e;
}

std::pair<double, double> printed_envelope_constants(Target t, const Roughness& r)
{
    const double k = r.kappa();
    if (t == Target::g)
        return {k * k / (2.0 * (2.0 - k)) * (4.0 - pi + k * (pi - 2.0)), k * k / (2.0 * (2.0 - k))};
    const EnvelopePair e = envelope(t, r);
    return {e.lower_const, e.upper_const};
}

Interval bracket_root(const std::function<BoundedValue(double)>& f, double lo, double hi, double tol)
{
    if (!(lo < hi))
        throw DomainError("bracket_root: need lo < hi");
    const BoundedValue flo = f(lo);
    const BoundedValue fhi = f(hi);
    if (flo.straddles_zero() || fhi.straddles_zero())
        throw IndeterminateSignError("bracket_root: enclosure contains 0 at an endpoint");
    if (flo.positive() == fhi.positive())
        throw BracketError("bracket_root: no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const bool lo_pos = flo.positive();
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const BoundedValue fm = f(mid);
        if (fm.straddles_zero())
            throw IndeterminateSignError("bracket_root: enclosure contains 0 at x = " + std::to_string(mid));
        if (fm.positive() == lo_pos)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

Interval bisect_plain(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    double flo = f(lo);
    const double fhi = f(hi);
    if ((flo > 0) == (fhi > 0) || flo == 0.0 || fhi == 0.0)
        throw BracketError("bisect_plain: no strict sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::fail: return "fail";
    }
    return "?";
}

Verdict combine(Verdict a, Verdict b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

void CertificateReport::finalize()
{
    computed_verdict = Verdict::pass;
    for (const Check& c : checks)
        if (c.gating)
            computed_verdict = combine(computed_verdict, c.verdict);
    verdict = computed_verdict;
}

Check certify_sign(const std::string& name, const std::function<BoundedValue(double)>& f, double a, double b,
                   double h, double deriv_bound, int sign)
{
    Check c;
    c.name = name;
    c.domain_lo = a;
    c.domain_hi = b;
    const int n = b > a ? static_cast<int>(std::ceil((b - a) / h - 1e-9)) : 0;
    const double step = n > 0 ? (b - a) / n : 0.0;
    double worst = std::numeric_limits<double>::infinity();
    bool counterexample = false;
    for (int i = 0; i <= n; ++i) {
        const double x = i == n ? b : a + i * step;
        const BoundedValue v = f(x);
        const double m = sign > 0 ? v.lo : -v.hi;
        worst = std::min(worst, m);
        if ((sign > 0 && v.hi < 0.0) || (sign < 0 && v.lo > 0.0))
            counterexample = true;
    }
    c.margin = worst - 0.5 * step * deriv_bound;
    if (counterexample)
        c.verdict = Verdict::fail;
    else
        c.verdict = c.margin > 0.0 ? Verdict::pass : Verdict::inconclusive;
    return c;
}

Check point_check(const std::string& name, double x, const BoundedValue& v, int sign)
{
    Check c;
    c.name = name;
    c.domain_lo = c.domain_hi = x;
    c.margin = sign > 0 ? v.lo : -v.hi;
    if (c.margin > 0.0)
        c.verdict = Verdict::pass;
    else if ((sign > 0 && v.hi < 0.0) || (sign < 0 && v.lo > 0.0))
        c.verdict = Verdict::fail;
    else
        c.verdict = Verdict::inconclusive;
    return c;
}

}  // namespace wsbr
