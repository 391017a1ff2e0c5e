#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace wsbr {

namespace {

constexpr double pi = std::numbers::pi;

// Phase offsets of the three series forms: k_1/l_1 use (3 + 2x), k_2/l_2
// (9/2 + x), k_3/l_3 (5/2 + x), each scaled by pi / 2^(m+2).
double phase(int i, double x, bool printed)
{
    switch (i) {
    case 1: return 3.0 + 2.0 * x;
    case 2: return 4.5 + x;
    default: return (printed ? 3.0 : 2.5) + x;
    }
}

BoundedValue aux_series(char family, int i, double x, const Roughness& r, int terms, bool printed)
{
    if (terms < 1)
        throw DomainError("aux series: terms must be positive");
    const double k = r.kappa();
    const bool kf = family == 'k';
    const double q = kf ? k / 4.0 : k / 2.0;
    const double c = kf ? 8.0 * pi * pi * pi : -8.0 * pi * pi;
    const double ph = phase(i, x, printed);
    std::vector<double> v(static_cast<std::size_t>(terms));
    double qm = 1.0;
    double abs_sum = 0.0;
    for (int m = 0; m < terms; ++m) {
        const double sm = std::sin(pi / std::ldexp(1.0, m + 1));
        const double tm = std::sin(pi / std::ldexp(1.0, i == 1 ? m + 2 : m + 3));
        const double a = pi / std::ldexp(1.0, m + 2) * ph;
        const double t = c * qm * sm * tm * (kf ? std::sin(a) : std::cos(a));
        v[static_cast<std::size_t>(m)] = t;
        abs_sum += std::abs(t);
        qm *= q;
    }
    // s_m t_m <= pi^2 / 2^(2m+3) (i = 1) or pi^2 / 2^(2m+4)
    const double ratio = q / 4.0;
    const double lead = std::abs(c) * pi * pi / (i == 1 ? 8.0 : 16.0);
    const double tail = lead * std::pow(ratio, terms) / (1.0 - ratio);
    return series_enclosure(pairwise_sum(v), tail, v.size(), abs_sum);
}

}  // namespace

BoundedValue eval_k(int i, double x, const Roughness& r, int terms)
{
    if (i < 1 || i > 4)
        throw DomainError("eval_k: index must be in 1..4");
    if (i == 4)
        return eval_g((x + 1.0) / 2.0, 2, r, terms) - (r.kappa() / 4.0) * eval_g(x / 4.0, 2, r, terms);
    return aux_series('k', i, x, r, terms, false);
}

BoundedValue eval_l(int i, double x, const Roughness& r, int terms)
{
    if (i < 1 || i > 4)
        throw DomainError("eval_l: index must be in 1..4");
    if (i == 4)
        return eval_g((x + 1.0) / 2.0, 1, r, terms) - (r.kappa() / 2.0) * eval_g(x / 4.0, 1, r, terms);
    return aux_series('l', i, x, r, terms, false);
}

double printed_k3(double x, const Roughness& r, int terms) { return aux_series('k', 3, x, r, terms, true).mid(); }

double printed_l3(double x, const Roughness& r, int terms) { return aux_series('l', 3, x, r, terms, true).mid(); }

double aux_derivative_bound(char family, int i, const Roughness& r)
{
    const SupBounds sb = sup_bounds(r);
    const double s = family == 'k' ? sb.sup_g3 : sb.sup_g2;
    const double k = r.kappa();
    switch (i) {
    case 1: return s;
    case 2:
    case 3: return s / 2.0;
    case 4: return s * (0.5 + (family == 'k' ? k / 16.0 : k / 8.0));
    default: throw DomainError("aux_derivative_bound: index must be in 1..4");
    }
}

namespace {

Check bracket_check(const std::string& name, const std::function<BoundedValue(double)>& f, double lo, double hi,
                    double tol, double claim_lo, double claim_hi)
{
    Check c;
    c.name = name;
    try {
        const Interval iv = bracket_root(f, lo, hi, tol);
        c.domain_lo = iv.lo;
        c.domain_hi = iv.hi;
        c.margin = std::min(iv.lo - claim_lo, claim_hi - iv.hi);
        c.verdict = c.margin >= 0.0 ? Verdict::pass : Verdict::fail;
    } catch (const IndeterminateSignError& e) {
        c.domain_lo = lo;
        c.domain_hi = hi;
        c.verdict = Verdict::inconclusive;
        c.note = e.what();
    } catch (const BracketError& e) {
        c.domain_lo = lo;
        c.domain_hi = hi;
        c.verdict = Verdict::fail;
        c.note = e.what();
    }
    return c;
}

void envelope_checks(CertificateReport& rep, Target t, const Roughness& r, int terms, double search_lo,
                     double search_hi, double claim_lo, double claim_hi)
{
    const EnvelopePair e = envelope(t, r);
    const std::string base = "envelope_" + to_string(t);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const BoundedValue v = normalized_target(t, x, r, terms);
        worst = std::min({worst, v.lo - e.lower(x), e.upper(x) - v.hi});
    }
    Check s;
    s.name = base + "_sandwich";
    s.domain_lo = 0.0;
    s.domain_hi = 1.0;
    s.margin = worst;
    s.verdict = worst > 0.0 ? Verdict::pass : Verdict::fail;
    s.note = "lower <= normalized target <= upper on a 1001-point grid";
    rep.checks.push_back(s);

    for (int member = 0; member < 2; ++member) {
        Check c;
        c.name = base + (member == 0 ? "_lower_root" : "_upper_root");
        try {
            const Interval iv = bisect_plain([&](double x) { return member == 0 ? e.lower(x) : e.upper(x); },
                                             search_lo, search_hi, 1e-7);
            c.domain_lo = iv.lo;
            c.domain_hi = iv.hi;
            c.margin = std::min(iv.lo - claim_lo, claim_hi - iv.hi);
            c.verdict = c.margin >= 0.0 ? Verdict::pass : Verdict::fail;
        } catch (const BracketError& ex) {
            c.domain_lo = search_lo;
            c.domain_hi = search_hi;
            c.verdict = Verdict::fail;
            c.note = ex.what();
        }
        rep.checks.push_back(c);
    }
}

}  // namespace

CertificateReport certify_g_roots(const Roughness& r, const KappaOptions& opt)
{
    if (r.kappa() > kEnvelopeKappaMax && opt.enforce_range)
        throw ValidityError("g-roots certificate is stated for kappa <= 0.6");
    CertificateReport rep;
    rep.lemma_id = "g_roots";
    rep.kappa = r.kappa();
    rep.config = {opt.terms, opt.grid, 0};
    const int n = opt.terms;
    const double h = 1.0 / opt.grid;
    const SupBounds sb = sup_bounds(r);
    auto g0 = [&](double x) { return eval_g(x, 0, r, n); };
    auto g1 = [&](double x) { return eval_g(x, 1, r, n); };
    auto g2 = [&](double x) { return eval_g(x, 2, r, n); };

    Check b2 = bracket_check("g2_root_bracket", g2, 0.0, 0.5, 1e-4, 0.0, 0.027);
    rep.checks.push_back(b2);
    rep.checks.push_back(certify_sign("g2_positive", g2, 0.027, 1.0, h, sb.sup_g3, +1));

    rep.checks.push_back(bracket_check("g1_root_bracket", g1, 0.55, 0.60, 1e-4, 0.55, 0.60));
    rep.checks.push_back(certify_sign("g1_negative", g1, 0.0, 0.55, h, sb.sup_g2, -1));
    rep.checks.push_back(certify_sign("g1_positive", g1, 0.60, 1.0, h, sb.sup_g2, +1));

    rep.checks.push_back(bracket_check("g_root_bracket", g0, 0.05, 0.15, 1e-4, 0.05, 0.15));
    rep.checks.push_back(certify_sign("g_positive", g0, 0.0, 0.05, h, sb.sup_g1, +1));
    rep.checks.push_back(certify_sign("g_negative", g0, 0.15, 1.0, h, sb.sup_g1, -1));

    if (r.kappa() <= kEnvelopeKappaMax) {
        envelope_checks(rep, Target::g2, r, n, 0.0, 0.5, 0.0, 0.027);
        envelope_checks(rep, Target::g1, r, n, 0.3, 0.9, 0.55, 0.60);
        envelope_checks(rep, Target::g, r, n, 0.0, 0.3, 0.05, 0.15);
    }
    rep.finalize();
    return rep;
}

CertificateReport certify_aux(char family, const Roughness& r, const KappaOptions& opt)
{
    if (family != 'k' && family != 'l')
        throw DomainError("certify_aux: family must be 'k' or 'l'");
    CertificateReport rep;
    rep.lemma_id = family == 'k' ? "k_functions" : "l_functions";
    rep.kappa = r.kappa();
    rep.config = {opt.terms, opt.grid, 0};
    const int n = opt.terms;
    const double h = 1.0 / opt.grid;
    if (family == 'k') {
        auto k = [&](int i) { return [&, i](double x) { return eval_k(i, x, r, n); }; };
        rep.checks.push_back(point_check("k1_at_0_positive", 0.0, eval_k(1, 0.0, r, n), +1));
        rep.checks.push_back(point_check("k1_at_1_negative", 1.0, eval_k(1, 1.0, r, n), -1));
        Check k2 = certify_sign("k2_positive", k(2), 0.0, 1.0, h, aux_derivative_bound('k', 2, r), +1);
        k2.gating = false;
        k2.note = "stated as positive on [0,1]; the series' leading term is negative there, and the case "
                  "certificates do not depend on this claim";
        rep.checks.push_back(k2);
        rep.checks.push_back(certify_sign("k3_positive", k(3), 0.0, 1.0, h, aux_derivative_bound('k', 3, r), +1));
        rep.checks.push_back(certify_sign("k4_positive", k(4), 0.0, 0.9, h, aux_derivative_bound('k', 4, r), +1));
    } else {
        for (int i = 1; i <= 4; ++i)
            rep.checks.push_back(certify_sign("l" + std::to_string(i) + "_positive",
                                              [&, i](double x) { return eval_l(i, x, r, n); }, 0.0, 1.0, h,
                                              aux_derivative_bound('l', i, r), +1));
    }
    rep.finalize();
    return rep;
}

}  // namespace wsbr
