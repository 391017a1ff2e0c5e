#include "wsbr/identities.hpp"

#include "wsbr/dynamics.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wsbr {

namespace {

constexpr double pi = std::numbers::pi;

// Records whether [a] and [b], each widened by slack, overlap.
void compare(IdentityResult& res, const BoundedValue& a, const BoundedValue& b, double slack)
{
    ++res.samples;
    const double resid = std::abs(a.mid() - b.mid());
    res.max_residual = std::max(res.max_residual, resid);
    res.max_width = std::max(res.max_width, a.width() + b.width());
    if (!a.widened(slack).overlaps(b.widened(slack)))
        ++res.violations;
}

double ulp_slack(double scale) { return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(scale)); }

PhasePoint random_point(Stream& s) { return {random_bits(s), s.uniform_dyadic52()}; }

}  // namespace

IdentityResult check_scaling_identity(const Roughness& r, int n, std::uint64_t seed, bool corrected)
{
    IdentityResult res;
    res.name = corrected ? "scaling_corrected" : "scaling_literal";
    Stream s(seed, 1);
    const double k = r.kappa();
    for (int i = 0; i < n; ++i) {
        const PhasePoint p = random_point(s);
        const PhasePoint b = baker(p, -1);
        const BoundedValue lhs = eval_G_jumps(jump_times(b.xi), b.x, r);
        BoundedValue rhs = k * eval_G_jumps(jump_times(p.xi), p.x, r);
        if (corrected && p.x >= 0.5)
            rhs = rhs + k * eval_g(b.x, 0, r);
        compare(res, lhs, rhs, ulp_slack(lhs.mid()));
    }
    return res;
}

IdentityResult check_scaling_difference(const Roughness& r, int n, std::uint64_t seed)
{
    IdentityResult res;
    res.name = "scaling_difference";
    Stream s(seed, 2);
    const double k = r.kappa();
    for (int i = 0; i < n; ++i) {
        const PhasePoint p = random_point(s);
        const PhasePoint q{random_bits(s), p.x};
        const PhasePoint bp = baker(p, -1), bq = baker(q, -1);
        const BoundedValue lhs = eval_G_jumps(jump_times(bp.xi), bp.x, r) - eval_G_jumps(jump_times(bq.xi), bq.x, r);
        const BoundedValue rhs = k * (eval_G_jumps(jump_times(p.xi), p.x, r) - eval_G_jumps(jump_times(q.xi), q.x, r));
        compare(res, lhs, rhs, ulp_slack(lhs.mid()));
    }
    return res;
}

IdentityResult check_attractor_identity(const Roughness& r, int n, std::uint64_t seed)
{
    IdentityResult res;
    res.name = "attractor";
    Stream s(seed, 3);
    for (int i = 0; i < n; ++i) {
        const PhasePoint p = random_point(s);
        const double x1 = baker_x(p.xi, p.x, 1);
        const BoundedValue lhs = eval_W(x1, r, kOracleTerms);
        const BoundedValue rhs = r.gamma() * eval_W(p.x, r, kOracleTerms) + std::cos(2.0 * pi * x1);
        compare(res, lhs, rhs, ulp_slack(lhs.mid()));
    }
    return res;
}

IdentityResult check_section_identity(const Roughness& r, int n, std::uint64_t seed)
{
    IdentityResult res;
    res.name = "section";
    Stream s(seed, 4);
    for (int i = 0; i < n; ++i) {
        const PhasePoint p = random_point(s);
        const PhasePoint b = baker(p, 1);
        const BoundedValue lhs = eval_S(b, r, kCertTerms);
        const BoundedValue rhs = (2.0 * r.gamma()) * eval_S(p, r, kCertTerms) + (-2.0 * pi * std::sin(2.0 * pi * b.x));
        compare(res, lhs, rhs, ulp_slack(lhs.mid()) * 4.0);
    }
    return res;
}

IdentityResult check_stable_direction(const Roughness& r, int n, std::uint64_t seed)
{
    IdentityResult res;
    res.name = "stable_direction";
    Stream s(seed, 5);
    for (int i = 0; i < n; ++i) {
        const PhasePoint p = random_point(s);
        const Jacobian3 j = jacobian_F(p, r);
        const StableVector x = stable_X(p, r);
        const StableVector xb = stable_X(baker(p, 1), r);
        // first two components are exact
        if (j[0][0] * x.c0 + j[0][1] * x.c1 != 0.5 * xb.c0 || j[1][0] * x.c0 + j[1][1] * x.c1 != 0.5 * xb.c1) {
            ++res.samples;
            ++res.violations;
            continue;
        }
        const BoundedValue lhs = j[2][2] * x.c2 + (j[2][0] * x.c0 + j[2][1] * x.c1);
        const BoundedValue rhs = 0.5 * xb.c2;
        compare(res, lhs, rhs, ulp_slack(lhs.mid()) * 4.0);
    }
    return res;
}

IdentityResult check_fiber_contraction(const Roughness& r, int n, std::uint64_t seed, int steps, double rel_tol)
{
    if (steps < 1 || steps > 21)
        throw DomainError("check_fiber_contraction: steps must be in 1..21");
    IdentityResult res;
    res.name = "fiber_contraction";
    Stream s(seed, 6);
    const double g = r.gamma();
    for (int i = 0; i < n; ++i) {
        // x with 32 fractional bits stays exactly representable for 21 forward steps
        const PhasePoint p{random_bits(s), static_cast<double>(s.next() >> 32) * 0x1.0p-32};
        const double d0 = 2.0 * s.uniform() - 1.0;
        ExtendedPoint e{p.xi, p.x, eval_W(p.x, r, kOracleTerms).mid() + d0};
        const double base = std::abs(e.y - eval_W(e.x, r, kOracleTerms).mid());
        double gk = 1.0;
        for (int k = 1; k <= steps; ++k) {
            e = step_F(e, r);
            gk *= g;
            const BoundedValue w = eval_W(e.x, r, kOracleTerms);
            const double got = std::abs(e.y - w.mid());
            const double want = gk * base;
            ++res.samples;
            const double rel = std::abs(got - want) / want;
            res.max_residual = std::max(res.max_residual, rel);
            res.max_width = std::max(res.max_width, w.width());
            if (rel > rel_tol + w.width() / want)
                ++res.violations;
        }
    }
    return res;
}

}  // namespace wsbr
