#include "oracle.hpp"

#include "wsbr/dynamics.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/identities.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wsbr;

namespace {

constexpr double pi = std::numbers::pi;

ExtendedPoint random_point(Stream& s, int x_bits = 32)
{
    return {random_bits(s, 64), std::ldexp(static_cast<double>(s.next() >> (64 - x_bits)), -x_bits), 0.0};
}

}  // namespace

TEST_SUITE("dynamics")
{
    TEST_CASE("F fixes the zero fiber point 1/(1-gamma)")
    {
        const Roughness r = Roughness::from_gamma(0.8);
        const ExtendedPoint p{BitSequence::zeros(64), 0.0, 3.0};
        const ExtendedPoint q = step_F(p, r);
        CHECK(q.x == 0.0);
        CHECK(q.y == doctest::Approx(0.8 * 3.0 + 1.0));
        const double ystar = 1.0 / (1.0 - r.gamma());
        CHECK(step_F({p.xi, 0.0, ystar}, r).y == doctest::Approx(ystar));
        CHECK(eval_W(0.0, r, 50).contains(ystar));
    }

    TEST_CASE("fiber distance to the graph contracts by gamma")
    {
        const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
        Stream s(21);
        for (int i = 0; i < 50; ++i) {
            ExtendedPoint p = random_point(s);
            const double d0 = 0.7;
            p.y = eval_W(p.x, r, 200).mid() + d0;
            for (int k = 1; k <= 21; ++k) {
                p = step_F(p, r);
                const double d = p.y - eval_W(p.x, r, 200).mid();
                REQUIRE(d == doctest::Approx(std::pow(r.gamma(), k) * d0).epsilon(1e-8));
            }
        }
    }

    TEST_CASE("graph of W is invariant")
    {
        const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
        Stream s(22);
        for (int i = 0; i < 50; ++i) {
            ExtendedPoint p = random_point(s);
            p.y = static_cast<double>(oracle::W(p.x, r.gamma()));
            for (int k = 1; k <= 20; ++k) {
                p = step_F(p, r);
                const BoundedValue w = eval_W(p.x, r, 200);
                REQUIRE(w.widened(1e-12).contains(p.y));
            }
        }
    }

    TEST_CASE("Gamma at the zero point")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        const ExtendedPoint q = step_Gamma({BitSequence::zeros(64), 0.0, 1.5}, r);
        CHECK(q.x == 0.0);
        CHECK(q.y == doctest::Approx(2 * r.gamma() * 1.5));
        CHECK(step_Gamma({BitSequence::zeros(64), 0.0, 0.0}, r).y == 0.0);
    }

    TEST_CASE("Gamma maps the graph of S to itself and expands off it")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        Stream s(23);
        for (int i = 0; i < 1000; ++i) {
            const ExtendedPoint p0 = random_point(s);
            const BoundedValue sv = eval_S({p0.xi, p0.x}, r, 60);
            const ExtendedPoint q = step_Gamma({p0.xi, p0.x, sv.mid()}, r);
            const BoundedValue sq = eval_S({q.xi, q.x}, r, 60);
            REQUIRE(sq.widened(2 * r.gamma() * sv.width() + 1e-12).contains(q.y));

            const ExtendedPoint off = step_Gamma({p0.xi, p0.x, sv.mid() + 0.25}, r);
            REQUIRE(off.y - q.y == doctest::Approx(2 * r.gamma() * 0.25));
        }
    }

    TEST_CASE("Jacobian structure")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        const Jacobian3 j0 = jacobian_F({BitSequence::zeros(64), 0.0}, r);
        CHECK(j0[2][1] == 0.0);
        Stream s(24);
        const ExtendedPoint p0 = random_point(s);
        PhasePoint p{p0.xi, p0.x};
        Jacobian3 prod{};
        for (int i = 0; i < 3; ++i)
            prod[i][i] = 1.0;
        const int n = 12;
        for (int k = 0; k < n; ++k) {
            const Jacobian3 j = jacobian_F(p, r);
            CHECK(j[0][0] == 2.0);
            CHECK(j[1][1] == 0.5);
            CHECK(j[2][2] == r.gamma());
            CHECK(j[2][1] == doctest::Approx(-pi * std::sin(2 * pi * baker_x(p.xi, p.x, 1))));
            prod = multiply(j, prod);
            p = baker(p, 1);
        }
        // lower triangular: the eigenvalues are the diagonal entries
        CHECK(prod[0][1] == 0.0);
        CHECK(prod[0][2] == 0.0);
        CHECK(prod[1][2] == 0.0);
        CHECK(prod[0][0] == std::ldexp(1.0, n));
        CHECK(prod[1][1] == std::ldexp(1.0, -n));
        CHECK(prod[2][2] == doctest::Approx(std::pow(r.gamma(), n)));
    }

    TEST_CASE("stable direction")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        const StableVector x0 = stable_X({BitSequence::zeros(64), 0.0}, r);
        CHECK(x0.c0 == 0.0);
        CHECK(x0.c1 == 1.0);
        CHECK(x0.c2.contains(0.0));
        Stream s(25);
        for (int i = 0; i < 1000; ++i) {
            const ExtendedPoint q = random_point(s, 52);
            const PhasePoint p{q.xi, q.x};
            const StableVector v = stable_X(p, r);
            const BoundedValue sv = eval_S(p, r, kCertTerms);
            REQUIRE(v.c2.lo == sv.lo);
            REQUIRE(v.c2.hi == sv.hi);
            // DF X = X(B p) / 2, third component
            const Jacobian3 j = jacobian_F(p, r);
            const BoundedValue lhs = j[2][2] * v.c2 + j[2][1];
            const BoundedValue rhs = 0.5 * stable_X(baker(p, 1), r).c2;
            REQUIRE(lhs.widened(1e-12).overlaps(rhs));
        }
    }

    TEST_CASE("Holder exponent")
    {
        const double h = holder_estimate(Roughness::from_gamma(std::sqrt(0.5)), 4, 20);
        CHECK(h >= 0.45);
        CHECK(h <= 0.55);
        const double h3 = holder_estimate(Roughness::from_gamma(std::pow(2.0, -0.3)), 4, 20);
        CHECK(std::abs(h3 - 0.3) <= 0.05);
        CHECK(holder_estimate(Roughness::from_gamma(std::sqrt(0.5)), 4, 20, 400) == doctest::Approx(h));
        CHECK_THROWS_AS(holder_estimate(Roughness::from_gamma(0.8), 1, 20), DomainError);
    }

    TEST_CASE("identity checks")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        CHECK(check_attractor_identity(r, 300, 1).violations == 0);
        CHECK(check_section_identity(r, 300, 1).violations == 0);
        CHECK(check_stable_direction(r, 300, 1).violations == 0);
        CHECK(check_fiber_contraction(r, 100, 1).violations == 0);
        CHECK(check_scaling_identity(r, 300, 1, true).violations == 0);
        CHECK(check_scaling_difference(r, 300, 1).violations == 0);
        // The uncorrected scaling law fails exactly when the leading digit of x is 1.
        const IdentityResult lit = check_scaling_identity(r, 1000, 1, false);
        CHECK(lit.violations > 400);
        CHECK(lit.violations < 600);
    }
}
