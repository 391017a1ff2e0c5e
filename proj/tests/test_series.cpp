#include "oracle.hpp"

#include "wsbr/errors.hpp"
#include "wsbr/series.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wsbr;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<int> to_int(const BitSequence& b)
{
    return std::vector<int>(b.bits.begin(), b.bits.end());
}

// Reference values from 40-digit summation.
struct GRef {
    double x;
    double v[3];
};
constexpr GRef kG055[] = {
    {0.0, {5.3547024937309568, -45.377502695782458, -9.4220926550610299}},
    {0.25, {-5.2614582494778169, -35.692585233513114, 82.273445615935849}},
    {0.5, {-11.007714501490072, -8.5505703819884829, 123.32790102005862}},
    {0.9, {-5.5966596377575837, 30.227443111569166, 44.948226279423802}},
};

}  // namespace

TEST_SUITE("series")
{
    TEST_CASE("W at zero")
    {
        const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
        CHECK(eval_W(0.0, r, 10).contains(1.0 / (1.0 - r.gamma())));
        CHECK_THROWS_AS(eval_W(0.1, Roughness::from_kappa(0.5), 10), DomainError);
    }

    TEST_CASE("W against direct summation")
    {
        const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
        Stream s(11);
        for (int i = 0; i < 100; ++i) {
            const double x = s.uniform();
            const BoundedValue w = eval_W(x, r, 200);
            const double ref = static_cast<double>(oracle::W(x, r.gamma(), 400));
            CHECK(w.widened(1e-14).contains(ref));
        }
    }

    TEST_CASE("W frozen values")
    {
        const Roughness r = Roughness::from_gamma(std::sqrt(0.5));
        // x = 0.1 and 0.3 carry a representation error; W is only 1/2-Holder.
        CHECK(eval_W(0.1, r, 200).mid() == doctest::Approx(0.43701602444882107).epsilon(1e-6));
        CHECK(eval_W(0.3, r, 200).mid() == doctest::Approx(-1.1441228056353686).epsilon(1e-6));
        CHECK(eval_W(0.7, r, 200).mid() == doctest::Approx(-1.1441228056353686).epsilon(1e-6));
    }

    TEST_CASE("W enclosure width shrinks by gamma per term")
    {
        const Roughness r = Roughness::from_gamma(0.8);
        const double x = 0.123456789;
        for (int n = 5; n < 30; ++n) {
            const double ratio = eval_W(x, r, n + 1).width() / eval_W(x, r, n).width();
            CHECK(ratio == doctest::Approx(r.gamma()).epsilon(1e-3));
        }
    }

    TEST_CASE("S vanishes at the zero point")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        for (int order : {0, 2})
            CHECK(eval_S({BitSequence::zeros(64), 0.0}, r, 60, order).contains(0.0));
    }

    TEST_CASE("S against direct summation with three times the terms")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        Stream s(12);
        for (int i = 0; i < 300; ++i) {
            const BitSequence xi = random_bits(s, 120);
            const double x = s.uniform();
            for (int order = 0; order <= 2; ++order) {
                const BoundedValue v = eval_S({xi, x}, r, 40, order);
                const double ref = static_cast<double>(oracle::S(to_int(xi), x, r.kappa(), order));
                REQUIRE(v.widened(1e-12 * (1 + std::abs(ref))).contains(ref));
            }
        }
    }

    TEST_CASE("S frozen value on a periodic digit string")
    {
        BitSequence xi;
        for (int i = 0; i < 40; ++i)
            for (int d : {1, 0, 1})
                xi.bits.push_back(static_cast<std::uint8_t>(d));
        const BoundedValue v = eval_S({xi, 0.3}, Roughness::from_kappa(0.55), 60);
        CHECK(v.widened(1e-13).contains(-2.6000388702202963));
        CHECK_THROWS_AS(eval_S({xi, 0.3}, Roughness::from_kappa(0.55), 121), PrecisionError);
    }

    TEST_CASE("g frozen values")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        for (const GRef& g : kG055)
            for (int order = 0; order <= 2; ++order) {
                const BoundedValue v = eval_g(g.x, order, r);
                CHECK(v.widened(1e-12 * std::abs(g.v[order])).contains(g.v[order]));
                CHECK(v.width() < 1e-10 * (1 + std::abs(g.v[order])) * 60);
            }
    }

    TEST_CASE("g agrees with the S-difference oracle")
    {
        Stream s(13);
        for (double k : {0.5, 0.55, 0.56, 0.6}) {
            const Roughness r = Roughness::from_kappa(k);
            for (int i = 0; i < 50; ++i) {
                const double x = s.uniform();
                for (int order = 0; order <= 2; ++order) {
                    const double ref = static_cast<double>(oracle::g(x, k, order));
                    REQUIRE(eval_g(x, order, r).widened(1e-11 * (1 + std::abs(ref))).contains(ref));
                }
            }
        }
    }

    TEST_CASE("g sign facts")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        CHECK(eval_g(0.05, 0, r).positive());
        CHECK(eval_g(0.15, 0, r).negative());
        for (double k : {0.5, 0.55, 0.56, 0.6}) {
            const Roughness rk = Roughness::from_kappa(k);
            for (int i = 0; i <= 970; ++i)
                REQUIRE(eval_g(0.03 + i * 1e-3, 2, rk).positive());
        }
        const Roughness half = Roughness::from_kappa(0.5);
        const BoundedValue g1 = eval_g(1.0, 0, half);
        CHECK(g1.negative());
        CHECK(g1.widened(1e-12).contains(static_cast<double>(oracle::g(1.0L, 0.5L))));
    }

    TEST_CASE("third derivative by finite differences")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        const double h = 1e-5;
        for (double x : {0.1, 0.4, 0.8}) {
            const double fd = (eval_g(x + h, 2, r).mid() - eval_g(x - h, 2, r).mid()) / (2 * h);
            CHECK(eval_g(x, 3, r).mid() == doctest::Approx(fd).epsilon(1e-6));
        }
    }

    TEST_CASE("G over jump times")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        CHECK(eval_G_jumps(JumpTimes{{}, 64}, 0.3, r).contains(0.0));
        Stream s(14);
        for (int i = 0; i < 1000; ++i) {
            const double x = s.uniform();
            const BoundedValue one = eval_G_jumps(JumpTimes{{0}, 64}, x, r);
            REQUIRE(one.overlaps(r.kappa() * eval_g(x, 0, r)));

            const BitSequence xi = random_bits(s, 64);
            const BoundedValue G = eval_G_jumps(jump_times(xi), x, r, 0, 60);
            const BoundedValue d = eval_S({xi, x}, r, 60) - eval_S({BitSequence::zeros(64), x}, r, 60);
            REQUIRE(G.widened(1e-12).overlaps(d));
        }
    }

    TEST_CASE("difference methods agree and are antisymmetric")
    {
        const Roughness r = Roughness::from_kappa(0.55);
        Stream s(15);
        for (int i = 0; i < 10000; ++i) {
            const auto [xi, eta] = sample_macroscopic_pair(s, 64);
            const double x = s.uniform();
            const int order = i % 3;
            const BoundedValue a = eval_S_diff(xi, eta, x, r, DiffMethod::direct, order);
            const BoundedValue b = eval_S_diff(xi, eta, x, r, DiffMethod::jumps, order);
            REQUIRE(a.widened(1e-12 * (1 + std::abs(a.mid()))).overlaps(b));
            const BoundedValue c = eval_S_diff(eta, xi, x, r, DiffMethod::direct, order);
            REQUIRE(c.lo == -a.hi);
            REQUIRE(c.hi == -a.lo);
        }
        CHECK_THROWS_AS(eval_S_diff(BitSequence::zeros(8), BitSequence::zeros(8), 0.1, r, DiffMethod::direct),
                        DegenerateInputError);
    }

    TEST_CASE("sup bounds")
    {
        const SupBounds b = sup_bounds(Roughness::from_kappa(0.55));
        CHECK(b.sup_S <= 2 * pi * 0.55 / 0.45 * (1 + 1e-15));
        double prev[5] = {0, 0, 0, 0, 0};
        for (double k : {0.5, 0.55, 0.56, 0.6, 0.9}) {
            const SupBounds c = sup_bounds(Roughness::from_kappa(k));
            const double cur[5] = {c.sup_g, c.sup_g1, c.sup_g2, c.sup_g3, c.sup_S};
            for (int j = 0; j < 5; ++j) {
                CHECK(cur[j] > prev[j]);
                prev[j] = cur[j];
            }
        }
        for (double k : {0.5, 0.55, 0.56}) {
            const Roughness r = Roughness::from_kappa(k);
            const SupBounds c = sup_bounds(r);
            const double cert = certified_sup_abs_g(r, 0);
            for (int order = 0; order <= 2; ++order) {
                double m = 0;
                for (int i = 0; i <= 10000; ++i)
                    m = std::max(m, std::abs(static_cast<double>(oracle::g(i * 1e-4L, k, order, 60))));
                CHECK(m <= c.for_order(order));
                if (order == 0) {
                    CHECK(m <= cert);
                    CHECK(cert < c.sup_g);
                }
            }
        }
    }
}
