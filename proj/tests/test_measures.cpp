#include "oracle.hpp"

#include "wsbr/errors.hpp"
#include "wsbr/measures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace wsbr;

namespace {

const Roughness kR = Roughness::from_kappa(0.55);

double f_oracle(const BitSequence& xi, const BitSequence& eta, double x)
{
    return static_cast<double>(oracle::S(std::vector<int>(xi.bits.begin(), xi.bits.end()), x, kR.kappa())
                               - oracle::S(std::vector<int>(eta.bits.begin(), eta.bits.end()), x, kR.kappa()));
}

}  // namespace

TEST_SUITE("measures")
{
    TEST_CASE("unrestricted rho has unit mass")
    {
        const EmpiricalMeasure m = sample_rho(kR, 20000, false, 1, 64);
        CHECK(m.total_mass == 1.0);
        CHECK(m.n_accepted == 20000);
        CHECK(m.bin_edges.size() == 65);
        CHECK(m.min_value >= -m.half_width);
        CHECK(m.max_value <= m.half_width);
    }

    TEST_CASE("restricted rho carries mass 1/4")
    {
        const EmpiricalMeasure m = sample_rho(kR, 200000, true, 2, 64);
        CHECK(std::abs(m.total_mass - 0.25) <= 3 * m.total_mass_stderr);
        CHECK(m.total_mass_stderr == doctest::Approx(std::sqrt(m.total_mass * (1 - m.total_mass) / 200000)));
    }

    TEST_CASE("rho is symmetric under reflection")
    {
        const EmpiricalMeasure m = sample_rho(kR, 200000, true, 3, 64);
        int outside = 0;
        for (int i = 0; i < m.bins() / 2; ++i) {
            const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(m.bins() - 1 - i);
            const double s = std::hypot(m.stderr_mass[a], m.stderr_mass[b]);
            outside += std::abs(m.mass[a] - m.mass[b]) > 3 * s + 1e-12;
        }
        CHECK(outside <= 1);
        CHECK(std::abs(m.mean) <= 3 * m.mean_stderr);
    }

    TEST_CASE("sampling is deterministic and chunk-stable")
    {
        const EmpiricalMeasure a = sample_rho(kR, 10000, true, 4, 32);
        const EmpiricalMeasure b = sample_rho(kR, 10000, true, 4, 32);
        CHECK(a.counts == b.counts);
        // the first 4096 samples form the first chunk of the longer run
        const EmpiricalMeasure c = sample_rho(kR, 4096, true, 4, 32);
        for (int i = 0; i < 32; ++i)
            CHECK(c.counts[static_cast<std::size_t>(i)] <= a.counts[static_cast<std::size_t>(i)]);
    }

    TEST_CASE("mass between bin coordinates")
    {
        const EmpiricalMeasure m = sample_rho(kR, 20000, true, 5, 16);
        CHECK(m.mass_between_coords(3, 4) == m.mass[3]);
        CHECK(m.mass_between_coords(0, 16) == doctest::Approx(m.total_mass));
        CHECK(m.mass_between_coords(3.5, 4) == doctest::Approx(0.5 * m.mass[3]));
        CHECK(m.mass_between_coords(-5, 30) == doctest::Approx(m.total_mass));
        CHECK(m.coord(0.0) == doctest::Approx(8.0));
    }

    TEST_CASE("telescoping totals")
    {
        const EmpiricalMeasure rho = sample_rho(kR, 200000, false, 6, 64);
        const EmpiricalMeasure rho_hat = sample_rho(kR, 200000, true, 7, 64);
        const TelescopingReport t = telescoping_check(rho, rho_hat, kR, 40);
        CHECK(t.n0_matches);
        for (std::size_t i = 0; i < t.n0_term.size(); ++i)
            CHECK(t.n0_term[i] == rho_hat.mass[i]);
        CHECK(t.total_lhs == doctest::Approx(1.0));
        CHECK(std::abs(t.total_rhs - 0.5) <= 6 * rho_hat.total_mass_stderr + t.tail_bound);
        CHECK(std::abs(t.total_defect - 0.5) <= 6 * rho_hat.total_mass_stderr + t.tail_bound);
        CHECK_THROWS_AS(telescoping_check(rho, sample_rho(kR, 100, true, 7, 32), kR, 4), DomainError);
    }

    TEST_CASE("telescoping profile is statistically stable")
    {
        const EmpiricalMeasure rho_a = sample_rho(kR, 100000, false, 8, 32);
        const EmpiricalMeasure hat_a = sample_rho(kR, 100000, true, 9, 32);
        const EmpiricalMeasure rho_b = sample_rho(kR, 100000, false, 10, 32);
        const EmpiricalMeasure hat_b = sample_rho(kR, 100000, true, 11, 32);
        const TelescopingReport a = telescoping_check(rho_a, hat_a, kR, 40);
        const TelescopingReport b = telescoping_check(rho_b, hat_b, kR, 40);
        // the right side is sum 2^-n rho_hat(bins), so its error is at most
        // 2 sup stderr(rho_hat(bin)) per run
        double hat_sup = 0;
        for (std::size_t i = 0; i < a.defect.size(); ++i)
            hat_sup = std::max({hat_sup, hat_a.stderr_mass[i], hat_b.stderr_mass[i]});
        for (std::size_t i = 0; i < a.defect.size(); ++i) {
            const double s = std::hypot(rho_a.stderr_mass[i], rho_b.stderr_mass[i]) + 2 * std::sqrt(2.0) * hat_sup;
            CHECK(std::abs(a.defect[i] - b.defect[i]) <= 5 * s);
        }
    }

    TEST_CASE("roots of f")
    {
        Stream s(12);
        for (int trial = 0; trial < 40; ++trial) {
            const auto [xi, eta] = sample_macroscopic_pair(s, 64);
            CHECK(roots_of_f(xi, eta, -1e3, kR, 1e-11).empty());
            // the minimum lies below the axis, but f(0) and f(1) need not be
            // positive, so y = 0 can have 0, 1 or 2 roots
            const std::vector<double> at0 = roots_of_f(xi, eta, 0.0, kR, 1e-11);
            for (double x : at0)
                CHECK(std::abs(f_oracle(xi, eta, x)) < 1e-8);
            double fmin = 1e9;
            for (int i = 0; i <= 200; ++i)
                fmin = std::min(fmin, f_oracle(xi, eta, i / 200.0));
            CHECK(fmin < 0.0);

            // brute-force scan for sign changes of f - y
            const double y = 2.0 * (s.uniform() - 0.5);
            const std::vector<double> roots = roots_of_f(xi, eta, y, kR, 1e-11);
            std::vector<double> scan;
            const int n = 10000;
            double prev = f_oracle(xi, eta, 0.0) - y;
            for (int i = 1; i <= n; ++i) {
                const double x = static_cast<double>(i) / n;
                const double cur = f_oracle(xi, eta, x) - y;
                if ((prev < 0) != (cur < 0))
                    scan.push_back(x - 0.5 / n);
                prev = cur;
            }
            REQUIRE(scan.size() == roots.size());
            for (std::size_t j = 0; j < roots.size(); ++j)
                CHECK(std::abs(scan[j] - roots[j]) <= 0.5 / n + 10 * 1e-11);

            // swapping the pair negates f
            const std::vector<double> swapped = roots_of_f(eta, xi, -y, kR, 1e-11);
            REQUIRE(swapped.size() == roots.size());
            for (std::size_t j = 0; j < roots.size(); ++j)
                CHECK(swapped[j] == doctest::Approx(roots[j]).epsilon(1e-9));
        }
        const auto [xi, eta] = sample_macroscopic_pair(s, 64);
        CHECK_THROWS_AS(roots_of_f(xi, eta, 0.0, Roughness::from_kappa(0.58), 1e-11), ValidityError);
        CHECK_THROWS_AS(roots_of_f(eta, eta, 0.0, kR, 1e-11), DomainError);
    }

    TEST_CASE("density of rho_hat integrates to 1/4")
    {
        const double L = 2 * sup_bounds(kR).sup_S;
        const std::vector<double> grid = uniform_grid(-L, L, 4096);
        const DensityEstimate d = density_rho_hat(kR, grid, 4000, 13);
        CHECK(d.phi.size() == grid.size());
        CHECK(std::abs(d.integral - 0.25) <= 3 * d.integral_stderr + 2e-3);
        double mass = 0;
        for (double m : d.bin_mass)
            mass += m;
        // exact preimage lengths: each pair contributes exactly 2 / 8
        CHECK(mass == doctest::Approx(0.25).epsilon(1e-9));
        for (double c : d.cap_rate)
            CHECK(c == 0.0);
    }

    TEST_CASE("density matches the restricted histogram")
    {
        const double L = 2 * sup_bounds(kR).sup_S;
        const int bins = 32;
        const DensityOptions opt{40, 1e-11, 1e6, 4};
        const DensityEstimate d = density_rho_hat(kR, uniform_grid(-L, L, bins * 4), 4000, 14, opt);
        const EmpiricalMeasure h = sample_rho(kR, 400000, true, 15, bins);
        REQUIRE(d.bin_mass.size() == static_cast<std::size_t>(bins));
        int outside = 0;
        for (std::size_t i = 0; i < d.bin_mass.size(); ++i) {
            const double s = std::hypot(d.bin_mass_stderr[i], h.stderr_mass[i]);
            outside += std::abs(d.bin_mass[i] - h.mass[i]) > 3 * s + 1e-12;
        }
        CHECK(outside <= 1);
    }

    TEST_CASE("telescoped density")
    {
        const double L = 2 * sup_bounds(kR).sup_S;
        const std::vector<double> grid = uniform_grid(-L, L, 256);
        const DensityEstimate hat = density_rho_hat(kR, grid, 1000, 16);
        const DensityEstimate d0 = density_rho(kR, grid, 1000, 0, 16);
        CHECK(d0.phi == hat.phi);
        CHECK(d0.bin_mass == hat.bin_mass);

        const DensityEstimate d = density_rho(kR, grid, 1000, 30, 16);
        double mass = 0;
        for (double m : d.bin_mass)
            mass += m;
        // mass of sum_n 2^-n rho_hat(kappa^-n A) over the line
        double expected = 0;
        for (int n = 0; n <= 30; ++n)
            expected += std::ldexp(0.25, -n);
        CHECK(mass == doctest::Approx(expected).epsilon(1e-6));
        const std::size_t m = d.phi.size();
        for (std::size_t i = 0; i < m; ++i)
            CHECK(d.phi[i] == doctest::Approx(d.phi[m - 1 - i]).epsilon(1e-9));
    }

    TEST_CASE("sbr marginal")
    {
        const double sup = sup_bounds(kR).sup_S;
        for (double x : {0.0, 0.3, 0.9}) {
            const EmpiricalMeasure a = sbr_marginal(x, kR, 50000, 17, 128);
            const EmpiricalMeasure b = sbr_marginal(x, kR, 50000, 18, 128);
            CHECK(a.total_mass == 1.0);
            CHECK(a.min_value >= -sup);
            CHECK(a.max_value <= sup);
            CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.mean_stderr, b.mean_stderr));
        }
        CHECK_THROWS_AS(sbr_marginal(1.5, kR, 10, 1), DomainError);
    }

    TEST_CASE("characteristic function")
    {
        std::vector<double> v = {0.3, -1.2, 2.5};
        CHECK(empirical_char_fn(v, 0.0) == std::complex<double>(1.0, 0.0));
        Stream s(19);
        for (int i = 0; i < 20; ++i)
            CHECK(std::abs(empirical_char_fn(v, 10 * s.uniform())) <= 1.0 + 1e-15);
        CHECK_THROWS_AS(empirical_char_fn({}, 1.0), DegenerateInputError);
    }

    TEST_CASE("L2 diagnostic on a small run")
    {
        const L2Options opt{4, 16, 2, 2, 40};
        const L2Diag d = char_fn_l2_diag(kR, 1e3, 4096, 20, opt);
        REQUIRE(d.K.size() == d.l2_partial.size());
        REQUIRE(d.K.size() >= 4);
        CHECK(d.K.back() == doctest::Approx(1e3));
        for (std::size_t i = 1; i < d.K.size(); ++i)
            CHECK(d.K[i] > d.K[i - 1]);
        // |phi|^2 >= 0: partial integrals grow up to sampling noise
        for (std::size_t i = 1; i < d.l2_partial.size(); ++i)
            CHECK(d.l2_partial[i] >= d.l2_partial[i - 1] - 3 * d.stderr_l2[i]);
        CHECK(d.conv_at_zero > 0.0);
        CHECK(d.refinement_bins.size() == d.refinement_l2.size());
    }

    TEST_CASE("uniform grid")
    {
        const std::vector<double> g = uniform_grid(-1.0, 1.0, 4);
        CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
        CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 4), DomainError);
    }
}
