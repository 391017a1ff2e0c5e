#include "wsbr/measures.hpp"

#include "wsbr/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace wsbr {

namespace {

constexpr double pi = std::numbers::pi;

double s_words(std::uint64_t xi, double x, double k, int terms)
{
    double a = x, kn = 1.0, s = 0.0;
    for (int n = 0; n < terms; ++n) {
        a = (static_cast<double>((xi >> (63 - n)) & 1u) + a) * 0.5;
        kn *= k;
        s += kn * std::sin(2.0 * pi * a);
    }
    return 2.0 * pi * s;
}

// int_{-K}^{K} e^{iuD} / sinc^2(u delta / 2) du to order delta^2. Rounding to bin
// centres multiplies the characteristic function by sinc(u delta / 2); aliased
// terms are negligible while K delta stays well below pi.
double window_kernel(double K, double D, double delta)
{
    const double x = K * D;
    double base, second;  // int cos(uD) du and int u^2 cos(uD) du over [-K, K]
    if (x < 1e-2) {
        const double x2 = x * x;
        base = 2.0 * K * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
        second = 2.0 * K * K * K * (1.0 / 3.0 - x2 / 10.0 + x2 * x2 / 168.0);
    } else {
        const double s = std::sin(x), c = std::cos(x);
        base = 2.0 * s / D;
        second = 2.0 * (K * K * s / D + 2.0 * K * c / (D * D) - 2.0 * s / (D * D * D));
    }
    return base + delta * delta / 12.0 * second;
}

struct MeanSe {
    std::vector<double> sum, sumsq;
    explicit MeanSe(std::size_t n) : sum(n, 0.0), sumsq(n, 0.0) {}
    void add(std::size_t i, double v) { sum[i] += v; sumsq[i] += v * v; }
    double mean(std::size_t i, double n) const { return sum[i] / n; }
    double se(std::size_t i, double n) const
    {
        if (n < 2.0)
            return 0.0;
        const double mu = sum[i] / n;
        return std::sqrt(std::max(0.0, (sumsq[i] - n * mu * mu) / (n - 1.0)) / n);
    }
};

}  // namespace

L2Diag char_fn_l2_diag(const Roughness& r, double u_max, std::int64_t n, std::uint64_t seed, const L2Options& opt)
{
    if (!(u_max > 0.0))
        throw DomainError("char_fn_l2_diag: u_max must be positive");
    if (n < 2)
        throw DomainError("char_fn_l2_diag: need at least two samples per slice");
    if (opt.x_slices < 1 || opt.bins_log2 < 8 || opt.bins_log2 > 24 || opt.points_per_decade < 1 || opt.decades < 1)
        throw DomainError("char_fn_l2_diag: bad options");
    if (opt.terms < 1 || opt.terms > 64)
        throw DomainError("char_fn_l2_diag: terms must be in 1..64");

    const double k = r.kappa();
    const double L = sup_bounds(r).sup_S;
    const std::size_t B = std::size_t{1} << opt.bins_log2;
    const double delta = 2.0 * L / static_cast<double>(B);
    const double m = static_cast<double>(n);
    const double pairs = m * (m - 1.0);

    L2Diag out;
    const int nk = opt.decades * opt.points_per_decade + 1;
    for (int j = 0; j < nk; ++j)
        out.K.push_back(u_max * std::pow(10.0, -opt.decades + static_cast<double>(j) / opt.points_per_decade));
    out.K.back() = u_max;
    for (int b = 6; b <= std::min(14, opt.bins_log2); ++b)
        out.refinement_bins.push_back(1 << b);

    MeanSe curve(out.K.size()), refine(out.refinement_bins.size());
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    std::vector<double> counts(B), padded(2 * B), corr;
    std::vector<std::complex<double>> spec;
    std::vector<double> ad;
    std::vector<double> dd;

    for (int j = 0; j < opt.x_slices; ++j) {
        Stream s(seed, static_cast<std::uint64_t>(j));
        const double x = (j + s.uniform()) / opt.x_slices;
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::int64_t i = 0; i < n; ++i) {
            const double v = s_words(s.next(), x, k, opt.terms);
            auto b = static_cast<std::int64_t>(std::floor((v + L) / delta));
            b = std::clamp<std::int64_t>(b, 0, static_cast<std::int64_t>(B) - 1);
            counts[static_cast<std::size_t>(b)] += 1.0;
        }

        // autocorrelation of the counts; entries are integers, so round off FFT noise
        std::fill(padded.begin(), padded.end(), 0.0);
        std::copy(counts.begin(), counts.end(), padded.begin());
        fft.fwd(spec, padded);
        for (auto& c : spec)
            c = std::norm(c);
        fft.inv(corr, spec, 2 * B);
        ad.clear();
        dd.clear();
        double a0 = 0.0;
        for (std::size_t i = 0; i < B; ++i)
            a0 += counts[i] * counts[i];
        for (std::size_t d = 1; d < B; ++d) {
            const double a = std::round(corr[d]);
            if (a > 0.0) {
                ad.push_back(a);
                dd.push_back(static_cast<double>(d) * delta);
            }
        }

        // ordered pairs at bin distance d >= 1 are counted twice
        for (std::size_t q = 0; q < out.K.size(); ++q) {
            const double K = out.K[q];
            double sum = (a0 - m) * window_kernel(K, 0.0, delta);
            for (std::size_t i = 0; i < ad.size(); ++i)
                sum += 2.0 * ad[i] * window_kernel(K, dd[i], delta);
            curve.add(q, sum / pairs);
        }

        for (std::size_t q = 0; q < out.refinement_bins.size(); ++q) {
            const std::size_t nb = static_cast<std::size_t>(out.refinement_bins[q]);
            const std::size_t f = B / nb;
            const double w = 2.0 * L / static_cast<double>(nb);
            double l2 = 0.0;
            for (std::size_t b = 0; b < nb; ++b) {
                double c = 0.0;
                for (std::size_t i = 0; i < f; ++i)
                    c += counts[b * f + i];
                l2 += c * c - c;
            }
            refine.add(q, l2 / (pairs * w));
        }
    }

    const double ns = opt.x_slices;
    for (std::size_t q = 0; q < out.K.size(); ++q) {
        out.l2_partial.push_back(curve.mean(q, ns));
        out.stderr_l2.push_back(curve.se(q, ns));
        out.increment.push_back(q == 0 ? out.l2_partial[0] : out.l2_partial[q] - out.l2_partial[q - 1]);
    }
    const std::size_t last = out.K.size() - 1;
    const std::size_t prev = last - static_cast<std::size_t>(opt.points_per_decade);
    out.last_decade_ratio = (out.l2_partial[last] - out.l2_partial[prev]) / out.l2_partial[last];
    out.saturated = out.last_decade_ratio < 0.05;
    for (std::size_t q = 0; q < out.refinement_bins.size(); ++q)
        out.refinement_l2.push_back(refine.mean(q, ns));
    if (out.refinement_l2.size() >= 2) {
        const double a = out.refinement_l2[out.refinement_l2.size() - 2], b = out.refinement_l2.back();
        out.refinement_last_change = std::abs(b - a) / b;
        out.stabilized = out.refinement_last_change < 0.05;
    }
    out.conv_at_zero = out.l2_partial[last] / (2.0 * pi);
    return out;
}

}  // namespace wsbr
