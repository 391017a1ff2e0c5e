#include "wsbr/measures.hpp"

#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/pair_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wsbr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::uint64_t kHalf = std::uint64_t{1} << 63;
constexpr std::int64_t kChunk = 4096;

bool macroscopic_words(std::uint64_t a, std::uint64_t b)
{
    return a > b ? a - b > kHalf : b - a > kHalf;
}

// 2 pi sum_{n<=terms} kappa^n (sin 2 pi B_n(xi,x) - sin 2 pi B_n(eta,x)) on raw words.
double s_diff_words(std::uint64_t xi, std::uint64_t eta, double x, double k, int terms)
{
    double a = x, b = x, kn = 1.0, s = 0.0;
    for (int n = 0; n < terms; ++n) {
        a = (static_cast<double>((xi >> (63 - n)) & 1u) + a) * 0.5;
        b = (static_cast<double>((eta >> (63 - n)) & 1u) + b) * 0.5;
        kn *= k;
        s += kn * (std::sin(2.0 * pi * a) - std::sin(2.0 * pi * b));
    }
    return 2.0 * pi * s;
}

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

void check_terms(int terms)
{
    if (terms < 1 || terms > 64)
        throw DomainError("terms must be in 1..64");
}

EmpiricalMeasure make_measure(double half_width, int bins)
{
    if (bins < 1)
        throw DomainError("bins must be positive");
    EmpiricalMeasure m;
    m.half_width = half_width;
    m.bin_edges = uniform_grid(-half_width, half_width, bins);
    m.mass.assign(static_cast<std::size_t>(bins), 0.0);
    m.stderr_mass.assign(static_cast<std::size_t>(bins), 0.0);
    m.counts.assign(static_cast<std::size_t>(bins), 0);
    m.min_value = std::numeric_limits<double>::infinity();
    m.max_value = -std::numeric_limits<double>::infinity();
    return m;
}

struct Accumulator {
    double sum = 0.0, sumsq = 0.0;
    void add(double v) { sum += v; sumsq += v * v; }
};

void add_value(EmpiricalMeasure& m, double v, Accumulator& acc)
{
    const int b = m.bins();
    int i = static_cast<int>(std::floor(m.coord(v)));
    i = std::clamp(i, 0, b - 1);
    ++m.counts[static_cast<std::size_t>(i)];
    ++m.n_accepted;
    acc.add(v);
    m.min_value = std::min(m.min_value, v);
    m.max_value = std::max(m.max_value, v);
}

void finish(EmpiricalMeasure& m, const Accumulator& acc)
{
    const double n = static_cast<double>(m.n_samples);
    for (std::size_t i = 0; i < m.mass.size(); ++i) {
        const double p = static_cast<double>(m.counts[i]) / n;
        m.mass[i] = p;
        m.stderr_mass[i] = std::sqrt(p * (1.0 - p) / n);
    }
    const double p = static_cast<double>(m.n_accepted) / n;
    m.total_mass = p;
    m.total_mass_stderr = std::sqrt(p * (1.0 - p) / n);
    if (m.n_accepted > 0) {
        const double na = static_cast<double>(m.n_accepted);
        m.mean = acc.sum / na;
        const double var = m.n_accepted > 1 ? std::max(0.0, (acc.sumsq - na * m.mean * m.mean) / (na - 1.0)) : 0.0;
        m.mean_stderr = std::sqrt(var / na);
    }
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int intervals)
{
    if (intervals < 1 || !(hi > lo))
        throw DomainError("uniform_grid: need hi > lo and intervals >= 1");
    std::vector<double> g(static_cast<std::size_t>(intervals) + 1);
    for (int i = 0; i <= intervals; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / intervals;
    g.back() = hi;
    return g;
}

double EmpiricalMeasure::mass_between_coords(double ta, double tb) const
{
    const double b = bins();
    ta = std::clamp(ta, 0.0, b);
    tb = std::clamp(tb, 0.0, b);
    if (!(tb > ta))
        return 0.0;
    const int ia = static_cast<int>(std::floor(ta));
    const int ib = static_cast<int>(std::floor(tb));
    auto at = [&](int i) { return i < bins() ? mass[static_cast<std::size_t>(i)] : 0.0; };
    if (ia == ib)
        return (tb - ta) * at(ia);
    double s = (ia + 1 - ta) * at(ia);
    for (int j = ia + 1; j < ib; ++j)
        s += at(j);
    return s + (tb - ib) * at(ib);
}

EmpiricalMeasure sample_rho(const Roughness& r, std::int64_t n, bool restricted, std::uint64_t seed, int bins,
                            int terms)
{
    if (n < 1)
        throw DomainError("sample_rho: n must be positive");
    check_terms(terms);
    const double k = r.kappa();
    EmpiricalMeasure m = make_measure(2.0 * sup_bounds(r).sup_S, bins);
    m.n_samples = n;
    Accumulator acc;
    for (std::int64_t c0 = 0, chunk = 0; c0 < n; c0 += kChunk, ++chunk) {
        Stream s(seed, static_cast<std::uint64_t>(chunk));
        const std::int64_t c1 = std::min(n, c0 + kChunk);
        for (std::int64_t i = c0; i < c1; ++i) {
            const std::uint64_t xi = s.next();
            const std::uint64_t eta = s.next();
            const double x = s.uniform();
            if (restricted && !macroscopic_words(xi, eta))
                continue;
            add_value(m, s_diff_words(xi, eta, x, k, terms), acc);
        }
    }
    finish(m, acc);
    return m;
}

EmpiricalMeasure sbr_marginal(double x, const Roughness& r, std::int64_t n, std::uint64_t seed, int bins, int terms)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("sbr_marginal: x outside [0,1]");
    if (n < 1)
        throw DomainError("sbr_marginal: n must be positive");
    check_terms(terms);
    const double k = r.kappa();
    EmpiricalMeasure m = make_measure(sup_bounds(r).sup_S, bins);
    m.n_samples = n;
    Accumulator acc;
    for (std::int64_t c0 = 0, chunk = 0; c0 < n; c0 += kChunk, ++chunk) {
        Stream s(seed, static_cast<std::uint64_t>(chunk));
        const std::int64_t c1 = std::min(n, c0 + kChunk);
        for (std::int64_t i = c0; i < c1; ++i)
            add_value(m, s_words(s.next(), x, k, terms), acc);
    }
    finish(m, acc);
    return m;
}

TelescopingReport telescoping_check(const EmpiricalMeasure& rho, const EmpiricalMeasure& rho_hat, const Roughness& r,
                                    int n_max)
{
    if (rho.bin_edges != rho_hat.bin_edges)
        throw DomainError("telescoping_check: binnings differ");
    if (n_max < 0)
        throw DomainError("telescoping_check: n_max must be >= 0");
    const double k = r.kappa();
    const int b = rho.bins();
    const double L = rho.half_width;
    TelescopingReport t;
    t.n_max = n_max;
    t.n0_matches = true;
    for (int i = 0; i < b; ++i) {
        const double lo = rho.bin_edges[static_cast<std::size_t>(i)];
        const double hi = rho.bin_edges[static_cast<std::size_t>(i) + 1];
        double rhs = 0.0, w = 1.0, scale = 1.0, n0 = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            double term;
            if (n == 0) {
                term = rho_hat.mass_between_coords(i, i + 1);
                n0 = term;
            } else {
                const double ta = (lo * scale + L) / (2.0 * L) * b;
                const double tb = (hi * scale + L) / (2.0 * L) * b;
                term = rho_hat.mass_between_coords(ta, tb);
            }
            rhs += w * term;
            w *= 0.5;
            scale /= k;
        }
        if (n0 != rho_hat.mass[static_cast<std::size_t>(i)])
            t.n0_matches = false;
        const double lhs = rho.mass[static_cast<std::size_t>(i)];
        t.bin_lo.push_back(lo);
        t.bin_hi.push_back(hi);
        t.lhs.push_back(lhs);
        t.rhs.push_back(rhs);
        t.defect.push_back(lhs - rhs);
        t.n0_term.push_back(n0);
        t.total_lhs += lhs;
        t.total_rhs += rhs;
    }
    t.total_defect = t.total_lhs - t.total_rhs;
    t.tail_bound = std::ldexp(rho_hat.total_mass, -n_max);
    t.note = "summed over the whole line the right side has mass 2 * rho_hat(R) = 1/2 while rho(R) = 1; "
             "the defect is reported, not corrected";
    return t;
}

std::vector<double> roots_of_f(const BitSequence& xi, const BitSequence& eta, double y, const Roughness& r,
                               double tol)
{
    if (r.kappa() > kCertKappaMax)
        throw ValidityError("roots_of_f: shape certificate unavailable for kappa > " + std::to_string(kCertKappaMax));
    if (!(tol > 0.0))
        throw DomainError("roots_of_f: tol must be positive");
    const std::uint64_t a = xi.top_word(), b = eta.top_word();
    if (!macroscopic_words(a, b))
        throw DomainError("roots_of_f: pair is not macroscopic");
    // Orient so that the first sequence is the larger; f for the swapped pair is -f.
    const bool swap = b > a;
    const BitSequence& p = swap ? eta : xi;
    const BitSequence& q = swap ? xi : eta;
    const double target = swap ? -y : y;
    const int terms = std::min({kCertTerms, p.depth(), q.depth()});
    auto f = [&](double x, int order) { return eval_S_diff(p, q, x, r, DiffMethod::direct, order, terms); };

    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const BoundedValue d = f(mid, 1);
        if (d.hi < 0.0)
            lo = mid;
        else if (d.lo > 0.0)
            hi = mid;
        else
            break;
    }
    const double xs = 0.5 * (lo + hi);
    const double fmin = f(xs, 0).mid();
    if (fmin > target + tol)
        return {};
    if (std::abs(fmin - target) <= tol)
        return {xs};

    std::vector<double> roots;
    auto branch = [&](double l, double h, bool decreasing) {
        const double fl = f(l, 0).mid(), fh = f(h, 0).mid();
        if (decreasing ? fl < target : fh < target)
            return;
        while (h - l > tol) {
            const double mid = 0.5 * (l + h);
            const BoundedValue e = f(mid, 0) + (-target);
            const bool above = e.lo > 0.0, below = e.hi < 0.0;
            if (!above && !below)
                break;
            if (above == decreasing)
                l = mid;
            else
                h = mid;
        }
        roots.push_back(0.5 * (l + h));
    };
    branch(0.0, xs, true);
    branch(xs, 1.0, false);
    return roots;
}

namespace {

// For one pair and ascending levels v_j: R_j = sum over roots of min(1/|f'|, cap),
// Phi_j = lambda{x : f(x) < v_j}.
class LevelKernel {
public:
    LevelKernel(const std::vector<double>& levels, const DensityOptions& opt) : levels_(levels), opt_(opt)
    {
        R.resize(levels.size());
        Phi.resize(levels.size());
        capped.resize(levels.size());
        nroots.resize(levels.size());
    }

    void run(const ChebProfile& p)
    {
        double d0, dd, d1;
        p.df_ddf(0.0, d0, dd);
        p.df_ddf(1.0, d1, dd);
        double xs;
        if (d0 >= 0.0)
            xs = 0.0;
        else if (d1 <= 0.0)
            xs = 1.0;
        else
            xs = minimum(p);
        const double fmin = p.f(xs), f0 = p.f(0.0), f1 = p.f(1.0);
        double xl = xs, xr = xs;
        for (std::size_t j = 0; j < levels_.size(); ++j) {
            const double v = levels_[j];
            R[j] = 0.0;
            capped[j] = 0;
            nroots[j] = 0;
            if (v <= fmin) {
                Phi[j] = 0.0;
                continue;
            }
            double left = 0.0, right = 1.0;
            if (v < f0) {
                double df;
                left = solve(p, v, 0.0, xl, false, xl, df);
                xl = left;
                add_root(j, df);
            } else {
                xl = 0.0;
            }
            if (v < f1) {
                double df;
                right = solve(p, v, xr, 1.0, true, xr, df);
                xr = right;
                add_root(j, df);
            } else {
                xr = 1.0;
            }
            Phi[j] = right - left;
        }
    }

    std::vector<double> R, Phi;
    std::vector<int> capped, nroots;

private:
    void add_root(std::size_t j, double df)
    {
        const double a = std::abs(df);
        ++nroots[j];
        if (a * opt_.cap <= 1.0) {
            R[j] += opt_.cap;
            ++capped[j];
        } else {
            R[j] += 1.0 / a;
        }
    }

    static double minimum(const ChebProfile& p)
    {
        double lo = 0.0, hi = 1.0, x = 0.57;
        for (int it = 0; it < 100; ++it) {
            double d, dd;
            p.df_ddf(x, d, dd);
            if (d < 0.0)
                lo = x;
            else
                hi = x;
            double xn = x - d / dd;
            if (!(dd > 0.0) || !(xn > lo && xn < hi))
                xn = 0.5 * (lo + hi);
            const bool done = std::abs(xn - x) < 1e-15 || hi - lo < 1e-15;
            x = xn;
            if (done)
                break;
        }
        return x;
    }

    // Root of f = v on [lo, hi] where f is monotone; safeguarded Newton.
    double solve(const ChebProfile& p, double v, double lo, double hi, bool increasing, double x0, double& df) const
    {
        double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
        double fx;
        for (int it = 0; it < 200; ++it) {
            p.f_df(x, fx, df);
            const double g = fx - v;
            if (g == 0.0)
                return x;
            if ((g < 0.0) == increasing)
                lo = x;
            else
                hi = x;
            double xn = x - g / df;
            if (!(xn > lo && xn < hi))
                xn = 0.5 * (lo + hi);
            const bool done = std::abs(xn - x) < opt_.root_tol || hi - lo < opt_.root_tol;
            x = xn;
            if (done)
                break;
        }
        p.f_df(x, fx, df);
        return x;
    }

    const std::vector<double>& levels_;
    DensityOptions opt_;
};

void check_density_args(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs,
                        const DensityOptions& opt)
{
    if (r.kappa() > kCertKappaMax)
        throw ValidityError("density: shape certificate unavailable for kappa > " + std::to_string(kCertKappaMax));
    if (y_grid.size() < 2 || !std::is_sorted(y_grid.begin(), y_grid.end())
        || std::adjacent_find(y_grid.begin(), y_grid.end()) != y_grid.end())
        throw DomainError("density: y_grid must be strictly ascending with at least two points");
    if (n_pairs < 2)
        throw DomainError("density: need at least two pairs");
    check_terms(opt.terms);
    if (!(opt.cap > 0.0) || !(opt.root_tol > 0.0))
        throw DomainError("density: cap and root_tol must be positive");
    if (opt.bin_stride < 1 || (y_grid.size() - 1) % static_cast<std::size_t>(opt.bin_stride) != 0)
        throw DomainError("density: bin_stride must divide the number of grid intervals");
}

std::vector<double> sorted_levels(const std::vector<std::vector<double>>& groups)
{
    std::vector<double> v;
    for (const auto& g : groups)
        for (double y : g) {
            v.push_back(y);
            v.push_back(-y);
        }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::size_t level_index(const std::vector<double>& levels, double v)
{
    return static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), v) - levels.begin());
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

// Shared driver: per pair, val_i = sum_n w_n (R(s_n y_i) + R(-s_n y_i)), bin masses likewise.
DensityEstimate telescoped_density(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs,
                                   int n_max, std::uint64_t seed, const DensityOptions& opt)
{
    check_density_args(r, y_grid, n_pairs, opt);
    const double k = r.kappa();
    const std::size_t ny = y_grid.size();
    std::vector<double> weights, scales;
    std::vector<std::vector<double>> groups;
    for (int n = 0; n <= n_max; ++n) {
        const double s = std::pow(k, -n);
        weights.push_back(std::pow(2.0 * k, -n));
        scales.push_back(s);
        std::vector<double> g(ny);
        for (std::size_t i = 0; i < ny; ++i)
            g[i] = n == 0 ? y_grid[i] : y_grid[i] * s;
        groups.push_back(std::move(g));
    }
    const std::vector<double> levels = sorted_levels(groups);
    std::vector<std::vector<std::size_t>> pos_idx(groups.size()), neg_idx(groups.size());
    for (std::size_t n = 0; n < groups.size(); ++n)
        for (double y : groups[n]) {
            pos_idx[n].push_back(level_index(levels, y));
            neg_idx[n].push_back(level_index(levels, -y));
        }

    const std::size_t stride = static_cast<std::size_t>(opt.bin_stride);
    const std::size_t nbins = (ny - 1) / stride;
    std::vector<Accumulator> val(ny), bin(nbins);
    Accumulator integ;
    std::vector<std::int64_t> cap_count(ny, 0), root_count(ny, 0);
    std::vector<double> v(ny), m(nbins);
    LevelKernel kern(levels, opt);
    constexpr std::int64_t chunk_pairs = 1024;
    for (std::int64_t c0 = 0, chunk = 0; c0 < n_pairs; c0 += chunk_pairs, ++chunk) {
        Stream s(seed, static_cast<std::uint64_t>(chunk));
        const std::int64_t c1 = std::min(n_pairs, c0 + chunk_pairs);
        for (std::int64_t pi_ = c0; pi_ < c1; ++pi_) {
            const auto [xi, eta] = sample_macroscopic_words(s);
            kern.run(ChebProfile(PairProfile(xi, eta, r, opt.terms)));
            std::fill(v.begin(), v.end(), 0.0);
            std::fill(m.begin(), m.end(), 0.0);
            for (std::size_t n = 0; n < groups.size(); ++n) {
                const double w = weights[n];
                for (std::size_t i = 0; i < ny; ++i) {
                    const std::size_t a = pos_idx[n][i], b = neg_idx[n][i];
                    v[i] += w * (kern.R[a] + kern.R[b]);
                    cap_count[i] += kern.capped[a] + kern.capped[b];
                    root_count[i] += kern.nroots[a] + kern.nroots[b];
                }
                // integral of the n-th term over [a, b] = [y_i, y_{i+stride}]:
                // w * (Phi(s b) - Phi(s a) + Phi(-s a) - Phi(-s b)) / s
                const double inv = 1.0 / scales[n];
                for (std::size_t i = 0; i < nbins; ++i) {
                    const std::size_t a = i * stride, b = a + stride;
                    const double d = kern.Phi[pos_idx[n][b]] - kern.Phi[pos_idx[n][a]] + kern.Phi[neg_idx[n][a]]
                                     - kern.Phi[neg_idx[n][b]];
                    m[i] += w * d * inv;
                }
            }
            for (std::size_t i = 0; i < ny; ++i)
                val[i].add(v[i]);
            for (std::size_t i = 0; i < nbins; ++i)
                bin[i].add(m[i]);
            integ.add(trapezoid(y_grid, v));
        }
    }

    // pairs are uniform on {xi - eta > 1/2}, which has area 1/8
    constexpr double area = 0.125;
    const double n = static_cast<double>(n_pairs);
    auto mean_se = [&](const Accumulator& a, double& mean, double& se) {
        const double mu = a.sum / n;
        const double var = std::max(0.0, (a.sumsq - n * mu * mu) / (n - 1.0));
        mean = area * mu;
        se = area * std::sqrt(var / n);
    };
    DensityEstimate d;
    d.y_grid = y_grid;
    d.n_pairs = n_pairs;
    d.phi.resize(ny);
    d.stderr_phi.resize(ny);
    d.cap_rate.resize(ny);
    for (std::size_t i = 0; i < ny; ++i) {
        mean_se(val[i], d.phi[i], d.stderr_phi[i]);
        d.cap_rate[i] = root_count[i] ? static_cast<double>(cap_count[i]) / static_cast<double>(root_count[i]) : 0.0;
    }
    d.bin_mass.resize(nbins);
    d.bin_mass_stderr.resize(nbins);
    for (std::size_t i = 0; i < nbins; ++i)
        mean_se(bin[i], d.bin_mass[i], d.bin_mass_stderr[i]);
    mean_se(integ, d.integral, d.integral_stderr);
    return d;
}

}  // namespace

DensityEstimate density_rho_hat(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs,
                                std::uint64_t seed, const DensityOptions& opt)
{
    return telescoped_density(r, y_grid, n_pairs, 0, seed, opt);
}

DensityEstimate density_rho(const Roughness& r, const std::vector<double>& y_grid, std::int64_t n_pairs, int n_max,
                            std::uint64_t seed, const DensityOptions& opt)
{
    if (n_max < 0)
        throw DomainError("density_rho: n_max must be >= 0");
    DensityEstimate d = telescoped_density(r, y_grid, n_pairs, n_max, seed, opt);
    const double g = r.gamma();
    const double peak = *std::max_element(d.phi.begin(), d.phi.end());
    d.tail_bound = g < 1.0 ? std::pow(g, n_max + 1) / (1.0 - g) * peak : std::numeric_limits<double>::infinity();
    return d;
}

std::complex<double> empirical_char_fn(const std::vector<double>& samples, double u)
{
    if (samples.empty())
        throw DegenerateInputError("empirical_char_fn: no samples");
    double c = 0.0, s = 0.0;
    for (double v : samples) {
        c += std::cos(u * v);
        s += std::sin(u * v);
    }
    const double n = static_cast<double>(samples.size());
    return {c / n, s / n};
}

}  // namespace wsbr
