#include "wsbr/series.hpp"

#include "wsbr/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace wsbr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kMaxGTerms = 512;

// sin(pi / 2^(m+1))
const std::array<double, kMaxGTerms>& half_angle_sines()
{
    static const std::array<double, kMaxGTerms> table = [] {
        std::array<double, kMaxGTerms> t{};
        double a = pi / 2.0;
        for (int m = 0; m < kMaxGTerms; ++m) {
            t[static_cast<std::size_t>(m)] = std::sin(a);
            a *= 0.5;
        }
        return t;
    }();
    return table;
}

BoundedValue sum_terms(std::vector<double>& terms, double tail)
{
    double abs_sum = 0.0;
    for (double t : terms)
        abs_sum += std::abs(t);
    return series_enclosure(pairwise_sum(terms), tail, terms.size(), abs_sum);
}

}  // namespace

BoundedValue eval_W(double x, const Roughness& r, int terms)
{
    if (!r.w_defined())
        throw DomainError("eval_W: gamma = 1 gives a divergent series");
    if (terms < 1)
        throw DomainError("eval_W: terms must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("eval_W: x outside [0,1]");
    const double g = r.gamma();
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(terms) + 1);
    double t = x;
    double gn = 1.0;
    for (int n = 0; n < terms; ++n) {
        if (t == 0.0) {
            // cos(0) = 1 for every remaining term
            v.push_back(gn / (1.0 - g));
            return sum_terms(v, 0.0);
        }
        v.push_back(gn * std::cos(2.0 * pi * t));
        gn *= g;
        t *= 2.0;
        if (t >= 1.0)
            t -= 1.0;
    }
    return sum_terms(v, gn / (1.0 - g));
}

BoundedValue eval_S(const PhasePoint& p, const Roughness& r, int terms, int order)
{
    if (terms < 1)
        throw DomainError("eval_S: terms must be positive");
    if (terms > p.xi.depth())
        throw PrecisionError("eval_S: " + std::to_string(terms) + " terms exceed digit depth "
                             + std::to_string(p.xi.depth()));
    if (order < 0 || order > 2)
        throw DomainError("eval_S: order must be 0, 1 or 2");
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order);
    const double scale = order == 0 ? 2.0 * pi : order == 1 ? 4.0 * pi * pi : -8.0 * pi * pi * pi;
    std::vector<double> v(static_cast<std::size_t>(terms));
    double b = p.x;
    double qn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        b = (p.xi[n - 1] + b) * 0.5;
        qn *= q;
        const double a = 2.0 * pi * b;
        v[static_cast<std::size_t>(n - 1)] = scale * qn * (order == 1 ? std::cos(a) : std::sin(a));
    }
    const double tail = std::abs(scale) * qn * q / (1.0 - q);
    return sum_terms(v, tail);
}

BoundedValue eval_g(double x, int order, const Roughness& r, int terms)
{
    if (order < 0 || order > 3)
        throw DomainError("eval_g: order must be in 0..3");
    if (terms < 1 || terms > kMaxGTerms)
        throw DomainError("eval_g: terms out of range");
    const auto& s = half_angle_sines();
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order);
    // g^(d) = c_d sum q^m s_m f_d(pi (2x+1) / 2^(m+1)), f = cos, -sin, -cos, sin
    const double c = std::pow(pi, order) * 4.0 * pi;
    std::vector<double> v(static_cast<std::size_t>(terms));
    double qm = 1.0;
    double arg = pi * (2.0 * x + 1.0) * 0.5;
    for (int m = 0; m < terms; ++m) {
        double f = 0.0;
        switch (order) {
        case 0: f = std::cos(arg); break;
        case 1: f = -std::sin(arg); break;
        case 2: f = -std::cos(arg); break;
        default: f = std::sin(arg); break;
        }
        v[static_cast<std::size_t>(m)] = c * qm * s[static_cast<std::size_t>(m)] * f;
        qm *= q;
        arg *= 0.5;
    }
    // s_m <= pi / 2^(m+1)
    const double tail = c * (pi / 2.0) * std::pow(q / 2.0, terms) / (1.0 - q / 2.0);
    return sum_terms(v, tail);
}

double SupBounds::for_order(int order) const
{
    switch (order) {
    case 0: return sup_g;
    case 1: return sup_g1;
    case 2: return sup_g2;
    case 3: return sup_g3;
    default: throw DomainError("SupBounds: order must be in 0..3");
    }
}

SupBounds sup_bounds(const Roughness& r)
{
    const double k = r.kappa();
    SupBounds b;
    b.sup_g = 2.0 * pi * pi / (1.0 - k / 2.0);
    b.sup_g1 = 4.0 * pi * pi / (1.0 - k / 2.0);
    b.sup_g2 = 4.0 * pi * pi * pi / (1.0 - k / 4.0);
    b.sup_g3 = 4.0 * pi * pi * pi * pi / (1.0 - k / 8.0);
    b.sup_S = 2.0 * pi * k / (1.0 - k);
    return b;
}

double certified_sup_abs_g(const Roughness& r, int order, int grid, int terms)
{
    if (order < 0 || order > 2)
        throw DomainError("certified_sup_abs_g: order must be in 0..2");
    if (grid < 1)
        throw DomainError("certified_sup_abs_g: grid must be positive");
    double m = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const BoundedValue e = eval_g(static_cast<double>(i) / grid, order, r, terms);
        m = std::max(m, std::max(std::abs(e.lo), std::abs(e.hi)));
    }
    return m + 0.5 / grid * sup_bounds(r).for_order(order + 1);
}

BoundedValue eval_G_jumps(const JumpTimes& xi, double x, const Roughness& r, int order, int terms)
{
    if (order < 0 || order > 2)
        throw DomainError("eval_G_jumps: order must be in 0..2");
    const double k = r.kappa();
    const double q = k / std::ldexp(1.0, order);
    double lo = 0.0, hi = 0.0;
    std::vector<double> mids;
    double b = x;
    int pos = 0;
    double qj = 1.0;
    int prev = -1;
    for (int t : xi.times) {
        if (t <= prev || t >= xi.depth)
            throw DomainError("eval_G_jumps: invalid jump times");
        prev = t;
        for (; pos < t; ++pos) {
            b = b * 0.5;  // digit 0
            qj *= q;
        }
        const BoundedValue gv = eval_g(b, order, r, terms);
        const double w = k * qj;
        mids.push_back(w * gv.mid());
        lo += w * (gv.lo - gv.mid());
        hi += w * (gv.hi - gv.mid());
        b = (1.0 + b) * 0.5;  // digit 1 at position t
        qj *= q;
        ++pos;
    }
    const double tail = k * std::pow(q, xi.depth) / (1.0 - q) * sup_bounds(r).for_order(order);
    const double c = pairwise_sum(mids);
    return {c + lo - tail, c + hi + tail};
}

BoundedValue eval_S_diff(const BitSequence& xi, const BitSequence& eta, double x, const Roughness& r,
                         DiffMethod method, int order, int terms)
{
    if (xi == eta)
        throw DegenerateInputError("eval_S_diff: xi equals eta, the difference vanishes identically");
    if (method == DiffMethod::direct) {
        const int n = std::min({terms, xi.depth(), eta.depth()});
        return eval_S({xi, x}, r, n, order) - eval_S({eta, x}, r, n, order);
    }
    return eval_G_jumps(jump_times(xi), x, r, order, terms) - eval_G_jumps(jump_times(eta), x, r, order, terms);
}

}  // namespace wsbr
