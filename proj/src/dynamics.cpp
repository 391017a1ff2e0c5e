#include "wsbr/dynamics.hpp"

#include "wsbr/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wsbr {

namespace {
constexpr double pi = std::numbers::pi;
}

ExtendedPoint step_F(const ExtendedPoint& p, const Roughness& r)
{
    const PhasePoint q = baker({p.xi, p.x}, 1);
    return {q.xi, q.x, r.gamma() * p.y + std::cos(2.0 * pi * q.x)};
}

ExtendedPoint step_Gamma(const ExtendedPoint& p, const Roughness& r)
{
    const PhasePoint q = baker({p.xi, p.x}, 1);
    return {q.xi, q.x, 2.0 * r.gamma() * p.y - 2.0 * pi * std::sin(2.0 * pi * q.x)};
}

Jacobian3 jacobian_F(const PhasePoint& p, const Roughness& r)
{
    const double b2 = baker_x(p.xi, p.x, 1);
    Jacobian3 j{};
    j[0][0] = 2.0;
    j[1][1] = 0.5;
    j[2][1] = -pi * std::sin(2.0 * pi * b2);
    j[2][2] = r.gamma();
    return j;
}

Jacobian3 multiply(const Jacobian3& a, const Jacobian3& b)
{
    Jacobian3 c{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

StableVector stable_X(const PhasePoint& p, const Roughness& r, int terms)
{
    return {0.0, 1.0, eval_S(p, r, terms, 0)};
}

double holder_estimate(const Roughness& r, int n_min, int n_max, int terms)
{
    if (!(2 <= n_min && n_min < n_max && n_max <= 40))
        throw DomainError("holder_estimate: need 2 <= n_min < n_max <= 40");
    const BoundedValue w0 = eval_W(0.0, r, terms);
    std::vector<double> xs, ys;
    for (int n = n_min; n <= n_max; ++n) {
        const BoundedValue wn = eval_W(std::ldexp(1.0, -n), r, terms);
        const BoundedValue d = w0 - wn;
        const double mag = std::abs(d.mid());
        if (mag <= d.width())
            continue;
        xs.push_back(n * std::log(2.0));
        ys.push_back(std::log(mag));
    }
    if (xs.size() < 2)
        throw PrecisionError("holder_estimate: increments do not exceed enclosure widths");
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return -sxy / sxx;
}

}  // namespace wsbr
