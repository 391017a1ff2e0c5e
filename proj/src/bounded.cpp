#include "wsbr/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wsbr {

BoundedValue operator+(const BoundedValue& a, const BoundedValue& b) { return {a.lo + b.lo, a.hi + b.hi}; }

BoundedValue operator-(const BoundedValue& a, const BoundedValue& b) { return {a.lo - b.hi, a.hi - b.lo}; }

BoundedValue operator-(const BoundedValue& a) { return {-a.hi, -a.lo}; }

BoundedValue operator*(double s, const BoundedValue& a)
{
    if (s >= 0.0)
        return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

BoundedValue operator+(const BoundedValue& a, double b) { return {a.lo + b, a.hi + b}; }

BoundedValue hull(const BoundedValue& a, const BoundedValue& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

BoundedValue series_enclosure(double sum, double tail, std::size_t terms, double abs_sum)
{
    const double slack = kSlackPerTerm * static_cast<double>(std::max<std::size_t>(terms, 1)) * abs_sum
                         + 4.0 * std::numeric_limits<double>::min();
    const double r = std::abs(tail) + slack;
    return {sum - r, sum + r};
}

namespace {
double pairwise_impl(const double* p, std::size_t n)
{
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += p[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_impl(p, h) + pairwise_impl(p + h, n - h);
}
}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_impl(v.data(), v.size()); }

}  // namespace wsbr
