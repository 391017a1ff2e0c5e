#pragma once

#include <cstddef>
#include <span>

namespace wsbr {

// Relative inflation applied per accumulated term to cover rounding.
inline constexpr double kSlackPerTerm = 1e-12;

struct BoundedValue {
    double lo = 0.0;
    double hi = 0.0;

    static BoundedValue point(double v) { return {v, v}; }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool overlaps(const BoundedValue& o) const { return lo <= o.hi && o.lo <= hi; }
    bool positive() const { return lo > 0.0; }
    bool negative() const { return hi < 0.0; }
    bool straddles_zero() const { return lo <= 0.0 && hi >= 0.0; }
    BoundedValue widened(double r) const { return {lo - r, hi + r}; }
};

BoundedValue operator+(const BoundedValue& a, const BoundedValue& b);
BoundedValue operator-(const BoundedValue& a, const BoundedValue& b);
BoundedValue operator-(const BoundedValue& a);
BoundedValue operator*(double s, const BoundedValue& a);
BoundedValue operator+(const BoundedValue& a, double b);

BoundedValue hull(const BoundedValue& a, const BoundedValue& b);

// Enclosure of a truncated series: partial sum plus or minus the analytic
// tail, widened by kSlackPerTerm * terms * abs_sum.
BoundedValue series_enclosure(double sum, double tail, std::size_t terms, double abs_sum);

// Deterministic tree summation.
double pairwise_sum(std::span<const double> v);

}  // namespace wsbr
