#include "lzs/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr double kBig = 1e250;
constexpr double kSmall = 1e-250;

void require_argument(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel: argument must be finite");
    if (x < 0.0) throw DomainError("bessel: argument must be non-negative, got " + std::to_string(x));
    if (x > kMaxBesselArgument) throw DomainError("bessel: argument above 1e6, got " + std::to_string(x));
}

// Order from which the backward recurrence starts. Past the turning point
// n ~ x the minimal solution decays super-exponentially, so a margin of a
// few Airy widths plus the usual sqrt(40 n) keeps the seed error far below
// double precision.
int start_order(double x, int n_max) {
    const double top = std::max(static_cast<double>(n_max), x);
    const double start = top + 30.0 + 15.0 * std::cbrt(x + 1.0) + std::sqrt(40.0 * (top + 1.0));
    int n = static_cast<int>(std::ceil(start));
    return n + (n % 2);
}

// J_0..J_n_max(x) for x > 0 by Miller's algorithm normalised with
// J_0^2 + 2 sum_k J_k^2 = 1.
std::vector<double> miller(double x, int n_max) {
    const int start = start_order(x, n_max);
    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = kSmall;
    const double two_over_x = 2.0 / x;
    for (int k = start; k >= 1; --k) {
        j[k - 1] = k * two_over_x * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > kBig) {
            for (int i = k - 1; i <= start; ++i) j[i] *= kSmall;
        }
    }
    // Entries can sit near kBig, so square them relative to the peak.
    double peak = 0.0;
    for (double v : j) peak = std::max(peak, std::abs(v));
    double sum = 0.0;
    for (int k = start; k >= 1; --k) sum += (j[k] / peak) * (j[k] / peak);
    sum = 2.0 * sum + (j[0] / peak) * (j[0] / peak);
    const double scale = 1.0 / (peak * std::sqrt(sum));
    j.resize(static_cast<std::size_t>(n_max) + 1);
    for (double& v : j) v *= scale;
    return j;
}

// log |J_n(x)| upper estimate for n >> x: (x/2)^n / n!
double log_leading_term(int n, double x) {
    return n * std::log(0.5 * x) - std::lgamma(n + 1.0);
}

}  // namespace

int truncation_order(double x) {
    require_argument(x);
    return static_cast<int>(std::ceil(x) + 20.0 + std::ceil(10.0 * std::cbrt(x)));
}

BesselRow::BesselRow(double x, int n_max, std::vector<double> non_negative) : x_(x), n_max_(n_max) {
    values_.resize(2 * static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double v = non_negative[n];
        values_[n_max + n] = v;
        values_[n_max - n] = (n % 2 == 0) ? v : -v;
    }
}

BesselRow bessel_row(double x, int n_max) {
    require_argument(x);
    if (n_max < 0) throw DomainError("bessel_row: n_max must be non-negative");
    if (n_max > kMaxBesselOrder) throw DomainError("bessel_row: n_max above " + std::to_string(kMaxBesselOrder));
    if (x == 0.0) {
        std::vector<double> delta(static_cast<std::size_t>(n_max) + 1, 0.0);
        delta[0] = 1.0;
        return BesselRow(x, n_max, std::move(delta));
    }
    return BesselRow(x, n_max, miller(x, n_max));
}

double bessel_j(int n, double x) {
    require_argument(x);
    if (n < -1'000'000 || n > 1'000'000) throw DomainError("bessel_j: |n| must not exceed 1e6");
    const int order = std::abs(n);
    const double sign = (n < 0 && order % 2 == 1) ? -1.0 : 1.0;
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    // Far past the turning point the value underflows; skip the recurrence.
    if (order > x + 50.0 && log_leading_term(order, x) < -760.0) return 0.0;
    return sign * miller(x, order)[order];
}

}  // namespace lzs
