#pragma once

// Integer-order Bessel functions of the first kind.

#include <vector>

namespace lzs {

/// The recurrence stores about max(n, x) values, so both are bounded.
inline constexpr double kMaxBesselArgument = 1e6;
inline constexpr int kMaxBesselOrder = 2'000'000;

/// Smallest order beyond which J_n(x) is negligible for the Bessel sums:
/// ceil(x) + 20 + ceil(10 x^(1/3)).
int truncation_order(double x);

/// J_n(x) for 0 <= x <= kMaxBesselArgument and |n| <= 1e6; DomainError otherwise.
double bessel_j(int n, double x);

/// J_n(x) for n = -n_max..n_max, stored contiguously.
class BesselRow {
public:
    BesselRow() = default;
    BesselRow(double x, int n_max, std::vector<double> non_negative);

    double x() const { return x_; }
    int n_max() const { return n_max_; }

    /// J_n(x); zero for |n| > n_max.
    double operator[](int n) const {
        if (n > n_max_ || n < -n_max_) return 0.0;
        return values_[static_cast<std::size_t>(n + n_max_)];
    }

    /// Values for n = -n_max..n_max.
    const std::vector<double>& values() const { return values_; }

private:
    double x_ = 0.0;
    int n_max_ = 0;
    std::vector<double> values_;
};

/// Whole row by backward recurrence. Throws DomainError for n_max < 0.
BesselRow bessel_row(double x, int n_max);

}  // namespace lzs
