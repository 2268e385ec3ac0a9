#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "lzs/errors.hpp"

namespace lzs {

template <std::size_t N>
using State = std::array<double, N>;

struct OdeOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_max = std::numeric_limits<double>::infinity();
    double h_init = 0.0;  ///< 0: pick from h_max and the tolerance
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

template <std::size_t N>
class DormandPrince {
public:
    explicit DormandPrince(OdeOptions opts = {}) : opts_(opts) {}

    const OdeOptions& options() const { return opts_; }
    const OdeStats& stats() const { return stats_; }

    /// Integrates y from t to t_end in place; rhs(t, y, dydt).
    template <class Rhs>
    void advance(Rhs&& rhs, double& t, State<N>& y, double t_end) {
        if (!(t_end > t)) return;
        if (!have_k1_ || t != t_k1_ || y != y_k1_) {
            rhs(t, y, k1_);
            ++stats_.rhs_evals;
            have_k1_ = true;
        }
        if (h_ <= 0.0) h_ = initial_step(t_end - t);

        State<N> k2, k3, k4, k5, k6, k7, tmp, y_new;
        while (t < t_end) {
            double h = std::min(h_, opts_.h_max);
            bool last = false;
            if (t + h >= t_end || t + 1.01 * h >= t_end) {
                h = t_end - t;
                last = true;
            }
            const double h_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
            if (h < h_floor && !last) {
                // a sliver of span left over from the grid is not stiffness
                if (t_end - t > 2.0 * h_floor) throw IntegrationError(t, "step size underflow");
                h = t_end - t;
                last = true;
            }

            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a21 * k1_[i]);
            rhs(t + c2 * h, tmp, k2);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1_[i] + a32 * k2[i]);
            rhs(t + c3 * h, tmp, k3);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(t + c4 * h, tmp, k4);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(t + c5 * h, tmp, k5);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            rhs(t + h, tmp, k6);
            for (std::size_t i = 0; i < N; ++i)
                y_new[i] = y[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
            rhs(t + h, y_new, k7);
            stats_.rhs_evals += 6;

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / static_cast<double>(N));

            if (err <= 1.0) {
                ++stats_.accepted;
                t = last ? t_end : t + h;
                y = y_new;
                k1_ = k7;
                const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                // A step clipped to land on t_end says nothing about the natural step.
                if (!last || h >= h_) h_ = h * grow;
            } else {
                ++stats_.rejected;
                h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
                if (h_ < h_floor) throw IntegrationError(t, "step size underflow");
            }
        }
        t_k1_ = t;
        y_k1_ = y;
    }

private:
    double initial_step(double span) const {
        double h = opts_.h_init > 0.0 ? opts_.h_init : std::min(span, opts_.h_max) * 1e-2;
        if (!std::isfinite(h) || h <= 0.0) h = span * 1e-3;
        return h;
    }

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    // 5th minus embedded 4th order weights
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    OdeOptions opts_;
    OdeStats stats_;
    double h_ = 0.0;
    bool have_k1_ = false;
    double t_k1_ = 0.0;
    State<N> y_k1_{};
    State<N> k1_{};
};

}  // namespace lzs
