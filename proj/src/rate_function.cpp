#include "ncsum/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncsum/errors.hpp"
#include "ncsum/numdiff.hpp"

namespace ncsum {

double free_energy_derivative(const FreeEnergyModel& model, double lambda, double step) {
    return richardson_first_derivative([&](double l) { return free_energy(model, l); }, lambda, step);
}

RateFunctionResult rate(const FreeEnergyModel& model, double x, const RateOptions& opts) {
    if (std::isnan(x)) throw parameter_error("rate function argument is NaN");
    RateFunctionResult out;
    out.x = x;
    if (std::abs(x) > 1.0) {
        out.I = std::numeric_limits<double>::infinity();
        out.lambda_star = std::copysign(std::numeric_limits<double>::infinity(), x);
        out.converged = true;
        return out;
    }

    const auto F = [&](double l) { return free_energy(model, l); };
    const auto legendre = [&](double l) { return l * x - F(l); };

    if (std::abs(x) == 1.0) {
        // lambda x - F(lambda) increases to its limit along lambda -> x * inf.
        const double near = x * opts.lambda_cap;
        const double far = 2 * near;
        const double v_near = legendre(near);
        const double v_far = legendre(far);
        out.lambda_star = far;
        out.I = std::max(0.0, v_far);
        out.converged = std::abs(v_far - v_near) <= opts.slope_tol;
        return out;
    }

    const auto slope_gap = [&](double l) {
        return free_energy_derivative(model, l, opts.derivative_step) - x;
    };

    const double g0 = slope_gap(0.0);
    if (g0 == 0.0) {
        out.lambda_star = 0.0;
        out.I = 0.0;
        out.converged = true;
        return out;
    }

    // F' is increasing: the root lies on the side where F' - x changes sign.
    const double dir = g0 < 0 ? 1.0 : -1.0;
    double inner = 0.0;
    double outer = dir;
    double g_outer = slope_gap(outer);
    while (dir * g_outer < 0 && std::abs(outer) < opts.lambda_cap) {
        inner = outer;
        outer = dir * std::min(2 * std::abs(outer), opts.lambda_cap);
        g_outer = slope_gap(outer);
    }
    if (dir * g_outer < 0) {
        out.lambda_star = outer;
        out.I = std::max(0.0, legendre(outer));
        out.converged = false;
        return out;
    }

    double lo = std::min(inner, outer);
    double hi = std::max(inner, outer);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slope_gap(mid) < 0) lo = mid;
        else hi = mid;
    }
    out.lambda_star = 0.5 * (lo + hi);
    out.I = std::max(0.0, legendre(out.lambda_star));
    out.converged = std::abs(slope_gap(out.lambda_star)) <= opts.slope_tol;
    return out;
}

FreeEnergyMinimum min_free_energy(const FreeEnergyModel& model) {
    const auto F = [&](double l) { return free_energy(model, l); };

    // Downhill expansion from 0 until F(a) > F(b) <= F(c).
    double a = -0.5, c = 0.5;
    const double f0 = F(0.0);
    for (double step : {0.5, -0.5}) {
        double lo = 0.0, mid = step;
        double f_mid = F(mid);
        if (f_mid >= f0) continue;
        double hi = mid + 2 * (mid - lo);
        double f_hi = F(hi);
        while (f_hi < f_mid && std::abs(hi) < 700.0) {
            lo = mid;
            mid = hi;
            f_mid = f_hi;
            hi = std::clamp(mid + 2 * (mid - lo), -700.0, 700.0);
            f_hi = F(hi);
        }
        a = std::min(lo, hi);
        c = std::max(lo, hi);
        break;
    }

    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = c - inv_phi * (c - a);
    double x2 = a + inv_phi * (c - a);
    double f1 = F(x1), f2 = F(x2);
    for (int it = 0; it < 200 && c - a > 1e-12; ++it) {
        if (f1 < f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - inv_phi * (c - a);
            f1 = F(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (c - a);
            f2 = F(x2);
        }
    }
    FreeEnergyMinimum out;
    out.lambda_min = f1 < f2 ? x1 : x2;
    out.F_min = std::min(f1, f2);
    return out;
}

FreeEnergyMinimum min_free_energy_independent(double p) {
    if (!(p > 0.0 && p < 1.0)) throw parameter_error("p must lie in (0,1)");
    const double same = p * p + (1 - p) * (1 - p);
    const double differ = 2 * p * (1 - p);
    FreeEnergyMinimum out;
    out.lambda_min = 0.5 * std::log(differ / same);
    out.F_min = std::log(2 * std::sqrt(same * differ));
    return out;
}

} // namespace ncsum
