#pragma once

#include "ncsum/free_energy.hpp"

namespace ncsum {

struct RateFunctionResult {
    double x = 0.0;
    double I = 0.0;            // +inf outside [-1, 1]
    double lambda_star = 0.0;  // maximizer of lambda x - F(lambda)
    bool converged = false;
};

struct RateOptions {
    double lambda_cap = 50.0;
    double derivative_step = 1e-3;
    double slope_tol = 1e-9;
};

// dF/dlambda by extrapolated central differences.
double free_energy_derivative(const FreeEnergyModel& model, double lambda, double step = 1e-3);

// I_p(x) = sup_lambda (lambda x - F_p(lambda)).
RateFunctionResult rate(const FreeEnergyModel& model, double x, const RateOptions& opts = {});

struct FreeEnergyMinimum {
    double lambda_min = 0.0;
    double F_min = 0.0;
};

// Golden-section search on an expanding bracket; F is convex.
FreeEnergyMinimum min_free_energy(const FreeEnergyModel& model);

// Closed-form minimum of the independent-pair free energy.
FreeEnergyMinimum min_free_energy_independent(double p);

} // namespace ncsum
