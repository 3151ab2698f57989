#pragma once

namespace ncsum {

// Eigenstructure of the transfer matrix M_{ab} = exp(lambda*a*b + h*(a+b)/2),
// a, b in {-1, +1}, with v = (e^{h/2}, e^{-h/2}).
//
// Lambda_plus / Lambda_minus overflow to inf for extreme couplings; the
// log-domain members stay finite for |lambda|, |h| <= 700 and are what the
// partition functions use.
struct SpectralData {
    double lambda = 0.0;
    double h = 0.0;
    double Lambda_plus = 0.0;
    double Lambda_minus = 0.0;
    double overlap_plus = 0.0;   // |v . e_+|^2
    double overlap_minus = 0.0;  // |v . e_-|^2
    double log_Lambda_plus = 0.0;
    double ratio = 0.0;          // Lambda_minus / Lambda_plus, in (-1, 1)
    double log_overlap_plus = 0.0;
    double overlap_ratio = 0.0;  // overlap_minus / overlap_plus
};

SpectralData spectral(double lambda, double h);

// h = log(p/(1-p)) / 2.
double field_from_probability(double p);

// log Z(lambda, h, sites) with free boundary conditions:
// Z = sum over {-1,1}^sites of exp(lambda sum tau_i tau_{i+1} + h sum tau_i).
double log_partition_free(double lambda, double h, int sites);

// log E_p exp(lambda sum_{i<sites} tau_i tau_{i+1}) for i.i.d. +-1 spins with
// P(+1) = p.
double log_block_mgf(double lambda, double p, int sites);

// Same for i.i.d. {0,1} spins with P(1) = p, via eta = (1+sigma)/2: coupling
// lambda/4, field h + lambda/2 and the boundary vector of field h.
double log_block_mgf_01(double lambda, double p, int sites);

} // namespace ncsum
