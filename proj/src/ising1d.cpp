#include "ncsum/ising1d.hpp"

#include <cmath>
#include <string>

#include "ncsum/errors.hpp"

namespace ncsum {

namespace {

using real = long double;

constexpr double coupling_limit = 700.0;

// Spectrum of the symmetric matrix [[a, b], [b, c]] with a = e^{lambda+h},
// c = e^{lambda-h}, b = e^{-lambda}, together with the squared overlaps of a
// boundary vector u against its eigenvectors.
//
// With x = sinh(h) and y = e^{-2 lambda}, the leading eigenvector sits at
// angle theta = atan2(y, x) / 2 and u at angle phi. The overlaps are
// |u|^2 cos^2(phi - theta) and |u|^2 sin^2(phi - theta); the callers supply
// tan(2(phi - theta)) as a (num, den) pair written without cancellation.
struct Spectrum {
    real log_lambda_plus;
    real lambda_minus_over_plus;
    real log_overlap_plus;
    real overlap_ratio;
    real norm_u2;
    real half_angle;
};

Spectrum spectrum(real lambda, real h, real norm_u2, real num, real den) {
    const real x = std::sinh(h);
    const real y = std::exp(-2 * lambda);
    const real root = std::sqrt(x * x + y * y);
    const real c_plus_s = std::cosh(h) + root;

    Spectrum s{};
    s.log_lambda_plus = lambda + std::log(c_plus_s);
    // Lambda_- / Lambda_+ = (cosh^2 h - root^2) / (cosh h + root)^2
    s.lambda_minus_over_plus = -std::expm1(-4 * lambda) / (c_plus_s * c_plus_s);
    s.half_angle = std::atan2(num, den) / 2;
    const real cos_half = std::cos(s.half_angle);
    const real tan_half = std::tan(s.half_angle);
    s.norm_u2 = norm_u2;
    s.log_overlap_plus = std::log(norm_u2) + 2 * std::log(cos_half);
    s.overlap_ratio = tan_half * tan_half;
    return s;
}

// Boundary vector v = (e^{h/2}, e^{-h/2}) of the same field as the matrix.
Spectrum standard_spectrum(real lambda, real h) {
    const real x = std::sinh(h);
    const real y = std::exp(-2 * lambda);
    return spectrum(lambda, h, 2 * std::cosh(h), x * -std::expm1(-2 * lambda), x * x + y);
}

// log(u^T M^n u) = n log Lambda_+ + log(o_+ + o_- r^n)
real log_transfer(const Spectrum& s, int n) {
    const real rn = n == 0 ? real(1) : std::pow(s.lambda_minus_over_plus, n);
    return n * s.log_lambda_plus + s.log_overlap_plus + std::log1p(s.overlap_ratio * rn);
}

void require_finite(double lambda, double h) {
    if (!std::isfinite(lambda) || !std::isfinite(h))
        throw parameter_error("coupling and field must be finite");
}

void require_bounded(double lambda, double h) {
    require_finite(lambda, h);
    if (std::abs(lambda) > coupling_limit || std::abs(h) > coupling_limit)
        throw parameter_error("|lambda| and |h| must not exceed 700");
}

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw parameter_error("p must lie in (0,1), got " + std::to_string(p));
}

void require_sites(int sites) {
    if (sites < 1) throw parameter_error("a chain needs at least one site");
}

} // namespace

SpectralData spectral(double lambda, double h) {
    require_finite(lambda, h);
    const Spectrum s = standard_spectrum(lambda, h);
    const real lambda_plus = std::exp(s.log_lambda_plus);

    SpectralData d;
    d.lambda = lambda;
    d.h = h;
    d.log_Lambda_plus = static_cast<double>(s.log_lambda_plus);
    d.ratio = static_cast<double>(s.lambda_minus_over_plus);
    d.Lambda_plus = static_cast<double>(lambda_plus);
    d.Lambda_minus = static_cast<double>(lambda_plus * s.lambda_minus_over_plus);
    d.log_overlap_plus = static_cast<double>(s.log_overlap_plus);
    d.overlap_ratio = static_cast<double>(s.overlap_ratio);
    const real sin_half = std::sin(s.half_angle);
    const real cos_half = std::cos(s.half_angle);
    d.overlap_plus = static_cast<double>(s.norm_u2 * cos_half * cos_half);
    d.overlap_minus = static_cast<double>(s.norm_u2 * sin_half * sin_half);
    return d;
}

double field_from_probability(double p) {
    require_probability(p);
    return 0.5 * (std::log(p) - std::log1p(-p));
}

double log_partition_free(double lambda, double h, int sites) {
    require_bounded(lambda, h);
    require_sites(sites);
    return static_cast<double>(log_transfer(standard_spectrum(lambda, h), sites - 1));
}

double log_block_mgf(double lambda, double p, int sites) {
    require_probability(p);
    require_sites(sites);
    const double h = field_from_probability(p);
    require_bounded(lambda, h);
    if (lambda == 0.0) return 0.0;
    const real log_pq = std::log(real(p)) + std::log1p(-real(p));
    return static_cast<double>(sites * log_pq / 2 + log_transfer(standard_spectrum(lambda, h), sites - 1));
}

double log_block_mgf_01(double lambda, double p, int sites) {
    require_probability(p);
    require_sites(sites);
    const double h = field_from_probability(p);
    require_bounded(lambda, h);
    if (lambda == 0.0) return 0.0;

    // eta_i eta_{i+1} = (1 + s_i + s_{i+1} + s_i s_{i+1}) / 4. Summed over a
    // chain of n bonds this is n/4 + (sum s)/2 - (s_1 + s_{n+1})/4 + (sum s s)/4,
    // so the chain is a +-1 chain with coupling lambda/4 and field h + lambda/2
    // whose end-site correction cancels the extra half-field on the boundary
    // vector: u = (e^{h/2}, e^{-h/2}).
    const real lam = lambda;
    const real hh = h;
    const real a = lam / 2;
    const real coupling = lam / 4;
    const real field = hh + a;
    const real y = std::exp(-2 * coupling);
    // tan of twice the angle between u and the leading eigenvector:
    // sinh(h + a) - e^{-a} sinh h = e^h sinh a.
    const real num = std::exp(hh) * std::sinh(a);
    const real den = std::sinh(hh) * std::sinh(field) + y;
    const Spectrum s = spectrum(coupling, field, 2 * std::cosh(hh), num, den);

    const int n = sites - 1;
    const real log_pq = std::log(real(p)) + std::log1p(-real(p));
    return static_cast<double>(sites * log_pq / 2 + n * coupling + log_transfer(s, n));
}

} // namespace ncsum
