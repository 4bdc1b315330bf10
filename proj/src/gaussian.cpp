#include "armoga/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "armoga/error.hpp"

namespace armoga {

namespace {

constexpr long double sqrt2 = 1.41421356237309504880168872420969808L;
constexpr long double sqrt2pi = 2.50662827463100050241576528481104525L;

// Acklam's rational approximation, relative error below 1.2e-9.
auto quantile_seed(long double p) -> long double
{
    constexpr long double a[] = { -3.969683028665376e+01L, 2.209460984245205e+02L, -2.759285104469687e+02L,
                                  1.383577518672690e+02L,  -3.066479806614716e+01L, 2.506628277459239e+00L };
    constexpr long double b[] = { -5.447609879822406e+01L, 1.615858368580409e+02L, -1.556989798598866e+02L,
                                  6.680131188771972e+01L,  -1.328068155288572e+01L };
    constexpr long double c[] = { -7.784894002430293e-03L, -3.223964580411365e-01L, -2.400758277161838e+00L,
                                  -2.549732539343734e+00L, 4.374664141464968e+00L,  2.938163982698783e+00L };
    constexpr long double d[] = { 7.784695709041462e-03L, 3.224671290700398e-01L, 2.445134137142996e+00L,
                                  3.754408361507113e+00L };
    constexpr long double p_low = 0.02425L;

    auto tail = [&](long double q) {
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
             / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0L);
    };
    if (p < p_low) { return tail(std::sqrt(-2.0L * std::log(p))); }
    if (p > 1.0L - p_low) { return -tail(std::sqrt(-2.0L * std::log1p(-p))); }
    long double const q = p - 0.5L;
    long double const r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
         / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0L);
}

} // namespace

auto normal_cdf(long double x) -> long double
{
    return 0.5L * std::erfc(-x / sqrt2);
}

auto normal_quantile(long double p) -> long double
{
    require(p > 0.0L && p < 1.0L, "normal_quantile: probability must lie in (0, 1)");
    long double x = quantile_seed(p);
    for (int i = 0; i < 2; ++i) {
        // residual taken on the smaller tail to keep its relative precision
        long double const e = x <= 0.0L ? normal_cdf(x) - p : (1.0L - p) - 0.5L * std::erfc(x / sqrt2);
        long double const u = e * sqrt2pi * std::exp(x * x / 2.0L);
        x -= u / (1.0L + x * u / 2.0L);
    }
    return x;
}

auto gaussian_encode(double p, double mu, double sigma) -> encoded_t
{
    require(sigma > 0.0, "gaussian_encode: sigma must be positive");
    long double const z = (static_cast<long double>(p) - mu) / sigma;
    return std::clamp(normal_cdf(z), encoding_epsilon, 1.0L - encoding_epsilon);
}

auto gaussian_decode(encoded_t r, double mu, double sigma) -> double
{
    require(sigma > 0.0, "gaussian_decode: sigma must be positive");
    require(r > 0.0L && r < 1.0L, "gaussian_decode: encoded value must lie in (0, 1)");
    return static_cast<double>(mu + sigma * normal_quantile(r));
}

auto gaussian_decode(encoded_t r, double mu, double sigma, double lower, double upper) -> double
{
    return std::clamp(gaussian_decode(r, mu, sigma), lower, upper);
}

} // namespace armoga
