#pragma once

namespace armoga {

// Encoded coordinates are kept in extended precision: near r = 1 a double
// only resolves about 1e-16, which at six standard deviations is already
// 2e-8 sigma in design space.
using encoded_t = long double;

inline constexpr encoded_t encoding_epsilon = 1e-12L;

// Standard normal CDF.
[[nodiscard]] auto normal_cdf(long double x) -> long double;

// Inverse of the standard normal CDF for 0 < p < 1 (rational approximation
// polished by two Halley steps).
[[nodiscard]] auto normal_quantile(long double p) -> long double;

// r = Phi((p - mu) / sigma), clamped to [eps, 1 - eps]. sigma must be positive.
[[nodiscard]] auto gaussian_encode(double p, double mu, double sigma) -> encoded_t;

// p = mu + sigma * Phi^-1(r). r must lie in (0, 1) and sigma must be positive.
[[nodiscard]] auto gaussian_decode(encoded_t r, double mu, double sigma) -> double;

// As above, then clamped to [lower, upper].
[[nodiscard]] auto gaussian_decode(encoded_t r, double mu, double sigma, double lower, double upper) -> double;

} // namespace armoga
