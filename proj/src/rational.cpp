#include "lca/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace lca {

Rational rational_pow(const Rational& base, std::int64_t exp) {
    if (exp < 0) return 1 / rational_pow(base, -exp);
    Rational result = 1;
    Rational b = base;
    std::int64_t e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Rational snap_to_rational(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("snap_to_rational: non-finite input");
    const bool negative = x < 0;
    double v = std::abs(x);

    // Continued-fraction expansion; keep the last convergent whose
    // denominator stays within the limit.
    std::int64_t p_prev = 1, q_prev = 0;
    std::int64_t p = static_cast<std::int64_t>(std::floor(v)), q = 1;
    double frac = v - std::floor(v);
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        v = 1.0 / frac;
        const double floored = std::floor(v);
        if (floored > 9e18) break;
        const std::int64_t a = static_cast<std::int64_t>(floored);
        frac = v - floored;
        if (q_prev + a * q > max_den) break;
        const std::int64_t p_next = p_prev + a * p;
        const std::int64_t q_next = q_prev + a * q;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    Rational r(p, q);
    return negative ? -r : r;
}

}  // namespace lca
