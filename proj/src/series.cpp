#include "bivarq/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bivarq/scalar_special.hpp"

namespace bivarq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

SeriesResult series_sum(const EvalPoint& p, const SeriesSpec& spec, bool short_circuit) {
    p.validate();
    spec.validate();

    SeriesResult result;
    result.x_unvalidated = p.x < 0.0;

    if (p.rho == 0.0 && short_circuit) {
        result.value = q2_product(p.x, p.y);
        result.outer_terms_used = 0;
        result.converged = true;
        result.last_term_magnitude = 0.0;
        return result;
    }

    const double z = 0.5 * p.x * p.x;
    const std::vector<double> lg = log_upper_gamma_table(2 * spec.l_max + 2, z);

    const double log_abs_y = p.y != 0.0 ? std::log(std::fabs(p.y)) : kNegInf;
    const double log_abs_rho = p.rho != 0.0 ? std::log(std::fabs(p.rho)) : kNegInf;
    const double log_omr2 = std::log1p(-p.rho * p.rho);
    const bool y_neg = p.y < 0.0;
    const bool rho_neg = p.rho < 0.0;
    const double ln2 = std::numbers::ln2;

    double total = 0.5 * q1(p.x);
    int small_run = 0;

    for (int l = 0; l <= spec.l_max; ++l) {
        double block = 0.0;
        double block_mass = 0.0;
        for (int k = 0; k <= 2 * l + 1; ++k) {
            const int rho_pow = 2 * l + 1 - k;
            // Powers of possibly-zero bases: 0^0 = 1, and a vanished base
            // kills the term for positive exponents.
            double ly = 0.0;
            if (k > 0) {
                if (log_abs_y == kNegInf) continue;
                ly = k * log_abs_y;
            }
            double lr = 0.0;
            if (rho_pow > 0) {
                if (log_abs_rho == kNegInf) continue;
                lr = rho_pow * log_abs_rho;
            }
            const int twice_s = 2 + 2 * l - k;  // 2 (1 + l - k/2) >= 1
            const double log_mag = log_factorial(2 * l) + ly + lr +
                                   lg[static_cast<size_t>(twice_s)] -
                                   log_factorial(l) - log_factorial(k) -
                                   (l + 0.5) * log_omr2 - log_factorial(rho_pow) -
                                   (1.0 + 0.5 * k) * ln2;
            double sign = ((3 * l + 1 - k) % 2 != 0) ? -1.0 : 1.0;
            if (y_neg && k % 2 == 1) sign = -sign;
            if (rho_neg && rho_pow % 2 == 1) sign = -sign;
            const double mag = std::exp(log_mag);
            block += sign * mag;
            block_mass += mag;
        }
        total += -block * std::numbers::inv_pi;
        result.outer_terms_used = l + 1;
        result.last_term_magnitude = block_mass * std::numbers::inv_pi;
        if (result.last_term_magnitude <= spec.rel_tol * std::fabs(total)) {
            if (++small_run >= spec.consecutive_small) {
                result.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }

    result.value = total;
    return result;
}

}  // namespace

void SeriesSpec::validate() const {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("SeriesSpec: rel_tol must be > 0");
    }
    if (consecutive_small < 1) {
        throw std::invalid_argument("SeriesSpec: consecutive_small must be >= 1");
    }
    if (l_max < 1 || l_max > 300) {
        throw std::invalid_argument("SeriesSpec: l_max must be in [1, 300]");
    }
}

SeriesResult q2_series(const EvalPoint& p, const SeriesSpec& spec) {
    return series_sum(p, spec, /*short_circuit=*/true);
}

SeriesResult q2_series_full_sum(const EvalPoint& p, const SeriesSpec& spec) {
    return series_sum(p, spec, /*short_circuit=*/false);
}

std::vector<SeriesProfilePoint> series_convergence_profile(
    std::span<const EvalPoint> points, const SeriesSpec& spec) {
    std::vector<SeriesProfilePoint> out;
    out.reserve(points.size());
    for (const EvalPoint& p : points) {
        const SeriesResult r = q2_series(p, spec);
        out.push_back({p, r.outer_terms_used, r.converged});
    }
    return out;
}

}  // namespace bivarq
