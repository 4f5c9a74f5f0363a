#include "bivarq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bivarq {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double err;
};

bool worse(const Panel& lhs, const Panel& rhs) { return lhs.err < rhs.err; }

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(centre);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(centre - dx);
        fv2[j] = f(centre + dx);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }

    const double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double epmach = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * epmach)) {
        err = std::max(epmach * 50.0 * resabs, err);
    }
    return {a, b, value, err};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol >= 1e-14)) {
        throw std::invalid_argument("QuadratureSpec: rel_tol must be >= 1e-14");
    }
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    spec.validate();
    if (a == b) return {0.0, 0.0, true, 0};

    std::priority_queue<Panel, std::vector<Panel>, decltype(&worse)> queue(&worse);
    Panel first = eval_panel(f, a, b);
    double total_value = first.value;
    double total_err = first.err;
    queue.push(first);

    int subdivisions = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_value)) &&
           subdivisions < spec.max_subdivisions) {
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable at double precision; put it back
            // and give up refining.
            queue.push(worst);
            break;
        }
        const Panel left = eval_panel(f, worst.a, mid);
        const Panel right = eval_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }

    // Re-accumulate from the surviving panels; the incremental updates above
    // are only used to steer refinement.
    double value = 0.0;
    double err = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        err += queue.top().err;
        queue.pop();
    }
    const bool converged =
        err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
    return {value, err, converged, subdivisions};
}

}  // namespace bivarq
