#include "fkg/damping.hpp"

#include <cmath>

#include "fkg/errors.hpp"

namespace fkg {

namespace {

void check_common(double a, double period) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw invalid_config("DampingProfile: amplitude must be positive");
    if (!(period > 0.0) || !std::isfinite(period))
        throw invalid_config("DampingProfile: period must be positive");
}

// Distance to `center` on the period-circle, in [0, period/2].
double periodic_distance(double x, double center, double period) {
    double d = std::remainder(x - center, period);
    return std::abs(d);
}

// 0 -> 1 raised-cosine ramp on [0, 1].
double ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return 0.5 * (1.0 - std::cos(M_PI * t));
}

} // namespace

DampingProfile DampingProfile::constant(double a, double period) {
    check_common(a, period);
    DampingProfile p;
    p.kind = Kind::constant;
    p.amplitude = a;
    p.half_width = period / 2.0;
    p.epsilon = a;
    p.period = period;
    return p;
}

DampingProfile DampingProfile::indicator(double a, double center, double half_width,
                                         double period) {
    check_common(a, period);
    if (!(half_width > 0.0) || 2.0 * half_width > period)
        throw invalid_config("DampingProfile: support must fit inside one period");
    DampingProfile p;
    p.kind = Kind::indicator;
    p.amplitude = a;
    p.center = center;
    p.half_width = half_width;
    p.epsilon = a;
    p.period = period;
    return p;
}

DampingProfile DampingProfile::smoothed_indicator(double a, double center, double half_width,
                                                  double smoothing_width, double period) {
    DampingProfile p = indicator(a, center, half_width, period);
    if (smoothing_width < 0.0 || smoothing_width >= half_width)
        throw invalid_config("DampingProfile: smoothing width must lie in [0, half_width)");
    p.kind = Kind::smoothed_indicator;
    p.smoothing_width = smoothing_width;
    return p;
}

double DampingProfile::operator()(double x) const {
    switch (kind) {
        case Kind::constant:
            return amplitude;
        case Kind::indicator:
            return periodic_distance(x, center, period) <= half_width ? amplitude : 0.0;
        case Kind::smoothed_indicator: {
            const double d = periodic_distance(x, center, period);
            if (d > half_width) return 0.0;
            if (smoothing_width == 0.0) return amplitude;
            // Ramp lives inside the window: distance from the support edge.
            return amplitude * ramp((half_width - d) / smoothing_width);
        }
    }
    return 0.0;
}

std::vector<double> DampingProfile::sample(const Grid& g) const {
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = (*this)(g.points[i]);
    return v;
}

std::pair<double, double> DampingProfile::certified_window() const {
    switch (kind) {
        case Kind::constant:
            return {center - period / 2.0, center + period / 2.0};
        case Kind::indicator:
            return {center - half_width, center + half_width};
        case Kind::smoothed_indicator:
            return {center - (half_width - smoothing_width),
                    center + (half_width - smoothing_width)};
    }
    return {0.0, 0.0};
}

SpectralField multiply_pointwise(const SpectralField& f, const DampingProfile& gamma) {
    if (gamma.period != f.grid().period())
        throw invalid_config("multiply_pointwise: damping period does not match the grid");
    return multiply_values(f, gamma.sample(f.grid()));
}

} // namespace fkg
