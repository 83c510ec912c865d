#include "fkg/rate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkg/errors.hpp"

namespace fkg {

RatePrediction predicted_decay(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw invalid_config("predicted_decay: requires s > 0");
    RatePrediction p;
    if (s < 2.0) {
        p.regime = RatePrediction::Regime::polynomial;
        p.bt_alpha = 4.0 / s - 2.0;
        p.poly_exponent = s / (4.0 - 2.0 * s);
        p.resolvent_exponent_L2 = 4.0 / s - 3.0;
        p.resolvent_exponent_energy = 4.0 / s - 2.0;
    } else {
        p.regime = RatePrediction::Regime::exponential;
        p.resolvent_exponent_L2 = 2.0 / s - 2.0;
        p.resolvent_exponent_energy = 2.0 / s - 1.0;
    }
    return p;
}

namespace {

struct LsqResult {
    double slope, intercept, r_squared;
};

// Plain least squares y = a + b x with r^2; SStot == 0 degenerates to a
// perfect constant fit.
LsqResult least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw invalid_config("fit: degenerate (constant) abscissa");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < n; ++i) {
        const double fit = intercept + slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    const double r2 = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return {slope, intercept, r2};
}

RateFit fit_log(const std::vector<double>& xs, const std::vector<double>& ys,
                double tail_fraction, bool log_x) {
    if (xs.size() != ys.size()) throw invalid_config("fit: size mismatch");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw invalid_config("fit: tail_fraction must lie in (0, 1]");
    const size_t n = xs.size();
    const size_t tail = std::max<size_t>(1, static_cast<size_t>(std::ceil(tail_fraction * n)));
    const size_t start = n - tail;
    if (tail < 8) throw invalid_config("fit: need at least 8 points in the tail, have " +
                                       std::to_string(tail));
    std::vector<double> lx(tail), ly(tail);
    for (size_t i = 0; i < tail; ++i) {
        const double x = xs[start + i], y = ys[start + i];
        if (!(y > 0.0) || (log_x && !(x > 0.0)))
            throw invalid_config("fit: data must be positive");
        lx[i] = log_x ? std::log(x) : x;
        ly[i] = std::log(y);
    }
    const LsqResult l = least_squares(lx, ly);
    RateFit f;
    f.slope = l.slope;
    f.intercept = l.intercept;
    f.r_squared = l.r_squared;
    f.tail_fraction = tail_fraction;
    f.sup_ratio = 0.0;
    for (size_t i = 0; i < tail; ++i)
        f.sup_ratio = std::max(f.sup_ratio, std::exp(ly[i] - (l.intercept + l.slope * lx[i])));
    return f;
}

} // namespace

RateFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                      double tail_fraction) {
    return fit_log(xs, ys, tail_fraction, /*log_x=*/true);
}

RateFit fit_exponential(const std::vector<double>& times, const std::vector<double>& values,
                        double tail_fraction) {
    return fit_log(times, values, tail_fraction, /*log_x=*/false);
}

void envelope_maxima(const std::vector<double>& times, const std::vector<double>& values,
                     std::vector<double>& peak_times, std::vector<double>& peak_values) {
    peak_times.clear();
    peak_values.clear();
    for (size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
            peak_times.push_back(times[i]);
            peak_values.push_back(values[i]);
        }
    }
    if (peak_times.size() < 3) {
        peak_times = times;
        peak_values = values;
    }
}

BoundCheck check_upper_bound(const std::vector<double>& xs, const std::vector<double>& ys,
                             double exponent, BoundKind kind) {
    if (xs.size() != ys.size() || xs.empty()) throw invalid_config("check_upper_bound: bad input");
    const size_t n = xs.size();
    std::vector<double> ratio(n);
    for (size_t i = 0; i < n; ++i) {
        const double w = std::pow(xs[i], exponent);
        ratio[i] = kind == BoundKind::growth ? ys[i] / w : ys[i] * w;
    }
    const size_t tail = std::max<size_t>(1, (n + 2) / 3);
    const size_t split = n - tail;
    BoundCheck b;
    for (size_t i = 0; i < n; ++i) {
        b.global_sup = std::max(b.global_sup, ratio[i]);
        if (i < split)
            b.head_sup = std::max(b.head_sup, ratio[i]);
        else
            b.sup_ratio = std::max(b.sup_ratio, ratio[i]);
    }
    if (split == 0) b.head_sup = b.sup_ratio; // degenerate: everything is tail
    b.stabilized = b.sup_ratio <= 1.1 * b.head_sup;
    return b;
}

} // namespace fkg
