#ifndef FKG_RATE_HPP
#define FKG_RATE_HPP

#include <optional>
#include <vector>

namespace fkg {

// Decay regime implied by the fractional order s, together with the
// resolvent-growth exponents it rests on.
//
//   s in (0,2): polynomial decay t^{-s/(4-2s)}; the energy-space resolvent
//               grows like <k>^{4/s-2} and the scalar one like <k>^{4/s-3}.
//               The map alpha -> 1/alpha ties the two: poly_exponent is
//               exactly 1/bt_alpha with bt_alpha = 4/s-2.
//   s >= 2:     exponential decay; uniform energy resolvent (<k>^{2/s-1}
//               decays or is bounded), scalar exponent 2/s-2.
struct RatePrediction {
    enum class Regime { polynomial, exponential };
    Regime regime = Regime::polynomial;
    std::optional<double> poly_exponent; // s/(4-2s), polynomial regime only
    std::optional<double> bt_alpha;      // 4/s-2, polynomial regime only
    double resolvent_exponent_L2 = 0.0;
    double resolvent_exponent_energy = 0.0;
};

RatePrediction predicted_decay(double s);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0; // in log space
    double r_squared = 0.0;
    double tail_fraction = 0.0;
    double sup_ratio = 0.0; // max over the fitted window of y_i / fitted_i
    double rate() const { return -slope; }
};

// Log-log least squares over the last tail_fraction of the points.
RateFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                      double tail_fraction);

// Least squares of log(values) against time over the tail; rate() = -slope.
RateFit fit_exponential(const std::vector<double>& times, const std::vector<double>& values,
                        double tail_fraction);

// Strict local maxima of `values`, used to fit envelopes of oscillating
// traces. Endpoints are excluded. Falls back to the full series when fewer
// than three maxima exist.
void envelope_maxima(const std::vector<double>& times, const std::vector<double>& values,
                     std::vector<double>& peak_times, std::vector<double>& peak_values);

// Direction of a claimed one-sided bound.
enum class BoundKind {
    growth, // claim: ys <= C * xs^exponent
    decay   // claim: ys <= C * xs^(-exponent)
};

// Bound-direction statistic for an asymptotic one-sided bound. ratios_i is
// ys_i/xs_i^e (growth) or ys_i*xs_i^e (decay); the claim holds with a
// stabilizing constant when the sup of the last third of the ratios does not
// exceed the sup of the earlier points by more than 10%.
struct BoundCheck {
    double sup_ratio = 0.0;  // sup over the tail third
    double head_sup = 0.0;   // sup over the leading two thirds
    double global_sup = 0.0;
    bool stabilized = false; // sup_ratio <= 1.1 * head_sup
};

BoundCheck check_upper_bound(const std::vector<double>& xs, const std::vector<double>& ys,
                             double exponent, BoundKind kind = BoundKind::growth);

} // namespace fkg

#endif
