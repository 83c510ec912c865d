#ifndef FKG_DAMPING_HPP
#define FKG_DAMPING_HPP

#include <utility>
#include <vector>

#include "fkg/grid.hpp"
#include "fkg/spectral_field.hpp"

namespace fkg {

// Periodic damping coefficient gamma(x) >= 0 with one window of support per
// period, plus the certified region Omega on which gamma >= epsilon.
//
// Shapes:
//   constant            gamma = a everywhere, Omega = whole period
//   indicator           gamma = a on [c-d0, c+d0], 0 outside
//   smoothed_indicator  same window with raised-cosine ramps of width w
//                       inside the window; the plateau [c-d0+w, c+d0-w] is
//                       where gamma = a, and it is what Omega certifies.
struct DampingProfile {
    enum class Kind { constant, indicator, smoothed_indicator };

    Kind kind = Kind::constant;
    double amplitude = 1.0;       // a = sup gamma
    double center = 0.0;          // c
    double half_width = 0.0;      // d0; support is [c-d0, c+d0] per period
    double smoothing_width = 0.0; // w, raised-cosine ramp length
    double epsilon = 1.0;         // certified lower bound on Omega
    double period = 2.0;          // must equal the grid period when sampled

    static DampingProfile constant(double a, double period);
    static DampingProfile indicator(double a, double center, double half_width, double period);
    static DampingProfile smoothed_indicator(double a, double center, double half_width,
                                             double smoothing_width, double period);

    double operator()(double x) const; // periodic evaluation
    std::vector<double> sample(const Grid& g) const;

    // Certified window [lo, hi] (per period, relative to one fundamental
    // domain around `center`) on which gamma >= epsilon.
    std::pair<double, double> certified_window() const;
};

// Pointwise multiplication by the damping coefficient; periods must match.
SpectralField multiply_pointwise(const SpectralField& f, const DampingProfile& gamma);

} // namespace fkg

#endif
