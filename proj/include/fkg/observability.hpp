#ifndef FKG_OBSERVABILITY_HPP
#define FKG_OBSERVABILITY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "fkg/grid.hpp"
#include "fkg/spectral_field.hpp"

namespace fkg {

// One interval-observability problem on the torus [-1,1]: how much of
// ||u||_{L^2} is recovered from the equation residual f = (A_s - lambda)u
// weighted by <lambda>^{1/s-1}, plus the window norm ||u||_{L^2[-delta,delta]}.
// `alpha` shifts the symbol to |xi - alpha|^s (alpha = 0 is the plain
// fractional Laplacian).
struct ObservabilityQuery {
    double s = 1.0;
    double lambda = 0.0;
    double delta = 0.3;  // control window [-delta, delta], delta in (0, 1]
    int n_modes = 256;   // truncation size
    double alpha = 0.0;
    double bracket_weight = 1.0; // <lambda>^{1/s-1}, cached

    static ObservabilityQuery make(double s, double lambda, double delta, int n_modes,
                                   double alpha = 0.0);
};

double japanese_bracket(double x); // <x> = sqrt(1 + x^2)

// min/max of f_s(z) = (1 - z^s)/(1 - z) over [0,1] on a uniform grid, with
// the removable value f_s(1) = s included. Returns (d_s, D_s).
std::pair<double, double> elementary_constants(double s, int grid_points);

// Best constant in the quadratic-form relaxation
//   C_q^2 = sup_u ||u||^2 / ( <lambda>^{2/s-2} ||f||^2 + ||u||^2_{[-delta,delta]} ),
// computed as 1/lambda_min of the Hermitian form on the truncated mode space.
double observability_constant(const ObservabilityQuery& q);

struct ObservabilityScan {
    std::vector<std::pair<double, double>> points; // (lambda, C_q)
    double max_cq = 0.0;
};

ObservabilityScan scan_observability(double s, double delta, const std::vector<double>& lambda_grid,
                                     int n_modes);

// Shifted fractional Laplacian H_alpha^s: multiplication by |xi_j - alpha|^s.
struct ShiftedOperator {
    double alpha = 0.0;
    double s = 1.0;
    Grid grid;
};

SpectralField shifted_apply(const ShiftedOperator& op, const SpectralField& f);

// Relative L^2 difference between e^{i t H_alpha^s} f computed directly and
// through the conjugation e^{i alpha x} e^{i t H_0^s} e^{-i alpha x}.
// Requires alpha to be an integer multiple of the frequency spacing; also
// certifies unitarity of the direct group to 1e-10.
double shifted_group_residual(const ShiftedOperator& op, double t, const SpectralField& f);

// --- periodization ---------------------------------------------------------

using LineFunction = std::function<cplx(double)>;

// Modulated periodization: the torus field sum_n e^{i alpha (x + P n)} g(x + P n)
// sampled on the grid, P the grid period. The shift sum is truncated once its
// shells fall below 1e-12 of the running maximum; wider supports are rejected.
SpectralField periodize(const LineFunction& g, double alpha, const Grid& grid,
                        int max_shifts = 64);

struct PeriodizationResult {
    double line_norm_sq = 0.0;
    double torus_integral = 0.0; // normalized alpha-quadrature of torus norms
    double residual = 0.0;       // |line - torus| / line
    bool zero_input = false;
};

// Normalization constant in ||g||^2_{L^2(R)} = c * integral over one
// frequency spacing of ||Pi_alpha g||^2, determined by calibration against a
// reference Gaussian with closed-form norm (cached per grid period).
double periodization_constant(const Grid& grid);

// Tests the norm identity for one line function; n_alpha quadrature points
// over alpha in [0, 2*pi/P). Errors when doubling n_alpha moves the
// quadrature by more than 1e-8 relative.
PeriodizationResult check_periodization_identity(const LineFunction& g, int n_alpha,
                                                 const Grid& grid);

} // namespace fkg

#endif
