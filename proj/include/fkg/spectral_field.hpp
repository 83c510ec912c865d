#ifndef FKG_SPECTRAL_FIELD_HPP
#define FKG_SPECTRAL_FIELD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fkg/grid.hpp"

namespace fkg {

using cplx = std::complex<double>;

// Sobolev exponent r for the weight (1+xi^2)^r. Order 0 reproduces L^2.
struct SobolevOrder {
    double order = 0.0;
};

// A function on the periodic grid carried in both representations at once:
// point values v_i at the collocation points and coefficients c_j of the
// expansion u(x) = sum_j c_j e^{i xi_j x}.
//
// Both representations are computed at construction and kept consistent, so
// a field is immutable and safe to share across threads. `built_from`
// records which side was authoritative.
//
// Relation to the raw DFT (x_0 = -L shifts each mode by (-1)^j):
//   c[slot]  = (-1)^slot / n * forward(values)[slot]
//   values   = backward((-1)^slot * c[slot])
// Quadrature is trapezoidal (exact for trigonometric polynomials), giving the
// discrete Parseval identity  h * sum_i |v_i|^2 = 2L * sum_j |c_j|^2.
class SpectralField {
public:
    enum class Built { from_values, from_coeffs };

    SpectralField() = default;

    static SpectralField from_values(const Grid& g, std::vector<cplx> values);
    static SpectralField from_coeffs(const Grid& g, std::vector<cplx> coeffs);
    static SpectralField from_function(const Grid& g, const std::function<cplx(double)>& f);
    static SpectralField zero(const Grid& g);

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    Built built_from() const { return built_from_; }

    // Coefficient of signed mode j (0 when j is off the ladder).
    cplx coeff_of_mode(int j) const;

    double l2_norm() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
    std::vector<cplx> coeffs_;
    Built built_from_ = Built::from_values;
};

// --- spectral_core operations ---------------------------------------------

// Fractional Laplacian: coefficient-wise multiplication by |xi_j|^s.
// The mean mode is annihilated. Requires s > 0.
SpectralField frac_laplacian_apply(const SpectralField& f, double s);

// sqrt( 2L * sum_j (1 + xi_j^2)^r |c_j|^2 ); order 0 equals the L^2
// quadrature norm of the values.
double sobolev_norm(const SpectralField& f, SobolevOrder r);

// L^2 pairing <f, g> = integral of f * conj(g).
cplx inner_product(const SpectralField& f, const SpectralField& g);

// Pointwise product with a sampled real coefficient (values side), with the
// coefficients refreshed by a forward transform.
SpectralField multiply_values(const SpectralField& f, const std::vector<double>& coefficient);

// Linear combination a*f + b*g on a shared grid.
SpectralField axpy(cplx a, const SpectralField& f, cplx b, const SpectralField& g);

// Raw transform kernels used by SpectralField (and by inner loops that avoid
// constructing fields). in/out may alias.
void grid_forward(const Grid& g, std::span<const cplx> values, std::span<cplx> coeffs);
void grid_backward(const Grid& g, std::span<const cplx> coeffs, std::span<cplx> values);

} // namespace fkg

#endif
