#ifndef FKG_RESOLVENT_HPP
#define FKG_RESOLVENT_HPP

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "fkg/damping.hpp"
#include "fkg/grid.hpp"
#include "fkg/spectral_field.hpp"

namespace fkg {

// Operator norms are measured between these spaces. `energy` means the full
// first-order system on H^{s/2} x L^2.
enum class SpacePair { l2_to_l2, l2_to_hs2, hneg_to_l2, energy };

// Diagonal weight realizing the H^{s/2} component of the energy space:
// bracket = (1+xi^2)^{s/4} (the Sobolev definition), modal = (m+|xi|^s)^{1/2}
// (the conserved-energy form). Equivalent norms; exponents agree.
enum class EnergyWeight { bracket, modal };

std::vector<double> energy_weights(const Grid& g, double s, double m, EnergyWeight w);

// Damped Helmholtz operator (-dxx)^{s/2} + m + ik*gamma(x) - k^2, assembled
// densely in the Fourier coefficient basis: diagonal symbol plus ik times the
// mode-circulant of gamma's coefficients.
struct HelmholtzOperator {
    double s = 1.0;
    double m = 1.0;
    double k = 0.0;
    Grid grid;
    std::vector<double> gamma_values; // sampled gamma; empty means gamma == 0
    Eigen::MatrixXcd matrix;
};

// Largest admissible |k| on this grid for order s (resonant-shell rule
// |xi_max|^s >= 4 k^2).
double truncation_k_max(const Grid& g, double s);

HelmholtzOperator assemble_helmholtz(double s, double m, double k,
                                     const std::optional<DampingProfile>& gamma, const Grid& grid);

// Direct dense solve of op * u = f with iterative refinement; rejects
// condition estimates beyond 1e14 and residuals beyond 1e-9.
SpectralField solve_resolvent(const HelmholtzOperator& op, const SpectralField& f);

// Operator norm of the weighted resolvent W_out * op^{-1} * W_in^{-1}.
// Dense SVD of the inverse-free reformulation for n <= 512, power iteration
// on R*R above that. `resolvent_norm_power` is the cross-check route.
double resolvent_norm(const HelmholtzOperator& op, SpacePair pair,
                      EnergyWeight weight = EnergyWeight::bracket);
double resolvent_norm_power(const HelmholtzOperator& op, SpacePair pair,
                            EnergyWeight weight = EnergyWeight::bracket, double tol = 1e-10);

// First-order generator A = (0, I; -(-dxx)^{s/2} - m, -gamma) acting on
// coefficient pairs (u, v).
struct GeneratorBlocks {
    double s = 1.0;
    double m = 1.0;
    Grid grid;
    std::vector<double> gamma_values; // empty means gamma == 0

    static GeneratorBlocks make(double s, double m, const std::optional<DampingProfile>& gamma,
                                const Grid& grid);

    void apply(std::span<const cplx> u, std::span<const cplx> v, std::span<cplx> out_u,
               std::span<cplx> out_v) const;
    Eigen::MatrixXcd dense() const; // 2n x 2n, coefficient basis
};

// Resolvent of A through the scalar block formula:
//   u1 = R(ik)((ik + gamma) f1 + f2),   u2 = ik u1 - f1.
std::pair<SpectralField, SpectralField> full_resolvent_apply(
    double s, double m, double k, const std::optional<DampingProfile>& gamma, const Grid& grid,
    const SpectralField& f1, const SpectralField& f2);

// ||R(ik, A)|| on the energy space, via power iteration driven by the block
// formula (one scalar factorization per call).
double full_resolvent_norm(double s, double m, double k,
                           const std::optional<DampingProfile>& gamma, const Grid& grid,
                           EnergyWeight weight = EnergyWeight::bracket, double tol = 1e-10);

struct ResolventScan {
    std::vector<double> k_grid;
    std::vector<double> norms;
    SpacePair pair = SpacePair::l2_to_l2;
    double fitted_slope = 0.0;   // log-log tail fit (NaN when too few points)
    double bound_exponent = 0.0; // predicted growth exponent for this pair
};

ResolventScan scan_resolvent(double s, double m, const std::optional<DampingProfile>& gamma,
                             const Grid& grid, const std::vector<double>& k_grid, SpacePair pair,
                             EnergyWeight weight = EnergyWeight::bracket, int threads = 1);

std::vector<double> geometric_grid(double lo, double hi, int per_decade);

const char* to_string(SpacePair pair);

} // namespace fkg

#endif
