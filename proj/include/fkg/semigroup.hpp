#ifndef FKG_SEMIGROUP_HPP
#define FKG_SEMIGROUP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fkg/damping.hpp"
#include "fkg/grid.hpp"
#include "fkg/resolvent.hpp" // EnergyWeight
#include "fkg/spectral_field.hpp"

namespace fkg {

// The evolving pair U = (u, u_t).
struct State {
    SpectralField u;
    SpectralField v; // u_t
    double t = 0.0;
};

struct InitialData {
    enum class Kind { modal, gaussian_bump, random_band };
    Kind kind = Kind::random_band;

    int mode = 1;           // modal: u = amplitude * cos(mode*pi*x/L), v = 0
    double amplitude = 1.0;
    double center = 0.0;    // gaussian bump in u, v = 0
    double width = 0.2;
    int band = 16;          // random complex coefficients on |j| <= band
    unsigned long seed = 1;
};

std::pair<SpectralField, SpectralField> generate_initial_data(const InitialData& data,
                                                              const Grid& grid);

struct SimConfig {
    double s = 1.0;
    double m = 1.0;
    std::optional<DampingProfile> gamma; // nullopt = undamped
    Grid grid;
    double dt = 1e-2;
    double t_final = 1.0;
    int record_stride = 1;
    InitialData initial_data;
    // Accuracy guard for the splitting: dt * sqrt(|xi_max|^s + m) must stay
    // below this bound (the scheme itself is unconditionally stable).
    double stability_guard = 0.5;

    double omega_max() const;
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy_norm; // ||(u,v)(t)||_{H^{s/2} x L^2}, bracket weight
    std::vector<double> l2_norm_u;
    std::vector<double> l2_norm_v;
    std::vector<double> modal_energy; // same norm with the (m+|xi|^s)^{1/2} weight
    double data_norm = 0.0;           // ||(u,v)(0)||_{H^s x H^{s/2}}
    // Largest per-step ratio of the modal energy norm; the splitting is an
    // isometry-contraction-isometry, so this never exceeds 1 + round-off.
    double max_step_growth = 0.0;
};

// One Strang step A(dt/2) B(dt) A(dt/2): A is the exact undamped modal
// rotation with frequency omega_j = sqrt(|xi_j|^s + m), B the exact pointwise
// damping v <- e^{-gamma dt} v.
State step_strang(const State& state, const SimConfig& cfg);

// Full trajectory with the energy trace at the recorded times. When `states`
// is non-null the recorded states are stored there as well.
EnergyTrace simulate(const SimConfig& cfg, std::vector<State>* states = nullptr);

// sqrt( ||u||^2_{H^{s/2}} + ||v||^2_{L^2} ).
double energy(const State& state, double s, double m,
              EnergyWeight weight = EnergyWeight::bracket);

// Max over consecutive recorded states of |dE/dt + integral gamma |v|^2| / E
// with E the quadratic energy; O(dt^2) for the Strang trajectory.
double dissipation_residual(const std::vector<State>& states, double s, double m,
                            const std::optional<DampingProfile>& gamma);

} // namespace fkg

#endif
