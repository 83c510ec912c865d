#include "fkg/grid.hpp"

#include "fkg/errors.hpp"

namespace fkg {

Grid make_grid(int n_modes, double half_period) {
    if (n_modes < 4 || n_modes % 2 != 0)
        throw invalid_config("make_grid: n_modes must be even and >= 4, got " +
                             std::to_string(n_modes));
    if (!(half_period > 0.0) || !std::isfinite(half_period))
        throw invalid_config("make_grid: half_period must be positive and finite");

    Grid g;
    g.n = n_modes;
    g.half_period = half_period;
    g.freqs.resize(n_modes);
    g.points.resize(n_modes);
    const double dxi = M_PI / half_period;
    const double h = 2.0 * half_period / n_modes;
    for (int i = 0; i < n_modes; ++i) {
        g.freqs[i] = dxi * g.mode_of_slot(i);
        g.points[i] = -half_period + h * i;
    }
    return g;
}

} // namespace fkg
