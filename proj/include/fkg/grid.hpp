#ifndef FKG_GRID_HPP
#define FKG_GRID_HPP

#include <cmath>
#include <vector>

namespace fkg {

// Uniform periodic grid on [-L, L] with the matching Fourier frequency ladder.
//
// Conventions (fixed once, used everywhere):
//   * collocation points  x_i = -L + i*h,  h = 2L/n,  i = 0..n-1
//   * frequencies in FFT index order: slot i carries the signed mode
//     j = i        for i <  n/2
//     j = i - n    for i >= n/2
//     with xi_j = pi*j/L. Mode -n/2 is present, +n/2 is not.
struct Grid {
    int n = 0;                    // number of collocation points / modes, even
    double half_period = 0.0;     // L; the domain is [-L, L], period 2L
    std::vector<double> freqs;    // xi_j in FFT slot order
    std::vector<double> points;   // x_i

    double period() const { return 2.0 * half_period; }
    double spacing() const { return period() / n; }
    double freq_spacing() const { return M_PI / half_period; }

    // Largest |xi| on the ladder (attained at mode -n/2).
    double freq_max() const { return freq_spacing() * (n / 2); }

    int mode_of_slot(int slot) const { return slot < n / 2 ? slot : slot - n; }
    int slot_of_mode(int mode) const { return mode >= 0 ? mode : mode + n; }

    bool same_as(const Grid& other) const {
        return n == other.n && half_period == other.half_period;
    }
};

Grid make_grid(int n_modes, double half_period);

} // namespace fkg

#endif
