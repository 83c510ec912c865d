#ifndef FKG_TEST_HELPERS_HPP
#define FKG_TEST_HELPERS_HPP

#include <complex>
#include <random>
#include <vector>

#include "fkg/grid.hpp"
#include "fkg/spectral_field.hpp"

namespace fkg_test {

using fkg::cplx;

inline std::vector<cplx> random_values(const fkg::Grid& g, unsigned long seed,
                                       bool real_only = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = real_only ? cplx(nd(rng)) : cplx(nd(rng), nd(rng));
    return v;
}

inline fkg::SpectralField random_field(const fkg::Grid& g, unsigned long seed,
                                       bool real_only = false) {
    return fkg::SpectralField::from_values(g, random_values(g, seed, real_only));
}

// Random field supported on modes |j| <= band.
inline fkg::SpectralField random_band_field(const fkg::Grid& g, int band, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> c(g.n, cplx(0.0));
    for (int j = -band; j <= band; ++j) c[g.slot_of_mode(j)] = cplx(nd(rng), nd(rng));
    return fkg::SpectralField::from_coeffs(g, std::move(c));
}

} // namespace fkg_test

#endif
