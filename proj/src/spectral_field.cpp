#include "fkg/spectral_field.hpp"

#include <cmath>

#include "fkg/errors.hpp"
#include "fkg/fft.hpp"

namespace fkg {

namespace {

void check_size(const Grid& g, size_t have, const char* who) {
    if (static_cast<size_t>(g.n) != have)
        throw invalid_config(std::string(who) + ": data length does not match grid");
}

} // namespace

void grid_forward(const Grid& g, std::span<const cplx> values, std::span<cplx> coeffs) {
    fft::forward(values, coeffs);
    const double scale = 1.0 / g.n;
    for (int i = 0; i < g.n; ++i) coeffs[i] *= (i % 2 == 0 ? scale : -scale);
}

void grid_backward(const Grid& g, std::span<const cplx> coeffs, std::span<cplx> values) {
    std::vector<cplx> phased(coeffs.size());
    for (int i = 0; i < g.n; ++i) phased[i] = (i % 2 == 0 ? coeffs[i] : -coeffs[i]);
    fft::backward(phased, values);
}

SpectralField SpectralField::from_values(const Grid& g, std::vector<cplx> values) {
    check_size(g, values.size(), "SpectralField::from_values");
    SpectralField f;
    f.grid_ = g;
    f.coeffs_.resize(values.size());
    grid_forward(g, values, f.coeffs_);
    f.values_ = std::move(values);
    f.built_from_ = Built::from_values;
    return f;
}

SpectralField SpectralField::from_coeffs(const Grid& g, std::vector<cplx> coeffs) {
    check_size(g, coeffs.size(), "SpectralField::from_coeffs");
    SpectralField f;
    f.grid_ = g;
    f.values_.resize(coeffs.size());
    grid_backward(g, coeffs, f.values_);
    f.coeffs_ = std::move(coeffs);
    f.built_from_ = Built::from_coeffs;
    return f;
}

SpectralField SpectralField::from_function(const Grid& g, const std::function<cplx(double)>& fn) {
    std::vector<cplx> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = fn(g.points[i]);
    return from_values(g, std::move(v));
}

SpectralField SpectralField::zero(const Grid& g) {
    SpectralField f;
    f.grid_ = g;
    f.values_.assign(g.n, cplx(0.0));
    f.coeffs_.assign(g.n, cplx(0.0));
    return f;
}

cplx SpectralField::coeff_of_mode(int j) const {
    if (j < -grid_.n / 2 || j >= grid_.n / 2) return cplx(0.0);
    return coeffs_[grid_.slot_of_mode(j)];
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(grid_.period() * s);
}

SpectralField frac_laplacian_apply(const SpectralField& f, double s) {
    if (!(s > 0.0)) throw invalid_config("frac_laplacian_apply: requires s > 0");
    const Grid& g = f.grid();
    std::vector<cplx> c(g.n);
    for (int i = 0; i < g.n; ++i) c[i] = std::pow(std::abs(g.freqs[i]), s) * f.coeffs()[i];
    return SpectralField::from_coeffs(g, std::move(c));
}

double sobolev_norm(const SpectralField& f, SobolevOrder r) {
    if (!std::isfinite(r.order)) throw invalid_config("sobolev_norm: order must be finite");
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double xi2 = g.freqs[i] * g.freqs[i];
        acc += std::pow(1.0 + xi2, r.order) * std::norm(f.coeffs()[i]);
    }
    return std::sqrt(g.period() * acc);
}

cplx inner_product(const SpectralField& f, const SpectralField& g) {
    if (!f.grid().same_as(g.grid())) throw invalid_config("inner_product: grid mismatch");
    cplx acc(0.0);
    for (int i = 0; i < f.grid().n; ++i) acc += f.coeffs()[i] * std::conj(g.coeffs()[i]);
    return f.grid().period() * acc;
}

SpectralField multiply_values(const SpectralField& f, const std::vector<double>& coefficient) {
    const Grid& g = f.grid();
    check_size(g, coefficient.size(), "multiply_values");
    std::vector<cplx> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = coefficient[i] * f.values()[i];
    return SpectralField::from_values(g, std::move(v));
}

SpectralField axpy(cplx a, const SpectralField& f, cplx b, const SpectralField& g) {
    if (!f.grid().same_as(g.grid())) throw invalid_config("axpy: grid mismatch");
    std::vector<cplx> c(f.grid().n);
    for (int i = 0; i < f.grid().n; ++i) c[i] = a * f.coeffs()[i] + b * g.coeffs()[i];
    return SpectralField::from_coeffs(f.grid(), std::move(c));
}

} // namespace fkg
