#include "fkg/observability.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fkg/errors.hpp"

namespace fkg {

double japanese_bracket(double x) { return std::sqrt(1.0 + x * x); }

ObservabilityQuery ObservabilityQuery::make(double s, double lambda, double delta, int n_modes,
                                            double alpha) {
    if (!(s > 0.0)) throw invalid_config("ObservabilityQuery: requires s > 0");
    if (!(delta > 0.0) || delta > 1.0)
        throw invalid_config("ObservabilityQuery: delta must lie in (0, 1]");
    ObservabilityQuery q;
    q.s = s;
    q.lambda = lambda;
    q.delta = delta;
    q.n_modes = n_modes;
    q.alpha = alpha;
    q.bracket_weight = std::pow(japanese_bracket(lambda), 1.0 / s - 1.0);
    return q;
}

std::pair<double, double> elementary_constants(double s, int grid_points) {
    if (!(s > 0.0)) throw invalid_config("elementary_constants: requires s > 0");
    if (grid_points < 1000)
        throw invalid_config("elementary_constants: need at least 10^3 grid points");
    // f_s(z) = (1 - z^s)/(1 - z) evaluated stably: near z = 1 the numerator
    // cancels, so switch to -expm1(s*log1p(-(1-z)))/(1-z); at z = 1 use the
    // removable value s.
    auto f = [s](double z) {
        if (z == 1.0) return s;
        if (z < 0.5) return (1.0 - std::pow(z, s)) / (1.0 - z);
        const double u = 1.0 - z;
        return -std::expm1(s * std::log1p(-u)) / u;
    };
    double lo = f(0.0), hi = lo;
    for (int i = 1; i < grid_points; ++i) {
        const double z = static_cast<double>(i) / (grid_points - 1);
        const double v = f(z);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

namespace {

// Hermitian form of the window quadrature h * sum_{|x_i|<=delta} |u(x_i)|^2,
// normalized so that delta = 1 gives the identity: entries are the field
// coefficients of the sampled indicator, arranged as a mode circulant.
Eigen::MatrixXcd window_form(const Grid& g, double delta) {
    std::vector<cplx> chi(g.n);
    for (int i = 0; i < g.n; ++i) chi[i] = std::abs(g.points[i]) <= delta ? 1.0 : 0.0;
    const SpectralField chi_field = SpectralField::from_values(g, std::move(chi));
    Eigen::MatrixXcd p(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) p(j, l) = chi_field.coeffs()[((j - l) % g.n + g.n) % g.n];
    return p;
}

void check_truncation(const Grid& g, double s, double lambda) {
    const double reach = std::pow(g.freq_max(), s);
    if (reach < 4.0 * std::abs(lambda))
        throw numerical_guard("observability: insufficient truncation, |xi_max|^s = " +
                                  std::to_string(reach) + " < 4|lambda| = " +
                                  std::to_string(4.0 * std::abs(lambda)),
                              reach);
}

} // namespace

double observability_constant(const ObservabilityQuery& q) {
    const Grid g = make_grid(q.n_modes, 1.0);
    check_truncation(g, q.s, q.lambda);

    const double w = q.bracket_weight * q.bracket_weight; // <lambda>^{2/s-2}
    Eigen::MatrixXcd quad = window_form(g, q.delta);
    for (int j = 0; j < g.n; ++j) {
        const double sym = std::pow(std::abs(g.freqs[j] - q.alpha), q.s) - q.lambda;
        quad(j, j) += w * sym * sym;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(quad, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numerical_guard("observability_constant: eigensolver failed");
    const double lambda_min = es.eigenvalues()(0);
    const double scale = std::abs(es.eigenvalues()(g.n - 1));
    if (lambda_min <= 1e-13 * std::max(1.0, scale))
        throw numerical_guard(
            "observability_constant: singular quadratic form (no control reaches u)",
            lambda_min);
    return 1.0 / std::sqrt(lambda_min);
}

ObservabilityScan scan_observability(double s, double delta,
                                     const std::vector<double>& lambda_grid, int n_modes) {
    ObservabilityScan scan;
    scan.points.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        const double cq = observability_constant(ObservabilityQuery::make(s, lambda, delta, n_modes));
        scan.points.emplace_back(lambda, cq);
        scan.max_cq = std::max(scan.max_cq, cq);
    }
    return scan;
}

SpectralField shifted_apply(const ShiftedOperator& op, const SpectralField& f) {
    if (!op.grid.same_as(f.grid())) throw invalid_config("shifted_apply: grid mismatch");
    if (!(op.s > 0.0)) throw invalid_config("shifted_apply: requires s > 0");
    std::vector<cplx> c(op.grid.n);
    for (int i = 0; i < op.grid.n; ++i)
        c[i] = std::pow(std::abs(op.grid.freqs[i] - op.alpha), op.s) * f.coeffs()[i];
    return SpectralField::from_coeffs(op.grid, std::move(c));
}

namespace {

// Coefficient shift by p slots of signed mode index; modes pushed off the
// ladder are dropped, so the caller must keep f band-limited with margin.
std::vector<cplx> shift_modes(const Grid& g, const std::vector<cplx>& c, int p) {
    std::vector<cplx> out(g.n, cplx(0.0));
    for (int slot = 0; slot < g.n; ++slot) {
        const int src_mode = g.mode_of_slot(slot) + p;
        if (src_mode < -g.n / 2 || src_mode >= g.n / 2) continue;
        out[slot] = c[g.slot_of_mode(src_mode)];
    }
    return out;
}

} // namespace

double shifted_group_residual(const ShiftedOperator& op, double t, const SpectralField& f) {
    if (!op.grid.same_as(f.grid())) throw invalid_config("shifted_group_residual: grid mismatch");
    if (!std::isfinite(t)) throw invalid_config("shifted_group_residual: t must be finite");
    const Grid& g = op.grid;
    const double p_real = op.alpha / g.freq_spacing();
    const int p = static_cast<int>(std::lround(p_real));
    if (std::abs(p_real - p) > 1e-9)
        throw invalid_config("shifted_group_residual: alpha is not a multiple of the frequency spacing");

    // Direct side: multiply each mode by e^{i t |xi_j - alpha|^s}.
    std::vector<cplx> lhs(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double phase = t * std::pow(std::abs(g.freqs[i] - op.alpha), op.s);
        lhs[i] = std::polar(1.0, phase) * f.coeffs()[i];
    }

    // Conjugated side: demodulate (mode shift by +p), free group, remodulate.
    std::vector<cplx> rhs = shift_modes(g, f.coeffs(), p);
    for (int i = 0; i < g.n; ++i) {
        const double phase = t * std::pow(std::abs(g.freqs[i]), op.s);
        rhs[i] *= std::polar(1.0, phase);
    }
    rhs = shift_modes(g, rhs, -p);

    double diff = 0.0, norm = 0.0, lhs_norm = 0.0;
    for (int i = 0; i < g.n; ++i) {
        diff += std::norm(lhs[i] - rhs[i]);
        norm += std::norm(f.coeffs()[i]);
        lhs_norm += std::norm(lhs[i]);
    }
    if (norm == 0.0) return 0.0;
    const double unitarity_defect = std::abs(std::sqrt(lhs_norm) - std::sqrt(norm)) / std::sqrt(norm);
    if (unitarity_defect > 1e-10)
        throw numerical_guard("shifted_group_residual: group is not unitary to 1e-10",
                              unitarity_defect);
    return std::sqrt(diff / norm);
}

SpectralField periodize(const LineFunction& g, double alpha, const Grid& grid, int max_shifts) {
    const double P = grid.period();
    std::vector<cplx> v(grid.n, cplx(0.0));
    double running_max = 0.0;

    auto add_shift = [&](int n_shift) {
        double shell_max = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.points[i] + P * n_shift;
            const cplx term = std::polar(1.0, alpha * x) * g(x);
            v[i] += term;
            shell_max = std::max(shell_max, std::abs(term));
        }
        return shell_max;
    };

    running_max = add_shift(0);
    int quiet_shells = 0;
    for (int n = 1; n <= max_shifts; ++n) {
        const double shell = std::max(add_shift(n), add_shift(-n));
        running_max = std::max(running_max, shell);
        if (shell <= 1e-12 * std::max(1.0, running_max)) {
            if (++quiet_shells >= 2) return SpectralField::from_values(grid, std::move(v));
        } else {
            quiet_shells = 0;
        }
    }
    throw numerical_guard("periodize: support too wide for the shift truncation (|n| <= " +
                          std::to_string(max_shifts) + ")");
}

namespace {

// alpha-quadrature of ||Pi_alpha g||^2 over one frequency spacing, without
// the calibration constant. Periodic trapezoid = left endpoints.
double raw_alpha_integral(const LineFunction& g, int n_alpha, const Grid& grid) {
    const double stride = grid.freq_spacing(); // 2*pi/P
    double acc = 0.0;
    for (int q = 0; q < n_alpha; ++q) {
        const double alpha = stride * q / n_alpha;
        const SpectralField pg = periodize(g, alpha, grid);
        const double nrm = pg.l2_norm();
        acc += nrm * nrm;
    }
    return acc * stride / n_alpha;
}

} // namespace

double periodization_constant(const Grid& grid) {
    static std::mutex mtx;
    static std::map<double, double> cache; // keyed by the grid period
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(grid.period());
        if (it != cache.end()) return it->second;
    }
    // Reference Gaussian, narrow enough that the wrapped tails are < 1e-16.
    const double sigma = grid.half_period / 6.0;
    const LineFunction ref = [sigma](double x) { return cplx(std::exp(-x * x / (2 * sigma * sigma))); };
    const double closed_norm_sq = sigma * std::sqrt(M_PI);
    const double raw = raw_alpha_integral(ref, 64, grid);
    if (!(raw > 0.0)) throw numerical_guard("periodization_constant: calibration integral vanished");
    const double c = closed_norm_sq / raw;
    std::lock_guard<std::mutex> lock(mtx);
    cache[grid.period()] = c;
    return c;
}

PeriodizationResult check_periodization_identity(const LineFunction& g, int n_alpha,
                                                 const Grid& grid) {
    if (n_alpha < 2) throw invalid_config("check_periodization_identity: n_alpha too small");
    PeriodizationResult r;

    // Zero-input detection: nothing to normalize against.
    double peek = 0.0;
    for (int i = 0; i < grid.n; ++i) peek = std::max(peek, std::abs(g(grid.points[i])));
    if (peek == 0.0) {
        r.zero_input = true;
        return r;
    }

    // Line norm by independent fine quadrature (8x the torus resolution,
    // range extended until the integrand is negligible).
    {
        const double h = grid.spacing() / 8.0;
        const long half_steps = std::lround(grid.period() * 96.0 / h);
        double acc = 0.0;
        for (long i = -half_steps; i <= half_steps; ++i) acc += std::norm(g(i * h));
        r.line_norm_sq = acc * h;
    }

    const double c = periodization_constant(grid);
    const double coarse = c * raw_alpha_integral(g, n_alpha, grid);
    const double fine = c * raw_alpha_integral(g, 2 * n_alpha, grid);
    if (std::abs(fine - coarse) > 1e-8 * std::abs(fine))
        throw numerical_guard("check_periodization_identity: alpha quadrature not resolved",
                              std::abs(fine - coarse) / std::abs(fine));
    r.torus_integral = fine;
    r.residual = std::abs(r.line_norm_sq - r.torus_integral) / r.line_norm_sq;
    return r;
}

} // namespace fkg
