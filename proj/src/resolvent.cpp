#include "fkg/resolvent.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "fkg/errors.hpp"
#include "fkg/rate.hpp"

namespace fkg {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

std::vector<double> energy_weights(const Grid& g, double s, double m, EnergyWeight w) {
    std::vector<double> out(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double xi = g.freqs[i];
        out[i] = w == EnergyWeight::bracket ? std::pow(1.0 + xi * xi, s / 4.0)
                                            : std::sqrt(m + std::pow(std::abs(xi), s));
    }
    return out;
}

double truncation_k_max(const Grid& g, double s) {
    return std::sqrt(std::pow(g.freq_max(), s) / 4.0);
}

namespace {

void check_resonant_shell(const Grid& g, double s, double k) {
    const double reach = std::pow(g.freq_max(), s);
    if (reach < 4.0 * k * k)
        throw numerical_guard("helmholtz: resonant shell outside the grid, |xi_max|^s = " +
                                  std::to_string(reach) + " < 4k^2 = " + std::to_string(4 * k * k),
                              reach);
}

// Mode circulant of the multiplication operator by a sampled real
// coefficient: entry (j,l) is the field coefficient at mode j-l (mod n).
MatrixXcd multiplication_matrix(const Grid& g, const std::vector<double>& samples) {
    std::vector<cplx> v(samples.begin(), samples.end());
    std::vector<cplx> c(g.n);
    grid_forward(g, v, c);
    MatrixXcd mat(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int l = 0; l < g.n; ++l) mat(j, l) = c[((j - l) % g.n + g.n) % g.n];
    return mat;
}

VectorXcd to_eigen(const std::vector<cplx>& v) {
    return Eigen::Map<const VectorXcd>(v.data(), static_cast<long>(v.size()));
}

std::vector<cplx> from_eigen(const VectorXcd& v) {
    return std::vector<cplx>(v.data(), v.data() + v.size());
}

// Shared solver state for the scans: one factorization, many applies.
struct Factorized {
    const HelmholtzOperator& op;
    Eigen::PartialPivLU<MatrixXcd> lu;

    explicit Factorized(const HelmholtzOperator& op_) : op(op_), lu(op_.matrix) {
        const double rc = lu.rcond();
        if (!(rc > 1e-14))
            throw numerical_guard("helmholtz: condition estimate " + std::to_string(1.0 / rc) +
                                      " exceeds 1e14 (k too close to an undamped resonance?)",
                                  1.0 / std::max(rc, 1e-300));
    }

    VectorXcd solve(const VectorXcd& rhs) const { return lu.solve(rhs); }
    VectorXcd solve_adjoint(const VectorXcd& rhs) const { return lu.adjoint().solve(rhs); }
};

// gamma * w, coefficient vector in, coefficient vector out, through the grid.
VectorXcd gamma_times(const Grid& g, const std::vector<double>& gamma, const VectorXcd& w) {
    if (gamma.empty()) return VectorXcd::Zero(w.size());
    std::vector<cplx> coef = from_eigen(w), vals(g.n);
    grid_backward(g, coef, vals);
    for (int i = 0; i < g.n; ++i) vals[i] *= gamma[i];
    grid_forward(g, vals, coef);
    return to_eigen(coef);
}

// Deterministic complex start vector for the power iterations.
VectorXcd seeded_vector(long n, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    VectorXcd v(n);
    for (long i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
    v.normalize();
    return v;
}

// Largest singular value of a linear map given by its forward and adjoint
// application, via power iteration on M*M.
template <typename Fwd, typename Adj>
double power_singular_value(long n, Fwd&& fwd, Adj&& adj, double tol, int max_iter = 3000) {
    VectorXcd v = seeded_vector(n, 0x5eedULL + static_cast<unsigned long>(n));
    double prev = 0.0;
    int settled = 0;
    for (int it = 0; it < max_iter; ++it) {
        VectorXcd w = fwd(v);
        const double sigma = w.norm();
        VectorXcd u = adj(w);
        const double un = u.norm();
        if (un == 0.0) return 0.0;
        v = u / un;
        if (std::abs(sigma - prev) <= tol * std::max(sigma, 1e-300)) {
            if (++settled >= 3) return sigma;
        } else {
            settled = 0;
        }
        prev = sigma;
    }
    return prev; // slow spectral gap; the quotient has still settled to ~tol
}

std::vector<double> pair_weights_out(const HelmholtzOperator& op, SpacePair pair) {
    if (pair == SpacePair::l2_to_hs2)
        return energy_weights(op.grid, op.s, op.m, EnergyWeight::bracket);
    return std::vector<double>(op.grid.n, 1.0);
}

std::vector<double> pair_weights_in_inverse(const HelmholtzOperator& op, SpacePair pair) {
    // Input space H^{-s/2} means f is small in the weighted sense, so the
    // operator to measure is op^{-1} composed with the *positive* weight.
    if (pair == SpacePair::hneg_to_l2)
        return energy_weights(op.grid, op.s, op.m, EnergyWeight::bracket);
    return std::vector<double>(op.grid.n, 1.0);
}

} // namespace

HelmholtzOperator assemble_helmholtz(double s, double m, double k,
                                     const std::optional<DampingProfile>& gamma,
                                     const Grid& grid) {
    if (!(s > 0.0)) throw invalid_config("assemble_helmholtz: requires s > 0");
    if (!(m > 0.0)) throw invalid_config("assemble_helmholtz: requires m > 0");
    check_resonant_shell(grid, s, k);

    HelmholtzOperator op;
    op.s = s;
    op.m = m;
    op.k = k;
    op.grid = grid;

    if (gamma) {
        if (gamma->period != grid.period())
            throw invalid_config("assemble_helmholtz: damping period does not match the grid");
        op.gamma_values = gamma->sample(grid);
        op.matrix = cplx(0.0, k) * multiplication_matrix(grid, op.gamma_values);
    } else {
        op.matrix = MatrixXcd::Zero(grid.n, grid.n);
    }
    for (int j = 0; j < grid.n; ++j)
        op.matrix(j, j) += std::pow(std::abs(grid.freqs[j]), s) + m - k * k;
    return op;
}

SpectralField solve_resolvent(const HelmholtzOperator& op, const SpectralField& f) {
    if (!op.grid.same_as(f.grid())) throw invalid_config("solve_resolvent: grid mismatch");
    const double fn = f.l2_norm();
    if (fn == 0.0) return SpectralField::zero(op.grid);

    Factorized fac(op);
    const VectorXcd rhs = to_eigen(f.coeffs());
    VectorXcd u = fac.solve(rhs);
    // One step of iterative refinement keeps the residual at working accuracy
    // even near resonances.
    VectorXcd r = rhs - op.matrix * u;
    u += fac.solve(r);
    r = rhs - op.matrix * u;
    const double rel = r.norm() / rhs.norm();
    if (!(rel <= 1e-9))
        throw numerical_guard("solve_resolvent: residual " + std::to_string(rel) +
                                  " exceeds 1e-9",
                              rel);
    return SpectralField::from_coeffs(op.grid, from_eigen(u));
}

namespace {

double scalar_norm_dense(const HelmholtzOperator& op, SpacePair pair) {
    // ||W_out op^{-1} W_in^{-1}|| = 1 / sigma_min(W_in op W_out^{-1}),
    // no inversion needed.
    const std::vector<double> w_out = pair_weights_out(op, pair);
    const std::vector<double> w_in_inv = pair_weights_in_inverse(op, pair);
    MatrixXcd mat = op.matrix;
    for (int j = 0; j < op.grid.n; ++j) {
        mat.row(j) /= w_in_inv[j]; // W_in = (W_in^{-1})^{-1}
        mat.col(j) /= w_out[j];
    }
    Eigen::BDCSVD<MatrixXcd> svd(mat);
    const double smin = svd.singularValues()(op.grid.n - 1);
    if (!(smin > 0.0)) throw numerical_guard("resolvent_norm: singular operator");
    return 1.0 / smin;
}

double scalar_norm_power(const HelmholtzOperator& op, SpacePair pair, double tol) {
    const std::vector<double> w_out = pair_weights_out(op, pair);
    const std::vector<double> w_in_inv = pair_weights_in_inverse(op, pair);
    Factorized fac(op);
    const int n = op.grid.n;
    auto fwd = [&](const VectorXcd& x) {
        VectorXcd z = x;
        for (int j = 0; j < n; ++j) z(j) *= w_in_inv[j];
        VectorXcd y = fac.solve(z);
        for (int j = 0; j < n; ++j) y(j) *= w_out[j];
        return y;
    };
    auto adj = [&](const VectorXcd& x) {
        VectorXcd z = x;
        for (int j = 0; j < n; ++j) z(j) *= w_out[j];
        VectorXcd y = fac.solve_adjoint(z);
        for (int j = 0; j < n; ++j) y(j) *= w_in_inv[j];
        return y;
    };
    return power_singular_value(n, fwd, adj, tol);
}

double full_norm_factorized(const Factorized& fac, EnergyWeight weight, double tol) {
    const HelmholtzOperator& op = fac.op;
    const Grid& g = op.grid;
    const int n = g.n;
    const std::vector<double> w1 = energy_weights(g, op.s, op.m, weight);
    const cplx ik(0.0, op.k);

    // Forward: x -> W B^{-1} W^{-1} x with B = ik - A, through the block
    // formula u1 = R(ik)((ik+gamma) f1 + f2), u2 = ik u1 - f1.
    auto fwd = [&](const VectorXcd& x) {
        VectorXcd f1 = x.head(n), f2 = x.tail(n);
        for (int j = 0; j < n; ++j) f1(j) /= w1[j];
        VectorXcd rhs = ik * f1 + f2 + gamma_times(g, op.gamma_values, f1);
        VectorXcd u1 = fac.solve(rhs);
        VectorXcd u2 = ik * u1 - f1;
        VectorXcd out(2 * n);
        for (int j = 0; j < n; ++j) out(j) = w1[j] * u1(j);
        out.tail(n) = u2;
        return out;
    };
    // Adjoint: W^{-1} B^{-*} W; the second-component solve reduces to the
    // conjugate-transpose scalar operator H(k)^* = H(-k).
    auto adj = [&](const VectorXcd& x) {
        VectorXcd g1 = x.head(n), g2 = x.tail(n);
        for (int j = 0; j < n; ++j) g1(j) *= w1[j];
        VectorXcd w2 = fac.solve_adjoint(g1 - ik * g2);
        VectorXcd w1v = gamma_times(g, op.gamma_values, w2) - ik * w2 - g2;
        VectorXcd out(2 * n);
        for (int j = 0; j < n; ++j) out(j) = w1v(j) / w1[j];
        out.tail(n) = w2;
        return out;
    };
    return power_singular_value(2 * n, fwd, adj, tol);
}

} // namespace

double resolvent_norm(const HelmholtzOperator& op, SpacePair pair, EnergyWeight weight) {
    if (pair == SpacePair::energy) {
        Factorized fac(op);
        return full_norm_factorized(fac, weight, 1e-10);
    }
    if (op.grid.n <= 512) return scalar_norm_dense(op, pair);
    return scalar_norm_power(op, pair, 1e-10);
}

double resolvent_norm_power(const HelmholtzOperator& op, SpacePair pair, EnergyWeight weight,
                            double tol) {
    if (pair == SpacePair::energy) {
        Factorized fac(op);
        return full_norm_factorized(fac, weight, tol);
    }
    return scalar_norm_power(op, pair, tol);
}

GeneratorBlocks GeneratorBlocks::make(double s, double m,
                                      const std::optional<DampingProfile>& gamma,
                                      const Grid& grid) {
    if (!(s > 0.0) || !(m > 0.0)) throw invalid_config("GeneratorBlocks: requires s, m > 0");
    GeneratorBlocks a;
    a.s = s;
    a.m = m;
    a.grid = grid;
    if (gamma) {
        if (gamma->period != grid.period())
            throw invalid_config("GeneratorBlocks: damping period does not match the grid");
        a.gamma_values = gamma->sample(grid);
    }
    return a;
}

void GeneratorBlocks::apply(std::span<const cplx> u, std::span<const cplx> v,
                            std::span<cplx> out_u, std::span<cplx> out_v) const {
    const int n = grid.n;
    std::vector<cplx> gv(n, cplx(0.0));
    if (!gamma_values.empty()) {
        std::vector<cplx> vals(n);
        grid_backward(grid, v, vals);
        for (int i = 0; i < n; ++i) vals[i] *= gamma_values[i];
        grid_forward(grid, vals, gv);
    }
    for (int j = 0; j < n; ++j) {
        const double symbol = std::pow(std::abs(grid.freqs[j]), s) + m;
        out_u[j] = v[j];
        out_v[j] = -symbol * u[j] - gv[j];
    }
}

MatrixXcd GeneratorBlocks::dense() const {
    const int n = grid.n;
    MatrixXcd a = MatrixXcd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        a(j, n + j) = 1.0;
        a(n + j, j) = -(std::pow(std::abs(grid.freqs[j]), s) + m);
    }
    if (!gamma_values.empty())
        a.bottomRightCorner(n, n) = -multiplication_matrix(grid, gamma_values);
    return a;
}

std::pair<SpectralField, SpectralField> full_resolvent_apply(
    double s, double m, double k, const std::optional<DampingProfile>& gamma, const Grid& grid,
    const SpectralField& f1, const SpectralField& f2) {
    if (!f1.grid().same_as(grid) || !f2.grid().same_as(grid))
        throw invalid_config("full_resolvent_apply: grid mismatch");
    const HelmholtzOperator op = assemble_helmholtz(s, m, k, gamma, grid);
    const cplx ik(0.0, k);

    SpectralField rhs = axpy(ik, f1, cplx(1.0), f2);
    if (!op.gamma_values.empty())
        rhs = axpy(cplx(1.0), rhs, cplx(1.0), multiply_values(f1, op.gamma_values));

    const double rhs_norm = rhs.l2_norm();
    if (rhs_norm == 0.0 && f1.l2_norm() == 0.0)
        return {SpectralField::zero(grid), SpectralField::zero(grid)};

    SpectralField u1 = solve_resolvent(op, rhs);
    SpectralField u2 = axpy(ik, u1, cplx(-1.0), f1);

    // Residual of (ik - A)(u1,u2) = (f1,f2) in the energy norm.
    {
        const GeneratorBlocks a = GeneratorBlocks::make(s, m, gamma, grid);
        std::vector<cplx> au(grid.n), av(grid.n);
        a.apply(u1.coeffs(), u2.coeffs(), au, av);
        std::vector<cplx> r1(grid.n), r2(grid.n);
        for (int j = 0; j < grid.n; ++j) {
            r1[j] = ik * u1.coeffs()[j] - au[j] - f1.coeffs()[j];
            r2[j] = ik * u2.coeffs()[j] - av[j] - f2.coeffs()[j];
        }
        const std::vector<double> w1 = energy_weights(grid, s, m, EnergyWeight::bracket);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < grid.n; ++j) {
            num += w1[j] * w1[j] * std::norm(r1[j]) + std::norm(r2[j]);
            den += w1[j] * w1[j] * std::norm(f1.coeffs()[j]) + std::norm(f2.coeffs()[j]);
        }
        const double rel = std::sqrt(num / den);
        if (!(rel <= 1e-9))
            throw numerical_guard("full_resolvent_apply: energy residual " + std::to_string(rel) +
                                      " exceeds 1e-9",
                                  rel);
    }
    return {std::move(u1), std::move(u2)};
}

double full_resolvent_norm(double s, double m, double k,
                           const std::optional<DampingProfile>& gamma, const Grid& grid,
                           EnergyWeight weight, double tol) {
    const HelmholtzOperator op = assemble_helmholtz(s, m, k, gamma, grid);
    Factorized fac(op);
    return full_norm_factorized(fac, weight, tol);
}

ResolventScan scan_resolvent(double s, double m, const std::optional<DampingProfile>& gamma,
                             const Grid& grid, const std::vector<double>& k_grid, SpacePair pair,
                             EnergyWeight weight, int threads) {
    for (size_t i = 1; i < k_grid.size(); ++i)
        if (!(k_grid[i] > k_grid[i - 1]))
            throw invalid_config("scan_resolvent: k_grid must be strictly increasing");

    ResolventScan scan;
    scan.k_grid = k_grid;
    scan.norms.assign(k_grid.size(), 0.0);
    scan.pair = pair;

    const RatePrediction pred = predicted_decay(s);
    scan.bound_exponent = pair == SpacePair::l2_to_l2 ? pred.resolvent_exponent_L2
                                                      : pred.resolvent_exponent_energy;

    std::exception_ptr failure;
    std::mutex failure_mtx;
    auto worker = [&](size_t begin, size_t end) {
        try {
            for (size_t i = begin; i < end; ++i) {
                const HelmholtzOperator op = assemble_helmholtz(s, m, k_grid[i], gamma, grid);
                scan.norms[i] = pair == SpacePair::energy
                                    ? resolvent_norm_power(op, pair, weight)
                                    : resolvent_norm(op, pair, weight);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mtx);
            if (!failure) failure = std::current_exception();
        }
    };

    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(k_grid.size())));
    if (nt == 1) {
        worker(0, k_grid.size());
    } else {
        std::vector<std::thread> pool;
        const size_t chunk = (k_grid.size() + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            const size_t b = t * chunk, e = std::min(k_grid.size(), b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    const size_t tail = static_cast<size_t>(std::ceil(0.5 * k_grid.size()));
    scan.fitted_slope = tail >= 8 ? fit_power_law(scan.k_grid, scan.norms, 0.5).slope
                                  : std::numeric_limits<double>::quiet_NaN();
    return scan;
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi > lo) || per_decade < 1)
        throw invalid_config("geometric_grid: need 0 < lo < hi and per_decade >= 1");
    std::vector<double> g;
    const double step = std::pow(10.0, 1.0 / per_decade);
    for (double k = lo; k <= hi * (1.0 + 1e-12); k *= step) g.push_back(std::min(k, hi));
    if (g.back() < hi * (1.0 - 1e-9)) g.push_back(hi);
    return g;
}

const char* to_string(SpacePair pair) {
    switch (pair) {
        case SpacePair::l2_to_l2: return "L2->L2";
        case SpacePair::l2_to_hs2: return "L2->Hs2";
        case SpacePair::hneg_to_l2: return "Hneg->L2";
        case SpacePair::energy: return "energy";
    }
    return "?";
}

} // namespace fkg
