#include "fkg/semigroup.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fkg/errors.hpp"

namespace fkg {

namespace {

// Precomputed sub-flow tables for one step size.
struct Stepper {
    const Grid& grid;
    std::vector<double> cos_half;  // cos(omega dt/2)
    std::vector<double> sinc_half; // sin(omega dt/2)/omega
    std::vector<double> wsin_half; // omega sin(omega dt/2)
    std::vector<double> damp;      // e^{-gamma dt}; empty when undamped

    Stepper(const SimConfig& cfg, double dt) : grid(cfg.grid) {
        const int n = grid.n;
        cos_half.resize(n);
        sinc_half.resize(n);
        wsin_half.resize(n);
        for (int j = 0; j < n; ++j) {
            const double omega = std::sqrt(std::pow(std::abs(grid.freqs[j]), cfg.s) + cfg.m);
            const double th = omega * dt / 2.0;
            cos_half[j] = std::cos(th);
            sinc_half[j] = std::sin(th) / omega;
            wsin_half[j] = omega * std::sin(th);
        }
        if (cfg.gamma) {
            const std::vector<double> gv = cfg.gamma->sample(grid);
            damp.resize(n);
            for (int i = 0; i < n; ++i) damp[i] = std::exp(-gv[i] * dt);
        }
    }

    void rotate_half(std::vector<cplx>& u, std::vector<cplx>& v) const {
        for (int j = 0; j < grid.n; ++j) {
            const cplx uj = u[j], vj = v[j];
            u[j] = cos_half[j] * uj + sinc_half[j] * vj;
            v[j] = -wsin_half[j] * uj + cos_half[j] * vj;
        }
    }

    void damp_full(std::vector<cplx>& v, std::vector<cplx>& scratch) const {
        if (damp.empty()) return;
        grid_backward(grid, v, scratch);
        for (int i = 0; i < grid.n; ++i) scratch[i] *= damp[i];
        grid_forward(grid, scratch, v);
    }

    void step(std::vector<cplx>& u, std::vector<cplx>& v, std::vector<cplx>& scratch) const {
        rotate_half(u, v);
        damp_full(v, scratch);
        rotate_half(u, v);
    }
};

double modal_energy_norm(const Grid& g, double s, double m, const std::vector<cplx>& u,
                         const std::vector<cplx>& v) {
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double w2 = m + std::pow(std::abs(g.freqs[j]), s);
        acc += w2 * std::norm(u[j]) + std::norm(v[j]);
    }
    return std::sqrt(g.period() * acc);
}

double weighted_norm(const Grid& g, const std::vector<double>& w1, const std::vector<cplx>& u,
                     const std::vector<cplx>& v) {
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) acc += w1[j] * w1[j] * std::norm(u[j]) + std::norm(v[j]);
    return std::sqrt(g.period() * acc);
}

void validate(const SimConfig& cfg) {
    if (!(cfg.s > 0.0) || !(cfg.m > 0.0)) throw invalid_config("SimConfig: requires s, m > 0");
    if (!(cfg.dt > 0.0) || !(cfg.t_final > 0.0))
        throw invalid_config("SimConfig: requires dt > 0 and t_final > 0");
    if (cfg.record_stride < 1) throw invalid_config("SimConfig: record_stride must be >= 1");
    if (cfg.gamma && cfg.gamma->period != cfg.grid.period())
        throw invalid_config("SimConfig: damping period does not match the grid");
    const double guard = cfg.dt * cfg.omega_max();
    if (guard > cfg.stability_guard)
        throw invalid_config("SimConfig: dt*omega_max = " + std::to_string(guard) +
                             " exceeds the accuracy guard " + std::to_string(cfg.stability_guard));
}

} // namespace

double SimConfig::omega_max() const {
    return std::sqrt(std::pow(grid.freq_max(), s) + m);
}

std::pair<SpectralField, SpectralField> generate_initial_data(const InitialData& data,
                                                              const Grid& grid) {
    switch (data.kind) {
        case InitialData::Kind::modal: {
            if (std::abs(data.mode) >= grid.n / 2)
                throw invalid_config("initial data: mode off the frequency ladder");
            std::vector<cplx> c(grid.n, cplx(0.0));
            c[grid.slot_of_mode(data.mode)] += data.amplitude / 2.0;
            c[grid.slot_of_mode(-data.mode)] += data.amplitude / 2.0;
            return {SpectralField::from_coeffs(grid, std::move(c)), SpectralField::zero(grid)};
        }
        case InitialData::Kind::gaussian_bump: {
            const double w = data.width, c0 = data.center, a = data.amplitude;
            auto f = [w, c0, a](double x) { return cplx(a * std::exp(-(x - c0) * (x - c0) / (2 * w * w))); };
            return {SpectralField::from_function(grid, f), SpectralField::zero(grid)};
        }
        case InitialData::Kind::random_band: {
            if (data.band < 1 || data.band >= grid.n / 2)
                throw invalid_config("initial data: band must fit the frequency ladder");
            std::mt19937_64 rng(data.seed);
            std::normal_distribution<double> nd;
            std::vector<cplx> cu(grid.n, cplx(0.0)), cv(grid.n, cplx(0.0));
            for (int j = -data.band; j <= data.band; ++j) {
                cu[grid.slot_of_mode(j)] = cplx(nd(rng), nd(rng));
                cv[grid.slot_of_mode(j)] = cplx(nd(rng), nd(rng));
            }
            return {SpectralField::from_coeffs(grid, std::move(cu)),
                    SpectralField::from_coeffs(grid, std::move(cv))};
        }
    }
    throw invalid_config("initial data: unknown kind");
}

State step_strang(const State& state, const SimConfig& cfg) {
    validate(cfg);
    if (!state.u.grid().same_as(cfg.grid) || !state.v.grid().same_as(cfg.grid))
        throw invalid_config("step_strang: state grid does not match config");
    Stepper st(cfg, cfg.dt);
    std::vector<cplx> u = state.u.coeffs(), v = state.v.coeffs(), scratch(cfg.grid.n);
    st.step(u, v, scratch);
    return {SpectralField::from_coeffs(cfg.grid, std::move(u)),
            SpectralField::from_coeffs(cfg.grid, std::move(v)), state.t + cfg.dt};
}

EnergyTrace simulate(const SimConfig& cfg, std::vector<State>* states) {
    validate(cfg);
    auto [u0, v0] = generate_initial_data(cfg.initial_data, cfg.grid);

    const Grid& g = cfg.grid;
    const std::vector<double> w1 = energy_weights(g, cfg.s, cfg.m, EnergyWeight::bracket);

    EnergyTrace trace;
    trace.data_norm = std::sqrt(std::pow(sobolev_norm(u0, {cfg.s}), 2) +
                                std::pow(sobolev_norm(v0, {cfg.s / 2.0}), 2));

    std::vector<cplx> u = u0.coeffs(), v = v0.coeffs(), scratch(g.n);
    Stepper st(cfg, cfg.dt);

    auto record = [&](long step) {
        const double t = step * cfg.dt;
        trace.times.push_back(t);
        trace.energy_norm.push_back(weighted_norm(g, w1, u, v));
        trace.modal_energy.push_back(modal_energy_norm(g, cfg.s, cfg.m, u, v));
        double su = 0.0, sv = 0.0;
        for (int j = 0; j < g.n; ++j) {
            su += std::norm(u[j]);
            sv += std::norm(v[j]);
        }
        trace.l2_norm_u.push_back(std::sqrt(g.period() * su));
        trace.l2_norm_v.push_back(std::sqrt(g.period() * sv));
        if (states)
            states->push_back({SpectralField::from_coeffs(g, u), SpectralField::from_coeffs(g, v), t});
    };

    const long n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
    record(0);
    double prev_modal = trace.modal_energy.back();
    for (long step = 1; step <= n_steps; ++step) {
        st.step(u, v, scratch);
        const double modal = modal_energy_norm(g, cfg.s, cfg.m, u, v);
        if (!std::isfinite(modal))
            throw numerical_guard("simulate: non-finite energy at step " + std::to_string(step),
                                  static_cast<double>(step));
        if (prev_modal > 0.0)
            trace.max_step_growth = std::max(trace.max_step_growth, modal / prev_modal);
        prev_modal = modal;
        if (step % cfg.record_stride == 0 || step == n_steps) record(step);
    }
    return trace;
}

double energy(const State& state, double s, double m, EnergyWeight weight) {
    const Grid& g = state.u.grid();
    if (!g.same_as(state.v.grid())) throw invalid_config("energy: mismatched grids in state");
    if (weight == EnergyWeight::modal)
        return modal_energy_norm(g, s, m, state.u.coeffs(), state.v.coeffs());
    const std::vector<double> w1 = energy_weights(g, s, m, weight);
    return weighted_norm(g, w1, state.u.coeffs(), state.v.coeffs());
}

double dissipation_residual(const std::vector<State>& states, double s, double m,
                            const std::optional<DampingProfile>& gamma) {
    if (states.size() < 2) throw invalid_config("dissipation_residual: need >= 2 states");
    const Grid& g = states.front().u.grid();
    std::vector<double> gv;
    if (gamma) {
        if (gamma->period != g.period())
            throw invalid_config("dissipation_residual: damping period mismatch");
        gv = gamma->sample(g);
        const double dt = states[1].t - states[0].t;
        if (dt * gamma->amplitude > 1.0)
            throw numerical_guard("dissipation_residual: recording stride too coarse", dt);
    }

    auto quad_energy = [&](const State& st) {
        const double nrm = modal_energy_norm(g, s, m, st.u.coeffs(), st.v.coeffs());
        return 0.5 * nrm * nrm;
    };
    auto drain = [&](const State& st) {
        if (gv.empty()) return 0.0;
        double acc = 0.0;
        for (int i = 0; i < g.n; ++i) acc += gv[i] * std::norm(st.v.values()[i]);
        return acc * g.spacing();
    };

    double worst = 0.0;
    for (size_t i = 0; i + 1 < states.size(); ++i) {
        const double dt = states[i + 1].t - states[i].t;
        if (!(dt > 0.0)) throw invalid_config("dissipation_residual: times must increase");
        const double e0 = quad_energy(states[i]), e1 = quad_energy(states[i + 1]);
        const double flux = 0.5 * (drain(states[i]) + drain(states[i + 1]));
        if (e0 <= 0.0) continue;
        worst = std::max(worst, std::abs((e1 - e0) / dt + flux) / e0);
    }
    return worst;
}

} // namespace fkg
