#include "bresse/stepper.hpp"

#include <cmath>
#include <sstream>

namespace bresse {

namespace {

constexpr std::size_t kFields = 3;   // phi, psi, w interleaved per node
constexpr std::size_t kBand = 5;     // node neighbors: field distance <= 3 + 2

std::size_t unknown(std::size_t node, std::size_t field) { return kFields * node + field; }

void eliminate_unknown(BandMatrix& A, std::size_t r) {
    const std::size_t lo = (r >= kBand) ? r - kBand : 0;
    const std::size_t hi = std::min(A.size() - 1, r + kBand);
    for (std::size_t c = lo; c <= hi; ++c) {
        A.set(r, c, 0.0);
        A.set(c, r, 0.0);
    }
    A.set(r, r, 1.0);
}

double p1_at(const Vec& v, const Mesh& mesh, double x) {
    const double pos = x / mesh.h;
    std::size_t e = static_cast<std::size_t>(pos);
    if (e >= mesh.s) e = mesh.s - 1;
    const double xi = pos - static_cast<double>(e);
    return v[e] * (1.0 - xi) + v[e + 1] * xi;
}

}  // namespace

std::size_t RunConfig::steps() const {
    if (!(dt > 0.0)) throw NonPositiveParameter("dt");
    if (!(T > 0.0)) throw NonPositiveParameter("T");
    return static_cast<std::size_t>(std::llround(T / dt));
}

NumericalAbort::NumericalAbort(std::size_t step, double t, double energy)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "run aborted at step " << step << " (t = " << t
              << "): energy = " << energy << " left the stable regime";
          return msg.str();
      }()),
      step_(step), t_(t), energy_(energy) {}

BandMatrix assemble_step_system(const RunConfig& cfg, const Mesh& mesh,
                                const FemMatrices& fem) {
    const BresseParams& p = cfg.params;
    const double dt = cfg.dt;
    const double g0 = cfg.kernel.eval(0.0);
    const std::size_t nn = mesh.n_nodes();

    BandMatrix A(kFields * nn, kBand, kBand);

    const double c_phi_m = p.rho1 / (dt * dt) + p.l * p.l * p.k3;
    const double c_psi_m = p.rho2 / (dt * dt) + p.k1;
    const double c_w_m = p.rho1 / (dt * dt) + p.l * p.l * p.k1;
    const double c_psi_k = p.k2 - dt * g0;

    for (std::size_t i = 0; i < nn; ++i) {
        const std::size_t j_lo = (i > 0) ? i - 1 : 0;
        const std::size_t j_hi = std::min(nn - 1, i + 1);
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double m = fem.M.get(i, j);
            const double k = fem.K.get(i, j);
            const double d = fem.D.get(i, j);     // tests derivative against hat i
            const double dt_ = fem.D.get(j, i);   // tests value against hat-i derivative

            A.add(unknown(i, 0), unknown(j, 0), c_phi_m * m + p.k1 * k);
            A.add(unknown(i, 0), unknown(j, 1), p.k1 * dt_);
            A.add(unknown(i, 0), unknown(j, 2), p.k1 * p.l * dt_ - p.l * p.k3 * d);

            A.add(unknown(i, 1), unknown(j, 0), p.k1 * d);
            A.add(unknown(i, 1), unknown(j, 1), c_psi_m * m + c_psi_k * k);
            A.add(unknown(i, 1), unknown(j, 2), p.k1 * p.l * m);

            A.add(unknown(i, 2), unknown(j, 0), p.l * p.k1 * d - p.l * p.k3 * dt_);
            A.add(unknown(i, 2), unknown(j, 1), p.l * p.k1 * m);
            A.add(unknown(i, 2), unknown(j, 2), c_w_m * m + p.k3 * k);
        }
    }

    eliminate_unknown(A, unknown(0, 0));
    eliminate_unknown(A, unknown(nn - 1, 0));
    return A;
}

Stepper::Stepper(const RunConfig& cfg)
    : cfg_(cfg),
      mesh_(build_mesh(cfg.s, cfg.params.L)),
      fem_(assemble(mesh_)),
      hist_(cfg.kernel, cfg.dt, cfg.flags.include_m0),
      system_(1, 0, 0) {
    ParamReport validated = validate_params(cfg.params);
    warnings_ = std::move(validated.warnings);
    total_steps_ = cfg.steps();

    modes_ = compute_mode_constants(cfg_.params, cfg_.initial, mesh_);
    const auto means = initial_means(cfg_.initial, mesh_);
    // transform-relevant means: psi0, psi1, w0, w1 (phi is clamped anyway)
    for (std::size_t idx : {2, 3, 4, 5}) {
        if (std::abs(means[idx]) > cfg_.mean_tol) transform_applied_ = true;
    }
    if (transform_applied_) cfg_.initial = shift_initial_data(cfg_.initial, modes_);
    const InitialData& effective = cfg_.initial;

    state_.n = 0;
    state_.t = 0.0;
    state_.phi = project_initial(effective.phi0, mesh_);
    state_.psi = project_initial(effective.psi0, mesh_);
    state_.w = project_initial(effective.w0, mesh_);
    state_.vphi = project_initial(effective.phi1, mesh_);
    state_.vpsi = project_initial(effective.psi1, mesh_);
    state_.vw = project_initial(effective.w1, mesh_);

    double phi_scale = 0.0;
    for (double v : state_.phi) phi_scale = std::max(phi_scale, std::abs(v));
    for (const Vec* v : {&state_.phi, &state_.vphi}) {
        const double end0 = std::abs((*v)[0]);
        const double end1 = std::abs((*v)[mesh_.s]);
        if (std::max(end0, end1) > 1e-10 * (1.0 + phi_scale)) {
            warnings_.push_back(
                "initial transverse displacement/velocity clamped to zero at the ends");
            break;
        }
    }
    const std::vector<std::size_t> ends{0, mesh_.s};
    apply_dirichlet(state_.phi, ends);
    apply_dirichlet(state_.vphi, ends);

    hist_.append(state_.psi);
    system_ = assemble_step_system(cfg_, mesh_, fem_);
    system_.factor();
}

EnergyParts Stepper::energy() const {
    return discrete_energy(cfg_.params, cfg_.kernel, mesh_, fem_, hist_, state_);
}

void Stepper::step() {
    const std::size_t n = state_.n + 1;
    const double dt = cfg_.dt;
    const BresseParams& p = cfg_.params;
    const std::size_t nn = mesh_.n_nodes();

    // inertia part of the right-hand side: (rho / dt^2) M (u^{n-1} + dt v^{n-1})
    Vec pred_phi(nn), pred_psi(nn), pred_w(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        pred_phi[i] = state_.phi[i] + dt * state_.vphi[i];
        pred_psi[i] = state_.psi[i] + dt * state_.vpsi[i];
        pred_w[i] = state_.w[i] + dt * state_.vw[i];
    }
    const Vec m_phi = fem_.M.apply(pred_phi);
    const Vec m_psi = fem_.M.apply(pred_psi);
    const Vec m_w = fem_.M.apply(pred_w);

    // known part of the memory convolution (snapshots up to n - 1)
    Vec conv;
    if (cfg_.flags.exponential_fastpath &&
        cfg_.kernel.family == Kernel::Family::exponential) {
        conv = fem_.K.apply(hist_.weighted_sum_fast(n, n - 1));
    } else {
        conv = convolution_load(hist_, fem_.K, n, n - 1);
    }

    Vec rhs(kFields * nn);
    const double c1 = p.rho1 / (dt * dt);
    const double c2 = p.rho2 / (dt * dt);
    for (std::size_t i = 0; i < nn; ++i) {
        rhs[unknown(i, 0)] = c1 * m_phi[i];
        rhs[unknown(i, 1)] = c2 * m_psi[i] + conv[i];
        rhs[unknown(i, 2)] = c1 * m_w[i];
    }
    rhs[unknown(0, 0)] = 0.0;
    rhs[unknown(nn - 1, 0)] = 0.0;

    const Vec sol = system_.solve(rhs);

    SimState next;
    next.n = n;
    next.t = static_cast<double>(n) * dt;
    next.phi.resize(nn);
    next.psi.resize(nn);
    next.w.resize(nn);
    next.vphi.resize(nn);
    next.vpsi.resize(nn);
    next.vw.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        next.phi[i] = sol[unknown(i, 0)];
        next.psi[i] = sol[unknown(i, 1)];
        next.w[i] = sol[unknown(i, 2)];
        next.vphi[i] = (next.phi[i] - state_.phi[i]) / dt;
        next.vpsi[i] = (next.psi[i] - state_.psi[i]) / dt;
        next.vw[i] = (next.w[i] - state_.w[i]) / dt;
    }
    state_ = std::move(next);
    hist_.append(state_.psi);
}

RunResult run(const RunConfig& cfg) {
    Stepper stepper(cfg);
    const RunConfig& rc = stepper.config();
    const std::size_t N = stepper.total_steps();
    const LyapunovWeights weights =
        rc.lyapunov ? *rc.lyapunov : LyapunovWeights::defaults(rc.params);

    RunResult result;
    result.transform_applied = stepper.transform_applied();
    result.modes = stepper.modes();
    result.warnings = stepper.warnings();
    result.steps = N;
    result.trace.has_diagnostics = rc.flags.diagnostics_every > 0;

    const double x_mid = rc.params.L / 2.0;

    auto log_state = [&](double e0) {
        const SimState& st = stepper.state();
        const EnergyParts parts = stepper.energy();
        const double total = parts.total();

        if (!std::isfinite(total) || total < -1e-12 * e0) {
            throw NumericalAbort(st.n, st.t, total);
        }

        EnergyRow row;
        row.n = st.n;
        row.t = st.t;
        row.E = total;
        row.mem = parts.memory;
        row.Ekin = parts.kinetic;
        row.Epot = parts.potential;
        const std::size_t dk = rc.flags.diagnostics_every;
        if (dk > 0 && st.n % dk == 0) {
            row.diag = lyapunov_diagnostics(rc.params, stepper.mesh(), stepper.fem(),
                                            stepper.history(), st, weights, total);
        }
        result.trace.rows.push_back(row);

        const std::size_t sk = rc.flags.snapshots_every;
        if (sk > 0 && (st.n % sk == 0 || st.n == N)) {
            Snapshot snap;
            snap.t = st.t;
            snap.phi = st.phi;
            snap.psi = st.psi;
            snap.w = st.w;
            if (result.transform_applied) {
                reconstruct_original(snap.psi, snap.w, result.modes, st.t);
            }
            result.snapshots.push_back(std::move(snap));
        }

        Vec psi_view = st.psi;
        Vec w_view = st.w;
        if (result.transform_applied) reconstruct_original(psi_view, w_view, result.modes, st.t);
        result.section.push_back({st.t, p1_at(st.phi, stepper.mesh(), x_mid),
                                  p1_at(psi_view, stepper.mesh(), x_mid),
                                  p1_at(w_view, stepper.mesh(), x_mid)});
        return total;
    };

    const double e0 = log_state(0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        stepper.step();
        log_state(e0);
    }

    result.final_state = stepper.state();
    return result;
}

}  // namespace bresse
