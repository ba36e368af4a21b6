#include "tele/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace tele {

namespace {

constexpr double kTraceDriftLimit = 1e-9;

void apply_block(const CMatrix& l, const std::vector<cplx>& y, std::vector<cplx>& out,
                 std::size_t columns) {
    const std::size_t n = l.dim();
    for (std::size_t col = 0; col < columns; ++col) {
        const cplx* src = y.data() + col * n;
        cplx* dst = out.data() + col * n;
        for (std::size_t r = 0; r < n; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += l(r, c) * src[c];
            dst[r] = acc;
        }
    }
}

struct Rk4Workspace {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    explicit Rk4Workspace(std::size_t size) : k1(size), k2(size), k3(size), k4(size), tmp(size) {}
};

void rk4_step(const CMatrix& l, const std::vector<cplx>& y, std::vector<cplx>& out,
              std::size_t columns, double h, Rk4Workspace& w) {
    const std::size_t size = y.size();
    apply_block(l, y, w.k1, columns);
    for (std::size_t i = 0; i < size; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k1[i];
    apply_block(l, w.tmp, w.k2, columns);
    for (std::size_t i = 0; i < size; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k2[i];
    apply_block(l, w.tmp, w.k3, columns);
    for (std::size_t i = 0; i < size; ++i) w.tmp[i] = y[i] + h * w.k3[i];
    apply_block(l, w.tmp, w.k4, columns);
    for (std::size_t i = 0; i < size; ++i)
        out[i] = y[i] + (h / 6.0) * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

double one_norm(const CMatrix& a) {
    double best = 0.0;
    for (std::size_t c = 0; c < a.dim(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.dim(); ++r) s += std::abs(a(r, c));
        best = std::max(best, s);
    }
    return best;
}

DensityMatrix finish_state(const CMatrix& raw, const std::vector<std::size_t>& dims, double t) {
    const double drift = std::abs(raw.trace() - 1.0);
    if (drift > kTraceDriftLimit)
        throw EvolutionError("trace drift " + std::to_string(drift) + " exceeds limit", t, 0.0, drift);
    CMatrix herm = raw + raw.adjoint();
    herm *= 0.5;
    return DensityMatrix(std::move(herm), dims);
}

}  // namespace

CMatrix unvec_block(std::span<const cplx> y, std::size_t rows) {
    if (y.size() != rows * rows) throw InvalidInput("unvec_block: block is not square");
    CMatrix p(rows);
    for (std::size_t c = 0; c < rows; ++c)
        for (std::size_t r = 0; r < rows; ++r) p(r, c) = y[c * rows + r];
    return p;
}

void LindbladModel::validate() const {
    const std::size_t d = hamiltonian.dim();
    if (d == 0) throw InvalidInput("Lindblad model has empty Hamiltonian");
    if (hermiticity_error(hamiltonian) > kTolerances.hermiticity)
        throw InvalidInput("Hamiltonian is not Hermitian");
    for (const auto& term : terms) {
        if (term.jump.dim() != d) throw InvalidInput("jump operator dimension does not match Hamiltonian");
        if (!(term.rate >= 0.0)) throw InvalidInput("Lindblad rate must be nonnegative");
    }
}

CMatrix build_liouvillian(const LindbladModel& model) {
    model.validate();
    const std::size_t d = model.dim();
    const CMatrix id = CMatrix::identity(d);
    const cplx minus_i(0.0, -1.0);
    // vec(A X B) = (B^T ⊗ A) vec(X)
    CMatrix l = minus_i * (kron(id, model.hamiltonian) - kron(model.hamiltonian.transpose(), id));
    for (const auto& term : model.terms) {
        if (term.rate == 0.0) continue;
        const CMatrix ldl = term.jump.adjoint() * term.jump;
        CMatrix d_term = 2.0 * kron(term.jump.conj(), term.jump);
        d_term -= kron(id, ldl);
        d_term -= kron(ldl.transpose(), id);
        l += (0.5 * term.rate) * d_term;
    }
    return l;
}

void integrate(const CMatrix& liouvillian, std::vector<cplx>& y, std::size_t columns, double t_from,
               double t_to, const IntegratorOptions& opts, IntegrationStats* stats) {
    if (y.size() != columns * liouvillian.dim()) throw InvalidInput("integrate: state size mismatch");
    if (t_to < t_from) throw InvalidInput("integrate: backwards integration");
    if (!(opts.tol > 0.0)) throw InvalidInput("integrate: tolerance must be positive");
    if (t_to == t_from) return;

    Rk4Workspace w(y.size());
    std::vector<cplx> full(y.size()), half(y.size()), twice(y.size());
    double t = t_from;
    double h = std::min(opts.max_step, t_to - t_from);
    while (t < t_to) {
        const bool last = t + h >= t_to;
        const double step = last ? t_to - t : h;
        rk4_step(liouvillian, y, full, columns, step, w);
        rk4_step(liouvillian, y, half, columns, 0.5 * step, w);
        rk4_step(liouvillian, half, twice, columns, 0.5 * step, w);

        double err = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            err = std::max(err, std::abs(twice[i] - full[i]));
            scale = std::max(scale, std::abs(twice[i]));
        }
        err /= 15.0 * scale;

        if (err <= opts.tol) {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = twice[i] + (twice[i] - full[i]) / 15.0;
            t = last ? t_to : t + step;
            if (stats) ++stats->accepted;
        } else if (stats) {
            ++stats->rejected;
        }
        const double factor = err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(opts.tol / err, 0.2), 0.1, 4.0);
        h = std::min(opts.max_step, step * factor);
        if (t < t_to && h < opts.min_step)
            throw EvolutionError("step size underflow (stiff system?) at t = " + std::to_string(t), t, h, err);
    }
}

DensityMatrix evolve(const DensityMatrix& rho0, const LindbladModel& model, double t,
                     const IntegratorOptions& opts) {
    if (!(t >= 0.0)) throw InvalidInput("evolve: time must be nonnegative");
    if (model.dim() != rho0.dim()) throw InvalidInput("evolve: model and state dimensions differ");
    if (t == 0.0) return rho0;
    const CMatrix l = build_liouvillian(model);
    auto y = vec(rho0.matrix());
    integrate(l, y, 1, 0.0, t, opts);
    return finish_state(unvec(y), rho0.dims(), t);
}

CMatrix expm(const CMatrix& a) {
    const std::size_t n = a.dim();
    const double norm = one_norm(a);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    CMatrix scaled = a * cplx(std::ldexp(1.0, -squarings));

    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k < 40; ++k) {
        term = term * scaled;
        term *= cplx(1.0 / k);
        result += term;
        double mag = 0.0;
        for (auto x : term.data()) mag = std::max(mag, std::abs(x));
        if (mag < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

DensityMatrix evolve_exponential(const DensityMatrix& rho0, const LindbladModel& model, double t) {
    if (!(t >= 0.0)) throw InvalidInput("evolve_exponential: time must be nonnegative");
    if (model.dim() != rho0.dim()) throw InvalidInput("evolve_exponential: dimension mismatch");
    const CMatrix prop = expm(build_liouvillian(model) * cplx(t));
    return finish_state(unvec(prop.apply(vec(rho0.matrix()))), rho0.dims(), t);
}

CMatrix propagator(const LindbladModel& model, double t, const IntegratorOptions& opts) {
    if (!(t >= 0.0)) throw InvalidInput("propagator: time must be nonnegative");
    auto traj = propagator_trajectory(model, opts);
    return unvec_block(traj.at(t), traj.rows());
}

EvolutionResult evolve_grid(const DensityMatrix& rho0, const LindbladModel& model, double t_max,
                            double dt, const IntegratorOptions& opts) {
    if (!(dt > 0.0)) throw InvalidInput("evolve_grid: dt must be positive");
    if (!(t_max >= 0.0)) throw InvalidInput("evolve_grid: t_max must be nonnegative");
    if (model.dim() != rho0.dim()) throw InvalidInput("evolve_grid: dimension mismatch");
    const CMatrix l = build_liouvillian(model);
    const auto samples = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;

    EvolutionResult out;
    out.times.reserve(samples);
    out.states.reserve(samples);
    out.times.push_back(0.0);
    out.states.push_back(rho0);
    auto y = vec(rho0.matrix());
    for (std::size_t i = 1; i < samples; ++i) {
        const double t_prev = static_cast<double>(i - 1) * dt;
        const double t_next = static_cast<double>(i) * dt;
        integrate(l, y, 1, t_prev, t_next, opts);
        out.times.push_back(t_next);
        out.states.push_back(finish_state(unvec(y), rho0.dims(), t_next));
    }
    return out;
}

Trajectory::Trajectory(CMatrix liouvillian, std::vector<cplx> y0, std::size_t columns,
                       IntegratorOptions opts, double stride)
    : liouvillian_(std::move(liouvillian)), columns_(columns), opts_(opts), stride_(stride) {
    if (y0.size() != columns * liouvillian_.dim()) throw InvalidInput("Trajectory: state size mismatch");
    if (!(stride > 0.0)) throw InvalidInput("Trajectory: stride must be positive");
    checkpoints_.push_back(std::move(y0));
}

std::vector<cplx> Trajectory::at(double t) {
    if (!(t >= 0.0)) throw InvalidInput("Trajectory: time must be nonnegative");
    const auto k = static_cast<std::size_t>(std::floor(t / stride_));
    while (checkpoints_.size() <= k) {
        const std::size_t i = checkpoints_.size();
        auto next = checkpoints_.back();
        integrate(liouvillian_, next, columns_, static_cast<double>(i - 1) * stride_,
                  static_cast<double>(i) * stride_, opts_);
        checkpoints_.push_back(std::move(next));
    }
    auto y = checkpoints_[k];
    integrate(liouvillian_, y, columns_, static_cast<double>(k) * stride_, t, opts_);
    return y;
}

Trajectory propagator_trajectory(const LindbladModel& model, const IntegratorOptions& opts) {
    CMatrix l = build_liouvillian(model);
    const std::size_t n = l.dim();
    std::vector<cplx> id(n * n);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
    return Trajectory(std::move(l), std::move(id), n, opts);
}

Trajectory state_trajectory(const DensityMatrix& rho0, const LindbladModel& model,
                            const IntegratorOptions& opts) {
    if (model.dim() != rho0.dim()) throw InvalidInput("state_trajectory: dimension mismatch");
    return Trajectory(build_liouvillian(model), vec(rho0.matrix()), 1, opts);
}

}  // namespace tele
