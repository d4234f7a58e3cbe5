#include "bgk/uncollided.hpp"

#include "bgk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace bgk {

BoundarySpec BoundarySpec::periodic() { return {}; }

BoundarySpec BoundarySpec::dirichlet(InflowFunction left, InflowFunction right) {
    BoundarySpec bc;
    bc.kind = BoundaryKind::dirichlet;
    bc.left = std::move(left);
    bc.right = std::move(right);
    return bc;
}

BoundarySpec BoundarySpec::dirichlet_maxwellian(const Moments& left, const Moments& right) {
    const Primitives pl = moments_to_primitives(left);
    const Primitives pr = moments_to_primitives(right);
    return dirichlet([pl](double v, double) { return maxwellian_at(pl, v); },
                     [pr](double v, double) { return maxwellian_at(pr, v); });
}

BoundarySpec BoundarySpec::zero_inflow() {
    return dirichlet([](double, double) { return 0.0; }, [](double, double) { return 0.0; });
}

std::vector<double> apply_boundary(const BoundarySpec& bc, Side side, std::size_t k, double t,
                                   const KineticField& f, const VelocityGrid& grid) {
    std::vector<double> ghost(f.n_nodes);
    if (bc.kind == BoundaryKind::periodic) {
        const std::size_t src = side == Side::left ? f.n_x - 1 : 0;
        for (std::size_t l = 0; l < f.n_nodes; ++l) ghost[l] = f(k, src, l);
    } else {
        const auto& g = side == Side::left ? bc.left : bc.right;
        std::fill(ghost.begin(), ghost.end(), g ? g(grid.point(k), t) : 0.0);
    }
    return ghost;
}

namespace {

// Runs body(k) over all velocities, optionally with OpenMP, and rethrows the
// first exception raised inside the parallel region.
template <class Body>
void for_each_velocity(std::size_t n_v, Execution exec, Body&& body) {
    std::exception_ptr error;
    const long n = static_cast<long>(n_v);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (long k = 0; k < n; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical(bgk_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

// `scale` is the largest magnitude on the swept line, so the test stays
// relative when the whole line is small (stiff relaxation).
bool ghost_converged(double before, double after, double scale) {
    return std::abs(after - before) <= kPeriodicSweepTol * scale;
}

double line_scale(const double* f, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(f[j]));
    return m;
}

[[noreturn]] void throw_iteration_limit(std::size_t k, double v) {
    throw IterationLimit("periodic sweep for velocity index " + std::to_string(k) + " (v=" +
                         std::to_string(v) + ") did not converge in " +
                         std::to_string(kPeriodicSweepCap) + " iterations");
}

} // namespace

TransportSweeper::TransportSweeper(const SpatialMesh& mesh, const DGBasis& basis,
                                   const VelocityGrid& grid)
    : n_x_(mesh.n_cells),
      n_nodes_(basis.size()),
      h_(mesh.widths.front()),
      points_(grid.points()),
      grid_(grid),
      mats_(element_matrices(basis)) {}

SweepResult TransportSweeper::solve(double sigma, const KineticField& rhs, const BoundarySpec& bc,
                                    double t_bc, const KineticField* guess,
                                    Execution exec) const {
    SweepResult result{KineticField(n_v(), n_x_, n_nodes_), 1};
    const auto n = static_cast<Eigen::Index>(n_nodes_);
    const std::size_t first = 0;
    const std::size_t last = n_nodes_ - 1;
    const Eigen::MatrixXd half_J = 0.5 * h_ * mats_.J;
    std::vector<int> iterations(n_v(), 1);

    for_each_velocity(n_v(), exec, [&](std::size_t k) {
        const double v = points_[k];
        Eigen::MatrixXd A = sigma * half_J - v * mats_.K;
        if (v > 0.0) A += v * mats_.L1;
        if (v < 0.0) A -= v * mats_.L4;
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        if (!(std::abs(lu.determinant()) > 0.0))
            throw StepFailure("singular cell system at velocity index " + std::to_string(k));
        const Eigen::MatrixXd T = lu.solve(half_J);
        Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
        if (v > 0.0) a = v * lu.solve(Eigen::VectorXd::Unit(n, first));
        if (v < 0.0) a = -v * lu.solve(Eigen::VectorXd::Unit(n, last));

        const double* r = rhs.values.data() + k * rhs.velocity_stride();
        double* f = result.f.values.data() + k * result.f.velocity_stride();
        auto cell = [&](std::size_t i, double trace) {
            Eigen::Map<const Eigen::VectorXd> ri(r + i * n_nodes_, n);
            Eigen::Map<Eigen::VectorXd> fi(f + i * n_nodes_, n);
            fi.noalias() = T * ri;
            fi += trace * a;
        };
        // Returns the outflow trace leaving the far end of the line.
        auto sweep_line = [&](double ghost) {
            if (v >= 0.0) {
                double trace = ghost;
                for (std::size_t i = 0; i < n_x_; ++i) {
                    cell(i, trace);
                    trace = f[i * n_nodes_ + last];
                }
                return trace;
            }
            double trace = ghost;
            for (std::size_t i = n_x_; i-- > 0;) {
                cell(i, trace);
                trace = f[i * n_nodes_ + first];
            }
            return trace;
        };

        if (bc.kind == BoundaryKind::dirichlet) {
            double ghost = 0.0;
            if (v > 0.0 && bc.left) ghost = bc.left(v, t_bc);
            if (v < 0.0 && bc.right) ghost = bc.right(v, t_bc);
            sweep_line(ghost);
            return;
        }
        if (v == 0.0) {
            sweep_line(0.0);
            return;
        }
        double ghost = 0.0;
        if (guess) ghost = v > 0.0 ? (*guess)(k, n_x_ - 1, last) : (*guess)(k, 0, first);
        for (int it = 1; it <= kPeriodicSweepCap; ++it) {
            const double out = sweep_line(ghost);
            if (ghost_converged(ghost, out, line_scale(f, n_x_ * n_nodes_))) {
                iterations[k] = it;
                return;
            }
            ghost = out;
        }
        throw_iteration_limit(k, v);
    });
    result.iterations = *std::max_element(iterations.begin(), iterations.end());
    return result;
}

SweepResult TransportSweeper::solve_reference(double sigma, const KineticField& rhs,
                                              const BoundarySpec& bc, double t_bc,
                                              const KineticField* guess) const {
    SweepResult result{KineticField(n_v(), n_x_, n_nodes_), 1};
    const auto n = static_cast<Eigen::Index>(n_nodes_);
    const Eigen::MatrixXd half_J = 0.5 * h_ * mats_.J;

    for (std::size_t k = 0; k < n_v(); ++k) {
        const double v = points_[k];
        auto sweep_line = [&](Eigen::VectorXd ghost) {
            Eigen::VectorXd upstream = ghost;
            for (std::size_t step = 0; step < n_x_; ++step) {
                const std::size_t i = v >= 0.0 ? step : n_x_ - 1 - step;
                Eigen::MatrixXd A = sigma * half_J - v * mats_.K;
                Eigen::VectorXd b(n);
                for (Eigen::Index l = 0; l < n; ++l) b(l) = rhs(k, i, static_cast<std::size_t>(l));
                b = (half_J * b).eval();
                if (v > 0.0) {
                    A += v * mats_.L1;
                    b += v * mats_.L2 * upstream;
                } else if (v < 0.0) {
                    A -= v * mats_.L4;
                    b -= v * mats_.L3 * upstream;
                }
                const Eigen::VectorXd fi = A.partialPivLu().solve(b);
                for (Eigen::Index l = 0; l < n; ++l) result.f(k, i, static_cast<std::size_t>(l)) = fi(l);
                upstream = fi;
            }
            return upstream;
        };
        auto as_vector = [&](const std::vector<double>& g) {
            return Eigen::Map<const Eigen::VectorXd>(g.data(), n).eval();
        };

        if (bc.kind == BoundaryKind::dirichlet || v == 0.0) {
            const Side side = v >= 0.0 ? Side::left : Side::right;
            sweep_line(as_vector(apply_boundary(bc, side, k, t_bc, result.f, grid_)));
            continue;
        }
        Eigen::VectorXd ghost = Eigen::VectorXd::Zero(n);
        if (guess) {
            const std::size_t src = v > 0.0 ? n_x_ - 1 : 0;
            for (Eigen::Index l = 0; l < n; ++l) ghost(l) = (*guess)(k, src, static_cast<std::size_t>(l));
        }
        bool done = false;
        for (int it = 1; it <= kPeriodicSweepCap && !done; ++it) {
            const Eigen::VectorXd out = sweep_line(ghost);
            const Eigen::Index idx = v > 0.0 ? n - 1 : 0;
            double scale = 0.0;
            for (std::size_t i = 0; i < n_x_; ++i)
                for (std::size_t l = 0; l < n_nodes_; ++l) scale = std::max(scale, std::abs(result.f(k, i, l)));
            done = ghost_converged(ghost(idx), out(idx), scale);
            if (done) result.iterations = std::max(result.iterations, it);
            ghost = out;
        }
        if (!done) throw_iteration_limit(k, v);
    }
    return result;
}

KineticField TransportSweeper::advection(const KineticField& f, const BoundarySpec& bc, double t,
                                         Execution exec) const {
    KineticField out(n_v(), n_x_, n_nodes_);
    const auto n = static_cast<Eigen::Index>(n_nodes_);
    const std::size_t first = 0;
    const std::size_t last = n_nodes_ - 1;

    for_each_velocity(n_v(), exec, [&](std::size_t k) {
        const double v = points_[k];
        if (v == 0.0) return;
        const double scale = -2.0 * v / h_;
        const double* fk = f.values.data() + k * f.velocity_stride();
        double* dk = out.values.data() + k * out.velocity_stride();
        double inflow = 0.0;
        if (bc.kind == BoundaryKind::dirichlet) {
            if (v > 0.0 && bc.left) inflow = bc.left(v, t);
            if (v < 0.0 && bc.right) inflow = bc.right(v, t);
        }
        for (std::size_t i = 0; i < n_x_; ++i) {
            Eigen::Map<const Eigen::VectorXd> fi(fk + i * n_nodes_, n);
            Eigen::Map<Eigen::VectorXd> di(dk + i * n_nodes_, n);
            di.noalias() = -(mats_.J_inv_K * fi);
            if (v > 0.0) {
                double up = inflow;
                if (i > 0) up = fk[(i - 1) * n_nodes_ + last];
                else if (bc.kind == BoundaryKind::periodic) up = fk[(n_x_ - 1) * n_nodes_ + last];
                di += fi(static_cast<Eigen::Index>(last)) * mats_.lift_last - up * mats_.lift_first;
            } else {
                double down = inflow;
                if (i + 1 < n_x_) down = fk[(i + 1) * n_nodes_ + first];
                else if (bc.kind == BoundaryKind::periodic) down = fk[first];
                di += down * mats_.lift_last - fi(static_cast<Eigen::Index>(first)) * mats_.lift_first;
            }
            di *= scale;
        }
    });
    return out;
}

KineticField TransportSweeper::advection_reference(const KineticField& f, const BoundarySpec& bc,
                                                   double t) const {
    KineticField out(n_v(), n_x_, n_nodes_);
    const auto n = static_cast<Eigen::Index>(n_nodes_);
    for (std::size_t k = 0; k < n_v(); ++k) {
        const double v = points_[k];
        auto cell_vector = [&](std::size_t i) {
            Eigen::VectorXd c(n);
            for (Eigen::Index l = 0; l < n; ++l) c(l) = f(k, i, static_cast<std::size_t>(l));
            return c;
        };
        auto ghost_vector = [&](Side side) {
            const auto g = apply_boundary(bc, side, k, t, f, grid_);
            return Eigen::Map<const Eigen::VectorXd>(g.data(), n).eval();
        };
        for (std::size_t i = 0; i < n_x_; ++i) {
            const Eigen::VectorXd fi = cell_vector(i);
            Eigen::VectorXd residual = -v * mats_.K * fi;
            if (v > 0.0) {
                const Eigen::VectorXd up = i > 0 ? cell_vector(i - 1) : ghost_vector(Side::left);
                residual += v * (mats_.L1 * fi - mats_.L2 * up);
            } else if (v < 0.0) {
                const Eigen::VectorXd down = i + 1 < n_x_ ? cell_vector(i + 1) : ghost_vector(Side::right);
                residual += v * (mats_.L3 * down - mats_.L4 * fi);
            }
            const Eigen::VectorXd d = (0.5 * h_ * mats_.J).partialPivLu().solve(-residual);
            for (Eigen::Index l = 0; l < n; ++l) out(k, i, static_cast<std::size_t>(l)) = d(l);
        }
    }
    return out;
}

SweepResult sweep_backward_euler(const TransportSweeper& sweeper, const KineticField& f_in,
                                 double tau, double epsilon, const KineticField* source,
                                 const BoundarySpec& bc, double t_bc, Execution exec) {
    if (!(tau > 0.0) || !(epsilon > 0.0))
        throw ConfigError("sweep_backward_euler: tau and epsilon must be positive");
    KineticField rhs = f_in;
    for (double& x : rhs.values) x /= tau;
    if (source) axpy(rhs, 1.0, *source);
    return sweeper.solve(1.0 / tau + 1.0 / epsilon, rhs, bc, t_bc, &f_in, exec);
}

SweepResult sweep_bdf2_with_source(const TransportSweeper& sweeper, const KineticField& g_half,
                                   const KineticField& g_n, double dt, double epsilon,
                                   const KineticField& M_source, const KineticField* source,
                                   const BoundarySpec& bc, double t_bc, Execution exec) {
    if (!(dt > 0.0) || !(epsilon > 0.0))
        throw ConfigError("sweep_bdf2_with_source: dt and epsilon must be positive");
    if (!g_half.same_shape(g_n) || !g_half.same_shape(M_source))
        throw ConfigError("sweep_bdf2_with_source: field shapes differ");
    KineticField rhs(g_n.n_v, g_n.n_x, g_n.n_nodes);
    const double a = 4.0 / dt;
    const double b = 1.0 / dt;
    const double c = 1.0 / epsilon;
    for (std::size_t j = 0; j < rhs.values.size(); ++j)
        rhs.values[j] = a * g_half.values[j] - b * g_n.values[j] + c * M_source.values[j];
    if (source) axpy(rhs, 1.0, *source);
    return sweeper.solve(3.0 / dt + 1.0 / epsilon, rhs, bc, t_bc, &g_half, exec);
}

} // namespace bgk
