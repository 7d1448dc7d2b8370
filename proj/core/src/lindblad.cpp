#include "cqed/lindblad.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cqed/errors.hpp"

namespace cqed::lindblad {

namespace {

using Eigen::Index;
using Vector = Eigen::VectorXcd;

SparseMatrix sparse_identity(Index n) {
    SparseMatrix m(n, n);
    m.setIdentity();
    return m;
}

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

DenseMatrix random_hermitian(Index n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) a(i, j) = Complex(dist(rng), dist(rng));
    DenseMatrix h = 0.5 * (a + a.adjoint().eval());
    return h;
}

// Direct commutator/dissipator formula, used to cross-check the assembled
// superoperator at construction time.
DenseMatrix apply_direct_formula(const Operator& H, const std::vector<CollapseChannel>& channels,
                                 const DenseMatrix& rho) {
    const Complex i_unit(0.0, 1.0);
    DenseMatrix out = -i_unit * (H.matrix() * rho - rho * H.matrix());
    for (const auto& ch : channels) out += ch.rate * dissipator(ch.op.matrix(), rho);
    return out;
}

}  // namespace

DenseMatrix dissipator(const SparseMatrix& op, const DenseMatrix& rho) {
    const SparseMatrix op_dag = op.adjoint();
    const SparseMatrix op_dag_op = op_dag * op;
    DenseMatrix out = op * rho * op_dag;
    out.noalias() -= 0.5 * (op_dag_op * rho);
    out.noalias() -= 0.5 * (rho * op_dag_op);
    return out;
}

DenseMatrix dissipator(const Operator& op, const DensityOperator& rho) {
    if (op.layout() != rho.layout()) throw std::invalid_argument("dissipator: layout mismatch");
    return dissipator(op.matrix(), rho.matrix());
}

Liouvillian::Liouvillian(Operator hamiltonian, std::vector<CollapseChannel> channels)
    : layout_(hamiltonian.layout()), ham_(std::move(hamiltonian)), channels_(std::move(channels)) {
    if (!ham_.is_hermitian(1e-10))
        throw std::invalid_argument("Liouvillian: Hamiltonian is not Hermitian");
    for (const auto& ch : channels_) {
        if (ch.op.layout() != layout_)
            throw std::invalid_argument("Liouvillian: collapse operator layout mismatch");
        if (ch.rate < 0.0)
            throw std::invalid_argument("Liouvillian: negative collapse rate");
    }

    const auto n = static_cast<Index>(layout_.total_dim());
    const SparseMatrix id = sparse_identity(n);
    const SparseMatrix& h = ham_.matrix();
    const Complex mi(0.0, -1.0);

    SparseMatrix super =
        SparseMatrix(mi * SparseMatrix(Eigen::kroneckerProduct(id, h))) +
        SparseMatrix(-mi * SparseMatrix(Eigen::kroneckerProduct(SparseMatrix(h.transpose()), id)));
    for (const auto& ch : channels_) {
        const SparseMatrix& o = ch.op.matrix();
        const SparseMatrix o_dag_o = (SparseMatrix(o.adjoint()) * o).pruned();
        super += SparseMatrix(
            ch.rate * (SparseMatrix(Eigen::kroneckerProduct(SparseMatrix(o.conjugate()), o)) -
                       0.5 * SparseMatrix(Eigen::kroneckerProduct(id, o_dag_o)) -
                       0.5 * SparseMatrix(Eigen::kroneckerProduct(
                                 SparseMatrix(o_dag_o.transpose()), id))));
    }
    super.makeCompressed();
    super_ = std::move(super);

    // Max absolute row sum.
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(super_.rows());
    for (int k = 0; k < super_.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(super_, k); it; ++it)
            row_sums[it.row()] += std::abs(it.value());
    inf_norm_ = row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;

    // Cheap assembly cross-check on small spaces: superoperator action must
    // reproduce the direct formula, and must be traceless on any state.
    if (n <= 16) {
        const DenseMatrix rho = random_hermitian(n, 0x5eed);
        const DenseMatrix via_super = apply(rho);
        const DenseMatrix via_formula = apply_direct_formula(ham_, channels_, rho);
        const double scale = std::max(1.0, max_abs(via_formula));
        if (max_abs(via_super - via_formula) > 1e-12 * scale)
            throw std::logic_error("Liouvillian: superoperator disagrees with direct formula");
        if (std::abs(via_super.trace()) > 1e-10 * scale)
            throw std::logic_error("Liouvillian: superoperator action is not traceless");
    }
}

DenseMatrix Liouvillian::apply(const DenseMatrix& rho) const {
    const auto n = static_cast<Index>(dim());
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("Liouvillian::apply: dimension mismatch");
    const Eigen::Map<const Vector> x(rho.data(), n * n);
    Vector y = super_ * x;
    return Eigen::Map<const DenseMatrix>(y.data(), n, n);
}

double Liouvillian::residual_inf(const DenseMatrix& rho) const {
    return max_abs(apply(rho));
}

Liouvillian build_liouvillian(const Operator& hamiltonian, std::vector<CollapseChannel> channels) {
    return Liouvillian(hamiltonian, std::move(channels));
}

// ---- steady state -----------------------------------------------------------

namespace {

// Trace-replaced system: row `0` of L is replaced by s * vec(I)^T and the
// right-hand side by s * e_0. Row 0 is one of the diagonal-equation rows whose
// sum is identically zero (trace preservation), so it is the redundant one.
struct TraceReplacedSystem {
    const Liouvillian* L;
    double scale;   // s, balances the constraint row against L's row norms
    Index n;        // Hilbert dimension

    Vector rhs() const {
        Vector b = Vector::Zero(static_cast<Index>(L->super_dim()));
        b[0] = scale;
        return b;
    }
    void apply(const Vector& x, Vector& y) const {
        y.noalias() = L->super_matrix() * x;
        Complex tr(0.0, 0.0);
        for (Index i = 0; i < n; ++i) tr += x[i * n + i];
        y[0] = scale * tr;
    }
    SparseMatrix materialize() const {
        const auto dim = static_cast<Index>(L->super_dim());
        std::vector<Eigen::Triplet<Complex>> trips;
        trips.reserve(static_cast<std::size_t>(L->super_matrix().nonZeros()) + n);
        const SparseMatrix& s = L->super_matrix();
        for (int k = 0; k < s.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(s, k); it; ++it)
                if (it.row() != 0)
                    trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                       it.value());
        for (Index i = 0; i < n; ++i)
            trips.emplace_back(0, static_cast<int>(i * n + i), Complex(scale, 0.0));
        SparseMatrix m(dim, dim);
        m.setFromTriplets(trips.begin(), trips.end());
        m.makeCompressed();
        return m;
    }
};

DenseMatrix vec_to_state(const Vector& x, Index n) {
    DenseMatrix rho = Eigen::Map<const DenseMatrix>(x.data(), n, n);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-8)
        throw DegenerateSteadyStateError(
            "steady_state: solution carries no trace component (singular system)");
    rho /= tr;
    return rho;
}

DensityOperator finalize_state(const Liouvillian& L, DenseMatrix rho,
                               const SteadyStateOptions& opts, SteadyStateInfo* info) {
    const double defect = hilbert::max_hermiticity_deviation(rho);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double residual = L.residual_inf(rho);
    if (info) {
        info->residual = residual;
        info->hermiticity_defect = defect;
    }
    if (residual > opts.residual_tol * L.inf_norm())
        throw NonConvergenceError(residual,
                                  "steady_state: residual " + std::to_string(residual) +
                                      " above gate " +
                                      std::to_string(opts.residual_tol * L.inf_norm()));
    return DensityOperator(L.layout(), std::move(rho));
}

DensityOperator steady_state_direct(const Liouvillian& L, const SteadyStateOptions& opts,
                                    SteadyStateInfo* info) {
    const auto n = static_cast<Index>(L.dim());
    TraceReplacedSystem sys{&L, std::max(L.inf_norm(), 1.0), n};
    const SparseMatrix m = sys.materialize();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success)
        throw DegenerateSteadyStateError(
            "steady_state: sparse LU factorization failed (degenerate Liouvillian?)");

    // Iterative refinement: stiff Liouvillians amplify rounding in the slow
    // subspace, which shows up as spurious negative state eigenvalues.
    const auto refined_solve = [&](const Vector& rhs) {
        Vector sol = lu.solve(rhs);
        if (lu.info() != Eigen::Success)
            throw DegenerateSteadyStateError("steady_state: sparse LU solve failed");
        double res_norm = std::numeric_limits<double>::infinity();
        for (int pass = 0; pass < 4; ++pass) {
            const Vector r = rhs - m * sol;
            const double rn = r.norm();
            if (rn >= 0.5 * res_norm) break;
            res_norm = rn;
            sol += lu.solve(r);
        }
        return sol;
    };

    const Vector b = sys.rhs();
    const Vector x = refined_solve(b);
    DenseMatrix rho = vec_to_state(x, n);

    if (opts.check_degenerate) {
        // Second solve from a perturbed right-hand side, refined identically.
        // For a unique steady state the two normalized solutions coincide up
        // to rounding; a (near-)singular system amplifies the perturbation
        // past the tolerance. The perturbation sits at machine-relative scale
        // so that stiff but unique systems (condition below ~1e9) stay under
        // the gate.
        std::mt19937_64 rng(0xd15c0);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Vector delta(b.size());
        for (Index i = 0; i < delta.size(); ++i) delta[i] = Complex(dist(rng), dist(rng));
        delta[0] = 0.0;
        const double eps = 1e-16 * sys.scale;
        const Vector x2 = refined_solve(b + eps * delta);
        const DenseMatrix rho2 = vec_to_state(x2, n);
        const double diff = max_abs(rho2 - rho);
        if (diff > opts.degeneracy_tol)
            throw DegenerateSteadyStateError(
                "steady_state: perturbed solve differs by " + std::to_string(diff) +
                " (multiple steady states)");
    }
    if (info) {
        info->method = "direct";
        info->iterations = 0;
    }
    return finalize_state(L, std::move(rho), opts, info);
}

struct GmresOutcome {
    bool converged = false;
    int iterations = 0;
    double rel_residual = 0.0;
};

// Right-preconditioned restarted GMRES with modified Gram-Schmidt and Givens
// rotations. Deterministic; restarts use the true residual, so continuing past
// `tol_accept` acts as iterative refinement down to `tol_target` or stagnation.
template <typename ApplyA, typename ApplyP>
GmresOutcome gmres(const ApplyA& a_mul, const ApplyP& p_solve, const Vector& b, Vector& x,
                   int restart, int max_outer, double tol_accept,
                   double tol_target = 1e-15) {
    GmresOutcome out;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero();
        out.converged = true;
        return out;
    }
    const Index n = b.size();
    Eigen::MatrixXcd basis(n, restart + 1);
    Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(restart + 1, restart);
    Vector g(restart + 1), cs(restart), sn(restart), w(n), z(n);
    double previous_residual = std::numeric_limits<double>::infinity();

    for (int outer = 0; outer < max_outer; ++outer) {
        a_mul(x, w);
        Vector r = b - w;
        const double beta = r.norm();
        out.rel_residual = beta / bnorm;
        const bool stagnated = out.rel_residual > 0.5 * previous_residual;
        previous_residual = out.rel_residual;
        if (out.rel_residual <= tol_target ||
            (out.rel_residual <= tol_accept && stagnated)) {
            out.converged = true;
            return out;
        }
        basis.col(0) = r / beta;
        g.setZero();
        g[0] = beta;

        int k = 0;
        for (; k < restart; ++k) {
            p_solve(basis.col(k), z);
            a_mul(z, w);
            for (int i = 0; i <= k; ++i) {
                hess(i, k) = basis.col(i).dot(w);
                w -= hess(i, k) * basis.col(i);
            }
            hess(k + 1, k) = w.norm();
            const bool breakdown = std::abs(hess(k + 1, k)) < 1e-300;
            if (!breakdown) basis.col(k + 1) = w / hess(k + 1, k);

            for (int i = 0; i < k; ++i) {
                const Complex tmp = std::conj(cs[i]) * hess(i, k) + std::conj(sn[i]) * hess(i + 1, k);
                hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
                hess(i, k) = tmp;
            }
            const double denom =
                std::sqrt(std::norm(hess(k, k)) + std::norm(hess(k + 1, k)));
            if (denom > 0.0) {
                cs[k] = hess(k, k) / denom;
                sn[k] = hess(k + 1, k) / denom;
                hess(k, k) = std::conj(cs[k]) * hess(k, k) + std::conj(sn[k]) * hess(k + 1, k);
                hess(k + 1, k) = 0.0;
                const Complex tmp = std::conj(cs[k]) * g[k];
                g[k + 1] = -sn[k] * g[k];
                g[k] = tmp;
            }
            ++out.iterations;
            if (std::abs(g[k + 1]) / bnorm <= tol_target || breakdown) {
                ++k;
                break;
            }
        }
        // y = H^{-1} g (triangular), correction x += P^{-1} (V y).
        Vector y = Vector::Zero(k);
        for (int i = k - 1; i >= 0; --i) {
            Complex acc = g[i];
            for (int j = i + 1; j < k; ++j) acc -= hess(i, j) * y[j];
            y[i] = acc / hess(i, i);
        }
        w.noalias() = basis.leftCols(k) * y;
        p_solve(w, z);
        x += z;
    }
    a_mul(x, w);
    out.rel_residual = (b - w).norm() / bnorm;
    out.converged = out.rel_residual <= tol_accept;
    return out;
}

DensityOperator steady_state_iterative(const Liouvillian& L, const SteadyStateOptions& opts,
                                       SteadyStateInfo* info) {
    const auto n = static_cast<Index>(L.dim());
    TraceReplacedSystem sys{&L, std::max(L.inf_norm(), 1.0), n};
    const SparseMatrix m = sys.materialize();

    Eigen::IncompleteLUT<Complex> ilut;
    ilut.setDroptol(opts.ilut_droptol);
    ilut.setFillfactor(opts.ilut_fill);
    ilut.compute(m);
    if (ilut.info() != Eigen::Success)
        throw SolverError("steady_state: incomplete LU factorization failed");

    const auto a_mul = [&m](const Vector& x, Vector& y) { y.noalias() = m * x; };
    const auto p_solve = [&ilut](const Eigen::Ref<const Vector>& x, Vector& y) {
        y = ilut.solve(x);
    };

    // Maximally mixed initial guess (unit trace).
    Vector x = Vector::Zero(static_cast<Index>(L.super_dim()));
    for (Index i = 0; i < n; ++i) x[i * n + i] = 1.0 / static_cast<double>(n);

    const Vector b = sys.rhs();
    const GmresOutcome res =
        gmres(a_mul, p_solve, b, x, opts.gmres_restart, opts.gmres_max_outer, opts.gmres_tol);
    if (!res.converged)
        throw NonConvergenceError(res.rel_residual,
                                  "steady_state: GMRES stalled at relative residual " +
                                      std::to_string(res.rel_residual) + " after " +
                                      std::to_string(res.iterations) + " iterations");
    DenseMatrix rho = vec_to_state(x, n);
    if (info) {
        info->method = "iterative";
        info->iterations = res.iterations;
    }
    return finalize_state(L, std::move(rho), opts, info);
}

}  // namespace

DensityOperator steady_state(const Liouvillian& L, const SteadyStateOptions& opts,
                             SteadyStateInfo* info) {
    bool has_dissipation = false;
    for (const auto& ch : L.channels())
        if (ch.rate > 0.0 && ch.op.matrix().nonZeros() > 0) has_dissipation = true;
    if (!has_dissipation)
        throw std::invalid_argument(
            "steady_state: at least one dissipative channel required (no unique steady state)");

    switch (opts.method) {
        case SteadyStateOptions::Method::direct:
            return steady_state_direct(L, opts, info);
        case SteadyStateOptions::Method::iterative:
            return steady_state_iterative(L, opts, info);
        case SteadyStateOptions::Method::automatic:
        default:
            if (L.super_dim() <= opts.direct_dim_limit) return steady_state_direct(L, opts, info);
            return steady_state_iterative(L, opts, info);
    }
}

// ---- time evolution ---------------------------------------------------------

namespace {

void check_uniform_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    if (std::abs(t_grid.front()) > 1e-12)
        throw std::invalid_argument("evolve: grid must start at t = 0");
    if (t_grid.size() < 2) return;
    const double h = t_grid[1] - t_grid[0];
    if (h <= 0.0) throw std::invalid_argument("evolve: grid must be increasing");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double step = t_grid[i] - t_grid[i - 1];
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("evolve: grid must be uniform");
    }
}

}  // namespace

namespace {

// Spectral radius estimate by power iteration (deterministic start vector);
// bounds the stable explicit-RK step for the dominant oscillation frequency.
double spectral_radius_estimate(const SparseMatrix& super) {
    const Index dim = super.rows();
    std::mt19937_64 rng(0x5fec);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = Complex(dist(rng), dist(rng));
    v /= v.norm();
    double rho = 0.0;
    Vector w(dim);
    for (int it = 0; it < 30; ++it) {
        w.noalias() = super * v;
        const double nw = w.norm();
        if (nw < 1e-300) return 0.0;
        rho = nw;
        v = w / nw;
    }
    return rho;
}

}  // namespace

void evolve_stream(const Liouvillian& L, const DenseMatrix& X0, std::span<const double> t_grid,
                   const MatrixObserver& observe, const num::IntegratorOptions& opts) {
    const auto n = static_cast<Index>(L.dim());
    if (X0.rows() != n || X0.cols() != n)
        throw std::invalid_argument("evolve_stream: state dimension mismatch");
    check_uniform_grid(t_grid);

    const SparseMatrix& super = L.super_matrix();
    num::IntegratorOptions effective = opts;
    const double rho = spectral_radius_estimate(super);
    if (rho > 0.0) effective.max_step = std::min(effective.max_step, 2.5 / rho);

    const auto deriv = [&super](const Vector& y, Vector& dydt) { dydt.noalias() = super * y; };
    const Eigen::Map<const Vector> y0(X0.data(), n * n);
    num::integrate_adaptive(
        deriv, y0, t_grid,
        [&observe, n](std::size_t idx, const Vector& y) {
            observe(idx, Eigen::Map<const DenseMatrix>(y.data(), n, n));
        },
        effective);
}

std::vector<DensityOperator> evolve(const Liouvillian& L, const DensityOperator& rho0,
                                    std::span<const double> t_grid,
                                    const num::IntegratorOptions& opts) {
    if (rho0.layout() != L.layout()) throw std::invalid_argument("evolve: layout mismatch");
    std::vector<DensityOperator> out;
    out.reserve(t_grid.size());
    evolve_stream(L, rho0.matrix(), t_grid,
                  [&out, &L](std::size_t, const DenseMatrix& state) {
                      DenseMatrix sym = 0.5 * (state + state.adjoint().eval());
                      out.emplace_back(L.layout(), std::move(sym), 1e-6 * -1.0);
                  },
                  opts);
    return out;
}

std::vector<double> uniform_grid(double t_max, std::size_t n_points) {
    if (n_points < 2 || t_max <= 0.0)
        throw std::invalid_argument("uniform_grid: need t_max > 0 and at least two points");
    std::vector<double> grid(n_points);
    const double h = t_max / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) grid[i] = h * static_cast<double>(i);
    grid.back() = t_max;
    return grid;
}

}  // namespace cqed::lindblad
