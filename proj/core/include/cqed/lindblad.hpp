// lindblad.hpp — Liouvillian superoperators, steady states, and time evolution.
//
// Vectorization convention: column stacking, vec(rho)[i + N*j] = rho(i, j).
// Under this convention vec(A rho B) = (B^T kron A) vec(rho), so the
// superoperator reads
//   L = -i [ (I kron H) - (H^T kron I) ]
//       + sum_k rate_k [ conj(O_k) kron O_k
//                        - 1/2 I kron (O_k^dag O_k)
//                        - 1/2 (O_k^dag O_k)^T kron I ].

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cqed/integrator.hpp"
#include "cqed/operators.hpp"

namespace cqed::lindblad {

using hilbert::Complex;
using hilbert::DenseMatrix;
using hilbert::DensityOperator;
using hilbert::Operator;
using hilbert::SpaceLayout;
using hilbert::SparseMatrix;

struct CollapseChannel {
    Operator op;
    double rate{0.0};   // units of gamma (atomic FWHM linewidth)
};

class Liouvillian {
public:
    Liouvillian() = default;
    Liouvillian(Operator hamiltonian, std::vector<CollapseChannel> channels);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const Operator& hamiltonian() const noexcept { return ham_; }
    const std::vector<CollapseChannel>& channels() const noexcept { return channels_; }
    const SparseMatrix& super_matrix() const noexcept { return super_; }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(layout_.total_dim()); }
    std::size_t super_dim() const noexcept { return dim() * dim(); }

    // Max absolute row sum of the superoperator.
    double inf_norm() const noexcept { return inf_norm_; }

    // L[rho] through the superoperator (rho need not be Hermitian).
    DenseMatrix apply(const DenseMatrix& rho) const;
    // Residual ||L[rho]||_inf of a candidate steady state.
    double residual_inf(const DenseMatrix& rho) const;

private:
    SpaceLayout layout_;
    Operator ham_;
    std::vector<CollapseChannel> channels_;
    SparseMatrix super_;
    double inf_norm_{0.0};
};

// O rho O^dag - 1/2 {O^dag O, rho}
DenseMatrix dissipator(const Operator& op, const DensityOperator& rho);
DenseMatrix dissipator(const SparseMatrix& op, const DenseMatrix& rho);

// Checks H Hermitian (1e-10) and channel layouts; verifies the assembled
// superoperator against the direct commutator/dissipator formula on a random
// state when the dimension is small enough for that to be cheap.
Liouvillian build_liouvillian(const Operator& hamiltonian, std::vector<CollapseChannel> channels);

// ---- steady state -----------------------------------------------------------

struct SteadyStateOptions {
    enum class Method { automatic, direct, iterative };
    Method method = Method::automatic;

    // Residual gate, relative to ||L||_inf.
    double residual_tol = 1e-10;

    // Direct path: second solve from a perturbed right-hand side; solutions
    // differing by more than degeneracy_tol flag a degenerate steady state.
    bool check_degenerate = true;
    double degeneracy_tol = 1e-6;

    // Iterative path: restarted GMRES right-preconditioned with an incomplete
    // LU factorization of the trace-replaced system.
    int gmres_restart = 60;
    int gmres_max_outer = 60;
    double gmres_tol = 1e-12;         // relative 2-norm residual target
    double ilut_droptol = 1e-3;
    int ilut_fill = 7;

    // automatic: direct when the superoperator dimension is at most this.
    // Liouvillian LU fill grows steeply with size; the preconditioned
    // iterative path already wins by an order of magnitude near 5e3 rows.
    std::size_t direct_dim_limit = 5'000;
};

struct SteadyStateInfo {
    std::string method;               // "direct" or "iterative"
    double residual = 0.0;            // ||L[rho]||_inf
    double hermiticity_defect = 0.0;  // before symmetrization
    int iterations = 0;               // GMRES iterations (0 for direct)
};

// Unique steady state of L, by sparse direct solve of the trace-replaced
// system or preconditioned GMRES for large systems. Throws
// DegenerateSteadyStateError / NonConvergenceError.
DensityOperator steady_state(const Liouvillian& L, const SteadyStateOptions& opts = {},
                             SteadyStateInfo* info = nullptr);

// ---- time evolution ---------------------------------------------------------

// Trajectory at the given uniform grid (starting at 0) under vec(rho') = L vec(rho).
std::vector<DensityOperator> evolve(const Liouvillian& L, const DensityOperator& rho0,
                                    std::span<const double> t_grid,
                                    const num::IntegratorOptions& opts = {});

// Streaming form for operator-conditioned inputs: X0 need not be Hermitian and
// states are handed to the observer without density-operator validation.
using MatrixObserver = std::function<void(std::size_t index, const DenseMatrix& state)>;
void evolve_stream(const Liouvillian& L, const DenseMatrix& X0, std::span<const double> t_grid,
                   const MatrixObserver& observe, const num::IntegratorOptions& opts = {});

// Uniform grid helper: n_points over [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t n_points);

}  // namespace cqed::lindblad
