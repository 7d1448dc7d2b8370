// operators.hpp — Sparse operators on composite Hilbert spaces: ladder and
// transition operators, tensor embedding, adjoints, expectation values, and
// validated density operators.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <string>

#include "cqed/layout.hpp"

namespace cqed::hilbert {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;

// Entries with magnitude at or below this are dropped on construction.
inline constexpr double kDropTolerance = 1e-14;

// Sparse operator tied to a SpaceLayout. Immutable after construction.
class Operator {
public:
    Operator() = default;
    Operator(SpaceLayout layout, SparseMatrix entries);   // prunes to kDropTolerance
    Operator(SpaceLayout layout, const DenseMatrix& entries);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const SparseMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }

    Operator adjoint() const;
    DenseMatrix dense() const { return DenseMatrix(mat_); }

    bool is_hermitian(double tol = 1e-10) const;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Complex s, const Operator& a);
    friend Operator operator*(double s, const Operator& a);

private:
    SpaceLayout layout_;
    SparseMatrix mat_;
};

// Hermitian, unit-trace, positive-semidefinite state. Validated on construction:
// max |rho - rho^dag| <= 1e-10, |tr(rho) - 1| <= 1e-10, min eigenvalue >= -1e-8.
// Trajectory samples use the looser -1e-6 floor (integration error accumulates
// along undamped evolutions).
class DensityOperator {
public:
    DensityOperator() = default;
    DensityOperator(SpaceLayout layout, DenseMatrix entries,
                    double positivity_floor = positivity_tol);

    const SpaceLayout& layout() const noexcept { return layout_; }
    const DenseMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }

    static constexpr double hermiticity_tol = 1e-10;
    static constexpr double trace_tol = 1e-10;
    static constexpr double positivity_tol = -1e-8;

private:
    SpaceLayout layout_;
    DenseMatrix mat_;
};

// Pure basis state |index><index| on the given layout.
DensityOperator basis_state(const SpaceLayout& layout, std::size_t index);

// ---- construction --------------------------------------------------------

// Lowering operator on a truncated Fock space {0,...,n_max}: entry (n-1, n) = sqrt(n).
// The result lives on a single-subsystem layout labeled `label`.
Operator annihilation(std::size_t n_max, const std::string& label = "mode");

// |to><from| on the named subsystem, identity elsewhere.
Operator transition(const SpaceLayout& layout, const std::string& label,
                    std::size_t from_state, std::size_t to_state);

// Kronecker-embed a single-subsystem operator into `layout` at the named slot.
Operator embed(const Operator& op, const SpaceLayout& layout, const std::string& label);
Operator embed(const SparseMatrix& op, const SpaceLayout& layout, const std::string& label);

Operator identity_operator(const SpaceLayout& layout);

// ---- queries --------------------------------------------------------------

// tr(op * rho). For Hermitian op the imaginary part is numerical noise; it is
// returned to the caller rather than dropped.
Complex expectation(const DensityOperator& rho, const Operator& op);
Complex expectation(const DenseMatrix& rho, const SparseMatrix& op);

// Expectation of a Hermitian operator; throws if |imag| > 1e-10 * max(1, |value|).
double real_expectation(const DensityOperator& rho, const Operator& op);

double max_hermiticity_deviation(const DenseMatrix& m);

}  // namespace cqed::hilbert
