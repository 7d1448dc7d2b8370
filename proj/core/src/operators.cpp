#include "cqed/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cqed::hilbert {

namespace {

SparseMatrix pruned(SparseMatrix m) {
    m.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
        return std::abs(v) > kDropTolerance;
    });
    m.makeCompressed();
    return m;
}

void check_same_layout(const SpaceLayout& a, const SpaceLayout& b, const char* who) {
    if (a != b) throw std::invalid_argument(std::string(who) + ": layout mismatch");
}

}  // namespace

Operator::Operator(SpaceLayout layout, SparseMatrix entries)
    : layout_(std::move(layout)), mat_(pruned(std::move(entries))) {
    if (static_cast<std::size_t>(mat_.rows()) != layout_.total_dim() ||
        static_cast<std::size_t>(mat_.cols()) != layout_.total_dim())
        throw std::invalid_argument("Operator: matrix dimension does not match layout");
}

Operator::Operator(SpaceLayout layout, const DenseMatrix& entries)
    : Operator(std::move(layout), SparseMatrix(entries.sparseView())) {}

Operator Operator::adjoint() const {
    SparseMatrix adj = mat_.adjoint();
    return Operator(layout_, std::move(adj));
}

bool Operator::is_hermitian(double tol) const {
    SparseMatrix diff = mat_ - SparseMatrix(mat_.adjoint());
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
            if (std::abs(it.value()) > tol) return false;
    return true;
}

Operator operator+(const Operator& a, const Operator& b) {
    check_same_layout(a.layout_, b.layout_, "Operator+");
    return Operator(a.layout_, SparseMatrix(a.mat_ + b.mat_));
}

Operator operator-(const Operator& a, const Operator& b) {
    check_same_layout(a.layout_, b.layout_, "Operator-");
    return Operator(a.layout_, SparseMatrix(a.mat_ - b.mat_));
}

Operator operator*(const Operator& a, const Operator& b) {
    check_same_layout(a.layout_, b.layout_, "Operator*");
    return Operator(a.layout_, SparseMatrix(a.mat_ * b.mat_));
}

Operator operator*(Complex s, const Operator& a) {
    return Operator(a.layout_, SparseMatrix(s * a.mat_));
}

Operator operator*(double s, const Operator& a) { return Complex(s, 0.0) * a; }

double max_hermiticity_deviation(const DenseMatrix& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

DensityOperator::DensityOperator(SpaceLayout layout, DenseMatrix entries,
                                 double positivity_floor)
    : layout_(std::move(layout)), mat_(std::move(entries)) {
    if (static_cast<std::size_t>(mat_.rows()) != layout_.total_dim() ||
        static_cast<std::size_t>(mat_.cols()) != layout_.total_dim())
        throw std::invalid_argument("DensityOperator: matrix dimension does not match layout");
    const double herm = max_hermiticity_deviation(mat_);
    if (herm > hermiticity_tol)
        throw std::invalid_argument("DensityOperator: not Hermitian (max deviation " +
                                    std::to_string(herm) + ")");
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol)
        throw std::invalid_argument("DensityOperator: trace deviates from 1 by " +
                                    std::to_string(std::abs(tr - Complex(1.0, 0.0))));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (mat_ + mat_.adjoint().eval()),
                                                  Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < positivity_floor)
        throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                    std::to_string(min_eig));
}

DensityOperator basis_state(const SpaceLayout& layout, std::size_t index) {
    if (index >= layout.total_dim())
        throw std::invalid_argument("basis_state: index out of range");
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(layout.total_dim()),
                                      static_cast<Eigen::Index>(layout.total_dim()));
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityOperator(layout, std::move(m));
}

Operator annihilation(std::size_t n_max, const std::string& label) {
    if (n_max == 0)
        throw std::invalid_argument("annihilation: n_max must be >= 1 (no dynamics on a 1-dim Fock space)");
    const auto dim = static_cast<Eigen::Index>(n_max + 1);
    SparseMatrix m(dim, dim);
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        trips.emplace_back(static_cast<int>(n - 1), static_cast<int>(n),
                           Complex(std::sqrt(static_cast<double>(n)), 0.0));
    m.setFromTriplets(trips.begin(), trips.end());
    return Operator(single_space(label, n_max + 1), std::move(m));
}

Operator transition(const SpaceLayout& layout, const std::string& label,
                    std::size_t from_state, std::size_t to_state) {
    const std::size_t dim = layout.dim_of(label);
    if (from_state >= dim || to_state >= dim)
        throw std::invalid_argument("transition: state index out of range for subsystem '" + label + "'");
    SparseMatrix local(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    local.insert(static_cast<Eigen::Index>(to_state), static_cast<Eigen::Index>(from_state)) = 1.0;
    local.makeCompressed();
    return embed(local, layout, label);
}

Operator embed(const SparseMatrix& op, const SpaceLayout& layout, const std::string& label) {
    const std::size_t k = layout.index_of(label);
    const std::size_t d = layout.at(k).dim;
    if (static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d)
        throw std::invalid_argument("embed: operator dimension does not match subsystem '" + label + "'");

    const std::size_t left = layout.dim_before(k);    // identity factor before the slot
    const std::size_t right = layout.dim_after(k);    // identity factor after the slot
    const auto total = static_cast<Eigen::Index>(layout.total_dim());

    // I_left (x) op (x) I_right with composite index i = (l * d + s) * right + r.
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(op.nonZeros()) * left * right);
    for (int outer = 0; outer < op.outerSize(); ++outer) {
        for (SparseMatrix::InnerIterator it(op, outer); it; ++it) {
            const auto si = static_cast<std::size_t>(it.row());
            const auto sj = static_cast<std::size_t>(it.col());
            for (std::size_t l = 0; l < left; ++l)
                for (std::size_t r = 0; r < right; ++r) {
                    const auto row = static_cast<int>((l * d + si) * right + r);
                    const auto col = static_cast<int>((l * d + sj) * right + r);
                    trips.emplace_back(row, col, it.value());
                }
        }
    }
    SparseMatrix m(total, total);
    m.setFromTriplets(trips.begin(), trips.end());
    return Operator(layout, std::move(m));
}

Operator embed(const Operator& op, const SpaceLayout& layout, const std::string& label) {
    if (op.layout().size() != 1)
        throw std::invalid_argument("embed: expected a single-subsystem operator");
    return embed(op.matrix(), layout, label);
}

Operator identity_operator(const SpaceLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    SparseMatrix m(n, n);
    m.setIdentity();
    return Operator(layout, std::move(m));
}

Complex expectation(const DenseMatrix& rho, const SparseMatrix& op) {
    // tr(op * rho) = sum_{ij} op(i,j) rho(j,i); iterate the sparse factor only.
    Complex acc(0.0, 0.0);
    for (int outer = 0; outer < op.outerSize(); ++outer)
        for (SparseMatrix::InnerIterator it(op, outer); it; ++it)
            acc += it.value() * rho(it.col(), it.row());
    return acc;
}

Complex expectation(const DensityOperator& rho, const Operator& op) {
    check_same_layout(rho.layout(), op.layout(), "expectation");
    return expectation(rho.matrix(), op.matrix());
}

double real_expectation(const DensityOperator& rho, const Operator& op) {
    const Complex v = expectation(rho, op);
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v)))
        throw std::runtime_error("real_expectation: imaginary residue " +
                                 std::to_string(v.imag()));
    return v.real();
}

}  // namespace cqed::hilbert
