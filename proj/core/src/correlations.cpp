#include "cqed/correlations.hpp"

#include <cmath>
#include <stdexcept>

#include "cqed/errors.hpp"

namespace cqed::correlations {

namespace {

void check_steady(const Liouvillian& L, const DensityOperator& rho_ss, const char* who) {
    if (rho_ss.layout() != L.layout())
        throw std::invalid_argument(std::string(who) + ": layout mismatch");
    const double res = L.residual_inf(rho_ss.matrix());
    if (res > kSteadyStateGate * L.inf_norm())
        throw std::invalid_argument(std::string(who) +
                                    ": rho_ss fails the steady-state residual check (residual " +
                                    std::to_string(res) + ")");
}

void check_grid(std::span<const double> tau_grid, const char* who) {
    if (tau_grid.empty() || std::abs(tau_grid.front()) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": tau grid must start at 0");
}

bool same_matrix(const hilbert::SparseMatrix& a, const hilbert::SparseMatrix& b) {
    if (a.rows() != b.rows() || a.nonZeros() != b.nonZeros()) return false;
    for (int k = 0; k < a.outerSize(); ++k) {
        hilbert::SparseMatrix::InnerIterator ia(a, k), ib(b, k);
        for (; ia && ib; ++ia, ++ib)
            if (ia.row() != ib.row() || ia.value() != ib.value()) return false;
        if (ia || ib) return false;
    }
    return true;
}

}  // namespace

CorrelationSeries first_order(const Liouvillian& L, const DensityOperator& rho_ss,
                              const Operator& O, std::span<const double> tau_grid,
                              const num::IntegratorOptions& opts) {
    check_steady(L, rho_ss, "first_order");
    check_grid(tau_grid, "first_order");
    if (O.layout() != L.layout()) throw std::invalid_argument("first_order: layout mismatch");

    const Complex mean = hilbert::expectation(rho_ss, O);
    const double coherent = std::norm(mean);
    const hilbert::SparseMatrix o_dag = O.matrix().adjoint();

    CorrelationSeries out;
    out.kind = Kind::first_order;
    out.normalization = 1.0;
    out.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    out.values.resize(tau_grid.size());

    const hilbert::DenseMatrix conditioned = O.matrix() * rho_ss.matrix();
    lindblad::evolve_stream(L, conditioned, tau_grid,
                            [&](std::size_t idx, const hilbert::DenseMatrix& state) {
                                out.values[idx] = hilbert::expectation(state, o_dag) - coherent;
                            },
                            opts);
    return out;
}

CorrelationSeries second_order(const Liouvillian& L, const DensityOperator& rho_ss,
                               const Operator& O1, const Operator& O2,
                               std::span<const double> tau_grid,
                               const num::IntegratorOptions& opts) {
    check_steady(L, rho_ss, "second_order");
    check_grid(tau_grid, "second_order");
    if (O1.layout() != L.layout() || O2.layout() != L.layout())
        throw std::invalid_argument("second_order: layout mismatch");

    const Operator n1_op = O1.adjoint() * O1;
    const Operator n2_op = O2.adjoint() * O2;
    const double n1 = hilbert::expectation(rho_ss, n1_op).real();
    const double n2 = hilbert::expectation(rho_ss, n2_op).real();
    constexpr double flux_floor = 1e-12;
    if (n1 <= flux_floor || n2 <= flux_floor)
        throw UndefinedCorrelationError(
            "second_order: zero flux denominator (<O1^dag O1> = " + std::to_string(n1) +
            ", <O2^dag O2> = " + std::to_string(n2) + "); g2 is undefined");

    CorrelationSeries out;
    out.kind = same_matrix(O1.matrix(), O2.matrix()) ? Kind::second_order_auto
                                                     : Kind::second_order_cross;
    out.normalization = n1 * n2;
    out.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    out.values.resize(tau_grid.size());

    const hilbert::DenseMatrix conditioned =
        O1.matrix() * rho_ss.matrix() * hilbert::SparseMatrix(O1.matrix().adjoint());
    const hilbert::SparseMatrix& n2_mat = n2_op.matrix();
    double max_imag = 0.0;
    lindblad::evolve_stream(L, conditioned, tau_grid,
                            [&](std::size_t idx, const hilbert::DenseMatrix& state) {
                                const Complex v = hilbert::expectation(state, n2_mat) /
                                                  out.normalization;
                                max_imag = std::max(max_imag, std::abs(v.imag()));
                                out.values[idx] = Complex(v.real(), 0.0);
                            },
                            opts);
    out.max_imag_residue = max_imag;
    if (max_imag > 1e-8)
        throw SolverError("second_order: imaginary residue " + std::to_string(max_imag) +
                          " exceeds 1e-8; conditioned state lost Hermiticity");
    return out;
}

bool CauchySchwarzReport::any_violation() const { return violation_count() > 0; }

std::size_t CauchySchwarzReport::violation_count() const {
    std::size_t n = 0;
    n += single_mode_1.violated ? 1 : 0;
    n += single_mode_2.violated ? 1 : 0;
    for (const auto& c : temporal_1) n += c.violated ? 1 : 0;
    for (const auto& c : temporal_2) n += c.violated ? 1 : 0;
    for (const auto& c : two_mode) n += c.violated ? 1 : 0;
    return n;
}

CauchySchwarzReport cauchy_schwarz_report(const CorrelationSeries& auto1,
                                          const CorrelationSeries& auto2,
                                          const CorrelationSeries& cross) {
    if (auto1.tau_grid != auto2.tau_grid || auto1.tau_grid != cross.tau_grid)
        throw std::invalid_argument("cauchy_schwarz_report: tau grids differ");
    if (auto1.values.empty()) throw std::invalid_argument("cauchy_schwarz_report: empty series");

    CauchySchwarzReport rep;
    rep.tau_grid = auto1.tau_grid;
    rep.g2_auto1_zero = auto1.values.front().real();
    rep.g2_auto2_zero = auto2.values.front().real();

    const auto check = [](double margin) { return BoundCheck{margin > 0.0, margin}; };
    rep.single_mode_1 = check(1.0 - rep.g2_auto1_zero);
    rep.single_mode_2 = check(1.0 - rep.g2_auto2_zero);

    const double cross_bound = std::sqrt(rep.g2_auto1_zero * rep.g2_auto2_zero);
    rep.temporal_1.reserve(rep.tau_grid.size());
    rep.temporal_2.reserve(rep.tau_grid.size());
    rep.two_mode.reserve(rep.tau_grid.size());
    for (std::size_t k = 0; k < rep.tau_grid.size(); ++k) {
        rep.temporal_1.push_back(check(auto1.values[k].real() - rep.g2_auto1_zero));
        rep.temporal_2.push_back(check(auto2.values[k].real() - rep.g2_auto2_zero));
        rep.two_mode.push_back(check(std::abs(cross.values[k]) - cross_bound));
    }
    return rep;
}

}  // namespace cqed::correlations
