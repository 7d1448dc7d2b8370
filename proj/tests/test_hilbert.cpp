#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "cqed/operators.hpp"

using namespace cqed::hilbert;

namespace {

SpaceLayout atom_mode_layout(std::size_t n_max) {
    return SpaceLayout({{"atom", 2}, {"mode", n_max + 1}});
}

double max_abs(const DenseMatrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

TEST_CASE("space layout invariants") {
    SpaceLayout l({{"atom", 2}, {"red", 4}, {"blue", 4}});
    CHECK(l.total_dim() == 32);
    CHECK(l.index_of("red") == 1);
    CHECK(l.dim_before(1) == 2);
    CHECK(l.dim_after(1) == 4);
    CHECK_THROWS_AS(SpaceLayout({{"a", 2}, {"a", 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SpaceLayout({{"a", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(l.index_of("nope"), std::invalid_argument);
}

TEST_CASE("annihilation operator entries") {
    const Operator a1 = annihilation(1);
    CHECK(a1.dim() == 2);
    CHECK(a1.matrix().coeff(0, 1) == Complex(1.0));
    CHECK(a1.matrix().nonZeros() == 1);

    const Operator a2 = annihilation(2);
    CHECK(a2.matrix().coeff(0, 1) == Complex(1.0));
    CHECK(a2.matrix().coeff(1, 2) == Complex(std::sqrt(2.0)));

    // number operator diag(0,1,2,3)
    const Operator n = annihilation(3).adjoint() * annihilation(3);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(n.matrix().coeff(k, k) - Complex(k)) < 1e-15);

    CHECK_THROWS_AS(annihilation(0), std::invalid_argument);
}

TEST_CASE("commutator of truncated ladder operators vanishes below the top row") {
    for (std::size_t n_max : {1u, 2u, 3u, 5u}) {
        const Operator a = annihilation(n_max);
        const Operator id = identity_operator(a.layout());
        const Operator c = a * a.adjoint() - a.adjoint() * a - id;
        // the drop tolerance removes rounding dust, so only the truncation row survives
        const auto last = static_cast<Eigen::Index>(n_max);
        for (int k = 0; k < c.matrix().outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(c.matrix(), k); it; ++it)
                CHECK((it.row() == last || it.col() == last));
    }
}

TEST_CASE("transition operators and Pauli algebra") {
    SpaceLayout l = atom_mode_layout(3);
    const Operator sp = transition(l, "atom", 0, 1);   // |e><g|
    const Operator sm = transition(l, "atom", 1, 0);

    CHECK(sp.dim() == 8);   // 2 * (n_max + 1)
    CHECK((sp * sp).matrix().nonZeros() == 0);

    const Operator sum = sp * sm + sm * sp;
    CHECK(max_abs(sum.dense() - identity_operator(l).dense()) < 1e-15);

    CHECK_THROWS_AS(transition(l, "nope", 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(transition(l, "atom", 0, 2), std::invalid_argument);
}

TEST_CASE("embedding matches a dense Kronecker oracle") {
    SpaceLayout l({{"a", 2}, {"b", 3}, {"c", 2}});
    const Operator a_op = annihilation(2, "b");

    const Operator embedded = embed(a_op, l, "b");
    const Operator prod = embedded * embedded.adjoint();

    // independent oracle: dense kron( I2, a a^dag, I2 )
    const DenseMatrix local = a_op.dense() * a_op.dense().adjoint().eval();
    const DenseMatrix i2 = DenseMatrix::Identity(2, 2);
    const DenseMatrix expect =
        Eigen::kroneckerProduct(i2, Eigen::kroneckerProduct(local, i2).eval()).eval();
    CHECK(max_abs(prod.dense() - expect) < 1e-14);

    CHECK_THROWS_AS(embed(annihilation(3), l, "b"), std::invalid_argument);
}

TEST_CASE("embedding is an algebra homomorphism and disjoint embeds commute") {
    SpaceLayout l({{"a", 3}, {"b", 2}});
    // integer-valued matrices keep the products exact
    DenseMatrix x(3, 3), y(3, 3);
    x << 1, 2, 0, 0, -1, 3, 2, 0, 1;
    y << 0, 1, 1, 2, 0, -2, 1, 1, 0;
    const Operator ex = embed(Operator(single_space("a", 3), x), l, "a");
    const Operator ey = embed(Operator(single_space("a", 3), y), l, "a");
    const Operator exy = embed(Operator(single_space("a", 3), DenseMatrix(x * y)), l, "a");
    CHECK(max_abs((ex * ey).dense() - exy.dense()) == 0.0);

    const Operator zb = embed(annihilation(1, "b"), l, "b");
    CHECK(max_abs((ex * zb).dense() - (zb * ex).dense()) == 0.0);

    CHECK(max_abs(embed(identity_operator(single_space("a", 3)), l, "a").dense() -
                  identity_operator(l).dense()) == 0.0);
}

TEST_CASE("adjoint is an involution") {
    SpaceLayout l({{"a", 2}, {"b", 3}});
    const Operator a = embed(annihilation(2, "b"), l, "b");
    const Operator sum = 0.5 * a + Complex(0.0, 2.0) * a.adjoint();
    const Operator twice = sum.adjoint().adjoint();
    CHECK(max_abs(twice.dense() - sum.dense()) == 0.0);
}

TEST_CASE("construction prunes entries at the drop tolerance") {
    SpaceLayout l = single_space("a", 2);
    DenseMatrix m = DenseMatrix::Zero(2, 2);
    m(0, 1) = 1e-15;
    m(1, 0) = 1e-12;
    const Operator op(l, m);
    CHECK(op.matrix().nonZeros() == 1);
}

TEST_CASE("expectation values") {
    SpaceLayout l = atom_mode_layout(2);
    const DensityOperator vac = basis_state(l, 0);

    CHECK(std::abs(expectation(vac, identity_operator(l)) - Complex(1.0)) < 1e-14);

    const Operator a = embed(annihilation(2, "mode"), l, "mode");
    CHECK(std::abs(expectation(vac, a.adjoint() * a)) < 1e-14);

    // maximally mixed atom: <sigma+ sigma-> = 0.5
    SpaceLayout atom = single_space("atom", 2);
    DensityOperator mixed(atom, DenseMatrix::Identity(2, 2) * 0.5);
    const Operator sp = transition(atom, "atom", 0, 1);
    CHECK(std::abs(expectation(mixed, sp * sp.adjoint()) - Complex(0.5)) < 1e-14);

    CHECK_THROWS_AS(expectation(vac, sp * sp.adjoint()), std::invalid_argument);
}

TEST_CASE("density operator validation") {
    SpaceLayout l = single_space("a", 2);
    DenseMatrix bad_trace = DenseMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator(l, bad_trace), std::invalid_argument);

    DenseMatrix non_herm(2, 2);
    non_herm << 0.5, 0.1, 0.0, 0.5;
    CHECK_THROWS_AS(DensityOperator(l, non_herm), std::invalid_argument);

    DenseMatrix negative(2, 2);
    negative << 1.01, 0.0, 0.0, -0.01;
    CHECK_THROWS_AS(DensityOperator(l, negative), std::invalid_argument);

    DenseMatrix ok = DenseMatrix::Identity(2, 2) * 0.5;
    CHECK_NOTHROW(DensityOperator(l, ok));
}
