#include <doctest.h>

#include <sstream>

#include "betti/error.hpp"
#include "betti/laplacian.hpp"
#include "fixtures.hpp"

using namespace betti;

namespace {

ref::Q to_q(const Rational& r) { return ref::Q(r.numerator(), r.denominator()); }

std::vector<fixtures::Fixture> instances() {
    auto cases = fixtures::all_fixtures();
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 30; ++t) {
        cases.push_back(fixtures::from_graph("er", fixtures::random_graph(8 + t % 5, 0.4 + 0.2 * (t % 3), rng), 1 + t % 3));
    }
    for (int t = 0; t < 15; ++t) cases.push_back(fixtures::random_explicit(8, 5, 4, 1 + t % 2, rng));
    return cases;
}

}  // namespace

TEST_CASE("laplacian_entry examples") {
    const auto k3 = fixtures::k3();
    CHECK(laplacian_entry(*k3.complex, Simplex({0, 1}), Simplex({0, 1})) == 3);
    const auto hollow = fixtures::hollow_triangle();
    CHECK(laplacian_entry(*hollow.complex, Simplex({0, 1}), Simplex({0, 2})) == 1);
    CHECK(laplacian_entry(*hollow.complex, Simplex({0, 1}), Simplex({1, 2})) == -1);
    const auto c4 = fixtures::c4();
    CHECK(laplacian_entry(*c4.complex, Simplex({0, 1}), Simplex({2, 3})) == 0);
    CHECK_THROWS_AS(laplacian_entry(*c4.complex, Simplex({0, 2}), Simplex({0, 1})), InputError);
    CHECK_THROWS_AS(laplacian_entry(*c4.complex, Simplex({0, 1}), Simplex({0})), InputError);
    CHECK_THROWS_AS(laplacian_entry(*c4.complex, Simplex({0}), Simplex({1})), InputError);
}

TEST_CASE("h_entry and column norms") {
    const auto hollow = fixtures::hollow_triangle();
    CHECK(h_entry(*hollow.complex, Simplex({0, 1}), Simplex({0, 1})) == Rational(1, 3));
    CHECK(h_entry(*fixtures::k3().complex, Simplex({0, 1}), Simplex({0, 1})) == Rational(0));
    const auto c4 = fixtures::c4();
    const Rational e = h_entry(*c4.complex, Simplex({0, 1}), Simplex({0, 3}));
    CHECK(abs(e) == Rational(1, 4));
    CHECK(to_q(e) == ref::h_matrix(c4.family, 1)[1][0]);

    for (const auto& s : hollow.complex->enumerate(1)) CHECK(column_one_norm(*hollow.complex, s) == Rational(1));
    for (const auto& s : fixtures::k3().complex->enumerate(1)) CHECK(column_one_norm(*fixtures::k3().complex, s) == Rational(0));
    for (int k = 1; k <= 3; ++k) {
        for (int m = 1; m <= 3; ++m) {
            const CliqueComplex c(generate_complete_partite(k, m));
            const std::int64_t n = (k + 1) * m;
            for (const auto& s : c.enumerate(k)) CHECK(column_one_norm(c, s) == Rational(2) * (Rational(1) - Rational(k + 1, n)));
        }
    }
    CHECK_THROWS_AS(column_one_norm(*c4.complex, Simplex({0, 2})), InputError);
}

TEST_CASE("boundary_matrix examples") {
    const auto hollow = fixtures::hollow_triangle();
    const auto b = boundary_matrix(*hollow.complex, 1).to_dense();
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        int plus = 0, minus = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            plus += b(r, c) == 1;
            minus += b(r, c) == -1;
        }
        CHECK(plus == 1);
        CHECK(minus == 1);
    }
    // Column {0,1}: dropping position 0 leaves {1} with -1, dropping 1 leaves {0} with +1.
    CHECK(b(0, 0) == 1);
    CHECK(b(1, 0) == -1);

    const auto k3b = boundary_matrix(*fixtures::k3().complex, 2).to_dense();
    CHECK(k3b.rows() == 3);
    CHECK(k3b.cols() == 1);
    CHECK(k3b(0, 0) == -1);
    CHECK(k3b(1, 0) == 1);
    CHECK(k3b(2, 0) == -1);

    const auto two = boundary_matrix(*fixtures::two_triangles().complex, 2).to_dense();
    CHECK(two.rows() == 6);
    CHECK(two.cols() == 2);
    for (std::size_t r = 0; r < 6; ++r) CHECK((two(r, 0) == 0) != (two(r, 1) == 0));
    for (std::size_t r = 0; r < 3; ++r) CHECK(two(r, 1) == 0);

    CHECK(boundary_matrix(*hollow.complex, 2).cols.empty());
    CHECK_THROWS_AS(boundary_matrix(*hollow.complex, 0), InputError);
}

TEST_CASE("dense assembly examples") {
    const auto hollow = fixtures::hollow_triangle();
    const auto lh = assemble_laplacian_dense(*hollow.complex, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) {
                CHECK(lh(i, j) == 2);
            } else {
                CHECK(std::abs(lh(i, j)) == 1);
            }
        }
    }
    const auto lk3 = assemble_laplacian_dense(*fixtures::k3().complex, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(lk3(i, j) == (i == j ? 3 : 0));
    }
    const auto lc4 = assemble_laplacian_dense(*fixtures::c4().complex, 1);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(lc4(i, i) == 2);
        int off = 0;
        for (std::size_t j = 0; j < 4; ++j) off += (i != j && std::abs(lc4(i, j)) == 1);
        CHECK(off == 2);
    }
    CHECK_THROWS_AS(assemble_laplacian_dense(*fixtures::octahedron().complex, 2, 7), ResourceError);
    CHECK_NOTHROW(assemble_laplacian_dense(*fixtures::octahedron().complex, 2, 8));
}

TEST_CASE("assembly, entry formula and brute force agree") {
    for (const auto& fx : instances()) {
        const auto index = fx.complex->enumerate(fx.k);
        if (index.empty()) continue;
        const auto lap = assemble_laplacian_dense(*fx.complex, index);
        const auto reference = ref::laplacian(fx.family, fx.k);
        const auto h = ref::h_matrix(fx.family, fx.k);
        for (std::size_t i = 0; i < index.size(); ++i) {
            for (std::size_t j = 0; j < index.size(); ++j) {
                CHECK(lap(i, j) == reference[i][j]);
                CHECK(laplacian_entry(*fx.complex, index[i], index[j]) == lap(i, j));
            }
            // Column norm identity and diagonal range.
            CHECK(to_q(column_one_norm(*fx.complex, index[i])) == ref::column_abs_sum(h, i));
            CHECK(h[i][i] >= 0);
            CHECK(h[i][i] <= 1);
        }
    }
}

TEST_CASE("boundary of a boundary vanishes") {
    for (const auto& fx : instances()) {
        for (int k = 1; k <= 3; ++k) {
            const auto a = boundary_matrix(*fx.complex, k).to_dense();
            const auto b = boundary_matrix(*fx.complex, k + 1).to_dense();
            if (a.cols() == 0 || b.cols() == 0) continue;
            REQUIRE(a.cols() == b.rows());
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < b.cols(); ++j) {
                    std::int64_t s = 0;
                    for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * b(t, j);
                    CHECK(s == 0);
                }
            }
        }
    }
}

TEST_CASE("csv export") {
    const auto h = assemble_scaled_h(*fixtures::hollow_triangle().complex, fixtures::hollow_triangle().complex->enumerate(1));
    std::ostringstream out;
    write_matrix_csv(out, h, 3);
    const std::string first = out.str().substr(0, out.str().find('\n'));
    CHECK(first == "0.33333333333333331,-0.33333333333333331,0.33333333333333331");
    CHECK(format_decimal(0.2578125) == "0.2578125");
    CHECK(format_decimal(1.0) == "1");
}
