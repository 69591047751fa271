#include <doctest.h>

#include <cmath>
#include <random>

#include "betti/error.hpp"
#include "betti/oracle.hpp"
#include "fixtures.hpp"

using namespace betti;

namespace {

ExactRational q(long long a, long long b = 1) { return ExactRational(a, b); }

ExactRational qpow(ExactRational base, int e) {
    ExactRational out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

TEST_CASE("betti examples") {
    CHECK(exact_betti(*fixtures::hollow_triangle().complex, 1) == 1);
    CHECK(exact_betti(*fixtures::k3().complex, 1) == 0);
    CHECK(exact_betti(*fixtures::c4().complex, 1) == 1);
    CHECK(exact_betti(*fixtures::octahedron().complex, 2) == 1);
    for (int k = 1; k <= 3; ++k) {
        CHECK(exact_betti(CliqueComplex(generate_disjoint_cliques(3, k)), k) == 0);
    }
    CHECK_THROWS_AS(exact_betti(*fixtures::c4().complex, 0), InputError);
    CHECK_THROWS_AS(exact_betti(*fixtures::partite_k2_m3().complex, 2, 10), ResourceError);
}

TEST_CASE("betti agrees with rational elimination") {
    for (const auto& fx : fixtures::all_fixtures()) {
        for (int k = 1; k <= 2; ++k) {
            CHECK_MESSAGE(exact_betti(*fx.complex, k) == ref::betti(fx.family, k), fx.name);
        }
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        auto g = fixtures::random_graph(9, 0.55, rng);
        const auto fam = fixtures::family_of(g);
        const CliqueComplex c(std::move(g));
        for (int k = 1; k <= 3; ++k) CHECK(exact_betti(c, k) == ref::betti(fam, k));
    }
}

TEST_CASE("exact_rank") {
    DenseMatrix<std::int64_t> m(3, 3);
    m(0, 0) = 2; m(0, 1) = 4; m(0, 2) = 6;
    m(1, 0) = 1; m(1, 1) = 2; m(1, 2) = 3;
    m(2, 0) = 0; m(2, 1) = 1; m(2, 2) = 1;
    CHECK(exact_rank(m) == 2);
    CHECK(exact_rank(DenseMatrix<std::int64_t>(0, 4)) == 0);

    // Entries near 2^40 overflow the 64-bit Bareiss products.
    const std::int64_t big = std::int64_t{1} << 40;
    DenseMatrix<std::int64_t> b(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = big + static_cast<std::int64_t>(i * 7 + j * j * 3 + (i == j ? 1 : 0));
    }
    const auto as_ref = [&] {
        ref::IntMatrix out(4, std::vector<long long>(4));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) out[i][j] = b(i, j);
        }
        return out;
    };
    CHECK(exact_rank(b) == ref::rank(as_ref()));
    for (std::size_t j = 0; j < 4; ++j) b(3, j) = b(0, j) + b(1, j) - b(2, j);
    CHECK(exact_rank(b) == ref::rank(as_ref()));
    CHECK(exact_rank(b) <= 3);
}

TEST_CASE("normalized trace examples") {
    for (int l = 1; l <= 6; ++l) {
        const auto v = exact_normalized_trace(*fixtures::hollow_triangle().complex, 1, l);
        REQUIRE(v.exact);
        CHECK(*v.exact == q(1, 3));
        CHECK(exact_normalized_trace(*fixtures::k3().complex, 1, l).value == 0.0);
    }
    const auto c4 = exact_normalized_trace(*fixtures::c4().complex, 1, 6);
    CHECK(*c4.exact == q(33, 128));
    CHECK(c4.value == 0.2578125);
    CHECK(*exact_normalized_trace(*fixtures::c4().complex, 1, 3).exact == q(5, 16));

    for (const auto& fx : fixtures::all_fixtures()) {
        const auto series = normalized_trace_series(*fx.complex, fx.k, 4);
        REQUIRE(series.size() == 4);
        for (int l = 1; l <= 4; ++l) {
            CHECK_MESSAGE(*series[l - 1].exact == ref::normalized_trace(fx.family, fx.k, l), fx.name);
        }
    }
    CHECK_THROWS_AS(exact_normalized_trace(*fixtures::partite_k2_m3().complex, 2, 2, 5), ResourceError);
    CHECK_THROWS_AS(exact_normalized_trace(*fixtures::c4().complex, 1, 0), InputError);
}

TEST_CASE("floating trace path matches exact") {
    for (const auto& fx : {fixtures::c4(), fixtures::octahedron(), fixtures::partite_k2_m3()}) {
        const auto exact = normalized_trace_series(*fx.complex, fx.k, 5);
        const auto approx = normalized_trace_series(*fx.complex, fx.k, 5, kDefaultDenseGuard, 0);
        const auto m2 = second_moment_series(*fx.complex, fx.k, 5, kDefaultDenseGuard, 0);
        const auto m2_exact = second_moment_series(*fx.complex, fx.k, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK_FALSE(approx[i].exact.has_value());
            CHECK(approx[i].value == doctest::Approx(exact[i].value).epsilon(1e-12));
            CHECK(m2[i].value == doctest::Approx(m2_exact[i].value).epsilon(1e-12));
        }
    }
}

TEST_CASE("second moment examples") {
    for (int m = 1; m <= 3; ++m) {
        for (int k = 1; k <= 2; ++k) {
            const CliqueComplex c(generate_disjoint_cliques(m, k));
            const long long n = static_cast<long long>(m) * (k + 1);
            for (int l = 1; l <= 4; ++l) {
                CHECK(*exact_second_moment(c, k, l).exact == qpow(1 - q(k + 1, n), 2 * l));
            }
        }
    }
    for (int l = 1; l <= 5; ++l) {
        CHECK(*exact_second_moment(*fixtures::hollow_triangle().complex, 1, l).exact == q(1, 3));
        // Variance of f on the hollow triangle.
        const auto mean = *exact_normalized_trace(*fixtures::hollow_triangle().complex, 1, l).exact;
        CHECK(*exact_second_moment(*fixtures::hollow_triangle().complex, 1, l).exact - mean * mean == q(2, 9));
    }
    CHECK(*exact_second_moment(*fixtures::c4().complex, 1, 3).exact == q(5, 16));
    CHECK(*exact_second_moment(*fixtures::two_triangles().complex, 2, 3).exact == q(1, 64));
}

TEST_CASE("path enumeration cross-check") {
    for (const auto& fx : fixtures::all_fixtures()) {
        const auto size = fx.complex->enumerate(fx.k).size();
        if (size == 0 || size > 6) continue;
        for (int l = 1; l <= 4; ++l) {
            const auto pm = enumerate_path_moments(*fx.complex, fx.k, l);
            CHECK_MESSAGE(pm.mean == *exact_normalized_trace(*fx.complex, fx.k, l).exact, fx.name);
            CHECK_MESSAGE(pm.second_moment == *exact_second_moment(*fx.complex, fx.k, l).exact, fx.name);
            CHECK_MESSAGE(pm.second_moment == ref::second_moment_by_paths(fx.family, fx.k, l), fx.name);
        }
    }
    CHECK_THROWS_AS(enumerate_path_moments(*fixtures::c4().complex, 1, 5), ResourceError);
    CHECK_THROWS_AS(enumerate_path_moments(*fixtures::partite_k2_m3().complex, 2, 1), ResourceError);
}

TEST_CASE("variance bound examples") {
    for (int k = 1; k <= 2; ++k) {
        for (int m = 2; m <= 3; ++m) {
            const CliqueComplex c(generate_complete_partite(k, m));
            const long long n = static_cast<long long>(m) * (k + 1);
            const auto base = qpow(1 - q(k + 1, n), 2);
            for (int l = 1; l <= 3; ++l) {
                const auto b = variance_bounds(c, k, l);
                CHECK(b.lower_exact == qpow(q(2), l) * qpow(base, l));
                CHECK(b.upper_exact == qpow(q(4), l) * qpow(base, l));
                CHECK(b.cap_clique == doctest::Approx(std::pow(4.0, l) * to_double(qpow(base, l))));
                CHECK(b.cap_general == std::pow(k + 2.0, 2.0 * l));
            }
        }
    }
    for (int l = 1; l <= 3; ++l) {
        const CliqueComplex c(generate_disjoint_cliques(3, 2));
        const auto b = variance_bounds(c, 2, l);
        CHECK(b.lower_exact == qpow(1 - q(3, 9), 2 * l));
        CHECK(b.upper_exact == b.lower_exact);
    }
    const auto h = variance_bounds(*fixtures::hollow_triangle().complex, 1, 2);
    CHECK(h.lower_exact == q(1, 9));
    CHECK(h.upper_exact == q(1));
    REQUIRE(h.exact_second_moment);
    CHECK(*h.exact_second_moment->exact == q(1, 3));
    CHECK(h.max_up_degree == 0);
    CHECK(h.min_degree == 2);
    CHECK(h.max_degree == 2);
    CHECK(h.growth_upper == doctest::Approx(std::pow(5.0 / 3.0, 4)));
    CHECK(h.growth_lower == doctest::Approx(std::pow(5.0 / 3.0, 2)));
    CHECK_FALSE(variance_bounds(*fixtures::hollow_triangle().complex, 1, 2, false).exact_second_moment);
}

TEST_CASE("second moment lies between the bounds on random instances") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; checked < 120 && trial < 1000; ++trial) {
        const std::size_t n = 5 + trial % 6;
        const int k = 1 + trial % 2;
        const double p = 0.3 + 0.1 * (trial % 5);
        const CliqueComplex c(fixtures::random_graph(n, p, rng));
        if (c.enumerate(k).empty()) continue;
        const int l = 1 + trial % 3;
        const auto b = variance_bounds(c, k, l);
        REQUIRE(b.exact_second_moment);
        const auto& m2 = *b.exact_second_moment->exact;
        CHECK(b.lower_exact <= m2);
        CHECK(m2 <= b.upper_exact);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("spectral examples") {
    const auto h = spectral_summary(*fixtures::hollow_triangle().complex, 1);
    REQUIRE(h.eigenvalues.size() == 3);
    CHECK(h.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-9).scale(1));
    CHECK(h.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(h.eigenvalues[2] == doctest::Approx(3.0));
    CHECK(h.nullity == 1);
    REQUIRE(h.gap);
    CHECK(*h.gap == doctest::Approx(3.0));

    const auto c4 = spectral_summary(*fixtures::c4().complex, 1);
    const std::vector<double> want{0, 2, 2, 4};
    REQUIRE(c4.eigenvalues.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c4.eigenvalues[i] - want[i]) < 1e-9);
    CHECK(*c4.gap == doctest::Approx(2.0));

    const auto k3 = spectral_summary(*fixtures::k3().complex, 1);
    CHECK(k3.nullity == 0);
    for (double e : k3.eigenvalues) CHECK(e == doctest::Approx(3.0));

    DenseMatrix<double> m(3, 3);
    m(0, 1) = m(1, 0) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    CHECK_THROWS_AS(symmetric_eigenvalues(m, 1e-10, 0), NumericError);
    const auto ev = symmetric_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(std::abs(ev[1]) < 1e-12);
    CHECK(ev[2] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("nullity matches betti and eigenvalues lie in [0, n]") {
    std::vector<fixtures::Fixture> instances = fixtures::all_fixtures();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 25; ++i) {
        instances.push_back(fixtures::from_graph("random", fixtures::random_graph(8 + i % 5, 0.5, rng), 1 + i % 2));
        instances.push_back(fixtures::random_explicit(8, 5, 4, 1 + i % 2, rng));
    }
    for (const auto& fx : instances) {
        const auto size = fx.complex->enumerate(fx.k).size();
        if (size == 0 || size > 200) continue;
        const auto s = spectral_summary(*fx.complex, fx.k);
        CHECK_MESSAGE(s.nullity == exact_betti(*fx.complex, fx.k), fx.name);
        const double n = static_cast<double>(fx.complex->vertex_count());
        for (double e : s.eigenvalues) {
            CHECK(e >= -1e-9);
            CHECK(e <= n + 1e-9);
        }
    }
}

TEST_CASE("trace decreases toward the normalized betti number") {
    for (const auto& fx : fixtures::all_fixtures()) {
        const auto series = normalized_trace_series(*fx.complex, fx.k, 12);
        const auto size = static_cast<long long>(fx.complex->enumerate(fx.k).size());
        const ExactRational floor(static_cast<long long>(exact_betti(*fx.complex, fx.k)), size);
        const auto summary = spectral_summary(*fx.complex, fx.k);
        const double n = static_cast<double>(fx.complex->vertex_count());
        for (std::size_t i = 0; i < series.size(); ++i) {
            CHECK(*series[i].exact >= floor);
            if (i > 0) CHECK(*series[i].exact <= *series[i - 1].exact);
            if (summary.gap) {
                const double slack = std::pow(1.0 - *summary.gap / n, static_cast<double>(i + 1)) * (1.0 - to_double(floor));
                CHECK(series[i].value - to_double(floor) <= slack + 1e-12);
            }
        }
    }
}

TEST_CASE("oracle report") {
    const std::vector<int> lengths{1, 3};
    const auto r = oracle_report(*fixtures::c4().complex, 1, lengths);
    CHECK(r.n == 4);
    CHECK(r.simplex_count == 4);
    CHECK(r.betti == 1);
    CHECK(r.normalized_betti == 0.25);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[1].length == 3);
    CHECK(*r.rows[1].normalized_trace.exact == q(5, 16));
    CHECK(*r.rows[1].second_moment.exact == q(5, 16));
}
