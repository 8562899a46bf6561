#include "doctest.h"

#include <random>
#include <stdexcept>

#include "turyn/f2linalg.hpp"

using namespace turyn;

namespace {

F2Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) m.row(r) = random_vector(rng, cols);
    return m;
}

F2Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        F2Matrix m = random_matrix(rng, n, n);
        if (rank(m) == n) return m;
    }
}

// brute-force membership of b in the row space of m (cols <= 20)
bool row_space_contains(const F2Matrix& m, const F2Vector& b) {
    const std::size_t r = m.rows();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        F2Vector acc(m.cols());
        for (std::size_t i = 0; i < r; ++i)
            if ((mask >> i) & 1) acc ^= m.row(i);
        if (acc == b) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("vector bit access round-trips") {
    F2Vector v(130);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.get(0));
    CHECK(v.get(64));
    CHECK(v.get(129));
    CHECK(!v.get(1));
    CHECK(v.popcount() == 3);
    v.set(64, false);
    CHECK(!v.get(64));
    CHECK(v.to_string().size() == 130);
}

TEST_CASE("rref examples") {
    SUBCASE("identity") {
        auto r = rref(F2Matrix::identity(3));
        CHECK(r.rank == 3);
        CHECK(r.reduced == F2Matrix::identity(3));
    }
    SUBCASE("zero") {
        auto r = rref(F2Matrix(2, 4));
        CHECK(r.rank == 0);
        CHECK(r.reduced.is_zero());
    }
    SUBCASE("dependent rows") {
        auto m = F2Matrix::from_strings({"1100", "0110", "1010"});
        auto r = rref(m);
        CHECK(r.rank == 2);
    }
}

TEST_CASE("rref transform property: T*M = R on random matrices") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 10;
        F2Matrix m = random_matrix(rng, rows, cols);
        auto r = rref(m);
        CHECK(r.transform * m == r.reduced);
        CHECK(rank(r.transform) == rows);
    }
}

TEST_CASE("solve examples") {
    SUBCASE("identity") {
        F2Vector b = F2Vector::from_bits("101");
        auto x = solve(F2Matrix::identity(3), b);
        REQUIRE(x.has_value());
        CHECK(*x == b);
    }
    SUBCASE("inconsistent") {
        auto m = F2Matrix::from_strings({"11", "11"});
        CHECK(!solve(m, F2Vector::from_bits("01")).has_value());
    }
    SUBCASE("unique") {
        auto m = F2Matrix::from_strings({"10", "11"});
        auto x = solve(m, F2Vector::from_bits("01"));
        REQUIRE(x.has_value());
        CHECK(*x == F2Vector::from_bits("11"));
    }
}

TEST_CASE("solve agrees with brute force on small systems") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
        F2Matrix m = random_matrix(rng, rows, cols);
        F2Vector b = random_vector(rng, cols);
        auto x = solve(m, b);
        if (x) {
            CHECK(*x * m == b);
        } else {
            CHECK(!row_space_contains(m, b));
        }
    }
}

TEST_CASE("kernel examples and rank-nullity") {
    CHECK(kernel(F2Matrix::identity(4)).dim() == 0);
    CHECK(kernel(F2Matrix(4, 4)) == Subspace::full(4));
    auto k = kernel(F2Matrix::from_strings({"11", "11"}));
    CHECK(k.dim() == 1);
    CHECK(k.contains(F2Vector::from_bits("11")));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        F2Matrix m = random_matrix(rng, rows, cols);
        Subspace ker = kernel(m);
        CHECK(ker.dim() + rank(m) == rows);
        for (std::size_t i = 0; i < ker.dim(); ++i)
            CHECK((ker.basis().row(i) * m).is_zero());
    }
}

TEST_CASE("subspace lattice operations") {
    Subspace u(2, F2Matrix::from_strings({"10"}));
    Subspace v(2, F2Matrix::from_strings({"01"}));
    CHECK(subspace_intersect(u, v).dim() == 0);
    CHECK(subspace_sum(u, Subspace(2)) == u);
    CHECK(subspace_intersect(u, Subspace::full(2)) == u);

    Subspace a(3, F2Matrix::from_strings({"110", "011"}));
    Subspace b(3, F2Matrix::from_strings({"101"}));
    CHECK(subspace_intersect(a, b) == b);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 8;
        Subspace x(n, random_matrix(rng, 1 + rng() % n, n));
        Subspace y(n, random_matrix(rng, 1 + rng() % n, n));
        CHECK(subspace_sum(x, y).dim() + subspace_intersect(x, y).dim() == x.dim() + y.dim());
        CHECK(subspace_sum(x, y).contains(x));
        CHECK(x.contains(subspace_intersect(x, y)));
    }
}

TEST_CASE("subspace canonicalization under basis change") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 8;
        std::size_t d = 1 + rng() % n;
        F2Matrix b = random_matrix(rng, d, n);
        F2Matrix t = random_invertible(rng, d);
        CHECK(Subspace(n, b) == Subspace(n, t * b));
    }
}

TEST_CASE("coordinates invert the basis combination") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 3 + rng() % 8;
        Subspace s(n, random_matrix(rng, 1 + rng() % n, n));
        F2Vector coeffs = random_vector(rng, s.dim());
        F2Vector v = coeffs * s.basis();
        auto c = s.coordinates(v);
        REQUIRE(c.has_value());
        CHECK(*c == coeffs);
    }
}

TEST_CASE("inverse and multiplication") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 8;
        F2Matrix m = random_invertible(rng, n);
        CHECK(inverse(m) * m == F2Matrix::identity(n));
        CHECK(m * inverse(m) == F2Matrix::identity(n));
    }
    CHECK_THROWS_AS(inverse(F2Matrix::from_strings({"11", "11"})), std::invalid_argument);
}
