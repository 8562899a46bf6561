#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <set>

#include "turyn/quadspace.hpp"

using namespace turyn;

namespace {

F2Vector bits_of(std::uint64_t x, std::size_t n) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((x >> i) & 1) v.set(i, true);
    return v;
}

std::size_t count_singular(const QuadraticSpace& sp) {
    std::size_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << sp.dim()); ++x)
        if (!sp.q(bits_of(x, sp.dim()))) ++count;
    return count;
}

std::map<int, std::size_t> q_histogram(const QuadraticSpace& sp) {
    std::map<int, std::size_t> h;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << sp.dim()); ++x)
        ++h[sp.q(bits_of(x, sp.dim())) ? 1 : 0];
    return h;
}

F2Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

// (e1, e2) coordinates per hyperbolic block: e1 = "10", e2 = "01"
F2Vector triple(const std::string& b1, const std::string& b2, const std::string& b3) {
    return F2Vector::from_bits(b1 + b2 + b3);
}

}  // namespace

TEST_CASE("hyperbolic plane values") {
    QuadraticSpace sp = hyperbolic_space(1);
    CHECK(sp.dim() == 2);
    CHECK(!sp.q(F2Vector::from_bits("01")));
    CHECK(!sp.q(F2Vector::from_bits("10")));
    CHECK(sp.q(F2Vector::from_bits("11")));
    CHECK(sp.bform(F2Vector::from_bits("10"), F2Vector::from_bits("01")));
    CHECK(!sp.q(F2Vector::from_bits("00")));
}

TEST_CASE("singular vector counts match the closed form") {
    // (2^(m-1)+1)(2^m-1)+1 including zero
    for (std::size_t m = 1; m <= 5; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        std::size_t expected = ((std::size_t{1} << (m - 1)) + 1) * ((std::size_t{1} << m) - 1) + 1;
        CHECK(count_singular(sp) == expected);
    }
    CHECK(count_singular(hyperbolic_space(5)) == 528);  // 2^9 + 2^4
}

TEST_CASE("standard phi/psi are complementary maximal totally singular") {
    for (std::size_t m : {1, 3, 5}) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace phi = standard_phi(sp), psi = standard_psi(sp);
        CHECK(is_maximal_totally_singular(sp, phi));
        CHECK(is_maximal_totally_singular(sp, psi));
        CHECK(subspace_intersect(phi, psi).dim() == 0);
    }
}

TEST_CASE("bform is the polarization of q and is bilinear") {
    std::mt19937_64 rng(11);
    QuadraticSpace sp = hyperbolic_space(4);
    for (int trial = 0; trial < 300; ++trial) {
        F2Vector u = random_vector(rng, 8), v = random_vector(rng, 8), w = random_vector(rng, 8);
        CHECK(sp.bform(u, v) == (sp.q(u ^ v) ^ sp.q(u) ^ sp.q(v)));
        CHECK(sp.bform(u ^ v, w) == (sp.bform(u, w) ^ sp.bform(v, w)));
        CHECK(sp.bform(u, v) == sp.bform(v, u));
        CHECK(!sp.bform(u, u));
    }
}

TEST_CASE("w values") {
    QuadraticSpace sp = hyperbolic_space(1);
    CHECK(sp.w(F2Vector(2)) == 0);
    CHECK(sp.w(F2Vector::from_bits("11")) == 1);
    CHECK(sp.w(F2Vector::from_bits("10")) == 2);
}

TEST_CASE("w^k evaluation and parity") {
    QuadraticSpace sp = hyperbolic_space(1);
    CHECK(wk_eval(sp, 3, F2Vector(6)) == 0);
    CHECK(wk_eval(sp, 3, triple("10", "10", "00")) == 4);
    CHECK(wk_eval(sp, 3, triple("11", "11", "01")) == 4);  // 1 + 1 + 2

    QuadraticSpace sum = direct_sum_k(sp, 3);
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        F2Vector v = random_vector(rng, 6);
        CHECK(wk_eval(sp, 3, v) % 2 == (sum.q(v) ? 1 : 0));
    }
}

TEST_CASE("w^k = 1 and 2 have the shapes forced by block weights") {
    QuadraticSpace sp = hyperbolic_space(2);
    for (std::uint64_t x = 0; x < (1u << 8); ++x) {
        F2Vector v = bits_of(x, 8);
        WeightProfile p = wk_profile(sp, 2, v);
        std::size_t nonzero = 0, ones = 0, twos = 0;
        for (int wb : p.block_weights) {
            if (wb) ++nonzero;
            if (wb == 1) ++ones;
            if (wb == 2) ++twos;
        }
        if (p.total == 1) {
            CHECK(nonzero == 1);
            CHECK(ones == 1);
        }
        if (p.total == 2) {
            bool one_singular_block = (nonzero == 1 && twos == 1);
            bool two_nonsingular_blocks = (nonzero == 2 && ones == 2);
            CHECK((one_singular_block || two_nonsingular_blocks));
        }
    }
}

TEST_CASE("direct sum of k copies") {
    QuadraticSpace sp = hyperbolic_space(1);
    CHECK(direct_sum_k(sp, 1) == sp);
    QuadraticSpace sum = direct_sum_k(sp, 3);
    CHECK(sum.dim() == 6);
    CHECK(q_histogram(sum) == q_histogram(hyperbolic_space(3)));
}

TEST_CASE("totally singular predicates") {
    QuadraticSpace sp = hyperbolic_space(1);
    CHECK(is_totally_singular(sp, Subspace(2)));
    CHECK(!is_maximal_totally_singular(sp, Subspace(2)));
    CHECK(!is_totally_singular(sp, Subspace(2, F2Matrix::from_strings({"11"}))));
    for (std::size_t m = 1; m <= 5; ++m) {
        QuadraticSpace h = hyperbolic_space(m);
        CHECK(is_maximal_totally_singular(h, standard_phi(h)));
        CHECK(is_maximal_totally_singular(h, maximal_totally_singular(h)));
    }
}

TEST_CASE("S(Phi,Psi;3) for m=1 is the expected 8-element subspace") {
    QuadraticSpace sp = hyperbolic_space(1);
    Subspace s = build_S(sp, standard_phi(sp), standard_psi(sp), 3);
    CHECK(s.dim() == 3);
    std::set<F2Vector> elems;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        F2Vector v(6);
        for (std::size_t j = 0; j < 3; ++j)
            if ((mask >> j) & 1) v ^= s.basis().row(j);
        elems.insert(v);
    }
    std::set<F2Vector> expected = {
        triple("00", "00", "00"), triple("10", "10", "00"), triple("10", "00", "10"),
        triple("00", "10", "10"), triple("01", "01", "01"), triple("11", "11", "01"),
        triple("11", "01", "11"), triple("01", "11", "11")};
    CHECK(elems == expected);
}

TEST_CASE("S(Phi,Psi;k) dimension is m*k, including intersecting pairs") {
    std::mt19937_64 rng(13);
    for (std::size_t m = 1; m <= 4; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        for (std::size_t k = 1; k <= 3; ++k) {
            CHECK(build_S(sp, standard_phi(sp), standard_psi(sp), k).dim() == m * k);
            // fully intersecting pair
            CHECK(build_S(sp, standard_phi(sp), standard_phi(sp), k).dim() == m * k);
        }
    }
    // k = 1 with a complementary pair reduces to Psi
    QuadraticSpace sp = hyperbolic_space(3);
    CHECK(build_S(sp, standard_phi(sp), standard_psi(sp), 1) == standard_psi(sp));
}

TEST_CASE("S(Phi,Psi;k) for random pairs with arbitrary intersections") {
    // random maximal totally singular pairs realize all intersection
    // dimensions; the span dimension and total singularity must not depend
    // on them
    std::mt19937_64 rng(14);
    for (std::size_t m = 2; m <= 5; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        std::set<std::size_t> seen_intersections;
        for (int trial = 0; trial < 25; ++trial) {
            auto random_mts = [&] {
                Subspace s = standard_phi(sp);
                for (int i = 0; i < 10; ++i) {
                    F2Vector a = random_vector(rng, sp.dim());
                    if (sp.q(a)) {
                        // transvection image, computed row by row
                        F2Matrix rows(0, sp.dim());
                        for (std::size_t r = 0; r < s.dim(); ++r) {
                            F2Vector v = s.basis().row(r);
                            if (sp.bform(v, a)) v ^= a;
                            rows.append_row(std::move(v));
                        }
                        s = Subspace(sp.dim(), rows);
                    }
                }
                return s;
            };
            Subspace phi = random_mts(), psi = random_mts();
            seen_intersections.insert(subspace_intersect(phi, psi).dim());
            for (std::size_t k = 1; k <= 3; ++k) {
                Subspace s = build_S(sp, phi, psi, k);
                CHECK(s.dim() == m * k);
                CHECK(is_maximal_totally_singular(direct_sum_k(sp, k), s));
            }
        }
        CHECK(seen_intersections.size() > 1);
    }
}

TEST_CASE("build_S output is maximal totally singular") {
    for (std::size_t m = 1; m <= 4; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace s = build_S(sp, standard_phi(sp), standard_psi(sp), 3);
        CHECK(is_maximal_totally_singular(direct_sum_k(sp, 3), s));
    }
}

TEST_CASE("build_S rejects non-maximal inputs") {
    QuadraticSpace sp = hyperbolic_space(2);
    CHECK_THROWS_AS(build_S(sp, Subspace(4), standard_psi(sp), 3), std::invalid_argument);
}

TEST_CASE("weight condition: holds for k=3 complementary pairs, fails for k=2") {
    for (std::size_t m = 1; m <= 3; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace s3 = build_S(sp, standard_phi(sp), standard_psi(sp), 3);
        CHECK(check_cond1(sp, 3, s3).ok);
    }
    QuadraticSpace sp = hyperbolic_space(1);
    Subspace s2 = build_S(sp, standard_phi(sp), standard_psi(sp), 2);
    Cond1Result r = check_cond1(sp, 2, s2);
    CHECK(!r.ok);
    CHECK(wk_eval(sp, 2, r.violation) < 4);
    // first violation in coefficient order: basis is {(e1,e1),(e2,e2)}, and
    // the first failing combination is their sum
    CHECK(r.violation == F2Vector::from_bits("1111"));
}

TEST_CASE("classification of weight-4 vectors matches the closed forms") {
    for (std::size_t m = 1; m <= 5; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace phi = standard_phi(sp), psi = standard_psi(sp);
        Subspace s = build_S(sp, phi, psi, 3);
        W4Classification cls = classify_w4(sp, phi, s);
        const std::size_t t1 = 3 * ((std::size_t{1} << m) - 1);
        const std::size_t t2 = t1 * (std::size_t{1} << (2 * m - 2));
        CHECK(cls.type1.size() == t1);
        CHECK(cls.type2.size() == t2);
    }
}

TEST_CASE("m=1 classification lists both types explicitly") {
    QuadraticSpace sp = hyperbolic_space(1);
    Subspace s = build_S(sp, standard_phi(sp), standard_psi(sp), 3);
    W4Classification cls = classify_w4(sp, standard_phi(sp), s);
    CHECK(cls.type1.size() == 3);
    CHECK(cls.type2.size() == 3);
    for (const auto& v : cls.type1) CHECK(wk_eval(sp, 3, v) == 4);
    for (const auto& v : cls.type2) CHECK(wk_eval(sp, 3, v) == 4);
}
