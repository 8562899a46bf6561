#include "doctest.h"

#include <bit>
#include <random>

#include <stdexcept>
#include <vector>

#include "turyn/latticeforge.hpp"
#include "turyn/orthogroup.hpp"

using namespace turyn;

namespace {

ZMat zdiag(std::vector<long> d) {
    ZMat g(d.size(), std::vector<mpz_class>(d.size(), 0));
    for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return g;
}

// box-enumeration oracle for small ranks: counts z in [-box, box]^n with
// z^T gram2 z == 2*norm
long box_count(const ZMat& gram2, long norm, long box) {
    const std::size_t n = gram2.size();
    std::vector<long> z(n, -box);
    long count = 0;
    for (;;) {
        mpz_class val = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) val += gram2[i][j] * z[i] * z[j];
        if (val == 2 * norm) ++count;
        std::size_t i = 0;
        while (i < n && z[i] == box) z[i++] = -box;
        if (i == n) break;
        ++z[i];
    }
    return count;
}

}  // namespace

TEST_CASE("exact lattice basics") {
    ExactLattice z2(zdiag({2, 2}));  // Z^2
    CHECK(z2.rank() == 2);
    CHECK(!z2.is_even());
    CHECK(z2.det_gram() == 1);
    CHECK(z2.is_unimodular());

    ExactLattice even(zdiag({4, 4}));  // sqrt2 Z^2
    CHECK(even.is_even());
    CHECK(even.det_gram() == 4);

    CHECK_THROWS_AS(ExactLattice(zdiag({2, -2})), std::invalid_argument);
    ZMat asym = zdiag({2, 2});
    asym[0][1] = 1;
    CHECK_THROWS_AS(ExactLattice{asym}, std::invalid_argument);
}

TEST_CASE("shifted enumeration agrees with a parity-filtered box oracle") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        // random positive definite integer form 2(B^T B + c I); the ridge
        // term bounds the minimum eigenvalue below by 2c, so every solution
        // of value <= 40 has |z_i| <= sqrt(20/c) and the box sweep below is
        // guaranteed complete
        const std::size_t n = 2 + trial % 2;
        const long c = 1 + static_cast<long>(rng() % 3);
        ZMat b(n, std::vector<mpz_class>(n));
        for (auto& row : b)
            for (auto& e : row) e = static_cast<long>(rng() % 5) - 2;
        ZMat g(n, std::vector<mpz_class>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t t = 0; t < n; ++t) g[i][j] += 2 * b[t][i] * b[t][j];
            g[i][i] += 2 * c;
        }
        ExactLattice l(g);

        std::vector<int> parity(n);
        for (auto& p : parity) p = static_cast<int>(rng() % 2);
        const long budget = 40;
        auto counts = form_value_counts(l, parity, budget);

        // parity-filtered box sweep
        std::map<long, long> oracle;
        const long box = 8;
        std::vector<long> z(n, -box);
        for (;;) {
            bool par_ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (((z[i] % 2) + 2) % 2 != parity[i]) par_ok = false;
            if (par_ok) {
                mpz_class val = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) val += g[i][j] * z[i] * z[j];
                if (val <= budget) ++oracle[static_cast<long>(val.get_si())];
            }
            std::size_t i = 0;
            while (i < n && z[i] == box) z[i++] = -box;
            if (i == n) break;
            ++z[i];
        }
        CHECK(counts == oracle);

        // unconstrained mode against the same sweep
        auto free_counts = form_value_counts(l, {}, budget);
        std::map<long, long> free_oracle;
        std::fill(z.begin(), z.end(), -box);
        for (;;) {
            mpz_class val = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) val += g[i][j] * z[i] * z[j];
            if (val <= budget) ++free_oracle[static_cast<long>(val.get_si())];
            std::size_t i = 0;
            while (i < n && z[i] == box) z[i++] = -box;
            if (i == n) break;
            ++z[i];
        }
        CHECK(free_counts == free_oracle);
    }
}

TEST_CASE("short vector counts agree with box enumeration on small lattices") {
    // Z^2, a stretched lattice, and one with off-diagonal Gram entries
    std::vector<ZMat> grams = {zdiag({2, 2}), zdiag({2, 6}), zdiag({4, 4, 8})};
    ZMat skew = zdiag({4, 6});
    skew[0][1] = skew[1][0] = 2;
    grams.push_back(skew);
    for (const auto& g : grams) {
        ExactLattice l(g);
        for (long norm = 0; norm <= 6; ++norm)
            CHECK(count_norm_vectors(l, norm) == box_count(g, norm, 8));
    }
}

TEST_CASE("sqrt2 E8: determinant, evenness, minimum") {
    ExactLattice l = sqrt2_e8();
    CHECK(l.rank() == 8);
    CHECK(l.is_even());
    CHECK(l.det_gram() == 256);  // 2^(m/2) with m = 8 glue classes... det = 2^8
    CHECK(count_norm_vectors(l, 2) == 0);
    CHECK(count_norm_vectors(l, 4) == 240);
}

TEST_CASE("glue space of sqrt2 E8") {
    GlueSpaceL glue(sqrt2_e8());
    CHECK(glue.glue_dim() == 8);
    CHECK(glue.space().dim() == 8);
    CHECK(glue.space().witt_index() == 4);
}

TEST_CASE("glue space of sqrt2 (E8 + E8) has dimension 16") {
    GlueSpaceL glue(orthogonal_sum(sqrt2_e8(), sqrt2_e8()));
    CHECK(glue.glue_dim() == 16);
}

TEST_CASE("glue space rejects bad inputs") {
    // sqrt2 Z^8: dual norms are half-integral
    CHECK_THROWS_AS(GlueSpaceL(ExactLattice(zdiag({4, 4, 4, 4, 4, 4, 4, 4}))),
                    std::invalid_argument);
    // odd lattice
    CHECK_THROWS_AS(GlueSpaceL(ExactLattice(zdiag({2, 2, 2, 2, 2, 2, 2, 2}))),
                    std::invalid_argument);
    // wrong rank
    CHECK_THROWS_AS(GlueSpaceL(ExactLattice(zdiag({4, 4}))), std::invalid_argument);
}

TEST_CASE("coset norm profiles: the three constants and the minimum rule") {
    GlueSpaceL glue(sqrt2_e8());
    CHECK(coset_norm_profile(glue, F2Vector(8), 4)[4] == 240);
    CHECK(coset_norm_profile(glue, F2Vector(8), 4)[0] == 1);
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
        F2Vector u(8);
        for (std::size_t i = 0; i < 8; ++i)
            if ((bits >> i) & 1) u.set(i, true);
        auto prof = coset_norm_profile(glue, u, 4);
        int w = glue.space().w(u);
        if (w == 1) CHECK(prof[1] == 2);
        if (w == 2) CHECK(prof[2] == 16);
        // minimum norm of the coset equals the weight exactly for this lattice
        long minn = 0;
        while (prof[minn] == 0) ++minn;
        CHECK(minn == w);
    }
}

TEST_CASE("coset profiles sum to the dual lattice theta coefficients") {
    GlueSpaceL glue(sqrt2_e8());
    // dual of sqrt2 E8: doubled Gram = inverse of the E8 Cartan matrix
    QMat qinv = glue.base().gram_inverse();
    ZMat dual_gram2(8, std::vector<mpz_class>(8));
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            mpq_class e = 2 * qinv[i][j];
            REQUIRE(e.get_den() == 1);
            dual_gram2[i][j] = e.get_num();
        }
    ExactLattice dual(dual_gram2);
    for (long t = 0; t <= 4; ++t) {
        long total = 0;
        for (std::uint64_t bits = 0; bits < 256; ++bits) {
            F2Vector u(8);
            for (std::size_t i = 0; i < 8; ++i)
                if ((bits >> i) & 1) u.set(i, true);
            total += coset_norm_profile(glue, u, 4)[t];
        }
        CHECK(total == count_norm_vectors(dual, t));
    }
    // classical theta coefficients of E8 at the matching scale
    CHECK(count_norm_vectors(dual, 1) == 240);
    CHECK(count_norm_vectors(dual, 2) == 2160);
}

TEST_CASE("leech build certificate") {
    LeechBuild lb = build_leech(false);
    INFO(lb.cert.to_text());
    CHECK(lb.cert.pass());
    CHECK(lb.lattice.rank() == 24);
    CHECK(lb.lattice.is_even());
    CHECK(lb.lattice.is_unimodular());
}

TEST_CASE("196560 identity certificate") {
    Certificate cert = verify_196560_identity(false);
    INFO(cert.to_text());
    CHECK(cert.pass());
}

TEST_CASE("norm-6 count of the glued lattice by coset convolution") {
    LeechBuild lb = build_leech(false);
    const std::size_t m = lb.glue.glue_dim();
    std::vector<std::vector<long>> profiles(std::size_t{1} << m);
    for (std::size_t bits = 0; bits < profiles.size(); ++bits) {
        F2Vector u(m);
        for (std::size_t i = 0; i < m; ++i)
            if ((bits >> i) & 1) u.set(i, true);
        profiles[bits] = coset_norm_profile(lb.glue, u, 6);
    }
    long total = 0;
    F2Vector v(3 * m);
    for (std::uint64_t i = 0;; ++i) {
        auto key = [&](std::size_t b) {
            std::size_t bits = 0;
            for (std::size_t t = 0; t < m; ++t)
                if (v.get(b * m + t)) bits |= std::size_t{1} << t;
            return bits;
        };
        const auto &p1 = profiles[key(0)], &p2 = profiles[key(1)], &p3 = profiles[key(2)];
        for (long a = 0; a <= 6; ++a)
            for (long b = 0; a + b <= 6; ++b) total += p1[a] * p2[b] * p3[6 - a - b];
        if (i + 1 >= (std::uint64_t{1} << lb.s.dim())) break;
        v ^= lb.s.basis().row(std::countr_zero(i + 1));
    }
    CHECK(total == 16773120);
}

TEST_CASE("glue-level stabilizer structure for the rank-24 construction") {
    LeechBuild lb = build_leech(false);
    const QuadraticSpace& sp = lb.glue.space();

    auto gens = stab_S_generators(sp, lb.phi, lb.psi, 3);
    Subspace s = lb.s;
    for (const auto& g : gens) CHECK(g.apply(s) == s);

    // the unipotent legs: 12 independent pairwise-commuting involutions
    std::vector<Isometry> legs;
    for (const auto& xm : o2h_basis(sp, lb.phi, lb.psi)) {
        Isometry u = o2h_element(sp, lb.phi, lb.psi, xm);
        std::vector<std::size_t> idperm = {0, 1, 2};
        std::vector<Isometry> b1 = {u, u, Isometry::identity(sp)};
        std::vector<Isometry> b2 = {u, Isometry::identity(sp), u};
        legs.push_back(BlockIsometry(idperm, b1).flatten());
        legs.push_back(BlockIsometry(idperm, b2).flatten());
    }
    CHECK(legs.size() == 12);
    for (const auto& a : legs) {
        CHECK(a.compose(a).mat() == F2Matrix::identity(24));
        for (const auto& b : legs) CHECK(a.compose(b) == b.compose(a));
    }
    // F2-rank of the group generated: products of commuting involutions
    // g = 1 + N with N1 N2 = 0, so rank of the span of the N parts decides
    F2Matrix nparts(0, 24 * 24);
    for (const auto& a : legs) {
        F2Vector flat(24 * 24);
        for (std::size_t r = 0; r < 24; ++r)
            for (std::size_t c = 0; c < 24; ++c)
                if ((a.mat().get(r, c) != (r == c))) flat.set(r * 24 + c, true);
        nparts.append_row(std::move(flat));
    }
    CHECK(rank(nparts) == 12);

    // Levi closure on the glue space is all of SL_4(2)
    std::vector<Isometry> levis;
    for (const auto& alpha : sl_generators(4))
        levis.push_back(levi_lift(sp, lb.phi, lb.psi, alpha));
    CHECK(group_closure(sp, levis).size() == 20160);
}

TEST_CASE("sublattice determinant telescope for the glued construction") {
    // each independent glue class halves the determinant by 4
    GlueSpaceL glue(sqrt2_e8());
    Subspace phi = maximal_totally_singular(glue.space());
    Subspace psi = find_complement(glue.space(), phi);
    Subspace s = build_S(glue.space(), phi, psi, 3);
    mpq_class expected(1);
    expected *= mpz_class(1) << 24;  // det of the orthogonal sum of three copies
    for (std::size_t j = 0; j <= s.dim(); ++j) {
        F2Matrix partial(0, s.ambient_dim());
        for (std::size_t i = 0; i < j; ++i) partial.append_row(s.basis().row(i));
        ExactLattice lj = glue_overlattice(glue, 3, Subspace(s.ambient_dim(), partial));
        CHECK(lj.det_gram() == expected);
        expected /= 4;
    }
}
