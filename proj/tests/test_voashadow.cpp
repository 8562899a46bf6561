#include "doctest.h"

#include <random>
#include <stdexcept>

#include "turyn/orthogroup.hpp"
#include "turyn/voashadow.hpp"

using namespace turyn;

namespace {

F2Vector bits_of(std::uint64_t x, std::size_t n) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((x >> i) & 1) v.set(i, true);
    return v;
}

Isometry random_isometry(std::mt19937_64& rng, const QuadraticSpace& sp) {
    Isometry g = Isometry::identity(sp);
    for (int i = 0; i < 12; ++i) {
        F2Vector a(sp.dim());
        do {
            a = bits_of(rng(), sp.dim());
        } while (!sp.q(a));
        g = g.compose(transvection(sp, a));
    }
    return g;
}

}  // namespace

TEST_CASE("module space model") {
    RVModel model = rv_space();
    CHECK(model.space.dim() == 10);
    CHECK(model.space.witt_index() == 5);
    std::size_t singular = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << 10); ++x)
        if (!model.space.q(bits_of(x, 10))) ++singular;
    CHECK(singular == 528);  // 2^9 + 2^4
}

TEST_CASE("weight-2 dimension count and its breakdown") {
    RVModel model = rv_space();
    Subspace s = build_S(model.space, standard_phi(model.space), standard_psi(model.space), 3);
    Weight2Count c = dim_weight2(model, s);
    CHECK(c.term_vacuum == 468);
    CHECK(c.term_type1 == 5952);
    CHECK(c.term_type2 == 190464);
    CHECK(c.total == 196884);
}

TEST_CASE("weight-2 dimension is invariant under block isometries") {
    RVModel model = rv_space();
    Subspace s = build_S(model.space, standard_phi(model.space), standard_psi(model.space), 3);
    std::mt19937_64 rng(41);
    std::vector<std::size_t> perms[2] = {{0, 1, 2}, {2, 0, 1}};
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Isometry> blocks;
        for (int b = 0; b < 3; ++b) blocks.push_back(random_isometry(rng, model.space));
        BlockIsometry g(perms[trial % 2], blocks);
        Weight2Count c = dim_weight2(model, g.apply(s));
        CHECK(c.total == 196884);
        CHECK(c.term_type1 == 5952);
        CHECK(c.term_type2 == 190464);
    }
}

TEST_CASE("weight-4 class counts at m = 5 match the closed forms") {
    RVModel model = rv_space();
    Subspace phi = standard_phi(model.space);
    Subspace s = build_S(model.space, phi, standard_psi(model.space), 3);
    W4Classification cls = classify_w4(model.space, phi, s);
    CHECK(cls.type1.size() == 93);
    CHECK(cls.type2.size() == 23808);
}

TEST_CASE("rejects subspaces violating the weight condition") {
    RVModel model = rv_space();
    Subspace phi = standard_phi(model.space);
    F2Matrix rows(0, 30);
    for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t i = 0; i < phi.dim(); ++i) {
            F2Vector v(30);
            v.paste(b * 10, phi.basis().row(i));
            rows.append_row(std::move(v));
        }
    CHECK_THROWS_AS(dim_weight2(model, Subspace(30, rows)), std::invalid_argument);
}

TEST_CASE("moonshine dimension certificate") {
    Certificate cert = verify_196884();
    INFO(cert.to_text());
    CHECK(cert.pass());
}

TEST_CASE("unipotent legs at m = 5 have rank 20") {
    RVModel model = rv_space();
    Subspace phi = standard_phi(model.space), psi = standard_psi(model.space);
    Subspace s = build_S(model.space, phi, psi, 3);
    auto gens = stab_S_generators(model.space, phi, psi, 3);
    for (const auto& g : gens) CHECK(g.apply(s) == s);

    std::vector<Isometry> legs;
    for (const auto& xm : o2h_basis(model.space, phi, psi)) {
        Isometry u = o2h_element(model.space, phi, psi, xm);
        std::vector<std::size_t> idperm = {0, 1, 2};
        Isometry id = Isometry::identity(model.space);
        legs.push_back(BlockIsometry(idperm, {u, u, id}).flatten());
        legs.push_back(BlockIsometry(idperm, {u, id, u}).flatten());
    }
    CHECK(legs.size() == 20);
    F2Matrix nparts(0, 30 * 30);
    for (const auto& a : legs) {
        F2Vector flat(30 * 30);
        for (std::size_t r = 0; r < 30; ++r)
            for (std::size_t c = 0; c < 30; ++c)
                if (a.mat().get(r, c) != (r == c)) flat.set(r * 30 + c, true);
        nparts.append_row(std::move(flat));
    }
    CHECK(rank(nparts) == 20);
    for (const auto& a : legs)
        for (const auto& b : legs) CHECK(a.compose(b) == b.compose(a));

    // the dual-group order 2^15 is a pure count of S
    CHECK(s.dim() == 15);
}

TEST_CASE("analogy table rows") {
    AnalogyTable t = analogy_table();
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].total == 759);
    CHECK(t.rows[1].total == 196560);
    CHECK(t.rows[2].total == 196884);
    for (const auto& r : t.rows)
        CHECK(r.terms[0] + r.terms[1] + r.terms[2] == r.total);
    std::string text = format_analogy(t, false);
    CHECK(text.find("759") != std::string::npos);
    std::string csv = format_analogy(t, true);
    CHECK(csv.find("196884") != std::string::npos);
}
