#include "turyn/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "turyn/codeforge.hpp"
#include "turyn/latticeforge.hpp"
#include "turyn/orthogroup.hpp"
#include "turyn/voashadow.hpp"

namespace turyn {

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

F2Vector random_vector(std::mt19937_64& rng, std::size_t n) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

F2Vector random_nonsingular(std::mt19937_64& rng, const QuadraticSpace& sp) {
    for (;;) {
        F2Vector v = random_vector(rng, sp.dim());
        if (sp.q(v)) return v;
    }
}

F2Vector random_nonzero_singular(std::mt19937_64& rng, const QuadraticSpace& sp) {
    for (;;) {
        F2Vector v = random_vector(rng, sp.dim());
        if (!v.is_zero() && !sp.q(v)) return v;
    }
}

Isometry random_isometry(std::mt19937_64& rng, const QuadraticSpace& sp, int factors = 12) {
    Isometry g = Isometry::identity(sp);
    for (int i = 0; i < factors; ++i)
        g = g.compose(transvection(sp, random_nonsingular(rng, sp)));
    if (sp.dim() == 4 && (rng() & 1)) g = g.compose(exceptional_o4_generator(sp));
    return g;
}

BlockIsometry random_wreath(std::mt19937_64& rng, const QuadraticSpace& sp, bool permute) {
    std::vector<std::size_t> sigma = {0, 1, 2};
    if (permute) std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Isometry> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(random_isometry(rng, sp));
    return BlockIsometry(std::move(sigma), std::move(blocks));
}

std::size_t sl2_order(std::size_t m) {
    std::size_t order = 1;
    for (std::size_t i = 0; i < m; ++i)
        order *= (std::size_t{1} << m) - (std::size_t{1} << i);
    return order;
}

// ---- criteria ----

std::string criterion_golay() {
    GolayBuild g = build_golay();
    require(g.cert.pass(), "certificate failed:\n" + g.cert.to_text());
    auto hist = weight_enumerator(g.code);
    require(hist[0] == 1 && hist[8] == 759 && hist[12] == 2576 && hist[16] == 759 &&
                hist[24] == 1,
            "weight histogram mismatch");
    std::size_t nonzero = 0;
    for (std::size_t t = 0; t <= 24; ++t)
        if (hist[t]) ++nonzero;
    require(nonzero == 5, "unexpected weights present");
    return "[24,12] doubly even self-dual, weights {0:1, 8:759, 12:2576, 16:759, 24:1}";
}

std::string criterion_759() {
    Certificate c = verify_759_identity();
    require(c.pass(), "certificate failed:\n" + c.to_text());
    return "terms (3, 84, 672) agree: closed form, classified cosets, direct enumeration";
}

std::string criterion_leech() {
    LeechBuild lb = build_leech(false);
    require(lb.cert.pass(), "certificate failed:\n" + lb.cert.to_text());
    return "rank 24, even, det(Gram) = 1, no norm-2 vectors, 196560 of norm 4";
}

std::string criterion_196560() {
    Certificate c = verify_196560_identity(false);
    require(c.pass(), "certificate failed:\n" + c.to_text());
    return "terms (720, 11520, 184320) agree: closed form and per-coset profiles";
}

std::string criterion_196884() {
    RVModel model = rv_space();
    Subspace s = build_S(model.space, standard_phi(model.space), standard_psi(model.space), 3);
    Weight2Count c = dim_weight2(model, s);
    require(c.term_vacuum == 468 && c.term_type1 == 5952 && c.term_type2 == 190464 &&
                c.total == 196884,
            "breakdown mismatch: " + std::to_string(c.term_vacuum) + " + " +
                std::to_string(c.term_type1) + " + " + std::to_string(c.term_type2) + " = " +
                std::to_string(c.total));
    Certificate cert = verify_196884();
    require(cert.pass(), "certificate failed:\n" + cert.to_text());
    return "weight-2 dimension 196884 = 468 + 5952 + 190464";
}

std::string criterion_w4_counts() {
    for (std::size_t m = 1; m <= 5; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace phi = standard_phi(sp);
        Subspace s = build_S(sp, phi, standard_psi(sp), 3);
        W4Classification cls = classify_w4(sp, phi, s);
        const std::size_t t1 = 3 * ((std::size_t{1} << m) - 1);
        const std::size_t t2 = t1 * (std::size_t{1} << (2 * m - 2));
        require(cls.type1.size() == t1 && cls.type2.size() == t2,
                "counts at m = " + std::to_string(m) + ": " + std::to_string(cls.type1.size()) +
                    " / " + std::to_string(cls.type2.size()));
    }
    return "type I/II counts match 3(2^m-1) and 3(2^m-1)2^(2m-2) for m = 1..5";
}

std::string criterion_group_orders() {
    QuadraticSpace sp2 = hyperbolic_space(2);
    require(group_closure(sp2, orthogonal_group_generators(sp2)).size() == 72,
            "order of the dimension-4 orthogonal group");
    QuadraticSpace sp3 = hyperbolic_space(3);
    require(group_closure(sp3, orthogonal_group_generators(sp3)).size() == 40320,
            "order of the dimension-6 orthogonal group");

    std::size_t stab[4] = {0, 0, 0, 0};
    for (std::size_t m = 2; m <= 3; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        auto gens = stab_S_generators(sp, standard_phi(sp), standard_psi(sp), 3);
        std::vector<Isometry> flat;
        for (const auto& g : gens) flat.push_back(g.flatten());
        stab[m] = group_closure(direct_sum_k(sp, 3), flat).size();
        const std::size_t expected =
            (std::size_t{1} << (2 * (m * (m - 1) / 2))) * sl2_order(m) * 6;
        require(stab[m] == expected, "stabilizer order at m = " + std::to_string(m) + ": got " +
                                         std::to_string(stab[m]) + ", shape formula gives " +
                                         std::to_string(expected));
    }

    // m = 4 and 5 are beyond desk-scale enumeration; their shapes are
    // covered structurally: the unipotent legs are independent commuting
    // involutions of the stated rank, the diagonal Levi closes to the full
    // special linear group (m = 4), and every generator stabilizes S
    for (std::size_t m = 4; m <= 5; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace phi = standard_phi(sp), psi = standard_psi(sp);
        Subspace s = build_S(sp, phi, psi, 3);
        auto gens = stab_S_generators(sp, phi, psi, 3);
        for (const auto& g : gens)
            require(g.apply(s) == s, "generator fails to stabilize at m = " + std::to_string(m));

        const std::size_t n3 = sp.dim() * 3;
        std::vector<Isometry> legs;
        const Isometry id = Isometry::identity(sp);
        for (const auto& xm : o2h_basis(sp, phi, psi)) {
            Isometry u = o2h_element(sp, phi, psi, xm);
            std::vector<std::size_t> idperm = {0, 1, 2};
            legs.push_back(BlockIsometry(idperm, {u, u, id}).flatten());
            legs.push_back(BlockIsometry(idperm, {u, id, u}).flatten());
        }
        F2Matrix nparts(0, n3 * n3);
        for (const auto& a : legs) {
            F2Vector flat_v(n3 * n3);
            for (std::size_t r = 0; r < n3; ++r)
                for (std::size_t c = 0; c < n3; ++c)
                    if (a.mat().get(r, c) != (r == c)) flat_v.set(r * n3 + c, true);
            nparts.append_row(std::move(flat_v));
        }
        require(rank(nparts) == 2 * (m * (m - 1) / 2),
                "unipotent rank at m = " + std::to_string(m));
        if (m == 5) require(s.dim() == 15, "dual-group order is 2^15 by counting");
    }
    {
        QuadraticSpace sp = hyperbolic_space(4);
        std::vector<Isometry> levis;
        for (const auto& alpha : sl_generators(4))
            levis.push_back(levi_lift(sp, standard_phi(sp), standard_psi(sp), alpha));
        require(group_closure(sp, levis).size() == 20160, "Levi closure at m = 4");
    }

    return "|O+(4,2)| = 72, |O+(6,2)| = 40320; stabilizer orders " + std::to_string(stab[2]) +
           " = 2^2*6*6 (m=2) and " + std::to_string(stab[3]) +
           " = 2^6*168*6 (m=3), matching the shape formula; m = 4, 5 covered structurally "
           "(unipotent ranks 12 and 20, Levi closure 20160, dual-group order 2^15)";
}

std::string criterion_canonicalize(std::vector<Subspace>* collected) {
    std::mt19937_64 rng(8001);
    int trials = 0;
    for (std::size_t m = 2; m <= 4; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace base = build_S(sp, standard_phi(sp), standard_psi(sp), 3);
        for (int t = 0; t < 100; ++t) {
            Subspace s = random_wreath(rng, sp, t % 3 != 0).apply(base);
            Canonicalization c = canonicalize_S(sp, s);
            for (std::size_t i = 0; i < 3; ++i)
                require(c.g.sigma()[i] == i, "canonicalization moved coordinates");
            require(c.g.apply(s) == build_S(sp, c.phi, c.psi, 3),
                    "canonicalization postcondition failed at m = " + std::to_string(m));
            if (collected && m <= 3) collected->push_back(s);
            ++trials;
        }
    }
    return std::to_string(trials) + " randomized round-trips verified exactly, m = 2, 3, 4";
}

std::string criterion_sections(const std::vector<Subspace>& collected) {
    require(!collected.empty(), "no subspaces collected");
    int checked = 0;
    for (const auto& s : collected) {
        const std::size_t m = s.dim() / 3;
        QuadraticSpace sp = hyperbolic_space(m);
        SumSections sec = sum_sections(sp, s);
        for (std::size_t i = 0; i < 3; ++i) {
            require(sec.s_zero_at[i].dim() == m, "section dimension");
            F2Matrix proj(0, sp.dim());
            for (std::size_t r = 0; r < s.dim(); ++r)
                proj.append_row(s.basis().row(r).slice(i * sp.dim(), sp.dim()));
            require(Subspace(sp.dim(), proj).dim() == sp.dim(), "projection not surjective");
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) continue;
                require(sec.s_zero_at2[i][j].dim() == 0, "double section nonzero");
                F2Matrix pr(0, sp.dim());
                for (std::size_t r = 0; r < sec.s_zero_at[i].dim(); ++r)
                    pr.append_row(
                        sec.s_zero_at[i].basis().row(r).slice(j * sp.dim(), sp.dim()));
                require(is_maximal_totally_singular(sp, Subspace(sp.dim(), pr)),
                        "section projection not maximal totally singular");
            }
        }
        ++checked;
    }
    return "section invariants hold for all " + std::to_string(checked) +
           " generated subspaces";
}

std::string criterion_wreath() {
    std::mt19937_64 rng(8002);
    int trials = 0;
    for (std::size_t m = 1; m <= 3; ++m) {
        QuadraticSpace sp = hyperbolic_space(m);
        for (int t = 0; t < 100; ++t) {
            BlockIsometry b = random_wreath(rng, sp, true);
            WreathDecomposition d = wreath_decompose(sp, 3, b.flatten());
            require(d.member, "round-trip rejected a wreath element");
            require(d.sigma == b.sigma(), "recovered permutation differs");
            for (std::size_t i = 0; i < 3; ++i)
                require(d.blocks[i] == b.blocks()[i], "recovered block differs");
            ++trials;
        }
    }
    // rejection with a concrete witness: a cross-block transvection
    QuadraticSpace sp = hyperbolic_space(1);
    QuadraticSpace sum = direct_sum_k(sp, 2);
    Isometry t = transvection(sum, F2Vector::from_bits("1011"));
    WreathDecomposition d = wreath_decompose(sp, 2, t);
    require(!d.member, "block-mixing isometry accepted");
    require(wk_eval(sp, 2, t.apply(d.witness)) != wk_eval(sp, 2, d.witness),
            "witness does not separate");
    return std::to_string(trials) + " round-trips, plus a rejection with a verified witness";
}

std::string criterion_coset_minima() {
    GlueSpaceC glue(repetition_code(8));
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
        F2Vector u(6);
        for (std::size_t i = 0; i < 6; ++i)
            if ((bits >> i) & 1) u.set(i, true);
        auto prof = coset_weight_profile(glue, u);
        std::size_t minw = 0;
        while (prof[minw] == 0) ++minw;
        require(minw == 2 * static_cast<std::size_t>(glue.space().w(u)),
                "code coset minimum at class " + u.to_string());
    }
    GlueSpaceL lglue(sqrt2_e8());
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
        F2Vector u(8);
        for (std::size_t i = 0; i < 8; ++i)
            if ((bits >> i) & 1) u.set(i, true);
        auto prof = coset_norm_profile(lglue, u, 4);
        long minn = 0;
        while (prof[minn] == 0) ++minn;
        require(minn == lglue.space().w(u), "lattice coset minimum at class " + u.to_string());
    }
    return "all 64 code cosets have min weight 2w(u); all 256 lattice cosets have min norm w(u)";
}

std::string criterion_properties() {
    std::mt19937_64 rng(8003);
    int cases = 0;

    // linear algebra round-trips
    for (int t = 0; t < 250; ++t) {
        std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 10;
        F2Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) m.row(r) = random_vector(rng, cols);
        auto rr = rref(m);
        require(rr.transform * m == rr.reduced, "rref transform");
        require(kernel(m).dim() + rr.rank == rows, "rank-nullity");
        F2Vector b = random_vector(rng, cols);
        if (auto x = solve(m, b)) require(*x * m == b, "solve residual");
        ++cases;
    }

    // isometries preserve the form pointwise
    for (int t = 0; t < 250; ++t) {
        std::size_t m = 1 + rng() % 5;
        QuadraticSpace sp = hyperbolic_space(m);
        Isometry g = random_isometry(rng, sp, 6);
        F2Vector v = random_vector(rng, sp.dim());
        require(sp.q(g.apply(v)) == sp.q(v), "isometry form preservation");
        ++cases;
    }

    // constructive extension posts
    for (int t = 0; t < 125; ++t) {
        std::size_t m = 1 + rng() % 5;
        QuadraticSpace sp = hyperbolic_space(m);
        Subspace a = random_isometry(rng, sp).apply(standard_phi(sp));
        Subspace b = random_isometry(rng, sp).apply(standard_phi(sp));
        require(map_mts(sp, a, b).apply(a) == b, "map_mts post");
        ++cases;
        Subspace c = find_complement(sp, a);
        require(is_maximal_totally_singular(sp, c) && subspace_intersect(a, c).dim() == 0,
                "find_complement post");
        ++cases;
    }
    for (int t = 0; t < 125; ++t) {
        std::size_t m = 1 + rng() % 5;
        QuadraticSpace sp = hyperbolic_space(m);
        F2Vector a = random_nonzero_singular(rng, sp);
        F2Vector b = random_nonzero_singular(rng, sp);
        require(map_singular(sp, a, b).apply(a) == b, "map_singular post");
        ++cases;
    }
    for (int t = 0; t < 125; ++t) {
        std::size_t m = 2 + rng() % 4;
        QuadraticSpace sp = hyperbolic_space(m);
        Isometry r = random_isometry(rng, sp);
        Subspace phi = r.apply(standard_phi(sp)), psi = r.apply(standard_psi(sp));
        F2Matrix alpha(m, m);
        do {
            for (std::size_t i = 0; i < m; ++i) alpha.row(i) = random_vector(rng, m);
        } while (rank(alpha) != m);
        Isometry lev = levi_lift(sp, phi, psi, alpha);
        require(lev.apply(phi) == phi && lev.apply(psi) == psi, "levi_lift stabilization");
        ++cases;
        // action on phi is alpha in the basis
        bool action_ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            F2Vector img = lev.apply(phi.basis().row(i));
            F2Vector want(sp.dim());
            for (std::size_t j = 0; j < m; ++j)
                if (alpha.get(i, j)) want ^= phi.basis().row(j);
            if (img != want) action_ok = false;
        }
        require(action_ok, "levi_lift action");
        ++cases;
    }
    for (int t = 0; t < 125; ++t) {
        std::size_t m = 2 + rng() % 4;
        QuadraticSpace sp = hyperbolic_space(m);
        Isometry r = random_isometry(rng, sp);
        Subspace phi = r.apply(standard_phi(sp)), psi = r.apply(standard_psi(sp));
        auto basis = o2h_basis(sp, phi, psi);
        F2Matrix x(m, m);
        for (const auto& xm : basis)
            if (rng() & 1)
                for (std::size_t i = 0; i < m; ++i) x.row(i) ^= xm.row(i);
        Isometry u = o2h_element(sp, phi, psi, x);
        for (std::size_t i = 0; i < m; ++i)
            require(u.apply(phi.basis().row(i)) == phi.basis().row(i), "o2h fixes phi");
        for (std::size_t i = 0; i < m; ++i) {
            F2Vector img = u.apply(psi.basis().row(i));
            require(phi.contains(img ^ psi.basis().row(i)), "o2h moves psi within phi");
        }
        ++cases;
    }

    require(cases >= 1000, "fewer than 1000 property cases ran");
    return std::to_string(cases) + " randomized property cases, zero failures";
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> results;
    std::vector<Subspace> collected;

    struct Entry {
        int index;
        std::string name;
        std::function<std::string()> run;
    };
    const std::vector<Entry> entries = {
        {1, "length-24 code build", [] { return criterion_golay(); }},
        {2, "759 three-term identity", [] { return criterion_759(); }},
        {3, "rank-24 lattice build", [] { return criterion_leech(); }},
        {4, "196560 three-term identity", [] { return criterion_196560(); }},
        {5, "196884 weight-2 dimension", [] { return criterion_196884(); }},
        {6, "weight-4 classification counts", [] { return criterion_w4_counts(); }},
        {7, "group orders by closure", [] { return criterion_group_orders(); }},
        {8, "canonicalization round-trips", [&] { return criterion_canonicalize(&collected); }},
        {9, "section invariants", [&] { return criterion_sections(collected); }},
        {10, "wreath decomposition", [] { return criterion_wreath(); }},
        {11, "coset minima", [] { return criterion_coset_minima(); }},
        {12, "randomized property suites", [] { return criterion_properties(); }},
    };

    for (const auto& e : entries) {
        CriterionResult r;
        r.index = e.index;
        r.name = e.name;
        auto start = std::chrono::steady_clock::now();
        try {
            r.detail = e.run();
            r.pass = true;
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_results(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << " [" << r.index << "] " << r.name << " ("
            << static_cast<long>(r.seconds * 1000) << " ms): " << r.detail << "\n";
    }
    out << (all_pass(results) ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
    return out.str();
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace turyn
