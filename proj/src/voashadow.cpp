#include "turyn/voashadow.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "turyn/codeforge.hpp"
#include "turyn/latticeforge.hpp"
#include "turyn/orthogroup.hpp"

namespace turyn {

RVModel rv_space() { return RVModel{hyperbolic_space(5)}; }

Weight2Count dim_weight2(const RVModel& model, const Subspace& s) {
    const QuadraticSpace& sp = model.space;
    if (s.ambient_dim() != sp.dim() * 3)
        throw std::invalid_argument("dim_weight2: expected a subspace of the 3-fold sum");
    if (auto c1 = check_cond1(sp, 3, s); !c1.ok)
        throw std::invalid_argument("dim_weight2: S violates the weight condition at " +
                                    c1.violation.to_string());

    Weight2Count out;
    out.term_vacuum = 3 * model.dim_weight2_vacuum;

    // sweep every nonzero class: only w^3 = 4 classes reach weight 2, and
    // each contributes the product of its blocks' lowest-piece dimensions
    F2Vector v(s.ambient_dim());
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << s.dim()); ++i) {
        v ^= s.basis().row(std::countr_zero(i));
        WeightProfile p = wk_profile(sp, 3, v);
        if (p.total != 4) continue;
        long prod = 1;
        int twos = 0;
        for (int wb : p.block_weights) {
            if (wb == 1) prod *= model.dim_lowest_w1;
            else if (wb == 2) { prod *= model.dim_lowest_w2; ++twos; }
        }
        if (twos == 2) out.term_type1 += prod;
        else out.term_type2 += prod;
    }
    out.total = out.term_vacuum + out.term_type1 + out.term_type2;
    return out;
}

Certificate verify_196884() {
    RVModel model = rv_space();
    Certificate cert;
    cert.subject = "moonshine-dim";
    cert.add_count("module space dimension", 10, model.space.dim(), "PAPER");
    cert.add_count("module class count", 1024, std::size_t{1} << model.space.dim(), "PAPER",
                   "2^10");

    // the three constants are taken as given module data (axioms here)
    cert.add_count("weight-2 dimension of the base algebra", 156,
                   static_cast<std::uint64_t>(model.dim_weight2_vacuum), "PAPER",
                   "axiom: taken as given, not derived here");
    cert.add_count("lowest-piece dimension, w = 1 classes", 1,
                   static_cast<std::uint64_t>(model.dim_lowest_w1), "PAPER",
                   "axiom: taken as given, not derived here");
    cert.add_count("lowest-piece dimension, w = 2 classes", 8,
                   static_cast<std::uint64_t>(model.dim_lowest_w2), "PAPER",
                   "axiom: taken as given, not derived here");

    Subspace phi = standard_phi(model.space), psi = standard_psi(model.space);
    Subspace s = build_S(model.space, phi, psi, 3);
    Weight2Count count = dim_weight2(model, s);
    cert.add_count("vacuum term", 468, static_cast<std::uint64_t>(count.term_vacuum), "PAPER",
                   "3 x 156");
    cert.add_count("type I term", 5952, static_cast<std::uint64_t>(count.term_type1), "PAPER",
                   "(3 x (2^5-1)) x 1^0 x 8^2");
    cert.add_count("type II term", 190464, static_cast<std::uint64_t>(count.term_type2), "PAPER",
                   "(3 x (2^5-1) x 2^8) x 1^2 x 8^1");
    cert.add_count("weight-2 dimension", 196884, static_cast<std::uint64_t>(count.total),
                   "PAPER");

    // closed forms from the weight-4 classification at m = 5
    W4Classification cls = classify_w4(model.space, phi, s);
    cert.add_count("type I class count", 93, cls.type1.size(), "PAPER", "3 x (2^5-1)");
    cert.add_count("type II class count", 23808, cls.type2.size(), "PAPER",
                   "3 x (2^5-1) x 2^8");
    return cert;
}

AnalogyTable analogy_table() {
    AnalogyTable table;

    {
        Certificate c = verify_759_identity();
        AnalogyRow row;
        row.name = "octads in the [24,12] code";
        row.terms[0] = 3;
        row.terms[1] = 84;
        row.terms[2] = 672;
        row.total = 759;
        if (!c.pass()) throw std::logic_error("analogy_table: octad identity failed");
        row.stabilizer_shape = "2^6:(SL_3(2) x Sym_3)";
        row.verified_note = "order 64512 by closure of the emitted generators";
        table.rows.push_back(std::move(row));
    }
    {
        Certificate c = verify_196560_identity(false);
        AnalogyRow row;
        row.name = "norm-4 vectors in the rank-24 lattice";
        row.terms[0] = 720;
        row.terms[1] = 11520;
        row.terms[2] = 184320;
        row.total = 196560;
        if (!c.pass()) throw std::logic_error("analogy_table: norm-4 identity failed");
        row.stabilizer_shape = "2^3.(2^12:(SL_4(2) x Sym_3))";
        row.verified_note =
            "glue level: unipotent rank 12, Levi order 20160, Sym_3; the 2^3 kernel lives on "
            "the lattice and is recorded, not enumerated";
        table.rows.push_back(std::move(row));
    }
    {
        Certificate c = verify_196884();
        AnalogyRow row;
        row.name = "weight-2 dimension of the extension";
        row.terms[0] = 468;
        row.terms[1] = 5952;
        row.terms[2] = 190464;
        row.total = 196884;
        if (!c.pass()) throw std::logic_error("analogy_table: weight-2 identity failed");
        row.stabilizer_shape = "2^15.(2^20:(SL_5(2) x Sym_3))";
        row.verified_note =
            "glue level: unipotent rank 20, Sym_3; |S*| = 2^15 by counting, Levi order by the "
            "group-order formula";
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_analogy(const AnalogyTable& table, bool csv) {
    std::ostringstream out;
    if (csv) {
        out << "name,term1,term2,term3,total,stabilizer\n";
        for (const auto& r : table.rows)
            out << r.name << "," << r.terms[0] << "," << r.terms[1] << "," << r.terms[2] << ","
                << r.total << "," << r.stabilizer_shape << "\n";
        return out.str();
    }
    for (const auto& r : table.rows) {
        out << r.name << ":\n";
        out << "  " << r.terms[0] << " + " << r.terms[1] << " + " << r.terms[2] << " = "
            << r.total << "\n";
        out << "  stabilizer shape: " << r.stabilizer_shape << "\n";
        out << "  verified: " << r.verified_note << "\n";
    }
    return out.str();
}

}  // namespace turyn
