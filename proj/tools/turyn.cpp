// Command-line front end: build and verify the glued code/lattice/extension
// objects, canonicalize admissible subspaces, and emit everything as plain
// text files.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "turyn/acceptance.hpp"
#include "turyn/codeforge.hpp"
#include "turyn/latticeforge.hpp"
#include "turyn/orthogroup.hpp"
#include "turyn/textio.hpp"
#include "turyn/voashadow.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 1;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::string read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

turyn::Isometry random_isometry(std::mt19937_64& rng, const turyn::QuadraticSpace& sp) {
    turyn::Isometry g = turyn::Isometry::identity(sp);
    for (int i = 0; i < 16; ++i) {
        turyn::F2Vector a(sp.dim());
        do {
            for (std::size_t j = 0; j < sp.dim(); ++j) a.set(j, rng() & 1);
        } while (!sp.q(a));
        g = g.compose(turyn::transvection(sp, a));
    }
    if (sp.dim() == 4 && (rng() & 1))
        g = g.compose(turyn::exceptional_o4_generator(sp));
    return g;
}

turyn::BlockIsometry random_wreath(std::mt19937_64& rng, const turyn::QuadraticSpace& sp) {
    // explicit Fisher-Yates: std::shuffle is implementation-defined, and
    // seeded output must be byte-identical everywhere
    std::vector<std::size_t> sigma = {0, 1, 2};
    for (std::size_t i = 2; i > 0; --i)
        std::swap(sigma[i], sigma[rng() % (i + 1)]);
    std::vector<turyn::Isometry> blocks;
    for (int i = 0; i < 3; ++i) blocks.push_back(random_isometry(rng, sp));
    return turyn::BlockIsometry(std::move(sigma), std::move(blocks));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational companion for glued codes, lattices and module extensions"};
    app.require_subcommand(1);

    auto* qspace = app.add_subcommand("qspace", "quadratic space utilities");
    qspace->require_subcommand(1);
    auto* qgen = qspace->add_subcommand("gen", "emit a hyperbolic space (or its k-fold sum)");
    std::size_t q_m = 1, q_k = 1;
    std::string q_out;
    qgen->add_option("--m", q_m, "Witt index of the base space")->required();
    qgen->add_option("--k", q_k, "number of orthogonal copies (default 1)");
    qgen->add_option("--out", q_out, "output file (default stdout)");

    auto* rands =
        app.add_subcommand("random-s", "emit a random admissible subspace of the 3-fold sum");
    std::size_t rs_m = 3;
    std::uint64_t rs_seed = kDefaultSeed;
    std::string rs_out;
    rands->add_option("--m", rs_m, "Witt index of the base space")->required();
    rands->add_option("--seed", rs_seed, "random seed (default 1)");
    rands->add_option("--out", rs_out, "output file (default stdout)");

    auto* canon = app.add_subcommand("canon", "canonicalize an admissible subspace");
    std::string canon_in, canon_out;
    canon->add_option("--in", canon_in, "subspace file")->required();
    canon->add_option("--out", canon_out, "output file (default stdout)");

    auto* golay = app.add_subcommand("golay", "build the length-24 code and its certificate");
    std::string golay_out;
    golay->add_option("--out", golay_out, "write the code file here");

    auto* leech = app.add_subcommand("leech", "build the rank-24 lattice and its certificate");
    std::string leech_out;
    bool leech_full = false;
    leech->add_option("--out", leech_out, "write the doubled Gram file here");
    leech->add_flag("--full-enum", leech_full, "also run the direct rank-24 norm-4 enumeration");

    auto* moons =
        app.add_subcommand("moonshine-dim", "weight-2 dimension count of the glued extension");

    auto* stab = app.add_subcommand("stab-order", "stabilizer generators and closure order");
    std::size_t st_m = 3, st_k = 3;
    stab->add_option("--m", st_m, "Witt index of the base space")->required();
    stab->add_option("--k", st_k, "number of coordinates (must be 3)");

    auto* analogy = app.add_subcommand("analogy", "the three parallel three-term identities");
    bool analogy_csv = false;
    analogy->add_flag("--csv", analogy_csv, "emit as CSV");

    auto* verify = app.add_subcommand("verify-all", "run the complete verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (qgen->parsed()) {
            turyn::QuadraticSpace sp = turyn::hyperbolic_space(q_m);
            if (q_k > 1) sp = turyn::direct_sum_k(sp, q_k);
            write_output(q_out, turyn::emit_qspace(sp));
            return kExitPass;
        }
        if (rands->parsed()) {
            turyn::QuadraticSpace sp = turyn::hyperbolic_space(rs_m);
            turyn::Subspace s =
                turyn::build_S(sp, turyn::standard_phi(sp), turyn::standard_psi(sp), 3);
            std::mt19937_64 rng(rs_seed);
            write_output(rs_out, turyn::emit_subspace(random_wreath(rng, sp).apply(s)));
            return kExitPass;
        }
        if (canon->parsed()) {
            turyn::Subspace s = turyn::parse_subspace(read_input(canon_in));
            if (s.ambient_dim() == 0 || s.ambient_dim() % 6 != 0)
                throw std::invalid_argument("canon: ambient dimension is not a 3-fold sum");
            turyn::QuadraticSpace sp = turyn::hyperbolic_space(s.ambient_dim() / 6);
            turyn::Canonicalization c = turyn::canonicalize_S(sp, s);
            const bool ok = c.g.apply(s) == turyn::build_S(sp, c.phi, c.psi, 3);
            std::ostringstream out;
            out << "# block isometry g with S * g = S(phi, psi; 3)\n";
            out << turyn::emit_wreath(c.g);
            out << "# phi\n" << turyn::emit_subspace(c.phi);
            out << "# psi\n" << turyn::emit_subspace(c.psi);
            out << "verified: " << (ok ? "yes" : "no") << "\n";
            write_output(canon_out, out.str());
            return ok ? kExitPass : kExitCheckFailure;
        }
        if (golay->parsed()) {
            turyn::GolayBuild g = turyn::build_golay();
            if (!golay_out.empty()) write_output(golay_out, turyn::emit_code(g.code));
            std::cout << g.cert.to_text();
            return g.cert.pass() ? kExitPass : kExitCheckFailure;
        }
        if (leech->parsed()) {
            turyn::LeechBuild lb = turyn::build_leech(leech_full);
            if (!leech_out.empty()) write_output(leech_out, turyn::emit_gram2(lb.lattice));
            std::cout << lb.cert.to_text();
            return lb.cert.pass() ? kExitPass : kExitCheckFailure;
        }
        if (moons->parsed()) {
            turyn::Certificate cert = turyn::verify_196884();
            std::cout << cert.to_text();
            return cert.pass() ? kExitPass : kExitCheckFailure;
        }
        if (stab->parsed()) {
            if (st_k != 3)
                throw std::invalid_argument("stab-order: only k = 3 is supported");
            turyn::QuadraticSpace sp = turyn::hyperbolic_space(st_m);
            auto gens = turyn::stab_S_generators(sp, turyn::standard_phi(sp),
                                                 turyn::standard_psi(sp), 3);
            std::cout << "generators: " << gens.size() << "\n";
            for (std::size_t i = 0; i < gens.size(); ++i) {
                std::cout << "# generator " << i + 1 << "\n";
                std::cout << turyn::emit_wreath(gens[i]);
            }
            if (st_m <= 3) {
                std::vector<turyn::Isometry> flat;
                for (const auto& g : gens) flat.push_back(g.flatten());
                auto closure = turyn::group_closure(turyn::direct_sum_k(sp, 3), flat);
                std::cout << "closure order: " << closure.size() << "\n";
            } else {
                std::cout << "closure order: not enumerated for m > 3\n";
            }
            return kExitPass;
        }
        if (analogy->parsed()) {
            std::cout << turyn::format_analogy(turyn::analogy_table(), analogy_csv);
            return kExitPass;
        }
        if (verify->parsed()) {
            auto results = turyn::run_acceptance();
            std::cout << turyn::format_results(results);
            return turyn::all_pass(results) ? kExitPass : kExitCheckFailure;
        }
    } catch (const turyn::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
