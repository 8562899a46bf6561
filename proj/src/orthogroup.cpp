#include "turyn/orthogroup.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace turyn {

namespace {

void require_space(const QuadraticSpace& a, const QuadraticSpace& b, const char* what) {
    if (!(a == b))
        throw std::invalid_argument(std::string(what) + ": operands live on different spaces");
}

struct PackedHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (auto w : v) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

std::size_t default_closure_cap() {
    if (const char* env = std::getenv("TURYN_MAX_CLOSURE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw std::invalid_argument("TURYN_MAX_CLOSURE is not a positive integer");
    }
    return std::size_t{1} << 26;
}

F2Matrix stack(const F2Matrix& top, const F2Matrix& bottom) {
    F2Matrix out = top;
    for (std::size_t i = 0; i < bottom.rows(); ++i) out.append_row(bottom.row(i));
    return out;
}

// pairing matrix <phi_i, psi_j> for a complementary maximal totally
// singular pair; invertible exactly when the pair is complementary
F2Matrix pairing_matrix(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi) {
    F2Matrix m(phi.dim(), psi.dim());
    for (std::size_t i = 0; i < phi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            m.set(i, j, sp.bform(phi.basis().row(i), psi.basis().row(j)));
    return m;
}

void require_complementary_pair(const QuadraticSpace& sp, const Subspace& phi,
                                const Subspace& psi, const char* what) {
    if (!is_maximal_totally_singular(sp, phi) || !is_maximal_totally_singular(sp, psi))
        throw std::invalid_argument(std::string(what) +
                                    ": inputs must be maximal totally singular");
    if (subspace_intersect(phi, psi).dim() != 0)
        throw std::invalid_argument(std::string(what) + ": subspaces are not complementary");
}

}  // namespace

Isometry::Isometry(const QuadraticSpace& space, F2Matrix mat)
    : space_(std::make_shared<QuadraticSpace>(space)), mat_(std::move(mat)) {
    const std::size_t n = space.dim();
    if (mat_.rows() != n || mat_.cols() != n)
        throw std::invalid_argument("Isometry: matrix does not match the space dimension");
    if (rank(mat_) != n)
        throw std::invalid_argument("Isometry: matrix is singular");
    for (std::size_t i = 0; i < n; ++i) {
        if (space.q(mat_.row(i)) != space.q_upper().get(i, i))
            throw std::invalid_argument("Isometry: the form is not preserved on a basis vector");
        for (std::size_t j = i + 1; j < n; ++j)
            if (space.bform(mat_.row(i), mat_.row(j)) != space.bilinear().get(i, j))
                throw std::invalid_argument("Isometry: the pairing is not preserved on a basis pair");
    }
}

Isometry Isometry::identity(const QuadraticSpace& space) {
    return Isometry(space, F2Matrix::identity(space.dim()));
}

Subspace Isometry::apply(const Subspace& s) const {
    if (s.ambient_dim() != space().dim())
        throw std::invalid_argument("Isometry::apply: ambient mismatch");
    F2Matrix rows(0, space().dim());
    for (std::size_t i = 0; i < s.dim(); ++i) rows.append_row(s.basis().row(i) * mat_);
    return Subspace(space().dim(), rows);
}

Isometry Isometry::compose(const Isometry& then) const {
    require_space(space(), then.space(), "Isometry::compose");
    return Isometry(space_, mat_ * then.mat_, unchecked_t{});
}

Isometry Isometry::inverted() const {
    return Isometry(space_, inverse(mat_), unchecked_t{});
}

BlockIsometry::BlockIsometry(std::vector<std::size_t> sigma, std::vector<Isometry> blocks)
    : sigma_(std::move(sigma)), blocks_(std::move(blocks)) {
    const std::size_t k = sigma_.size();
    if (k == 0 || blocks_.size() != k)
        throw std::invalid_argument("BlockIsometry: need one block per coordinate");
    std::vector<bool> seen(k, false);
    for (std::size_t img : sigma_) {
        if (img >= k || seen[img])
            throw std::invalid_argument("BlockIsometry: sigma is not a permutation");
        seen[img] = true;
    }
    for (const auto& b : blocks_)
        require_space(b.space(), blocks_.front().space(), "BlockIsometry");
}

BlockIsometry BlockIsometry::identity(const QuadraticSpace& base, std::size_t k) {
    std::vector<std::size_t> sigma(k);
    for (std::size_t i = 0; i < k; ++i) sigma[i] = i;
    std::vector<Isometry> blocks(k, Isometry::identity(base));
    return BlockIsometry(std::move(sigma), std::move(blocks));
}

F2Vector BlockIsometry::apply(const F2Vector& v) const {
    const std::size_t n = base().dim();
    if (v.length() != n * k())
        throw std::invalid_argument("BlockIsometry::apply: length mismatch");
    F2Vector out(v.length());
    for (std::size_t i = 0; i < k(); ++i)
        out.paste(sigma_[i] * n, blocks_[i].apply(v.slice(i * n, n)));
    return out;
}

Subspace BlockIsometry::apply(const Subspace& s) const {
    F2Matrix rows(0, s.ambient_dim());
    for (std::size_t i = 0; i < s.dim(); ++i) rows.append_row(apply(s.basis().row(i)));
    return Subspace(s.ambient_dim(), rows);
}

Isometry BlockIsometry::flatten() const {
    const std::size_t n = base().dim();
    QuadraticSpace sum = direct_sum_k(base(), k());
    F2Matrix mat(n * k(), n * k());
    for (std::size_t i = 0; i < k(); ++i)
        for (std::size_t t = 0; t < n; ++t)
            mat.row(i * n + t).paste(sigma_[i] * n, blocks_[i].mat().row(t));
    return Isometry(sum, std::move(mat));
}

Isometry transvection(const QuadraticSpace& sp, const F2Vector& a) {
    if (a.length() != sp.dim())
        throw std::invalid_argument("transvection: dimension mismatch");
    if (!sp.q(a))
        throw std::invalid_argument("transvection: vector must be non-singular");
    const F2Vector pairings = a * sp.bilinear();  // <e_i, a> by symmetry
    F2Matrix mat = F2Matrix::identity(sp.dim());
    for (std::size_t i = 0; i < sp.dim(); ++i)
        if (pairings.get(i)) mat.row(i) ^= a;
    return Isometry(sp, std::move(mat));
}

std::vector<Isometry> transvection_generators(const QuadraticSpace& sp) {
    if (sp.dim() > 24)
        throw std::invalid_argument("transvection_generators: dimension too large to enumerate");
    std::vector<Isometry> gens;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << sp.dim()); ++bits) {
        F2Vector a(sp.dim());
        for (std::size_t i = 0; i < sp.dim(); ++i)
            if ((bits >> i) & 1) a.set(i, true);
        if (sp.q(a)) gens.push_back(transvection(sp, a));
    }
    return gens;
}

Isometry exceptional_o4_generator(const QuadraticSpace& sp) {
    if (sp.dim() != 4)
        throw std::invalid_argument("exceptional_o4_generator: only defined in dimension 4");
    const Subspace phi = maximal_totally_singular(sp);
    const F2Matrix frame = dual_singular_frame(sp, phi);
    F2Matrix basis(0, 4), images(0, 4);
    basis.append_row(phi.basis().row(0));
    basis.append_row(phi.basis().row(1));
    basis.append_row(frame.row(0));
    basis.append_row(frame.row(1));
    images.append_row(phi.basis().row(1));
    images.append_row(phi.basis().row(0));
    images.append_row(frame.row(1));
    images.append_row(frame.row(0));
    return Isometry(sp, inverse(basis) * images);
}

std::vector<Isometry> orthogonal_group_generators(const QuadraticSpace& sp) {
    std::vector<Isometry> gens = transvection_generators(sp);
    if (sp.dim() == 4) gens.push_back(exceptional_o4_generator(sp));
    return gens;
}

std::vector<Isometry> group_closure(const QuadraticSpace& sp,
                                    const std::vector<Isometry>& gens, std::size_t cap) {
    if (cap == 0) cap = default_closure_cap();
    for (const auto& g : gens) require_space(g.space(), sp, "group_closure");

    auto shared_space = std::make_shared<QuadraticSpace>(sp);
    std::vector<F2Matrix> elements;
    std::unordered_set<std::vector<std::uint64_t>, PackedHash> seen;

    F2Matrix id = F2Matrix::identity(sp.dim());
    seen.insert(id.packed());
    elements.push_back(std::move(id));

    for (std::size_t idx = 0; idx < elements.size(); ++idx) {
        for (const auto& g : gens) {
            F2Matrix prod = elements[idx] * g.mat();
            if (seen.insert(prod.packed()).second) {
                elements.push_back(std::move(prod));
                if (elements.size() > cap)
                    throw std::runtime_error(
                        "group_closure: size exceeded cap of " + std::to_string(cap) +
                        " elements (set TURYN_MAX_CLOSURE to raise it)");
            }
        }
    }

    std::vector<Isometry> out;
    out.reserve(elements.size());
    for (auto& m : elements)
        out.push_back(Isometry(shared_space, std::move(m), Isometry::unchecked_t{}));
    return out;
}

F2Matrix dual_singular_frame(const QuadraticSpace& sp, const Subspace& phi) {
    if (!is_maximal_totally_singular(sp, phi))
        throw std::invalid_argument("dual_singular_frame: input is not maximal totally singular");
    const std::size_t m = phi.dim();
    const std::size_t n = sp.dim();

    // pairing rows <phi_i, .> as vectors, then solve for a raw dual family
    F2Matrix pair_rows(0, n);
    for (std::size_t i = 0; i < m; ++i) pair_rows.append_row(phi.basis().row(i) * sp.bilinear());
    const F2Matrix pair_cols = pair_rows.transposed();  // n x m

    F2Matrix frame(0, n);
    for (std::size_t j = 0; j < m; ++j) {
        auto fj = solve(pair_cols, F2Vector::unit(m, j));
        if (!fj)
            throw std::logic_error("dual_singular_frame: pairing against phi is degenerate");
        // make the frame pairwise orthogonal, then singular; corrections by
        // phi vectors do not disturb the duality pairing
        F2Vector f = *fj;
        for (std::size_t i = 0; i < j; ++i)
            if (sp.bform(f, frame.row(i))) f ^= phi.basis().row(i);
        if (sp.q(f)) f ^= phi.basis().row(j);
        frame.append_row(std::move(f));
    }
    return frame;
}

Subspace find_complement(const QuadraticSpace& sp, const Subspace& phi) {
    return Subspace(sp.dim(), dual_singular_frame(sp, phi));
}

Isometry map_mts(const QuadraticSpace& sp, const Subspace& phi1, const Subspace& phi2) {
    const F2Matrix b1 = stack(phi1.basis(), dual_singular_frame(sp, phi1));
    const F2Matrix b2 = stack(phi2.basis(), dual_singular_frame(sp, phi2));
    return Isometry(sp, inverse(b1) * b2);
}

Isometry map_singular(const QuadraticSpace& sp, const F2Vector& a, const F2Vector& b) {
    if (a.is_zero() || b.is_zero() || sp.q(a) || sp.q(b))
        throw std::invalid_argument("map_singular: inputs must be nonzero singular vectors");
    if (a == b) return Isometry::identity(sp);
    if (sp.bform(a, b)) return transvection(sp, a ^ b);
    // <a,b> = 0: route through a singular z pairing to 1 with both
    F2Matrix conds(0, sp.dim());
    conds.append_row(a * sp.bilinear());
    conds.append_row(b * sp.bilinear());
    F2Vector ones(2);
    ones.set(0, true);
    ones.set(1, true);
    auto z0 = solve(conds.transposed(), ones);
    if (!z0)
        throw std::logic_error("map_singular: no connecting vector (degenerate form)");
    F2Vector z = *z0;
    if (sp.q(z)) z ^= a;  // q(z + a) = q(z) + <z,a> = 1 + 1 = 0
    return transvection(sp, a ^ z).compose(transvection(sp, z ^ b));
}

Isometry map_mts_pair(const QuadraticSpace& sp, const Subspace& phi1, const Subspace& psi1,
                      const Subspace& phi2, const Subspace& psi2) {
    require_complementary_pair(sp, phi1, psi1, "map_mts_pair");
    require_complementary_pair(sp, phi2, psi2, "map_mts_pair");
    const std::size_t m = phi1.dim();

    const Isometry ga = map_mts(sp, phi1, phi2);
    const Subspace psi1_moved = ga.apply(psi1);

    // psi1_moved is a complement of phi2, hence the graph of a map
    // psi2 -> phi2; the unipotent element carrying that map swaps the two
    // complements while fixing phi2 pointwise
    const F2Matrix decomp = stack(psi1_moved.basis(), phi2.basis());
    F2Matrix xmap(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        auto y = solve(decomp, psi2.basis().row(i));
        if (!y)
            throw std::logic_error("map_mts_pair: complement decomposition failed");
        for (std::size_t l = 0; l < m; ++l) xmap.set(i, l, y->get(m + l));
    }
    return ga.compose(o2h_element(sp, phi2, psi2, xmap));
}

Isometry levi_lift(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                   const F2Matrix& alpha) {
    require_complementary_pair(sp, phi, psi, "levi_lift");
    const std::size_t m = phi.dim();
    if (alpha.rows() != m || alpha.cols() != m)
        throw std::invalid_argument("levi_lift: alpha must be m x m");
    if (rank(alpha) != m)
        throw std::invalid_argument("levi_lift: alpha is not invertible");

    const F2Matrix pairing = pairing_matrix(sp, phi, psi);
    // basis of psi dual to phi's basis under the pairing
    const F2Matrix dual = inverse(pairing).transposed() * psi.basis();

    const F2Matrix full = stack(phi.basis(), dual);
    const F2Matrix images = stack(alpha * phi.basis(),
                                  inverse(alpha).transposed() * dual);
    return Isometry(sp, inverse(full) * images);
}

Isometry o2h_element(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                     const F2Matrix& xmap) {
    require_complementary_pair(sp, phi, psi, "o2h_element");
    const std::size_t m = phi.dim();
    if (xmap.rows() != m || xmap.cols() != m)
        throw std::invalid_argument("o2h_element: coefficient matrix must be m x m");

    const F2Matrix ximg = xmap * phi.basis();  // row i: x(b_i)
    for (std::size_t i = 0; i < m; ++i) {
        if (sp.bform(ximg.row(i), psi.basis().row(i)))
            throw std::invalid_argument(
                "o2h_element: <x(b),b> != 0 for basis vector " + std::to_string(i));
        for (std::size_t j = i + 1; j < m; ++j)
            if (sp.bform(ximg.row(i), psi.basis().row(j)) !=
                sp.bform(ximg.row(j), psi.basis().row(i)))
                throw std::invalid_argument(
                    "o2h_element: symmetry fails on basis pair (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
    }

    F2Matrix moved = psi.basis();
    for (std::size_t i = 0; i < m; ++i) moved.row(i) ^= ximg.row(i);
    const F2Matrix full = stack(phi.basis(), psi.basis());
    const F2Matrix images = stack(phi.basis(), moved);
    return Isometry(sp, inverse(full) * images);
}

std::vector<F2Matrix> o2h_basis(const QuadraticSpace& sp, const Subspace& phi,
                                const Subspace& psi) {
    require_complementary_pair(sp, phi, psi, "o2h_basis");
    const std::size_t m = phi.dim();
    const F2Matrix inv_pairing = inverse(pairing_matrix(sp, phi, psi));
    std::vector<F2Matrix> out;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) {
            F2Matrix alt(m, m);
            alt.set(u, v, true);
            alt.set(v, u, true);
            out.push_back(alt * inv_pairing);
        }
    return out;
}

std::vector<F2Matrix> sl_generators(std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("sl_generators: m must be positive");
    std::vector<F2Matrix> out;
    if (m == 1) return out;
    F2Matrix t = F2Matrix::identity(m);
    t.set(0, 1, true);
    out.push_back(std::move(t));
    F2Matrix cyc(m, m);
    for (std::size_t i = 0; i < m; ++i) cyc.set(i, (i + 1) % m, true);
    out.push_back(std::move(cyc));
    return out;
}

std::vector<BlockIsometry> stab_S_generators(const QuadraticSpace& sp, const Subspace& phi,
                                             const Subspace& psi, std::size_t k) {
    if (k < 3)
        throw std::invalid_argument("stab_S_generators: k must be at least 3");
    require_complementary_pair(sp, phi, psi, "stab_S_generators");
    const Subspace s = build_S(sp, phi, psi, k);
    const Isometry id = Isometry::identity(sp);

    std::vector<BlockIsometry> gens;
    std::vector<std::size_t> idperm(k);
    for (std::size_t i = 0; i < k; ++i) idperm[i] = i;

    // unipotent legs on coordinates (1, i)
    for (const auto& xm : o2h_basis(sp, phi, psi)) {
        const Isometry u = o2h_element(sp, phi, psi, xm);
        for (std::size_t i = 1; i < k; ++i) {
            std::vector<Isometry> blocks(k, id);
            blocks[0] = u;
            blocks[i] = u;
            gens.emplace_back(idperm, std::move(blocks));
        }
    }
    // diagonal Levi copy
    for (const auto& alpha : sl_generators(sp.witt_index())) {
        const Isometry lev = levi_lift(sp, phi, psi, alpha);
        gens.emplace_back(idperm, std::vector<Isometry>(k, lev));
    }
    // coordinate permutations: a transposition and the full cycle
    {
        std::vector<std::size_t> tr = idperm;
        std::swap(tr[0], tr[1]);
        gens.emplace_back(std::move(tr), std::vector<Isometry>(k, id));
        std::vector<std::size_t> cyc(k);
        for (std::size_t i = 0; i < k; ++i) cyc[i] = (i + 1) % k;
        gens.emplace_back(std::move(cyc), std::vector<Isometry>(k, id));
    }

    for (const auto& g : gens)
        if (!(g.apply(s) == s))
            throw std::logic_error("stab_S_generators: emitted element does not stabilize S");
    return gens;
}

namespace {

F2Vector place_block(std::size_t n, std::size_t k, std::size_t block, std::uint64_t bits) {
    F2Vector v(n * k);
    for (std::size_t i = 0; i < n; ++i)
        if ((bits >> i) & 1) v.set(block * n + i, true);
    return v;
}

}  // namespace

WreathDecomposition wreath_decompose(const QuadraticSpace& base, std::size_t k,
                                     const Isometry& g) {
    const std::size_t n = base.dim();
    if (g.space().dim() != n * k)
        throw std::invalid_argument("wreath_decompose: isometry does not live on the k-fold sum");
    F2Matrix expected_upper(n * k, n * k);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c)
                if (base.q_upper().get(r, c)) expected_upper.set(b * n + r, b * n + c, true);
    if (!(g.space().q_upper() == expected_upper))
        throw std::invalid_argument("wreath_decompose: isometry does not live on the k-fold sum");

    WreathDecomposition out;
    out.sigma.assign(k, k);
    std::vector<F2Matrix> mats(k, F2Matrix(n, n));
    std::vector<bool> hit(k, false);
    bool structured = true;

    for (std::size_t i = 0; i < k && structured; ++i) {
        std::size_t target = k;
        for (std::size_t t = 0; t < n && structured; ++t) {
            const F2Vector& img = g.mat().row(i * n + t);
            std::size_t support_block = k;
            for (std::size_t b = 0; b < k; ++b) {
                if (!img.slice(b * n, n).is_zero()) {
                    if (support_block != k) { structured = false; break; }
                    support_block = b;
                }
            }
            if (!structured || support_block == k) { structured = false; break; }
            if (target == k) target = support_block;
            else if (target != support_block) { structured = false; break; }
            mats[i].row(t) = img.slice(support_block * n, n);
        }
        if (!structured) break;
        if (hit[target]) { structured = false; break; }
        hit[target] = true;
        out.sigma[i] = target;
    }

    if (structured) {
        out.member = true;
        out.blocks.reserve(k);
        for (std::size_t i = 0; i < k; ++i) out.blocks.emplace_back(base, std::move(mats[i]));
        return out;
    }

    // not a wreath element, so some vector changes w^k; scan by support size
    out.member = false;
    out.sigma.clear();
    auto witnesses = [&](const F2Vector& v) {
        return wk_eval(base, k, g.apply(v)) != wk_eval(base, k, v);
    };
    if (n <= 24) {
        for (std::size_t b = 0; b < k; ++b)
            for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
                F2Vector v = place_block(n, k, b, bits);
                if (witnesses(v)) { out.witness = std::move(v); return out; }
            }
    }
    if (2 * n <= 24) {
        for (std::size_t b1 = 0; b1 < k; ++b1)
            for (std::size_t b2 = b1 + 1; b2 < k; ++b2)
                for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << (2 * n)); ++bits) {
                    F2Vector v = place_block(n, k, b1, bits & ((std::uint64_t{1} << n) - 1));
                    v ^= place_block(n, k, b2, bits >> n);
                    if (v.is_zero()) continue;
                    if (witnesses(v)) { out.witness = std::move(v); return out; }
                }
    }
    if (n * k <= 26) {
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << (n * k)); ++bits) {
            F2Vector v(n * k);
            for (std::size_t i = 0; i < n * k; ++i)
                if ((bits >> i) & 1) v.set(i, true);
            if (witnesses(v)) { out.witness = std::move(v); return out; }
        }
    }
    throw std::logic_error("wreath_decompose: no witness found for a non-wreath isometry");
}

SumSections sum_sections(const QuadraticSpace& base, const Subspace& s) {
    const std::size_t n = base.dim();
    const std::size_t k = 3;
    if (s.ambient_dim() != n * k)
        throw std::invalid_argument("sum_sections: expected a subspace of the 3-fold sum");

    SumSections out;
    auto slice_matrix = [&](const std::vector<std::size_t>& blocks) {
        F2Matrix m(0, blocks.size() * n);
        for (std::size_t r = 0; r < s.dim(); ++r) {
            F2Vector row(blocks.size() * n);
            for (std::size_t bi = 0; bi < blocks.size(); ++bi)
                row.paste(bi * n, s.basis().row(r).slice(blocks[bi] * n, n));
            m.append_row(std::move(row));
        }
        return m;
    };
    auto lift_coeffs = [&](const Subspace& coeffs) {
        F2Matrix rows(0, n * k);
        for (std::size_t r = 0; r < coeffs.dim(); ++r)
            rows.append_row(coeffs.basis().row(r) * s.basis());
        return Subspace(n * k, rows);
    };

    for (std::size_t i = 0; i < k; ++i)
        out.s_zero_at[i] = lift_coeffs(kernel(slice_matrix({i})));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) out.s_zero_at2[i][j] = lift_coeffs(kernel(slice_matrix({i, j})));
    return out;
}

Subspace apply_blocks(const Subspace& s, const std::vector<Isometry>& blocks) {
    const std::size_t k = blocks.size();
    const std::size_t n = blocks.front().space().dim();
    if (s.ambient_dim() != n * k)
        throw std::invalid_argument("apply_blocks: ambient mismatch");
    F2Matrix rows(0, n * k);
    for (std::size_t r = 0; r < s.dim(); ++r) {
        F2Vector row(n * k);
        for (std::size_t b = 0; b < k; ++b)
            row.paste(b * n, blocks[b].apply(s.basis().row(r).slice(b * n, n)));
        rows.append_row(std::move(row));
    }
    return Subspace(n * k, rows);
}

namespace {

Subspace block_projection(const Subspace& sub, std::size_t n, std::size_t block) {
    F2Matrix rows(0, n);
    for (std::size_t r = 0; r < sub.dim(); ++r)
        rows.append_row(sub.basis().row(r).slice(block * n, n));
    return Subspace(n, rows);
}

// the section {v in S : block `zero_block` = 0} is the graph of an
// invertible map phi -> phi read from block `from` to block `to`; returns
// its matrix in phi's basis
F2Matrix graph_matrix(const Subspace& section, const Subspace& phi, std::size_t n,
                      std::size_t from, std::size_t to) {
    const std::size_t m = phi.dim();
    F2Matrix from_rows(0, n);
    for (std::size_t r = 0; r < section.dim(); ++r)
        from_rows.append_row(section.basis().row(r).slice(from * n, n));
    F2Matrix h(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto y = solve(from_rows, phi.basis().row(j));
        if (!y) throw std::logic_error("canonicalize_S: section is not a graph over phi");
        F2Vector elem = *y * section.basis();
        auto coords = phi.coordinates(elem.slice(to * n, n));
        if (!coords) throw std::logic_error("canonicalize_S: graph image leaves phi");
        for (std::size_t l = 0; l < m; ++l) h.set(j, l, coords->get(l));
    }
    return h;
}

}  // namespace

Canonicalization canonicalize_S(const QuadraticSpace& base, const Subspace& s) {
    const std::size_t n = base.dim();
    const std::size_t m = base.witt_index();
    const QuadraticSpace sum = direct_sum_k(base, 3);
    if (s.ambient_dim() != 3 * n)
        throw std::invalid_argument("canonicalize_S: expected a subspace of the 3-fold sum");
    if (!is_maximal_totally_singular(sum, s))
        throw std::invalid_argument("canonicalize_S: input is not maximal totally singular");
    if (auto c1 = check_cond1(base, 3, s); !c1.ok)
        throw std::invalid_argument("canonicalize_S: input violates the weight condition at " +
                                    c1.violation.to_string());

    // structural invariants of admissible subspaces; each failure names the
    // invariant so the caller sees which precondition broke
    SumSections sec = sum_sections(base, s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (sec.s_zero_at2[i][j].dim() != 0)
                throw std::invalid_argument("canonicalize_S: section S^(" + std::to_string(i + 1) +
                                            std::to_string(j + 1) + ") is nonzero");
        }
    for (std::size_t i = 0; i < 3; ++i) {
        if (block_projection(s, n, i).dim() != n)
            throw std::invalid_argument("canonicalize_S: projection to coordinate " +
                                        std::to_string(i + 1) + " is not surjective");
        if (sec.s_zero_at[i].dim() != m)
            throw std::invalid_argument("canonicalize_S: section S^(" + std::to_string(i + 1) +
                                        ") has wrong dimension");
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (!is_maximal_totally_singular(base, block_projection(sec.s_zero_at[i], n, j)))
                throw std::invalid_argument(
                    "canonicalize_S: projection of section S^(" + std::to_string(i + 1) +
                    ") to coordinate " + std::to_string(j + 1) +
                    " is not maximal totally singular");
        }
    }

    const Isometry id = Isometry::identity(base);
    const Subspace phi = block_projection(sec.s_zero_at[2], n, 0);
    const Subspace phi_prime = block_projection(sec.s_zero_at[2], n, 1);

    // coordinate 2: move phi' onto phi, then straighten the graph of S^(3)
    // into the diagonal copy of phi
    const Isometry g2a = map_mts(base, phi_prime, phi);
    Subspace s1 = apply_blocks(s, {id, g2a, id});
    F2Matrix h2 = graph_matrix(sum_sections(base, s1).s_zero_at[2], phi, n, 0, 1);
    const Isometry g2 = g2a.compose(levi_lift(base, phi, find_complement(base, phi), inverse(h2)));

    // coordinate 3: same treatment for S^(2); its first projection is
    // already forced to be phi by total singularity against S^(3)
    Subspace s2 = apply_blocks(s, {id, g2, id});
    {
        const Subspace first = block_projection(sum_sections(base, s2).s_zero_at[1], n, 0);
        if (!(first == phi))
            throw std::logic_error("canonicalize_S: section S^(2) does not project onto phi");
    }
    const Subspace phi_dblprime = block_projection(sum_sections(base, s2).s_zero_at[1], n, 2);
    const Isometry g3a = map_mts(base, phi_dblprime, phi);
    Subspace s2b = apply_blocks(s, {id, g2, g3a});
    F2Matrix h3 = graph_matrix(sum_sections(base, s2b).s_zero_at[1], phi, n, 0, 2);
    const Isometry g3 = g3a.compose(levi_lift(base, phi, find_complement(base, phi), inverse(h3)));

    Subspace s3 = apply_blocks(s, {id, g2, g3});

    // coordinate 1: for each basis vector c of the canonical complement psi
    // there is a unique element (x(c)+c, c, c) of S; kill x with a unipotent
    const Subspace psi = find_complement(base, phi);
    F2Matrix tail(0, 2 * n);
    for (std::size_t r = 0; r < s3.dim(); ++r) {
        F2Vector row(2 * n);
        row.paste(0, s3.basis().row(r).slice(n, n));
        row.paste(n, s3.basis().row(r).slice(2 * n, n));
        tail.append_row(std::move(row));
    }
    F2Matrix xmap(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        F2Vector target(2 * n);
        target.paste(0, psi.basis().row(i));
        target.paste(n, psi.basis().row(i));
        auto y = solve(tail, target);
        if (!y) throw std::logic_error("canonicalize_S: no diagonal lift for a psi basis vector");
        F2Vector elem = *y * s3.basis();
        auto coords = phi.coordinates(elem.slice(0, n) ^ psi.basis().row(i));
        if (!coords) throw std::logic_error("canonicalize_S: diagonal correction leaves phi");
        for (std::size_t l = 0; l < m; ++l) xmap.set(i, l, coords->get(l));
    }
    const Isometry g1 = o2h_element(base, phi, psi, xmap);

    Subspace s4 = apply_blocks(s, {g1, g2, g3});
    const Subspace expected = build_S(base, phi, psi, 3);
    if (!(s4 == expected))
        throw std::logic_error("canonicalize_S: postcondition failed");

    std::vector<std::size_t> idperm = {0, 1, 2};
    return Canonicalization{BlockIsometry(idperm, {g1, g2, g3}), phi, psi};
}

}  // namespace turyn
