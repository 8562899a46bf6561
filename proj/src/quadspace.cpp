#include "turyn/quadspace.hpp"

#include <stdexcept>
#include <string>

namespace turyn {

namespace {

// Greedy Witt decomposition restricted to the row space of `span`: returns
// hyperbolic pairs (e_i, f_i). Throws if a step finds no singular vector,
// which happens exactly when the restricted space is of minus type.
struct HyperbolicPairs {
    std::vector<F2Vector> e, f;
};

HyperbolicPairs witt_pairs(const QuadraticSpace& sp, F2Matrix span) {
    HyperbolicPairs out;
    while (span.rows() > 0) {
        const std::size_t r = span.rows();
        // a singular vector is always a sum of at most three basis rows:
        // singles, then pairs (q = q_i + q_j + <i,j>), then any triple when
        // all singles are non-singular and all pairings are 1
        F2Vector e;
        bool found = false;
        for (std::size_t i = 0; i < r && !found; ++i)
            if (!sp.q(span.row(i))) { e = span.row(i); found = true; }
        for (std::size_t i = 0; i < r && !found; ++i)
            for (std::size_t j = i + 1; j < r && !found; ++j) {
                F2Vector cand = span.row(i) ^ span.row(j);
                if (!sp.q(cand)) { e = std::move(cand); found = true; }
            }
        for (std::size_t i = 0; i < r && !found; ++i)
            for (std::size_t j = i + 1; j < r && !found; ++j)
                for (std::size_t l = j + 1; l < r && !found; ++l) {
                    F2Vector cand = span.row(i) ^ span.row(j) ^ span.row(l);
                    if (!sp.q(cand)) { e = std::move(cand); found = true; }
                }
        if (!found)
            throw std::invalid_argument("quadratic space is not of plus type");

        std::size_t fi = r;
        for (std::size_t i = 0; i < r; ++i)
            if (sp.bform(span.row(i), e)) { fi = i; break; }
        if (fi == r)
            throw std::invalid_argument("quadratic form is singular");
        F2Vector f = span.row(fi);
        if (sp.q(f)) f ^= e;

        // restrict to the perp of span{e,f} inside the current space
        F2Matrix pair_forms(0, 2);
        for (std::size_t i = 0; i < r; ++i) {
            F2Vector row(2);
            row.set(0, sp.bform(span.row(i), e));
            row.set(1, sp.bform(span.row(i), f));
            pair_forms.append_row(std::move(row));
        }
        Subspace coef = kernel(pair_forms);
        F2Matrix next(0, sp.dim());
        for (std::size_t i = 0; i < coef.dim(); ++i)
            next.append_row(coef.basis().row(i) * span);
        out.e.push_back(std::move(e));
        out.f.push_back(std::move(f));
        span = std::move(next);
    }
    return out;
}

}  // namespace

QuadraticSpace::QuadraticSpace(F2Matrix q_upper) : upper_(std::move(q_upper)) {
    const std::size_t n = upper_.rows();
    if (upper_.cols() != n)
        throw std::invalid_argument("QuadraticSpace: form matrix is not square");
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("QuadraticSpace: dimension must be a positive even number");
    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c)
            if (upper_.get(r, c))
                throw std::invalid_argument("QuadraticSpace: form matrix is not upper-triangular");
    bform_ = F2Matrix(n, n);
    const F2Matrix ut = upper_.transposed();
    for (std::size_t r = 0; r < n; ++r)
        bform_.row(r) = upper_.row(r) ^ ut.row(r);
    if (rank(bform_) != n)
        throw std::invalid_argument("QuadraticSpace: associated symplectic form is singular");
    // plus type: greedy Witt extraction must consume the whole space
    witt_pairs(*this, F2Matrix::identity(n));
}

bool QuadraticSpace::q(const F2Vector& v) const {
    if (v.length() != dim())
        throw std::invalid_argument("QuadraticSpace::q: dimension mismatch");
    return (v * upper_).dot(v);
}

bool QuadraticSpace::bform(const F2Vector& u, const F2Vector& v) const {
    if (u.length() != dim() || v.length() != dim())
        throw std::invalid_argument("QuadraticSpace::bform: dimension mismatch");
    return (u * bform_).dot(v);
}

int QuadraticSpace::w(const F2Vector& a) const {
    if (a.is_zero()) return 0;
    return q(a) ? 1 : 2;
}

QuadraticSpace hyperbolic_space(std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("hyperbolic_space: m must be positive");
    F2Matrix u(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) u.set(2 * i, 2 * i + 1, true);
    return QuadraticSpace(std::move(u));
}

Subspace standard_phi(const QuadraticSpace& sp) {
    F2Matrix rows(0, sp.dim());
    for (std::size_t i = 0; i < sp.dim(); i += 2)
        rows.append_row(F2Vector::unit(sp.dim(), i));
    return Subspace(sp.dim(), rows);
}

Subspace standard_psi(const QuadraticSpace& sp) {
    F2Matrix rows(0, sp.dim());
    for (std::size_t i = 1; i < sp.dim(); i += 2)
        rows.append_row(F2Vector::unit(sp.dim(), i));
    return Subspace(sp.dim(), rows);
}

QuadraticSpace direct_sum_k(const QuadraticSpace& sp, std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("direct_sum_k: k must be positive");
    const std::size_t n = sp.dim();
    F2Matrix u(n * k, n * k);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c)
                if (sp.q_upper().get(r, c)) u.set(b * n + r, b * n + c, true);
    return QuadraticSpace(std::move(u));
}

WeightProfile wk_profile(const QuadraticSpace& base, std::size_t k, const F2Vector& v) {
    const std::size_t n = base.dim();
    if (v.length() != n * k)
        throw std::invalid_argument("wk_profile: length mismatch");
    WeightProfile p;
    p.block_weights.reserve(k);
    for (std::size_t b = 0; b < k; ++b) {
        int wb = base.w(v.slice(b * n, n));
        p.block_weights.push_back(wb);
        p.total += wb;
    }
    return p;
}

int wk_eval(const QuadraticSpace& base, std::size_t k, const F2Vector& v) {
    return wk_profile(base, k, v).total;
}

bool is_totally_singular(const QuadraticSpace& sp, const Subspace& u) {
    if (u.ambient_dim() != sp.dim())
        throw std::invalid_argument("is_totally_singular: ambient mismatch");
    // q vanishes on a span iff it vanishes on a basis and the bilinear form
    // vanishes on all basis pairs
    for (std::size_t i = 0; i < u.dim(); ++i) {
        if (sp.q(u.basis().row(i))) return false;
        for (std::size_t j = i + 1; j < u.dim(); ++j)
            if (sp.bform(u.basis().row(i), u.basis().row(j))) return false;
    }
    return true;
}

bool is_maximal_totally_singular(const QuadraticSpace& sp, const Subspace& u) {
    return u.dim() == sp.witt_index() && is_totally_singular(sp, u);
}

Subspace maximal_totally_singular(const QuadraticSpace& sp) {
    HyperbolicPairs pairs = witt_pairs(sp, F2Matrix::identity(sp.dim()));
    F2Matrix rows(0, sp.dim());
    for (const auto& e : pairs.e) rows.append_row(e);
    return Subspace(sp.dim(), rows);
}

Subspace build_S(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                 std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("build_S: k must be positive");
    if (!is_maximal_totally_singular(sp, phi) || !is_maximal_totally_singular(sp, psi))
        throw std::invalid_argument("build_S: inputs must be maximal totally singular");
    const std::size_t n = sp.dim();
    const std::size_t m = sp.witt_index();
    F2Matrix rows(0, n * k);
    for (std::size_t i = 1; i < k; ++i) {
        for (std::size_t r = 0; r < phi.dim(); ++r) {
            F2Vector v(n * k);
            v.paste(0, phi.basis().row(r));
            v.paste(i * n, phi.basis().row(r));
            rows.append_row(std::move(v));
        }
    }
    for (std::size_t r = 0; r < psi.dim(); ++r) {
        F2Vector v(n * k);
        for (std::size_t b = 0; b < k; ++b) v.paste(b * n, psi.basis().row(r));
        rows.append_row(std::move(v));
    }
    Subspace inter = subspace_intersect(phi, psi);
    for (std::size_t r = 0; r < inter.dim(); ++r) {
        F2Vector v(n * k);
        v.paste(0, inter.basis().row(r));
        rows.append_row(std::move(v));
    }
    Subspace s(n * k, rows);
    if (s.dim() != m * k)
        throw std::logic_error("build_S: span has unexpected dimension");
    return s;
}

namespace {

// nonzero elements of s in lexicographic coefficient order (first basis row
// is the most significant coefficient)
template <typename Fn>
void for_each_nonzero(const Subspace& s, Fn&& fn) {
    const std::size_t d = s.dim();
    if (d > 28)
        throw std::invalid_argument("exhaustive subspace sweep: dimension too large");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        F2Vector v(s.ambient_dim());
        for (std::size_t j = 0; j < d; ++j)
            if ((mask >> (d - 1 - j)) & 1) v ^= s.basis().row(j);
        if (!fn(v)) return;
    }
}

}  // namespace

Cond1Result check_cond1(const QuadraticSpace& base, std::size_t k, const Subspace& s) {
    if (s.ambient_dim() != base.dim() * k)
        throw std::invalid_argument("check_cond1: ambient mismatch");
    Cond1Result res;
    for_each_nonzero(s, [&](const F2Vector& v) {
        if (wk_eval(base, k, v) < 4) {
            res.ok = false;
            res.violation = v;
            return false;
        }
        return true;
    });
    return res;
}

W4Classification classify_w4(const QuadraticSpace& base, const Subspace& phi,
                             const Subspace& s) {
    if (s.ambient_dim() != base.dim() * 3)
        throw std::invalid_argument("classify_w4: expected a subspace of the 3-fold sum");
    const std::size_t n = base.dim();
    W4Classification out;
    for_each_nonzero(s, [&](const F2Vector& v) {
        WeightProfile p = wk_profile(base, 3, v);
        if (p.total != 4) return true;
        int ones = 0, twos = 0, zeros = 0;
        for (int wb : p.block_weights) {
            if (wb == 0) ++zeros;
            else if (wb == 1) ++ones;
            else ++twos;
        }
        if (zeros == 1 && twos == 2) {
            // sigma(a,a,0): the two singular blocks must agree and lie in Phi
            std::vector<F2Vector> nz;
            for (std::size_t b = 0; b < 3; ++b) {
                F2Vector blk = v.slice(b * n, n);
                if (!blk.is_zero()) nz.push_back(std::move(blk));
            }
            if (nz[0] != nz[1] || !phi.contains(nz[0]))
                throw std::logic_error("classify_w4: (2,2,0)-profile vector is not of type I");
            out.type1.push_back(v);
        } else if (ones == 2 && twos == 1) {
            out.type2.push_back(v);
        } else {
            throw std::logic_error("classify_w4: weight-4 vector matches neither pattern");
        }
        return true;
    });
    return out;
}

}  // namespace turyn
