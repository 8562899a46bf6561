// Exact integer lattices and their glue quadratic spaces. A lattice is held
// as its doubled Gram matrix (integral for everything in scope, since the
// duals here satisfy 2L* <= L), so evenness, determinants and short-vector
// counts are computed with no floating point at all.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "turyn/certificate.hpp"
#include "turyn/f2linalg.hpp"
#include "turyn/quadspace.hpp"

namespace turyn {

using ZMat = std::vector<std::vector<mpz_class>>;
using QMat = std::vector<std::vector<mpq_class>>;

class ExactLattice {
public:
    // gram2 = 2 x (Gram matrix); must be symmetric and positive definite
    explicit ExactLattice(ZMat gram2);

    std::size_t rank() const { return gram2_.size(); }
    const ZMat& gram2() const { return gram2_; }
    const mpz_class& gram2(std::size_t i, std::size_t j) const { return gram2_[i][j]; }

    // (v,v) in 2Z for all v, i.e. every diagonal gram2 entry is in 4Z
    bool is_even() const;
    mpz_class det_gram2() const;
    // det(Gram) = det(gram2) / 2^rank
    mpq_class det_gram() const;
    bool is_unimodular() const;
    // Gram^{-1} (rational, exact)
    QMat gram_inverse() const;

    bool operator==(const ExactLattice&) const = default;

private:
    ZMat gram2_;
};

// gram2 = 4 x (E8 Cartan matrix): the E8 root lattice scaled by sqrt 2
ExactLattice sqrt2_e8();
ExactLattice orthogonal_sum(const ExactLattice& a, const ExactLattice& b);

// The glue space (R(L), q_L) of an even lattice L of rank n in 8Z whose dual
// vectors all have integral norm: R(L) = L*/L with q_L(v+L) = (v,v) mod 2.
// Classes are represented by vectors h in F2^n via the half-coordinate
// representative h/2 over the basis of L.
class GlueSpaceL {
public:
    explicit GlueSpaceL(ExactLattice l);

    const ExactLattice& base() const { return base_; }
    const QuadraticSpace& space() const { return *space_; }
    std::size_t glue_dim() const { return glue_basis_.rows(); }  // full dim of R(L)

    // class representatives: row i of glue_basis is the F2^n parity vector
    // of the i-th basis class of R(L)
    const F2Matrix& glue_basis() const { return glue_basis_; }
    // R(L)-coordinates (glue_dim bits) -> parity vector in F2^n
    F2Vector expand(const F2Vector& u) const;

    bool operator==(const GlueSpaceL&) const = default;

private:
    ExactLattice base_;
    F2Matrix glue_basis_;
    std::shared_ptr<const QuadraticSpace> space_;
};

// counts of vectors of each norm 0..bound in the coset lift(u) + L,
// by exact shifted short-vector enumeration; bound <= 8
std::vector<long> coset_norm_profile(const GlueSpaceL& glue, const F2Vector& u, long bound);

// exact counts of the form value z^T gram2 z over integer z with z = parity
// (mod 2) when parity is nonempty, up to the budget inclusive; the engine
// behind coset_norm_profile, exposed for oracle tests
std::map<long, long> form_value_counts(const ExactLattice& l, const std::vector<int>& parity,
                                       long budget);

// direct exact count of lattice vectors of the given norm (no coset);
// used for small ranks and behind the long-run flag at rank 24
long count_norm_vectors(const ExactLattice& l, long norm);

// preimage of an arbitrary subspace of R(L)^k: the overlattice of L^k
// spanned by the class representatives
ExactLattice glue_overlattice(const GlueSpaceL& glue, std::size_t k, const Subspace& t);

// the glued lattice (phi_L^k)^{-1}(S) of rank n*k; even and unimodular for
// maximal totally singular S (asserted post-build)
ExactLattice build_lattice_from_S(const GlueSpaceL& glue, std::size_t k, const Subspace& s);

struct LeechBuild {
    ExactLattice lattice;
    Certificate cert;
    GlueSpaceL glue;
    Subspace phi, psi, s;
};

// rank-24 construction from sqrt2_e8: glue a greedy maximal totally
// singular subspace with its canonical complement over three coordinates.
// full_enum additionally runs the direct rank-24 norm-4 enumeration.
LeechBuild build_leech(bool full_enum = false);

// the three-term norm-4 count: closed form, weight-4 classification times
// per-coset profiles, and (optionally) the direct rank-24 enumeration
Certificate verify_196560_identity(bool full_enum = false);

}  // namespace turyn
