// Isometries of plus-type quadratic spaces over F2 and of their k-fold
// orthogonal sums: transvection generators, constructive Witt extensions,
// BFS group closure, stabilizer generators of the glued subspace
// S(Phi,Psi;k), wreath decomposition, and the canonicalization that moves
// any admissible maximal totally singular subspace of R^3 to standard form.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "turyn/f2linalg.hpp"
#include "turyn/quadspace.hpp"

namespace turyn {

class Isometry {
public:
    // verifies invertibility and q-preservation on the standard basis plus
    // all basis pairs (which pins q on the whole space by polarization)
    Isometry(const QuadraticSpace& space, F2Matrix mat);

    static Isometry identity(const QuadraticSpace& space);

    const QuadraticSpace& space() const { return *space_; }
    const F2Matrix& mat() const { return mat_; }

    F2Vector apply(const F2Vector& v) const { return v * mat_; }
    Subspace apply(const Subspace& s) const;

    // this followed by `then` (row convention: v * mat * then.mat)
    Isometry compose(const Isometry& then) const;
    Isometry inverted() const;

    bool operator==(const Isometry& o) const { return mat_ == o.mat_; }

private:
    struct unchecked_t {};
    Isometry(std::shared_ptr<const QuadraticSpace> space, F2Matrix mat, unchecked_t)
        : space_(std::move(space)), mat_(std::move(mat)) {}

    std::shared_ptr<const QuadraticSpace> space_;
    F2Matrix mat_;

    friend std::vector<Isometry> group_closure(const QuadraticSpace&,
                                               const std::vector<Isometry>&, std::size_t);
};

// An element of O(R,q) wr Sym_k acting on R^k: block i is transformed by
// blocks[i] and moved to position sigma[i].
class BlockIsometry {
public:
    BlockIsometry(std::vector<std::size_t> sigma, std::vector<Isometry> blocks);
    static BlockIsometry identity(const QuadraticSpace& base, std::size_t k);

    std::size_t k() const { return sigma_.size(); }
    const std::vector<std::size_t>& sigma() const { return sigma_; }
    const std::vector<Isometry>& blocks() const { return blocks_; }
    const QuadraticSpace& base() const { return blocks_.front().space(); }

    F2Vector apply(const F2Vector& v) const;
    Subspace apply(const Subspace& s) const;
    // the same action as a single isometry of direct_sum_k(base, k)
    Isometry flatten() const;

private:
    std::vector<std::size_t> sigma_;
    std::vector<Isometry> blocks_;
};

// x -> x + <x,a> a for a non-singular a; an involution in O(R,q)
Isometry transvection(const QuadraticSpace& sp, const F2Vector& a);

// all transvections t_a, q(a) = 1
std::vector<Isometry> transvection_generators(const QuadraticSpace& sp);

// the extra generator for the one exceptional case (dimension 4 over F2,
// plus type), where the transvections only generate an index-2 subgroup:
// swaps the two hyperbolic planes of the canonical Witt basis
Isometry exceptional_o4_generator(const QuadraticSpace& sp);

// generators of the full orthogonal group O(R,q): all transvections, plus
// the pair swap when dim == 4
std::vector<Isometry> orthogonal_group_generators(const QuadraticSpace& sp);

// BFS closure of the generated group. cap == 0 means the TURYN_MAX_CLOSURE
// environment variable, or 2^26 when unset; exceeding it throws.
std::vector<Isometry> group_closure(const QuadraticSpace& sp,
                                    const std::vector<Isometry>& gens,
                                    std::size_t cap = 0);

// singular frame dual to a maximal totally singular phi: rows f_j with
// q(f_j) = 0, <f_i,f_j> = 0 and <phi_i, f_j> = delta_ij
F2Matrix dual_singular_frame(const QuadraticSpace& sp, const Subspace& phi);

// canonical complementary maximal totally singular subspace
Subspace find_complement(const QuadraticSpace& sp, const Subspace& phi);

// g with phi1 * g = phi2 (hyperbolic completion mapped onto hyperbolic
// completion)
Isometry map_mts(const QuadraticSpace& sp, const Subspace& phi1, const Subspace& phi2);

// g with a * g = b for nonzero singular a, b
Isometry map_singular(const QuadraticSpace& sp, const F2Vector& a, const F2Vector& b);

// g with phi1 * g = phi2 and psi1 * g = psi2 for complementary pairs
Isometry map_mts_pair(const QuadraticSpace& sp, const Subspace& phi1, const Subspace& psi1,
                      const Subspace& phi2, const Subspace& psi2);

// Levi element: stabilizes both phi and psi, acts on phi by the invertible
// m x m matrix alpha (in phi's RREF basis) and on psi by the dual map
Isometry levi_lift(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                   const F2Matrix& alpha);

// Unipotent element fixing phi pointwise and inducing the identity on
// R/phi: maps the i-th RREF basis vector b_i of psi to b_i + x(b_i) where
// x(b_i) = sum_l xmap[i][l] * phi_l. Requires <x(b),b> = 0 and the symmetry
// <x(b_i),b_j> = <x(b_j),b_i>; rejected otherwise, naming the failing pair.
Isometry o2h_element(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                     const F2Matrix& xmap);

// basis of valid o2h coefficient matrices for the pair (phi, psi); the
// generated group is elementary abelian of order 2^(m choose 2)
std::vector<F2Matrix> o2h_basis(const QuadraticSpace& sp, const Subspace& phi,
                                const Subspace& psi);

// standard generating pair of SL_m(2) (empty for m = 1)
std::vector<F2Matrix> sl_generators(std::size_t m);

// Generators of the stabilizer of build_S(phi,psi,k) in Aut(R^k,w^k) for a
// complementary pair and k >= 3: the unipotent legs on coordinates (1,i),
// the diagonal Levi copy, and the coordinate permutations. Every emitted
// element is checked to stabilize the subspace.
std::vector<BlockIsometry> stab_S_generators(const QuadraticSpace& sp, const Subspace& phi,
                                             const Subspace& psi, std::size_t k);

struct WreathDecomposition {
    bool member = false;
    std::vector<std::size_t> sigma;
    std::vector<Isometry> blocks;
    F2Vector witness;  // when !member: w^k(witness * g) != w^k(witness)
};

// factor a q^k-isometry through O(R,q) wr Sym_k, or exhibit a w^k witness
WreathDecomposition wreath_decompose(const QuadraticSpace& base, std::size_t k,
                                     const Isometry& g);

struct Canonicalization {
    BlockIsometry g;  // sigma = id
    Subspace phi, psi;
};

// Moves a maximal totally singular S of the 3-fold sum with w^3 >= 4 off
// zero to the standard glued form: returns g, phi, psi with
// S * g = build_S(phi, psi, 3), verified before returning.
Canonicalization canonicalize_S(const QuadraticSpace& base, const Subspace& s);

// section data used by the canonicalization and its tests
struct SumSections {
    Subspace s_zero_at[3];       // S^(i): block i vanishes
    Subspace s_zero_at2[3][3];   // S^(ij), i != j
};
SumSections sum_sections(const QuadraticSpace& base, const Subspace& s);

// apply per-coordinate isometries (no permutation) to a subspace of R^k
Subspace apply_blocks(const Subspace& s, const std::vector<Isometry>& blocks);

}  // namespace turyn
