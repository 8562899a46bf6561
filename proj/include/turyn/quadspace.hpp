// Plus-type quadratic spaces over F2, the 0/1/2 weight map w and its k-fold
// sum w^k, and the glued maximal totally singular subspace S(Phi,Psi;k).
//
// A quadratic form is stored as an upper-triangular matrix U with
// q(x) = x U x^T; the diagonal carries the values q(e_i) and the associated
// symplectic form is B = U + U^T. In characteristic 2 the form q is not
// recoverable from B, so U is the primary datum.

#pragma once

#include <cstddef>
#include <vector>

#include "turyn/f2linalg.hpp"

namespace turyn {

class QuadraticSpace {
public:
    // Verifies: U square and upper-triangular, B = U + U^T nonsingular,
    // and the space is of plus type (a maximal totally singular subspace of
    // dimension dim/2 exists, found by greedy hyperbolic-pair extraction).
    explicit QuadraticSpace(F2Matrix q_upper);

    std::size_t dim() const { return upper_.rows(); }
    std::size_t witt_index() const { return dim() / 2; }  // m

    const F2Matrix& q_upper() const { return upper_; }
    const F2Matrix& bilinear() const { return bform_; }

    bool q(const F2Vector& v) const;
    bool bform(const F2Vector& u, const F2Vector& v) const;

    // 0 on the zero vector, 1 on non-singular vectors, 2 on singular ones
    int w(const F2Vector& a) const;

    bool operator==(const QuadraticSpace& o) const { return upper_ == o.upper_; }

private:
    F2Matrix upper_;
    F2Matrix bform_;
};

// q(x) = sum_i x_{2i} x_{2i+1}; the standard complementary maximal totally
// singular pair is span{e_0,e_2,...} and span{e_1,e_3,...}
QuadraticSpace hyperbolic_space(std::size_t m);
Subspace standard_phi(const QuadraticSpace& sp);
Subspace standard_psi(const QuadraticSpace& sp);

// orthogonal direct sum of k copies; block i occupies coordinates
// [i*dim, (i+1)*dim), so per-block access is a bit slice
QuadraticSpace direct_sum_k(const QuadraticSpace& sp, std::size_t k);

struct WeightProfile {
    std::vector<int> block_weights;  // entries in {0,1,2}
    int total = 0;
};

int wk_eval(const QuadraticSpace& base, std::size_t k, const F2Vector& v);
WeightProfile wk_profile(const QuadraticSpace& base, std::size_t k, const F2Vector& v);

bool is_totally_singular(const QuadraticSpace& sp, const Subspace& u);
bool is_maximal_totally_singular(const QuadraticSpace& sp, const Subspace& u);

// deterministic maximal totally singular subspace (greedy hyperbolic basis,
// e-parts), used when any one subspace of top Witt index is needed
Subspace maximal_totally_singular(const QuadraticSpace& sp);

// S(Phi,Psi;k): span of the diagonal pairs Phi_(1i) (2<=i<=k), the full
// diagonal Psi_(12...k) and the first-block copy of Phi∩Psi. Always maximal
// totally singular of dimension m*k.
Subspace build_S(const QuadraticSpace& sp, const Subspace& phi, const Subspace& psi,
                 std::size_t k);

struct Cond1Result {
    bool ok = true;
    F2Vector violation;  // first failing vector in coefficient order, when !ok
};

// exhaustively checks w^k(v) >= 4 for every nonzero v in s
Cond1Result check_cond1(const QuadraticSpace& base, std::size_t k, const Subspace& s);

struct W4Classification {
    std::vector<F2Vector> type1;  // sigma(a,a,0) with a in Phi\{0}
    std::vector<F2Vector> type2;  // w-profile a permutation of (2,1,1)
};

// partitions {v in S : w^3(v) = 4}; a vector matching neither pattern is an
// internal error (it would contradict the classification this relies on)
W4Classification classify_w4(const QuadraticSpace& base, const Subspace& phi,
                             const Subspace& s);

}  // namespace turyn
