// Binary linear codes, the glue quadratic space C^perp/C of a doubly even
// code, the glued-code builder, and the length-24 construction whose weight
// distribution pins the extended binary Golay code.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "turyn/certificate.hpp"
#include "turyn/f2linalg.hpp"
#include "turyn/quadspace.hpp"

namespace turyn {

class BinaryCode {
public:
    BinaryCode(std::size_t length, const F2Matrix& generators);

    std::size_t length() const { return words_.ambient_dim(); }
    std::size_t dim() const { return words_.dim(); }
    const Subspace& words() const { return words_; }
    const F2Matrix& generator_matrix() const { return words_.basis(); }
    bool contains(const F2Vector& v) const { return words_.contains(v); }

    bool operator==(const BinaryCode&) const = default;

private:
    Subspace words_;
};

// span{1_n}
BinaryCode repetition_code(std::size_t n);
// the [8,4] self-dual doubly even code, pinned generator matrix
BinaryCode extended_hamming8();

BinaryCode dual_code(const BinaryCode& c);
bool is_doubly_even(const BinaryCode& c);
bool is_self_dual(const BinaryCode& c);

// counts by weight over all 2^dim codewords; dim <= 24 enforced
std::vector<std::size_t> weight_enumerator(const BinaryCode& c);

// The glue space (R(C), q_C) of a doubly even code C of length n in 8Z
// containing the all-ones word: R(C) = C^perp/C with q_C(x+C) = wt(x)/2 mod 2.
class GlueSpaceC {
public:
    explicit GlueSpaceC(BinaryCode c);

    const BinaryCode& base() const { return base_; }
    const BinaryCode& dual() const { return dual_; }
    // throws when the glue group is trivial (self-dual base code)
    const QuadraticSpace& space() const;
    std::size_t glue_dim() const { return transversal_.rows(); }  // m

    // coset coordinates of x in C^perp over the fixed transversal basis
    F2Vector project(const F2Vector& x) const;
    // image of a subcode C <= A <= C^perp
    Subspace project_code(const BinaryCode& a) const;
    // minimum-weight representative of the class u, lexicographically
    // smallest on ties
    F2Vector lift(const F2Vector& u) const;
    // inverse image of a subspace of R(C) as a code
    BinaryCode lift_code(const Subspace& s) const;

private:
    BinaryCode base_;
    BinaryCode dual_;
    F2Matrix transversal_;  // m rows of C^perp completing a basis mod C
    std::shared_ptr<const QuadraticSpace> space_;
};

// the glued code (phi_C^k)^{-1}(S) of length n*k; doubly even and self-dual
// for maximal totally singular S (asserted post-build)
BinaryCode build_code_from_S(const GlueSpaceC& glue, std::size_t k, const Subspace& s);

// number of weight-t words in the coset of u
std::size_t coset_weight_count(const GlueSpaceC& glue, const F2Vector& u, std::size_t t);
// counts for every weight 0..n
std::vector<std::size_t> coset_weight_profile(const GlueSpaceC& glue, const F2Vector& u);

struct GolayBuild {
    BinaryCode code;
    Certificate cert;
    GlueSpaceC glue;
    Subspace phi, psi, s;
};

// length-24 construction from C = span{1_8}: glue the image of the extended
// Hamming code with its canonical complement over three coordinates
GolayBuild build_golay();

// the three-term octad count: closed form, weight-4 classification times
// per-coset constants, and the direct enumeration, all compared
Certificate verify_759_identity();

}  // namespace turyn
