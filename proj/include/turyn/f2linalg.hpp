// Bit-packed linear algebra over F2: vectors, matrices, canonical subspaces.
//
// Conventions used throughout the library:
//   - vectors are rows, linear maps act on the right: v -> v * M
//   - bit i of a vector is coordinate i (little-endian within 64-bit words)
//   - RREF pivots are chosen lowest-column-first, so every reduced object
//     (and everything downstream built from one) is deterministic

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace turyn {

class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    static F2Vector from_bits(std::string_view bits);
    static F2Vector unit(std::size_t length, std::size_t i);

    std::size_t length() const { return len_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    F2Vector& operator^=(const F2Vector& o);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { a ^= b; return a; }

    // standard inner product on F2^n (parity of the AND)
    bool dot(const F2Vector& o) const;

    bool is_zero() const;
    std::size_t popcount() const;
    // index of the lowest set bit, or -1
    int lowest_set() const;

    // coordinates [begin, begin+len) as a fresh vector
    F2Vector slice(std::size_t begin, std::size_t len) const;
    // write src into coordinates [begin, begin+src.length())
    void paste(std::size_t begin, const F2Vector& src);

    std::span<const std::uint64_t> words() const { return words_; }
    std::string to_string() const;

    bool operator==(const F2Vector&) const = default;
    auto operator<=>(const F2Vector&) const = default;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;  // bits past len_ are kept zero
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : cols_(cols), rows_(rows, F2Vector(cols)) {}

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(std::vector<F2Vector> rows);
    static F2Matrix from_strings(const std::vector<std::string_view>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    const F2Vector& row(std::size_t r) const { return rows_[r]; }
    F2Vector& row(std::size_t r) { return rows_[r]; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

    void append_row(F2Vector v);
    F2Matrix transposed() const;

    bool is_zero() const;
    bool operator==(const F2Matrix&) const = default;

    // rows flattened word-by-word, for hashing
    std::vector<std::uint64_t> packed() const;

private:
    std::size_t cols_ = 0;
    std::vector<F2Vector> rows_;
};

F2Vector operator*(const F2Vector& v, const F2Matrix& m);
F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);

struct RrefResult {
    F2Matrix reduced;                     // R, reduced row-echelon form
    std::size_t rank = 0;
    F2Matrix transform;                   // invertible T with T * M = R
    std::vector<std::size_t> pivot_cols;  // strictly increasing, size == rank
};

RrefResult rref(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);
// inverse of a square invertible matrix; throws std::invalid_argument otherwise
F2Matrix inverse(const F2Matrix& m);

// solve x * m = b; empty when inconsistent. The returned solution is the
// deterministic one induced by lowest-pivot elimination.
std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b);

class Subspace;

// left kernel {x : x * m = 0}, ambient dimension m.rows()
Subspace kernel(const F2Matrix& m);

// A subspace of F2^n held as its unique RREF basis. Two Subspace values
// compare equal iff they are the same subspace.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}
    Subspace(std::size_t ambient_dim, const F2Matrix& spanning_rows);

    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const F2Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    bool contains(const F2Vector& v) const;
    bool contains(const Subspace& other) const;
    // coefficients of v over basis(); empty when v is outside
    std::optional<F2Vector> coordinates(const F2Vector& v) const;

    bool operator==(const Subspace&) const = default;

private:
    std::size_t ambient_ = 0;
    F2Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

}  // namespace turyn
