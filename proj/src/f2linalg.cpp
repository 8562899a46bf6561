#include "turyn/f2linalg.hpp"

#include <bit>
#include <stdexcept>

namespace turyn {

namespace {

void check_same_length(const F2Vector& a, const F2Vector& b, const char* what) {
    if (a.length() != b.length())
        throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

F2Vector F2Vector::from_bits(std::string_view bits) {
    F2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("F2Vector::from_bits: character is not 0 or 1");
    }
    return v;
}

F2Vector F2Vector::unit(std::size_t length, std::size_t i) {
    F2Vector v(length);
    v.set(i, true);
    return v;
}

F2Vector& F2Vector::operator^=(const F2Vector& o) {
    check_same_length(*this, o, "F2Vector::operator^=");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
}

bool F2Vector::dot(const F2Vector& o) const {
    check_same_length(*this, o, "F2Vector::dot");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
}

bool F2Vector::is_zero() const {
    for (auto w : words_) if (w) return false;
    return true;
}

std::size_t F2Vector::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

int F2Vector::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
    return -1;
}

F2Vector F2Vector::slice(std::size_t begin, std::size_t len) const {
    if (begin + len > len_) throw std::invalid_argument("F2Vector::slice: out of range");
    F2Vector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(begin + i)) out.set(i, true);
    return out;
}

void F2Vector::paste(std::size_t begin, const F2Vector& src) {
    if (begin + src.length() > len_) throw std::invalid_argument("F2Vector::paste: out of range");
    for (std::size_t i = 0; i < src.length(); ++i) set(begin + i, src.get(i));
}

std::string F2Vector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(std::vector<F2Vector> rows) {
    F2Matrix m;
    m.cols_ = rows.empty() ? 0 : rows.front().length();
    for (const auto& r : rows)
        if (r.length() != m.cols_)
            throw std::invalid_argument("F2Matrix::from_rows: ragged rows");
    m.rows_ = std::move(rows);
    return m;
}

F2Matrix F2Matrix::from_strings(const std::vector<std::string_view>& rows) {
    std::vector<F2Vector> vs;
    vs.reserve(rows.size());
    for (auto s : rows) vs.push_back(F2Vector::from_bits(s));
    return from_rows(std::move(vs));
}

void F2Matrix::append_row(F2Vector v) {
    if (rows_.empty()) cols_ = v.length();
    else if (v.length() != cols_)
        throw std::invalid_argument("F2Matrix::append_row: length mismatch");
    rows_.push_back(std::move(v));
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

bool F2Matrix::is_zero() const {
    for (const auto& r : rows_) if (!r.is_zero()) return false;
    return true;
}

std::vector<std::uint64_t> F2Matrix::packed() const {
    std::vector<std::uint64_t> out;
    out.reserve(rows() * ((cols_ + 63) / 64));
    for (const auto& r : rows_)
        for (auto w : r.words()) out.push_back(w);
    return out;
}

F2Vector operator*(const F2Vector& v, const F2Matrix& m) {
    if (v.length() != m.rows())
        throw std::invalid_argument("F2Vector * F2Matrix: dimension mismatch");
    F2Vector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (v.get(r)) out ^= m.row(r);
    return out;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("F2Matrix * F2Matrix: dimension mismatch");
    F2Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) out.row(r) = a.row(r) * b;
    return out;
}

RrefResult rref(const F2Matrix& m) {
    RrefResult res;
    res.reduced = m;
    res.transform = F2Matrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !res.reduced.get(p, c)) ++p;
        if (p == m.rows()) continue;
        std::swap(res.reduced.row(r), res.reduced.row(p));
        std::swap(res.transform.row(r), res.transform.row(p));
        for (std::size_t q = 0; q < m.rows(); ++q) {
            if (q != r && res.reduced.get(q, c)) {
                res.reduced.row(q) ^= res.reduced.row(r);
                res.transform.row(q) ^= res.transform.row(r);
            }
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t rank(const F2Matrix& m) { return rref(m).rank; }

F2Matrix inverse(const F2Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix is not square");
    RrefResult r = rref(m);
    if (r.rank != m.rows())
        throw std::invalid_argument("inverse: matrix is singular");
    return r.transform;
}

std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b) {
    if (b.length() != m.cols())
        throw std::invalid_argument("solve: dimension mismatch");
    RrefResult r = rref(m);
    // in RREF each pivot column contains a single 1, so the coefficient of
    // reduced row i is forced to be b[pivot_cols[i]]
    F2Vector y(m.rows());
    for (std::size_t i = 0; i < r.rank; ++i) y.set(i, b.get(r.pivot_cols[i]));
    if (!((y * r.reduced) == b)) return std::nullopt;
    return y * r.transform;
}

Subspace kernel(const F2Matrix& m) {
    RrefResult r = rref(m);
    F2Matrix basis(0, m.rows());
    for (std::size_t i = r.rank; i < m.rows(); ++i) basis.append_row(r.transform.row(i));
    return Subspace(m.rows(), basis);
}

Subspace::Subspace(std::size_t ambient_dim, const F2Matrix& spanning_rows)
    : ambient_(ambient_dim) {
    if (spanning_rows.rows() > 0 && spanning_rows.cols() != ambient_dim)
        throw std::invalid_argument("Subspace: spanning rows do not match ambient dimension");
    RrefResult r = rref(spanning_rows);
    basis_ = F2Matrix(0, ambient_dim);
    for (std::size_t i = 0; i < r.rank; ++i) basis_.append_row(r.reduced.row(i));
    pivots_ = std::move(r.pivot_cols);
}

Subspace Subspace::full(std::size_t ambient_dim) {
    return Subspace(ambient_dim, F2Matrix::identity(ambient_dim));
}

bool Subspace::contains(const F2Vector& v) const {
    if (v.length() != ambient_)
        throw std::invalid_argument("Subspace::contains: ambient mismatch");
    F2Vector rem = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        if (rem.get(pivots_[i])) rem ^= basis_.row(i);
    return rem.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_)
        throw std::invalid_argument("Subspace::contains: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::optional<F2Vector> Subspace::coordinates(const F2Vector& v) const {
    if (v.length() != ambient_)
        throw std::invalid_argument("Subspace::coordinates: ambient mismatch");
    F2Vector rem = v;
    F2Vector coords(dim());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        if (rem.get(pivots_[i])) {
            rem ^= basis_.row(i);
            coords.set(i, true);
        }
    }
    if (!rem.is_zero()) return std::nullopt;
    return coords;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("subspace_sum: ambient mismatch");
    F2Matrix stacked(0, u.ambient_dim());
    for (std::size_t i = 0; i < u.dim(); ++i) stacked.append_row(u.basis().row(i));
    for (std::size_t i = 0; i < v.dim(); ++i) stacked.append_row(v.basis().row(i));
    return Subspace(u.ambient_dim(), stacked);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("subspace_intersect: ambient mismatch");
    const std::size_t n = u.ambient_dim();
    // Zassenhaus: reduce [U | U; V | 0]; rows with zero left half carry the
    // intersection in their right half
    F2Matrix block(0, 2 * n);
    for (std::size_t i = 0; i < u.dim(); ++i) {
        F2Vector row(2 * n);
        row.paste(0, u.basis().row(i));
        row.paste(n, u.basis().row(i));
        block.append_row(std::move(row));
    }
    for (std::size_t i = 0; i < v.dim(); ++i) {
        F2Vector row(2 * n);
        row.paste(0, v.basis().row(i));
        block.append_row(std::move(row));
    }
    RrefResult r = rref(block);
    F2Matrix inter(0, n);
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.reduced.row(i).slice(0, n).is_zero())
            inter.append_row(r.reduced.row(i).slice(n, n));
    }
    return Subspace(n, inter);
}

}  // namespace turyn
