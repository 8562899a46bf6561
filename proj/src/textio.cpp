#include "turyn/textio.hpp"

#include <optional>
#include <sstream>

namespace turyn {

namespace {

// line scanner skipping comments and blank lines, tracking 1-based numbers
class Scanner {
public:
    explicit Scanner(const std::string& text) : in_(text) {}

    // next payload line; empty optional at end of input
    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            return line;
        }
        return std::nullopt;
    }

    std::string expect(const char* what) {
        auto line = next();
        if (!line) throw ParseError(lineno_ + 1, std::string("expected ") + what);
        return *line;
    }

    void expect_end() {
        if (next()) throw ParseError(lineno_, "trailing content");
    }

    std::size_t lineno() const { return lineno_; }

private:
    std::istringstream in_;
    std::size_t lineno_ = 0;
};

// `<tag> <count> [<count>]` headers
std::vector<std::size_t> parse_header(Scanner& sc, const std::string& tag,
                                      std::size_t fields) {
    std::istringstream hs(sc.expect("header"));
    std::string word;
    hs >> word;
    if (word != tag) throw ParseError(sc.lineno(), "expected '" + tag + "' header");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fields; ++i) {
        long long v = -1;
        if (!(hs >> v) || v < 0)
            throw ParseError(sc.lineno(), "malformed '" + tag + "' header");
        out.push_back(static_cast<std::size_t>(v));
    }
    std::string rest;
    if (hs >> rest) throw ParseError(sc.lineno(), "malformed '" + tag + "' header");
    return out;
}

F2Vector parse_bits(Scanner& sc, const std::string& line, std::size_t expect_len) {
    if (line.size() != expect_len)
        throw ParseError(sc.lineno(), "expected " + std::to_string(expect_len) + " columns, got " +
                                          std::to_string(line.size()));
    F2Vector v(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '1') v.set(i, true);
        else if (line[i] != '0')
            throw ParseError(sc.lineno(), "matrix rows must consist of 0 and 1");
    }
    return v;
}

F2Matrix parse_rows(Scanner& sc, std::size_t rows, std::size_t cols) {
    F2Matrix m(0, cols);
    for (std::size_t r = 0; r < rows; ++r)
        m.append_row(parse_bits(sc, sc.expect("matrix row"), cols));
    return m;
}

}  // namespace

std::string emit_matrix(const F2Matrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) out << m.row(r).to_string() << "\n";
    return out.str();
}

std::string emit_qspace(const QuadraticSpace& sp) {
    return "qspace " + std::to_string(sp.dim()) + "\n" + emit_matrix(sp.q_upper());
}

QuadraticSpace parse_qspace(const std::string& text) {
    Scanner sc(text);
    auto h = parse_header(sc, "qspace", 1);
    F2Matrix upper = parse_rows(sc, h[0], h[0]);
    sc.expect_end();
    return QuadraticSpace(std::move(upper));
}

std::string emit_subspace(const Subspace& s) {
    return "subspace " + std::to_string(s.ambient_dim()) + "\n" + emit_matrix(s.basis());
}

Subspace parse_subspace(const std::string& text) {
    Scanner sc(text);
    auto h = parse_header(sc, "subspace", 1);
    F2Matrix rows(0, h[0]);
    while (auto line = sc.next()) rows.append_row(parse_bits(sc, *line, h[0]));
    return Subspace(h[0], rows);
}

std::string emit_isometry(const Isometry& g) {
    return "isometry " + std::to_string(g.space().dim()) + "\n" + emit_matrix(g.mat());
}

Isometry parse_isometry(const std::string& text, const QuadraticSpace& sp) {
    Scanner sc(text);
    auto h = parse_header(sc, "isometry", 1);
    if (h[0] != sp.dim()) throw ParseError(sc.lineno(), "isometry dimension mismatch");
    F2Matrix m = parse_rows(sc, h[0], h[0]);
    sc.expect_end();
    return Isometry(sp, std::move(m));
}

std::string emit_wreath(const BlockIsometry& g) {
    std::ostringstream out;
    out << "wreath " << g.k() << " " << g.base().dim() << "\n";
    for (std::size_t i = 0; i < g.k(); ++i) {
        if (i) out << " ";
        out << g.sigma()[i] + 1;
    }
    out << "\n";
    for (const auto& b : g.blocks()) out << emit_matrix(b.mat());
    return out.str();
}

BlockIsometry parse_wreath(const std::string& text, const QuadraticSpace& base) {
    Scanner sc(text);
    auto h = parse_header(sc, "wreath", 2);
    const std::size_t k = h[0];
    if (h[1] != base.dim()) throw ParseError(sc.lineno(), "wreath block dimension mismatch");
    if (k == 0) throw ParseError(sc.lineno(), "wreath needs at least one coordinate");

    std::istringstream ps(sc.expect("permutation line"));
    std::vector<std::size_t> sigma;
    long long img;
    while (ps >> img) {
        if (img < 1 || img > static_cast<long long>(k))
            throw ParseError(sc.lineno(), "permutation image out of range");
        sigma.push_back(static_cast<std::size_t>(img - 1));
    }
    if (sigma.size() != k)
        throw ParseError(sc.lineno(), "permutation line must list k images");

    std::vector<Isometry> blocks;
    for (std::size_t i = 0; i < k; ++i)
        blocks.push_back(Isometry(base, parse_rows(sc, base.dim(), base.dim())));
    sc.expect_end();
    return BlockIsometry(std::move(sigma), std::move(blocks));
}

std::string emit_code(const BinaryCode& c) {
    return "code " + std::to_string(c.length()) + " " + std::to_string(c.dim()) + "\n" +
           emit_matrix(c.generator_matrix());
}

BinaryCode parse_code(const std::string& text) {
    Scanner sc(text);
    auto h = parse_header(sc, "code", 2);
    F2Matrix g = parse_rows(sc, h[1], h[0]);
    sc.expect_end();
    BinaryCode c(h[0], g);
    if (c.dim() != h[1]) throw ParseError(sc.lineno(), "generator rows are dependent");
    return c;
}

std::string emit_gram2(const ExactLattice& l) {
    std::ostringstream out;
    out << "gram2 " << l.rank() << "\n";
    for (std::size_t i = 0; i < l.rank(); ++i) {
        for (std::size_t j = 0; j < l.rank(); ++j) {
            if (j) out << " ";
            out << l.gram2(i, j).get_str();
        }
        out << "\n";
    }
    return out.str();
}

ExactLattice parse_gram2(const std::string& text) {
    Scanner sc(text);
    auto h = parse_header(sc, "gram2", 1);
    const std::size_t n = h[0];
    ZMat g(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::istringstream rs(sc.expect("gram row"));
        for (std::size_t j = 0; j < n; ++j) {
            std::string tok;
            if (!(rs >> tok)) throw ParseError(sc.lineno(), "expected " + std::to_string(n) +
                                                                " integers");
            try {
                g[i][j] = mpz_class(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError(sc.lineno(), "malformed integer '" + tok + "'");
            }
        }
        std::string rest;
        if (rs >> rest) throw ParseError(sc.lineno(), "trailing tokens on gram row");
    }
    sc.expect_end();
    return ExactLattice(std::move(g));
}

}  // namespace turyn
