// Plain-text formats for every object the CLI reads or writes. All formats
// are line oriented; lines starting with '#' are comments and blank lines
// are ignored. Parse failures report the 1-based line number.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "turyn/codeforge.hpp"
#include "turyn/f2linalg.hpp"
#include "turyn/latticeforge.hpp"
#include "turyn/orthogroup.hpp"
#include "turyn/quadspace.hpp"

namespace turyn {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// `<rows of 0/1>`                      -- bare matrix
std::string emit_matrix(const F2Matrix& m);

// `qspace <dim>` + upper-triangular matrix
std::string emit_qspace(const QuadraticSpace& sp);
QuadraticSpace parse_qspace(const std::string& text);

// `subspace <ambient>` + basis rows
std::string emit_subspace(const Subspace& s);
Subspace parse_subspace(const std::string& text);

// `isometry <dim>` + matrix
std::string emit_isometry(const Isometry& g);
// needs the space the matrix is supposed to act on
Isometry parse_isometry(const std::string& text, const QuadraticSpace& sp);

// `wreath <k> <dim>` + one line of 1-based images + k matrices
std::string emit_wreath(const BlockIsometry& g);
BlockIsometry parse_wreath(const std::string& text, const QuadraticSpace& base);

// `code <n> <k>` + generator matrix
std::string emit_code(const BinaryCode& c);
BinaryCode parse_code(const std::string& text);

// `gram2 <n>` + n rows of signed integers
std::string emit_gram2(const ExactLattice& l);
ExactLattice parse_gram2(const std::string& text);

}  // namespace turyn
