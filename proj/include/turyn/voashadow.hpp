// The finite shadow of the rank-10 module space: its plus-type quadratic
// space, the fixed lowest-weight dimension constants per weight class, and
// the graded dimension count they produce at weight 2, next to the matching
// counts for the length-24 code and the rank-24 lattice.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "turyn/certificate.hpp"
#include "turyn/quadspace.hpp"

namespace turyn {

// Weight-class constants: a class u contributes, at total weight 2, the
// dimension of its lowest graded piece (lowest weight w(u)/2). The three
// constants are module data taken as given, not derived here.
struct RVModel {
    QuadraticSpace space;          // dimension 10, plus type
    long dim_weight2_vacuum = 156; // w = 0: the weight-2 piece of the base algebra
    long dim_lowest_w1 = 1;        // w = 1: the weight-1/2 piece
    long dim_lowest_w2 = 8;        // w = 2: the weight-1 piece
};

RVModel rv_space();

struct Weight2Count {
    long total = 0;
    long term_vacuum = 0;  // 3 x 156
    long term_type1 = 0;   // (2,2,0)-profile classes, 8^2 each
    long term_type2 = 0;   // (2,1,1)-profile classes, 8 each
};

// graded dimension at weight 2 of the extension indexed by S: the vacuum
// term plus one product of lowest-piece dimensions per weight-4 class
Weight2Count dim_weight2(const RVModel& model, const Subspace& s);

struct AnalogyRow {
    std::string name;
    long terms[3];
    long total = 0;
    std::string stabilizer_shape;
    std::string verified_note;
};

struct AnalogyTable {
    std::vector<AnalogyRow> rows;
};

// the three parallel three-term counts (759 / 196560 / 196884), each row
// computed live from its own module, with the stabilizer shapes and what
// of each was machine-verified
AnalogyTable analogy_table();

std::string format_analogy(const AnalogyTable& table, bool csv);

// certificate for the weight-2 dimension count, including the axiom rows
// for the three constants
Certificate verify_196884();

}  // namespace turyn
