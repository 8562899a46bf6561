// Line-oriented certificates: each check row carries the expected value, the
// computed value, and a provenance tag so the output is self-describing.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace turyn {

struct CheckRow {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string tag;   // PAPER | DERIVED | TRIVIAL
    std::string note;
};

struct Certificate {
    std::string subject;
    std::vector<CheckRow> rows;

    void add(std::string name, std::string expected, std::string computed, std::string tag,
             std::string note = "");
    void add_count(std::string name, std::uint64_t expected, std::uint64_t computed,
                   std::string tag, std::string note = "");
    void add_flag(std::string name, bool expected, bool computed, std::string tag,
                  std::string note = "");

    bool pass() const;
    std::string to_text() const;
};

}  // namespace turyn
