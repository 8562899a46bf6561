#include "turyn/certificate.hpp"

#include <sstream>

namespace turyn {

void Certificate::add(std::string name, std::string expected, std::string computed,
                      std::string tag, std::string note) {
    CheckRow row;
    row.name = std::move(name);
    row.expected = std::move(expected);
    row.computed = std::move(computed);
    row.pass = row.expected == row.computed;
    row.tag = std::move(tag);
    row.note = std::move(note);
    rows.push_back(std::move(row));
}

void Certificate::add_count(std::string name, std::uint64_t expected, std::uint64_t computed,
                            std::string tag, std::string note) {
    add(std::move(name), std::to_string(expected), std::to_string(computed), std::move(tag),
        std::move(note));
}

void Certificate::add_flag(std::string name, bool expected, bool computed, std::string tag,
                           std::string note) {
    add(std::move(name), expected ? "yes" : "no", computed ? "yes" : "no", std::move(tag),
        std::move(note));
}

bool Certificate::pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string Certificate::to_text() const {
    std::ostringstream out;
    out << "certificate: " << subject << "\n";
    for (const auto& r : rows) {
        out << "check: " << r.name << " | expected: " << r.expected
            << " | computed: " << r.computed << " | " << (r.pass ? "pass" : "FAIL") << " | ["
            << r.tag << "]";
        if (!r.note.empty()) out << " " << r.note;
        out << "\n";
    }
    out << "result: " << (pass() ? "pass" : "FAIL") << "\n";
    return out.str();
}

}  // namespace turyn
