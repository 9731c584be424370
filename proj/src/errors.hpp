#pragma once

#include <stdexcept>
#include <string>

namespace blocksieve {

enum class errc {
    parse,
    unknown_vertex,
    disconnected_input,
    invalid_anchor,
    not_a_cut_vertex,
    dimension_mismatch,
    index_mismatch,
    not_bijective,
    not_a_projection,
    partition_not_preserved,
    empty_cell,
    root_color_violation,
    precondition_failed,
    no_witness,
    invalid_argument,
    io,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

struct parse_error : error {
    parse_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : error(errc::parse, describe(what, line, column)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;

private:
    static std::string describe(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) +
               ")";
    }
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace blocksieve
