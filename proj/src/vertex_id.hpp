#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace blocksieve {

// Stable vertex identity. Namespace 0 is used for plain graphs; vertices
// minted by split() carry the (1-based) component index as namespace so that
// copies of a split vertex stay distinguishable from every original vertex.
struct vertex_id {
    std::int32_t ns = 0;
    std::int64_t local = 0;

    friend auto operator<=>(const vertex_id&, const vertex_id&) = default;
};

inline vertex_id vid(std::int64_t local, std::int32_t ns = 0) { return vertex_id{ns, local}; }

// Text form: "7" for namespace 0, "2:7" for namespace 2.
inline std::string to_string(vertex_id v) {
    if (v.ns == 0) return std::to_string(v.local);
    return std::to_string(v.ns) + ":" + std::to_string(v.local);
}

std::optional<vertex_id> parse_vertex_id(std::string_view text);

} // namespace blocksieve

template <>
struct std::hash<blocksieve::vertex_id> {
    std::size_t operator()(const blocksieve::vertex_id& v) const noexcept {
        std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.ns)) << 48) ^
                          static_cast<std::uint64_t>(v.local);
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};
