#pragma once

#include <cstddef>
#include <vector>

namespace blocksieve {

// Kuhn's augmenting-path maximum matching. adj[i] lists the right-side
// vertices i may match with; returns the matching size.
inline std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t right_size) {
    std::vector<std::size_t> match_right(right_size, SIZE_MAX);
    std::vector<char> used;

    auto try_kuhn = [&](auto&& self, std::size_t u) -> bool {
        for (std::size_t v : adj[u]) {
            if (used[v]) continue;
            used[v] = 1;
            if (match_right[v] == SIZE_MAX || self(self, match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };

    std::size_t matched = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        used.assign(right_size, 0);
        if (try_kuhn(try_kuhn, u)) ++matched;
    }
    return matched;
}

} // namespace blocksieve
