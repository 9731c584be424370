#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anchored.hpp"
#include "graph.hpp"
#include "int_matrix.hpp"

namespace blocksieve {

// AHU-style canonical encoding over (color, label, sorted child codes).
// Two rooted trees get the same code iff they are isomorphic as rooted,
// colored, labelled trees.
std::string canonical_code(const rooted_tree& t);

// Isomorphism-invariant exact summary. Equality is necessary (never
// sufficient) for quantum isomorphism.
struct graph_signature {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::vector<std::size_t> degrees;               // sorted
    std::vector<bigint> adj_char_poly;              // constant term first
    std::vector<bigint> complement_char_poly;
    std::vector<std::vector<bigint>> walk_profiles; // sorted closed-walk vectors

    friend bool operator==(const graph_signature&, const graph_signature&) = default;

    std::string text() const;   // full deterministic serialization
    std::string digest() const; // 16 hex chars of FNV-1a over text()
};

graph_signature signature_of(const graph& g, std::size_t walk_cap = SIZE_MAX);

// Complete backtracking search over walk-profile-refined classes; intended
// for desk-scale inputs. A returned map is a verified isomorphism.
std::optional<std::map<vertex_id, vertex_id>> find_isomorphism(const graph& g, const graph& h);

enum class verdict_t { iso, not_qi, unknown };

struct check_record {
    std::string name;
    std::string scope;         // empty for whole-graph checks
    std::string justification; // the necessary condition the check rests on
    std::string left, right;   // compared values, g side and h side
    bool passed = true;
};

struct sieve_options {
    std::size_t max_walk_len = SIZE_MAX; // cap on walk-profile length
};

struct sieve_report {
    verdict_t verdict = verdict_t::unknown;
    std::vector<check_record> checks;
    std::optional<std::map<vertex_id, vertex_id>> witness; // set iff verdict == iso
};

// Sound three-valued battery: NOT_QI only from a failed necessary condition,
// ISO only from a verified classical witness, UNKNOWN otherwise.
sieve_report run_sieve(const graph& g, const graph& h, const sieve_options& opt = {});

const char* to_string(verdict_t v);

struct tree_witness {
    colored_tree tree_g, tree_h;
    // node-index pairs forming a color- and label-preserving rooted isomorphism
    std::vector<std::pair<std::size_t, std::size_t>> alpha;
    // induced block-graph isomorphism, as block-node id pairs
    std::vector<std::pair<vertex_id, vertex_id>> beta;
};

// Explicit block-tree and block-graph isomorphisms for a pair the sieve did
// not refute at the tree check; both maps are verified structurally before
// being returned, nullopt when no witness exists.
std::optional<tree_witness> block_tree_witness(const graph& g, const graph& h);

} // namespace blocksieve
