#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "anchored.hpp"
#include "graph.hpp"

namespace blocksieve {

using cmatrix = Eigen::MatrixXcd;

// Largest singular value, via a fixed-iteration power method on m* m with a
// Frobenius fallback when the iteration degenerates.
double spectral_norm(const cmatrix& m);

// Grid of d x d complex matrices indexed by (row vertex, column vertex).
// Rows index the target graph, columns the source graph. The tolerance
// travels with the value and is what every residual check compares against.
class magic_unitary {
public:
    magic_unitary(std::vector<vertex_id> rows, std::vector<vertex_id> cols, std::size_t dim,
                  std::vector<cmatrix> entries, double tolerance = 1e-9);

    const std::vector<vertex_id>& rows() const { return rows_; }
    const std::vector<vertex_id>& cols() const { return cols_; }
    std::size_t dim() const { return dim_; }
    double tolerance() const { return tol_; }

    const cmatrix& entry(std::size_t row, std::size_t col) const {
        return entries_[row * cols_.size() + col];
    }
    const cmatrix& entry_for(vertex_id row, vertex_id col) const {
        return entry(row_index(row), col_index(col));
    }
    std::size_t row_index(vertex_id v) const;
    std::size_t col_index(vertex_id v) const;

private:
    std::vector<vertex_id> rows_, cols_;
    std::size_t dim_ = 0;
    std::vector<cmatrix> entries_; // row-major
    double tol_ = 1e-9;
};

struct mu_validation {
    double max_projection_residual = 0; // covers u^2 - u and u* - u
    double max_row_residual = 0;
    double max_col_residual = 0;
    bool square = true;

    double worst() const;
    bool passed(double tol) const { return square && worst() <= tol; }
};

mu_validation validate_mu(const magic_unitary& u);

struct qi_check {
    double residual = 0;
    bool ok = false;
};

// Residual of U Adj(g) - Adj(h) U with the scalar adjacencies acting
// blockwise; rows of u must index V(h) and columns V(g).
qi_check is_quantum_iso(const magic_unitary& u, const graph& g, const graph& h);

// Scalar-style magic unitary of a classical bijection: entry (a, x) is the
// d-dimensional identity iff perm(x) = a.
magic_unitary from_permutation(const std::map<vertex_id, vertex_id>& perm, std::size_t dim,
                               double tolerance = 1e-9);

// The 4-cycle 1-2-3-4-1 on vertices 1..4.
graph c4_graph();

// Quantum automorphism of c4_graph() built from two projections p, q:
// in row/column order (1,3,2,4) the grid is Diag([[p,1-p],[1-p,p]],
// [[q,1-q],[1-q,q]]). Noncommuting p, q give a genuinely quantum example.
magic_unitary c4_magic_unitary(const cmatrix& p, const cmatrix& q, double tolerance = 1e-9);

using partition = std::vector<vertex_set>;

// Cross-cell entry products must vanish, in both mismatch directions.
bool preserves_partition(const magic_unitary& u, const partition& pg, const partition& ph);

// The cell-level magic unitary: entry (K, L) sums column entries of the
// least vertex of L over the rows in K. Cells are ordered by least vertex
// and become vertices 0..k-1 of the result. Requires preserves_partition.
magic_unitary partition_sum(const magic_unitary& u, const partition& pg, const partition& ph);

// Subgrid of u on rows t and columns s.
magic_unitary submatrix(const magic_unitary& u, const vertex_set& t, const vertex_set& s);

// Entries with exactly one index inside the anchor pair must vanish.
// r lives on the column (source) side, s on the row (target) side.
bool preserves_anchor(const magic_unitary& u, const vertex_set& r, const vertex_set& s);

magic_unitary adjoint(const magic_unitary& u);

// Audit: wherever an entry product is non-vanishing, the walk counts of the
// paired vertices must agree up to length |V|.
bool walk_compatible(const magic_unitary& u, const graph& g, const graph& h);

// Transports u along peel(): identity on block anchors; for cut-vertex
// anchors the result is Diag(U0, P(U0)) indexed by the split graphs, the P
// block pairing the split copies. Preconditions (quantum isomorphism, anchor
// preservation, matching anchor kinds, pairable components) are re-checked.
magic_unitary peel_transport(const magic_unitary& u, const anchored_graph& ag,
                             const anchored_graph& ah);

struct distance_audit_entry {
    vertex_id row, col;
    std::int64_t row_dist = 0, col_dist = 0;
};

// Reports (never asserts) pairs with non-vanishing entries whose block-tree
// distances to the center anchor disagree. Empty for disconnected inputs.
std::vector<distance_audit_entry> block_tree_distance_audit(const magic_unitary& u,
                                                            const graph& g, const graph& h);

} // namespace blocksieve
