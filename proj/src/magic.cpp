#include "magic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "matching.hpp"

namespace blocksieve {

double spectral_norm(const cmatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));

    const cmatrix gram = m.adjoint() * m;
    const auto n = gram.rows();
    Eigen::VectorXcd v(n);
    std::uint64_t seed = 0x2545f4914f6cdd1dULL;
    for (Eigen::Index i = 0; i < n; ++i) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        const double re = 0.5 + static_cast<double>(seed >> 40) / (1 << 24);
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        const double im = static_cast<double>(seed >> 40) / (1 << 25);
        v(i) = std::complex<double>(re, im);
    }
    v.normalize();

    double lambda = 0.0;
    for (int iter = 0; iter < 96; ++iter) {
        Eigen::VectorXcd w = gram * v;
        const double norm = w.norm();
        if (!(norm > 0) || !std::isfinite(norm)) return m.norm(); // Frobenius fallback
        v = w / norm;
        lambda = norm;
    }
    if (!std::isfinite(lambda)) return m.norm();
    return std::sqrt(lambda);
}

magic_unitary::magic_unitary(std::vector<vertex_id> rows, std::vector<vertex_id> cols,
                             std::size_t dim, std::vector<cmatrix> entries, double tolerance)
    : rows_(std::move(rows)), cols_(std::move(cols)), dim_(dim), entries_(std::move(entries)),
      tol_(tolerance) {
    if (entries_.size() != rows_.size() * cols_.size())
        fail(errc::dimension_mismatch, "entry grid does not match index sets");
    for (const cmatrix& e : entries_)
        if (e.rows() != static_cast<Eigen::Index>(dim_) ||
            e.cols() != static_cast<Eigen::Index>(dim_))
            fail(errc::dimension_mismatch, "entry dimension differs from declared dim");
    if (tol_ <= 0) fail(errc::invalid_argument, "tolerance must be positive");
    auto distinct = [](const std::vector<vertex_id>& v) {
        std::set<vertex_id> s(v.begin(), v.end());
        return s.size() == v.size();
    };
    if (!distinct(rows_) || !distinct(cols_))
        fail(errc::index_mismatch, "duplicate vertex in index set");
}

std::size_t magic_unitary::row_index(vertex_id v) const {
    auto it = std::find(rows_.begin(), rows_.end(), v);
    if (it == rows_.end()) fail(errc::index_mismatch, "vertex not in row set: " + to_string(v));
    return static_cast<std::size_t>(it - rows_.begin());
}

std::size_t magic_unitary::col_index(vertex_id v) const {
    auto it = std::find(cols_.begin(), cols_.end(), v);
    if (it == cols_.end()) fail(errc::index_mismatch, "vertex not in column set: " + to_string(v));
    return static_cast<std::size_t>(it - cols_.begin());
}

double mu_validation::worst() const {
    return std::max({max_projection_residual, max_row_residual, max_col_residual,
                     square ? 0.0 : 1.0});
}

mu_validation validate_mu(const magic_unitary& u) {
    mu_validation rep;
    rep.square = u.rows().size() == u.cols().size();
    const std::size_t nr = u.rows().size(), nc = u.cols().size(), d = u.dim();
    const cmatrix id = cmatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            const cmatrix& e = u.entry(i, j);
            rep.max_projection_residual =
                std::max({rep.max_projection_residual, spectral_norm(e * e - e),
                          spectral_norm(cmatrix(e.adjoint()) - e)});
        }
    for (std::size_t i = 0; i < nr; ++i) {
        cmatrix sum = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < nc; ++j) sum += u.entry(i, j);
        rep.max_row_residual = std::max(rep.max_row_residual, spectral_norm(sum - id));
    }
    for (std::size_t j = 0; j < nc; ++j) {
        cmatrix sum = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < nr; ++i) sum += u.entry(i, j);
        rep.max_col_residual = std::max(rep.max_col_residual, spectral_norm(sum - id));
    }
    return rep;
}

static std::vector<vertex_id> sorted_ids(std::vector<vertex_id> v) {
    std::sort(v.begin(), v.end());
    return v;
}

qi_check is_quantum_iso(const magic_unitary& u, const graph& g, const graph& h) {
    if (sorted_ids(u.cols()) != g.vertices() || sorted_ids(u.rows()) != h.vertices())
        fail(errc::index_mismatch, "index sets do not match the graphs");
    qi_check res;
    const std::size_t nr = u.rows().size(), nc = u.cols().size(), d = u.dim();
    for (std::size_t a = 0; a < nr; ++a) {
        const std::size_t ha = h.index_of(u.rows()[a]);
        for (std::size_t x = 0; x < nc; ++x) {
            const std::size_t gx = g.index_of(u.cols()[x]);
            cmatrix lhs = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            for (std::size_t z = 0; z < nc; ++z)
                if (g.adjacent_at(g.index_of(u.cols()[z]), gx)) lhs += u.entry(a, z);
            cmatrix rhs = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            for (std::size_t b = 0; b < nr; ++b)
                if (h.adjacent_at(ha, h.index_of(u.rows()[b]))) rhs += u.entry(b, x);
            res.residual = std::max(res.residual, spectral_norm(lhs - rhs));
        }
    }
    res.ok = res.residual <= u.tolerance();
    return res;
}

magic_unitary from_permutation(const std::map<vertex_id, vertex_id>& perm, std::size_t dim,
                               double tolerance) {
    std::vector<vertex_id> cols, rows;
    for (const auto& [x, a] : perm) {
        cols.push_back(x);
        rows.push_back(a);
    }
    rows = sorted_ids(std::move(rows));
    if (std::adjacent_find(rows.begin(), rows.end()) != rows.end())
        fail(errc::not_bijective, "map is not injective");
    const std::size_t n = cols.size();
    const cmatrix id = cmatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const cmatrix zero = cmatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<cmatrix> entries(n * n, zero);
    for (std::size_t x = 0; x < n; ++x) {
        const vertex_id image = perm.at(cols[x]);
        const std::size_t a = static_cast<std::size_t>(
            std::lower_bound(rows.begin(), rows.end(), image) - rows.begin());
        entries[a * n + x] = id;
    }
    return magic_unitary(std::move(rows), std::move(cols), dim, std::move(entries), tolerance);
}

graph c4_graph() {
    return graph::from_edges({vid(1), vid(2), vid(3), vid(4)},
                             {{vid(1), vid(2)}, {vid(2), vid(3)}, {vid(3), vid(4)}, {vid(4), vid(1)}});
}

magic_unitary c4_magic_unitary(const cmatrix& p, const cmatrix& q, double tolerance) {
    if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
        fail(errc::dimension_mismatch, "p and q must be square of equal dimension");
    for (const cmatrix* m : {&p, &q}) {
        if (spectral_norm((*m) * (*m) - *m) > tolerance ||
            spectral_norm(cmatrix(m->adjoint()) - *m) > tolerance)
            fail(errc::not_a_projection, "p and q must be projections");
    }
    const std::size_t d = static_cast<std::size_t>(p.rows());
    const cmatrix id = cmatrix::Identity(p.rows(), p.cols());
    const cmatrix zero = cmatrix::Zero(p.rows(), p.cols());
    // bipartition classes {1,3} and {2,4} of the 4-cycle
    const std::vector<vertex_id> order{vid(1), vid(3), vid(2), vid(4)};
    std::vector<cmatrix> entries(16, zero);
    auto put = [&](std::size_t i, std::size_t j, const cmatrix& m) { entries[i * 4 + j] = m; };
    put(0, 0, p);
    put(0, 1, id - p);
    put(1, 0, id - p);
    put(1, 1, p);
    put(2, 2, q);
    put(2, 3, id - q);
    put(3, 2, id - q);
    put(3, 3, q);
    return magic_unitary(order, order, d, std::move(entries), tolerance);
}

static void require_partition_of(const partition& p, const std::vector<vertex_id>& universe) {
    vertex_set all;
    for (const vertex_set& cell : p) {
        if (cell.empty()) fail(errc::empty_cell, "empty partition cell");
        all.insert(all.end(), cell.begin(), cell.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        fail(errc::invalid_argument, "partition cells overlap");
    if (all != sorted_ids(universe))
        fail(errc::invalid_argument, "partition does not cover the index set");
}

bool preserves_partition(const magic_unitary& u, const partition& pg, const partition& ph) {
    require_partition_of(pg, u.cols());
    require_partition_of(ph, u.rows());
    auto cell_of = [](const partition& p, vertex_id v) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (std::binary_search(p[i].begin(), p[i].end(), v)) return i;
        return p.size();
    };
    std::vector<std::size_t> col_cell(u.cols().size()), row_cell(u.rows().size());
    for (std::size_t x = 0; x < u.cols().size(); ++x) col_cell[x] = cell_of(pg, u.cols()[x]);
    for (std::size_t a = 0; a < u.rows().size(); ++a) row_cell[a] = cell_of(ph, u.rows()[a]);

    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x)
            for (std::size_t b = 0; b < u.rows().size(); ++b)
                for (std::size_t y = 0; y < u.cols().size(); ++y) {
                    const bool same_g = col_cell[x] == col_cell[y];
                    const bool same_h = row_cell[a] == row_cell[b];
                    if (same_g == same_h) continue;
                    if (spectral_norm(u.entry(a, x) * u.entry(b, y)) > u.tolerance())
                        return false;
                }
    return true;
}

static partition normalized(partition p) {
    for (vertex_set& cell : p) std::sort(cell.begin(), cell.end());
    std::sort(p.begin(), p.end(),
              [](const vertex_set& a, const vertex_set& b) { return a.front() < b.front(); });
    return p;
}

magic_unitary partition_sum(const magic_unitary& u, const partition& pg, const partition& ph) {
    partition cg = normalized(pg), ch = normalized(ph);
    if (!preserves_partition(u, cg, ch))
        fail(errc::partition_not_preserved, "grid does not preserve the partitions");
    const std::size_t d = u.dim();
    std::vector<cmatrix> entries;
    entries.reserve(ch.size() * cg.size());
    for (const vertex_set& K : ch) {
        for (const vertex_set& L : cg) {
            cmatrix sum = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            const std::size_t rep = u.col_index(L.front()); // least vertex as representative
            for (vertex_id a : K) sum += u.entry(u.row_index(a), rep);
            entries.push_back(std::move(sum));
        }
    }
    std::vector<vertex_id> row_ids, col_ids;
    for (std::size_t i = 0; i < ch.size(); ++i) row_ids.push_back(vid(static_cast<std::int64_t>(i)));
    for (std::size_t j = 0; j < cg.size(); ++j) col_ids.push_back(vid(static_cast<std::int64_t>(j)));
    return magic_unitary(std::move(row_ids), std::move(col_ids), d, std::move(entries),
                         u.tolerance());
}

magic_unitary submatrix(const magic_unitary& u, const vertex_set& t, const vertex_set& s) {
    if (t.empty() || s.empty()) fail(errc::empty_cell, "empty index set");
    std::vector<cmatrix> entries;
    entries.reserve(t.size() * s.size());
    for (vertex_id a : t)
        for (vertex_id x : s) entries.push_back(u.entry(u.row_index(a), u.col_index(x)));
    return magic_unitary(t, s, u.dim(), std::move(entries), u.tolerance());
}

bool preserves_anchor(const magic_unitary& u, const vertex_set& r, const vertex_set& s) {
    auto contains = [](const vertex_set& set, vertex_id v) {
        return std::find(set.begin(), set.end(), v) != set.end();
    };
    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x) {
            const bool in_r = contains(r, u.cols()[x]);
            const bool in_s = contains(s, u.rows()[a]);
            if (in_r != in_s && spectral_norm(u.entry(a, x)) > u.tolerance()) return false;
        }
    return true;
}

magic_unitary adjoint(const magic_unitary& u) {
    std::vector<cmatrix> entries;
    entries.reserve(u.rows().size() * u.cols().size());
    for (std::size_t x = 0; x < u.cols().size(); ++x)
        for (std::size_t a = 0; a < u.rows().size(); ++a)
            entries.push_back(u.entry(a, x).adjoint());
    return magic_unitary(u.cols(), u.rows(), u.dim(), std::move(entries), u.tolerance());
}

bool walk_compatible(const magic_unitary& u, const graph& g, const graph& h) {
    const std::size_t top = std::max(g.vertex_count(), h.vertex_count());
    const auto tg = walk_count_tensor(g, top);
    const auto th = walk_count_tensor(h, top);
    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x)
            for (std::size_t b = 0; b < u.rows().size(); ++b)
                for (std::size_t y = 0; y < u.cols().size(); ++y) {
                    if (spectral_norm(u.entry(a, x) * u.entry(b, y)) <= u.tolerance()) continue;
                    const std::size_t gx = g.index_of(u.cols()[x]), gy = g.index_of(u.cols()[y]);
                    const std::size_t ha = h.index_of(u.rows()[a]), hb = h.index_of(u.rows()[b]);
                    for (std::size_t i = 0; i <= top; ++i)
                        if (tg[i].at(gx, gy) != th[i].at(ha, hb)) return false;
                }
    return true;
}

magic_unitary peel_transport(const magic_unitary& u, const anchored_graph& ag,
                             const anchored_graph& ah) {
    auto cg = component_anchors(ag);
    auto ch = component_anchors(ah);
    if (cg.size() != 1 || ch.size() != 1)
        fail(errc::precondition_failed, "transport requires connected anchored graphs");
    if (cg.front().a.kind != ch.front().a.kind)
        fail(errc::precondition_failed, "anchor kinds differ");
    if (!is_quantum_iso(u, ag.g, ah.g).ok)
        fail(errc::precondition_failed, "not a quantum isomorphism at this tolerance");
    if (!preserves_anchor(u, ag.anchor_vertices, ah.anchor_vertices))
        fail(errc::precondition_failed, "anchor is not preserved");

    if (cg.front().a.kind == anchor::kind_t::block) return u;

    const vertex_id r = cg.front().a.vertices.front();
    const vertex_id s = ch.front().a.vertices.front();
    if (ag.g.vertex_count() == 1) return u; // splitting K1 changes nothing
    const split_result sg = split_at(ag.g, r);
    const split_result sh = split_at(ah.g, s);
    const std::size_t k = sg.component_cells.size();
    if (k != sh.component_cells.size())
        fail(errc::precondition_failed, "split component counts differ");

    const std::size_t d = u.dim();
    // P block: cell sums of the anchor-free part, least vertex representative
    std::vector<cmatrix> pblock(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cmatrix sum = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            const std::size_t rep = u.col_index(sg.component_cells[j].front());
            for (vertex_id a : sh.component_cells[i]) sum += u.entry(u.row_index(a), rep);
            pblock[i * k + j] = std::move(sum);
        }

    // the component pairing must be a perfect matching on non-vanishing sums
    std::vector<std::vector<std::size_t>> compat(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (spectral_norm(pblock[i * k + j]) > u.tolerance()) compat[i].push_back(j);
    if (max_bipartite_matching(compat, k) != k)
        fail(errc::precondition_failed, "split components cannot be paired");

    const std::vector<vertex_id> rows = sh.g.vertices();
    const std::vector<vertex_id> cols = sg.g.vertices();
    auto copy_slot = [](const std::vector<vertex_id>& copies, vertex_id v) {
        auto it = std::find(copies.begin(), copies.end(), v);
        return it == copies.end() ? copies.size()
                                  : static_cast<std::size_t>(it - copies.begin());
    };
    const cmatrix zero = cmatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<cmatrix> entries(rows.size() * cols.size(), zero);
    for (std::size_t a = 0; a < rows.size(); ++a) {
        const std::size_t ci = copy_slot(sh.copies, rows[a]);
        for (std::size_t x = 0; x < cols.size(); ++x) {
            const std::size_t cj = copy_slot(sg.copies, cols[x]);
            if (ci < sh.copies.size() && cj < sg.copies.size())
                entries[a * cols.size() + x] = pblock[ci * k + cj];
            else if (ci == sh.copies.size() && cj == sg.copies.size())
                entries[a * cols.size() + x] = u.entry(u.row_index(rows[a]), u.col_index(cols[x]));
        }
    }
    return magic_unitary(rows, cols, d, std::move(entries), u.tolerance());
}

std::vector<distance_audit_entry> block_tree_distance_audit(const magic_unitary& u,
                                                            const graph& g, const graph& h) {
    std::vector<distance_audit_entry> out;
    if (connected_components(g).size() != 1 || connected_components(h).size() != 1) return out;

    auto tree_distances = [](const graph& gr) {
        const colored_tree t = block_tree(gr);
        const anchor za = center_anchor(gr);
        const block_decomposition d = decompose_blocks(gr);
        // node index of the induced anchor of each vertex
        std::map<vertex_id, std::size_t> node_of;
        for (vertex_id v : gr.vertices()) {
            const vertex_set target = induced_anchor(d, v);
            for (std::size_t i = 0; i < t.nodes.size(); ++i) {
                const tree_node& node = t.nodes[i];
                if (target.size() == 1 && node.cut_vertex && *node.cut_vertex == target.front())
                    node_of[v] = i;
                else if (node.block && *node.block == target)
                    node_of[v] = i;
            }
        }
        std::size_t root = 0;
        for (std::size_t i = 0; i < t.nodes.size(); ++i) {
            const tree_node& node = t.nodes[i];
            if (za.kind == anchor::kind_t::cut_vertex
                    ? (node.cut_vertex && *node.cut_vertex == za.vertices.front())
                    : (node.block && *node.block == za.vertices))
                root = i;
        }
        const auto adj = t.adjacency();
        std::vector<std::int64_t> dist(t.nodes.size(), -1);
        std::vector<std::size_t> queue{root};
        dist[root] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (std::size_t nb : adj[queue[qi]])
                if (dist[nb] < 0) {
                    dist[nb] = dist[queue[qi]] + 1;
                    queue.push_back(nb);
                }
        std::map<vertex_id, std::int64_t> res;
        for (const auto& [v, node] : node_of) res[v] = dist[node];
        return res;
    };

    const auto dg = tree_distances(g);
    const auto dh = tree_distances(h);
    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x) {
            if (spectral_norm(u.entry(a, x)) <= u.tolerance()) continue;
            const std::int64_t da = dh.at(u.rows()[a]);
            const std::int64_t dx = dg.at(u.cols()[x]);
            if (da != dx) out.push_back({u.rows()[a], u.cols()[x], da, dx});
        }
    return out;
}

} // namespace blocksieve
