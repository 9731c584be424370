#include "formats.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace blocksieve {

using nlohmann::json;

graph_format parse_graph_format(const std::string& name) {
    if (name == "graph6") return graph_format::graph6;
    if (name == "edgelist") return graph_format::edgelist;
    if (name == "structured" || name == "structured-text") return graph_format::structured;
    if (name == "auto" || name.empty()) return graph_format::autodetect;
    fail(errc::invalid_argument, "unknown graph format: " + name);
}

static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

static graph parse_graph6(const std::string& raw) {
    std::string s = trim(raw);
    constexpr std::string_view header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    if (s.empty()) throw parse_error("empty graph6 string", 1, 1);

    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw parse_error("truncated graph6 string", 1, pos + 1);
        const unsigned char c = static_cast<unsigned char>(s[pos]);
        if (c < 63 || c > 126)
            throw parse_error("invalid graph6 character", 1, pos + 1);
        ++pos;
        return c - 63;
    };

    std::size_t n = 0;
    int first = next();
    if (first == 126 - 63) {
        if (pos < s.size() && s[pos] == '~')
            throw parse_error("graph6 strings beyond 2^18 vertices are not supported", 1, pos + 1);
        n = static_cast<std::size_t>(next());
        n = (n << 6) | static_cast<std::size_t>(next());
        n = (n << 6) | static_cast<std::size_t>(next());
    } else {
        n = static_cast<std::size_t>(first);
    }

    std::vector<vertex_id> verts;
    for (std::size_t i = 0; i < n; ++i) verts.push_back(vid(static_cast<std::int64_t>(i)));
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    int bits = 0, have = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (have == 0) {
                bits = next();
                have = 6;
            }
            if (bits & (1 << (have - 1))) edges.emplace_back(verts[i], verts[j]);
            --have;
        }
    if (pos != s.size()) throw parse_error("trailing characters after graph6 payload", 1, pos + 1);
    return graph::from_edges(std::move(verts), edges);
}

std::string write_graph6(const graph& g) {
    const std::size_t n = g.vertex_count();
    std::string out;
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n < (1u << 18)) {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 0x3f) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 0x3f) + 63));
        out.push_back(static_cast<char>((n & 0x3f) + 63));
    } else {
        fail(errc::invalid_argument, "graph too large for graph6 output");
    }
    int bits = 0, have = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            bits = (bits << 1) | (g.adjacent_at(i, j) ? 1 : 0);
            if (++have == 6) {
                out.push_back(static_cast<char>(bits + 63));
                bits = have = 0;
            }
        }
    if (have > 0) out.push_back(static_cast<char>((bits << (6 - have)) + 63));
    return out;
}

static graph parse_edgelist(const std::string& text) {
    std::vector<vertex_id> verts;
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto add_vertex = [&](vertex_id v) {
        if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() > 2)
            throw parse_error("expected 'u v' or a lone vertex", lineno, 1);
        auto u = parse_vertex_id(tokens[0]);
        if (!u) throw parse_error("bad vertex id '" + tokens[0] + "'", lineno, 1);
        add_vertex(*u);
        if (tokens.size() == 2) {
            auto v = parse_vertex_id(tokens[1]);
            if (!v) throw parse_error("bad vertex id '" + tokens[1] + "'", lineno, 1);
            add_vertex(*v);
            if (*u == *v) throw parse_error("loop edge", lineno, 1);
            edges.emplace_back(*u, *v);
        }
    }
    return graph::from_edges(std::move(verts), edges);
}

std::string write_edgelist(const graph& g) {
    std::string out;
    std::vector<char> touched(g.vertex_count(), 0);
    for (const auto& [u, v] : g.edges()) {
        touched[g.index_of(u)] = touched[g.index_of(v)] = 1;
        out += to_string(u) + " " + to_string(v) + "\n";
    }
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (!touched[i]) out += to_string(g.vertex_at(i)) + "\n";
    return out;
}

static json ids_to_json(const vertex_set& vs) {
    json arr = json::array();
    for (vertex_id v : vs) arr.push_back(to_string(v));
    return arr;
}

static vertex_id id_from_json(const json& j) {
    if (j.is_number_integer()) return vid(j.get<std::int64_t>());
    if (j.is_string()) {
        if (auto v = parse_vertex_id(j.get<std::string>())) return *v;
    }
    throw parse_error("bad vertex id in document");
}

static graph parse_graph_json(const json& doc, std::string* name_out) {
    if (!doc.is_object()) throw parse_error("expected a graph object");
    if (name_out && doc.contains("name")) *name_out = doc["name"].get<std::string>();
    std::vector<vertex_id> verts;
    for (const json& v : doc.value("vertices", json::array())) verts.push_back(id_from_json(v));
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    for (const json& e : doc.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) throw parse_error("edge must be a pair");
        edges.emplace_back(id_from_json(e[0]), id_from_json(e[1]));
    }
    return graph::from_edges(std::move(verts), edges);
}

std::string write_graph_json(const graph& g, const std::string& name) {
    json doc;
    if (!name.empty()) doc["name"] = name;
    doc["vertices"] = ids_to_json(g.vertices());
    json edges = json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({to_string(u), to_string(v)});
    doc["edges"] = edges;
    return doc.dump(2);
}

graph read_graph(const std::string& text, graph_format fmt, std::string* name_out) {
    if (fmt == graph_format::autodetect) {
        const std::string t = trim(text);
        if (!t.empty() && t.front() == '{') {
            fmt = graph_format::structured;
        } else if (t.rfind(">>graph6<<", 0) == 0 ||
                   (!t.empty() && t.find_first_of(" \t\n") == std::string::npos &&
                    std::all_of(t.begin(), t.end(), [](unsigned char c) {
                        return c >= 63 && c <= 126;
                    }))) {
            fmt = graph_format::graph6;
        } else {
            fmt = graph_format::edgelist;
        }
    }
    try {
        switch (fmt) {
            case graph_format::graph6: return parse_graph6(text);
            case graph_format::edgelist: return parse_edgelist(text);
            case graph_format::structured:
                return parse_graph_json(json::parse(text), name_out);
            default: fail(errc::invalid_argument, "unresolved graph format");
        }
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad structured graph: ") + e.what());
    }
}

magic_unitary read_mu_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
            !doc.contains("dim") || !doc.contains("entries"))
            throw parse_error("magic unitary document needs rows, cols, dim, entries");
        std::vector<vertex_id> rows, cols;
        for (const json& v : doc["rows"]) rows.push_back(id_from_json(v));
        for (const json& v : doc["cols"]) cols.push_back(id_from_json(v));
        const std::size_t d = doc["dim"].get<std::size_t>();
        const double tol = doc.value("tolerance", 1e-9);
        std::vector<cmatrix> entries;
        for (const json& e : doc["entries"]) {
            if (!e.is_array() || e.size() != d) throw parse_error("entry has wrong row count");
            cmatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
            for (std::size_t i = 0; i < d; ++i) {
                if (!e[i].is_array() || e[i].size() != d)
                    throw parse_error("entry has wrong column count");
                for (std::size_t j = 0; j < d; ++j) {
                    const json& z = e[i][j];
                    if (!z.is_array() || z.size() != 2)
                        throw parse_error("complex values are [re, im] pairs");
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        std::complex<double>(z[0].get<double>(), z[1].get<double>());
                }
            }
            entries.push_back(std::move(m));
        }
        return magic_unitary(std::move(rows), std::move(cols), d, std::move(entries), tol);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad magic unitary document: ") + e.what());
    }
}

std::string write_mu_json(const magic_unitary& u) {
    json doc;
    doc["rows"] = ids_to_json(u.rows());
    doc["cols"] = ids_to_json(u.cols());
    doc["dim"] = u.dim();
    doc["tolerance"] = u.tolerance();
    json entries = json::array();
    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x) {
            const cmatrix& m = u.entry(a, x);
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    row.push_back({m(i, j).real(), m(i, j).imag()});
                rows.push_back(std::move(row));
            }
            entries.push_back(std::move(rows));
        }
    doc["entries"] = std::move(entries);
    return doc.dump();
}

anchor parse_anchor_spec(const graph& g, const std::string& spec) {
    if (spec == "zbar") return center_anchor(g);
    if (spec.rfind("cut:", 0) == 0) {
        auto v = parse_vertex_id(spec.substr(4));
        if (!v) fail(errc::invalid_anchor, "bad vertex id in anchor spec");
        anchor a{anchor::kind_t::cut_vertex, {*v}};
        check_anchor(g, decompose_blocks(g), a);
        return a;
    }
    if (spec.rfind("block:", 0) == 0) {
        vertex_set vs;
        std::string rest = spec.substr(6);
        std::size_t start = 0;
        while (start <= rest.size()) {
            std::size_t comma = rest.find(',', start);
            std::string tok = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            auto v = parse_vertex_id(trim(tok));
            if (!v) fail(errc::invalid_anchor, "bad vertex id in anchor spec");
            vs.push_back(*v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        std::sort(vs.begin(), vs.end());
        anchor a{anchor::kind_t::block, std::move(vs)};
        check_anchor(g, decompose_blocks(g), a);
        return a;
    }
    fail(errc::invalid_anchor, "anchor spec must be cut:<id>, block:<id,...>, or zbar");
}

static json anchor_to_json(const anchor& a) {
    json j;
    j["kind"] = a.kind == anchor::kind_t::cut_vertex ? "cut-vertex" : "block";
    j["vertices"] = ids_to_json(a.vertices);
    return j;
}

static json tree_to_json(const colored_tree& t) {
    json nodes = json::array();
    for (const tree_node& node : t.nodes) {
        json n;
        n["color"] = node.color == node_color::white ? "white" : "black";
        if (node.block) n["block"] = ids_to_json(*node.block);
        if (node.cut_vertex) n["cut_vertex"] = to_string(*node.cut_vertex);
        if (node.label) n["label"] = *node.label;
        nodes.push_back(std::move(n));
    }
    json edges = json::array();
    for (auto [a, b] : t.edges) edges.push_back({a, b});
    return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

static json component_report(const graph& comp) {
    json c;
    c["vertices"] = ids_to_json(comp.vertices());
    c["block_tree"] = tree_to_json(block_tree(comp));
    const graph bg = block_graph(comp);
    json bgj;
    bgj["vertices"] = ids_to_json(bg.vertices());
    json bedges = json::array();
    for (const auto& [u, v] : bg.edges()) bedges.push_back({to_string(u), to_string(v)});
    bgj["edges"] = std::move(bedges);
    c["block_graph"] = std::move(bgj);
    c["center"] = ids_to_json(center(comp));
    c["center_anchor"] = anchor_to_json(center_anchor(comp));
    return c;
}

std::string blocks_report_json(const graph& g) {
    const block_decomposition d = decompose_blocks(g);
    json doc;
    doc["vertices"] = ids_to_json(g.vertices());
    doc["edge_count"] = g.edge_count();
    json blocks = json::array();
    for (const vertex_set& b : d.blocks) blocks.push_back(ids_to_json(b));
    doc["blocks"] = std::move(blocks);
    doc["cut_vertices"] = ids_to_json(d.cut_vertices);
    doc["is_block_graph"] = is_block_graph(g);
    json comps = json::array();
    for (const vertex_set& cell : connected_components(g))
        comps.push_back(component_report(induced_subgraph(g, cell)));
    doc["components"] = std::move(comps);
    return doc.dump(2);
}

static std::string ids_text(const vertex_set& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + to_string(vs[i]);
    return out + "}";
}

std::string blocks_report_human(const graph& g) {
    const block_decomposition d = decompose_blocks(g);
    std::ostringstream os;
    os << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
    os << "blocks (" << d.blocks.size() << "):\n";
    for (const vertex_set& b : d.blocks) os << "  " << ids_text(b) << "\n";
    os << "cut vertices: " << ids_text(d.cut_vertices) << "\n";
    for (const vertex_set& cell : connected_components(g)) {
        const graph comp = induced_subgraph(g, cell);
        if (connected_components(g).size() > 1)
            os << "component " << ids_text(cell) << ":\n";
        const colored_tree t = block_tree(comp);
        os << "  block tree: " << t.nodes.size() << " nodes, " << t.edges.size() << " edges\n";
        os << "  center: " << ids_text(center(comp)) << "\n";
        const anchor za = center_anchor(comp);
        os << "  center anchor: "
           << (za.kind == anchor::kind_t::cut_vertex ? "cut-vertex " : "block ")
           << ids_text(za.vertices) << "\n";
    }
    return os.str();
}

std::string block_tree_dot(const graph& g) {
    std::ostringstream os;
    os << "graph blocktree {\n";
    os << "  node [fontname=\"Helvetica\"];\n";
    std::size_t comp_idx = 0;
    for (const vertex_set& cell : connected_components(g)) {
        const graph comp = induced_subgraph(g, cell);
        const colored_tree t = block_tree(comp);
        const std::string prefix = "c" + std::to_string(comp_idx++) + "_";
        for (std::size_t i = 0; i < t.nodes.size(); ++i) {
            const tree_node& node = t.nodes[i];
            os << "  " << prefix << "n" << i;
            if (node.color == node_color::white)
                os << " [shape=ellipse, style=filled, fillcolor=white, label=\""
                   << ids_text(*node.block) << "\"];\n";
            else
                os << " [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\""
                   << (node.cut_vertex ? to_string(*node.cut_vertex) : std::string()) << "\"];\n";
        }
        for (auto [a, b] : t.edges)
            os << "  " << prefix << "n" << a << " -- " << prefix << "n" << b << ";\n";
    }
    os << "}\n";
    return os.str();
}

static json peel_json_doc(const graph& g, const anchor& a) {
    json doc;
    doc["anchor"] = anchor_to_json(a);
    std::vector<std::pair<vertex_id, std::size_t>> copies;
    if (a.kind == anchor::kind_t::cut_vertex && g.vertex_count() > 1) {
        const split_result sp = split_at(g, a.vertices.front());
        for (std::size_t i = 0; i < sp.copies.size(); ++i) copies.emplace_back(sp.copies[i], i);
    }
    const anchored_graph peeled = peel(make_anchored(g, a.vertices));
    json result;
    result["graph"] = json::parse(write_graph_json(peeled.g));
    result["anchor"] = ids_to_json(peeled.anchor_vertices);
    json comps = json::array();
    for (const component_anchor& ca : component_anchors(peeled)) {
        json c;
        c["vertices"] = ids_to_json(ca.component);
        c["anchor"] = anchor_to_json(ca.a);
        c["blocks"] =
            decompose_blocks(induced_subgraph(peeled.g, ca.component)).blocks.size();
        comps.push_back(std::move(c));
    }
    result["components"] = std::move(comps);
    json copy_arr = json::array();
    for (auto& [copy, idx] : copies)
        copy_arr.push_back({{"copy", to_string(copy)},
                            {"of", to_string(a.vertices.front())},
                            {"component", idx}});
    result["copies"] = std::move(copy_arr);
    doc["result"] = std::move(result);
    return doc;
}

std::string peel_report_json(const graph& g, const anchor& a) { return peel_json_doc(g, a).dump(2); }

std::string peel_report_human(const graph& g, const anchor& a) {
    const json doc = peel_json_doc(g, a);
    std::ostringstream os;
    os << "anchor: " << doc["anchor"]["kind"].get<std::string>() << " ";
    os << doc["anchor"]["vertices"].dump() << "\n";
    os << "components:\n";
    for (const json& c : doc["result"]["components"])
        os << "  vertices " << c["vertices"].dump() << " anchor "
           << c["anchor"]["vertices"].dump() << " (" << c["blocks"].get<std::size_t>()
           << " blocks)\n";
    if (!doc["result"]["copies"].empty()) {
        os << "copies:\n";
        for (const json& c : doc["result"]["copies"])
            os << "  " << c["copy"].get<std::string>() << " of " << c["of"].get<std::string>()
               << " in component " << c["component"].get<std::size_t>() << "\n";
    }
    return os.str();
}

static json sieve_json_doc(const sieve_report& rep) {
    json doc;
    doc["verdict"] = to_string(rep.verdict);
    json checks = json::array();
    for (const check_record& c : rep.checks) {
        json j;
        j["name"] = c.name;
        if (!c.scope.empty()) j["scope"] = c.scope;
        j["justification"] = c.justification;
        j["g"] = c.left;
        j["h"] = c.right;
        j["outcome"] = c.passed ? "pass" : "fail";
        checks.push_back(std::move(j));
    }
    doc["checks"] = std::move(checks);
    if (rep.witness) {
        json w = json::array();
        for (const auto& [x, a] : *rep.witness) w.push_back({to_string(x), to_string(a)});
        doc["witness"] = std::move(w);
    }
    return doc;
}

std::string sieve_report_json(const sieve_report& rep) { return sieve_json_doc(rep).dump(2); }

std::string sieve_report_human(const sieve_report& rep) {
    std::ostringstream os;
    auto clip = [](const std::string& s) {
        return s.size() <= 48 ? s : s.substr(0, 45) + "...";
    };
    for (const check_record& c : rep.checks) {
        os << (c.passed ? "[pass] " : "[FAIL] ") << c.name;
        if (!c.scope.empty()) os << " (" << c.scope << ")";
        if (!c.left.empty() || !c.right.empty())
            os << ": " << clip(c.left) << (c.right.empty() ? "" : " vs " + clip(c.right));
        if (!c.passed) os << "\n       " << c.justification;
        os << "\n";
    }
    os << "verdict: " << to_string(rep.verdict) << "\n";
    if (rep.witness) {
        os << "witness:";
        for (const auto& [x, a] : *rep.witness) os << " " << to_string(x) << "->" << to_string(a);
        os << "\n";
    }
    return os.str();
}

mu_verify_result verify_mu_report(const magic_unitary& u, const graph& g, const graph& h) {
    mu_verify_result out;
    const mu_validation val = validate_mu(u);
    const qi_check qc = is_quantum_iso(u, g, h);
    double max_comm = 0;
    for (std::size_t a = 0; a < u.rows().size(); ++a)
        for (std::size_t x = 0; x < u.cols().size(); ++x)
            for (std::size_t b2 = 0; b2 < u.rows().size(); ++b2)
                for (std::size_t y = 0; y < u.cols().size(); ++y)
                    max_comm = std::max(max_comm,
                                        spectral_norm(u.entry(a, x) * u.entry(b2, y) -
                                                      u.entry(b2, y) * u.entry(a, x)));
    const bool commutative = max_comm <= u.tolerance();
    const bool walks_ok = walk_compatible(u, g, h);
    const auto audit = block_tree_distance_audit(u, g, h);
    const bool connected =
        connected_components(g).size() == 1 && connected_components(h).size() == 1;

    out.pass = val.passed(u.tolerance()) && qc.ok;

    json doc;
    doc["dim"] = u.dim();
    doc["size"] = u.rows().size();
    doc["tolerance"] = u.tolerance();
    doc["magic_unitary"] = {{"projection_residual", val.max_projection_residual},
                            {"row_residual", val.max_row_residual},
                            {"col_residual", val.max_col_residual},
                            {"pass", val.passed(u.tolerance())}};
    doc["intertwining"] = {{"residual", qc.residual}, {"pass", qc.ok}};
    doc["commutativity"] = {{"max_commutator", max_comm}, {"commutative", commutative}};
    doc["walk_compatibility"] = walks_ok;
    json audit_j;
    audit_j["applicable"] = connected;
    json violations = json::array();
    for (const auto& e : audit)
        violations.push_back({{"row", to_string(e.row)},
                              {"col", to_string(e.col)},
                              {"row_tree_distance", e.row_dist},
                              {"col_tree_distance", e.col_dist}});
    audit_j["violations"] = std::move(violations);
    doc["center_distance_audit"] = std::move(audit_j);
    doc["pass"] = out.pass;
    out.json = doc.dump(2);

    std::ostringstream os;
    os << "entries: " << u.rows().size() << "x" << u.cols().size() << " of dim " << u.dim()
       << ", tolerance " << u.tolerance() << "\n";
    os << (val.passed(u.tolerance()) ? "[pass]" : "[FAIL]")
       << " magic unitary axioms: projection residual " << val.max_projection_residual
       << ", row residual " << val.max_row_residual << ", column residual "
       << val.max_col_residual << "\n";
    os << (qc.ok ? "[pass]" : "[FAIL]") << " intertwines the adjacencies: residual "
       << qc.residual << "\n";
    os << "entries " << (commutative ? "commute" : "do not commute") << " (max commutator "
       << max_comm << ")\n";
    os << "walk compatibility: " << (walks_ok ? "consistent" : "VIOLATED") << "\n";
    if (connected)
        os << "center-distance audit: " << audit.size() << " violation(s)\n";
    os << (out.pass ? "PASS" : "FAIL") << "\n";
    out.human = os.str();
    return out;
}

} // namespace blocksieve
