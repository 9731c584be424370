#include "blocksieve/blocksieve.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "anchored.hpp"
#include "formats.hpp"
#include "magic.hpp"
#include "sieve.hpp"

#if defined(__GNUC__)
#define BS_EXPORT __attribute__((visibility("default")))
#else
#define BS_EXPORT
#endif

using namespace blocksieve;

struct bs_graph {
    graph g;
};

struct bs_magic_unitary {
    magic_unitary u;
};

namespace {

thread_local std::string last_error_message;

bs_status code_of(errc c) {
    switch (c) {
        case errc::parse: return BS_ERR_PARSE;
        case errc::unknown_vertex: return BS_ERR_UNKNOWN_VERTEX;
        case errc::disconnected_input: return BS_ERR_DISCONNECTED;
        case errc::invalid_anchor: return BS_ERR_INVALID_ANCHOR;
        case errc::not_a_cut_vertex: return BS_ERR_NOT_CUT_VERTEX;
        case errc::dimension_mismatch:
        case errc::index_mismatch: return BS_ERR_DIMENSION;
        case errc::not_bijective: return BS_ERR_NOT_BIJECTIVE;
        case errc::not_a_projection:
        case errc::partition_not_preserved:
        case errc::empty_cell:
        case errc::root_color_violation:
        case errc::precondition_failed:
        case errc::no_witness: return BS_ERR_PRECONDITION;
        case errc::invalid_argument: return BS_ERR_INVALID_ARGUMENT;
        case errc::io: return BS_ERR_IO;
    }
    return BS_ERR_INTERNAL;
}

template <typename Fn>
bs_status guarded(Fn&& fn) {
    try {
        fn();
        return BS_OK;
    } catch (const error& e) {
        last_error_message = e.what();
        return code_of(e.code());
    } catch (const std::exception& e) {
        last_error_message = e.what();
        return BS_ERR_INTERNAL;
    } catch (...) {
        last_error_message = "unknown error";
        return BS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

BS_EXPORT const char* bs_version(void) { return "0.1.0"; }

BS_EXPORT const char* bs_last_error(void) { return last_error_message.c_str(); }

BS_EXPORT void bs_string_free(char* s) { std::free(s); }

BS_EXPORT bs_status bs_graph_parse(const char* text, const char* format, bs_graph** out) {
    if (!text || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        graph_format fmt = parse_graph_format(format ? format : "auto");
        *out = new bs_graph{read_graph(text, fmt)};
    });
}

BS_EXPORT void bs_graph_free(bs_graph* g) { delete g; }

BS_EXPORT size_t bs_graph_vertex_count(const bs_graph* g) { return g ? g->g.vertex_count() : 0; }

BS_EXPORT size_t bs_graph_edge_count(const bs_graph* g) { return g ? g->g.edge_count() : 0; }

BS_EXPORT bs_status bs_graph_write(const bs_graph* g, const char* format, char** out) {
    if (!g || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const std::string fmt = format ? format : "graph6";
        if (fmt == "graph6")
            *out = dup_string(write_graph6(g->g));
        else if (fmt == "edgelist")
            *out = dup_string(write_edgelist(g->g));
        else if (fmt == "structured" || fmt == "structured-text")
            *out = dup_string(write_graph_json(g->g));
        else
            fail(errc::invalid_argument, "unknown graph format: " + fmt);
    });
}

BS_EXPORT bs_status bs_blocks_json(const bs_graph* g, char** out) {
    if (!g || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(blocks_report_json(g->g)); });
}

BS_EXPORT bs_status bs_blocks_human(const bs_graph* g, char** out) {
    if (!g || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(blocks_report_human(g->g)); });
}

BS_EXPORT bs_status bs_block_tree_dot(const bs_graph* g, char** out) {
    if (!g || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(block_tree_dot(g->g)); });
}

BS_EXPORT bs_status bs_gamma_report(const bs_graph* g, const char* anchor_spec, int human,
                                    char** out) {
    if (!g || !anchor_spec || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const anchor a = parse_anchor_spec(g->g, anchor_spec);
        *out = dup_string(human ? peel_report_human(g->g, a) : peel_report_json(g->g, a));
    });
}

BS_EXPORT bs_status bs_sieve_run(const bs_graph* g, const bs_graph* h, size_t max_walk_len,
                                 int human, char** report, int* verdict) {
    if (!g || !h) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        sieve_options opt;
        if (max_walk_len > 0) opt.max_walk_len = max_walk_len;
        const sieve_report rep = run_sieve(g->g, h->g, opt);
        if (report) *report = dup_string(human ? sieve_report_human(rep) : sieve_report_json(rep));
        if (verdict)
            *verdict = rep.verdict == verdict_t::iso      ? BS_VERDICT_ISO
                       : rep.verdict == verdict_t::not_qi ? BS_VERDICT_NOT_QI
                                                          : BS_VERDICT_UNKNOWN;
    });
}

BS_EXPORT bs_status bs_mu_parse(const char* text, double tolerance_override,
                                bs_magic_unitary** out) {
    if (!text || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        magic_unitary u = read_mu_json(text);
        if (tolerance_override > 0) {
            std::vector<cmatrix> entries;
            for (std::size_t a = 0; a < u.rows().size(); ++a)
                for (std::size_t x = 0; x < u.cols().size(); ++x) entries.push_back(u.entry(a, x));
            u = magic_unitary(u.rows(), u.cols(), u.dim(), std::move(entries), tolerance_override);
        }
        *out = new bs_magic_unitary{std::move(u)};
    });
}

BS_EXPORT void bs_mu_free(bs_magic_unitary* u) { delete u; }

BS_EXPORT bs_status bs_mu_write(const bs_magic_unitary* u, char** out) {
    if (!u || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(write_mu_json(u->u)); });
}

BS_EXPORT bs_status bs_mu_verify(const bs_magic_unitary* u, const bs_graph* g, const bs_graph* h,
                                 int human, char** report, int* pass) {
    if (!u || !g || !h) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const mu_verify_result res = verify_mu_report(u->u, g->g, h->g);
        if (report) *report = dup_string(human ? res.human : res.json);
        if (pass) *pass = res.pass ? 1 : 0;
    });
}

BS_EXPORT bs_status bs_mu_transport(const bs_magic_unitary* u, const bs_graph* g,
                                    const char* anchor_g, const bs_graph* h,
                                    const char* anchor_h, bs_magic_unitary** out) {
    if (!u || !g || !h || !anchor_g || !anchor_h || !out) return BS_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const anchor ag = parse_anchor_spec(g->g, anchor_g);
        const anchor ah = parse_anchor_spec(h->g, anchor_h);
        const anchored_graph agg = make_anchored(g->g, ag.vertices);
        const anchored_graph ahh = make_anchored(h->g, ah.vertices);
        magic_unitary moved = peel_transport(u->u, agg, ahh);
        // re-verify against the decomposed pair before handing it out
        const anchored_graph pg = peel(agg);
        const anchored_graph ph = peel(ahh);
        if (!is_quantum_iso(moved, pg.g, ph.g).ok)
            fail(errc::precondition_failed, "transported grid fails re-verification");
        if (!preserves_anchor(moved, pg.anchor_vertices, ph.anchor_vertices))
            fail(errc::precondition_failed, "transported grid does not preserve the anchors");
        *out = new bs_magic_unitary{std::move(moved)};
    });
}

} // extern "C"
