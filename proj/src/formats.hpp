#pragma once

#include <string>

#include "anchored.hpp"
#include "graph.hpp"
#include "magic.hpp"
#include "sieve.hpp"

namespace blocksieve {

enum class graph_format { graph6, edgelist, structured, autodetect };

// Accepts "graph6", "edgelist", "structured", "auto".
graph_format parse_graph_format(const std::string& name);

// Parse errors carry line/column positions.
graph read_graph(const std::string& text, graph_format fmt = graph_format::autodetect,
                 std::string* name_out = nullptr);

// graph6 stores the graph on indices 0..n-1 in sorted vertex order; the two
// text formats keep vertex ids verbatim.
std::string write_graph6(const graph& g);
std::string write_edgelist(const graph& g);
std::string write_graph_json(const graph& g, const std::string& name = "");

magic_unitary read_mu_json(const std::string& text);
std::string write_mu_json(const magic_unitary& u);

// "cut:<id>" | "block:<id,...>" | "zbar"
anchor parse_anchor_spec(const graph& g, const std::string& spec);

std::string blocks_report_json(const graph& g);
std::string blocks_report_human(const graph& g);
std::string block_tree_dot(const graph& g);

std::string peel_report_json(const graph& g, const anchor& a);
std::string peel_report_human(const graph& g, const anchor& a);

std::string sieve_report_json(const sieve_report& rep);
std::string sieve_report_human(const sieve_report& rep);

struct mu_verify_result {
    bool pass = false;
    std::string json;
    std::string human;
};

mu_verify_result verify_mu_report(const magic_unitary& u, const graph& g, const graph& h);

} // namespace blocksieve
