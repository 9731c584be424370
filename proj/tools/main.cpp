// blocksieve command line: block decomposition, anchored decomposition,
// quantum-isomorphism sieving, and magic-unitary verification/transport.
// Uses only the public C API.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blocksieve/blocksieve.h"

namespace {

constexpr int exit_error = 10;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << text;
}

struct graph_handle {
    bs_graph* g = nullptr;
    ~graph_handle() { bs_graph_free(g); }
};

struct mu_handle {
    bs_magic_unitary* u = nullptr;
    ~mu_handle() { bs_mu_free(u); }
};

struct owned_string {
    char* s = nullptr;
    ~owned_string() { bs_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

[[noreturn]] void die(const std::string& what, bs_status status) {
    std::cerr << "error: " << what;
    const char* detail = bs_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(exit_error + (status == BS_ERR_PARSE ? 0 : 1));
}

graph_handle load_graph(const std::string& path, const std::string& format) {
    graph_handle h;
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(exit_error + 2);
    }
    if (bs_status st = bs_graph_parse(text.c_str(), format.c_str(), &h.g); st != BS_OK)
        die("parsing " + path, st);
    return h;
}

double tolerance_from_env(double flag_value, bool flag_set) {
    if (flag_set) return flag_value;
    if (const char* env = std::getenv("BLOCKSIEVE_TOLERANCE")) {
        try {
            return std::stod(env);
        } catch (...) {
            std::cerr << "error: bad BLOCKSIEVE_TOLERANCE value\n";
            std::exit(exit_error + 1);
        }
    }
    return 1e-9;
}

struct sieve_outcome {
    int verdict = BS_VERDICT_UNKNOWN;
    std::string report;
    bool failed = false;
    std::string message;
};

sieve_outcome sieve_pair(const std::string& path_g, const std::string& path_h,
                         const std::string& format, std::size_t max_walk, bool human) {
    sieve_outcome out;
    try {
        const std::string tg = read_file(path_g);
        const std::string th = read_file(path_h);
        graph_handle g, h;
        if (bs_graph_parse(tg.c_str(), format.c_str(), &g.g) != BS_OK) {
            out.failed = true;
            out.message = "cannot parse " + path_g + ": " + bs_last_error();
            return out;
        }
        if (bs_graph_parse(th.c_str(), format.c_str(), &h.g) != BS_OK) {
            out.failed = true;
            out.message = "cannot parse " + path_h + ": " + bs_last_error();
            return out;
        }
        owned_string rep;
        if (bs_sieve_run(g.g, h.g, max_walk, human ? 1 : 0, &rep.s, &out.verdict) != BS_OK) {
            out.failed = true;
            out.message = bs_last_error();
            return out;
        }
        out.report = rep.str();
    } catch (const std::exception& e) {
        out.failed = true;
        out.message = e.what();
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block structures, anchored decompositions, and a sound "
                 "quantum-isomorphism refutation sieve"};
    app.set_version_flag("--version", std::string(bs_version()));
    app.require_subcommand(1);
    app.fallthrough(); // accept the shared flags after a subcommand name

    std::string in_format = "auto";
    std::string out_format = "human";
    std::string out_path;
    double tolerance = 1e-9;
    bool tolerance_set = false;
    app.add_option("--input-format", in_format, "input graph format: graph6|edgelist|structured|auto")
        ->capture_default_str();
    app.add_option("--format", out_format, "output format: human|structured-text|dot")
        ->capture_default_str();
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_option("--tolerance", tolerance,
                   "residual tolerance for magic-unitary checks (env BLOCKSIEVE_TOLERANCE)")
        ->each([&](const std::string&) { tolerance_set = true; });

    auto* cmd_blocks = app.add_subcommand("blocks", "block decomposition report");
    std::string blocks_input;
    cmd_blocks->add_option("graph", blocks_input, "graph file (- for stdin)")->required();

    auto* cmd_sieve = app.add_subcommand("sieve", "decide ISO / NOT_QI / UNKNOWN for a pair");
    std::string sieve_g, sieve_h, batch_manifest;
    unsigned jobs = 1;
    std::size_t max_walk = 0;
    cmd_sieve->add_option("graphG", sieve_g, "first graph file");
    cmd_sieve->add_option("graphH", sieve_h, "second graph file");
    cmd_sieve->add_option("--batch", batch_manifest,
                          "manifest with one 'fileG fileH' pair per line");
    cmd_sieve->add_option("--jobs", jobs, "parallel batch width")->capture_default_str();
    cmd_sieve->add_option("--max-walk", max_walk,
                          "cap walk-profile length (0 = vertex count)");

    auto* cmd_gamma = app.add_subcommand("gamma", "one anchored decomposition step");
    std::string gamma_input, anchor_spec = "zbar";
    cmd_gamma->add_option("graph", gamma_input, "graph file")->required();
    cmd_gamma->add_option("--anchor", anchor_spec, "cut:<id> | block:<id,...> | zbar")
        ->capture_default_str();

    auto* cmd_verify = app.add_subcommand("verify-mu", "check a magic unitary against a pair");
    std::string vg, vh, vmu;
    cmd_verify->add_option("graphG", vg, "source graph file")->required();
    cmd_verify->add_option("graphH", vh, "target graph file")->required();
    cmd_verify->add_option("mu", vmu, "magic unitary file")->required();

    auto* cmd_transport = app.add_subcommand(
        "transport-mu", "push a magic unitary through the anchored decomposition");
    std::string tg, th, tmu, anchor_g = "zbar", anchor_h = "zbar";
    cmd_transport->add_option("graphG", tg, "source graph file")->required();
    cmd_transport->add_option("graphH", th, "target graph file")->required();
    cmd_transport->add_option("mu", tmu, "magic unitary file")->required();
    cmd_transport->add_option("--anchor", anchor_g, "anchor spec for the source graph")
        ->capture_default_str();
    cmd_transport->add_option("--anchor-h", anchor_h, "anchor spec for the target graph")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const double tol = tolerance_from_env(tolerance, tolerance_set);
    const bool tol_overridden = tolerance_set || std::getenv("BLOCKSIEVE_TOLERANCE") != nullptr;
    for (char& c : out_format) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const bool human = out_format == "human";
    if (out_format != "human" && out_format != "structured-text" && out_format != "dot") {
        std::cerr << "error: unknown output format " << out_format << "\n";
        return exit_error + 1;
    }

    try {
        if (cmd_blocks->parsed()) {
            graph_handle g = load_graph(blocks_input, in_format);
            owned_string rep;
            bs_status st = out_format == "dot" ? bs_block_tree_dot(g.g, &rep.s)
                           : human            ? bs_blocks_human(g.g, &rep.s)
                                              : bs_blocks_json(g.g, &rep.s);
            if (st != BS_OK) die("blocks report", st);
            write_output(out_path, rep.str());
            return 0;
        }

        if (cmd_sieve->parsed()) {
            if (!batch_manifest.empty()) {
                std::istringstream manifest(read_file(batch_manifest));
                std::vector<std::pair<std::string, std::string>> pairs;
                std::string line;
                while (std::getline(manifest, line)) {
                    std::istringstream ls(line);
                    std::string a, b;
                    if (ls >> a >> b) pairs.emplace_back(a, b);
                }
                std::vector<std::future<sieve_outcome>> results;
                unsigned width = jobs == 0 ? 1 : jobs;
                std::vector<sieve_outcome> outcomes(pairs.size());
                for (std::size_t start = 0; start < pairs.size(); start += width) {
                    const std::size_t stop = std::min(pairs.size(), start + width);
                    std::vector<std::future<sieve_outcome>> wave;
                    for (std::size_t i = start; i < stop; ++i)
                        wave.push_back(std::async(std::launch::async, sieve_pair, pairs[i].first,
                                                  pairs[i].second, in_format, max_walk, human));
                    for (std::size_t i = start; i < stop; ++i) outcomes[i] = wave[i - start].get();
                }
                std::ostringstream all;
                int worst = 0;
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    const sieve_outcome& oc = outcomes[i];
                    all << "# " << pairs[i].first << " " << pairs[i].second << "\n";
                    if (oc.failed) {
                        all << "error: " << oc.message << "\n";
                        worst = std::max(worst, exit_error);
                        continue;
                    }
                    all << oc.report;
                    if (!oc.report.empty() && oc.report.back() != '\n') all << "\n";
                    worst = std::max(worst, oc.verdict);
                }
                write_output(out_path, all.str());
                return worst;
            }
            if (sieve_g.empty() || sieve_h.empty()) {
                std::cerr << "error: sieve needs two graphs or --batch\n";
                return exit_error + 1;
            }
            sieve_outcome oc = sieve_pair(sieve_g, sieve_h, in_format, max_walk, human);
            if (oc.failed) {
                std::cerr << "error: " << oc.message << "\n";
                return exit_error;
            }
            write_output(out_path, oc.report);
            return oc.verdict; // 0 ISO, 1 NOT_QI, 2 UNKNOWN
        }

        if (cmd_gamma->parsed()) {
            graph_handle g = load_graph(gamma_input, in_format);
            owned_string rep;
            if (bs_status st = bs_gamma_report(g.g, anchor_spec.c_str(), human ? 1 : 0, &rep.s);
                st != BS_OK)
                die("anchored decomposition", st);
            write_output(out_path, rep.str());
            return 0;
        }

        if (cmd_verify->parsed()) {
            graph_handle g = load_graph(vg, in_format);
            graph_handle h = load_graph(vh, in_format);
            mu_handle u;
            const std::string text = read_file(vmu);
            if (bs_status st = bs_mu_parse(text.c_str(), tol_overridden ? tol : 0.0, &u.u); st != BS_OK) die("parsing " + vmu, st);
            owned_string rep;
            int pass = 0;
            if (bs_status st = bs_mu_verify(u.u, g.g, h.g, human ? 1 : 0, &rep.s, &pass);
                st != BS_OK)
                die("verification", st);
            write_output(out_path, rep.str());
            return pass ? 0 : 1;
        }

        if (cmd_transport->parsed()) {
            graph_handle g = load_graph(tg, in_format);
            graph_handle h = load_graph(th, in_format);
            mu_handle u;
            const std::string text = read_file(tmu);
            if (bs_status st = bs_mu_parse(text.c_str(), tol_overridden ? tol : 0.0, &u.u); st != BS_OK) die("parsing " + tmu, st);
            mu_handle moved;
            if (bs_status st = bs_mu_transport(u.u, g.g, anchor_g.c_str(), h.g, anchor_h.c_str(),
                                               &moved.u);
                st != BS_OK)
                die("transport", st);
            owned_string doc;
            if (bs_status st = bs_mu_write(moved.u, &doc.s); st != BS_OK) die("serialization", st);
            write_output(out_path, doc.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error + 2;
    }
    return exit_error + 1;
}
