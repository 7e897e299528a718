#pragma once

// The `lpa` command line. run() takes its streams as arguments so tests can
// drive it in-process.
//
// Exit status: 0 success, 1 usage error, 2 parse/validation error or a
// failed check.

#include "dsl.hpp"
#include "invariants.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace lpa::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalid = 2;

/// Reads a graph argument: "-" or empty reads the input stream, an existing
/// path is read as a document, otherwise a family token such as `pyramid5`
/// or `tgraph` is generated.
inline GraphSpec load_graph(const std::string& arg, std::istream& in) {
    if (arg.empty() || arg == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_graph(ss.str());
    }
    if (std::filesystem::exists(arg)) {
        std::ifstream f(arg);
        if (!f) throw ParseError(0, "cannot read '" + arg + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse_graph(ss.str());
    }
    if (auto g = family_from_token(arg)) return *g;
    throw ParseError(0, "no such file or family: '" + arg + "'");
}

inline std::string format_set(const GraphSpec& spec, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    auto emit = [&](const std::string& n) {
        out += (first ? "" : ", ") + n;
        first = false;
    };
    for (const auto& n : ordered_names(spec, s)) emit(n);
    for (const auto& n : s.plain) // primed names from a quotient
        if (!spec.find(n)) emit(n);
    return out + "}";
}

inline std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline void print_analysis(std::ostream& out, const GraphSpec& spec, const ReportDocument& doc) {
    const auto& c = doc.classification;
    const auto& r = doc.report;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "components: " << spec.components.size() << " (" << spec.rays().size() << " rays, " << spec.fans().size()
        << " fans), rules: " << spec.rules.size() << "\n";
    out << "acyclic: " << yn(c.acyclic) << "\n";
    out << "row-finite: " << yn(c.row_finite) << "\n";
    out << "von Neumann regular (implied): " << yn(c.vn_regular_implied) << "\n";
    out << "socle series:\n";
    for (const auto& st : r.stages) {
        out << "  V_" << st.index << " = " << format_set(spec, st.state.H);
        if (!st.state.S.empty()) {
            out << "  breaking elements:";
            for (const auto& rec : st.state.S) out << ' ' << rec.vertex;
        }
        out << "\n";
    }
    if (!r.stabilized)
        out << "series did not stabilize within " << step_bound(spec) << " steps\n";
    else if (r.is_loewy_ring)
        out << "Loewy ring, length " << r.loewy_length << "\n";
    else
        out << "Loewy length " << r.loewy_length << ", NOT a Loewy ring\n";
}

inline std::string to_dot(const FiniteGraph& g, const std::string& title = "lpa") {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n";
    for (const auto& v : g.vertices) {
        os << "  \"" << v << "\"";
        if (is_primed_name(v)) os << " [shape=box, style=dashed]";
        os << ";\n";
    }
    for (const auto& e : g.edges)
        os << "  \"" << g.vertices[e.source] << "\" -> \"" << g.vertices[e.target] << "\" [label=\"" << e.name
           << "\"];\n";
    os << "}\n";
    return os.str();
}

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loewy socle series of Leavitt path algebras", "lpa"};
    app.require_subcommand(1);

    std::string file, expr, family, size, output, set_csv;
    bool json = false;
    std::size_t depth = 4;

    auto* analyze_cmd = app.add_subcommand("analyze", "classify a graph and print its socle series");
    analyze_cmd->add_option("file", file, "graph document, family token, or - for stdin");

    auto* socle_cmd = app.add_subcommand("socle", "print the socle series");
    socle_cmd->add_option("file", file, "graph document, family token, or - for stdin");
    socle_cmd->add_flag("--json", json, "emit the JSON report");

    auto* lp_cmd = app.add_subcommand("linepoints", "list the line points");
    lp_cmd->add_option("file", file, "graph document, family token, or - for stdin");

    auto* closure_cmd = app.add_subcommand("closure", "saturated closure of a hereditary set");
    closure_cmd->add_option("file", file, "graph document, family token, or - for stdin");
    closure_cmd->add_option("--set", set_csv, "comma-separated component names")->required();

    auto* quotient_cmd = app.add_subcommand("quotient", "quotient graph by a hereditary saturated set");
    quotient_cmd->add_option("file", file, "graph document, family token, or - for stdin");
    quotient_cmd->add_option("--set", set_csv, "comma-separated component names")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "normal form of an element (finite graphs)");
    reduce_cmd->add_option("file", file, "graph document or family token")->required();
    reduce_cmd->add_option("expr", expr, "element expression")->required();

    auto* gen_cmd = app.add_subcommand("generate", "write a standard family as a document");
    gen_cmd->add_option("family", family, "p0, line, pyramid, qpyramid, clock, discrete, loopgraph, tgraph")
        ->required();
    gen_cmd->add_option("n", size, "size: positive integer or omega");
    gen_cmd->add_option("-o,--output", output, "output file (default stdout)");

    auto* dot_cmd = app.add_subcommand("export-dot", "DOT rendering of a truncation");
    dot_cmd->add_option("file", file, "graph document, family token, or - for stdin");
    dot_cmd->add_option("--depth", depth, "members kept per family")->check(CLI::PositiveNumber);

    auto* check_cmd = app.add_subcommand("check", "run the structural self-checks");
    check_cmd->add_option("file", file, "graph document, family token, or - for stdin");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*gen_cmd) {
            GraphSpec g;
            try {
                g = generate_family(family, size);
            } catch (const Unrepresentable&) {
                throw;
            } catch (const Error& e) {
                err << "error: " << e.what() << "\n";
                return kUsage;
            }
            std::string text = serialize_graph(g);
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output);
                if (!f) {
                    err << "cannot write '" << output << "'\n";
                    return kUsage;
                }
                f << text;
            }
            return kOk;
        }

        GraphSpec spec = load_graph(file, in);

        if (*analyze_cmd) {
            print_analysis(out, spec, analyze(spec));
        } else if (*socle_cmd) {
            auto doc = analyze(spec);
            if (json)
                out << to_json(doc).dump(2) << "\n";
            else
                print_analysis(out, spec, doc);
        } else if (*lp_cmd) {
            for (const auto& n : ordered_names(spec, line_points(spec))) out << n << "\n";
        } else if (*closure_cmd) {
            VertexSet h = make_vertex_set(spec, split_names(set_csv));
            out << format_set(spec, saturated_closure(spec, h)) << "\n";
        } else if (*quotient_cmd) {
            VertexSet h = make_vertex_set(spec, split_names(set_csv));
            out << serialize_graph(quotient(spec, IdealState{h, {}}));
        } else if (*reduce_cmd) {
            FiniteGraph g = to_finite(spec);
            out << format_element(g, parse_element(expr, g)) << "\n";
        } else if (*dot_cmd) {
            out << to_dot(expand_truncation(spec, depth));
        } else if (*check_cmd) {
            bool all = true;
            for (const auto& c : check_invariants(spec)) {
                out << (c.passed ? "PASS " : "FAIL ") << c.name;
                if (!c.passed && !c.detail.empty()) out << ": " << c.detail;
                out << "\n";
                all = all && c.passed;
            }
            return all ? kOk : kInvalid;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}

} // namespace lpa::cli
