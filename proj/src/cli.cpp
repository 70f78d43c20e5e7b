#include <lpa/cli.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <lpa/homology.hpp>
#include <lpa/textio.hpp>

namespace lpa {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string graph_file;
    bool json = false;
    std::size_t max_len = 6;
    std::optional<std::int64_t> seed;
};

Graph load_graph(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw DomainError("cannot open graph file '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return textio::parse_graph(buf.str());
}

Json ext_dim_json(const ExtDim& e) {
    Json dim;
    switch (e.kind) {
        case ExtKind::Zero: dim["zero"] = true; break;
        case ExtKind::Finite: dim["finite"] = e.dim; break;
        case ExtKind::CountablyInfinite: dim["countably_infinite"] = true; break;
    }
    return dim;
}

std::string ext_dim_text(const ExtDim& e) {
    switch (e.kind) {
        case ExtKind::Zero: return "0";
        case ExtKind::Finite: return std::to_string(e.dim) + " (finite)";
        case ExtKind::CountablyInfinite: return "countably infinite";
    }
    return "";
}

void finish(const Options& opt, Json& report, std::ostream& out, const std::string& plain) {
    if (opt.json) {
        if (opt.seed) report["seed"] = *opt.seed;
        report["schema_version"] = 1;
        out << report.dump() << "\n";
    } else {
        out << plain;
    }
}

int dispatch(const Options& opt, const std::string& cmd, const std::vector<std::string>& pos,
             const std::optional<std::string>& generator, std::optional<std::size_t> horizon,
             std::ostream& out) {
    Graph g = load_graph(opt.graph_file);
    Json report;
    std::string plain;

    if (cmd == "normalize") {
        auto parsed = textio::parse_expr(g, pos.at(0));
        report["element"] = textio::print_element(parsed.element);
        report["warnings"] = parsed.warnings;
        plain = textio::print_element(parsed.element) + "\n";
        for (const auto& w : parsed.warnings) plain += "warning: " + w + "\n";
    } else if (cmd == "mul") {
        auto a = textio::parse_expr(g, pos.at(0));
        auto b = textio::parse_expr(g, pos.at(1));
        auto prod = multiply(a.element, b.element);
        report["element"] = textio::print_element(prod);
        plain = textio::print_element(prod) + "\n";
    } else if (cmd == "act") {
        auto a = textio::parse_expr(g, pos.at(0));
        auto t = ChenElement::basis(textio::parse_path_spec(g, pos.at(1)));
        auto result = act(a.element, t);
        report["element"] = textio::print_chen_element(result);
        report["class"] = textio::print_path_spec(result.class_spec());
        plain = textio::print_chen_element(result) + "\n";
    } else if (cmd == "ext") {
        auto S = canonicalize(textio::parse_path_spec(g, pos.at(0)));
        auto T = canonicalize(textio::parse_path_spec(g, pos.at(1)));
        ExtDim e = ext_dim(S, T);
        report["dim"] = ext_dim_json(e);
        report["rule"] = e.rule;
        Json wit = Json::array();
        for (const auto& w : e.witnesses) wit.push_back(textio::print_path_spec(w));
        report["witnesses"] = wit;
        report["includes_class_path"] = e.includes_class_path;
        plain = "dim Ext^1 = " + ext_dim_text(e) + "\nrule: " + e.rule + "\n";
        for (const auto& w : e.witnesses)
            plain += "witness: " + textio::print_path_spec(w) + "\n";
        if (e.includes_class_path) plain += "witness: the class path itself\n";
    } else if (cmd == "resolve") {
        auto S = canonicalize(textio::parse_path_spec(g, pos.at(0)));
        std::optional<FinPath> alpha;
        if (generator) alpha = textio::parse_path(g, *generator);
        ResolutionReport r = resolution(S, alpha, horizon);
        const char* type = r.module_type == ModuleType::Sink       ? "sink"
                           : r.module_type == ModuleType::Rational ? "rational"
                                                                   : "irrational";
        report["module_type"] = type;
        report["presentation_vertex"] = g.vertex_name(r.presentation_vertex);
        report["kernel_generator"] =
            r.kernel_generator ? Json(textio::print_element(*r.kernel_generator)) : Json(nullptr);
        if (r.module_type == ModuleType::Irrational) {
            Json fam = Json::array();
            for (const auto& entry : r.kernel_family) {
                Json e;
                e["index"] = entry.index;
                e["path"] = textio::print_path(entry.path_prefix);
                Json exits = Json::array();
                for (EdgeId f : entry.exit_edges) exits.push_back(g.edge_name(f));
                e["exits"] = exits;
                Json gens = Json::array();
                for (const auto& gen : entry.generators)
                    gens.push_back(textio::print_element(gen));
                e["generators"] = gens;
                fam.push_back(e);
            }
            report["kernel_family"] = fam;
            report["family_infinite"] = r.family_infinite;
            report["family_witness"] =
                r.family_witness ? Json(g.vertex_name(*r.family_witness)) : Json(nullptr);
            report["horizon"] = r.horizon;
        }
        report["finitely_presented"] = r.finitely_presented;
        report["projective"] = r.projective;
        report["projective_dimension"] = r.projective_dimension;

        plain = std::string("module type: ") + type + "\n";
        plain += "presentation vertex: " + g.vertex_name(r.presentation_vertex) + "\n";
        if (r.kernel_generator)
            plain += "kernel generator: " + textio::print_element(*r.kernel_generator) + "\n";
        for (const auto& entry : r.kernel_family) {
            if (entry.exit_edges.empty()) continue;
            plain += "kernel block " + std::to_string(entry.index) + ":";
            for (const auto& gen : entry.generators)
                plain += " " + textio::print_element(gen) + ";";
            plain += "\n";
        }
        if (r.module_type == ModuleType::Irrational) {
            plain += "family continues past the horizon: every return to vertex '" +
                     g.vertex_name(*r.family_witness) + "' adds a block\n";
        }
        plain += std::string("finitely presented: ") + (r.finitely_presented ? "yes" : "no") +
                 "\n";
        plain += std::string("projective: ") + (r.projective ? "yes" : "no") + "\n";
        plain += "projective dimension: " + std::to_string(r.projective_dimension) + "\n";
    } else if (cmd == "solve-shift") {
        FinPath d = textio::parse_path(g, pos.at(0));
        ChenElement t = textio::parse_chen_element(g, pos.at(1));
        ShiftSolution sol = solve_shift_equation(d, t);
        report["solvable"] = sol.solvable;
        report["x"] = sol.solvable ? Json(textio::print_chen_element(*sol.x)) : Json(nullptr);
        report["obstruction"] = sol.solvable ? Json(nullptr) : Json(sol.describe());
        if (sol.obstruction_path)
            report["obstruction_path"] = textio::print_path_spec(*sol.obstruction_path);
        if (sol.solvable) {
            plain = "X = " + textio::print_chen_element(*sol.x) + "\n";
        } else {
            plain = sol.describe() + "\n";
            if (sol.obstruction_path)
                plain += "obstruction path: " + textio::print_path_spec(*sol.obstruction_path) +
                         "\n";
        }
    } else if (cmd == "lset") {
        FinPath d = textio::parse_path(g, pos.at(0));
        auto T = canonicalize(textio::parse_path_spec(g, pos.at(1)));
        Cardinality card = l_cardinality(d, T);
        Json cj;
        std::string ctext;
        switch (card.kind) {
            case CardKind::Empty:
                cj["empty"] = true;
                ctext = "empty";
                break;
            case CardKind::Finite:
                cj["finite"] = card.count;
                ctext = std::to_string(card.count) + " (finite)";
                break;
            case CardKind::CountablyInfinite:
                cj["countably_infinite"] = true;
                ctext = "countably infinite";
                break;
        }
        report["cardinality"] = cj;
        plain = "cardinality: " + ctext + "\n";
        if (T.kind() != OmegaKind::Irrational) {
            auto members = l_set_enumerate(d, T, opt.max_len);
            Json mj = Json::array();
            for (const auto& m : members) {
                mj.push_back(textio::print_path_spec(m));
                plain += textio::print_path_spec(m) + "\n";
            }
            report["members"] = mj;
            report["max_len"] = opt.max_len;
        }
    } else if (cmd == "line-points") {
        Json vj = Json::array();
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            auto r = is_line_point(g, v);
            Json e;
            e["vertex"] = g.vertex_name(v);
            e["line_point"] = r.is_line_point;
            e["certificate"] = r.describe(g);
            vj.push_back(e);
            plain += g.vertex_name(v) + ": " + r.describe(g) + "\n";
        }
        report["vertices"] = vj;
    } else if (cmd == "cycles") {
        auto cycles = simple_closed_paths(g, opt.max_len);
        Json cj = Json::array();
        for (const auto& c : cycles) {
            Json e;
            e["path"] = textio::print_path(c.path);
            e["base"] = g.vertex_name(c.path.src());
            e["canonical_rotation"] = c.canonical_rotation;
            cj.push_back(e);
            plain += textio::print_path(c.path) + (c.canonical_rotation ? " (canonical)" : "") +
                     "\n";
        }
        report["cycles"] = cj;
        report["max_len"] = opt.max_len;
    } else if (cmd == "fp-check") {
        auto S = canonicalize(textio::parse_path_spec(g, pos.at(0)));
        FinitePresentation fp = is_finitely_presented(S);
        report["finitely_presented"] = fp.finitely_presented;
        report["reason"] = fp.reason;
        report["kernel_generator"] =
            fp.kernel_generator ? Json(textio::print_element(*fp.kernel_generator)) : Json(nullptr);
        report["witness"] = fp.witness ? Json(g.vertex_name(*fp.witness)) : Json(nullptr);
        plain = fp.finitely_presented ? "finitely presented\n" : "not finitely presented\n";
        plain += fp.reason + "\n";
        if (fp.kernel_generator)
            plain += "kernel generator: " + textio::print_element(*fp.kernel_generator) + "\n";
    } else if (cmd == "uniserial") {
        auto S = canonicalize(textio::parse_path_spec(g, pos.at(0)));
        std::size_t n = std::stoul(pos.at(1));
        UniserialReport r = uniserial_report(S, n);
        report["exists"] = r.exists;
        report["length"] = r.length;
        report["rule"] = r.rule;
        report["self_ext"] = ext_dim_json(r.self_ext);
        if (r.exists) {
            plain = "exists: a uniserial module of length " + std::to_string(n) +
                    " with all composition factors the module of the given class\n";
        } else {
            plain = "no via this criterion: the self-extension group vanishes\n";
        }
        plain += "self Ext dimension: " + ext_dim_text(r.self_ext) + "\n";
    } else {
        throw DomainError("unknown command '" + cmd + "'");
    }

    std::ostringstream sink;
    Json out_report = std::move(report);
    finish(opt, out_report, out, plain);
    (void)sink;
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Leavitt path algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--graph", opt.graph_file, "graph document (.lpa)")->required();
    app.add_flag("--json", opt.json, "emit a JSON report");
    app.add_option("--max-len", opt.max_len, "length bound for enumerations");
    std::int64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "seed recorded in reports");

    struct Sub {
        CLI::App* app;
        std::vector<std::string>* positionals;
    };
    std::map<std::string, std::vector<std::string>> positionals;
    auto add_sub = [&](const std::string& name, const std::string& desc,
                       const std::vector<std::string>& argnames) {
        auto* sub = app.add_subcommand(name, desc);
        auto& store = positionals[name];
        store.resize(argnames.size());
        for (std::size_t i = 0; i < argnames.size(); ++i)
            sub->add_option(argnames[i], store[i], "")->required();
        return sub;
    };

    add_sub("normalize", "normal form of an element", {"expr"});
    add_sub("mul", "product of two elements", {"lhs", "rhs"});
    add_sub("act", "act an element on a basis path", {"expr", "spec"});
    add_sub("ext", "Ext^1 dimension between two classes", {"source", "target"});
    auto* resolve = add_sub("resolve", "projective resolution data", {"spec"});
    std::string generator;
    auto* gen_opt = resolve->add_option("--generator", generator, "generator path");
    std::size_t horizon_value = 0;
    auto* horizon_opt = resolve->add_option("--horizon", horizon_value, "kernel family horizon");
    add_sub("solve-shift", "solve (d - 1) X = t", {"d", "t"});
    add_sub("lset", "members and cardinality of L_(d, T)", {"d", "target"});
    add_sub("line-points", "line point status of every vertex", {});
    add_sub("cycles", "simple closed paths up to a length bound", {});
    add_sub("fp-check", "finite presentation of a class module", {"spec"});
    add_sub("uniserial", "uniserial existence by self-extensions", {"spec", "length"});

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    if (seed_opt->count() > 0) opt.seed = seed_value;

    try {
        auto* sub = app.get_subcommands().front();
        std::optional<std::string> gen;
        if (gen_opt->count() > 0) gen = generator;
        std::optional<std::size_t> horizon;
        if (horizon_opt->count() > 0) horizon = horizon_value;
        return dispatch(opt, sub->get_name(), positionals[sub->get_name()], gen, horizon, out);
    } catch (const textio::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "rejected: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace lpa
