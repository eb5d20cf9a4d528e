#include "ahp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ahp/flatten.hpp"
#include "ahp/io/document.hpp"
#include "ahp/io/dot.hpp"
#include "ahp/io/json.hpp"

namespace ahp {

namespace {

struct Exit {
    int code;
};

class Session {
public:
    Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    Document load(const std::string& file, bool check = true) {
        std::ifstream in(file);
        if (!in) {
            err_ << "cannot read " << file << "\n";
            throw Exit{2};
        }
        std::stringstream buf;
        buf << in.rdbuf();
        Document doc;
        try {
            doc = parse_document(buf.str());
        } catch (const ParseError& e) {
            err_ << file << ":" << e.what() << "\n";
            throw Exit{1};
        }
        if (check) {
            auto vs = validate_document(doc);
            if (!vs.empty()) {
                report(vs);
                throw Exit{1};
            }
        }
        return doc;
    }

    void report(const std::vector<Violation>& vs) {
        for (const auto& v : vs) err_ << v << "\n";
    }

    const AhpGraph& graph(const Document& doc, const std::string& name) {
        if (auto g = doc.graph(name)) return *g;
        err_ << "no graph named " << name << "\n";
        throw Exit{2};
    }

    const Rule& rule(const Document& doc, const std::string& name) {
        if (auto r = doc.rule(name)) return *r;
        err_ << "no rule named " << name << "\n";
        throw Exit{2};
    }

    void write(const std::string& path, const std::string& text) {
        if (path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text)) {
            err_ << "cannot write " << path << "\n";
            throw Exit{1};
        }
    }

    static std::string single_graph(const Signature& sig, const std::string& name, const AhpGraph& g) {
        Document d;
        d.signature = sig;
        d.graphs.emplace_back(name, g);
        return emit_document(d);
    }

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

private:
    std::ostream& out_;
    std::ostream& err_;
};

std::string step_file(std::size_t i) {
    std::ostringstream os;
    os << "step_" << std::setw(4) << std::setfill('0') << i << ".ahp";
    return os.str();
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rewriting engine for attributed hierarchical port graphs", "ahp"};
    app.require_subcommand(1);

    std::string file, graph_name, rule_name, strategy_name, output, trace_dir;
    bool json = false;
    long match_index = 0;
    std::uint64_t seed = 0;
    long budget = 10000;
    int depth = 1;

    auto* validate = app.add_subcommand("validate", "check every graph and rule in a document");
    validate->add_option("FILE", file)->required();

    auto* match = app.add_subcommand("match", "list the matches of a rule in a graph");
    match->add_option("FILE", file)->required();
    match->add_option("--rule", rule_name)->required();
    match->add_option("--graph", graph_name)->required();
    match->add_flag("--json", json, "print matches as JSON");

    auto* rewrite = app.add_subcommand("rewrite", "apply a rule at one match");
    rewrite->add_option("FILE", file)->required();
    rewrite->add_option("--rule", rule_name)->required();
    rewrite->add_option("--graph", graph_name)->required();
    rewrite->add_option("--match", match_index, "index into the canonical match list")->required();
    rewrite->add_option("-o,--output", output);

    auto* flat = app.add_subcommand("flatten", "replace every ladder by its contents");
    flat->add_option("FILE", file)->required();
    flat->add_option("--graph", graph_name)->required();
    flat->add_option("-o,--output", output);

    auto* runc = app.add_subcommand("run", "run a strategy from the document");
    runc->add_option("FILE", file)->required();
    runc->add_option("--strategy", strategy_name)->required();
    runc->add_option("--graph", graph_name)->required();
    runc->add_option("--seed", seed);
    runc->add_option("--budget", budget);
    runc->add_option("-o,--output", output);
    runc->add_option("--trace", trace_dir, "directory for one document per step plus manifest.json");

    auto* dot = app.add_subcommand("export-dot", "write Graphviz text");
    dot->add_option("FILE", file)->required();
    dot->add_option("--graph", graph_name)->required();
    dot->add_option("--depth", depth)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    Session s(out, err);
    try {
        if (validate->parsed()) {
            Document doc = s.load(file, false);
            auto vs = validate_document(doc);
            if (!vs.empty()) {
                s.report(vs);
                return 1;
            }
            out << "valid: " << doc.graphs.size() << " graphs, " << doc.rules.size() << " rules, "
                << doc.strategies.size() << " strategies\n";
            return 0;
        }
        if (match->parsed()) {
            Document doc = s.load(file);
            const auto& g = s.graph(doc, graph_name);
            const auto& r = s.rule(doc, rule_name);
            std::vector<std::string> diag;
            auto ms = find_matches(r, g, &diag);
            for (const auto& d : diag) err << "note: " << d << "\n";
            if (json) {
                nlohmann::json j = {{"count", ms.size()}, {"matches", nlohmann::json::array()}};
                for (const auto& m : ms) j["matches"].push_back(to_json(m, g));
                out << j.dump(2) << "\n";
                return 0;
            }
            out << ms.size() << (ms.size() == 1 ? " match\n" : " matches\n");
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto& mo = ms[i].morphism;
                out << "match " << i << ":";
                for (const auto& [p, h] : mo.nodes) out << " " << to_string(p) << "->" << to_string(h);
                for (const auto& [k, v] : mo.bindings.values) out << " " << k << "=" << to_string(v);
                for (const auto& [k, v] : mo.bindings.attributes) out << " " << k << "=" << v;
                out << "\n";
            }
            return 0;
        }
        if (rewrite->parsed()) {
            Document doc = s.load(file);
            const auto& g = s.graph(doc, graph_name);
            const auto& r = s.rule(doc, rule_name);
            auto ms = find_matches(r, g);
            if (match_index < 0 || static_cast<std::size_t>(match_index) >= ms.size()) {
                err << "match index " << match_index << " out of range (" << ms.size() << " matches)\n";
                return 1;
            }
            AhpGraph h = apply(r, g, ms[static_cast<std::size_t>(match_index)]);
            s.write(output, Session::single_graph(doc.signature, graph_name, h));
            return 0;
        }
        if (flat->parsed()) {
            Document doc = s.load(file);
            const auto& g = s.graph(doc, graph_name);
            s.write(output, Session::single_graph(doc.signature, graph_name, AhpGraph{flatten(g)}));
            return 0;
        }
        if (runc->parsed()) {
            Document doc = s.load(file);
            const auto& g = s.graph(doc, graph_name);
            const Strategy* strat = doc.strategy(strategy_name);
            if (!strat) {
                err << "no strategy named " << strategy_name << "\n";
                return 2;
            }
            if (budget <= 0) {
                err << "--budget must be positive\n";
                return 2;
            }
            Derivation d = run(*strat, doc.rule_map(), g, RunOptions{seed, budget});
            for (const auto& msg : d.diagnostics) err << "note: " << msg << "\n";
            if (!trace_dir.empty()) {
                std::filesystem::create_directories(trace_dir);
                const std::filesystem::path dir(trace_dir);
                nlohmann::json manifest = {{"graph", graph_name},
                                           {"strategy", to_string(*strat)},
                                           {"seed", seed},
                                           {"budget", budget},
                                           {"budget_used", d.budget_used},
                                           {"status", to_string(d.status)},
                                           {"initial", step_file(0)},
                                           {"steps", nlohmann::json::array()}};
                s.write((dir / step_file(0)).string(), Session::single_graph(doc.signature, graph_name, d.initial));
                for (std::size_t i = 0; i < d.steps.size(); ++i) {
                    const auto& st = d.steps[i];
                    s.write((dir / step_file(i + 1)).string(),
                            Session::single_graph(doc.signature, graph_name, st.after));
                    nlohmann::json rewiring = nlohmann::json::array();
                    for (const auto& w : st.rewiring) rewiring.push_back(to_json(w));
                    manifest["steps"].push_back({{"index", i + 1},
                                                 {"rule", st.rule},
                                                 {"before", step_file(i)},
                                                 {"after", step_file(i + 1)},
                                                 {"match", to_json(st.match, st.before)},
                                                 {"rewiring", rewiring}});
                }
                s.write((dir / "manifest.json").string(), manifest.dump(2) + "\n");
            }
            s.write(output, Session::single_graph(doc.signature, graph_name, d.final));
            err << "status: " << to_string(d.status) << ", steps: " << d.steps.size() << "\n";
            return d.status == RunStatus::Success ? 0 : 1;
        }
        if (dot->parsed()) {
            Document doc = s.load(file);
            out << export_dot(s.graph(doc, graph_name), depth);
            return 0;
        }
    } catch (const Exit& e) {
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace ahp
