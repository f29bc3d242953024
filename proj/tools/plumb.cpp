// Command-line front end: each subcommand runs one pipeline of the library
// on files in the line formats of <plumb/io.hpp> and prints a text or JSON
// report to stdout.  Exit code 0 on success, 2 on any input or processing
// error (the message goes to stderr).

#include <plumb/error.hpp>
#include <plumb/io.hpp>
#include <plumb/nlf.hpp>
#include <plumb/report.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

struct CommonFlags {
    bool as_json = false;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--json", flags.as_json, "emit JSON instead of text");
    cmd->add_option("--budget", flags.budget, "cap on the embedding basis size");
    cmd->add_option("--seed", flags.seed,
                    "random seed echoed into the report (decisions never use it)");
}

plumb::ClassifyOptions to_options(const CommonFlags& flags) {
    plumb::ClassifyOptions opts;
    if (flags.budget) opts.basis_budget = static_cast<std::size_t>(*flags.budget);
    opts.seed = flags.seed;
    return opts;
}

int run_classify(const std::string& path, const CommonFlags& flags) {
    plumb::PlumbingGraph g = plumb::parse_graph(plumb::read_file(path));
    plumb::Report r = plumb::classify(g, to_options(flags));
    std::cout << plumb::emit_report(
        r, flags.as_json ? plumb::ReportFormat::Json : plumb::ReportFormat::Text);
    return 0;
}

int run_embed(const std::string& path, const std::string& mode,
              const CommonFlags& flags) {
    plumb::PlumbingGraph g = plumb::parse_graph(plumb::read_file(path));
    plumb::EmbMode m = mode == "s" ? plumb::EmbMode::S : plumb::EmbMode::P;
    std::optional<plumb::Embedding> phi;
    bool capped = false;
    try {
        std::optional<std::size_t> budget;
        if (flags.budget) budget = static_cast<std::size_t>(*flags.budget);
        phi = plumb::find_embedding(g, m, budget);
    } catch (const plumb::Error& e) {
        if (e.kind() != plumb::ErrorKind::BudgetExceeded) throw;
        capped = true;
    }
    if (flags.as_json) {
        json j{{"schema", 1}, {"mode", mode}};
        j["embedding"] = phi      ? json(plumb::emit_embedding(*phi))
                         : capped ? json("inconclusive")
                                  : json(nullptr);
        std::cout << j.dump(2) << '\n';
    } else if (phi) {
        std::cout << plumb::emit_embedding(*phi);
    } else {
        std::cout << (capped ? "inconclusive: basis budget exhausted" : "none") << '\n';
    }
    return 0;
}

int run_fiber(const std::string& graph_path, const std::string& divisor_path,
              const CommonFlags& flags) {
    plumb::PlumbingGraph g = plumb::parse_graph(plumb::read_file(graph_path));
    plumb::Divisor d;
    if (divisor_path.empty()) {
        // No divisor file: solve for the one the graph's arrows force.
        std::map<std::string, plumb::Int> totals;
        for (const plumb::Arrow& a : g.arrows()) totals[a.vertex] += a.multiplicity;
        auto solved = plumb::divisor_from_arrows(g, totals);
        if (!solved) {
            std::cerr << "no integral divisor matches the arrows" << '\n';
            return 2;
        }
        d = *solved;
    } else {
        d = plumb::parse_divisor(plumb::read_file(divisor_path));
    }
    plumb::Report r = plumb::classify_with_divisor(g, d, to_options(flags));
    std::cout << plumb::emit_report(
        r, flags.as_json ? plumb::ReportFormat::Json : plumb::ReportFormat::Text);
    return 0;
}

json homology_class_json(const plumb::HomologyClass& x) {
    json a = json::array();
    for (const plumb::Int& c : x.a) a.push_back(c.str());
    json j{{"a", std::move(a)}, {"w", x.w.str()}, {"c1", plumb::c1_evaluate(x).str()}};
    auto genus = plumb::adjunction_genus(x);
    j["adjunction_genus"] = genus ? json(genus->str()) : json(nullptr);
    return j;
}

std::string class_text(const plumb::HomologyClass& x) {
    std::ostringstream o;
    o << "w=" << x.w.str() << " a=[";
    for (std::size_t i = 0; i < x.a.size(); ++i)
        o << (i ? " " : "") << x.a[i].str();
    o << ']';
    return o.str();
}

int run_nlf(const std::string& path, const CommonFlags& flags) {
    plumb::Factorization f = plumb::parse_factorization(plumb::read_file(path));
    plumb::AdmissibilityReport adm = plumb::check_admissible(f);
    if (flags.as_json) {
        json j{{"schema", 1}};
        j["admissible"] = adm.ok;
        j["violations"] = adm.violations;
        if (adm.ok) {
            plumb::H1Presentation h1 = plumb::h1_smooth_part(f);
            json rel = json::array();
            for (const plumb::IntVec& row : h1.relations) {
                json r = json::array();
                for (const plumb::Int& v : row) r.push_back(v.str());
                rel.push_back(std::move(r));
            }
            json tor = json::array();
            for (const plumb::Int& t : h1.torsion) tor.push_back(t.str());
            j["h1"] = json{{"generators", h1.generators},
                           {"relations", std::move(rel)},
                           {"free_rank", h1.free_rank},
                           {"torsion", std::move(tor)}};
            std::vector<plumb::HomologyClass> kernel = plumb::h2_kernel(f);
            json kj = json::array();
            for (const plumb::HomologyClass& x : kernel)
                kj.push_back(homology_class_json(x));
            j["kernel"] = std::move(kj);
            json gram = json::array();
            for (const plumb::IntVec& row : plumb::intersection_form(f, kernel)) {
                json r = json::array();
                for (const plumb::Int& v : row) r.push_back(v.str());
                gram.push_back(std::move(r));
            }
            j["gram"] = std::move(gram);
            json sc = json::array();
            for (const plumb::HomologyClass& x : plumb::classify_sphere_classes(f))
                sc.push_back(homology_class_json(x));
            j["sphere_classes"] = std::move(sc);
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (!adm.ok) {
        std::cout << "admissible: false\n";
        for (const std::string& v : adm.violations) std::cout << "  " << v << '\n';
        return 0;
    }
    std::cout << "admissible: true\n";
    plumb::H1Presentation h1 = plumb::h1_smooth_part(f);
    std::cout << "h1: free rank " << h1.free_rank;
    if (!h1.torsion.empty()) {
        std::cout << ", torsion";
        for (const plumb::Int& t : h1.torsion) std::cout << " Z/" << t.str();
    }
    std::cout << '\n';
    std::vector<plumb::HomologyClass> kernel = plumb::h2_kernel(f);
    std::cout << "kernel rank " << kernel.size() << ":\n";
    for (const plumb::HomologyClass& x : kernel)
        std::cout << "  " << class_text(x) << '\n';
    std::cout << "sphere classes:\n";
    for (const plumb::HomologyClass& x : plumb::classify_sphere_classes(f))
        std::cout << "  " << class_text(x) << "  c1=" << plumb::c1_evaluate(x).str()
                  << '\n';
    return 0;
}

int run_replay(const std::string& graph_path, const std::string& moves_path,
               const CommonFlags& flags) {
    plumb::PlumbingGraph g = plumb::parse_graph(plumb::read_file(graph_path));
    plumb::MoveSequence seq = plumb::parse_moves(plumb::read_file(moves_path));
    plumb::PlumbingGraph out = plumb::replay(g, seq);
    if (flags.as_json) {
        json j{{"schema", 1}, {"result", plumb::emit_graph(out)},
               {"vertices", out.size()}};
        std::cout << j.dump(2) << '\n';
    } else if (out.empty()) {
        std::cout << "# empty graph\n";
    } else {
        std::cout << plumb::emit_graph(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"plumbing graph calculus"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string graph_path, aux_path, mode = "s";

    CLI::App* classify = app.add_subcommand("classify", "full classification report");
    classify->add_option("file", graph_path, "graph file")->required();
    add_common(classify, flags);

    CLI::App* embed = app.add_subcommand("embed", "search for a lattice embedding");
    embed->add_option("file", graph_path, "graph file")->required();
    embed->add_option("--mode", mode, "embedding mode: s or p")
        ->check(CLI::IsMember({"s", "p"}));
    add_common(embed, flags);

    CLI::App* fiber = app.add_subcommand("fiber", "fiber invariants of a divisor");
    fiber->add_option("graph", graph_path, "graph file with arrows")->required();
    fiber->add_option("divisor", aux_path, "divisor file (omit to derive from arrows)");
    add_common(fiber, flags);

    CLI::App* nlf = app.add_subcommand("nlf", "homology of a planar factorization");
    nlf->add_option("file", graph_path, "factorization file")->required();
    add_common(nlf, flags);

    CLI::App* replay = app.add_subcommand("replay", "replay a move sequence");
    replay->add_option("graph", graph_path, "graph file")->required();
    replay->add_option("moves", aux_path, "move file")->required();
    add_common(replay, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return run_classify(graph_path, flags);
        if (embed->parsed()) return run_embed(graph_path, mode, flags);
        if (fiber->parsed()) return run_fiber(graph_path, aux_path, flags);
        if (nlf->parsed()) return run_nlf(graph_path, flags);
        if (replay->parsed()) return run_replay(graph_path, aux_path, flags);
    } catch (const plumb::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
