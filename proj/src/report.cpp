#include <plumb/error.hpp>
#include <plumb/io.hpp>
#include <plumb/report.hpp>

#include <json.hpp>

#include <chrono>
#include <sstream>
#include <utility>

namespace plumb {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
        .count();
}

Report classify_impl(const PlumbingGraph& g, const ClassifyOptions& opts) {
    Report r;
    r.input = emit_graph(g);
    r.basis_budget = opts.basis_budget;
    r.seed = opts.seed;

    // The graph classes are properties of the plumbing alone; arrows stay in
    // the echo but play no part in the decisions.
    PlumbingGraph plain = g;
    plain.arrows_mut().clear();

    auto t0 = Clock::now();
    try {
        r.laufer = fundamental_cycle(plain);
        r.rational = r.laufer.rational;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotNegativeDefinite) throw;
        r.rational = false;  // trace left empty: no fundamental cycle exists
    }
    r.timings.push_back({"laufer", micros_since(t0)});

    t0 = Clock::now();
    try {
        r.s_embedding = find_embedding(plain, EmbMode::S, opts.basis_budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        r.s_budget_hit = true;
    }
    r.timings.push_back({"embed_s", micros_since(t0)});

    t0 = Clock::now();
    try {
        r.p_embedding = find_embedding(plain, EmbMode::P, opts.basis_budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        r.p_budget_hit = true;
    }
    r.timings.push_back({"embed_p", micros_since(t0)});

    t0 = Clock::now();
    r.sandwiched = decide_sandwiched(plain, opts.basis_budget);
    r.timings.push_back({"decide_sandwiched", micros_since(t0)});

    t0 = Clock::now();
    r.pm = decide_pm(plain, opts.basis_budget);
    r.timings.push_back({"decide_pm", micros_since(t0)});
    return r;
}

json certificate_json(const SandwichCertificate& c) {
    json added = json::array();
    for (const auto& [parent, leaf] : c.added_leaves)
        added.push_back(json::array({parent, leaf}));
    return json{{"augmented", emit_graph(c.augmented)},
                {"added_leaves", std::move(added)},
                {"moves", emit_moves(c.blowdown)},
                {"target", c.target == BlowdownTarget::Kind::Empty ? "empty"
                                                                   : "zero_vertex"}};
}

json tri_json(const Decision& d) {
    switch (d.verdict) {
        case Tri::False: return json(false);
        case Tri::Inconclusive: return json("inconclusive");
        case Tri::True: break;
    }
    json j{{"value", true}};
    if (d.certificate) j["certificate"] = certificate_json(*d.certificate);
    return j;
}

json laufer_json(const LauferTrace& t) {
    json steps = json::array();
    for (const LauferStep& s : t.steps)
        steps.push_back(json{{"vertex", s.vertex}, {"pairing", s.pairing.str()}});
    json cycle = json::object();
    for (const auto& [id, c] : t.final.coeff) cycle[id] = c.str();
    json j{{"steps", std::move(steps)}, {"fundamental_cycle", std::move(cycle)}};
    j["violation"] = t.violation ? json(*t.violation) : json(nullptr);
    return j;
}

std::string emit_json(const Report& r) {
    json j;
    j["schema"] = 1;
    j["input"] = r.input;
    j["rational"] = r.rational;
    j["laufer"] = laufer_json(r.laufer);
    j["sandwiched"] = tri_json(r.sandwiched);
    j["pm"] = tri_json(r.pm);
    json emb;
    emb["s"] = r.s_embedding  ? json(emit_embedding(*r.s_embedding))
               : r.s_budget_hit ? json("inconclusive")
                                : json(nullptr);
    emb["p"] = r.p_embedding  ? json(emit_embedding(*r.p_embedding))
               : r.p_budget_hit ? json("inconclusive")
                                : json(nullptr);
    j["embeddings"] = std::move(emb);
    if (r.fiber) {
        json bc = json::array();
        for (const BoundaryComponent& b : r.fiber->boundary_components)
            bc.push_back(json{{"vertex", b.arrow.vertex},
                              {"arrow_multiplicity", b.arrow.multiplicity.str()},
                              {"count", b.count.str()}});
        j["fiber"] = json{{"euler", r.fiber->euler.str()},
                          {"boundary_components", std::move(bc)},
                          {"total_boundary", r.fiber->total_boundary.str()},
                          {"genus", r.fiber->genus.str()},
                          {"planar", r.fiber->planar}};
        j["riemann_roch"] = r.fiber_chi ? json(r.fiber_chi->str()) : json(nullptr);
    }
    j["budget"] = r.basis_budget ? json(*r.basis_budget) : json(nullptr);
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    json times = json::array();
    for (const StageTiming& t : r.timings)
        times.push_back(json{{"stage", t.stage}, {"microseconds", t.microseconds}});
    j["timings"] = std::move(times);
    return j.dump(2) + "\n";
}

void indent_block(std::ostringstream& o, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) o << "  " << line << '\n';
}

void print_tri(std::ostringstream& o, const char* label, const Decision& d) {
    o << label << ": " << tri_name(d.verdict) << '\n';
    if (!d.certificate) return;
    const SandwichCertificate& c = *d.certificate;
    if (!c.added_leaves.empty()) {
        o << "  added leaves:";
        for (const auto& [parent, leaf] : c.added_leaves)
            o << ' ' << parent << "->" << leaf;
        o << '\n';
    }
    o << "  blowdown replay:\n";
    PlumbingGraph cur = c.augmented;
    for (const Move& m : c.blowdown) {
        cur = blow_down(cur, m.a);
        o << "    bd " << m.a << "   (" << cur.size()
          << (cur.size() == 1 ? " vertex left)\n" : " vertices left)\n");
    }
    if (c.target == BlowdownTarget::Kind::Empty)
        o << "    -> empty graph\n";
    else
        o << "    -> vertex '" << cur.vertex(std::size_t{0}).id << "' framed "
          << cur.vertex(std::size_t{0}).framing.str() << '\n';
}

std::string emit_text(const Report& r) {
    std::ostringstream o;
    o << "input:\n";
    indent_block(o, r.input);
    o << "rational: " << (r.rational ? "true" : "false") << '\n';
    if (r.laufer.final.coeff.empty()) {
        o << "  (no fundamental cycle: form not negative definite)\n";
    } else {
        o << "  fundamental cycle:";
        for (const auto& [id, c] : r.laufer.final.coeff) o << ' ' << id << ':' << c.str();
        o << '\n';
        if (r.laufer.violation)
            o << "  first pairing >= 2 at step " << *r.laufer.violation << " (vertex "
              << r.laufer.steps[*r.laufer.violation].vertex << ")\n";
    }
    print_tri(o, "sandwiched", r.sandwiched);
    print_tri(o, "pm", r.pm);
    o << "s-embedding: "
      << (r.s_embedding ? "found" : r.s_budget_hit ? "budget exhausted" : "none") << '\n';
    if (r.s_embedding) indent_block(o, emit_embedding(*r.s_embedding));
    o << "p-embedding: "
      << (r.p_embedding ? "found" : r.p_budget_hit ? "budget exhausted" : "none") << '\n';
    if (r.p_embedding) indent_block(o, emit_embedding(*r.p_embedding));
    if (r.fiber) {
        o << "fiber: euler " << r.fiber->euler.str() << ", boundary "
          << r.fiber->total_boundary.str() << ", genus " << r.fiber->genus.str()
          << ", planar " << (r.fiber->planar ? "true" : "false") << '\n';
        for (const BoundaryComponent& b : r.fiber->boundary_components)
            o << "  arrow at '" << b.arrow.vertex << "' multiplicity "
              << b.arrow.multiplicity.str() << ": " << b.count.str()
              << " boundary component(s)\n";
        if (r.fiber_chi) o << "riemann-roch: " << r.fiber_chi->str() << '\n';
    }
    o << "basis budget: "
      << (r.basis_budget ? std::to_string(*r.basis_budget) : std::string("default"))
      << '\n';
    if (r.seed) o << "seed: " << *r.seed << '\n';
    o << "timings:";
    for (const StageTiming& t : r.timings)
        o << ' ' << t.stage << ' ' << t.microseconds << "us";
    o << '\n';
    return o.str();
}

}  // namespace

Report classify(const PlumbingGraph& g, const ClassifyOptions& opts) {
    return classify_impl(g, opts);
}

Report classify_with_divisor(const PlumbingGraph& g, const Divisor& d,
                             const ClassifyOptions& opts) {
    Report r = classify_impl(g, opts);
    auto t0 = Clock::now();
    r.fiber = fiber_invariants(g, d, g.arrows());
    r.fiber_chi = riemann_roch_chi(g, d);
    r.timings.push_back({"fiber", micros_since(t0)});
    return r;
}

std::string emit_report(const Report& r, ReportFormat format) {
    return format == ReportFormat::Json ? emit_json(r) : emit_text(r);
}

}  // namespace plumb
