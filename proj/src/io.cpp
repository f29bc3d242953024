#include <plumb/error.hpp>
#include <plumb/io.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

namespace {

struct Tok {
    std::string text;
    int line = 0;
    int col = 0;
};

using TokLine = std::vector<Tok>;

[[noreturn]] void fail_at(ErrorKind kind, const std::string& message, const Tok& t) {
    throw Error(kind, message, t.line, t.col);
}

// Lexical layer shared by every format: comments stripped, lines split on
// blanks, tokens stamped with 1-based line/column.
std::vector<TokLine> tokenize(const std::string& text) {
    std::vector<TokLine> out;
    int line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t cut = raw.find('#');
        if (cut != std::string::npos) raw.resize(cut);
        TokLine toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            toks.push_back({raw.substr(start, i - start), line_no,
                            static_cast<int>(start) + 1});
        }
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

const std::string& id_token(const Tok& t) {
    if (!valid_id(t.text))
        fail_at(ErrorKind::SyntaxError, "invalid id '" + t.text + "'", t);
    return t.text;
}

Int int_token(const Tok& t) {
    const std::string& s = t.text;
    std::size_t start = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size() && ok; ++i)
        ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    if (!ok) fail_at(ErrorKind::SyntaxError, "expected an integer, got '" + s + "'", t);
    return Int(s);
}

std::size_t index_token(const Tok& t) {
    Int v = int_token(t);
    if (v < 1)
        fail_at(ErrorKind::SyntaxError, "basis index must be positive, got '" + t.text + "'",
                t);
    return static_cast<std::size_t>(v.convert_to<unsigned long long>());
}

void expect_len(const TokLine& toks, std::size_t lo, std::size_t hi,
                const std::string& what) {
    if (toks.size() < lo)
        fail_at(ErrorKind::SyntaxError, what + ": missing fields", toks.front());
    if (toks.size() > hi)
        fail_at(ErrorKind::SyntaxError, what + ": unexpected trailing field", toks[hi]);
}

}  // namespace

PlumbingGraph parse_graph(const std::string& text) {
    PlumbingGraph g;
    for (const TokLine& toks : tokenize(text)) {
        const std::string& kw = toks[0].text;
        if (kw == "vertex") {
            expect_len(toks, 3, 4, "vertex line");
            const std::string& id = id_token(toks[1]);
            if (g.has_vertex(id))
                fail_at(ErrorKind::DuplicateId, "vertex '" + id + "' declared twice",
                        toks[1]);
            Int framing = int_token(toks[2]);
            Int genus = 0;
            if (toks.size() == 4) {
                genus = int_token(toks[3]);
                if (genus < 0)
                    fail_at(ErrorKind::SyntaxError, "genus must be non-negative", toks[3]);
            }
            g.add_vertex(id, framing, genus);
        } else if (kw == "edge") {
            expect_len(toks, 3, 3, "edge line");
            for (int k : {1, 2})
                if (!g.has_vertex(id_token(toks[k])))
                    fail_at(ErrorKind::DanglingReference,
                            "edge endpoint '" + toks[k].text + "' is not a vertex",
                            toks[k]);
            if (toks[1].text == toks[2].text)
                fail_at(ErrorKind::SyntaxError, "edge joins a vertex to itself", toks[2]);
            if (g.has_edge(toks[1].text, toks[2].text))
                fail_at(ErrorKind::DuplicateId, "edge declared twice", toks[1]);
            g.add_edge(toks[1].text, toks[2].text);
        } else if (kw == "arrow") {
            expect_len(toks, 3, 3, "arrow line");
            if (!g.has_vertex(id_token(toks[1])))
                fail_at(ErrorKind::DanglingReference,
                        "arrow vertex '" + toks[1].text + "' is not a vertex", toks[1]);
            Int mult = int_token(toks[2]);
            if (mult < 1)
                fail_at(ErrorKind::SyntaxError, "arrow multiplicity must be positive",
                        toks[2]);
            g.add_arrow(toks[1].text, mult);
        } else {
            fail_at(ErrorKind::SyntaxError, "unknown record '" + kw + "'", toks[0]);
        }
    }
    return g;
}

std::string emit_graph(const PlumbingGraph& g) {
    std::ostringstream out;
    for (const Vertex& v : g.vertices()) {
        out << "vertex " << v.id << ' ' << v.framing.str();
        if (v.genus != 0) out << ' ' << v.genus.str();
        out << '\n';
    }
    for (const auto& [i, j] : g.edges())
        out << "edge " << g.vertex(i).id << ' ' << g.vertex(j).id << '\n';
    for (const Arrow& a : g.arrows())
        out << "arrow " << a.vertex << ' ' << a.multiplicity.str() << '\n';
    return out.str();
}

MoveSequence parse_moves(const std::string& text) {
    MoveSequence seq;
    for (const TokLine& toks : tokenize(text)) {
        const std::string& kw = toks[0].text;
        if (kw == "bu_v") {
            expect_len(toks, 2, 2, "bu_v line");
            seq.push_back(Move::up_vertex(id_token(toks[1])));
        } else if (kw == "bu_e") {
            expect_len(toks, 3, 3, "bu_e line");
            seq.push_back(Move::up_edge(id_token(toks[1]), id_token(toks[2])));
        } else if (kw == "bd") {
            expect_len(toks, 2, 2, "bd line");
            seq.push_back(Move::down(id_token(toks[1])));
        } else {
            fail_at(ErrorKind::SyntaxError, "unknown move '" + kw + "'", toks[0]);
        }
    }
    return seq;
}

std::string emit_moves(const MoveSequence& seq) {
    std::ostringstream out;
    for (const Move& m : seq) {
        switch (m.kind) {
            case MoveKind::BlowUpVertex: out << "bu_v " << m.a << '\n'; break;
            case MoveKind::BlowUpEdge: out << "bu_e " << m.a << ' ' << m.b << '\n'; break;
            case MoveKind::BlowDown: out << "bd " << m.a << '\n'; break;
        }
    }
    return out.str();
}

Divisor parse_divisor(const std::string& text) {
    Divisor d;
    for (const TokLine& toks : tokenize(text)) {
        if (toks[0].text != "coeff")
            fail_at(ErrorKind::SyntaxError, "unknown record '" + toks[0].text + "'",
                    toks[0]);
        expect_len(toks, 3, 3, "coeff line");
        const std::string& id = id_token(toks[1]);
        if (d.coeff.count(id))
            fail_at(ErrorKind::DuplicateId, "coefficient for '" + id + "' declared twice",
                    toks[1]);
        d.set(id, int_token(toks[2]));
    }
    return d;
}

std::string emit_divisor(const Divisor& d) {
    std::ostringstream out;
    for (const auto& [id, c] : d.coeff) out << "coeff " << id << ' ' << c.str() << '\n';
    return out.str();
}

Embedding parse_embedding(const std::string& text) {
    Embedding phi;
    bool mode_seen = false;
    for (const TokLine& toks : tokenize(text)) {
        if (toks[0].text == "mode") {
            expect_len(toks, 2, 2, "mode line");
            if (mode_seen)
                fail_at(ErrorKind::SyntaxError, "mode declared twice", toks[0]);
            if (toks[1].text == "s")
                phi.mode = EmbMode::S;
            else if (toks[1].text == "p")
                phi.mode = EmbMode::P;
            else
                fail_at(ErrorKind::SyntaxError, "mode must be 's' or 'p'", toks[1]);
            mode_seen = true;
            continue;
        }
        if (!mode_seen)
            fail_at(ErrorKind::SyntaxError, "expected a 'mode s|p' line first", toks[0]);
        const std::string& id = id_token(toks[0]);
        if (phi.image.count(id))
            fail_at(ErrorKind::DuplicateId, "vertex '" + id + "' mapped twice", toks[0]);
        if (toks.size() < 2 || toks[1].text != ":")
            fail_at(ErrorKind::SyntaxError, "expected ':' after the vertex id",
                    toks.size() < 2 ? toks[0] : toks[1]);
        VertexImage im;
        std::size_t i = 2;
        if (i < toks.size() && toks[i].text == "+") {
            if (i + 1 >= toks.size())
                fail_at(ErrorKind::SyntaxError, "expected an index after '+'", toks[i]);
            im.positive = index_token(toks[i + 1]);
            i += 2;
        }
        if (i < toks.size() && toks[i].text == "-") {
            ++i;
            if (i >= toks.size())
                fail_at(ErrorKind::SyntaxError, "expected indices after '-'",
                        toks[i - 1]);
            for (; i < toks.size(); ++i) im.negatives.push_back(index_token(toks[i]));
        }
        if (i < toks.size())
            fail_at(ErrorKind::SyntaxError, "unexpected token '" + toks[i].text + "'",
                    toks[i]);
        std::sort(im.negatives.begin(), im.negatives.end());
        for (std::size_t k = 1; k < im.negatives.size(); ++k)
            if (im.negatives[k] == im.negatives[k - 1])
                fail_at(ErrorKind::SyntaxError, "repeated basis index in one image",
                        toks[0]);
        for (std::size_t n : im.negatives)
            phi.basis_size = std::max(phi.basis_size, n);
        if (im.positive) phi.basis_size = std::max(phi.basis_size, *im.positive);
        phi.image.emplace(id, std::move(im));
    }
    return phi;
}

std::string emit_embedding(const Embedding& phi) {
    std::ostringstream out;
    out << "mode " << (phi.mode == EmbMode::S ? 's' : 'p') << '\n';
    for (const auto& [id, im] : phi.image) {
        out << id << " :";
        if (im.positive) out << " + " << *im.positive;
        if (!im.negatives.empty()) {
            out << " -";
            for (std::size_t n : im.negatives) out << ' ' << n;
        }
        out << '\n';
    }
    return out.str();
}

Factorization parse_factorization(const std::string& text) {
    Factorization f;
    std::vector<TokLine> lines = tokenize(text);
    bool page_seen = false;
    std::set<std::string> holes;
    for (const TokLine& toks : lines) {
        if (toks[0].text == "page") {
            expect_len(toks, 2, 2, "page line");
            if (page_seen) fail_at(ErrorKind::SyntaxError, "page declared twice", toks[0]);
            if (toks[1].text == "disk")
                f.page.shape = PageShape::Disk;
            else if (toks[1].text == "sphere")
                f.page.shape = PageShape::Sphere;
            else
                fail_at(ErrorKind::SyntaxError, "page must be 'disk' or 'sphere'",
                        toks[1]);
            page_seen = true;
        } else if (toks[0].text == "hole") {
            expect_len(toks, 2, 2, "hole line");
            const std::string& id = id_token(toks[1]);
            if (!holes.insert(id).second)
                fail_at(ErrorKind::DuplicateId, "hole '" + id + "' declared twice",
                        toks[1]);
            f.page.holes.push_back(id);
        }
    }
    if (!page_seen && !lines.empty())
        fail_at(ErrorKind::SyntaxError, "missing 'page disk|sphere' line",
                lines.front().front());

    auto known_hole = [&](const Tok& t) -> const std::string& {
        const std::string& id = id_token(t);
        if (!holes.count(id))
            fail_at(ErrorKind::DanglingReference, "unknown hole '" + id + "'", t);
        return id;
    };

    std::set<std::string> orbit_ids, cycle_ids;
    for (const TokLine& toks : lines) {
        const std::string& kw = toks[0].text;
        if (kw == "page" || kw == "hole") continue;
        if (kw == "orbit") {
            expect_len(toks, 3, toks.size(), "orbit line");
            Orbit orb;
            orb.id = id_token(toks[1]);
            if (!orbit_ids.insert(orb.id).second)
                fail_at(ErrorKind::DuplicateId, "orbit '" + orb.id + "' declared twice",
                        toks[1]);
            for (std::size_t i = 2; i < toks.size(); ++i)
                orb.holes.push_back(known_hole(toks[i]));
            f.orbits.orbits.push_back(std::move(orb));
        } else if (kw == "cycle") {
            expect_len(toks, 2, toks.size(), "cycle line");
            VanishingCycle cyc;
            cyc.id = id_token(toks[1]);
            if (!cycle_ids.insert(cyc.id).second)
                fail_at(ErrorKind::DuplicateId, "cycle '" + cyc.id + "' declared twice",
                        toks[1]);
            for (std::size_t i = 2; i < toks.size(); ++i)
                if (!cyc.holes.insert(known_hole(toks[i])).second)
                    fail_at(ErrorKind::DuplicateId,
                            "hole '" + toks[i].text + "' repeated in one cycle", toks[i]);
            f.cycles.push_back(std::move(cyc));
        } else if (kw == "interchange") {
            expect_len(toks, 3, 3, "interchange line");
            f.interchanges.emplace_back(known_hole(toks[1]), known_hole(toks[2]));
        } else {
            fail_at(ErrorKind::SyntaxError, "unknown record '" + kw + "'", toks[0]);
        }
    }
    return f;
}

std::string emit_factorization(const Factorization& f) {
    std::ostringstream out;
    out << "page " << (f.page.shape == PageShape::Disk ? "disk" : "sphere") << '\n';
    for (const std::string& h : f.page.holes) out << "hole " << h << '\n';
    for (const Orbit& orb : f.orbits.orbits) {
        out << "orbit " << orb.id;
        for (const std::string& h : orb.holes) out << ' ' << h;
        out << '\n';
    }
    for (const VanishingCycle& cyc : f.cycles) {
        out << "cycle " << cyc.id;
        for (const std::string& h : cyc.holes) out << ' ' << h;
        out << '\n';
    }
    for (const auto& [a, b] : f.interchanges)
        out << "interchange " << a << ' ' << b << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace plumb
