// Plumbing graphs: weighted simple graphs with integer framings, a genus
// field per vertex, and arrowheads (vertex id + positive multiplicity).
//
// Vertices are addressed by opaque string ids matching [A-Za-z0-9_]+ and keep
// a stable internal order (insertion order), which fixes the row order of the
// intersection matrix and every deterministic tie-break in the library.
#pragma once

#include "plumb/error.hpp"
#include "plumb/numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

struct Vertex {
    std::string id;
    Int framing = 0;
    Int genus = 0;
};

struct Arrow {
    std::string vertex;  // id of the carrying vertex
    Int multiplicity = 1;
};

class PlumbingGraph {
  public:
    PlumbingGraph() = default;

    // --- construction -----------------------------------------------------

    void add_vertex(const std::string& id, Int framing, Int genus = 0) {
        require_valid_id(id);
        if (index_.count(id)) fail(ErrorKind::DuplicateId, "vertex '" + id + "' already exists");
        index_[id] = vertices_.size();
        vertices_.push_back(Vertex{id, std::move(framing), std::move(genus)});
        adj_.emplace_back();
    }

    void add_edge(const std::string& a, const std::string& b) {
        std::size_t i = index_of(a), j = index_of(b);
        if (i == j) fail(ErrorKind::SyntaxError, "loop edge at '" + a + "'");
        if (has_edge_idx(i, j))
            fail(ErrorKind::DuplicateId, "edge " + a + " -- " + b + " already exists");
        adj_[i].push_back(j);
        adj_[j].push_back(i);
    }

    void add_arrow(const std::string& v, Int multiplicity) {
        index_of(v);  // existence check
        if (multiplicity <= 0)
            fail(ErrorKind::SyntaxError, "arrow multiplicity must be positive at '" + v + "'");
        arrows_.push_back(Arrow{v, std::move(multiplicity)});
    }

    void remove_vertex(const std::string& id);

    void remove_edge(const std::string& a, const std::string& b) {
        std::size_t i = index_of(a), j = index_of(b);
        if (!has_edge_idx(i, j))
            fail(ErrorKind::DanglingReference, "no edge " + a + " -- " + b);
        std::erase(adj_[i], j);
        std::erase(adj_[j], i);
    }

    void set_framing(const std::string& id, Int f) { vertices_[index_of(id)].framing = std::move(f); }

    // --- queries ----------------------------------------------------------

    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }

    std::size_t index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) fail(ErrorKind::DanglingReference, "unknown vertex '" + id + "'");
        return it->second;
    }

    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
    const Vertex& vertex(const std::string& id) const { return vertices_[index_of(id)]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    const Int& framing(const std::string& id) const { return vertices_[index_of(id)].framing; }

    bool has_edge(const std::string& a, const std::string& b) const {
        return has_edge_idx(index_of(a), index_of(b));
    }

    // Neighbour indices in insertion order of edge creation.
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_[i]; }
    std::vector<std::string> neighbor_ids(const std::string& id) const {
        std::vector<std::string> out;
        for (std::size_t j : adj_[index_of(id)]) out.push_back(vertices_[j].id);
        return out;
    }

    std::size_t degree(std::size_t i) const { return adj_[i].size(); }
    std::size_t degree(const std::string& id) const { return adj_[index_of(id)].size(); }

    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::vector<Arrow>& arrows_mut() { return arrows_; }

    // Number of arrowheads based at the vertex (arrows are a list; several
    // arrows at one vertex are distinct).
    std::size_t arrow_count_at(const std::string& id) const {
        std::size_t n = 0;
        for (const Arrow& a : arrows_)
            if (a.vertex == id) ++n;
        return n;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& a : adj_) twice += a.size();
        return twice / 2;
    }

    // Edges as index pairs (i < j), sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < adj_.size(); ++i)
            for (std::size_t j : adj_[i])
                if (i < j) out.emplace_back(i, j);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_connected() const;
    bool is_tree() const { return !empty() && is_connected() && edge_count() + 1 == size(); }

    bool all_genus_zero() const {
        return std::all_of(vertices_.begin(), vertices_.end(),
                           [](const Vertex& v) { return v.genus == 0; });
    }

    // Throws when a vertex carries nonzero genus.  Every algorithm in the
    // library works with trees of spheres and calls this up front.
    void require_genus_zero() const {
        for (const Vertex& v : vertices_)
            if (v.genus != 0)
                fail(ErrorKind::PositiveGenus,
                     "vertex '" + v.id + "' has genus " + v.genus.str() +
                         "; only genus-0 vertices are supported");
    }

    static void require_valid_id(const std::string& id) {
        if (id.empty()) fail(ErrorKind::SyntaxError, "empty vertex id");
        for (char c : id)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                fail(ErrorKind::SyntaxError, "invalid vertex id '" + id + "'");
    }

  private:
    bool has_edge_idx(std::size_t i, std::size_t j) const {
        return std::find(adj_[i].begin(), adj_[i].end(), j) != adj_[i].end();
    }

    std::vector<Vertex> vertices_;
    std::vector<std::vector<std::size_t>> adj_;  // parallel to vertices_
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> index_;
};

// Integer divisor (cycle) supported on the vertices of a graph, stored as
// coefficients keyed by vertex id.  Missing ids mean coefficient 0.
struct Divisor {
    std::map<std::string, Int> coeff;

    Int at(const std::string& id) const {
        auto it = coeff.find(id);
        return it == coeff.end() ? Int(0) : it->second;
    }
    void set(const std::string& id, Int v) { coeff[id] = std::move(v); }
};

}  // namespace plumb
