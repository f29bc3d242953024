#include "plumb/graph.hpp"

#include <queue>

namespace plumb {

void PlumbingGraph::remove_vertex(const std::string& id) {
    std::size_t k = index_of(id);
    for (const Arrow& a : arrows_)
        if (a.vertex == id)
            fail(ErrorKind::NotBlowdownable, "vertex '" + id + "' carries an arrow");
    // detach
    for (std::size_t j : adj_[k]) std::erase(adj_[j], k);
    adj_.erase(adj_.begin() + static_cast<std::ptrdiff_t>(k));
    vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(k));
    index_.erase(id);
    // reindex everything after k
    for (auto& [vid, idx] : index_)
        if (idx > k) --idx;
    for (auto& nbrs : adj_)
        for (std::size_t& j : nbrs)
            if (j > k) --j;
}

bool PlumbingGraph::is_connected() const {
    if (vertices_.empty()) return true;
    std::vector<char> seen(vertices_.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
        std::size_t i = q.front();
        q.pop();
        for (std::size_t j : adj_[i])
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                q.push(j);
            }
    }
    return count == vertices_.size();
}

}  // namespace plumb
