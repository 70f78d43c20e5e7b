#include <lpa/graph.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace lpa {

Graph::Builder& Graph::Builder::vertex(std::string name) {
    if (vertex_index_.count(name) || edge_index_.count(name))
        throw DomainError("duplicate id '" + name + "'");
    vertex_index_.emplace(name, static_cast<VertexId>(vertex_names_.size()));
    vertex_names_.push_back(std::move(name));
    return *this;
}

Graph::Builder& Graph::Builder::edge(std::string name, const std::string& src,
                                     const std::string& rng) {
    if (vertex_index_.count(name) || edge_index_.count(name))
        throw DomainError("duplicate id '" + name + "'");
    auto s = vertex_index_.find(src);
    if (s == vertex_index_.end()) throw DomainError("unknown vertex '" + src + "'");
    auto r = vertex_index_.find(rng);
    if (r == vertex_index_.end()) throw DomainError("unknown vertex '" + rng + "'");
    edge_index_.emplace(name, static_cast<EdgeId>(edge_names_.size()));
    edge_names_.push_back(std::move(name));
    src_.push_back(s->second);
    rng_.push_back(r->second);
    return *this;
}

Graph Graph::Builder::build() && {
    Graph g;
    g.vertex_names_ = std::move(vertex_names_);
    g.edge_names_ = std::move(edge_names_);
    g.src_ = std::move(src_);
    g.rng_ = std::move(rng_);
    g.vertex_index_ = std::move(vertex_index_);
    g.edge_index_ = std::move(edge_index_);
    g.out_.resize(g.vertex_names_.size());
    for (EdgeId e = 0; e < g.edge_names_.size(); ++e) g.out_[g.src_[e]].push_back(e);
    return g;
}

VertexId Graph::vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) throw DomainError("unknown vertex '" + name + "'");
    return it->second;
}

EdgeId Graph::edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) throw DomainError("unknown edge '" + name + "'");
    return it->second;
}

std::span<const EdgeId> Graph::out_edges(VertexId v) const {
    if (v >= out_.size()) throw DomainError("unknown vertex id");
    return out_[v];
}

std::optional<EdgeId> Graph::special_edge(VertexId v) const {
    auto es = out_edges(v);
    if (es.empty()) return std::nullopt;
    return *std::min_element(es.begin(), es.end());
}

FinPath::FinPath(const Graph& g, VertexId base) : graph_(&g), base_(base) {
    if (base >= g.vertex_count()) throw DomainError("unknown vertex id");
}

FinPath::FinPath(const Graph& g, std::vector<EdgeId> edges)
    : graph_(&g), base_(0), edges_(std::move(edges)) {
    if (edges_.empty()) throw DomainError("edge list empty; use the vertex constructor");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i] >= g.edge_count()) throw DomainError("unknown edge id");
        if (i > 0 && g.rng(edges_[i - 1]) != g.src(edges_[i]))
            throw DomainError("edges '" + g.edge_name(edges_[i - 1]) + "' and '" +
                              g.edge_name(edges_[i]) + "' are not composable");
    }
    base_ = g.src(edges_.front());
}

VertexId FinPath::src() const { return edges_.empty() ? base_ : graph_->src(edges_.front()); }

VertexId FinPath::rng() const { return edges_.empty() ? base_ : graph_->rng(edges_.back()); }

VertexId FinPath::vertex_at(std::size_t i) const {
    if (i > edges_.size()) throw DomainError("path position out of range");
    if (i == 0) return src();
    return graph_->rng(edges_[i - 1]);
}

FinPath FinPath::prefix(std::size_t n) const {
    if (n > edges_.size()) throw DomainError("prefix length out of range");
    if (n == 0) return FinPath(*graph_, src());
    return FinPath(*graph_, std::vector<EdgeId>(edges_.begin(), edges_.begin() + n));
}

FinPath FinPath::suffix_from(std::size_t n) const {
    if (n > edges_.size()) throw DomainError("suffix start out of range");
    if (n == edges_.size()) return FinPath(*graph_, rng());
    return FinPath(*graph_, std::vector<EdgeId>(edges_.begin() + n, edges_.end()));
}

FinPath FinPath::operator+(const FinPath& other) const {
    if (graph_ != other.graph_) throw DomainError("paths over different graphs");
    if (rng() != other.src()) throw DomainError("paths are not composable");
    if (other.empty()) return *this;
    if (empty()) return other;
    std::vector<EdgeId> es = edges_;
    es.insert(es.end(), other.edges_.begin(), other.edges_.end());
    return FinPath(*graph_, std::move(es));
}

FinPath FinPath::repeated(std::size_t times) const {
    if (!is_closed()) throw DomainError("repeated() needs a closed path");
    FinPath out(*graph_, src());
    for (std::size_t i = 0; i < times; ++i) out = out + *this;
    return out;
}

bool FinPath::operator==(const FinPath& other) const {
    return graph_ == other.graph_ && edges_ == other.edges_ &&
           (!edges_.empty() || base_ == other.base_);
}

std::strong_ordering FinPath::operator<=>(const FinPath& other) const {
    if (auto c = edges_.size() <=> other.edges_.size(); c != 0) return c;
    if (auto c = edges_ <=> other.edges_; c != 0) return c;
    if (edges_.empty()) return base_ <=> other.base_;
    return std::strong_ordering::equal;
}

VertexClass classify_vertex(const Graph& g, VertexId v) {
    auto deg = g.out_degree(v);
    return deg == 0 ? VertexClass{VertexKind::Sink, 0} : VertexClass{VertexKind::Regular, deg};
}

std::vector<EdgeId> exits(const Graph& g, const FinPath& beta, std::size_t i) {
    if (i >= beta.length()) throw DomainError("exit index out of range");
    EdgeId next = beta.edge(i);
    std::vector<EdgeId> out;
    for (EdgeId f : g.out_edges(g.src(next)))
        if (f != next) out.push_back(f);
    return out;
}

namespace {

/// True when `word` is not a proper power of a shorter word.
bool is_primitive_word(const std::vector<EdgeId>& word) {
    const std::size_t n = word.size();
    for (std::size_t len = 1; len <= n / 2; ++len) {
        if (n % len != 0) continue;
        bool power = true;
        for (std::size_t i = len; i < n && power; ++i) power = word[i] == word[i - len];
        if (power) return false;
    }
    return true;
}

bool is_least_rotation(const std::vector<EdgeId>& word) {
    const std::size_t n = word.size();
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<EdgeId> rot;
        rot.reserve(n);
        rot.insert(rot.end(), word.begin() + r, word.end());
        rot.insert(rot.end(), word.begin(), word.begin() + r);
        if (rot < word) return false;
    }
    return true;
}

void closed_walks_from(const Graph& g, VertexId start, VertexId cur, std::size_t max_len,
                       std::vector<EdgeId>& walk, std::vector<ClosedPath>& out) {
    if (walk.size() >= max_len) return;
    for (EdgeId e : g.out_edges(cur)) {
        walk.push_back(e);
        if (g.rng(e) == start && is_primitive_word(walk))
            out.push_back({FinPath(g, walk), is_least_rotation(walk)});
        closed_walks_from(g, start, g.rng(e), max_len, walk, out);
        walk.pop_back();
    }
}

} // namespace

std::vector<ClosedPath> simple_closed_paths(const Graph& g, std::size_t max_len) {
    if (max_len < 1) throw DomainError("max_len must be at least 1");
    std::vector<ClosedPath> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<EdgeId> walk;
        closed_walks_from(g, v, v, max_len, walk, out);
    }
    return out;
}

bool is_simple_closed(const FinPath& p) {
    return !p.empty() && p.is_closed() && is_primitive_word(p.edges());
}

LinePointResult is_line_point(const Graph& g, VertexId u) {
    if (u >= g.vertex_count()) throw DomainError("unknown vertex id");
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{u};
    seen[u] = true;
    std::vector<VertexId> reachable;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        reachable.push_back(v);
        for (EdgeId e : g.out_edges(v))
            if (!seen[g.rng(e)]) {
                seen[g.rng(e)] = true;
                queue.push_back(g.rng(e));
            }
    }
    for (VertexId v : reachable)
        if (g.out_degree(v) >= 2) return {false, v, std::nullopt};
    // Out-degrees are all <= 1, so any cycle is the tail of the unique walk
    // from u.
    std::vector<EdgeId> walk;
    std::vector<std::optional<std::size_t>> at(g.vertex_count());
    VertexId cur = u;
    std::size_t step = 0;
    while (true) {
        at[cur] = step;
        auto es = g.out_edges(cur);
        if (es.empty()) break;
        EdgeId e = es.front();
        VertexId next = g.rng(e);
        if (at[next]) {
            std::vector<EdgeId> cyc(walk.begin() + static_cast<long>(*at[next]), walk.end());
            cyc.push_back(e);
            return {false, std::nullopt, FinPath(g, cyc)};
        }
        walk.push_back(e);
        cur = next;
        ++step;
    }
    return {true, std::nullopt, std::nullopt};
}

std::string LinePointResult::describe(const Graph& g) const {
    if (is_line_point) return "line point";
    if (branching_vertex)
        return "vertex '" + g.vertex_name(*branching_vertex) + "' emits " +
               std::to_string(g.out_degree(*branching_vertex)) + " edges";
    std::string s = "reachable cycle";
    if (cycle) {
        s += ":";
        for (EdgeId e : cycle->edges()) s += " " + g.edge_name(e);
    }
    return s;
}

bool reaches(const Graph& g, VertexId from, const std::vector<VertexId>& targets) {
    auto set = reaching_set(g, targets);
    return std::binary_search(set.begin(), set.end(), from);
}

std::vector<VertexId> reaching_set(const Graph& g, const std::vector<VertexId>& targets) {
    // Reverse reachability: walk edges backwards from the target set.
    std::vector<std::vector<EdgeId>> in(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) in[g.rng(e)].push_back(e);
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue;
    for (VertexId t : targets) {
        if (t >= g.vertex_count()) throw DomainError("unknown vertex id");
        if (!seen[t]) {
            seen[t] = true;
            queue.push_back(t);
        }
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (EdgeId e : in[v])
            if (!seen[g.src(e)]) {
                seen[g.src(e)] = true;
                queue.push_back(g.src(e));
            }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

} // namespace lpa
