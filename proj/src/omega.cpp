#include <lpa/omega.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace lpa {

OmegaPathSpec OmegaPathSpec::sink(FinPath prefix) {
    const Graph& g = prefix.graph();
    if (!g.is_sink(prefix.rng()))
        throw DomainError("sink spec must end at a sink, '" + g.vertex_name(prefix.rng()) +
                          "' emits edges");
    return OmegaPathSpec(OmegaKind::Sink, std::move(prefix));
}

OmegaPathSpec OmegaPathSpec::lasso(FinPath prefix, FinPath cycle) {
    if (&prefix.graph() != &cycle.graph()) throw DomainError("spec paths over different graphs");
    if (cycle.empty()) throw DomainError("lasso cycle must be nonempty");
    if (!cycle.is_closed()) throw DomainError("lasso cycle must be closed");
    if (prefix.rng() != cycle.src()) throw DomainError("lasso prefix must end at the cycle source");
    OmegaPathSpec spec(OmegaKind::Rational, std::move(prefix));
    spec.cycle_ = std::move(cycle);
    return spec;
}

OmegaPathSpec OmegaPathSpec::irrational(FinPath prefix, std::vector<EdgeId> recurrent) {
    std::sort(recurrent.begin(), recurrent.end());
    recurrent.erase(std::unique(recurrent.begin(), recurrent.end()), recurrent.end());
    auto check = validate_irrational(prefix.graph(), prefix, recurrent);
    if (!check.ok) throw DomainError("invalid irrational spec: " + check.reason);
    OmegaPathSpec spec(OmegaKind::Irrational, std::move(prefix));
    spec.recurrent_ = std::move(recurrent);
    return spec;
}

const FinPath& OmegaPathSpec::cycle() const {
    if (kind_ != OmegaKind::Rational) throw DomainError("spec has no cycle");
    return *cycle_;
}

VertexId OmegaPathSpec::sink_vertex() const {
    if (kind_ != OmegaKind::Sink) throw DomainError("spec has no sink anchor");
    return prefix_.rng();
}

const std::vector<EdgeId>& OmegaPathSpec::recurrent() const {
    if (kind_ != OmegaKind::Irrational) throw DomainError("spec has no recurrent set");
    return recurrent_;
}

bool OmegaPathSpec::operator==(const OmegaPathSpec& other) const {
    return (*this <=> other) == 0;
}

std::strong_ordering OmegaPathSpec::operator<=>(const OmegaPathSpec& other) const {
    if (auto c = kind_ <=> other.kind_; c != 0) return c;
    switch (kind_) {
        case OmegaKind::Sink:
            break;
        case OmegaKind::Rational:
            if (auto c = *cycle_ <=> *other.cycle_; c != 0) return c;
            break;
        case OmegaKind::Irrational:
            if (auto c = recurrent_ <=> other.recurrent_; c != 0) return c;
            break;
    }
    return prefix_ <=> other.prefix_;
}

IrrationalCheck validate_irrational(const Graph& g, const FinPath& prefix,
                                    const std::vector<EdgeId>& recurrent) {
    if (recurrent.empty()) return {false, "recurrent edge set is empty"};
    for (EdgeId e : recurrent)
        if (e >= g.edge_count()) return {false, "unknown edge id in recurrent set"};
    std::set<VertexId> verts;
    for (EdgeId e : recurrent) {
        verts.insert(g.src(e));
        verts.insert(g.rng(e));
    }
    // Strong connectivity of the subgraph on the recurrent edges.
    for (VertexId start : verts) {
        std::set<VertexId> seen{start};
        std::deque<VertexId> queue{start};
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            for (EdgeId e : recurrent)
                if (g.src(e) == v && !seen.count(g.rng(e))) {
                    seen.insert(g.rng(e));
                    queue.push_back(g.rng(e));
                }
        }
        if (seen.size() != verts.size())
            return {false, "recurrent set is not strongly connected (not all of it is "
                           "reachable from '" +
                               g.vertex_name(start) + "')"};
    }
    bool branching = false;
    for (VertexId v : verts) {
        std::size_t deg = 0;
        for (EdgeId e : recurrent)
            if (g.src(e) == v) ++deg;
        if (deg >= 2) branching = true;
    }
    if (!branching)
        return {false, "no recurrent vertex emits two recurrent edges; every walk "
                       "through the set is eventually periodic"};
    if (!verts.count(prefix.rng()))
        return {false, "prefix does not end at a recurrent vertex"};
    return {true, ""};
}

IrrationalTail::IrrationalTail(const Graph& g, const std::vector<EdgeId>& recurrent)
    : graph_(&g) {
    std::set<VertexId> verts;
    for (EdgeId e : recurrent) {
        verts.insert(g.src(e));
        verts.insert(g.rng(e));
    }
    std::map<VertexId, std::vector<EdgeId>> r_out;
    for (VertexId v : verts) r_out[v] = {};
    for (EdgeId e : recurrent) r_out[g.src(e)].push_back(e);
    for (auto& [v, es] : r_out) std::sort(es.begin(), es.end());

    bool found = false;
    for (const auto& [v, es] : r_out)
        if (es.size() >= 2 && !found) {
            anchor_ = v;
            found = true;
        }
    if (!found) throw DomainError("recurrent set has no branching vertex");

    // Deterministic shortest paths within the recurrent set: BFS from the
    // target, edges scanned in id order.
    auto path_to = [&](VertexId from, VertexId to) -> std::vector<EdgeId> {
        std::map<VertexId, std::size_t> dist{{to, 0}};
        std::deque<VertexId> queue{to};
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            for (EdgeId e : recurrent)
                if (g.rng(e) == v && !dist.count(g.src(e))) {
                    dist[g.src(e)] = dist[v] + 1;
                    queue.push_back(g.src(e));
                }
        }
        std::vector<EdgeId> path;
        VertexId cur = from;
        while (cur != to) {
            auto it = dist.find(cur);
            if (it == dist.end()) throw DomainError("recurrent set is not strongly connected");
            EdgeId step = 0;
            bool have = false;
            for (EdgeId e : r_out[cur])
                if (!have && dist.count(g.rng(e)) && dist[g.rng(e)] + 1 == it->second) {
                    step = e;
                    have = true;
                }
            path.push_back(step);
            cur = g.rng(step);
        }
        return path;
    };

    for (VertexId v : verts) connectors_[v] = path_to(v, anchor_);

    VertexId cur = anchor_;
    for (EdgeId e : recurrent) {
        for (EdgeId s : path_to(cur, g.src(e))) cover_.push_back(s);
        cover_.push_back(e);
        cur = g.rng(e);
    }
    for (EdgeId s : path_to(cur, anchor_)) cover_.push_back(s);

    EdgeId g1 = r_out[anchor_][0];
    EdgeId g2 = r_out[anchor_][1];
    loop_a_.push_back(g1);
    for (EdgeId s : path_to(g.rng(g1), anchor_)) loop_a_.push_back(s);
    loop_b_.push_back(g2);
    for (EdgeId s : path_to(g.rng(g2), anchor_)) loop_b_.push_back(s);
}

const std::vector<EdgeId>& IrrationalTail::connector(VertexId v) const {
    auto it = connectors_.find(v);
    if (it == connectors_.end()) throw DomainError("vertex is not in the recurrent set");
    return it->second;
}

std::optional<EdgeId> IrrationalTail::next_hop(VertexId v) const {
    const auto& c = connector(v);
    if (c.empty()) return std::nullopt;
    return c.front();
}

EdgeId IrrationalTail::master_edge(std::size_t k) const {
    // Round r spells cover, loop_b repeated r times, loop_a.
    for (std::size_t r = 1;; ++r) {
        std::size_t round_len = cover_.size() + r * loop_b_.size() + loop_a_.size();
        if (k < round_len) {
            if (k < cover_.size()) return cover_[k];
            k -= cover_.size();
            if (k < r * loop_b_.size()) return loop_b_[k % loop_b_.size()];
            k -= r * loop_b_.size();
            return loop_a_[k];
        }
        k -= round_len;
    }
}

OmegaPathSpec canonicalize(const OmegaPathSpec& spec) {
    const Graph& g = spec.graph();
    switch (spec.kind()) {
        case OmegaKind::Sink:
            return spec;
        case OmegaKind::Rational: {
            std::vector<EdgeId> cyc = spec.cycle().edges();
            // Primitive root of the cycle.
            for (std::size_t len = 1; len <= cyc.size() / 2; ++len) {
                if (cyc.size() % len != 0) continue;
                bool power = true;
                for (std::size_t i = len; i < cyc.size() && power; ++i)
                    power = cyc[i] == cyc[i - len];
                if (power) {
                    cyc.resize(len);
                    break;
                }
            }
            std::vector<EdgeId> pre = spec.prefix().edges();
            while (!pre.empty() && pre.back() == cyc.back()) {
                pre.pop_back();
                std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
            }
            FinPath cycle(g, cyc);
            FinPath prefix = pre.empty() ? FinPath(g, cycle.src()) : FinPath(g, pre);
            return OmegaPathSpec::lasso(std::move(prefix), std::move(cycle));
        }
        case OmegaKind::Irrational: {
            IrrationalTail tail(g, spec.recurrent());
            std::vector<EdgeId> pre = spec.prefix().edges();
            while (!pre.empty() && tail.next_hop(g.src(pre.back())) == pre.back()) pre.pop_back();
            FinPath prefix = pre.empty() ? FinPath(g, spec.prefix().src()) : FinPath(g, pre);
            return OmegaPathSpec::irrational(std::move(prefix), spec.recurrent());
        }
    }
    throw DomainError("unreachable");
}

bool tail_equivalent(const OmegaPathSpec& p, const OmegaPathSpec& q) {
    if (&p.graph() != &q.graph()) return false;
    if (p.kind() != q.kind()) return false;
    switch (p.kind()) {
        case OmegaKind::Sink:
            return p.sink_vertex() == q.sink_vertex();
        case OmegaKind::Rational: {
            const auto& a = p.cycle().edges();
            const auto& b = q.cycle().edges();
            if (a.size() != b.size()) return false;
            std::vector<EdgeId> doubled = a;
            doubled.insert(doubled.end(), a.begin(), a.end());
            return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) !=
                   doubled.end();
        }
        case OmegaKind::Irrational:
            return p.recurrent() == q.recurrent();
    }
    return false;
}

std::optional<EdgeId> word_edge_at(const OmegaPathSpec& p, std::size_t k) {
    const auto& pre = p.prefix();
    if (k < pre.length()) return pre.edge(k);
    k -= pre.length();
    switch (p.kind()) {
        case OmegaKind::Sink:
            return std::nullopt;
        case OmegaKind::Rational:
            return p.cycle().edge(k % p.cycle().length());
        case OmegaKind::Irrational: {
            IrrationalTail tail(p.graph(), p.recurrent());
            const auto& conn = tail.connector(pre.rng());
            if (k < conn.size()) return conn[k];
            return tail.master_edge(k - conn.size());
        }
    }
    return std::nullopt;
}

std::size_t determined_length(const OmegaPathSpec& p) {
    switch (p.kind()) {
        case OmegaKind::Sink:
            return p.prefix().length();
        case OmegaKind::Rational:
            return std::numeric_limits<std::size_t>::max();
        case OmegaKind::Irrational: {
            IrrationalTail tail(p.graph(), p.recurrent());
            return p.prefix().length() + tail.connector(p.prefix().rng()).size();
        }
    }
    return 0;
}

bool divisible_by(const OmegaPathSpec& p, const FinPath& d) {
    for (std::size_t j = 0; j < d.length(); ++j) {
        auto e = word_edge_at(p, j);
        if (!e || *e != d.edge(j)) return false;
    }
    return d.length() > 0 || p.source() == d.src();
}

std::pair<FinPath, OmegaPathSpec> truncate(const OmegaPathSpec& p, std::size_t n) {
    const Graph& g = p.graph();
    const FinPath& pre = p.prefix();
    switch (p.kind()) {
        case OmegaKind::Sink: {
            // Positions past the anchor are stationary at the sink.
            std::size_t cut = std::min(n, pre.length());
            return {pre.prefix(cut), OmegaPathSpec::sink(pre.suffix_from(cut))};
        }
        case OmegaKind::Rational: {
            if (n <= pre.length())
                return {pre.prefix(n), OmegaPathSpec::lasso(pre.suffix_from(n), p.cycle())};
            std::size_t k = n - pre.length();
            const auto& cyc = p.cycle().edges();
            std::vector<EdgeId> head = pre.edges();
            for (std::size_t j = 0; j < k; ++j) head.push_back(cyc[j % cyc.size()]);
            std::vector<EdgeId> rot = cyc;
            std::rotate(rot.begin(), rot.begin() + static_cast<long>(k % cyc.size()), rot.end());
            FinPath cycle(g, rot);
            return {FinPath(g, head),
                    OmegaPathSpec::lasso(FinPath(g, cycle.src()), std::move(cycle))};
        }
        case OmegaKind::Irrational: {
            if (n <= pre.length())
                return {pre.prefix(n),
                        OmegaPathSpec::irrational(pre.suffix_from(n), p.recurrent())};
            IrrationalTail tail(g, p.recurrent());
            const auto& conn = tail.connector(pre.rng());
            std::size_t k = n - pre.length();
            if (k > conn.size())
                throw UndeterminedProbe(
                    "truncation at " + std::to_string(n) + " reaches past the determined region (" +
                    std::to_string(pre.length() + conn.size()) +
                    " edges); supply a longer prefix");
            std::vector<EdgeId> head = pre.edges();
            head.insert(head.end(), conn.begin(), conn.begin() + static_cast<long>(k));
            FinPath head_path = head.empty() ? FinPath(g, pre.src()) : FinPath(g, head);
            VertexId at = head_path.rng();
            return {head_path, OmegaPathSpec::irrational(FinPath(g, at), p.recurrent())};
        }
    }
    throw DomainError("unreachable");
}

std::vector<VertexId> u_set(const OmegaPathSpec& T) {
    const Graph& g = T.graph();
    std::vector<VertexId> targets;
    switch (T.kind()) {
        case OmegaKind::Sink:
            targets.push_back(T.sink_vertex());
            break;
        case OmegaKind::Rational:
            for (std::size_t i = 0; i < T.cycle().length(); ++i)
                targets.push_back(T.cycle().vertex_at(i));
            break;
        case OmegaKind::Irrational:
            for (EdgeId e : T.recurrent()) {
                targets.push_back(g.src(e));
                targets.push_back(g.rng(e));
            }
            break;
    }
    return reaching_set(g, targets);
}

} // namespace lpa
