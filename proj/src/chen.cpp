#include <lpa/chen.hpp>

#include <algorithm>
#include <deque>

namespace lpa {

ChenElement ChenElement::zero(OmegaPathSpec cls) {
    return ChenElement(canonicalize(cls));
}

ChenElement ChenElement::basis(const OmegaPathSpec& spec) {
    ChenElement out(canonicalize(spec));
    out.terms_.emplace(out.class_, Scalar(1));
    return out;
}

Scalar ChenElement::coefficient(const OmegaPathSpec& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
}

ChenElement ChenElement::plus_term(const OmegaPathSpec& key, const Scalar& k) const {
    if (!tail_equivalent(key, class_))
        throw DomainError("basis path is not in this module's class");
    ChenElement out(*this);
    if (k == 0) return out;
    auto it = out.terms_.find(key);
    if (it == out.terms_.end()) {
        out.terms_.emplace(key, k);
    } else {
        it->second += k;
        if (it->second == 0) out.terms_.erase(it);
    }
    return out;
}

ChenElement ChenElement::operator+(const ChenElement& other) const {
    if (!tail_equivalent(class_, other.class_))
        throw DomainError("module elements from different classes");
    ChenElement out(*this);
    for (const auto& [key, k] : other.terms_) {
        auto it = out.terms_.find(key);
        if (it == out.terms_.end()) {
            out.terms_.emplace(key, k);
        } else {
            it->second += k;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

ChenElement ChenElement::operator-(const ChenElement& other) const { return *this + (-other); }

ChenElement ChenElement::operator-() const { return scaled(Scalar(-1)); }

ChenElement ChenElement::scaled(const Scalar& k) const {
    ChenElement out(class_);
    if (k == 0) return out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * k);
    return out;
}

bool ChenElement::operator==(const ChenElement& other) const {
    return tail_equivalent(class_, other.class_) && terms_ == other.terms_;
}

namespace {

/// beta^* . q: the tail of q past beta if q starts with beta, zero otherwise.
std::optional<OmegaPathSpec> ghost_strip(const FinPath& beta, const OmegaPathSpec& q) {
    if (beta.empty()) {
        if (q.source() != beta.src()) return std::nullopt;
        return q;
    }
    for (std::size_t j = 0; j < beta.length(); ++j) {
        auto e = word_edge_at(q, j);
        if (!e || *e != beta.edge(j)) return std::nullopt;
    }
    return truncate(q, beta.length()).second;
}

/// alpha . q: the concatenation when composable, zero otherwise.
std::optional<OmegaPathSpec> prepend(const FinPath& alpha, const OmegaPathSpec& q) {
    if (alpha.rng() != q.source()) return std::nullopt;
    if (alpha.empty()) return q;
    FinPath combined = alpha + q.prefix();
    switch (q.kind()) {
        case OmegaKind::Sink:
            return OmegaPathSpec::sink(std::move(combined));
        case OmegaKind::Rational:
            return canonicalize(OmegaPathSpec::lasso(std::move(combined), q.cycle()));
        case OmegaKind::Irrational:
            return canonicalize(OmegaPathSpec::irrational(std::move(combined), q.recurrent()));
    }
    return std::nullopt;
}

} // namespace

ChenElement act(const AlgebraElement& a, const ChenElement& t) {
    if (&a.graph() != &t.graph()) throw DomainError("action across different graphs");
    ChenElement out = ChenElement::zero(t.class_spec());
    for (const auto& [mono, ka] : a.terms()) {
        for (const auto& [key, kt] : t.terms()) {
            auto stripped = ghost_strip(mono.beta(), key);
            if (!stripped) continue;
            auto result = prepend(mono.alpha(), *stripped);
            if (!result) continue;
            out = out.plus_term(*result, ka * kt);
        }
    }
    return out;
}

DDegreeDecomposition d_decompose(const ChenElement& t, const FinPath& d) {
    if (!is_simple_closed(d)) throw DomainError("d must be a simple closed path");
    const VertexId vd = d.src();
    for (const auto& [key, k] : t.terms())
        if (key.source() != vd)
            throw DomainError("d-degree decomposition needs an s(d)-supported element");
    const OmegaPathSpec dinf =
        canonicalize(OmegaPathSpec::lasso(FinPath(d.graph(), vd), d));

    DDegreeDecomposition out{Scalar(0), {}, 0};
    std::map<std::size_t, std::vector<std::pair<OmegaPathSpec, Scalar>>> layers;
    for (const auto& [key, k] : t.terms()) {
        if (key.kind() == OmegaKind::Rational && key == dinf) {
            out.k_dinf += k;
            continue;
        }
        std::size_t j = 0;
        OmegaPathSpec cur = key;
        while (divisible_by(cur, d)) {
            cur = truncate(cur, d.length()).second;
            ++j;
        }
        layers[j].emplace_back(std::move(cur), k);
    }
    if (!layers.empty()) {
        out.degree = layers.rbegin()->first;
        for (std::size_t i = 0; i <= out.degree; ++i) {
            ChenElement layer = ChenElement::zero(t.class_spec());
            auto it = layers.find(i);
            if (it != layers.end())
                for (const auto& [key, k] : it->second) layer = layer.plus_term(key, k);
            out.layers.push_back(std::move(layer));
        }
    }
    return out;
}

std::string ShiftSolution::describe() const {
    if (solvable) return "solvable";
    if (dinf_obstruction) return "no solution: nonzero coefficient on the cyclic path itself";
    return "no solution: some layer-coefficient sum over a basis path is nonzero";
}

ShiftSolution solve_shift_equation(const FinPath& d, const ChenElement& t) {
    if (!is_simple_closed(d)) throw DomainError("d must be a simple closed path");
    const VertexId vd = d.src();

    ChenElement supported = ChenElement::zero(t.class_spec());
    ChenElement x = ChenElement::zero(t.class_spec());
    for (const auto& [key, k] : t.terms()) {
        if (key.source() == vd)
            supported = supported.plus_term(key, k);
        else
            x = x.plus_term(key, -k); // d kills these keys, so -t solves them
    }

    if (!supported.is_zero()) {
        DDegreeDecomposition dec = d_decompose(supported, d);
        if (dec.k_dinf != 0) return {false, std::nullopt, std::nullopt, true};
        std::map<OmegaPathSpec, Scalar> sums;
        for (const auto& layer : dec.layers)
            for (const auto& [key, k] : layer.terms()) sums[key] += k;
        for (const auto& [key, sum] : sums)
            if (sum != 0) return {false, std::nullopt, key, false};
        // Telescoping: sum_i k_i d^i u = (d - 1) sum_i k_i (u + du + ... + d^{i-1}u)
        // whenever the k_i cancel.
        for (std::size_t i = 0; i < dec.layers.size(); ++i) {
            for (const auto& [key, k] : dec.layers[i].terms()) {
                for (std::size_t m = 0; m < i; ++m) {
                    auto shifted = prepend(d.repeated(m), key);
                    x = x.plus_term(*shifted, k);
                }
            }
        }
    }

    ChenElement check = act(AlgebraElement::real_path(d), x) - x;
    if (!(check == t)) throw std::logic_error("shift solution failed verification");
    return {true, x, std::nullopt, false};
}

std::vector<OmegaPathSpec> l_set_enumerate(const FinPath& d, const OmegaPathSpec& T_in,
                                           std::size_t max_len) {
    if (!is_simple_closed(d)) throw DomainError("d must be a simple closed path");
    OmegaPathSpec T = canonicalize(T_in);
    if (T.kind() == OmegaKind::Irrational)
        throw DomainError("enumeration covers sink and rational classes only");
    const Graph& g = d.graph();
    const VertexId vd = d.src();

    std::vector<OmegaPathSpec> out;
    auto consider = [&](const OmegaPathSpec& spec) {
        if (!divisible_by(spec, d)) out.push_back(spec);
    };

    // All walks from s(d) of length <= max_len, tested at every endpoint.
    auto dfs = [&](auto&& self, FinPath walk, const auto& accept) -> void {
        accept(walk);
        if (walk.length() >= max_len) return;
        for (EdgeId e : g.out_edges(walk.rng()))
            self(self, walk + FinPath(g, std::vector<EdgeId>{e}), accept);
    };

    if (T.kind() == OmegaKind::Sink) {
        VertexId w = T.sink_vertex();
        dfs(dfs, FinPath(g, vd), [&](const FinPath& walk) {
            if (walk.rng() == w) consider(OmegaPathSpec::sink(walk));
        });
    } else {
        const auto& cyc0 = T.cycle().edges();
        for (std::size_t r = 0; r < cyc0.size(); ++r) {
            std::vector<EdgeId> rot = cyc0;
            std::rotate(rot.begin(), rot.begin() + static_cast<long>(r), rot.end());
            FinPath cyc(g, rot);
            EdgeId in_edge = rot.back();
            VertexId target = cyc.src();
            dfs(dfs, FinPath(g, vd), [&](const FinPath& walk) {
                if (walk.rng() != target) return;
                if (!walk.empty() && walk.edges().back() == in_edge) return;
                consider(OmegaPathSpec::lasso(walk, cyc));
            });
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

/// One accepting condition set of the L-set counting automaton: walks from
/// s(d) into `target`, rejecting prefixes of d^inf and, for lassos, walks
/// whose last edge would be absorbed into the cycle.
struct LTarget {
    VertexId target;
    std::optional<EdgeId> in_edge;
    std::vector<bool> bad_match; // match position m completes to d along the tail
};

struct LCount {
    bool infinite = false;
    std::uint64_t count = 0;
    std::size_t horizon = 0;
};

LCount count_target(const Graph& g, const FinPath& d, const LTarget& tgt) {
    const std::size_t t = d.length();
    const std::size_t div = t; // match state meaning "diverged from d"
    const std::size_t m_states = t + 1;
    auto encode = [&](VertexId v, std::size_t m, bool last_in) {
        return (static_cast<std::size_t>(v) * m_states + m) * 2 + (last_in ? 1 : 0);
    };
    const std::size_t n_states = g.vertex_count() * m_states * 2;

    struct Transition {
        std::size_t from, to;
    };
    std::vector<Transition> transitions;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t m = 0; m <= t; ++m) {
            for (int last = 0; last < 2; ++last) {
                for (EdgeId e : g.out_edges(v)) {
                    std::size_t m2 = div;
                    if (m != div && e == d.edge(m)) {
                        if (m + 1 == t) continue; // word starts with d: excluded
                        m2 = m + 1;
                    }
                    bool last2 = tgt.in_edge && e == *tgt.in_edge;
                    transitions.push_back(
                        {encode(v, m, last != 0), encode(g.rng(e), m2, last2)});
                }
            }
        }
    }
    auto accepting = [&](std::size_t s) {
        bool last = s % 2 != 0;
        std::size_t m = (s / 2) % m_states;
        VertexId v = static_cast<VertexId>(s / 2 / m_states);
        if (v != tgt.target || last) return false;
        return m == div || !tgt.bad_match[m];
    };

    const std::size_t init = encode(d.src(), 0, false);
    std::vector<std::vector<std::size_t>> fwd(n_states), bwd(n_states);
    for (auto [a, b] : transitions) {
        fwd[a].push_back(b);
        bwd[b].push_back(a);
    }
    auto flood = [&](std::vector<std::size_t> seeds, const auto& adj) {
        std::vector<bool> seen(n_states, false);
        std::deque<std::size_t> queue;
        for (auto s : seeds)
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        while (!queue.empty()) {
            auto s = queue.front();
            queue.pop_front();
            for (auto nxt : adj[s])
                if (!seen[nxt]) {
                    seen[nxt] = true;
                    queue.push_back(nxt);
                }
        }
        return seen;
    };
    auto reach = flood({init}, fwd);
    std::vector<std::size_t> accepts;
    for (std::size_t s = 0; s < n_states; ++s)
        if (accepting(s)) accepts.push_back(s);
    auto coreach = flood(accepts, bwd);

    std::vector<bool> live(n_states);
    for (std::size_t s = 0; s < n_states; ++s) live[s] = reach[s] && coreach[s];
    if (!live[init]) return {false, 0, 0};

    // Cycle detection on the live part.
    std::vector<int> color(n_states, 0);
    bool cyclic = false;
    auto visit = [&](auto&& self, std::size_t s) -> void {
        color[s] = 1;
        for (auto nxt : fwd[s]) {
            if (!live[nxt] || cyclic) continue;
            if (color[nxt] == 1) {
                cyclic = true;
            } else if (color[nxt] == 0) {
                self(self, nxt);
            }
        }
        color[s] = 2;
    };
    for (std::size_t s = 0; s < n_states && !cyclic; ++s)
        if (live[s] && color[s] == 0) visit(visit, s);
    if (cyclic) return {true, 0, 0};

    // Acyclic: count labeled walks and the longest accepted length.
    std::vector<std::size_t> order;
    std::vector<std::size_t> indeg(n_states, 0);
    for (auto [a, b] : transitions)
        if (live[a] && live[b]) ++indeg[b];
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n_states; ++s)
        if (live[s] && indeg[s] == 0) queue.push_back(s);
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        order.push_back(s);
        for (auto nxt : fwd[s])
            if (live[nxt] && --indeg[nxt] == 0) queue.push_back(nxt);
    }
    std::vector<std::uint64_t> ways(n_states, 0);
    std::vector<std::size_t> depth(n_states, 0);
    ways[init] = 1;
    for (auto s : order)
        for (auto nxt : fwd[s])
            if (live[nxt] && ways[s] > 0) {
                ways[nxt] += ways[s];
                depth[nxt] = std::max(depth[nxt], depth[s] + 1);
            }
    LCount out;
    for (std::size_t s = 0; s < n_states; ++s)
        if (live[s] && accepting(s) && ways[s] > 0) {
            out.count += ways[s];
            out.horizon = std::max(out.horizon, depth[s]);
        }
    return out;
}

} // namespace

Cardinality l_cardinality(const FinPath& d, const OmegaPathSpec& T_in) {
    if (!is_simple_closed(d)) throw DomainError("d must be a simple closed path");
    OmegaPathSpec T = canonicalize(T_in);
    const Graph& g = d.graph();

    if (T.kind() == OmegaKind::Irrational) {
        auto u = u_set(T);
        if (!std::binary_search(u.begin(), u.end(), d.src())) return {CardKind::Empty, 0, 0};
        return {CardKind::CountablyInfinite, 0, 0};
    }

    std::vector<LTarget> targets;
    if (T.kind() == OmegaKind::Sink) {
        targets.push_back({T.sink_vertex(), std::nullopt, std::vector<bool>(d.length(), false)});
    } else {
        const auto& cyc0 = T.cycle().edges();
        for (std::size_t r = 0; r < cyc0.size(); ++r) {
            std::vector<EdgeId> rot = cyc0;
            std::rotate(rot.begin(), rot.begin() + static_cast<long>(r), rot.end());
            LTarget tgt{g.src(rot.front()), rot.back(), std::vector<bool>(d.length(), false)};
            for (std::size_t m = 0; m < d.length(); ++m) {
                bool bad = true;
                for (std::size_t j = 0; m + j < d.length() && bad; ++j)
                    bad = d.edge(m + j) == rot[j % rot.size()];
                tgt.bad_match[m] = bad;
            }
            targets.push_back(std::move(tgt));
        }
    }

    Cardinality out{CardKind::Empty, 0, 0};
    for (const auto& tgt : targets) {
        LCount c = count_target(g, d, tgt);
        if (c.infinite) return {CardKind::CountablyInfinite, 0, 0};
        out.count += c.count;
        out.horizon = std::max(out.horizon, c.horizon);
    }
    out.kind = out.count == 0 ? CardKind::Empty : CardKind::Finite;
    return out;
}

} // namespace lpa
