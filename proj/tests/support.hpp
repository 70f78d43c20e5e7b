#ifndef LPA_TESTS_SUPPORT_HPP
#define LPA_TESTS_SUPPORT_HPP

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <lpa/homology.hpp>
#include <lpa/textio.hpp>

namespace lpa::testing {

// --- standard graphs ---------------------------------------------------

/// One vertex, one loop.
inline Graph r1() {
    Graph::Builder b;
    b.vertex("v").edge("d", "v", "v");
    return std::move(b).build();
}

/// One vertex, two loops.
inline Graph r2() {
    Graph::Builder b;
    b.vertex("v").edge("e", "v", "v").edge("f", "v", "v");
    return std::move(b).build();
}

/// u -> w with w a sink.
inline Graph chain2() {
    Graph::Builder b;
    b.vertex("u").vertex("w").edge("a", "u", "w");
    return std::move(b).build();
}

/// Loop d at v, n parallel edges v -> w, loop f at w.
inline Graph en(std::size_t n) {
    Graph::Builder b;
    b.vertex("v").vertex("w").edge("d", "v", "v");
    for (std::size_t i = 1; i <= n; ++i) b.edge("e" + std::to_string(i), "v", "w");
    b.edge("f", "w", "w");
    return std::move(b).build();
}

/// Path v1 -> ... -> v_{n+1} -> v with two loops at v, a branch b_i from
/// every v_i to w, and two loops at w.
inline Graph big_example(std::size_t n) {
    Graph::Builder b;
    for (std::size_t i = 1; i <= n + 1; ++i) b.vertex("v" + std::to_string(i));
    b.vertex("v").vertex("w");
    for (std::size_t i = 1; i <= n; ++i)
        b.edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1));
    b.edge("e" + std::to_string(n + 1), "v" + std::to_string(n + 1), "v");
    b.edge("e", "v", "v").edge("f", "v", "v");
    b.edge("g", "w", "w").edge("h", "w", "w");
    for (std::size_t i = 1; i <= n + 1; ++i)
        b.edge("b" + std::to_string(i), "v" + std::to_string(i), "w");
    return std::move(b).build();
}

// --- parsing shorthand --------------------------------------------------

inline FinPath path(const Graph& g, const std::string& text) {
    return textio::parse_path(g, text);
}

inline AlgebraElement expr(const Graph& g, const std::string& text) {
    return textio::parse_expr(g, text).element;
}

inline OmegaPathSpec spec(const Graph& g, const std::string& text) {
    return canonicalize(textio::parse_path_spec(g, text));
}

inline ChenElement chen(const Graph& g, const std::string& text) {
    return textio::parse_chen_element(g, text);
}

// --- random inputs ------------------------------------------------------

/// Random connected-ish multigraph with at most max_v vertices.
inline Graph random_graph(std::mt19937_64& rng, std::size_t max_v = 6, std::size_t max_e = 10) {
    std::uniform_int_distribution<std::size_t> nv(1, max_v);
    std::size_t n = nv(rng);
    std::uniform_int_distribution<std::size_t> ne(1, max_e);
    std::size_t m = ne(rng);
    Graph::Builder b;
    for (std::size_t i = 0; i < n; ++i) b.vertex("v" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < m; ++i)
        b.edge("a" + std::to_string(i), "v" + std::to_string(pick(rng)),
               "v" + std::to_string(pick(rng)));
    return std::move(b).build();
}

/// Random graph guaranteed to contain a cycle (one loop is forced).
inline Graph random_graph_with_cycle(std::mt19937_64& rng, std::size_t max_v = 6,
                                     std::size_t max_e = 9) {
    std::uniform_int_distribution<std::size_t> nv(1, max_v);
    std::size_t n = nv(rng);
    std::uniform_int_distribution<std::size_t> ne(1, max_e);
    std::size_t m = ne(rng);
    Graph::Builder b;
    for (std::size_t i = 0; i < n; ++i) b.vertex("v" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t loop_at = pick(rng);
    b.edge("loop", "v" + std::to_string(loop_at), "v" + std::to_string(loop_at));
    for (std::size_t i = 0; i < m; ++i)
        b.edge("a" + std::to_string(i), "v" + std::to_string(pick(rng)),
               "v" + std::to_string(pick(rng)));
    return std::move(b).build();
}

inline FinPath random_path(std::mt19937_64& rng, const Graph& g, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> pv(0, g.vertex_count() - 1);
    VertexId at = static_cast<VertexId>(pv(rng));
    std::uniform_int_distribution<std::size_t> pl(0, max_len);
    std::size_t len = pl(rng);
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; i < len; ++i) {
        auto out = g.out_edges(at);
        if (out.empty()) break;
        std::uniform_int_distribution<std::size_t> pe(0, out.size() - 1);
        EdgeId e = out[pe(rng)];
        edges.push_back(e);
        at = g.rng(e);
    }
    if (edges.empty()) return FinPath(g, at);
    return FinPath(g, edges);
}

inline Monomial random_monomial(std::mt19937_64& rng, const Graph& g, std::size_t max_len) {
    // Two backward walks from a common range vertex.
    std::uniform_int_distribution<std::size_t> pv(0, g.vertex_count() - 1);
    VertexId range = static_cast<VertexId>(pv(rng));
    std::vector<std::vector<EdgeId>> in(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) in[g.rng(e)].push_back(e);
    auto walk_back = [&](VertexId from) {
        std::uniform_int_distribution<std::size_t> pl(0, max_len);
        std::size_t len = pl(rng);
        std::vector<EdgeId> rev;
        VertexId at = from;
        for (std::size_t i = 0; i < len; ++i) {
            if (in[at].empty()) break;
            std::uniform_int_distribution<std::size_t> pe(0, in[at].size() - 1);
            EdgeId e = in[at][pe(rng)];
            rev.push_back(e);
            at = g.src(e);
        }
        std::reverse(rev.begin(), rev.end());
        return rev.empty() ? FinPath(g, from) : FinPath(g, rev);
    };
    return Monomial(walk_back(range), walk_back(range));
}

inline Scalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    return Scalar(n) / den(rng);
}

inline AlgebraElement random_element(std::mt19937_64& rng, const Graph& g, std::size_t terms,
                                     std::size_t max_len) {
    std::vector<std::pair<Monomial, Scalar>> parts;
    for (std::size_t i = 0; i < terms; ++i)
        parts.emplace_back(random_monomial(rng, g, max_len), random_scalar(rng));
    return AlgebraElement::from_terms(g, std::move(parts));
}

// --- oracles ------------------------------------------------------------

/// Line-point oracle from the definition: enumerate every path from u up to
/// length |V| * |E|, flag revisited vertices (cycles) and out-degrees >= 2
/// on the reachable set.
inline bool oracle_line_point(const Graph& g, VertexId u) {
    std::set<VertexId> reachable{u};
    std::size_t bound = g.vertex_count() * std::max<std::size_t>(g.edge_count(), 1);
    bool cycle = false;
    auto dfs = [&](auto&& self, VertexId at, std::vector<VertexId>& stack,
                   std::size_t depth) -> void {
        for (EdgeId e : g.out_edges(at)) {
            VertexId next = g.rng(e);
            reachable.insert(next);
            if (std::find(stack.begin(), stack.end(), next) != stack.end()) {
                cycle = true;
                continue;
            }
            if (depth + 1 > bound) continue;
            stack.push_back(next);
            self(self, next, stack, depth + 1);
            stack.pop_back();
        }
    };
    std::vector<VertexId> stack{u};
    dfs(dfs, u, stack, 0);
    if (cycle) return false;
    for (VertexId v : reachable)
        if (g.out_degree(v) >= 2) return false;
    return true;
}

/// Reachability closure via Floyd-Warshall.
inline std::vector<std::vector<bool>> oracle_reachability(const Graph& g) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (VertexId v = 0; v < n; ++v) reach[v][v] = true;
    for (EdgeId e = 0; e < g.edge_count(); ++e) reach[g.src(e)][g.rng(e)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

/// Exhaustive simple-closed-path oracle: iterate raw edge sequences.
inline std::vector<std::vector<EdgeId>> oracle_simple_closed(const Graph& g,
                                                             std::size_t max_len) {
    std::vector<std::vector<EdgeId>> found;
    std::vector<EdgeId> seq;
    auto primitive = [](const std::vector<EdgeId>& word) {
        for (std::size_t len = 1; len <= word.size() / 2; ++len) {
            if (word.size() % len != 0) continue;
            bool power = true;
            for (std::size_t i = len; i < word.size() && power; ++i)
                power = word[i] == word[i - len];
            if (power) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self) -> void {
        if (!seq.empty()) {
            bool composable = true;
            for (std::size_t i = 1; i < seq.size() && composable; ++i)
                composable = g.rng(seq[i - 1]) == g.src(seq[i]);
            if (composable && g.rng(seq.back()) == g.src(seq.front()) && primitive(seq))
                found.push_back(seq);
        }
        if (seq.size() >= max_len) return;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (!seq.empty() && g.rng(seq.back()) != g.src(e)) continue;
            seq.push_back(e);
            self(self);
            seq.pop_back();
        }
    };
    rec(rec);
    return found;
}

/// Tries to tell two algebra elements apart by their action on canonical
/// paths with total description size <= depth. Returns true when separated.
inline bool separated_by_action(const AlgebraElement& a, const AlgebraElement& b,
                                std::size_t depth) {
    const Graph& g = a.graph();
    std::vector<OmegaPathSpec> probes;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_sink(v)) continue;
        auto dfs = [&](auto&& self, FinPath p) -> void {
            if (p.rng() == v) probes.push_back(OmegaPathSpec::sink(p));
            if (p.length() >= depth) return;
            for (EdgeId e : g.out_edges(p.rng()))
                self(self, p + FinPath(g, std::vector<EdgeId>{e}));
        };
        for (VertexId s = 0; s < g.vertex_count(); ++s) dfs(dfs, FinPath(g, s));
    }
    for (const auto& c : simple_closed_paths(g, depth)) {
        auto dfs = [&](auto&& self, FinPath p) -> void {
            if (p.rng() == c.path.src())
                probes.push_back(canonicalize(OmegaPathSpec::lasso(p, c.path)));
            if (p.length() >= depth) return;
            for (EdgeId e : g.out_edges(p.rng()))
                self(self, p + FinPath(g, std::vector<EdgeId>{e}));
        };
        for (VertexId s = 0; s < g.vertex_count(); ++s) dfs(dfs, FinPath(g, s));
    }
    for (const auto& p : probes) {
        ChenElement t = ChenElement::basis(p);
        if (!(act(a, t) == act(b, t))) return true;
    }
    return false;
}

/// Exact rational solver for A x = rhs; returns false when inconsistent.
inline bool solve_linear_system(std::vector<std::vector<Scalar>> a, std::vector<Scalar> rhs) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        std::swap(rhs[pivot], rhs[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Scalar factor = a[r][col] / a[rank][col];
            for (std::size_t c2 = col; c2 < cols; ++c2) a[r][c2] -= factor * a[rank][c2];
            rhs[r] -= factor * rhs[rank];
        }
        ++rank;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        bool all_zero = true;
        for (std::size_t c2 = 0; c2 < cols && all_zero; ++c2) all_zero = a[r][c2] == 0;
        if (all_zero && rhs[r] != 0) return false;
    }
    return true;
}

/// Brute-force solvability of (d - 1) X = t over a bounded candidate key
/// set: the strip chains of t's keys, their d-prepends, and t's own keys.
inline bool oracle_shift_solvable(const FinPath& d, const ChenElement& t,
                                  std::size_t extra_powers = 3) {
    std::set<OmegaPathSpec> candidates;
    for (const auto& [key, k] : t.terms()) {
        OmegaPathSpec cur = key;
        candidates.insert(cur);
        std::size_t guard = 0;
        while (divisible_by(cur, d) && guard++ < 64) {
            cur = truncate(cur, d.length()).second;
            candidates.insert(cur);
        }
    }
    std::set<OmegaPathSpec> grown = candidates;
    for (const auto& base : candidates) {
        if (base.source() != d.src()) continue;
        FinPath power(d.graph(), d.src());
        for (std::size_t m = 1; m <= extra_powers; ++m) {
            power = power + d;
            FinPath combined = power + base.prefix();
            switch (base.kind()) {
                case OmegaKind::Sink:
                    grown.insert(OmegaPathSpec::sink(combined));
                    break;
                case OmegaKind::Rational:
                    grown.insert(canonicalize(OmegaPathSpec::lasso(combined, base.cycle())));
                    break;
                case OmegaKind::Irrational:
                    grown.insert(
                        canonicalize(OmegaPathSpec::irrational(combined, base.recurrent())));
                    break;
            }
        }
    }
    std::vector<OmegaPathSpec> unknowns(grown.begin(), grown.end());
    // Row space: every key reachable by d . c or c itself or t.
    std::map<OmegaPathSpec, std::size_t> row_of;
    auto row = [&](const OmegaPathSpec& key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        std::size_t r = row_of.size();
        row_of.emplace(key, r);
        return r;
    };
    AlgebraElement d_el = AlgebraElement::real_path(d);
    std::vector<std::map<std::size_t, Scalar>> cols;
    for (const auto& c : unknowns) {
        std::map<std::size_t, Scalar> col;
        ChenElement image = act(d_el, ChenElement::basis(c)) - ChenElement::basis(c);
        for (const auto& [key, k] : image.terms()) col[row(key)] += k;
        cols.push_back(std::move(col));
    }
    std::map<std::size_t, Scalar> rhs_map;
    for (const auto& [key, k] : t.terms()) rhs_map[row(key)] += k;
    std::size_t rows = row_of.size();
    std::vector<std::vector<Scalar>> a(rows, std::vector<Scalar>(unknowns.size(), Scalar(0)));
    std::vector<Scalar> rhs(rows, Scalar(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, k] : cols[c]) a[r][c] = k;
    for (const auto& [r, k] : rhs_map) rhs[r] = k;
    return solve_linear_system(std::move(a), std::move(rhs));
}

} // namespace lpa::testing

#endif
