#ifndef LPA_OMEGA_HPP
#define LPA_OMEGA_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lpa/graph.hpp>

namespace lpa {

enum class OmegaKind { Sink, Rational, Irrational };

/**
 * Finitely represented infinite path. Three shapes:
 *
 *  - Sink: a finite path into a sink, stationary from there on.
 *  - Rational: a lasso, prefix followed by an endlessly repeated primitive
 *    cycle.
 *  - Irrational: a prefix into a strongly connected branching edge set; the
 *    tail is the fixed deterministic aperiodic walk through that set (see
 *    IrrationalTail), so the represented path is concrete even though only
 *    the class data is stored.
 *
 * canonicalize() produces the unique representative of the represented path:
 * lasso prefixes absorb trailing cycle edges and cycles are reduced to their
 * primitive root; irrational prefixes drop trailing edges that retrace the
 * start of the deterministic tail.
 */
class OmegaPathSpec {
public:
    static OmegaPathSpec sink(FinPath prefix);
    static OmegaPathSpec lasso(FinPath prefix, FinPath cycle);
    static OmegaPathSpec irrational(FinPath prefix, std::vector<EdgeId> recurrent);

    OmegaKind kind() const { return kind_; }
    const Graph& graph() const { return prefix_.graph(); }
    const FinPath& prefix() const { return prefix_; }
    /// Rational only.
    const FinPath& cycle() const;
    /// Sink only.
    VertexId sink_vertex() const;
    /// Irrational only; sorted edge ids.
    const std::vector<EdgeId>& recurrent() const;

    VertexId source() const { return prefix_.src(); }

    bool operator==(const OmegaPathSpec& other) const;
    std::strong_ordering operator<=>(const OmegaPathSpec& other) const;

private:
    OmegaPathSpec(OmegaKind kind, FinPath prefix) : kind_(kind), prefix_(std::move(prefix)) {}
    OmegaKind kind_;
    FinPath prefix_;
    std::optional<FinPath> cycle_;
    std::vector<EdgeId> recurrent_;
};

struct IrrationalCheck {
    bool ok;
    std::string reason;
};

/// Accepts iff the edge set is nonempty and strongly connected, some vertex
/// of it emits two or more of its edges, and the prefix ends inside it.
/// These conditions are exactly what a non-eventually-periodic edge-covering
/// walk needs.
IrrationalCheck validate_irrational(const Graph& g, const FinPath& prefix,
                                    const std::vector<EdgeId>& recurrent);

/**
 * The deterministic tail walk of an irrational class.
 *
 * For the recurrent set R the walk is anchored at the least branching vertex
 * b. Every other vertex of R carries a fixed shortest connector path to b;
 * the master walk from b is round r = (cover walk)(second loop)^r(first
 * loop), which uses every edge of R infinitely often and has unbounded gaps
 * between visits of the first loop, hence is not eventually periodic.
 */
class IrrationalTail {
public:
    IrrationalTail(const Graph& g, const std::vector<EdgeId>& recurrent);

    VertexId anchor() const { return anchor_; }
    bool is_recurrent_vertex(VertexId v) const { return connectors_.count(v) > 0; }
    const std::vector<EdgeId>& connector(VertexId v) const;
    /// Least-id edge taken from v on the way to the anchor; nullopt at b.
    std::optional<EdgeId> next_hop(VertexId v) const;
    /// k-th edge of the master walk from the anchor.
    EdgeId master_edge(std::size_t k) const;

private:
    const Graph* graph_;
    VertexId anchor_ = 0;
    std::map<VertexId, std::vector<EdgeId>> connectors_;
    std::vector<EdgeId> cover_;
    std::vector<EdgeId> loop_a_;
    std::vector<EdgeId> loop_b_;
};

/// Unique representative per represented infinite path. Throws DomainError
/// on malformed specs.
OmegaPathSpec canonicalize(const OmegaPathSpec& spec);

/// Same tail-equivalence class: equal sinks, cycles that are rotations of
/// one another, or equal recurrent sets (the tails of two specs with the
/// same recurrent set are suffixes of one deterministic walk).
bool tail_equivalent(const OmegaPathSpec& p, const OmegaPathSpec& q);

/// True iff the first length(d) edges of p spell d.
bool divisible_by(const OmegaPathSpec& p, const FinPath& d);

/// Splits p into its first n edges and the remaining canonical spec.
/// For irrational p, n may reach the end of the determined region
/// (prefix + connector); beyond that UndeterminedProbe is thrown.
std::pair<FinPath, OmegaPathSpec> truncate(const OmegaPathSpec& p, std::size_t n);

/// Edge at position k of the represented path. Empty only past the anchor
/// of a sink spec (the path is stationary there).
std::optional<EdgeId> word_edge_at(const OmegaPathSpec& p, std::size_t k);

/// Number of leading edge positions whose suffix spec stays representable.
/// SIZE_MAX for rational specs.
std::size_t determined_length(const OmegaPathSpec& p);

/// U(T): vertices from which the visited vertex set of T's class can be
/// reached; ascending order.
std::vector<VertexId> u_set(const OmegaPathSpec& T);

} // namespace lpa

#endif
