#ifndef LPA_ALGEBRA_HPP
#define LPA_ALGEBRA_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <lpa/graph.hpp>
#include <lpa/scalar.hpp>

namespace lpa {

/**
 * Standard form monomial: alpha . beta^* where alpha and beta are finite
 * paths with a common range vertex.
 */
class Monomial {
public:
    Monomial(FinPath alpha, FinPath beta);

    const FinPath& alpha() const { return alpha_; }
    const FinPath& beta() const { return beta_; }
    /// The unique vertex u with (this . u) == this, i.e. src(beta).
    VertexId range_vertex() const { return beta_.src(); }
    VertexId source_vertex() const { return alpha_.src(); }
    bool is_vertex() const { return alpha_.empty() && beta_.empty(); }

    /// Involution: (alpha beta^*)^* = beta alpha^*.
    Monomial star() const { return Monomial(beta_, alpha_); }

    bool operator==(const Monomial& other) const;
    /// Orders by (|alpha| + |beta|, alpha edges, beta edges, base vertices).
    std::strong_ordering operator<=>(const Monomial& other) const;

private:
    FinPath alpha_;
    FinPath beta_;
};

/**
 * Element of the path algebra modulo the (CK1)/(CK2) relations, stored as a
 * scalar combination of monomials in normal form. The normal form forbids
 * alpha and beta from both ending in the designated special edge of their
 * common penultimate vertex; reduction with the (CK2) relation is confluent,
 * so equality of elements is equality of the stored maps.
 *
 * Values are immutable; all operations are pure.
 */
class AlgebraElement {
public:
    static AlgebraElement zero(const Graph& g);
    static AlgebraElement vertex(const Graph& g, VertexId v);
    /// Sum of all vertices: the identity element (the graph is finite).
    static AlgebraElement one(const Graph& g);
    static AlgebraElement real_path(const FinPath& p);
    static AlgebraElement ghost_path(const FinPath& p);
    static AlgebraElement monomial(const Monomial& m, Scalar k = 1);
    /// Builds from arbitrary (monomial, scalar) terms, reducing to normal
    /// form. `shuffle_seed` randomizes the reduction order (used by the
    /// confluence tests); the result does not depend on it.
    static AlgebraElement from_terms(const Graph& g,
                                     std::vector<std::pair<Monomial, Scalar>> terms,
                                     std::optional<std::uint64_t> shuffle_seed = std::nullopt);

    const Graph& graph() const { return *graph_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    Scalar coefficient(const Monomial& m) const;

    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const AlgebraElement& other) const;
    AlgebraElement scaled(const Scalar& k) const;
    AlgebraElement star() const;

    bool operator==(const AlgebraElement& other) const;

private:
    AlgebraElement(const Graph& g) : graph_(&g) {}
    const Graph* graph_;
    std::map<Monomial, Scalar> terms_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// F_i(beta): sum of f f^* over the exits f in X_i(beta). Satisfies
/// s(e_{i+1}) - F_i(beta) == e_{i+1} e_{i+1}^* and F_i(beta) . e_{i+1} == 0.
AlgebraElement f_sum(const Graph& g, const FinPath& beta, std::size_t i);

/// Given q . alpha == x, returns the components
///   [x alpha^*, q alpha_{n-1} F_{n-1} alpha_{n-1}^*, ..., q alpha_1 F_1 alpha_1^*, q F_0]
/// whose sum is q. Throws DomainError if the hypothesis fails.
std::vector<AlgebraElement> solve_for_q_expansion(const AlgebraElement& q, const FinPath& alpha,
                                                  const AlgebraElement& x);

/// Given x . s(beta) == x and x . beta == 0, returns per-index components
/// t_i = sum_{f in X_i(beta)} (x beta_i f) f^* beta_i^* with sum equal to x.
std::vector<AlgebraElement> annihilator_decomposition(const AlgebraElement& x,
                                                      const FinPath& beta);

/// Monomials that some power of c kills.
struct S1Class {
    /// Least N >= 1 with mu . c^N == 0.
    std::size_t nilpotency;
};

/// Monomials of the form alpha c_i^* (c^*)^n.
struct S2Class {
    FinPath alpha;
    std::size_t i;
    std::size_t n;
};

using MonomialClass = std::variant<S1Class, S2Class>;

/// Splits a monomial against a simple closed path c (or a length-0 path at a
/// sink, realizing the stationary convention for sinks).
MonomialClass classify_monomial(const Monomial& mu, const FinPath& c);

} // namespace lpa

#endif
