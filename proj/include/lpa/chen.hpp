#ifndef LPA_CHEN_HPP
#define LPA_CHEN_HPP

#include <map>
#include <optional>
#include <vector>

#include <lpa/algebra.hpp>
#include <lpa/omega.hpp>

namespace lpa {

/**
 * Element of the simple module attached to one tail-equivalence class of
 * infinite paths: a scalar combination of canonical path specs from that
 * class. Distinct canonical specs are distinct basis paths.
 */
class ChenElement {
public:
    static ChenElement zero(OmegaPathSpec cls);
    /// The basis element given by the spec itself (class = its own class).
    static ChenElement basis(const OmegaPathSpec& spec);

    const Graph& graph() const { return class_.graph(); }
    const OmegaPathSpec& class_spec() const { return class_; }
    const std::map<OmegaPathSpec, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const OmegaPathSpec& key) const;

    /// Adds k times the canonical basis path; throws if the key is not in
    /// this element's class.
    ChenElement plus_term(const OmegaPathSpec& key, const Scalar& k) const;
    ChenElement operator+(const ChenElement& other) const;
    ChenElement operator-(const ChenElement& other) const;
    ChenElement operator-() const;
    ChenElement scaled(const Scalar& k) const;
    bool operator==(const ChenElement& other) const;

private:
    explicit ChenElement(OmegaPathSpec cls) : class_(std::move(cls)) {}
    OmegaPathSpec class_;
    std::map<OmegaPathSpec, Scalar> terms_;
};

/// Module action: vertices project, edges prepend, ghost edges strip the
/// first edge. Throws UndeterminedProbe when a ghost path would strip an
/// irrational key past its determined region.
ChenElement act(const AlgebraElement& a, const ChenElement& t);

/// t = k d^inf + t_0 + d t_1 + ... + d^s t_s with every layer supported on
/// paths from s(d) not divisible by d.
struct DDegreeDecomposition {
    Scalar k_dinf;
    std::vector<ChenElement> layers;
    std::size_t degree;
};

DDegreeDecomposition d_decompose(const ChenElement& t, const FinPath& d);

struct ShiftSolution {
    bool solvable;
    std::optional<ChenElement> x;
    /// On failure: the basis path whose layer coefficients do not cancel,
    /// or nothing when the obstruction is the d^inf coefficient.
    std::optional<OmegaPathSpec> obstruction_path;
    bool dinf_obstruction = false;
    std::string describe() const;
};

/// Decides (d - 1) X = t in t's module and returns a verified solution when
/// one exists.
ShiftSolution solve_shift_equation(const FinPath& d, const ChenElement& t);

/// Canonical members of L_(d, T) with prefix length at most max_len:
/// paths from s(d), tail-equivalent to T, not divisible by d. T must be a
/// sink or rational spec.
std::vector<OmegaPathSpec> l_set_enumerate(const FinPath& d, const OmegaPathSpec& T,
                                           std::size_t max_len);

enum class CardKind { Empty, Finite, CountablyInfinite };

struct Cardinality {
    CardKind kind;
    std::size_t count = 0;
    /// Longest member prefix when finite; enumeration past this adds nothing.
    std::size_t horizon = 0;
};

/// Exact cardinality of L_(d, T). Sink and rational classes are counted
/// with a finite-path automaton; irrational classes are nonempty exactly
/// when s(d) lies in U(T), and then countably infinite.
Cardinality l_cardinality(const FinPath& d, const OmegaPathSpec& T);

} // namespace lpa

#endif
