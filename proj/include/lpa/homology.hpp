#ifndef LPA_HOMOLOGY_HPP
#define LPA_HOMOLOGY_HPP

#include <optional>
#include <string>
#include <vector>

#include <lpa/chen.hpp>

namespace lpa {

enum class ModuleType { Sink, Rational, Irrational };

/// One kernel block of an irrational presentation: the ghost generators
/// (p_i f)^* over the exits f at step i of the path.
struct KernelFamilyEntry {
    std::size_t index;
    FinPath path_prefix;
    std::vector<EdgeId> exit_edges;
    std::vector<AlgebraElement> generators;
};

struct ResolutionReport {
    ModuleType module_type;
    VertexId presentation_vertex;
    /// c - v, alpha c alpha^* - u, or alpha alpha^* - u; absent for a plain
    /// sink presentation (the module is already projective).
    std::optional<AlgebraElement> kernel_generator;
    /// Kernel blocks up to `horizon` for irrational modules.
    std::vector<KernelFamilyEntry> kernel_family;
    bool family_infinite = false;
    /// A recurrent branching vertex forcing infinitely many nonzero blocks.
    std::optional<VertexId> family_witness;
    bool finitely_presented = true;
    bool projective = false;
    int projective_dimension = 0;
    std::size_t horizon = 0;
};

/// Presentation of the module of S from the vertex ideal at its source,
/// or from s(generator) when a generator path into the class is supplied.
ResolutionReport resolution(const OmegaPathSpec& S,
                            const std::optional<FinPath>& generator = std::nullopt,
                            std::optional<std::size_t> horizon = std::nullopt);

struct KernelMembership {
    bool member;
    /// r with r . (kernel generator) equal to the presentation-vertex column
    /// of the tested element.
    std::optional<AlgebraElement> factor;
    /// The columns at other vertices, killed by the map on their own.
    std::optional<AlgebraElement> vertex_complement;
};

/// Tests lam against the presentation map of S (sink or rational class) and
/// produces a factorization certificate through the kernel generator.
KernelMembership kernel_membership(const AlgebraElement& lam, const OmegaPathSpec& S,
                                   const std::optional<FinPath>& generator = std::nullopt);

struct FinitePresentation {
    bool finitely_presented;
    std::string reason;
    std::optional<AlgebraElement> kernel_generator;
    std::optional<VertexId> witness;
};

FinitePresentation is_finitely_presented(const OmegaPathSpec& S);

enum class ExtKind { Zero, Finite, CountablyInfinite };

struct ExtDim {
    ExtKind kind;
    std::size_t dim = 0;
    /// Basis paths when finite; the class path itself contributes the extra
    /// basis vector in the self-extension case.
    std::vector<OmegaPathSpec> witnesses;
    bool includes_class_path = false;
    std::string rule;
};

/// dim Ext^1 between the modules of S and T, decided from the graph alone.
ExtDim ext_dim(const OmegaPathSpec& S, const OmegaPathSpec& T);

struct UniserialReport {
    bool exists;
    std::size_t length;
    std::string rule;
    ExtDim self_ext;
};

/// Whether a uniserial module of the given length with all composition
/// factors equal to the module of S exists by the self-extension criterion.
UniserialReport uniserial_report(const OmegaPathSpec& S, std::size_t n);

} // namespace lpa

#endif
