#include <lpa/homology.hpp>

#include <algorithm>
#include <map>

namespace lpa {

namespace {

/// v + c + c^2 + ... + c^{n-1}; zero when n == 0.
AlgebraElement cycle_geometric_sum(const FinPath& c, std::size_t n) {
    const Graph& g = c.graph();
    AlgebraElement out = AlgebraElement::zero(g);
    for (std::size_t j = 0; j < n; ++j)
        out = out + AlgebraElement::real_path(c.repeated(j));
    return out;
}

/// The generating infinite path of the presentation: alpha . c^inf,
/// alpha . w^inf, or the irrational spec itself.
OmegaPathSpec presentation_path(const OmegaPathSpec& S, const std::optional<FinPath>& alpha) {
    const Graph& g = S.graph();
    switch (S.kind()) {
        case OmegaKind::Sink: {
            FinPath pre = alpha ? *alpha : FinPath(g, S.sink_vertex());
            if (pre.rng() != S.sink_vertex())
                throw DomainError("generator path must end at the sink");
            return OmegaPathSpec::sink(pre);
        }
        case OmegaKind::Rational: {
            const FinPath& c = S.cycle();
            FinPath pre = alpha ? *alpha : FinPath(g, c.src());
            if (pre.rng() != c.src())
                throw DomainError("generator path must end at the cycle source");
            return canonicalize(OmegaPathSpec::lasso(pre, c));
        }
        case OmegaKind::Irrational:
            if (alpha) throw DomainError("irrational presentations take no generator path");
            return S;
    }
    throw DomainError("unreachable");
}

/// Kernel generator of the presentation from L(E)u:
/// alpha c alpha^* - u (rational) or alpha alpha^* - u (sink), which is
/// c - v resp. absent when alpha is trivial.
std::optional<AlgebraElement> presentation_kernel_generator(const OmegaPathSpec& S,
                                                            const std::optional<FinPath>& alpha) {
    const Graph& g = S.graph();
    if (S.kind() == OmegaKind::Sink) {
        if (!alpha || alpha->empty()) return std::nullopt;
        AlgebraElement a = AlgebraElement::real_path(*alpha);
        return multiply(a, a.star()) - AlgebraElement::vertex(g, alpha->src());
    }
    const FinPath& c = S.cycle();
    AlgebraElement body = AlgebraElement::real_path(c);
    VertexId u = c.src();
    if (alpha && !alpha->empty()) {
        AlgebraElement a = AlgebraElement::real_path(*alpha);
        body = multiply(multiply(a, body), a.star());
        u = alpha->src();
    }
    return body - AlgebraElement::vertex(g, u);
}

} // namespace

ResolutionReport resolution(const OmegaPathSpec& S_in, const std::optional<FinPath>& generator,
                            std::optional<std::size_t> horizon) {
    OmegaPathSpec S = canonicalize(S_in);
    const Graph& g = S.graph();
    ResolutionReport out{};

    switch (S.kind()) {
        case OmegaKind::Sink: {
            presentation_path(S, generator); // validates the generator
            out.module_type = ModuleType::Sink;
            out.presentation_vertex = generator ? generator->src() : S.sink_vertex();
            out.kernel_generator = presentation_kernel_generator(S, generator);
            out.finitely_presented = true;
            out.projective = true;
            out.projective_dimension = 0;
            return out;
        }
        case OmegaKind::Rational: {
            presentation_path(S, generator);
            out.module_type = ModuleType::Rational;
            out.presentation_vertex = generator ? generator->src() : S.cycle().src();
            out.kernel_generator = presentation_kernel_generator(S, generator);
            out.finitely_presented = true;
            out.projective = false;
            out.projective_dimension = 1;
            return out;
        }
        case OmegaKind::Irrational:
            break;
    }

    if (generator) throw DomainError("irrational presentations take no generator path");
    out.module_type = ModuleType::Irrational;
    out.presentation_vertex = S.source();
    out.horizon = horizon.value_or(S.prefix().length() + 2 * S.recurrent().size());
    for (std::size_t i = 0; i <= out.horizon; ++i) {
        std::vector<EdgeId> head;
        for (std::size_t j = 0; j < i; ++j) head.push_back(*word_edge_at(S, j));
        FinPath p_i = head.empty() ? FinPath(g, S.source()) : FinPath(g, head);
        EdgeId next = *word_edge_at(S, i);
        KernelFamilyEntry entry{i, p_i, {}, {}};
        for (EdgeId f : g.out_edges(g.src(next))) {
            if (f == next) continue;
            entry.exit_edges.push_back(f);
            entry.generators.push_back(
                AlgebraElement::ghost_path(p_i + FinPath(g, std::vector<EdgeId>{f})));
        }
        out.kernel_family.push_back(std::move(entry));
    }
    out.family_infinite = true;
    IrrationalTail tail(g, S.recurrent());
    out.family_witness = tail.anchor();
    out.finitely_presented = false;
    out.projective = false;
    out.projective_dimension = 1;
    return out;
}

namespace {

/// Factor r with q == r . (c - v), for q supported on the column of
/// v = s(c) and killed by right multiplication onto the cyclic path.
/// Follows the constructive kernel description: absorb the monomials some
/// power of c kills, replace ghost tails c_i^* (c^*)^n by the real
/// completions d_i, then cancel within groups of equal action.
AlgebraElement rational_kernel_factor(const AlgebraElement& q, const FinPath& c) {
    const Graph& g = q.graph();
    AlgebraElement factor = AlgebraElement::zero(g);
    std::vector<std::pair<FinPath, Scalar>> residue;

    for (const auto& [mu, k] : q.terms()) {
        MonomialClass cls = classify_monomial(mu, c);
        if (const auto* s1 = std::get_if<S1Class>(&cls)) {
            // mu . c^N = 0, so mu = -mu (c^N - v) = [-mu (v + ... + c^{N-1})](c - v).
            AlgebraElement head =
                multiply(AlgebraElement::monomial(mu), cycle_geometric_sum(c, s1->nilpotency));
            factor = factor - head.scaled(k);
            continue;
        }
        const auto& s2 = std::get<S2Class>(cls);
        // mu = alpha c_i^* (c^*)^n; its action agrees with the real path
        // alpha d_i, and the difference factors through c - v.
        FinPath d_i = c.suffix_from(s2.i);
        FinPath x = s2.alpha + d_i;
        AlgebraElement mu_el = AlgebraElement::monomial(mu);
        AlgebraElement r1 = multiply(mu_el, cycle_geometric_sum(c, s2.n));
        AlgebraElement r2 =
            multiply(AlgebraElement::real_path(s2.alpha), AlgebraElement::ghost_path(c.prefix(s2.i)));
        factor = factor - (r1 + r2).scaled(k);
        residue.emplace_back(std::move(x), k);
    }

    // Group the residual real paths by their action on the cyclic path;
    // within each group coefficients cancel and the paths differ by cycle
    // powers, which telescope through c - v.
    std::map<OmegaPathSpec, std::vector<std::pair<FinPath, Scalar>>> groups;
    for (auto& [x, k] : residue)
        groups[canonicalize(OmegaPathSpec::lasso(x, c))].emplace_back(std::move(x), k);
    for (auto& [spec, members] : groups) {
        Scalar sum(0);
        for (const auto& [x, k] : members) sum += k;
        if (sum != 0) throw std::logic_error("kernel residue does not cancel");
        const FinPath* shortest = &members.front().first;
        for (const auto& [x, k] : members)
            if (x.length() < shortest->length()) shortest = &x;
        for (const auto& [x, k] : members) {
            if (x.length() == shortest->length()) continue;
            std::size_t diff = x.length() - shortest->length();
            if (diff % c.length() != 0 || !(x == *shortest + c.repeated(diff / c.length())))
                throw std::logic_error("grouped paths do not differ by cycle powers");
            factor = factor + multiply(AlgebraElement::real_path(*shortest),
                                       cycle_geometric_sum(c, diff / c.length()))
                                  .scaled(k);
        }
    }
    return factor;
}

} // namespace

KernelMembership kernel_membership(const AlgebraElement& lam, const OmegaPathSpec& S_in,
                                   const std::optional<FinPath>& generator) {
    OmegaPathSpec S = canonicalize(S_in);
    if (S.kind() == OmegaKind::Irrational)
        throw DomainError("membership certificates cover sink and rational classes");
    const Graph& g = S.graph();
    OmegaPathSpec target = presentation_path(S, generator);
    if (!act(lam, ChenElement::basis(target)).is_zero()) return {false, std::nullopt, std::nullopt};

    const VertexId u = generator ? generator->src()
                                 : (S.kind() == OmegaKind::Sink ? S.sink_vertex() : S.cycle().src());
    AlgebraElement column = multiply(lam, AlgebraElement::vertex(g, u));
    AlgebraElement complement = lam - column;

    if (S.kind() == OmegaKind::Sink && (!generator || generator->empty())) {
        // The presentation map is injective on the column, so membership
        // forces the column to vanish.
        if (!column.is_zero()) throw std::logic_error("nonzero kernel column at a sink anchor");
        return {true, AlgebraElement::zero(g), complement};
    }

    AlgebraElement factor = AlgebraElement::zero(g);
    if (S.kind() == OmegaKind::Rational && (!generator || generator->empty())) {
        factor = rational_kernel_factor(column, S.cycle());
    } else {
        // q alpha lands in the kernel over the cycle source; expand q along
        // alpha and push every summand through the conjugated generator.
        const FinPath& alpha = *generator;
        AlgebraElement q = column;
        AlgebraElement x = multiply(q, AlgebraElement::real_path(alpha));
        AlgebraElement r = S.kind() == OmegaKind::Rational
                               ? rational_kernel_factor(x, S.cycle())
                               : AlgebraElement::zero(g);
        if (S.kind() == OmegaKind::Sink && !x.is_zero())
            throw std::logic_error("sink column survived the presentation map");
        factor = multiply(r, AlgebraElement::ghost_path(alpha));
        for (std::size_t i = 0; i < alpha.length(); ++i) {
            FinPath head = alpha.prefix(i);
            AlgebraElement piece = multiply(q, AlgebraElement::real_path(head));
            piece = multiply(piece, f_sum(g, alpha, i));
            piece = multiply(piece, AlgebraElement::ghost_path(head));
            factor = factor - piece;
        }
    }

    auto kernel_gen = presentation_kernel_generator(S, generator);
    if (!kernel_gen) throw std::logic_error("missing kernel generator");
    if (!(multiply(factor, *kernel_gen) == column))
        throw std::logic_error("kernel factorization failed verification");
    return {true, factor, complement};
}

FinitePresentation is_finitely_presented(const OmegaPathSpec& S_in) {
    OmegaPathSpec S = canonicalize(S_in);
    const Graph& g = S.graph();
    switch (S.kind()) {
        case OmegaKind::Sink:
            return {true, "projective: the module is the vertex ideal of the sink", std::nullopt,
                    std::nullopt};
        case OmegaKind::Rational: {
            auto gen = presentation_kernel_generator(S, std::nullopt);
            return {true, "kernel of the presentation is generated by one element", gen,
                    std::nullopt};
        }
        case OmegaKind::Irrational: {
            IrrationalTail tail(g, S.recurrent());
            return {false,
                    "every pass through the branching recurrent vertex '" +
                        g.vertex_name(tail.anchor()) +
                        "' contributes a fresh kernel block, so the kernel is not finitely "
                        "generated",
                    std::nullopt, tail.anchor()};
        }
    }
    throw DomainError("unreachable");
}

ExtDim ext_dim(const OmegaPathSpec& S_in, const OmegaPathSpec& T_in) {
    OmegaPathSpec S = canonicalize(S_in);
    OmegaPathSpec T = canonicalize(T_in);
    if (&S.graph() != &T.graph()) throw DomainError("specs over different graphs");
    const Graph& g = S.graph();

    switch (S.kind()) {
        case OmegaKind::Sink:
            return {ExtKind::Zero, 0, {}, false, "Extforsinks"};
        case OmegaKind::Rational: {
            const FinPath& d = S.cycle();
            auto uset = u_set(T);
            if (!std::binary_search(uset.begin(), uset.end(), d.src()))
                return {ExtKind::Zero, 0, {}, false, "Ext(ST)Srational"};
            Cardinality card = l_cardinality(d, T);
            if (tail_equivalent(S, T)) {
                if (card.kind == CardKind::Empty)
                    return {ExtKind::Finite, 1, {}, true, "dimExtSTprop(2)"};
                if (card.kind == CardKind::Finite)
                    throw std::logic_error("nonempty self L-set must be infinite");
                return {ExtKind::CountablyInfinite, 0, {}, true, "dimExtSTprop(2)"};
            }
            if (card.kind == CardKind::Empty)
                throw std::logic_error("empty L-set although s(d) lies in U(T)");
            if (card.kind == CardKind::CountablyInfinite)
                return {ExtKind::CountablyInfinite, 0, {}, false, "dimExtSTprop(1)"};
            ExtDim out{ExtKind::Finite, card.count, {}, false, "dimExtSTprop(1)"};
            out.witnesses = l_set_enumerate(d, T, card.horizon);
            if (out.witnesses.size() != card.count)
                throw std::logic_error("witness enumeration disagrees with the count");
            return out;
        }
        case OmegaKind::Irrational: {
            auto uset = u_set(T);
            bool nonzero = false;
            for (EdgeId e : S.recurrent())
                for (EdgeId f : g.out_edges(g.src(e)))
                    if (f != e && std::binary_search(uset.begin(), uset.end(), g.rng(f)))
                        nonzero = true;
            if (!nonzero) return {ExtKind::Zero, 0, {}, false, "Ext(ST)Sirrational"};
            return {ExtKind::CountablyInfinite, 0, {}, false, "Ext(ST)Sirrational"};
        }
    }
    throw DomainError("unreachable");
}

UniserialReport uniserial_report(const OmegaPathSpec& S, std::size_t n) {
    ExtDim self = ext_dim(S, S);
    UniserialReport out{self.kind != ExtKind::Zero, n, "", self};
    if (!out.exists) {
        out.rule = "Extforsinks";
    } else if (canonicalize(S).kind() == OmegaKind::Rational) {
        out.rule = "cor:Ext1VdVd+cor:uniserialoflengthN";
    } else {
        out.rule = "cor:uniserialoflengthN";
    }
    return out;
}

} // namespace lpa
