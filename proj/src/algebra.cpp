#include <lpa/algebra.hpp>

#include <algorithm>
#include <random>

namespace lpa {

Monomial::Monomial(FinPath alpha, FinPath beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (&alpha_.graph() != &beta_.graph())
        throw DomainError("monomial paths over different graphs");
    if (alpha_.rng() != beta_.rng())
        throw DomainError("monomial paths must share their range vertex");
}

bool Monomial::operator==(const Monomial& other) const {
    return alpha_ == other.alpha_ && beta_ == other.beta_;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    auto total = alpha_.length() + beta_.length();
    auto other_total = other.alpha_.length() + other.beta_.length();
    if (auto c = total <=> other_total; c != 0) return c;
    if (auto c = alpha_.edges() <=> other.alpha_.edges(); c != 0) return c;
    if (auto c = beta_.edges() <=> other.beta_.edges(); c != 0) return c;
    if (auto c = alpha_.src() <=> other.alpha_.src(); c != 0) return c;
    return beta_.src() <=> other.beta_.src();
}

namespace {

/// A monomial is in normal form unless alpha and beta both end in the
/// designated special edge of their common penultimate vertex.
bool is_basic(const Graph& g, const Monomial& m) {
    if (m.alpha().empty() || m.beta().empty()) return true;
    EdgeId e = m.alpha().edges().back();
    if (m.beta().edges().back() != e) return true;
    return g.special_edge(g.src(e)) != e;
}

/// One (CK2) rewrite of a non-basic monomial:
///   a'e (b'e)^*  ->  a'b'^*  -  sum_{f != e, s(f)=s(e)} (a'f)(b'f)^*.
void expand_step(const Graph& g, const Monomial& m, const Scalar& k,
                 std::vector<std::pair<Monomial, Scalar>>& out) {
    EdgeId e = m.alpha().edges().back();
    VertexId u = g.src(e);
    FinPath a = m.alpha().prefix(m.alpha().length() - 1);
    FinPath b = m.beta().prefix(m.beta().length() - 1);
    out.emplace_back(Monomial(a, b), k);
    for (EdgeId f : g.out_edges(u)) {
        if (f == e) continue;
        FinPath fp(g, std::vector<EdgeId>{f});
        out.emplace_back(Monomial(a + fp, b + fp), -k);
    }
}

} // namespace

AlgebraElement AlgebraElement::zero(const Graph& g) { return AlgebraElement(g); }

AlgebraElement AlgebraElement::vertex(const Graph& g, VertexId v) {
    FinPath p(g, v);
    return monomial(Monomial(p, p));
}

AlgebraElement AlgebraElement::one(const Graph& g) {
    AlgebraElement out(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) out = out + vertex(g, v);
    return out;
}

AlgebraElement AlgebraElement::real_path(const FinPath& p) {
    return monomial(Monomial(p, FinPath(p.graph(), p.rng())));
}

AlgebraElement AlgebraElement::ghost_path(const FinPath& p) {
    return monomial(Monomial(FinPath(p.graph(), p.rng()), p));
}

AlgebraElement AlgebraElement::monomial(const Monomial& m, Scalar k) {
    return from_terms(m.alpha().graph(), {{m, std::move(k)}});
}

AlgebraElement AlgebraElement::from_terms(const Graph& g,
                                          std::vector<std::pair<Monomial, Scalar>> terms,
                                          std::optional<std::uint64_t> shuffle_seed) {
    AlgebraElement out(g);
    std::optional<std::mt19937_64> rng;
    if (shuffle_seed) rng.emplace(*shuffle_seed);
    auto& work = terms;
    while (!work.empty()) {
        std::size_t pick = work.size() - 1;
        if (rng) pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng);
        std::swap(work[pick], work.back());
        auto [m, k] = std::move(work.back());
        work.pop_back();
        if (k == 0) continue;
        if (is_basic(g, m)) {
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                out.terms_.emplace(std::move(m), std::move(k));
            } else {
                it->second += k;
                if (it->second == 0) out.terms_.erase(it);
            }
        } else {
            expand_step(g, m, k, work);
        }
    }
    return out;
}

Scalar AlgebraElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
    if (graph_ != other.graph_) throw DomainError("elements over different graphs");
    AlgebraElement out(*this);
    for (const auto& [m, k] : other.terms_) {
        auto it = out.terms_.find(m);
        if (it == out.terms_.end()) {
            out.terms_.emplace(m, k);
        } else {
            it->second += k;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
    return *this + (-other);
}

AlgebraElement AlgebraElement::operator-() const { return scaled(Scalar(-1)); }

AlgebraElement AlgebraElement::scaled(const Scalar& k) const {
    AlgebraElement out(*graph_);
    if (k == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
    return out;
}

AlgebraElement AlgebraElement::star() const {
    std::vector<std::pair<Monomial, Scalar>> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, k] : terms_) terms.emplace_back(m.star(), k);
    return from_terms(*graph_, std::move(terms));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& other) const {
    return multiply(*this, other);
}

bool AlgebraElement::operator==(const AlgebraElement& other) const {
    return graph_ == other.graph_ && terms_ == other.terms_;
}

namespace {

/// Product of standard monomials: (a b^*)(c d^*) collapses by (CK1) to
/// (a c') d^* when c = b c', to a (d b')^* when b = c b', and to 0 otherwise.
std::optional<Monomial> monomial_product(const Monomial& x, const Monomial& y) {
    const FinPath& b = x.beta();
    const FinPath& c = y.alpha();
    if (b.length() <= c.length()) {
        if (c.prefix(b.length()) == b)
            return Monomial(x.alpha() + c.suffix_from(b.length()), y.beta());
        return std::nullopt;
    }
    if (b.prefix(c.length()) == c)
        return Monomial(x.alpha(), y.beta() + b.suffix_from(c.length()));
    return std::nullopt;
}

} // namespace

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    if (&a.graph() != &b.graph()) throw DomainError("elements over different graphs");
    std::vector<std::pair<Monomial, Scalar>> terms;
    for (const auto& [ma, ka] : a.terms())
        for (const auto& [mb, kb] : b.terms())
            if (auto m = monomial_product(ma, mb)) terms.emplace_back(*m, ka * kb);
    return AlgebraElement::from_terms(a.graph(), std::move(terms));
}

AlgebraElement f_sum(const Graph& g, const FinPath& beta, std::size_t i) {
    std::vector<std::pair<Monomial, Scalar>> terms;
    for (EdgeId f : exits(g, beta, i)) {
        FinPath fp(g, std::vector<EdgeId>{f});
        terms.emplace_back(Monomial(fp, fp), 1);
    }
    return AlgebraElement::from_terms(g, std::move(terms));
}

std::vector<AlgebraElement> solve_for_q_expansion(const AlgebraElement& q, const FinPath& alpha,
                                                  const AlgebraElement& x) {
    const Graph& g = q.graph();
    if (multiply(q, AlgebraElement::real_path(alpha)) != x)
        throw DomainError("hypothesis q . alpha == x fails");
    const std::size_t n = alpha.length();
    std::vector<AlgebraElement> parts;
    if (n == 0) {
        parts.push_back(multiply(x, AlgebraElement::vertex(g, alpha.src())));
        return parts;
    }
    parts.push_back(multiply(x, AlgebraElement::ghost_path(alpha)));
    for (std::size_t i = n - 1; i >= 1; --i) {
        FinPath head = alpha.prefix(i);
        AlgebraElement part = multiply(q, AlgebraElement::real_path(head));
        part = multiply(part, f_sum(g, alpha, i));
        part = multiply(part, AlgebraElement::ghost_path(head));
        parts.push_back(std::move(part));
    }
    parts.push_back(multiply(q, f_sum(g, alpha, 0)));
    return parts;
}

std::vector<AlgebraElement> annihilator_decomposition(const AlgebraElement& x,
                                                      const FinPath& beta) {
    const Graph& g = x.graph();
    if (multiply(x, AlgebraElement::vertex(g, beta.src())) != x)
        throw DomainError("x is not supported at s(beta)");
    if (!multiply(x, AlgebraElement::real_path(beta)).is_zero())
        throw DomainError("x . beta is nonzero");
    std::vector<AlgebraElement> parts;
    for (std::size_t i = 0; i < beta.length(); ++i) {
        FinPath head = beta.prefix(i);
        AlgebraElement part = AlgebraElement::zero(g);
        for (EdgeId f : exits(g, beta, i)) {
            FinPath fp(g, std::vector<EdgeId>{f});
            AlgebraElement piece = multiply(x, AlgebraElement::real_path(head + fp));
            piece = multiply(piece, AlgebraElement::ghost_path(fp));
            piece = multiply(piece, AlgebraElement::ghost_path(head));
            part = part + piece;
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

MonomialClass classify_monomial(const Monomial& mu, const FinPath& c) {
    const Graph& g = mu.alpha().graph();
    if (c.empty()) {
        // Stationary anchor at a sink.
        if (!g.is_sink(c.src())) throw DomainError("length-0 anchor must be a sink");
        if (mu.range_vertex() != c.src()) return S1Class{1};
        return S2Class{mu.alpha(), 0, 0};
    }
    if (!c.is_closed()) throw DomainError("classification needs a closed path or sink anchor");
    const std::size_t t = c.length();
    if (mu.range_vertex() != c.src()) return S1Class{1};
    const FinPath& beta = mu.beta();
    bool along_cycle = true;
    for (std::size_t j = 0; j < beta.length() && along_cycle; ++j)
        along_cycle = beta.edge(j) == c.edge(j % t);
    if (along_cycle) return S2Class{mu.alpha(), beta.length() % t, beta.length() / t};
    AlgebraElement power = AlgebraElement::monomial(mu);
    AlgebraElement step = AlgebraElement::real_path(c);
    std::size_t limit = beta.length() / t + 2;
    for (std::size_t n = 1; n <= limit; ++n) {
        power = multiply(power, step);
        if (power.is_zero()) return S1Class{n};
    }
    throw DomainError("monomial classification did not terminate");
}

} // namespace lpa
