#include <lpa/textio.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace lpa::textio {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

struct Token {
    enum Kind {
        Ident,
        Number,
        Star,
        Plus,
        Minus,
        Slash,
        LParen,
        RParen,
        Arrow,
        Pipe,
        LBrace,
        RBrace,
        LBracket,
        RBracket,
        Comma,
        Caret,
        End
    };
    Kind kind;
    std::string text;
    std::size_t col;    // 1-based
    std::size_t offset; // byte offset into the input
};

std::vector<Token> lex(std::string_view text, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::size_t start, std::size_t len) {
        out.push_back({k, std::string(text.substr(start, len)), start + 1, start});
    };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Token::Ident, i, j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Token::Number, i, j - i);
            i = j;
            continue;
        }
        switch (ch) {
            case '*': push(Token::Star, i, 1); break;
            case '+': push(Token::Plus, i, 1); break;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    push(Token::Arrow, i, 2);
                    ++i;
                } else {
                    push(Token::Minus, i, 1);
                }
                break;
            case '/': push(Token::Slash, i, 1); break;
            case '(': push(Token::LParen, i, 1); break;
            case ')': push(Token::RParen, i, 1); break;
            case '|': push(Token::Pipe, i, 1); break;
            case '{': push(Token::LBrace, i, 1); break;
            case '}': push(Token::RBrace, i, 1); break;
            case '[': push(Token::LBracket, i, 1); break;
            case ']': push(Token::RBracket, i, 1); break;
            case ',': push(Token::Comma, i, 1); break;
            case '^': push(Token::Caret, i, 1); break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", line, i + 1);
        }
        ++i;
    }
    out.push_back({Token::End, "", text.size() + 1, text.size()});
    return out;
}

/// Splits an identifier run into declared names, preferring long pieces.
bool segment_run(const Graph& g, const std::string& run, std::size_t pos,
                 std::vector<std::string>& out) {
    if (pos == run.size()) return true;
    for (std::size_t len = run.size() - pos; len >= 1; --len) {
        std::string piece = run.substr(pos, len);
        if (!g.has_symbol(piece)) continue;
        out.push_back(piece);
        if (segment_run(g, run, pos + len, out)) return true;
        out.pop_back();
    }
    return false;
}

std::vector<std::string> segment_or_throw(const Graph& g, const Token& tok, std::size_t line) {
    std::vector<std::string> pieces;
    if (!segment_run(g, tok.text, 0, pieces))
        throw ParseError("unknown identifier '" + tok.text + "'", line, tok.col);
    return pieces;
}

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    std::size_t line;
    const Token& peek() const { return toks[pos]; }
    Token next() { return toks[pos++]; }
    bool at(Token::Kind k) const { return toks[pos].kind == k; }
    Token expect(Token::Kind k, const std::string& what) {
        if (!at(k)) throw ParseError("expected " + what, line, peek().col);
        return next();
    }
};

Scalar parse_rational(Cursor& cur) {
    Token num = cur.expect(Token::Number, "a number");
    Scalar k = Scalar(boost::multiprecision::cpp_int(num.text));
    if (cur.at(Token::Slash)) {
        cur.next();
        Token den = cur.expect(Token::Number, "a denominator");
        Scalar d = Scalar(boost::multiprecision::cpp_int(den.text));
        if (d == 0) throw ParseError("zero denominator", cur.line, den.col);
        k /= d;
    }
    return k;
}

/// Edge-name sequence (with run splitting), or one vertex name. `stop`
/// tells where the path ends.
FinPath parse_path_tokens(const Graph& g, Cursor& cur, const std::vector<Token::Kind>& stop) {
    std::vector<std::string> names;
    std::size_t first_col = cur.peek().col;
    while (cur.at(Token::Ident)) {
        for (auto& piece : segment_or_throw(g, cur.peek(), cur.line)) names.push_back(piece);
        cur.next();
    }
    if (std::find(stop.begin(), stop.end(), cur.peek().kind) == stop.end())
        throw ParseError("unexpected token in path", cur.line, cur.peek().col);
    if (names.empty()) throw ParseError("expected a path", cur.line, first_col);
    if (names.size() == 1 && g.has_vertex(names[0])) return FinPath(g, g.vertex(names[0]));
    std::vector<EdgeId> edges;
    for (const auto& n : names) {
        if (!g.has_edge(n))
            throw ParseError("'" + n + "' is not an edge", cur.line, first_col);
        edges.push_back(g.edge(n));
    }
    return FinPath(g, edges);
}

} // namespace

Graph parse_graph(std::string_view text) {
    Graph::Builder builder;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "lpa-graph v1")
                throw ParseError("expected header 'lpa-graph v1'", line_no, 1);
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        try {
            if (word == "vertex") {
                std::string name;
                if (!(ls >> name)) throw ParseError("expected a vertex name", line_no, 8);
                std::string extra;
                if (ls >> extra) throw ParseError("trailing text after vertex name", line_no, 1);
                builder.vertex(name);
            } else if (word == "edge") {
                // edge NAME: SRC -> DST
                std::string rest = trim(line.substr(4));
                auto colon = rest.find(':');
                if (colon == std::string::npos)
                    throw ParseError("expected ':' in edge declaration", line_no, 5);
                std::string name = trim(rest.substr(0, colon));
                auto toks = lex(rest.substr(colon + 1), line_no);
                Cursor cur{toks, 0, line_no};
                Token src = cur.expect(Token::Ident, "a source vertex");
                cur.expect(Token::Arrow, "'->'");
                Token dst = cur.expect(Token::Ident, "a target vertex");
                cur.expect(Token::End, "end of line");
                if (name.empty()) throw ParseError("empty edge name", line_no, 5);
                builder.edge(name, src.text, dst.text);
            } else {
                throw ParseError("expected 'vertex' or 'edge'", line_no, 1);
            }
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no, 1);
        }
    }
    if (!header_seen) throw ParseError("empty document; expected 'lpa-graph v1'", 1, 1);
    return std::move(builder).build();
}

std::string print_graph(const Graph& g) {
    std::string out = "lpa-graph v1\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) out += "vertex " + g.vertex_name(v) + "\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out += "edge " + g.edge_name(e) + ": " + g.vertex_name(g.src(e)) + " -> " +
               g.vertex_name(g.rng(e)) + "\n";
    return out;
}

ParsedExpr parse_expr(const Graph& g, std::string_view text) {
    auto toks = lex(text, 1);
    Cursor cur{toks, 0, 1};
    AlgebraElement total = AlgebraElement::zero(g);
    std::vector<std::string> warnings;

    auto parse_term = [&](Scalar sign) {
        std::size_t term_col = cur.peek().col;
        Scalar k = sign;
        if (cur.at(Token::Number)) k *= parse_rational(cur);
        if (!cur.at(Token::Ident))
            throw ParseError("expected an identifier", cur.line, cur.peek().col);
        std::optional<AlgebraElement> product;
        while (cur.at(Token::Ident)) {
            auto pieces = segment_or_throw(g, cur.peek(), cur.line);
            cur.next();
            bool last_starred = cur.at(Token::Star);
            if (last_starred) cur.next();
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const std::string& name = pieces[i];
                bool starred = last_starred && i + 1 == pieces.size();
                AlgebraElement factor = AlgebraElement::zero(g);
                if (g.has_vertex(name)) {
                    factor = AlgebraElement::vertex(g, g.vertex(name));
                } else {
                    FinPath ep(g, std::vector<EdgeId>{g.edge(name)});
                    factor = starred ? AlgebraElement::ghost_path(ep)
                                     : AlgebraElement::real_path(ep);
                }
                product = product ? multiply(*product, factor) : factor;
            }
        }
        if (product->is_zero())
            warnings.push_back("term at column " + std::to_string(term_col) +
                               " multiplies to zero");
        total = total + product->scaled(k);
    };

    Scalar sign(1);
    if (cur.at(Token::Minus)) {
        cur.next();
        sign = -1;
    }
    parse_term(sign);
    while (!cur.at(Token::End)) {
        if (cur.at(Token::Plus)) {
            cur.next();
            parse_term(Scalar(1));
        } else if (cur.at(Token::Minus)) {
            cur.next();
            parse_term(Scalar(-1));
        } else {
            throw ParseError("expected '+' or '-'", cur.line, cur.peek().col);
        }
    }
    return {total, warnings};
}

std::string print_path(const FinPath& p) {
    if (p.empty()) return p.graph().vertex_name(p.src());
    std::string out;
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i > 0) out += " ";
        out += p.graph().edge_name(p.edge(i));
    }
    return out;
}

std::string print_monomial(const Monomial& m) {
    const Graph& g = m.alpha().graph();
    if (m.is_vertex()) return g.vertex_name(m.alpha().src());
    std::string out;
    for (std::size_t i = 0; i < m.alpha().length(); ++i) {
        if (!out.empty()) out += " ";
        out += g.edge_name(m.alpha().edge(i));
    }
    for (std::size_t i = m.beta().length(); i-- > 0;) {
        if (!out.empty()) out += " ";
        out += g.edge_name(m.beta().edge(i)) + "*";
    }
    return out;
}

std::string print_element(const AlgebraElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, k] : a.terms()) {
        Scalar mag = k < 0 ? Scalar(-k) : k;
        if (first) {
            if (k < 0) out += "-";
            first = false;
        } else {
            out += k < 0 ? " - " : " + ";
        }
        if (mag != 1) out += scalar_to_string(mag) + " ";
        out += print_monomial(m);
    }
    return out;
}

FinPath parse_path(const Graph& g, std::string_view text) {
    auto toks = lex(text, 1);
    Cursor cur{toks, 0, 1};
    FinPath p = parse_path_tokens(g, cur, {Token::End});
    cur.expect(Token::End, "end of input");
    return p;
}

OmegaPathSpec parse_path_spec(const Graph& g, std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("expected 'sink:', 'rat:' or 'irr:'", 1, 1);
    std::string head = trim(text.substr(0, colon));
    auto toks = lex(text.substr(colon + 1), 1);
    Cursor cur{toks, 0, 1};

    if (head == "sink") {
        std::optional<FinPath> prefix;
        if (!cur.at(Token::Arrow)) prefix = parse_path_tokens(g, cur, {Token::Arrow});
        cur.expect(Token::Arrow, "'->'");
        Token vtx = cur.expect(Token::Ident, "a sink vertex");
        cur.expect(Token::End, "end of input");
        VertexId w = g.vertex(vtx.text);
        if (!prefix) prefix = FinPath(g, w);
        return OmegaPathSpec::sink(*prefix);
    }
    if (head == "rat") {
        std::optional<FinPath> prefix;
        if (!cur.at(Token::LParen)) prefix = parse_path_tokens(g, cur, {Token::LParen});
        cur.expect(Token::LParen, "'('");
        FinPath cycle = parse_path_tokens(g, cur, {Token::RParen});
        cur.expect(Token::RParen, "')'");
        cur.expect(Token::Caret, "'^inf'");
        Token inf = cur.expect(Token::Ident, "'inf'");
        if (inf.text != "inf") throw ParseError("expected 'inf'", 1, inf.col);
        cur.expect(Token::End, "end of input");
        if (!prefix) prefix = FinPath(g, cycle.src());
        return OmegaPathSpec::lasso(*prefix, cycle);
    }
    if (head == "irr") {
        std::optional<FinPath> prefix;
        if (!cur.at(Token::Pipe)) prefix = parse_path_tokens(g, cur, {Token::Pipe});
        cur.expect(Token::Pipe, "'|'");
        cur.expect(Token::LBrace, "'{'");
        std::vector<EdgeId> recurrent;
        while (true) {
            Token name = cur.expect(Token::Ident, "an edge name");
            recurrent.push_back(g.edge(name.text));
            if (cur.at(Token::Comma)) {
                cur.next();
                continue;
            }
            break;
        }
        cur.expect(Token::RBrace, "'}'");
        cur.expect(Token::End, "end of input");
        if (!prefix) {
            auto check = validate_irrational(g, FinPath(g, g.src(recurrent.front())), recurrent);
            if (!check.ok) throw DomainError("invalid irrational spec: " + check.reason);
            IrrationalTail tail(g, recurrent);
            prefix = FinPath(g, tail.anchor());
        }
        return OmegaPathSpec::irrational(*prefix, recurrent);
    }
    throw ParseError("unknown path spec kind '" + head + "'", 1, 1);
}

std::string print_path_spec(const OmegaPathSpec& spec) {
    const Graph& g = spec.graph();
    switch (spec.kind()) {
        case OmegaKind::Sink: {
            std::string out = "sink: ";
            if (!spec.prefix().empty()) out += print_path(spec.prefix()) + " ";
            out += "-> " + g.vertex_name(spec.sink_vertex());
            return out;
        }
        case OmegaKind::Rational: {
            std::string out = "rat: ";
            if (!spec.prefix().empty()) out += print_path(spec.prefix()) + " ";
            out += "(" + print_path(spec.cycle()) + ")^inf";
            return out;
        }
        case OmegaKind::Irrational: {
            std::string out = "irr: " + print_path(spec.prefix()) + " | {";
            for (std::size_t i = 0; i < spec.recurrent().size(); ++i) {
                if (i > 0) out += ", ";
                out += g.edge_name(spec.recurrent()[i]);
            }
            out += "}";
            return out;
        }
    }
    throw DomainError("unreachable");
}

ChenElement parse_chen_element(const Graph& g, std::string_view text) {
    auto toks = lex(text, 1);
    Cursor cur{toks, 0, 1};
    std::vector<std::pair<OmegaPathSpec, Scalar>> terms;

    auto parse_cterm = [&](Scalar sign) {
        Scalar k = sign;
        if (cur.at(Token::Number)) k *= parse_rational(cur);
        Token open = cur.expect(Token::LBracket, "'['");
        // The spec text runs to the matching ']'.
        std::size_t depth = 1;
        std::size_t end = open.offset + 1;
        while (end < text.size() && depth > 0) {
            if (text[end] == '[') ++depth;
            if (text[end] == ']') --depth;
            ++end;
        }
        if (depth != 0) throw ParseError("unterminated '['", 1, open.col);
        std::string inner(text.substr(open.offset + 1, end - open.offset - 2));
        while (!cur.at(Token::RBracket)) cur.next();
        cur.next();
        terms.emplace_back(canonicalize(parse_path_spec(g, inner)), k);
    };

    Scalar sign(1);
    if (cur.at(Token::Minus)) {
        cur.next();
        sign = -1;
    }
    parse_cterm(sign);
    while (!cur.at(Token::End)) {
        if (cur.at(Token::Plus)) {
            cur.next();
            parse_cterm(Scalar(1));
        } else if (cur.at(Token::Minus)) {
            cur.next();
            parse_cterm(Scalar(-1));
        } else {
            throw ParseError("expected '+' or '-'", 1, cur.peek().col);
        }
    }

    ChenElement out = ChenElement::zero(terms.front().first);
    for (const auto& [spec, k] : terms) out = out.plus_term(spec, k);
    return out;
}

std::string print_chen_element(const ChenElement& t) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [spec, k] : t.terms()) {
        Scalar mag = k < 0 ? Scalar(-k) : k;
        if (first) {
            if (k < 0) out += "-";
            first = false;
        } else {
            out += k < 0 ? " - " : " + ";
        }
        if (mag != 1) out += scalar_to_string(mag) + " ";
        out += "[" + print_path_spec(spec) + "]";
    }
    return out;
}

} // namespace lpa::textio
