#ifndef LPA_TEXTIO_HPP
#define LPA_TEXTIO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <lpa/chen.hpp>

namespace lpa::textio {

/// Input error with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + msg),
          line_(line),
          col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

/// "lpa-graph v1" documents: one vertex or edge declaration per line.
Graph parse_graph(std::string_view text);
std::string print_graph(const Graph& g);

struct ParsedExpr {
    AlgebraElement element;
    /// One entry per term whose factor product collapsed to zero.
    std::vector<std::string> warnings;
};

/// expr := '-'? term (('+'|'-') term)*
/// term := rational? factor+ ; factor := ident '*'? ; rational := int ('/' int)?
/// Juxtaposition multiplies; an undeclared identifier run is split into the
/// longest declared pieces.
ParsedExpr parse_expr(const Graph& g, std::string_view text);
std::string print_element(const AlgebraElement& a);
std::string print_monomial(const Monomial& m);

/// ident sequence naming edges, or a single vertex name for a length-0 path.
FinPath parse_path(const Graph& g, std::string_view text);
std::string print_path(const FinPath& p);

/// "sink: <path>? -> <vertex>" | "rat: <path>? (<path>)^inf"
/// | "irr: <path>? | {edge, edge, ...}". Not canonicalized.
OmegaPathSpec parse_path_spec(const Graph& g, std::string_view text);
std::string print_path_spec(const OmegaPathSpec& spec);

/// celem := '-'? cterm (('+'|'-') cterm)* ; cterm := rational? '[' spec ']'
ChenElement parse_chen_element(const Graph& g, std::string_view text);
std::string print_chen_element(const ChenElement& t);

} // namespace lpa::textio

#endif
