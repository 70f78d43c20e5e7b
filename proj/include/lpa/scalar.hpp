#ifndef LPA_SCALAR_HPP
#define LPA_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lpa {

/// Exact rational coefficients. All arithmetic in the library is exact;
/// there are no floating point values anywhere.
using Scalar = boost::multiprecision::cpp_rational;

/// Raised when an operation is given arguments outside its domain
/// (unknown ids, malformed specs, violated preconditions).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a module-action probe would need edges of an infinite path
/// beyond the finitely determined region of its representation.
class UndeterminedProbe : public DomainError {
public:
    explicit UndeterminedProbe(const std::string& what) : DomainError(what) {}
};

inline std::string scalar_to_string(const Scalar& k) {
    if (denominator(k) == 1) return numerator(k).str();
    return numerator(k).str() + "/" + denominator(k).str();
}

} // namespace lpa

#endif
