#ifndef EIT_ERRORS_HPP
#define EIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eit {

// Bad parameters, grids that cannot represent the requested pulse, etc.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Singular matrices, poles on the frequency grid, overflow.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eit

#endif
