#ifndef FKG_ERRORS_HPP
#define FKG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fkg {

// Invalid arguments, mismatched grids, malformed configuration.
// The CLI maps this to exit code 2.
class invalid_config : public std::invalid_argument {
public:
    explicit invalid_config(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical validity guard tripped: insufficient truncation, an
// ill-conditioned solve, a NaN in a time trace. Carries a diagnostic value
// (condition estimate, step index, ...) when one is available.
// The CLI maps this to exit code 3.
class numerical_guard : public std::runtime_error {
public:
    explicit numerical_guard(const std::string& what, double diagnostic = 0.0)
        : std::runtime_error(what), diagnostic_(diagnostic) {}
    double diagnostic() const { return diagnostic_; }

private:
    double diagnostic_;
};

} // namespace fkg

#endif
