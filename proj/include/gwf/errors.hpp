#ifndef GWF_ERRORS_HPP
#define GWF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gwf {

// Bad or missing configuration / invalid argument. CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A numeric guard tripped (aliasing, overflow, non-convergence). CLI exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested value outside the usable range of a tabulated quantity.
struct range_error : std::runtime_error {
    double max_usable;
    range_error(const std::string& what, double max_usable_)
        : std::runtime_error(what), max_usable(max_usable_) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gwf

#endif
