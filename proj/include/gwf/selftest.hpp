#ifndef GWF_SELFTEST_HPP
#define GWF_SELFTEST_HPP

#include <string>
#include <vector>

namespace gwf {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance suite; one entry per criterion.
std::vector<CriterionResult> run_acceptance();

// Prints one pass/fail line per criterion to stdout; returns 0 when all
// criteria pass, 1 otherwise.
int acceptance_main();

} // namespace gwf

#endif
