#pragma once

#include <string>
#include <vector>

namespace kqcoop {

struct SuiteResult {
    std::string name;
    bool pass = true;
    size_t checks = 0;
    std::vector<std::string> failures;  // each names the tridegree or object involved
};

// linalg, steenrod, comodule, ext, kq, cli
const std::vector<std::string>& suite_names();
// "all" runs every suite; throws std::invalid_argument for an unknown name
std::vector<SuiteResult> run_suites(const std::string& which);

}  // namespace kqcoop
