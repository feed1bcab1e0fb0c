// One line per criterion; non-zero exit if any criterion fails.
#include <iostream>

#include "qap/acceptance.hpp"

int main() {
    bool all = true;
    for (const auto& r : qap::run_acceptance(qap::RunConfig{})) {
        std::cout << qap::format_result(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
