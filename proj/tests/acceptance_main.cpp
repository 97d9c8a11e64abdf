// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <hk/acceptance.hpp>

#include <iostream>

int main() {
    bool all = true;
    hk::acceptance::run_all([&](const hk::acceptance::CriterionResult& r) {
        std::cout << hk::acceptance::format(r) << std::endl;
        all = all && r.passed;
    });
    std::cout << (all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << std::endl;
    return all ? 0 : 1;
}
