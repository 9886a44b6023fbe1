#include <cstdlib>
#include <iostream>

#include "affschur/acceptance.hpp"

int main(int argc, char** argv) {
    affschur::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
    bool ok = true;
    affschur::run_acceptance(opt, [&](const affschur::CriterionResult& c) {
        std::cout << affschur::format_criterion(c) << std::endl;
        ok = ok && c.passed;
    });
    return ok ? 0 : 1;
}
