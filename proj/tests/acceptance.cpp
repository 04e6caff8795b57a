#include <iostream>

#include "modbgg/verify.hpp"

int main() {
    const auto results = modbgg::verify::run_all();
    int failed = 0;
    for (const auto& r : results) {
        std::cout << modbgg::verify::format_line(r) << "\n";
        if (!r.passed) ++failed;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " acceptance criteria pass\n";
    return failed == 0 ? 0 : 1;
}
