#include <iostream>

#include "frobforge/selftest.hpp"

int main() {
    const auto results = frobforge::selftest::run_all();
    frobforge::selftest::print(std::cout, results);
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}
