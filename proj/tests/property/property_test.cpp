#include <doctest.h>

#include <chrono>
#include <iostream>

#include "properties.hpp"

TEST_CASE("randomized property suites") {
  for (const auto& suite : props::suites()) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = suite.run(props::kDefaultSeed, props::kDefaultCases);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::cout << suite.name << ": " << r.cases << " cases, " << r.failures << " failures, "
              << took.count() << " s\n";
    INFO(r.name, ": first failure: ", r.first_failure);
    CHECK(r.cases >= props::kDefaultCases);
    CHECK(r.failures == 0);
  }
}
