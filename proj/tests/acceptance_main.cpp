#include "holosym/acceptance.hpp"

#include <algorithm>
#include <iostream>

int main() {
  const auto results =
      holosym::run_acceptance({}, [](const holosym::CriterionResult &r) { std::cout << holosym::format_result(r) << std::endl; });
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto &r) { return !r.passed; });
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
