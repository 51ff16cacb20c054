#pragma once

#include "holosym/classify.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace holosym {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Treat a criterion that overruns its time budget as failed.
  bool enforce_budgets = true;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

/// Symmetric n x n matrix with entries in [-3, 3]; nonzero when requested.
ExactMatrix random_symmetric(std::mt19937_64 &rng, int n, bool nonzero);
/// Family whose first nonzero matrix is H2, H1, H0 or none for pattern 0..3.
MetricFamilyParams random_family(std::mt19937_64 &rng, int n, int pattern);
/// v-free H with at most four terms of total degree at most max_degree.
MetricSpec random_vfree_spec(std::mt19937_64 &rng, int n, int max_degree);
/// Polynomial in u of degree at most max_degree, possibly zero.
Poly random_u_poly(std::mt19937_64 &rng, int n, int max_degree);

/// Runs every criterion in order, reporting each one as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options,
                                            const std::function<void(const CriterionResult &)> &on_result = {});

/// One line: PASS or FAIL, id, title, detail and timing.
std::string format_result(const CriterionResult &r);

} // namespace holosym
