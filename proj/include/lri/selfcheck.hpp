#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lri/daniell.hpp"
#include "lri/formal_sum.hpp"
#include "lri/gauge.hpp"
#include "lri/integral.hpp"
#include "lri/measure.hpp"

namespace lri::selfcheck {

using Rng = std::mt19937_64;

// Grid-aligned generators: rationals with small denominators so every
// comparison in the suites is exact and fast.
Rat rand_rat(Rng& rng, int num_lo, int num_hi, int den_hi);
Rat rand_coeff(Rng& rng);  // (0, 10] ∩ Q, denominators up to 8
Interval rand_interval(Rng& rng, int lo = -8, int hi = 8, int den = 4);
RealMeasure rand_measure(Rng& rng);
StepProfile rand_step_profile(Rng& rng, bool nonneg);
FormalSum rand_nonneg_fsum(Rng& rng, std::size_t max_terms);
FormalSum rand_signed_fsum(Rng& rng, std::size_t max_terms);

// A random finite decomposition (interleaved coefficient and set splits)
// with the composite witness back to the original term list.
struct TrackedDecomposition {
  FormalSum sum;
  DecompositionWitness to_origin;
};
TrackedDecomposition rand_decomposition(Rng& rng, const FormalSum& c,
                                        std::size_t stages);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  bool pass = true;
  std::string detail;
};

SuiteResult suite_procedure1_colors(Rng& rng, std::size_t cases);
SuiteResult suite_procedure1_lifts(Rng& rng, std::size_t cases);
SuiteResult suite_decomposition_invariance(Rng& rng, std::size_t cases);
SuiteResult suite_comparison(Rng& rng, std::size_t cases);
SuiteResult suite_jordan(Rng& rng, std::size_t cases);
SuiteResult suite_semivariation(Rng& rng, std::size_t cases);
SuiteResult suite_gauge_exactness(Rng& rng, std::size_t cases);
SuiteResult suite_minmax(Rng& rng, std::size_t cases);
SuiteResult suite_procedure2(Rng& rng, std::size_t cases);

// Every suite at the given case count, fixed seed.
std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t cases);

}  // namespace lri::selfcheck
