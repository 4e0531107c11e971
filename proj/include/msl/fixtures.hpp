#pragma once

#include "msl/combinators.hpp"
#include "msl/online.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace msl {

// Small named matroids used across the test and experiment suites.

MatroidPtr fixture_k4();                  // M(K_4): 6 edges 01,02,12,03,13,23
MatroidPtr fixture_u24();                 // U_{2,4}
MatroidPtr fixture_sp_small();            // sparse paving r=3, n=6, one circuit-hyperplane {0,1,2}
MatroidPtr fixture_direct_sum_pair();     // U_{1,2} (+) U_{1,2}
MatroidPtr fixture_four_cycle();          // graphic 4-cycle 01,12,23,30
/// Five edges on three vertices with a three-edge parallel class {0,1,2}
/// between vertices 0 and 1, plus 12 and 02. Used as the lift ambient L
/// with x = 0.
MatroidPtr fixture_graphic_parallel5();

/// Distinct positive weights in (0,1], reproducible under seed.
Weighting fixture_weights(int n, std::uint64_t seed);

/// A (matroid, weights, algorithm) triple for the soundness suite.
struct SoundnessCase {
    std::string name;
    MatroidPtr matroid;  // evaluation matroid (independence is checked here)
    Weighting weights;
    std::function<std::unique_ptr<OnlineAlgorithm>()> make;
    bool exhaustive = false;  // run via evaluate_exact; otherwise Monte Carlo
};

/// Every leaf algorithm and every wrapper over the built-in fixtures;
/// exhaustive cases have at most 8 elements and declared coin spaces.
std::vector<SoundnessCase> soundness_cases(std::uint64_t seed);

/// One wrapper-transform check of the ratio ledger: the wrapped algorithm's
/// measured ratio must satisfy bound_of(c) where c is the worst measured
/// ratio among the inner baselines, one-sided at 3 standard errors.
struct LedgerCase {
    struct Inner {
        MatroidPtr matroid;
        Weighting weights;
        std::function<std::unique_ptr<OnlineAlgorithm>()> make;
    };

    std::string name;
    std::string wrapper;  // restrict | lift | project | perturb | multiproject | tree
    std::vector<Inner> inners;  // leaf baselines; c = max of their measured ratios
    MatroidPtr outer_matroid;
    Weighting outer_weights;
    std::function<std::unique_ptr<OnlineAlgorithm>()> make_outer;
    std::function<double(double)> bound_of;
    std::string bound_description;
};

std::vector<LedgerCase> ledger_cases(std::uint64_t seed);

}  // namespace msl
