#pragma once

#include "msl/online.hpp"

#include <memory>
#include <string>

namespace msl {

/// floor(n / e), the classical sample size.
int default_sample_size(int n);

/// Exact probability that the classical secretary algorithm with sample size
/// t on n distinct-weight elements selects the best one:
/// (t/n) * sum_{j=t+1}^{n} 1/(j-1), and 1/n for t = 0.
double classical_success_probability(int n, int t);

/// Rejects the first `sample` arrivals, then accepts the first arrival
/// strictly better (weight, priority) than the best sampled. At most one
/// element is ever accepted. Ground-set agnostic.
std::unique_ptr<OnlineAlgorithm> classical_secretary(int n, int sample);
std::unique_ptr<OnlineAlgorithm> classical_secretary(int n);

/// RB: pre-draws a uniformly random basis and selects exactly its elements,
/// ignoring weights. Declares its coin space (the list of bases) when the
/// ground set is within the enumeration cap.
std::unique_ptr<OnlineAlgorithm> random_basis(MatroidPtr m, int exact_cap = kEnumerationCap,
                                              int sample_attempts = kDefaultBasisAttempts);

/// Kleinberg's multiple-choice secretary algorithm for U_{r,n}: recursive
/// halving with rank floor(r/2) on a Binomial(n,1/2) prefix, then greedy
/// acceptance above the floor(r/2)-th largest sampled weight, up to r picks
/// in total. Exact evaluation is unsupported (binomial splits are not a
/// declared coin space). A budget at least as large as its segment accepts
/// everything.
std::unique_ptr<OnlineAlgorithm> kleinberg_uni(int r, int n);

/// PAV: runs UNI with rank r(M)-1, so the output is independent in the
/// truncation T(M) and hence in M when M is paving. Paving-ness is verified
/// via circuit enumeration when the ground set is small enough; larger
/// matroids are trusted to the constructor.
std::unique_ptr<OnlineAlgorithm> pav(MatroidPtr m, int verify_cap = kEnumerationCap);

/// Baseline leaf: observes the first floor(rho*n) arrivals, sets the
/// threshold to the best sampled (weight, priority), then greedily accepts
/// anything above it that keeps the accepted set independent. rho = 0 means
/// greedy from the start.
std::unique_ptr<OnlineAlgorithm> threshold_greedy(MatroidPtr m, double rho);

/// Parses a CLI algorithm spec: classical | classical[s] | rb | uni | uni[r]
/// | pav | tgreedy | tgreedy[rho].
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec, MatroidPtr m);

}  // namespace msl
