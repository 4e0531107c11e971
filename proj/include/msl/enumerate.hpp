#pragma once

#include "msl/matroid.hpp"

#include <boost/rational.hpp>

#include <functional>
#include <vector>

namespace msl {

/// Exhaustive subset scans refuse ground sets larger than this.
inline constexpr int kEnumerationCap = 20;

/// Rejection sampling gives up after this many attempts.
inline constexpr int kDefaultBasisAttempts = 1000000;

using Rational = boost::rational<long long>;

/// All bases, by subset scan. ResourceError if |E| exceeds the cap.
std::vector<ElemSet> enumerate_bases(const Matroid& m, int cap = kEnumerationCap);

/// All circuits (minimal dependent sets). ResourceError on cap.
std::vector<ElemSet> enumerate_circuits(const Matroid& m, int cap = kEnumerationCap);

/// True iff every circuit has size >= r(M).
bool is_paving(const Matroid& m, int cap = kEnumerationCap);

/// gamma*(M) = max over nonempty X in si(M) with r(X) >= 1 of |X| / r(X).
/// Returns 0 for matroids whose simplification is empty.
Rational density(MatroidPtr m, int cap = kEnumerationCap);

/// A maximum-weight basis by the greedy algorithm on descending weight.
/// Zero-weight elements may be included; the weight is opt(M,w).
ElemSet max_weight_basis(const Matroid& m, const Weighting& w);

/// A uniformly random basis by rejection sampling of r-sets.
/// ResourceError once max_attempts rejections occur (never silently biased).
ElemSet sample_random_basis(const Matroid& m, Rng& rng, int max_attempts = kDefaultBasisAttempts);

/// Do two matroids have identical rank functions? Exhaustive; cap applies.
bool ranks_equal(const Matroid& a, const Matroid& b, int cap = kEnumerationCap);

/// Calls fn on every subset of {0,...,n-1}. ResourceError if n > cap.
void for_each_subset(int n, int cap, const std::function<void(const ElemSet&)>& fn);

void check_weighting(const Weighting& w, int n);

}  // namespace msl
