#pragma once

#include "msl/enumerate.hpp"
#include "msl/matroid.hpp"

#include <functional>
#include <memory>
#include <string>

namespace msl {

struct Arrival {
    int element = -1;
    double weight = 0.0;
    double priority = 0.0;  // tie-break; comparisons are (weight, priority) lexicographic
};

/// Is (w1,p1) strictly better than (w2,p2)?
inline bool wp_greater(double w1, double p1, double w2, double p2) {
    return w1 > w2 || (w1 == w2 && p1 > p2);
}

/// The internal randomness of an algorithm, declared so exact evaluation can
/// enumerate it. count == 0 means undeclared (exact evaluation unsupported);
/// a null prob means all outcomes are equally likely.
struct CoinSpace {
    std::uint64_t count = 1;
    std::function<double(std::uint64_t)> prob;

    bool declared() const { return count > 0; }
    double probability(std::uint64_t outcome) const;

    static CoinSpace deterministic() { return CoinSpace{}; }
    static CoinSpace undeclared() { return CoinSpace{0, nullptr}; }
    static CoinSpace uniform(std::uint64_t k) { return CoinSpace{k, nullptr}; }
    /// Two outcomes: 0 with probability p0, 1 with probability 1 - p0.
    static CoinSpace bernoulli(double p0);
    /// Outer x inner; outcome decodes as (i / inner.count, i % inner.count).
    static CoinSpace product(const CoinSpace& outer, const CoinSpace& inner);
};

/// A resettable online decision state machine bound to a ground set of known
/// size. The harness feeds each element exactly once; a true return accepts
/// it irrevocably. Algorithms may know their matroid upfront but never see
/// future weights or the arrival order.
class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;

    virtual int ground_size() const = 0;
    virtual std::string name() const = 0;
    virtual CoinSpace coin_space() const { return CoinSpace::deterministic(); }

    /// Fresh state with coins drawn from rng (Monte Carlo mode).
    virtual void reset_random(Rng& rng) = 0;

    /// Fresh state with the given coin outcome (exact mode). The default is
    /// only valid for deterministic algorithms.
    virtual void reset_exact(std::uint64_t outcome);

    virtual bool on_arrival(const Arrival& a) = 0;
};

struct ArrivalStream {
    std::vector<Arrival> arrivals;
};

/// Uniform random order with i.i.d. uniform (0,1] priorities.
ArrivalStream make_random_stream(const Weighting& w, Rng& rng);

/// Stream for an explicit permutation; priorities are the element ids
/// (the deterministic tie-break convention used in exact mode).
ArrivalStream make_stream_for_permutation(const std::vector<int>& perm, const Weighting& w);

struct SimulationResult {
    ElemSet accepted;
    std::uint64_t violations = 0;
};

/// Runs one stream. Independence in `check` is asserted after every accept;
/// an accept that would break it is counted and force-rejected (or throws
/// when throw_on_violation is set).
SimulationResult simulate(OnlineAlgorithm& alg, const Matroid& check, const ArrivalStream& stream,
                          bool throw_on_violation = false);

struct EvalReport {
    double expected_weight = 0.0;
    double opt_value = 0.0;
    double ratio = 1.0;       // opt / expected; 1 when both are zero
    double std_error = 0.0;   // 0 for exact evaluation
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    bool exact = false;
};

double report_ratio(double opt, double expected);

using StreamObserver = std::function<void(const SimulationResult&, const ArrivalStream&)>;

/// Exact evaluation refuses ground sets larger than this (|E|! blow-up).
inline constexpr int kMaxExactGround = 8;

/// Average over all |E|! orders and all declared coin outcomes.
EvalReport evaluate_exact(OnlineAlgorithm& alg, MatroidPtr m, const Weighting& w,
                          const StreamObserver& observer = {});

/// Mean and standard error over independent trials; fresh permutation and
/// coins per trial, derived from per-trial substreams of `seed`.
EvalReport evaluate_monte_carlo(OnlineAlgorithm& alg, MatroidPtr m, const Weighting& w,
                                std::uint64_t trials, std::uint64_t seed,
                                const StreamObserver& observer = {});

/// opt(M, w): weight of a maximum-weight basis.
double opt_weight(const Matroid& m, const Weighting& w);

}  // namespace msl
