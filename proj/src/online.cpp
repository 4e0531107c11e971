#include "msl/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace msl {

double CoinSpace::probability(std::uint64_t outcome) const {
    if (!declared()) throw UnsupportedError("coin space is undeclared");
    if (outcome >= count) throw InputError("coin outcome out of range");
    if (!prob) return 1.0 / static_cast<double>(count);
    return prob(outcome);
}

CoinSpace CoinSpace::bernoulli(double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw InputError("bernoulli: probability out of range");
    CoinSpace c;
    c.count = 2;
    c.prob = [p0](std::uint64_t i) { return i == 0 ? p0 : 1.0 - p0; };
    return c;
}

CoinSpace CoinSpace::product(const CoinSpace& outer, const CoinSpace& inner) {
    if (!outer.declared() || !inner.declared()) return undeclared();
    const unsigned __int128 total =
        static_cast<unsigned __int128>(outer.count) * static_cast<unsigned __int128>(inner.count);
    if (total > (static_cast<unsigned __int128>(1) << 62)) return undeclared();
    CoinSpace c;
    c.count = static_cast<std::uint64_t>(total);
    if (outer.prob || inner.prob) {
        c.prob = [outer, inner](std::uint64_t i) {
            return outer.probability(i / inner.count) * inner.probability(i % inner.count);
        };
    }
    return c;
}

void OnlineAlgorithm::reset_exact(std::uint64_t outcome) {
    const CoinSpace cs = coin_space();
    if (cs.count != 1) {
        throw std::logic_error("reset_exact not implemented by randomized algorithm " + name());
    }
    if (outcome != 0) throw InputError("reset_exact: outcome out of range");
    Rng unused = make_rng(0);
    reset_random(unused);
}

ArrivalStream make_random_stream(const Weighting& w, Rng& rng) {
    const int n = static_cast<int>(w.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_vector(perm, rng);
    ArrivalStream s;
    s.arrivals.reserve(static_cast<std::size_t>(n));
    for (int e : perm) {
        s.arrivals.push_back(Arrival{e, w[static_cast<std::size_t>(e)], rand_unit(rng)});
    }
    return s;
}

ArrivalStream make_stream_for_permutation(const std::vector<int>& perm, const Weighting& w) {
    ArrivalStream s;
    s.arrivals.reserve(perm.size());
    for (int e : perm) {
        s.arrivals.push_back(Arrival{e, w[static_cast<std::size_t>(e)], static_cast<double>(e)});
    }
    return s;
}

SimulationResult simulate(OnlineAlgorithm& alg, const Matroid& check, const ArrivalStream& stream,
                          bool throw_on_violation) {
    const int n = check.size();
    if (alg.ground_size() != n) {
        throw InputError("simulate: algorithm ground size " + std::to_string(alg.ground_size()) +
                         " does not match matroid size " + std::to_string(n));
    }
    if (static_cast<int>(stream.arrivals.size()) != n) {
        throw InputError("simulate: stream does not cover the ground set");
    }
    ElemSet seen(static_cast<std::size_t>(n));
    for (const Arrival& a : stream.arrivals) {
        if (a.element < 0 || a.element >= n || seen.test(static_cast<std::size_t>(a.element))) {
            throw InputError("simulate: stream is not a permutation of the ground set");
        }
        seen.set(static_cast<std::size_t>(a.element));
    }

    SimulationResult result;
    result.accepted = ElemSet(static_cast<std::size_t>(n));
    int accepted_rank = 0;
    for (const Arrival& a : stream.arrivals) {
        if (!alg.on_arrival(a)) continue;
        result.accepted.set(static_cast<std::size_t>(a.element));
        const int r = check.rank(result.accepted);
        if (r == accepted_rank + 1) {
            accepted_rank = r;
        } else {
            result.accepted.reset(static_cast<std::size_t>(a.element));
            ++result.violations;
            if (throw_on_violation) {
                throw std::logic_error("independence violation by " + alg.name() + " at element " +
                                       std::to_string(a.element));
            }
        }
    }
    return result;
}

double report_ratio(double opt, double expected) {
    if (expected > 0.0) return opt / expected;
    if (opt == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
}

namespace {

double accepted_weight(const ElemSet& accepted, const Weighting& w) {
    double total = 0.0;
    for (std::size_t i = accepted.find_first(); i != ElemSet::npos; i = accepted.find_next(i)) {
        total += w[i];
    }
    return total;
}

}  // namespace

EvalReport evaluate_exact(OnlineAlgorithm& alg, MatroidPtr m, const Weighting& w,
                          const StreamObserver& observer) {
    const int n = m->size();
    check_weighting(w, n);
    if (n > kMaxExactGround) {
        throw InputError("evaluate_exact: ground set of size " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxExactGround));
    }
    const CoinSpace coins = alg.coin_space();
    if (!coins.declared()) {
        throw UnsupportedError("evaluate_exact: " + alg.name() + " does not declare a coin space");
    }

    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (fact * static_cast<double>(coins.count) > 5e7) {
        throw ResourceError("evaluate_exact: permutation x coin space too large to enumerate");
    }

    EvalReport report;
    report.exact = true;
    report.opt_value = opt_weight(*m, w);

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const double perm_weight = 1.0 / fact;
    double expected = 0.0;
    do {
        const ArrivalStream stream = make_stream_for_permutation(perm, w);
        for (std::uint64_t c = 0; c < coins.count; ++c) {
            alg.reset_exact(c);
            const SimulationResult r = simulate(alg, *m, stream);
            expected += perm_weight * coins.probability(c) * accepted_weight(r.accepted, w);
            report.violations += r.violations;
            ++report.trials;
            if (observer) observer(r, stream);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    report.expected_weight = expected;
    report.ratio = report_ratio(report.opt_value, expected);
    return report;
}

EvalReport evaluate_monte_carlo(OnlineAlgorithm& alg, MatroidPtr m, const Weighting& w,
                                std::uint64_t trials, std::uint64_t seed,
                                const StreamObserver& observer) {
    check_weighting(w, m->size());
    if (trials < 1) throw InputError("evaluate_monte_carlo: need at least one trial");

    EvalReport report;
    report.opt_value = opt_weight(*m, w);
    report.trials = trials;

    double sum = 0.0;
    double sumsq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, t);
        const ArrivalStream stream = make_random_stream(w, rng);
        alg.reset_random(rng);
        const SimulationResult r = simulate(alg, *m, stream);
        const double value = accepted_weight(r.accepted, w);
        sum += value;
        sumsq += value * value;
        report.violations += r.violations;
        if (observer) observer(r, stream);
    }

    const double mean = sum / static_cast<double>(trials);
    report.expected_weight = mean;
    if (trials > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * mean) / static_cast<double>(trials - 1));
        report.std_error = std::sqrt(var / static_cast<double>(trials));
    }
    report.ratio = report_ratio(report.opt_value, mean);
    return report;
}

double opt_weight(const Matroid& m, const Weighting& w) {
    const ElemSet basis = max_weight_basis(m, w);
    return accepted_weight(basis, w);
}

}  // namespace msl
