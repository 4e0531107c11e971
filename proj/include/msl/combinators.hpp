#pragma once

#include "msl/connectivity.hpp"
#include "msl/io.hpp"
#include "msl/online.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace msl {

/// Wraps an algorithm for M into one for M|R: the missing elements are
/// injected into the inner stream at uniformly random positions with weight
/// zero, and inner accepts of injected elements are dropped from the output.
/// The interleaving is part of the declared coin space, so exact evaluation
/// stays exact.
std::unique_ptr<OnlineAlgorithm> restrict_wrap(std::unique_ptr<OnlineAlgorithm> inner,
                                               const ElemSet& keep);

/// Given ambient L and non-loop x with M = L/x, turns an algorithm for M into
/// one for N = L\x: arrivals in the parallel class of x (minus x itself) feed
/// a classical secretary instance, everything else passes through to the
/// inner algorithm. Claimed ratio: max(e, 2c).
std::unique_ptr<OnlineAlgorithm> lift_wrap(MatroidPtr ambient, int x,
                                           std::unique_ptr<OnlineAlgorithm> inner);

class ProjectWrapAlgorithm;

/// Given ambient P and non-loop x with M = P\x, N = P/x and L the loops of N,
/// turns an algorithm for M\L into one for M\L whose output is always
/// independent in N: with probability e/(e+1) a classical secretary run on
/// N\L, otherwise the inner algorithm with accepts that would create a
/// dependency in N only pretended. Claimed ratio: (e+1)c.
std::unique_ptr<ProjectWrapAlgorithm> project_wrap(MatroidPtr ambient, int x,
                                                   std::unique_ptr<OnlineAlgorithm> inner);

class ProjectWrapAlgorithm : public OnlineAlgorithm {
public:
    /// Trace accessors for the last simulated stream.
    virtual bool last_was_tails() const = 0;
    virtual const ElemSet& last_virtual_picks() const = 0;
    virtual const ElemSet& last_kept() const = 0;
};

/// Result of folding a verified perturbation chain M_0 -> ... -> M_t.
struct PerturbResult {
    std::unique_ptr<OnlineAlgorithm> alg;  // on the full common ground
    MatroidPtr final_matroid;              // M_t
    int steps = 0;
    double claim_factor = 1.0;             // (e+1)^t
};

/// Folds lift_wrap / project_wrap along the chain; each step is verified
/// against the matroid reached so far (InputError with the step index
/// otherwise). Projection steps restrict away new loops first and keep the
/// resulting algorithm on the full ground by dropping loop arrivals.
PerturbResult perturb_wrap(MatroidPtr m0, const std::vector<PerturbationStep>& steps,
                           std::unique_ptr<OnlineAlgorithm> base, int verify_cap = kEnumerationCap);

/// Result of iterating project_wrap along an all-projection chain.
struct MultiProjectResult {
    std::unique_ptr<OnlineAlgorithm> alg;  // ground E(M) - L, dense
    MatroidPtr final_matroid;              // N on the full common ground
    MatroidPtr domain;                     // M \ L, matching the algorithm ground
    MatroidPtr certificate;                // N \ L, matching the algorithm ground
    ElemSet removed_loops;                 // L, over the common ground
    int steps = 0;
    double claim_factor = 1.0;             // (e+1)^t
};

MultiProjectResult multi_project_wrap(MatroidPtr m0, const std::vector<PerturbationStep>& chain,
                                      std::unique_ptr<OnlineAlgorithm> base,
                                      int verify_cap = kEnumerationCap);

/// Supplies an algorithm bound to M|cl_M(X_v) for tree vertex v.
using LeafAlgorithmFactory =
    std::function<std::unique_ptr<OnlineAlgorithm>(MatroidPtr leaf_matroid, int vertex)>;

/// Audit record of a tree composition; serialized next to results so every
/// claimed constant is checkable.
struct CompositionPlan {
    int thickness = 0;
    double leaf_competitiveness = 1.0;
    double claim_factor = 1.0;   // (e+1)^thickness
    double claimed_ratio = 1.0;  // leaf_competitiveness * claim_factor

    struct Peel {
        int vertex = 0;                  // original tree vertex
        std::vector<int> part;           // X_v after normalization, original element ids
        std::vector<int> moved;          // elements moved into the neighbor part
        std::vector<int> closure_ghosts; // cl(X_v) - X_v fed to the leaf as zero-weight
        int lambda_value = 0;            // lambda at peel time = projection count
        std::string leaf_algorithm;
    };
    std::vector<Peel> peels;  // one per tree vertex, in peel order

    nlohmann::json to_json() const;
};

struct TreeComposeResult {
    std::unique_ptr<OnlineAlgorithm> alg;
    CompositionPlan plan;
};

/// Theorem-style recursive composition over a full tree-decomposition:
/// repeatedly peel the lowest-indexed leaf, normalize it, wrap the factory
/// algorithm for M|cl(X_l) by restriction to X_l and then by the lambda
/// witness projection chain, and run it in parallel with the recursion on
/// M \ X_l. Claimed ratio: c(e+1)^k for thickness k.
TreeComposeResult tree_compose(MatroidPtr m, const TreeDecomposition& td,
                               const LeafAlgorithmFactory& factory, Rng& rng,
                               double leaf_competitiveness = 1.0);

struct RegularComposeResult {
    std::unique_ptr<OnlineAlgorithm> alg;
    CompositionPlan plan;
    MatroidPtr matroid;  // M = M'|R, the evaluation matroid
    MatroidPtr ambient;  // the supplied M'
    std::vector<std::string> labels;
};

/// Composition for a supplied regular-matroid decomposition: a full
/// tree-decomposition of thickness at most 2 with per-part labels graphic,
/// cographic or r10 (parallel extensions of R_10; their density 2 is
/// validated when small enough to enumerate). Leaves run threshold_greedy as
/// the stand-in algorithm; the optional restriction is applied last.
RegularComposeResult regular_compose(const DecompositionSpec& spec, Rng& rng,
                                     int density_cap = kEnumerationCap);

}  // namespace msl
