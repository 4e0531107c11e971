#pragma once

#include "msl/enumerate.hpp"
#include "msl/matroid.hpp"

#include <utility>
#include <vector>

namespace msl {

/// Local connectivity of disjoint X, Y: r(X) + r(Y) - r(X u Y).
int local_connectivity(const Matroid& m, const ElemSet& X, const ElemSet& Y);

/// Connectivity function: lambda_M(X) = local connectivity of X and E - X.
int lambda(const Matroid& m, const ElemSet& X);

/// A tree T together with a partition {X_v} of E(M) indexed by V(T).
/// Empty parts are permitted.
struct TreeDecomposition {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<ElemSet> parts;

    /// Throws InputError unless T is a tree (connected, acyclic; in
    /// particular disconnected forests are rejected) and parts partition E(M).
    void validate(const Matroid& m) const;

    std::vector<int> neighbors(int v) const;
    std::vector<int> leaves() const;

    /// Vertices on the side of `edge` containing its first endpoint, with the
    /// edge removed.
    std::vector<int> side_of(int edge) const;
};

/// lambda of the union of parts on one side of the given tree edge.
int edge_thickness(const Matroid& m, const TreeDecomposition& td, int edge);

/// max over tree edges of edge_thickness; 0 for single-vertex trees.
int thickness(const Matroid& m, const TreeDecomposition& td);

/// Full: every tree edge uv satisfies local_connectivity(X_u, X_v) = lambda(e).
bool is_full(const Matroid& m, const TreeDecomposition& td);

/// Move X_leaf n cl_M(X_u) into the neighbor part X_u. Checked on every call:
/// lambda does not increase, fullness is preserved, and afterwards
/// X_leaf' n cl_M(X_u') is empty.
TreeDecomposition normalize_leaf(const Matroid& m, const TreeDecomposition& td, int leaf);

/// Witness for the projection chain from M|X to M/(E-X):
/// I1 a basis of M|X, I1 u I2 a basis of M, I2 u I3 a basis of M \ X,
/// and N = (M / I2)|(X u I3) satisfies N \ I3 = M|X and N / I3 = M/(E-X).
struct LambdaWitness {
    ElemSet X;                    // over E(M)
    ElemSet I1, I2, I3;           // over E(M), disjoint independent sets
    MatroidPtr N;                 // ground X u I3, relabeled ascending
    std::vector<int> n_to_parent; // N element -> M element
};

/// Constructs the witness greedily (I1, then I2, then I3, following the
/// order of the proof); rng only shuffles the candidate order so witnesses
/// are reproducible under a seed.
LambdaWitness lemma_lambda_witness(MatroidPtr m, const ElemSet& X, Rng& rng);

/// One elementary lift/projection: ambient matroid and a distinguished
/// non-loop x. ambient \ x and ambient / x live on the common relabeled
/// ground E(ambient) - {x}.
struct PerturbationStep {
    enum class Direction { kLiftOf, kProjectionOf };
    MatroidPtr ambient;
    int x = -1;
    Direction direction = Direction::kProjectionOf;
};

/// For kProjectionOf: true iff ambient \ x == from and ambient / x == to as
/// rank functions; for kLiftOf the roles of deletion and contraction swap.
/// Ground-set size mismatches and loop x are input errors.
bool verify_perturbation_step(const PerturbationStep& step, const Matroid& from, const Matroid& to,
                              int cap = kEnumerationCap);

/// The chain of |I3| single-element projections from M|X to M/(E-X) exposed
/// by a witness: step i contracts the i-th element of I3 in N after deleting
/// the later ones. All steps are kProjectionOf and share the common ground
/// X (ascending relabeling).
std::vector<PerturbationStep> projection_chain(const LambdaWitness& witness);

}  // namespace msl
