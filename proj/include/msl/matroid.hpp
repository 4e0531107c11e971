#pragma once

#include "msl/common.hpp"

#include <memory>
#include <string>
#include <vector>

namespace msl {

/// A matroid presented by its rank oracle on ground set {0,...,n-1}.
///
/// Oracles are immutable after construction and safe to query concurrently.
/// Derived views (minor, dual, truncation, direct sum, restriction) are lazy:
/// they keep a shared pointer to the parent and translate queries. Every view
/// relabels its ground set densely to 0..m-1 in ascending parent order and
/// carries the relabeling back to the parent (`to_parent`).
class Matroid {
public:
    virtual ~Matroid() = default;

    int size() const { return n_; }

    /// r_M(X). X must be sized to the ground set.
    int rank(const ElemSet& X) const {
        if (static_cast<int>(X.size()) != n_) {
            throw InputError("rank: subset sized " + std::to_string(X.size()) +
                             " does not match ground set of size " + std::to_string(n_));
        }
        return rank_unchecked(X);
    }

    /// r(M) = rank of the full ground set.
    int full_rank() const { return full_rank_; }

    virtual std::string describe() const = 0;

protected:
    explicit Matroid(int n) : n_(n) {
        if (n < 0) throw InputError("ground set size must be non-negative");
    }

    virtual int rank_unchecked(const ElemSet& X) const = 0;

    /// Must be called exactly once at the end of every constructor.
    void init_full_rank() { full_rank_ = rank_unchecked(full_set(static_cast<std::size_t>(n_))); }

private:
    int n_;
    int full_rank_ = 0;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

// -- basic derived queries ---------------------------------------------------

bool is_independent(const Matroid& m, const ElemSet& X);

/// cl_M(X) = { e : r(X + e) = r(X) }.
ElemSet closure(const Matroid& m, const ElemSet& X);

/// Elements of rank 0 (= closure of the empty set).
ElemSet loops(const Matroid& m);

bool is_loop(const Matroid& m, int e);

/// The parallel class of a non-loop x: x together with every non-loop y
/// with r({x,y}) = 1.
ElemSet parallel_class(const Matroid& m, int x);

// -- views --------------------------------------------------------------------

/// M / C \ D. C and D must be disjoint. Ground set E - C - D, relabeled.
MatroidPtr make_minor(MatroidPtr m, const ElemSet& contract, const ElemSet& remove);
MatroidPtr make_contract(MatroidPtr m, const ElemSet& contract);
MatroidPtr make_delete(MatroidPtr m, const ElemSet& remove);
/// M | R  (restriction = deletion of the complement).
MatroidPtr make_restrict(MatroidPtr m, const ElemSet& keep);

/// Dual: r*(X) = |X| + r(E - X) - r(E). Ground set unchanged.
MatroidPtr make_dual(MatroidPtr m);

/// Truncation T(M): rank capped at r(M) - 1. Requires r(M) >= 1.
MatroidPtr make_truncate(MatroidPtr m);

/// Direct sum; ground set is a's elements followed by b's.
MatroidPtr make_direct_sum(MatroidPtr a, MatroidPtr b);

/// The map from a view's elements back to its parent's, ascending.
/// Views constructed by this library all relabel in ascending parent order,
/// so the map is determined by the kept set.
std::vector<int> relabel_to_parent(const ElemSet& kept);

/// si(M): loops suppressed, every parallel class collapsed to its
/// lowest-indexed representative.
struct Simplification {
    MatroidPtr matroid;           // the simple matroid, ground relabeled
    std::vector<int> to_parent;   // view element -> parent element (the representative)
    std::vector<int> rep_of;      // parent element -> view element, -1 for loops
};
Simplification simplify(MatroidPtr m);

}  // namespace msl
