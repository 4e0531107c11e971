#include "msl/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace msl {

namespace {

void check_cap(int n, int cap, const char* what) {
    if (n > cap) {
        throw ResourceError(std::string(what) + ": ground set of size " + std::to_string(n) +
                            " exceeds enumeration cap " + std::to_string(cap));
    }
}

}  // namespace

void for_each_subset(int n, int cap, const std::function<void(const ElemSet&)>& fn) {
    check_cap(n, cap, "for_each_subset");
    ElemSet X(static_cast<std::size_t>(n));
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i) X[static_cast<std::size_t>(i)] = (mask >> i) & 1ULL;
        fn(X);
    }
}

std::vector<ElemSet> enumerate_bases(const Matroid& m, int cap) {
    check_cap(m.size(), cap, "enumerate_bases");
    const int r = m.full_rank();
    std::vector<ElemSet> out;
    for_each_subset(m.size(), cap, [&](const ElemSet& X) {
        if (static_cast<int>(X.count()) == r && m.rank(X) == r) out.push_back(X);
    });
    return out;
}

std::vector<ElemSet> enumerate_circuits(const Matroid& m, int cap) {
    check_cap(m.size(), cap, "enumerate_circuits");
    std::vector<ElemSet> out;
    for_each_subset(m.size(), cap, [&](const ElemSet& X) {
        const int k = static_cast<int>(X.count());
        if (k == 0 || m.rank(X) >= k) return;
        ElemSet Y = X;
        for (std::size_t i = X.find_first(); i != ElemSet::npos; i = X.find_next(i)) {
            Y.reset(i);
            const bool proper = m.rank(Y) == k - 1;
            Y.set(i);
            if (!proper) return;  // X - i is dependent, so X is not minimal
        }
        out.push_back(X);
    });
    return out;
}

bool is_paving(const Matroid& m, int cap) {
    const int r = m.full_rank();
    for (const auto& c : enumerate_circuits(m, cap)) {
        if (static_cast<int>(c.count()) < r) return false;
    }
    return true;
}

Rational density(MatroidPtr m, int cap) {
    check_cap(m->size(), cap, "density");
    const Simplification si = simplify(std::move(m));
    const Matroid& s = *si.matroid;
    Rational best(0);
    for_each_subset(s.size(), cap, [&](const ElemSet& X) {
        if (X.none()) return;
        const int r = s.rank(X);
        if (r < 1) return;
        const Rational ratio(static_cast<long long>(X.count()), r);
        if (ratio > best) best = ratio;
    });
    return best;
}

ElemSet max_weight_basis(const Matroid& m, const Weighting& w) {
    check_weighting(w, m.size());
    std::vector<int> order(static_cast<std::size_t>(m.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&w](int a, int b) {
        return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
    });
    ElemSet basis(static_cast<std::size_t>(m.size()));
    int rank = 0;
    for (int e : order) {
        basis.set(static_cast<std::size_t>(e));
        const int r2 = m.rank(basis);
        if (r2 > rank) {
            rank = r2;
        } else {
            basis.reset(static_cast<std::size_t>(e));
        }
    }
    return basis;
}

ElemSet sample_random_basis(const Matroid& m, Rng& rng, int max_attempts) {
    const int r = m.full_rank();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ElemSet X = rand_subset(rng, m.size(), r);
        if (m.rank(X) == r) return X;
    }
    throw ResourceError("sample_random_basis: no basis found in " + std::to_string(max_attempts) +
                        " attempts");
}

bool ranks_equal(const Matroid& a, const Matroid& b, int cap) {
    if (a.size() != b.size()) return false;
    check_cap(a.size(), cap, "ranks_equal");
    bool equal = true;
    for_each_subset(a.size(), cap, [&](const ElemSet& X) {
        if (equal && a.rank(X) != b.rank(X)) equal = false;
    });
    return equal;
}

void check_weighting(const Weighting& w, int n) {
    if (static_cast<int>(w.size()) != n) {
        throw InputError("weighting has " + std::to_string(w.size()) + " entries for ground set of size " +
                         std::to_string(n));
    }
    for (double x : w) {
        if (!(x >= 0.0)) throw InputError("weights must be non-negative");
    }
}

}  // namespace msl
