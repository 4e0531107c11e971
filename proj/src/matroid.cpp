#include "msl/matroid.hpp"

#include <algorithm>
#include <sstream>

namespace msl {

bool is_independent(const Matroid& m, const ElemSet& X) {
    return m.rank(X) == static_cast<int>(X.count());
}

ElemSet closure(const Matroid& m, const ElemSet& X) {
    const int r0 = m.rank(X);
    ElemSet out = X;
    ElemSet probe = X;
    for (int e = 0; e < m.size(); ++e) {
        if (X.test(static_cast<std::size_t>(e))) continue;
        probe.set(static_cast<std::size_t>(e));
        if (m.rank(probe) == r0) out.set(static_cast<std::size_t>(e));
        probe.reset(static_cast<std::size_t>(e));
    }
    return out;
}

ElemSet loops(const Matroid& m) {
    return closure(m, ElemSet(static_cast<std::size_t>(m.size())));
}

bool is_loop(const Matroid& m, int e) {
    ElemSet s(static_cast<std::size_t>(m.size()));
    if (e < 0 || e >= m.size()) throw InputError("is_loop: element out of range");
    s.set(static_cast<std::size_t>(e));
    return m.rank(s) == 0;
}

ElemSet parallel_class(const Matroid& m, int x) {
    if (is_loop(m, x)) throw InputError("parallel_class: x is a loop");
    ElemSet out(static_cast<std::size_t>(m.size()));
    out.set(static_cast<std::size_t>(x));
    ElemSet pair(static_cast<std::size_t>(m.size()));
    pair.set(static_cast<std::size_t>(x));
    for (int y = 0; y < m.size(); ++y) {
        if (y == x || is_loop(m, y)) continue;
        pair.set(static_cast<std::size_t>(y));
        if (m.rank(pair) == 1) out.set(static_cast<std::size_t>(y));
        pair.reset(static_cast<std::size_t>(y));
    }
    return out;
}

std::vector<int> relabel_to_parent(const ElemSet& kept) {
    return set_members(kept);
}

namespace {

class MinorMatroid final : public Matroid {
public:
    MinorMatroid(MatroidPtr parent, const ElemSet& contract, const ElemSet& kept)
        : Matroid(static_cast<int>(kept.count())),
          parent_(std::move(parent)),
          contract_(contract),
          to_parent_(relabel_to_parent(kept)) {
        contract_rank_ = parent_->rank(contract_);
        init_full_rank();
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "minor(" << parent_->describe() << ")";
        return os.str();
    }

protected:
    int rank_unchecked(const ElemSet& X) const override {
        ElemSet up = contract_;
        for (std::size_t i = X.find_first(); i != ElemSet::npos; i = X.find_next(i)) {
            up.set(static_cast<std::size_t>(to_parent_[i]));
        }
        return parent_->rank(up) - contract_rank_;
    }

private:
    MatroidPtr parent_;
    ElemSet contract_;
    std::vector<int> to_parent_;
    int contract_rank_ = 0;
};

class DualMatroid final : public Matroid {
public:
    explicit DualMatroid(MatroidPtr parent) : Matroid(parent->size()), parent_(std::move(parent)) {
        init_full_rank();
    }

    std::string describe() const override { return "dual(" + parent_->describe() + ")"; }

protected:
    int rank_unchecked(const ElemSet& X) const override {
        ElemSet comp = X;
        comp.flip();
        return static_cast<int>(X.count()) + parent_->rank(comp) - parent_->full_rank();
    }

private:
    MatroidPtr parent_;
};

class TruncatedMatroid final : public Matroid {
public:
    explicit TruncatedMatroid(MatroidPtr parent) : Matroid(parent->size()), parent_(std::move(parent)) {
        cap_ = parent_->full_rank() - 1;
        init_full_rank();
    }

    std::string describe() const override { return "truncate(" + parent_->describe() + ")"; }

protected:
    int rank_unchecked(const ElemSet& X) const override {
        return std::min(parent_->rank(X), cap_);
    }

private:
    MatroidPtr parent_;
    int cap_ = 0;
};

class DirectSumMatroid final : public Matroid {
public:
    DirectSumMatroid(MatroidPtr a, MatroidPtr b)
        : Matroid(a->size() + b->size()), a_(std::move(a)), b_(std::move(b)) {
        init_full_rank();
    }

    std::string describe() const override {
        return "directsum(" + a_->describe() + "," + b_->describe() + ")";
    }

protected:
    int rank_unchecked(const ElemSet& X) const override {
        ElemSet xa(static_cast<std::size_t>(a_->size()));
        ElemSet xb(static_cast<std::size_t>(b_->size()));
        const std::size_t na = static_cast<std::size_t>(a_->size());
        for (std::size_t i = X.find_first(); i != ElemSet::npos; i = X.find_next(i)) {
            if (i < na) {
                xa.set(i);
            } else {
                xb.set(i - na);
            }
        }
        return a_->rank(xa) + b_->rank(xb);
    }

private:
    MatroidPtr a_;
    MatroidPtr b_;
};

}  // namespace

MatroidPtr make_minor(MatroidPtr m, const ElemSet& contract, const ElemSet& remove) {
    if (static_cast<int>(contract.size()) != m->size() || static_cast<int>(remove.size()) != m->size()) {
        throw InputError("minor: contract/delete sets must be sized to the ground set");
    }
    if ((contract & remove).any()) {
        throw InputError("minor: contract and delete sets overlap");
    }
    ElemSet kept = contract | remove;
    kept.flip();
    return std::make_shared<MinorMatroid>(std::move(m), contract, kept);
}

MatroidPtr make_contract(MatroidPtr m, const ElemSet& contract) {
    return make_minor(std::move(m), contract, ElemSet(contract.size()));
}

MatroidPtr make_delete(MatroidPtr m, const ElemSet& remove) {
    return make_minor(std::move(m), ElemSet(remove.size()), remove);
}

MatroidPtr make_restrict(MatroidPtr m, const ElemSet& keep) {
    ElemSet remove = keep;
    remove.flip();
    return make_delete(std::move(m), remove);
}

MatroidPtr make_dual(MatroidPtr m) {
    return std::make_shared<DualMatroid>(std::move(m));
}

MatroidPtr make_truncate(MatroidPtr m) {
    if (m->full_rank() < 1) throw InputError("truncate: matroid has rank 0");
    return std::make_shared<TruncatedMatroid>(std::move(m));
}

MatroidPtr make_direct_sum(MatroidPtr a, MatroidPtr b) {
    return std::make_shared<DirectSumMatroid>(std::move(a), std::move(b));
}

Simplification simplify(MatroidPtr m) {
    const int n = m->size();
    Simplification out;
    out.rep_of.assign(static_cast<std::size_t>(n), -1);

    const ElemSet loopset = loops(*m);
    std::vector<int> class_rep(static_cast<std::size_t>(n), -1);  // parent elem -> representative parent elem
    ElemSet reps(static_cast<std::size_t>(n));
    ElemSet pair(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        if (loopset.test(static_cast<std::size_t>(e)) || class_rep[static_cast<std::size_t>(e)] >= 0) continue;
        class_rep[static_cast<std::size_t>(e)] = e;
        reps.set(static_cast<std::size_t>(e));
        pair.set(static_cast<std::size_t>(e));
        for (int f = e + 1; f < n; ++f) {
            if (loopset.test(static_cast<std::size_t>(f)) || class_rep[static_cast<std::size_t>(f)] >= 0) continue;
            pair.set(static_cast<std::size_t>(f));
            if (m->rank(pair) == 1) class_rep[static_cast<std::size_t>(f)] = e;
            pair.reset(static_cast<std::size_t>(f));
        }
        pair.reset(static_cast<std::size_t>(e));
    }

    out.to_parent = set_members(reps);
    std::vector<int> view_of(static_cast<std::size_t>(n), -1);  // representative parent elem -> view id
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
        view_of[static_cast<std::size_t>(out.to_parent[i])] = static_cast<int>(i);
    }
    for (int e = 0; e < n; ++e) {
        const int rep = class_rep[static_cast<std::size_t>(e)];
        out.rep_of[static_cast<std::size_t>(e)] = rep < 0 ? -1 : view_of[static_cast<std::size_t>(rep)];
    }
    out.matroid = make_restrict(std::move(m), reps);
    return out;
}

}  // namespace msl
