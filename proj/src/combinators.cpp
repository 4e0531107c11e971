#include "msl/combinators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace msl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t factorial_u64(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) {
        if (f > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(i)) return 0;
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (acc > (static_cast<unsigned __int128>(1) << 62)) return 0;
    }
    return static_cast<std::uint64_t>(acc);
}

/// rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    int next = 0;
    for (int remaining = k; remaining > 0; --remaining) {
        for (int v = next;; ++v) {
            const std::uint64_t block = binomial_u64(n - v - 1, remaining - 1);
            if (rank < block) {
                out.push_back(v);
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

/// rank-th permutation of {0..k-1} via the factorial number system.
std::vector<int> unrank_permutation(int k, std::uint64_t rank) {
    std::vector<int> pool(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = k; i > 0; --i) {
        const std::uint64_t block = factorial_u64(i - 1);
        const std::uint64_t idx = rank / block;
        rank %= block;
        out.push_back(pool[static_cast<std::size_t>(idx)]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

class RestrictWrap final : public OnlineAlgorithm {
public:
    RestrictWrap(std::unique_ptr<OnlineAlgorithm> inner, const ElemSet& keep)
        : inner_(std::move(inner)) {
        inner_n_ = inner_->ground_size();
        if (static_cast<int>(keep.size()) != inner_n_) {
            throw InputError("restrict_wrap: kept set sized to wrong ground");
        }
        to_inner_ = set_members(keep);
        ElemSet ghost_set = keep;
        ghost_set.flip();
        ghosts_ = set_members(ghost_set);
        slots_.assign(static_cast<std::size_t>(inner_n_), -1);
        ghost_priority_.assign(static_cast<std::size_t>(inner_n_), 0.0);
    }

    int ground_size() const override { return static_cast<int>(to_inner_.size()); }
    std::string name() const override { return "restrict(" + inner_->name() + ")"; }

    CoinSpace coin_space() const override {
        return CoinSpace::product(own_coins(), inner_->coin_space());
    }

    void reset_random(Rng& rng) override {
        inner_->reset_random(rng);
        // uniform interleaving: shuffle ghost ids among all inner positions
        std::vector<int> arrangement(static_cast<std::size_t>(inner_n_), -1);
        for (std::size_t i = 0; i < ghosts_.size(); ++i) arrangement[i] = ghosts_[i];
        shuffle_vector(arrangement, rng);
        slots_ = std::move(arrangement);
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i] >= 0) ghost_priority_[i] = rand_unit(rng);
        }
        pos_ = 0;
    }

    void reset_exact(std::uint64_t outcome) override {
        const std::uint64_t inner_count = inner_->coin_space().count;
        const std::uint64_t own = outcome / inner_count;
        inner_->reset_exact(outcome % inner_count);

        const int g = static_cast<int>(ghosts_.size());
        const std::uint64_t gfact = factorial_u64(g);
        const std::vector<int> ghost_slots = unrank_combination(inner_n_, g, own / gfact);
        const std::vector<int> ghost_order = unrank_permutation(g, own % gfact);
        std::fill(slots_.begin(), slots_.end(), -1);
        for (int i = 0; i < g; ++i) {
            const int slot = ghost_slots[static_cast<std::size_t>(i)];
            const int ghost = ghosts_[static_cast<std::size_t>(ghost_order[static_cast<std::size_t>(i)])];
            slots_[static_cast<std::size_t>(slot)] = ghost;
            // deterministic exact-mode tie-break, distinct from real ids
            ghost_priority_[static_cast<std::size_t>(slot)] = -1.0 - static_cast<double>(ghost);
        }
        pos_ = 0;
    }

    bool on_arrival(const Arrival& a) override {
        while (pos_ < inner_n_ && slots_[static_cast<std::size_t>(pos_)] >= 0) {
            const int ghost = slots_[static_cast<std::size_t>(pos_)];
            inner_->on_arrival(Arrival{ghost, 0.0, ghost_priority_[static_cast<std::size_t>(pos_)]});
            ++pos_;
        }
        if (pos_ >= inner_n_) throw std::logic_error("restrict_wrap: stream longer than ground");
        ++pos_;
        const int inner_id = to_inner_[static_cast<std::size_t>(a.element)];
        return inner_->on_arrival(Arrival{inner_id, a.weight, a.priority});
    }

private:
    CoinSpace own_coins() const {
        const int g = static_cast<int>(ghosts_.size());
        const std::uint64_t combos = binomial_u64(inner_n_, g);
        const std::uint64_t gfact = factorial_u64(g);
        if (combos == 0 || gfact == 0) return CoinSpace::undeclared();
        if (combos > std::numeric_limits<std::uint64_t>::max() / gfact) return CoinSpace::undeclared();
        return CoinSpace::uniform(combos * gfact);
    }

    std::unique_ptr<OnlineAlgorithm> inner_;
    int inner_n_ = 0;
    std::vector<int> to_inner_;        // outer id -> inner id
    std::vector<int> ghosts_;          // inner ids not kept
    std::vector<int> slots_;           // per inner position: -1 real, else ghost id
    std::vector<double> ghost_priority_;
    int pos_ = 0;
};

class LiftWrap final : public OnlineAlgorithm {
public:
    LiftWrap(MatroidPtr ambient, int x, std::unique_ptr<OnlineAlgorithm> inner)
        : ambient_(std::move(ambient)), x_(x), inner_(std::move(inner)) {
        if (x_ < 0 || x_ >= ambient_->size()) throw InputError("lift_wrap: x out of range");
        if (is_loop(*ambient_, x_)) throw InputError("lift_wrap: x is a loop");
        n_ = ambient_->size() - 1;
        if (inner_->ground_size() != n_) {
            throw InputError("lift_wrap: inner algorithm ground does not match the common ground");
        }
        const ElemSet pclass = parallel_class(*ambient_, x_);
        in_parallel_.assign(static_cast<std::size_t>(n_), 0);
        parallel_size_ = 0;
        for (int o = 0; o < n_; ++o) {
            const int amb = o < x_ ? o : o + 1;
            if (pclass.test(static_cast<std::size_t>(amb))) {
                in_parallel_[static_cast<std::size_t>(o)] = 1;
                ++parallel_size_;
            }
        }
        // sub-instance length |P - x| is known upfront (the matroid is known)
        sample_ = parallel_size_ > 0 ? static_cast<int>(parallel_size_ / std::numbers::e) : 0;
    }

    int ground_size() const override { return n_; }
    std::string name() const override { return "lift(" + inner_->name() + ")"; }
    CoinSpace coin_space() const override { return inner_->coin_space(); }

    void reset_random(Rng& rng) override {
        inner_->reset_random(rng);
        reset_own();
    }

    void reset_exact(std::uint64_t outcome) override {
        inner_->reset_exact(outcome);
        reset_own();
    }

    bool on_arrival(const Arrival& a) override {
        if (!in_parallel_[static_cast<std::size_t>(a.element)]) return inner_->on_arrival(a);
        ++pseen_;
        if (pseen_ <= sample_) {
            if (wp_greater(a.weight, a.priority, best_w_, best_p_)) {
                best_w_ = a.weight;
                best_p_ = a.priority;
            }
            return false;
        }
        if (pchosen_ || !wp_greater(a.weight, a.priority, best_w_, best_p_)) return false;
        pchosen_ = true;
        return true;
    }

private:
    void reset_own() {
        pseen_ = 0;
        pchosen_ = false;
        best_w_ = kNegInf;
        best_p_ = kNegInf;
    }

    MatroidPtr ambient_;
    int x_;
    std::unique_ptr<OnlineAlgorithm> inner_;
    int n_ = 0;
    std::vector<char> in_parallel_;
    int parallel_size_ = 0;
    int sample_ = 0;
    int pseen_ = 0;
    bool pchosen_ = false;
    double best_w_ = kNegInf;
    double best_p_ = kNegInf;
};

class ProjectWrapImpl final : public ProjectWrapAlgorithm {
public:
    ProjectWrapImpl(MatroidPtr certificate, std::unique_ptr<OnlineAlgorithm> inner)
        : certificate_(std::move(certificate)), inner_(std::move(inner)) {
        n_ = certificate_->size();
        if (inner_->ground_size() != n_) {
            throw InputError("project_wrap: inner algorithm ground does not match M \\ L");
        }
        sample_ = static_cast<int>(n_ / std::numbers::e);
        kept_ = ElemSet(static_cast<std::size_t>(n_));
        virtual_picks_ = ElemSet(static_cast<std::size_t>(n_));
    }

    int ground_size() const override { return n_; }
    std::string name() const override { return "project(" + inner_->name() + ")"; }

    CoinSpace coin_space() const override {
        return CoinSpace::product(CoinSpace::bernoulli(kHeadsProbability), inner_->coin_space());
    }

    void reset_random(Rng& rng) override {
        heads_ = rand_unit(rng) <= kHeadsProbability;
        inner_->reset_random(rng);
        reset_own();
    }

    void reset_exact(std::uint64_t outcome) override {
        const std::uint64_t inner_count = inner_->coin_space().count;
        heads_ = (outcome / inner_count) == 0;
        inner_->reset_exact(outcome % inner_count);
        reset_own();
    }

    bool on_arrival(const Arrival& a) override {
        if (heads_) {
            ++seen_;
            if (seen_ <= sample_) {
                if (wp_greater(a.weight, a.priority, best_w_, best_p_)) {
                    best_w_ = a.weight;
                    best_p_ = a.priority;
                }
                return false;
            }
            if (chosen_ || !wp_greater(a.weight, a.priority, best_w_, best_p_)) return false;
            chosen_ = true;
            kept_.set(static_cast<std::size_t>(a.element));
            return true;
        }
        if (!inner_->on_arrival(a)) return false;
        virtual_picks_.set(static_cast<std::size_t>(a.element));
        kept_.set(static_cast<std::size_t>(a.element));
        if (certificate_->rank(kept_) == kept_rank_ + 1) {
            ++kept_rank_;
            return true;
        }
        // selection would create a dependency in N: only pretend to hire
        kept_.reset(static_cast<std::size_t>(a.element));
        return false;
    }

    bool last_was_tails() const override { return !heads_; }
    const ElemSet& last_virtual_picks() const override { return virtual_picks_; }
    const ElemSet& last_kept() const override { return kept_; }

    static constexpr double kHeadsProbability = std::numbers::e / (std::numbers::e + 1.0);

private:
    void reset_own() {
        seen_ = 0;
        chosen_ = false;
        best_w_ = kNegInf;
        best_p_ = kNegInf;
        kept_.reset();
        kept_rank_ = 0;
        virtual_picks_.reset();
    }

    MatroidPtr certificate_;  // N \ L on the wrapper ground
    std::unique_ptr<OnlineAlgorithm> inner_;
    int n_ = 0;
    int sample_ = 0;
    bool heads_ = false;
    int seen_ = 0;
    bool chosen_ = false;
    double best_w_ = kNegInf;
    double best_p_ = kNegInf;
    ElemSet kept_;
    int kept_rank_ = 0;
    ElemSet virtual_picks_;
};

/// Presents an inner algorithm on a larger ground set; arrivals outside the
/// kept set (loops in the perturbation chains) are dropped.
class GroundExtendWrap final : public OnlineAlgorithm {
public:
    GroundExtendWrap(std::unique_ptr<OnlineAlgorithm> inner, int outer_n, const ElemSet& kept)
        : inner_(std::move(inner)), outer_n_(outer_n) {
        if (static_cast<int>(kept.size()) != outer_n) {
            throw InputError("ground extension: kept set sized wrongly");
        }
        to_inner_.assign(static_cast<std::size_t>(outer_n), -1);
        int next = 0;
        for (std::size_t i = kept.find_first(); i != ElemSet::npos; i = kept.find_next(i)) {
            to_inner_[i] = next++;
        }
        if (next != inner_->ground_size()) {
            throw InputError("ground extension: kept set does not match the inner ground");
        }
    }

    int ground_size() const override { return outer_n_; }
    std::string name() const override { return inner_->name(); }
    CoinSpace coin_space() const override { return inner_->coin_space(); }
    void reset_random(Rng& rng) override { inner_->reset_random(rng); }
    void reset_exact(std::uint64_t outcome) override { inner_->reset_exact(outcome); }

    bool on_arrival(const Arrival& a) override {
        const int inner_id = to_inner_[static_cast<std::size_t>(a.element)];
        if (inner_id < 0) return false;
        return inner_->on_arrival(Arrival{inner_id, a.weight, a.priority});
    }

private:
    std::unique_ptr<OnlineAlgorithm> inner_;
    int outer_n_;
    std::vector<int> to_inner_;
};

class EmptyAlgorithm final : public OnlineAlgorithm {
public:
    explicit EmptyAlgorithm(int n) : n_(n) {}
    int ground_size() const override { return n_; }
    std::string name() const override { return "empty"; }
    void reset_random(Rng&) override {}
    bool on_arrival(const Arrival&) override { return false; }

private:
    int n_;
};

class ParallelSplit final : public OnlineAlgorithm {
public:
    ParallelSplit(std::unique_ptr<OnlineAlgorithm> left, std::unique_ptr<OnlineAlgorithm> right,
                  std::vector<std::pair<int, int>> route)
        : left_(std::move(left)), right_(std::move(right)), route_(std::move(route)) {}

    int ground_size() const override { return static_cast<int>(route_.size()); }
    std::string name() const override { return left_->name() + "||" + right_->name(); }

    CoinSpace coin_space() const override {
        return CoinSpace::product(left_->coin_space(), right_->coin_space());
    }

    void reset_random(Rng& rng) override {
        left_->reset_random(rng);
        right_->reset_random(rng);
    }

    void reset_exact(std::uint64_t outcome) override {
        const std::uint64_t right_count = right_->coin_space().count;
        left_->reset_exact(outcome / right_count);
        right_->reset_exact(outcome % right_count);
    }

    bool on_arrival(const Arrival& a) override {
        const auto [child, id] = route_[static_cast<std::size_t>(a.element)];
        OnlineAlgorithm& target = child == 0 ? *left_ : *right_;
        return target.on_arrival(Arrival{id, a.weight, a.priority});
    }

private:
    std::unique_ptr<OnlineAlgorithm> left_;
    std::unique_ptr<OnlineAlgorithm> right_;
    std::vector<std::pair<int, int>> route_;  // outer id -> (0 = left / 1 = right, child id)
};

}  // namespace

std::unique_ptr<OnlineAlgorithm> restrict_wrap(std::unique_ptr<OnlineAlgorithm> inner,
                                               const ElemSet& keep) {
    return std::make_unique<RestrictWrap>(std::move(inner), keep);
}

std::unique_ptr<OnlineAlgorithm> lift_wrap(MatroidPtr ambient, int x,
                                           std::unique_ptr<OnlineAlgorithm> inner) {
    return std::make_unique<LiftWrap>(std::move(ambient), x, std::move(inner));
}

std::unique_ptr<ProjectWrapAlgorithm> project_wrap(MatroidPtr ambient, int x,
                                                   std::unique_ptr<OnlineAlgorithm> inner) {
    if (x < 0 || x >= ambient->size()) throw InputError("project_wrap: x out of range");
    if (is_loop(*ambient, x)) throw InputError("project_wrap: x is a loop");
    ElemSet xonly(static_cast<std::size_t>(ambient->size()));
    xonly.set(static_cast<std::size_t>(x));
    const MatroidPtr n_matroid = make_contract(ambient, xonly);
    // certificate N \ L on the wrapper ground E - {x} - L
    const ElemSet loopset = loops(*n_matroid);
    const MatroidPtr certificate = make_delete(n_matroid, loopset);
    return std::make_unique<ProjectWrapImpl>(certificate, std::move(inner));
}

PerturbResult perturb_wrap(MatroidPtr m0, const std::vector<PerturbationStep>& steps,
                           std::unique_ptr<OnlineAlgorithm> base, int verify_cap) {
    const int n = m0->size();
    if (base->ground_size() != n) throw InputError("perturb_wrap: base algorithm ground mismatch");

    PerturbResult result;
    result.steps = static_cast<int>(steps.size());
    result.claim_factor = std::pow(std::numbers::e + 1.0, result.steps);

    std::unique_ptr<OnlineAlgorithm> cur = std::move(base);
    MatroidPtr cur_m = std::move(m0);

    for (std::size_t i = 0; i < steps.size(); ++i) {
        const PerturbationStep& step = steps[i];
        const auto fail = [&i](const std::string& why) {
            throw InputError("perturb_wrap: step " + std::to_string(i) + ": " + why);
        };
        if (!step.ambient || step.ambient->size() != n + 1) fail("ambient ground size mismatch");
        if (step.x < 0 || step.x >= step.ambient->size()) fail("x out of range");
        if (is_loop(*step.ambient, step.x)) fail("x is a loop of the ambient");

        ElemSet xonly(static_cast<std::size_t>(n + 1));
        xonly.set(static_cast<std::size_t>(step.x));
        const MatroidPtr deleted = make_delete(step.ambient, xonly);
        const MatroidPtr contracted = make_contract(step.ambient, xonly);

        if (step.direction == PerturbationStep::Direction::kLiftOf) {
            // chain matroid so far must equal ambient / x; the lift is ambient \ x
            if (!ranks_equal(*contracted, *cur_m, verify_cap)) fail("ambient/x does not match the chain");
            cur = lift_wrap(step.ambient, step.x, std::move(cur));
            cur_m = deleted;
        } else {
            if (!ranks_equal(*deleted, *cur_m, verify_cap)) fail("ambient\\x does not match the chain");
            const ElemSet loopset = loops(*contracted);
            ElemSet kept = loopset;
            kept.flip();
            std::unique_ptr<OnlineAlgorithm> inner = std::move(cur);
            if (loopset.any()) inner = restrict_wrap(std::move(inner), kept);

            std::unique_ptr<OnlineAlgorithm> projected =
                project_wrap(step.ambient, step.x, std::move(inner));
            cur = loopset.any()
                      ? std::make_unique<GroundExtendWrap>(std::move(projected), n, kept)
                      : std::move(projected);
            cur_m = contracted;
        }
    }

    result.alg = std::move(cur);
    result.final_matroid = std::move(cur_m);
    return result;
}

MultiProjectResult multi_project_wrap(MatroidPtr m0, const std::vector<PerturbationStep>& chain,
                                      std::unique_ptr<OnlineAlgorithm> base, int verify_cap) {
    const int n = m0->size();
    if (base->ground_size() != n) throw InputError("multi_project_wrap: base algorithm ground mismatch");

    MultiProjectResult result;
    result.steps = static_cast<int>(chain.size());
    result.claim_factor = std::pow(std::numbers::e + 1.0, result.steps);

    std::unique_ptr<OnlineAlgorithm> cur = std::move(base);
    MatroidPtr cur_m = m0;                     // current chain matroid on the full common ground
    ElemSet kept = full_set(static_cast<std::size_t>(n));

    for (std::size_t i = 0; i < chain.size(); ++i) {
        const PerturbationStep& step = chain[i];
        const auto fail = [&i](const std::string& why) {
            throw InputError("multi_project_wrap: step " + std::to_string(i) + ": " + why);
        };
        if (step.direction != PerturbationStep::Direction::kProjectionOf) {
            fail("chain must consist of projections");
        }
        if (!step.ambient || step.ambient->size() != n + 1) fail("ambient ground size mismatch");
        if (step.x < 0 || step.x >= step.ambient->size()) fail("x out of range");
        if (is_loop(*step.ambient, step.x)) fail("x is a loop of the ambient");

        ElemSet xonly(static_cast<std::size_t>(n + 1));
        xonly.set(static_cast<std::size_t>(step.x));
        const MatroidPtr deleted = make_delete(step.ambient, xonly);
        const MatroidPtr contracted = make_contract(step.ambient, xonly);
        if (!ranks_equal(*deleted, *cur_m, verify_cap)) fail("ambient\\x does not match the chain");

        const ElemSet loopset = loops(*contracted);
        ElemSet new_kept = loopset;
        new_kept.flip();
        if ((new_kept & ~kept).any()) {
            throw std::logic_error("multi_project_wrap: loops disappeared along the chain");
        }
        if (new_kept != kept) {
            // Lemma-deletion bridge from E - L_{i-1} to E - L_i
            ElemSet keep_rel(kept.count());
            std::size_t pos = 0;
            for (std::size_t e = kept.find_first(); e != ElemSet::npos; e = kept.find_next(e), ++pos) {
                if (new_kept.test(e)) keep_rel.set(pos);
            }
            cur = restrict_wrap(std::move(cur), keep_rel);
        }

        cur = project_wrap(step.ambient, step.x, std::move(cur));
        kept = new_kept;
        cur_m = contracted;
    }

    result.removed_loops = kept;
    result.removed_loops.flip();
    result.final_matroid = cur_m;
    result.domain = make_restrict(std::move(m0), kept);
    result.certificate = make_restrict(std::move(cur_m), kept);
    result.alg = std::move(cur);
    return result;
}

nlohmann::json CompositionPlan::to_json() const {
    nlohmann::json j;
    j["thickness"] = thickness;
    j["leaf_competitiveness"] = leaf_competitiveness;
    j["claim_factor"] = claim_factor;
    j["claimed_ratio"] = claimed_ratio;
    j["peels"] = nlohmann::json::array();
    for (const Peel& p : peels) {
        j["peels"].push_back({{"vertex", p.vertex},
                              {"part", p.part},
                              {"moved", p.moved},
                              {"closure_ghosts", p.closure_ghosts},
                              {"lambda", p.lambda_value},
                              {"leaf_algorithm", p.leaf_algorithm}});
    }
    return j;
}

namespace {

std::vector<int> map_through(const std::vector<int>& cur_to_orig, const ElemSet& members) {
    std::vector<int> out;
    out.reserve(members.count());
    for (std::size_t e = members.find_first(); e != ElemSet::npos; e = members.find_next(e)) {
        out.push_back(cur_to_orig[e]);
    }
    return out;
}

std::unique_ptr<OnlineAlgorithm> compose_recursive(MatroidPtr m_cur, const TreeDecomposition& td_cur,
                                                   const std::vector<int>& vertex_labels,
                                                   const std::vector<int>& cur_to_orig,
                                                   const LeafAlgorithmFactory& factory, Rng& rng,
                                                   CompositionPlan& plan) {
    if (td_cur.num_vertices == 1) {
        CompositionPlan::Peel peel;
        peel.vertex = vertex_labels[0];
        peel.part = map_through(cur_to_orig, td_cur.parts[0]);
        auto alg = factory(m_cur, vertex_labels[0]);
        if (!alg || alg->ground_size() != m_cur->size()) {
            throw InputError("tree_compose: leaf factory returned wrong ground for vertex " +
                             std::to_string(vertex_labels[0]));
        }
        peel.leaf_algorithm = alg->name();
        plan.peels.push_back(std::move(peel));
        return alg;
    }

    // lowest-indexed leaf (by original vertex label) for reproducible plans
    int leaf_local = -1;
    for (int v : td_cur.leaves()) {
        if (leaf_local < 0 ||
            vertex_labels[static_cast<std::size_t>(v)] < vertex_labels[static_cast<std::size_t>(leaf_local)]) {
            leaf_local = v;
        }
    }

    const TreeDecomposition td_norm = normalize_leaf(*m_cur, td_cur, leaf_local);
    const ElemSet& xl = td_norm.parts[static_cast<std::size_t>(leaf_local)];

    CompositionPlan::Peel peel;
    peel.vertex = vertex_labels[static_cast<std::size_t>(leaf_local)];
    peel.part = map_through(cur_to_orig, xl);
    peel.moved = map_through(cur_to_orig,
                             td_cur.parts[static_cast<std::size_t>(leaf_local)] & ~xl);

    std::unique_ptr<OnlineAlgorithm> leaf_alg;
    if (xl.none()) {
        leaf_alg = std::make_unique<EmptyAlgorithm>(0);
        peel.leaf_algorithm = leaf_alg->name();
    } else {
        const ElemSet cl = closure(*m_cur, xl);
        const MatroidPtr leaf_matroid = make_restrict(m_cur, cl);
        peel.closure_ghosts = map_through(cur_to_orig, cl & ~xl);

        auto inner = factory(leaf_matroid, peel.vertex);
        if (!inner || inner->ground_size() != leaf_matroid->size()) {
            throw InputError("tree_compose: leaf factory returned wrong ground for vertex " +
                             std::to_string(peel.vertex));
        }
        peel.leaf_algorithm = inner->name();

        // Lemma-deletion restriction from cl(X_l) to X_l
        ElemSet xl_rel(cl.count());
        std::size_t pos = 0;
        for (std::size_t e = cl.find_first(); e != ElemSet::npos; e = cl.find_next(e), ++pos) {
            if (xl.test(e)) xl_rel.set(pos);
        }
        auto restricted = restrict_wrap(std::move(inner), xl_rel);

        // projection chain from M|X_l to M/(E - X_l)
        const LambdaWitness witness = lemma_lambda_witness(m_cur, xl, rng);
        peel.lambda_value = static_cast<int>(witness.I3.count());
        const std::vector<PerturbationStep> chain = projection_chain(witness);
        MultiProjectResult mp =
            multi_project_wrap(make_restrict(m_cur, xl), chain, std::move(restricted));
        if (mp.removed_loops.any()) {
            // a full tree-decomposition guarantees M/(E - X_l) is loop-free
            // once X_l n cl(X_u) has been emptied
            throw std::logic_error("tree_compose: projected leaf matroid has loops");
        }
        leaf_alg = std::move(mp.alg);
    }
    plan.peels.push_back(std::move(peel));

    // recurse on M \ X_l with the leaf removed
    const MatroidPtr m_rest = make_delete(m_cur, xl);
    ElemSet rest_set = xl;
    rest_set.flip();
    const std::vector<int> rest_members = set_members(rest_set);

    std::vector<int> rest_to_orig;
    rest_to_orig.reserve(rest_members.size());
    for (int e : rest_members) rest_to_orig.push_back(cur_to_orig[static_cast<std::size_t>(e)]);

    std::vector<int> old_of_new(static_cast<std::size_t>(td_norm.num_vertices - 1));
    std::vector<int> new_of_old(static_cast<std::size_t>(td_norm.num_vertices), -1);
    {
        int next = 0;
        for (int v = 0; v < td_norm.num_vertices; ++v) {
            if (v == leaf_local) continue;
            old_of_new[static_cast<std::size_t>(next)] = v;
            new_of_old[static_cast<std::size_t>(v)] = next;
            ++next;
        }
    }
    TreeDecomposition td_rest;
    td_rest.num_vertices = td_norm.num_vertices - 1;
    for (const auto& [a, b] : td_norm.edges) {
        if (a == leaf_local || b == leaf_local) continue;
        td_rest.edges.emplace_back(new_of_old[static_cast<std::size_t>(a)],
                                   new_of_old[static_cast<std::size_t>(b)]);
    }
    std::vector<int> rest_labels;
    rest_labels.reserve(old_of_new.size());
    for (int old_v : old_of_new) {
        rest_labels.push_back(vertex_labels[static_cast<std::size_t>(old_v)]);
        ElemSet part(rest_members.size());
        const ElemSet& old_part = td_norm.parts[static_cast<std::size_t>(old_v)];
        for (std::size_t i = 0; i < rest_members.size(); ++i) {
            if (old_part.test(static_cast<std::size_t>(rest_members[i]))) part.set(i);
        }
        td_rest.parts.push_back(std::move(part));
    }

    auto rest_alg =
        compose_recursive(m_rest, td_rest, rest_labels, rest_to_orig, factory, rng, plan);

    std::vector<std::pair<int, int>> route(static_cast<std::size_t>(m_cur->size()));
    int left_next = 0;
    int right_next = 0;
    for (int e = 0; e < m_cur->size(); ++e) {
        if (xl.test(static_cast<std::size_t>(e))) {
            route[static_cast<std::size_t>(e)] = {0, left_next++};
        } else {
            route[static_cast<std::size_t>(e)] = {1, right_next++};
        }
    }
    return std::make_unique<ParallelSplit>(std::move(leaf_alg), std::move(rest_alg), std::move(route));
}

}  // namespace

TreeComposeResult tree_compose(MatroidPtr m, const TreeDecomposition& td,
                               const LeafAlgorithmFactory& factory, Rng& rng,
                               double leaf_competitiveness) {
    td.validate(*m);
    if (!is_full(*m, td)) throw InputError("tree_compose: tree-decomposition is not full");

    TreeComposeResult result;
    result.plan.thickness = thickness(*m, td);
    result.plan.leaf_competitiveness = leaf_competitiveness;
    result.plan.claim_factor = std::pow(std::numbers::e + 1.0, result.plan.thickness);
    result.plan.claimed_ratio = leaf_competitiveness * result.plan.claim_factor;

    std::vector<int> labels(static_cast<std::size_t>(td.num_vertices));
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<int> identity(static_cast<std::size_t>(m->size()));
    std::iota(identity.begin(), identity.end(), 0);

    result.alg = compose_recursive(std::move(m), td, labels, identity, factory, rng, result.plan);
    return result;
}

RegularComposeResult regular_compose(const DecompositionSpec& spec, Rng& rng, int density_cap) {
    spec.td.validate(*spec.matroid);
    for (int v = 0; v < spec.td.num_vertices; ++v) {
        const std::string& label = spec.labels[static_cast<std::size_t>(v)];
        if (label != "graphic" && label != "cographic" && label != "r10") {
            throw InputError("regular_compose: vertex " + std::to_string(v + 1) +
                             " needs a label graphic, cographic or r10");
        }
    }
    const int k = thickness(*spec.matroid, spec.td);
    if (k > 2) {
        throw InputError("regular_compose: thickness " + std::to_string(k) + " exceeds 2");
    }
    for (int v = 0; v < spec.td.num_vertices; ++v) {
        if (spec.labels[static_cast<std::size_t>(v)] != "r10") continue;
        const ElemSet cl = closure(*spec.matroid, spec.td.parts[static_cast<std::size_t>(v)]);
        if (static_cast<int>(cl.count()) > density_cap) continue;  // too big to enumerate; trusted
        const Rational d = density(make_restrict(spec.matroid, cl), density_cap);
        if (d != Rational(2)) {
            throw InputError("regular_compose: part " + std::to_string(v + 1) +
                             " labeled r10 has density != 2");
        }
    }

    auto factory = [](MatroidPtr leaf, int) {
        return threshold_greedy(std::move(leaf), 1.0 / std::numbers::e);
    };
    TreeComposeResult composed = tree_compose(spec.matroid, spec.td, factory, rng);

    RegularComposeResult out;
    out.plan = std::move(composed.plan);
    out.labels = spec.labels;
    out.ambient = spec.matroid;
    if (spec.has_restrict && !spec.restrict_to.all()) {
        out.alg = restrict_wrap(std::move(composed.alg), spec.restrict_to);
        out.matroid = make_restrict(spec.matroid, spec.restrict_to);
    } else {
        out.alg = std::move(composed.alg);
        out.matroid = spec.matroid;
    }
    return out;
}

}  // namespace msl
