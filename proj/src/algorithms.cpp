#include "msl/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace msl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class ClassicalSecretary final : public OnlineAlgorithm {
public:
    ClassicalSecretary(int n, int sample) : n_(n), sample_(sample) {
        if (n < 1) throw InputError("classical: need n >= 1");
        if (sample < 0 || sample >= n) throw InputError("classical: need 0 <= sample < n");
    }

    int ground_size() const override { return n_; }
    std::string name() const override {
        std::ostringstream os;
        os << "classical[" << sample_ << "]";
        return os.str();
    }

    void reset_random(Rng&) override {
        seen_ = 0;
        done_ = false;
        best_w_ = kNegInf;
        best_p_ = kNegInf;
    }

    bool on_arrival(const Arrival& a) override {
        ++seen_;
        if (seen_ <= sample_) {
            if (wp_greater(a.weight, a.priority, best_w_, best_p_)) {
                best_w_ = a.weight;
                best_p_ = a.priority;
            }
            return false;
        }
        if (done_ || !wp_greater(a.weight, a.priority, best_w_, best_p_)) return false;
        done_ = true;
        return true;
    }

private:
    int n_;
    int sample_;
    int seen_ = 0;
    bool done_ = false;
    double best_w_ = kNegInf;
    double best_p_ = kNegInf;
};

class RandomBasis final : public OnlineAlgorithm {
public:
    RandomBasis(MatroidPtr m, int exact_cap, int attempts)
        : m_(std::move(m)), cap_(exact_cap), attempts_(attempts) {
        basis_ = ElemSet(static_cast<std::size_t>(m_->size()));
    }

    int ground_size() const override { return m_->size(); }
    std::string name() const override { return "rb"; }

    CoinSpace coin_space() const override {
        if (m_->size() > cap_) return CoinSpace::undeclared();
        return CoinSpace::uniform(bases().size());
    }

    void reset_random(Rng& rng) override { basis_ = sample_random_basis(*m_, rng, attempts_); }

    void reset_exact(std::uint64_t outcome) override {
        const auto& all = bases();
        if (outcome >= all.size()) throw InputError("rb: coin outcome out of range");
        basis_ = all[outcome];
    }

    bool on_arrival(const Arrival& a) override {
        return basis_.test(static_cast<std::size_t>(a.element));
    }

private:
    const std::vector<ElemSet>& bases() const {
        if (bases_.empty()) bases_ = enumerate_bases(*m_, cap_);
        return bases_;
    }

    MatroidPtr m_;
    int cap_;
    int attempts_;
    ElemSet basis_;
    mutable std::vector<ElemSet> bases_;
};

// Kleinberg's recursive halving scheme, flattened into an ordered phase list
// over arrival positions. The phase list is rebuilt at every reset because
// the binomial split points are random.
class KleinbergUni final : public OnlineAlgorithm {
public:
    KleinbergUni(int r, int n) : r_(r), n_(n) {
        if (r < 1 || r > n) throw InputError("uni: need 1 <= r <= n");
    }

    int ground_size() const override { return n_; }
    std::string name() const override {
        std::ostringstream os;
        os << "uni[" << r_ << "]";
        return os.str();
    }

    CoinSpace coin_space() const override {
        // no binomial draws happen iff the top level is a leaf phase
        if (r_ == 1 || r_ >= n_) return CoinSpace::deterministic();
        return CoinSpace::undeclared();
    }

    void reset_random(Rng& rng) override {
        phases_.clear();
        seen_.assign(static_cast<std::size_t>(n_), {0.0, 0.0});
        pos_ = 0;
        phase_index_ = 0;
        accepted_ = 0;
        build(0, n_, r_, rng);
    }

    void reset_exact(std::uint64_t outcome) override {
        if (!coin_space().declared() || outcome != 0) {
            throw UnsupportedError("uni: exact evaluation unsupported for 1 < r < n");
        }
        Rng unused = make_rng(0);
        reset_random(unused);
    }

    bool on_arrival(const Arrival& a) override {
        seen_[static_cast<std::size_t>(pos_)] = {a.weight, a.priority};
        while (phase_index_ + 1 < static_cast<int>(phases_.size()) &&
               pos_ >= phases_[static_cast<std::size_t>(phase_index_)].hi) {
            ++phase_index_;
        }
        Phase& ph = phases_[static_cast<std::size_t>(phase_index_)];
        bool take = false;
        switch (ph.kind) {
            case Phase::kTakeAll:
                take = true;
                break;
            case Phase::kClassical: {
                const int local = pos_ - ph.lo;
                if (local < ph.k) {
                    if (wp_greater(a.weight, a.priority, ph.best_w, ph.best_p)) {
                        ph.best_w = a.weight;
                        ph.best_p = a.priority;
                    }
                } else if (!ph.chosen && wp_greater(a.weight, a.priority, ph.best_w, ph.best_p)) {
                    ph.chosen = true;
                    take = true;
                }
                break;
            }
            case Phase::kThreshold: {
                if (!ph.threshold_set) {
                    set_threshold(ph);
                }
                take = wp_greater(a.weight, a.priority, ph.best_w, ph.best_p);
                break;
            }
        }
        ++pos_;
        if (take && accepted_ < r_) {
            ++accepted_;
            return true;
        }
        return false;
    }

private:
    struct Phase {
        enum Kind { kTakeAll, kClassical, kThreshold };
        Kind kind = kTakeAll;
        int lo = 0, hi = 0;
        int k = 0;            // classical: sample size; threshold: order statistic
        int slo = 0, shi = 0; // threshold: sampled position range
        bool threshold_set = false;
        bool chosen = false;
        double best_w = kNegInf;  // classical: best sampled; threshold: the threshold
        double best_p = kNegInf;
    };

    void build(int lo, int hi, int budget, Rng& rng) {
        const int len = hi - lo;
        if (len == 0) return;
        Phase ph;
        ph.lo = lo;
        ph.hi = hi;
        if (budget >= len) {
            ph.kind = Phase::kTakeAll;
            phases_.push_back(ph);
            return;
        }
        if (budget <= 1) {
            ph.kind = Phase::kClassical;
            ph.k = default_sample_size(len);
            phases_.push_back(ph);
            return;
        }
        const int m = rand_binomial_half(rng, len);
        build(lo, lo + m, budget / 2, rng);
        ph.kind = Phase::kThreshold;
        ph.lo = lo + m;
        ph.k = budget / 2;
        ph.slo = lo;
        ph.shi = lo + m;
        phases_.push_back(ph);
    }

    void set_threshold(Phase& ph) {
        ph.threshold_set = true;
        const int sampled = ph.shi - ph.slo;
        if (sampled < ph.k) return;  // keep -inf: accept everything up to capacity
        std::vector<std::pair<double, double>> vals(seen_.begin() + ph.slo, seen_.begin() + ph.shi);
        std::nth_element(vals.begin(), vals.begin() + (ph.k - 1), vals.end(),
                         [](const auto& a, const auto& b) {
                             return wp_greater(a.first, a.second, b.first, b.second);
                         });
        ph.best_w = vals[static_cast<std::size_t>(ph.k - 1)].first;
        ph.best_p = vals[static_cast<std::size_t>(ph.k - 1)].second;
    }

    int r_, n_;
    std::vector<Phase> phases_;
    std::vector<std::pair<double, double>> seen_;
    int pos_ = 0;
    int phase_index_ = 0;
    int accepted_ = 0;
};

class Pav final : public OnlineAlgorithm {
public:
    Pav(MatroidPtr m, int verify_cap) : m_(std::move(m)) {
        const int r = m_->full_rank();
        if (r < 2) throw InputError("pav: requires rank at least 2");
        if (m_->size() <= verify_cap && !is_paving(*m_, verify_cap)) {
            throw InputError("pav: matroid is not paving");
        }
        inner_ = kleinberg_uni(r - 1, m_->size());
    }

    int ground_size() const override { return m_->size(); }
    std::string name() const override { return "pav"; }
    CoinSpace coin_space() const override { return inner_->coin_space(); }
    void reset_random(Rng& rng) override { inner_->reset_random(rng); }
    void reset_exact(std::uint64_t outcome) override { inner_->reset_exact(outcome); }
    bool on_arrival(const Arrival& a) override { return inner_->on_arrival(a); }

private:
    MatroidPtr m_;
    std::unique_ptr<OnlineAlgorithm> inner_;
};

class ThresholdGreedy final : public OnlineAlgorithm {
public:
    ThresholdGreedy(MatroidPtr m, double rho) : m_(std::move(m)), rho_(rho) {
        if (!(rho >= 0.0 && rho < 1.0)) throw InputError("tgreedy: need rho in [0,1)");
        sample_ = static_cast<int>(rho * m_->size());
        accepted_ = ElemSet(static_cast<std::size_t>(m_->size()));
    }

    int ground_size() const override { return m_->size(); }
    std::string name() const override {
        std::ostringstream os;
        os << "tgreedy[" << rho_ << "]";
        return os.str();
    }

    void reset_random(Rng&) override {
        seen_ = 0;
        thr_w_ = kNegInf;
        thr_p_ = kNegInf;
        accepted_.reset();
        accepted_rank_ = 0;
    }

    bool on_arrival(const Arrival& a) override {
        ++seen_;
        if (seen_ <= sample_) {
            if (wp_greater(a.weight, a.priority, thr_w_, thr_p_)) {
                thr_w_ = a.weight;
                thr_p_ = a.priority;
            }
            return false;
        }
        if (!wp_greater(a.weight, a.priority, thr_w_, thr_p_)) return false;
        accepted_.set(static_cast<std::size_t>(a.element));
        if (m_->rank(accepted_) == accepted_rank_ + 1) {
            ++accepted_rank_;
            return true;
        }
        accepted_.reset(static_cast<std::size_t>(a.element));
        return false;
    }

private:
    MatroidPtr m_;
    double rho_;
    int sample_ = 0;
    int seen_ = 0;
    double thr_w_ = kNegInf;
    double thr_p_ = kNegInf;
    ElemSet accepted_;
    int accepted_rank_ = 0;
};

}  // namespace

int default_sample_size(int n) {
    return static_cast<int>(static_cast<double>(n) / std::numbers::e);
}

double classical_success_probability(int n, int t) {
    if (n < 1 || t < 0 || t >= n) throw InputError("classical_success_probability: need 0 <= t < n");
    if (t == 0) return 1.0 / n;
    double sum = 0.0;
    for (int j = t + 1; j <= n; ++j) sum += 1.0 / (j - 1);
    return (static_cast<double>(t) / n) * sum;
}

std::unique_ptr<OnlineAlgorithm> classical_secretary(int n, int sample) {
    return std::make_unique<ClassicalSecretary>(n, sample);
}

std::unique_ptr<OnlineAlgorithm> classical_secretary(int n) {
    return std::make_unique<ClassicalSecretary>(n, default_sample_size(n));
}

std::unique_ptr<OnlineAlgorithm> random_basis(MatroidPtr m, int exact_cap, int sample_attempts) {
    return std::make_unique<RandomBasis>(std::move(m), exact_cap, sample_attempts);
}

std::unique_ptr<OnlineAlgorithm> kleinberg_uni(int r, int n) {
    return std::make_unique<KleinbergUni>(r, n);
}

std::unique_ptr<OnlineAlgorithm> pav(MatroidPtr m, int verify_cap) {
    return std::make_unique<Pav>(std::move(m), verify_cap);
}

std::unique_ptr<OnlineAlgorithm> threshold_greedy(MatroidPtr m, double rho) {
    return std::make_unique<ThresholdGreedy>(std::move(m), rho);
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec, MatroidPtr m) {
    std::string head = spec;
    std::optional<std::string> param;
    const auto open = spec.find('[');
    if (open != std::string::npos) {
        if (spec.back() != ']') throw InputError("algorithm spec: missing closing bracket in " + spec);
        head = spec.substr(0, open);
        param = spec.substr(open + 1, spec.size() - open - 2);
    }
    const int n = m->size();
    if (head == "classical") {
        const int sample = param ? std::stoi(*param) : default_sample_size(n);
        return classical_secretary(n, sample);
    }
    if (head == "rb") {
        if (param) throw InputError("algorithm spec: rb takes no parameter");
        return random_basis(std::move(m));
    }
    if (head == "uni") {
        const int r = param ? std::stoi(*param) : m->full_rank();
        return kleinberg_uni(r, n);
    }
    if (head == "pav") {
        if (param) throw InputError("algorithm spec: pav takes no parameter");
        return pav(std::move(m));
    }
    if (head == "tgreedy") {
        const double rho = param ? std::stod(*param) : 1.0 / std::numbers::e;
        return threshold_greedy(std::move(m), rho);
    }
    throw InputError("algorithm spec: unknown algorithm '" + head + "'");
}

}  // namespace msl
