#include "msl/fixtures.hpp"

#include "msl/algorithms.hpp"
#include "msl/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msl {

MatroidPtr fixture_k4() { return make_complete_graphic(4); }

MatroidPtr fixture_u24() { return make_uniform(2, 4); }

MatroidPtr fixture_sp_small() {
    return make_sparse_paving(3, 6, {make_set(6, {0, 1, 2})});
}

MatroidPtr fixture_direct_sum_pair() {
    return make_direct_sum(make_uniform(1, 2), make_uniform(1, 2));
}

MatroidPtr fixture_four_cycle() {
    return make_graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

MatroidPtr fixture_graphic_parallel5() {
    return make_graphic(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {0, 2}});
}

Weighting fixture_weights(int n, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0x77);
    Weighting w(static_cast<std::size_t>(n));
    for (bool distinct = false; !distinct;) {
        for (auto& x : w) x = rand_unit(rng);
        Weighting sorted = w;
        std::sort(sorted.begin(), sorted.end());
        distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    return w;
}

namespace {

Weighting restrict_weights(const Weighting& w, const ElemSet& keep) {
    Weighting out;
    out.reserve(keep.count());
    for (std::size_t i = keep.find_first(); i != ElemSet::npos; i = keep.find_next(i)) {
        out.push_back(w[i]);
    }
    return out;
}

// lift passthrough fixture: L = U_{2,3} with x = 0, so the parallel class of
// x is trivial and the wrapper forwards everything to the inner algorithm
struct LiftPassthrough {
    MatroidPtr ambient = make_uniform(2, 3);
    int x = 0;
    MatroidPtr inner_matroid = make_contract(make_uniform(2, 3), make_set(3, {0}));   // U_{1,2}
    MatroidPtr outer_matroid = make_delete(make_uniform(2, 3), make_set(3, {0}));     // U_{2,2}
    std::unique_ptr<OnlineAlgorithm> make_alg() const {
        return lift_wrap(ambient, x, classical_secretary(2, 1));
    }
};

// lift with a nontrivial parallel class: L = graphic_parallel5, x = 0;
// L/x has loops {1,2} and the parallel pair {3,4}
struct LiftParallel {
    MatroidPtr ambient = fixture_graphic_parallel5();
    int x = 0;
    MatroidPtr inner_matroid = make_contract(fixture_graphic_parallel5(), make_set(5, {0}));
    MatroidPtr outer_matroid = make_delete(fixture_graphic_parallel5(), make_set(5, {0}));
    std::unique_ptr<OnlineAlgorithm> make_alg() const {
        return lift_wrap(ambient, x, random_basis(inner_matroid));
    }
};

// projection fixture: P = U_{2,3} with x = 0, N = U_{1,2}, M = U_{2,2}, L empty
struct ProjectSmall {
    MatroidPtr ambient = make_uniform(2, 3);
    int x = 0;
    MatroidPtr domain = make_delete(make_uniform(2, 3), make_set(3, {0}));       // U_{2,2}
    MatroidPtr certificate = make_contract(make_uniform(2, 3), make_set(3, {0}));  // U_{1,2}
    std::unique_ptr<OnlineAlgorithm> make_alg() const {
        return project_wrap(ambient, x, threshold_greedy(domain, 0.0));
    }
};

// projection fixture on six elements: P = U_{3,6}, N = U_{2,5}, M = U_{3,5}
struct ProjectLarger {
    MatroidPtr ambient = make_uniform(3, 6);
    int x = 0;
    MatroidPtr domain = make_delete(make_uniform(3, 6), make_set(6, {0}));
    std::unique_ptr<OnlineAlgorithm> make_alg() const {
        return project_wrap(ambient, x, threshold_greedy(domain, 1.0 / std::numbers::e));
    }
};

// two-step perturbation U_{1,5} -> lift -> U_{2,5} -> projection -> U_{1,5}
struct PerturbChain {
    MatroidPtr m0 = make_uniform(1, 5);
    std::vector<PerturbationStep> steps() const {
        PerturbationStep lift;
        lift.ambient = make_uniform(2, 6);
        lift.x = 0;
        lift.direction = PerturbationStep::Direction::kLiftOf;
        PerturbationStep proj;
        proj.ambient = make_uniform(2, 6);
        proj.x = 0;
        proj.direction = PerturbationStep::Direction::kProjectionOf;
        return {lift, proj};
    }
    PerturbResult build() const {
        return perturb_wrap(m0, steps(), classical_secretary(5));
    }
};

// multi-projection driven by the lambda witness of X = {0,1,2} in U_{2,4}
struct MultiProjectWitness {
    MatroidPtr m = fixture_u24();
    ElemSet x_set = make_set(4, {0, 1, 2});
    std::uint64_t seed;
    MultiProjectResult build() const {
        Rng rng = make_rng(seed, 0x1111);
        const LambdaWitness witness = lemma_lambda_witness(m, x_set, rng);
        const MatroidPtr domain = make_restrict(m, x_set);
        return multi_project_wrap(domain, projection_chain(witness),
                                  threshold_greedy(domain, 0.0));
    }
};

TreeDecomposition direct_sum_td() {
    TreeDecomposition td;
    td.num_vertices = 2;
    td.edges = {{0, 1}};
    td.parts = {make_set(4, {0, 1}), make_set(4, {2, 3})};
    return td;
}

TreeDecomposition k4_star_triangle_td() {
    TreeDecomposition td;
    td.num_vertices = 2;
    td.edges = {{0, 1}};
    td.parts = {make_set(6, {3, 4, 5}), make_set(6, {0, 1, 2})};  // star first: it peels first
    return td;
}

TreeDecomposition four_cycle_td() {
    TreeDecomposition td;
    td.num_vertices = 2;
    td.edges = {{0, 1}};
    td.parts = {make_set(4, {0, 1}), make_set(4, {2, 3})};
    return td;
}

std::unique_ptr<OnlineAlgorithm> build_tree0(std::uint64_t seed) {
    Rng rng = make_rng(seed, 0x2222);
    auto factory = [](MatroidPtr leaf, int) {
        return classical_secretary(leaf->size(), 0);
    };
    return tree_compose(fixture_direct_sum_pair(), direct_sum_td(), factory, rng).alg;
}

std::unique_ptr<OnlineAlgorithm> build_tree2(std::uint64_t seed) {
    Rng rng = make_rng(seed, 0x3333);
    auto factory = [](MatroidPtr leaf, int) { return threshold_greedy(std::move(leaf), 0.0); };
    return tree_compose(fixture_k4(), k4_star_triangle_td(), factory, rng).alg;
}

std::unique_ptr<OnlineAlgorithm> build_tree1(std::uint64_t seed) {
    Rng rng = make_rng(seed, 0x4444);
    auto factory = [](MatroidPtr leaf, int) {
        return threshold_greedy(std::move(leaf), 1.0 / std::numbers::e);
    };
    return tree_compose(fixture_four_cycle(), four_cycle_td(), factory, rng).alg;
}

}  // namespace

std::vector<SoundnessCase> soundness_cases(std::uint64_t seed) {
    std::vector<SoundnessCase> cases;
    const auto add = [&cases](std::string name, MatroidPtr m, Weighting w,
                              std::function<std::unique_ptr<OnlineAlgorithm>()> make, bool exhaustive) {
        cases.push_back(SoundnessCase{std::move(name), std::move(m), std::move(w), std::move(make),
                                      exhaustive});
    };

    const MatroidPtr u13 = make_uniform(1, 3);
    const MatroidPtr u24 = fixture_u24();
    const MatroidPtr k4 = fixture_k4();
    const MatroidPtr sp = fixture_sp_small();
    const MatroidPtr dsum = fixture_direct_sum_pair();
    const MatroidPtr r10 = make_r10();

    const Weighting w3 = fixture_weights(3, seed + 1);
    const Weighting w4 = fixture_weights(4, seed + 2);
    const Weighting w6 = fixture_weights(6, seed + 3);
    const Weighting w10 = fixture_weights(10, seed + 4);

    add("u13-classical", u13, w3, [] { return classical_secretary(3); }, true);
    add("u24-classical", u24, w4, [] { return classical_secretary(4, 1); }, true);
    add("u24-rb", u24, w4, [u24] { return random_basis(u24); }, true);
    add("u24-tgreedy", u24, w4, [u24] { return threshold_greedy(u24, 1.0 / std::numbers::e); }, true);
    add("u24-pav", u24, w4, [u24] { return pav(u24); }, true);
    add("u24-uni-takeall", u24, w4, [] { return kleinberg_uni(4, 4); }, true);
    add("u14-uni-rank1", make_uniform(1, 4), w4, [] { return kleinberg_uni(1, 4); }, true);
    add("k4-rb", k4, w6, [k4] { return random_basis(k4); }, true);
    add("k4-tgreedy0", k4, w6, [k4] { return threshold_greedy(k4, 0.0); }, true);
    add("sp-small-rb", sp, w6, [sp] { return random_basis(sp); }, true);
    add("sp-small-tgreedy", sp, w6, [sp] { return threshold_greedy(sp, 1.0 / std::numbers::e); }, true);
    add("dsum-classical", dsum, w4, [] { return classical_secretary(4, 1); }, true);

    // wrappers, exhaustively
    {
        const ElemSet keep = make_set(3, {0, 1});
        add("restrict-u13", make_restrict(u13, keep), restrict_weights(w3, keep),
            [keep] { return restrict_wrap(classical_secretary(3), keep); }, true);
    }
    {
        LiftPassthrough f;
        add("lift-passthrough", f.outer_matroid, {0.8, 0.0}, [f] { return f.make_alg(); }, true);
    }
    {
        LiftParallel f;
        const Weighting w = restrict_weights(w6, make_set(6, {0, 1, 2, 3}));  // any 4 distinct
        add("lift-parallel", f.outer_matroid, w, [f] { return f.make_alg(); }, true);
    }
    {
        ProjectSmall f;
        add("project-u23-domain", f.domain, {0.9, 0.4}, [f] { return f.make_alg(); }, true);
        add("project-u23-cert", f.certificate, {0.9, 0.4}, [f] { return f.make_alg(); }, true);
    }
    {
        PerturbChain f;
        const Weighting w5 = fixture_weights(5, seed + 5);
        add("perturb-lift-project", f.build().final_matroid, w5, [f] { return f.build().alg; }, true);
    }
    {
        MultiProjectWitness f{fixture_u24(), make_set(4, {0, 1, 2}), seed};
        const Weighting w = restrict_weights(w4, f.x_set);
        MultiProjectResult built = f.build();
        add("multiproject-u24-domain", built.domain, w, [f] { return f.build().alg; }, true);
        add("multiproject-u24-cert", built.certificate, w, [f] { return f.build().alg; }, true);
    }
    add("tree0-dsum", dsum, w4, [seed] { return build_tree0(seed); }, true);
    add("tree2-k4", k4, w6, [seed] { return build_tree2(seed); }, true);
    add("tree1-4cycle", fixture_four_cycle(), w4, [seed] { return build_tree1(seed); }, true);

    // Monte Carlo cases on the same small fixtures for the undeclared-coin
    // algorithms, plus R_10
    add("sp-small-pav-mc", sp, w6, [sp] { return pav(sp); }, false);
    add("u66-uni-mc", make_uniform(3, 6), w6, [] { return kleinberg_uni(3, 6); }, false);
    add("r10-rb-mc", r10, w10, [r10] { return random_basis(r10); }, false);
    add("r10-tgreedy-mc", r10, w10, [r10] { return threshold_greedy(r10, 1.0 / std::numbers::e); },
        false);
    add("r10-classical-mc", r10, w10, [] { return classical_secretary(10, 3); }, false);

    return cases;
}

std::vector<LedgerCase> ledger_cases(std::uint64_t seed) {
    std::vector<LedgerCase> cases;
    const double e1 = std::numbers::e + 1.0;

    {
        LedgerCase c;
        c.name = "restrict-u13";
        c.wrapper = "restrict";
        const ElemSet keep = make_set(3, {0, 1});
        const MatroidPtr u13 = make_uniform(1, 3);
        c.inners.push_back({u13, {0.9, 0.5, 0.0},  // ghost element carries weight zero
                            [] { return classical_secretary(3); }});
        c.outer_matroid = make_restrict(u13, keep);
        c.outer_weights = {0.9, 0.5};
        c.make_outer = [keep] { return restrict_wrap(classical_secretary(3), keep); };
        c.bound_of = [](double inner_c) { return inner_c; };
        c.bound_description = "c";
        cases.push_back(std::move(c));
    }
    {
        LiftPassthrough f;
        LedgerCase c;
        c.name = "lift-passthrough";
        c.wrapper = "lift";
        c.inners.push_back({f.inner_matroid, {0.8, 0.0}, [] { return classical_secretary(2, 1); }});
        c.outer_matroid = f.outer_matroid;
        c.outer_weights = {0.8, 0.0};
        c.make_outer = [f] { return f.make_alg(); };
        c.bound_of = [](double inner_c) { return std::max(std::numbers::e, 2.0 * inner_c); };
        c.bound_description = "max(e,2c)";
        cases.push_back(std::move(c));
    }
    {
        LiftParallel f;
        LedgerCase c;
        c.name = "lift-parallel";
        c.wrapper = "lift";
        const Weighting w = fixture_weights(4, seed + 11);
        c.inners.push_back({f.inner_matroid, w, [f] { return random_basis(f.inner_matroid); }});
        c.outer_matroid = f.outer_matroid;
        c.outer_weights = w;
        c.make_outer = [f] { return f.make_alg(); };
        c.bound_of = [](double inner_c) { return std::max(std::numbers::e, 2.0 * inner_c); };
        c.bound_description = "max(e,2c)";
        cases.push_back(std::move(c));
    }
    {
        ProjectSmall f;
        LedgerCase c;
        c.name = "project-u23";
        c.wrapper = "project";
        c.inners.push_back({f.domain, {0.9, 0.4}, [f] { return threshold_greedy(f.domain, 0.0); }});
        c.outer_matroid = f.domain;
        c.outer_weights = {0.9, 0.4};
        c.make_outer = [f] { return f.make_alg(); };
        c.bound_of = [e1](double inner_c) { return e1 * inner_c; };
        c.bound_description = "(e+1)c";
        cases.push_back(std::move(c));
    }
    {
        ProjectLarger f;
        LedgerCase c;
        c.name = "project-u36";
        c.wrapper = "project";
        const Weighting w = fixture_weights(5, seed + 12);
        c.inners.push_back(
            {f.domain, w, [f] { return threshold_greedy(f.domain, 1.0 / std::numbers::e); }});
        c.outer_matroid = f.domain;
        c.outer_weights = w;
        c.make_outer = [f] { return f.make_alg(); };
        c.bound_of = [e1](double inner_c) { return e1 * inner_c; };
        c.bound_description = "(e+1)c";
        cases.push_back(std::move(c));
    }
    {
        PerturbChain f;
        LedgerCase c;
        c.name = "perturb-2step";
        c.wrapper = "perturb";
        const Weighting w = fixture_weights(5, seed + 13);
        c.inners.push_back({f.m0, w, [] { return classical_secretary(5); }});
        c.outer_matroid = f.build().final_matroid;
        c.outer_weights = w;
        c.make_outer = [f] { return f.build().alg; };
        c.bound_of = [e1](double inner_c) { return e1 * e1 * inner_c; };
        c.bound_description = "(e+1)^2 c";
        cases.push_back(std::move(c));
    }
    {
        MultiProjectWitness f{fixture_u24(), make_set(4, {0, 1, 2}), seed};
        MultiProjectResult built = f.build();
        LedgerCase c;
        c.name = "multiproject-u24";
        c.wrapper = "multiproject";
        const Weighting w = fixture_weights(3, seed + 14);
        c.inners.push_back({built.domain, w, [d = built.domain] { return threshold_greedy(d, 0.0); }});
        c.outer_matroid = built.domain;
        c.outer_weights = w;
        c.make_outer = [f] { return f.build().alg; };
        c.bound_of = [e1](double inner_c) { return e1 * inner_c; };
        c.bound_description = "(e+1)c";
        cases.push_back(std::move(c));
    }
    {
        LedgerCase c;
        c.name = "tree0-dsum";
        c.wrapper = "tree";
        const MatroidPtr dsum = fixture_direct_sum_pair();
        const Weighting w = fixture_weights(4, seed + 15);
        c.inners.push_back({make_restrict(dsum, make_set(4, {0, 1})),
                            {w[0], w[1]},
                            [] { return classical_secretary(2, 0); }});
        c.inners.push_back({make_restrict(dsum, make_set(4, {2, 3})),
                            {w[2], w[3]},
                            [] { return classical_secretary(2, 0); }});
        c.outer_matroid = dsum;
        c.outer_weights = w;
        c.make_outer = [seed] { return build_tree0(seed); };
        c.bound_of = [](double inner_c) { return inner_c; };
        c.bound_description = "c (thickness 0)";
        cases.push_back(std::move(c));
    }
    {
        LedgerCase c;
        c.name = "tree2-k4";
        c.wrapper = "tree";
        const MatroidPtr k4 = fixture_k4();
        const Weighting w = fixture_weights(6, seed + 16);
        // star leaf closure is all of M(K_4); triangle leaf is its restriction
        c.inners.push_back({k4, w, [k4] { return threshold_greedy(k4, 0.0); }});
        const MatroidPtr tri = make_restrict(k4, make_set(6, {0, 1, 2}));
        c.inners.push_back({tri, {w[0], w[1], w[2]}, [tri] { return threshold_greedy(tri, 0.0); }});
        c.outer_matroid = k4;
        c.outer_weights = w;
        c.make_outer = [seed] { return build_tree2(seed); };
        c.bound_of = [e1](double inner_c) { return e1 * e1 * inner_c; };
        c.bound_description = "(e+1)^2 c";
        cases.push_back(std::move(c));
    }
    {
        LedgerCase c;
        c.name = "tree1-4cycle";
        c.wrapper = "tree";
        const MatroidPtr fc = fixture_four_cycle();
        const Weighting w = fixture_weights(4, seed + 17);
        const MatroidPtr left = make_restrict(fc, make_set(4, {0, 1}));
        const MatroidPtr right = make_restrict(fc, make_set(4, {2, 3}));
        c.inners.push_back(
            {left, {w[0], w[1]}, [left] { return threshold_greedy(left, 1.0 / std::numbers::e); }});
        c.inners.push_back(
            {right, {w[2], w[3]}, [right] { return threshold_greedy(right, 1.0 / std::numbers::e); }});
        c.outer_matroid = fc;
        c.outer_weights = w;
        c.make_outer = [seed] { return build_tree1(seed); };
        c.bound_of = [e1](double inner_c) { return e1 * inner_c; };
        c.bound_description = "(e+1)c";
        cases.push_back(std::move(c));
    }

    return cases;
}

}  // namespace msl
