#include "msl/connectivity.hpp"

#include <algorithm>
#include <numeric>

namespace msl {

int local_connectivity(const Matroid& m, const ElemSet& X, const ElemSet& Y) {
    if ((X & Y).any()) throw InputError("local_connectivity: X and Y overlap");
    return m.rank(X) + m.rank(Y) - m.rank(X | Y);
}

int lambda(const Matroid& m, const ElemSet& X) {
    ElemSet comp = X;
    comp.flip();
    return local_connectivity(m, X, comp);
}

void TreeDecomposition::validate(const Matroid& m) const {
    if (num_vertices < 1) throw InputError("tree-decomposition: need at least one vertex");
    if (static_cast<int>(parts.size()) != num_vertices) {
        throw InputError("tree-decomposition: one part per vertex required");
    }
    if (static_cast<int>(edges.size()) != num_vertices - 1) {
        throw InputError("tree-decomposition: a tree on " + std::to_string(num_vertices) +
                         " vertices has " + std::to_string(num_vertices - 1) + " edges");
    }
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices || u == v) {
            throw InputError("tree-decomposition: bad edge");
        }
    }
    // connectivity: |E| = |V|-1 plus connected means acyclic
    std::vector<char> seen(static_cast<std::size_t>(num_vertices), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges) {
            const int w = a == v ? b : (b == v ? a : -1);
            if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != num_vertices) throw InputError("tree-decomposition: tree is disconnected");

    ElemSet covered(static_cast<std::size_t>(m.size()));
    for (const auto& part : parts) {
        if (static_cast<int>(part.size()) != m.size()) {
            throw InputError("tree-decomposition: part sized to wrong ground set");
        }
        if ((covered & part).any()) throw InputError("tree-decomposition: parts overlap");
        covered |= part;
    }
    if (!covered.all()) throw InputError("tree-decomposition: parts do not cover the ground set");
}

std::vector<int> TreeDecomposition::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

std::vector<int> TreeDecomposition::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices; ++v) {
        if (neighbors(v).size() == 1) out.push_back(v);
    }
    return out;
}

std::vector<int> TreeDecomposition::side_of(int edge) const {
    if (edge < 0 || edge >= static_cast<int>(edges.size())) {
        throw InputError("tree-decomposition: edge index out of range");
    }
    const auto [root, other] = edges[static_cast<std::size_t>(edge)];
    std::vector<char> seen(static_cast<std::size_t>(num_vertices), 0);
    seen[static_cast<std::size_t>(root)] = 1;
    seen[static_cast<std::size_t>(other)] = 1;  // blocked, removed afterwards
    std::vector<int> stack{root};
    std::vector<int> side{root};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : neighbors(v)) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                side.push_back(w);
                stack.push_back(w);
            }
        }
    }
    return side;
}

int edge_thickness(const Matroid& m, const TreeDecomposition& td, int edge) {
    td.validate(m);
    ElemSet X(static_cast<std::size_t>(m.size()));
    for (int v : td.side_of(edge)) X |= td.parts[static_cast<std::size_t>(v)];
    return lambda(m, X);
}

int thickness(const Matroid& m, const TreeDecomposition& td) {
    td.validate(m);
    int best = 0;
    for (int e = 0; e < static_cast<int>(td.edges.size()); ++e) {
        best = std::max(best, edge_thickness(m, td, e));
    }
    return best;
}

bool is_full(const Matroid& m, const TreeDecomposition& td) {
    td.validate(m);
    for (int e = 0; e < static_cast<int>(td.edges.size()); ++e) {
        const auto [u, v] = td.edges[static_cast<std::size_t>(e)];
        const int pc = local_connectivity(m, td.parts[static_cast<std::size_t>(u)],
                                          td.parts[static_cast<std::size_t>(v)]);
        if (pc != edge_thickness(m, td, e)) return false;
    }
    return true;
}

TreeDecomposition normalize_leaf(const Matroid& m, const TreeDecomposition& td, int leaf) {
    td.validate(m);
    const auto nbrs = td.neighbors(leaf);
    if (nbrs.size() != 1) throw InputError("normalize_leaf: vertex is not a leaf");
    const int u = nbrs.front();

    const ElemSet& xl = td.parts[static_cast<std::size_t>(leaf)];
    const ElemSet& xu = td.parts[static_cast<std::size_t>(u)];
    const ElemSet moved = xl & closure(m, xu);

    TreeDecomposition out = td;
    out.parts[static_cast<std::size_t>(leaf)] = xl - moved;
    out.parts[static_cast<std::size_t>(u)] = xu | moved;

    // contract checks from the construction; violations would be bugs here
    if (lambda(m, out.parts[static_cast<std::size_t>(leaf)]) > lambda(m, xl)) {
        throw std::logic_error("normalize_leaf: lambda increased");
    }
    if ((out.parts[static_cast<std::size_t>(leaf)] &
         closure(m, out.parts[static_cast<std::size_t>(u)])).any()) {
        throw std::logic_error("normalize_leaf: leaf part still meets the neighbor closure");
    }
    if (is_full(m, td) && !is_full(m, out)) {
        throw std::logic_error("normalize_leaf: fullness lost");
    }
    return out;
}

LambdaWitness lemma_lambda_witness(MatroidPtr m, const ElemSet& X, Rng& rng) {
    const int n = m->size();
    if (static_cast<int>(X.size()) != n) throw InputError("lemma_lambda_witness: X sized wrongly");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    shuffle_vector(order, rng);

    LambdaWitness w;
    w.X = X;
    w.I1 = ElemSet(static_cast<std::size_t>(n));
    w.I2 = ElemSet(static_cast<std::size_t>(n));
    w.I3 = ElemSet(static_cast<std::size_t>(n));

    // I1: basis of M|X
    ElemSet acc(static_cast<std::size_t>(n));
    int acc_rank = 0;
    for (int e : order) {
        if (!X.test(static_cast<std::size_t>(e))) continue;
        acc.set(static_cast<std::size_t>(e));
        if (m->rank(acc) > acc_rank) {
            ++acc_rank;
            w.I1.set(static_cast<std::size_t>(e));
        } else {
            acc.reset(static_cast<std::size_t>(e));
        }
    }
    // I2: extends I1 to a basis of M
    for (int e : order) {
        if (X.test(static_cast<std::size_t>(e))) continue;
        acc.set(static_cast<std::size_t>(e));
        if (m->rank(acc) > acc_rank) {
            ++acc_rank;
            w.I2.set(static_cast<std::size_t>(e));
        } else {
            acc.reset(static_cast<std::size_t>(e));
        }
    }
    // I3: extends I2 to a basis of M \ X (ranks of subsets of E-X agree with M)
    ElemSet acc2 = w.I2;
    int acc2_rank = m->rank(acc2);
    for (int e : order) {
        if (X.test(static_cast<std::size_t>(e)) || w.I2.test(static_cast<std::size_t>(e))) continue;
        acc2.set(static_cast<std::size_t>(e));
        if (m->rank(acc2) > acc2_rank) {
            ++acc2_rank;
            w.I3.set(static_cast<std::size_t>(e));
        } else {
            acc2.reset(static_cast<std::size_t>(e));
        }
    }

    // N = (M / I2) | (X u I3), built as a single minor M / I2 \ (rest)
    ElemSet keep = X | w.I3;
    ElemSet remove = keep | w.I2;
    remove.flip();
    w.N = make_minor(std::move(m), w.I2, remove);
    w.n_to_parent = set_members(keep);
    return w;
}

bool verify_perturbation_step(const PerturbationStep& step, const Matroid& from, const Matroid& to,
                              int cap) {
    const Matroid& amb = *step.ambient;
    if (from.size() != amb.size() - 1 || to.size() != amb.size() - 1) {
        throw InputError("verify_perturbation_step: ground sets do not match the ambient matroid");
    }
    if (step.x < 0 || step.x >= amb.size()) throw InputError("verify_perturbation_step: x out of range");
    if (is_loop(amb, step.x)) throw InputError("verify_perturbation_step: x is a loop of the ambient");

    ElemSet xonly(static_cast<std::size_t>(amb.size()));
    xonly.set(static_cast<std::size_t>(step.x));
    const MatroidPtr deleted = make_delete(step.ambient, xonly);
    const MatroidPtr contracted = make_contract(step.ambient, xonly);

    if (step.direction == PerturbationStep::Direction::kProjectionOf) {
        return ranks_equal(*deleted, from, cap) && ranks_equal(*contracted, to, cap);
    }
    return ranks_equal(*contracted, from, cap) && ranks_equal(*deleted, to, cap);
}

std::vector<PerturbationStep> projection_chain(const LambdaWitness& witness) {
    // I3 members within N's ground, ascending
    const std::size_t nn = static_cast<std::size_t>(witness.N->size());
    ElemSet i3_in_n(nn);
    ElemSet x_in_n(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        const int parent = witness.n_to_parent[i];
        if (witness.I3.test(static_cast<std::size_t>(parent))) i3_in_n.set(i);
        if (witness.X.test(static_cast<std::size_t>(parent))) x_in_n.set(i);
    }
    const std::vector<int> ys = set_members(i3_in_n);

    std::vector<PerturbationStep> chain;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        ElemSet contract(nn);
        for (std::size_t j = 0; j < i; ++j) contract.set(static_cast<std::size_t>(ys[j]));
        ElemSet remove(nn);
        for (std::size_t j = i + 1; j < ys.size(); ++j) remove.set(static_cast<std::size_t>(ys[j]));

        PerturbationStep step;
        step.ambient = make_minor(witness.N, contract, remove);
        // position of y_i within the kept set (X u {y_i}), ascending relabeling
        ElemSet kept = x_in_n;
        kept.set(static_cast<std::size_t>(ys[i]));
        int pos = 0;
        for (std::size_t e = kept.find_first(); e != ElemSet::npos; e = kept.find_next(e)) {
            if (static_cast<int>(e) == ys[i]) break;
            ++pos;
        }
        step.x = pos;
        step.direction = PerturbationStep::Direction::kProjectionOf;
        chain.push_back(std::move(step));
    }
    return chain;
}

}  // namespace msl
