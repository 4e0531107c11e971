#pragma once

#include "msl/matroid.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace msl {

/// U_{r,n}: every r-subset is a basis.
class UniformMatroid final : public Matroid {
public:
    UniformMatroid(int r, int n);

    int uniform_rank() const { return r_; }
    std::string describe() const override;

protected:
    int rank_unchecked(const ElemSet& X) const override;

private:
    int r_;
};

/// Cycle matroid of a multigraph; loops and parallel edges allowed.
/// Elements are edges; rank(X) = |V(X)| - #components of (V(X), X).
class GraphicMatroid final : public Matroid {
public:
    GraphicMatroid(int num_vertices, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return nv_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::string describe() const override;

protected:
    int rank_unchecked(const ElemSet& X) const override;

private:
    int nv_;
    std::vector<std::pair<int, int>> edges_;
};

/// Column matroid of an r x n matrix over GF(p), p prime (p <= 2^31).
class LinearMatroid final : public Matroid {
public:
    LinearMatroid(std::int64_t p, std::vector<std::vector<std::int64_t>> rows);

    std::int64_t field_order() const { return p_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    std::string describe() const override;

protected:
    int rank_unchecked(const ElemSet& X) const override;

private:
    std::int64_t p_;
    std::vector<std::vector<std::int64_t>> rows_;
};

/// Sparse paving matroid of rank r: every r-set is a basis except the listed
/// circuit-hyperplanes, which have rank r-1. Listed r-sets must pairwise
/// intersect in at most r-2 elements.
class SparsePavingMatroid final : public Matroid {
public:
    SparsePavingMatroid(int r, int n, std::vector<ElemSet> circuit_hyperplanes);

    int paving_rank() const { return r_; }
    const std::vector<ElemSet>& circuit_hyperplanes() const { return hyperplanes_; }
    std::string describe() const override;

protected:
    int rank_unchecked(const ElemSet& X) const override;

private:
    int r_;
    std::vector<ElemSet> hyperplanes_;
};

MatroidPtr make_uniform(int r, int n);
MatroidPtr make_graphic(int num_vertices, std::vector<std::pair<int, int>> edges);
MatroidPtr make_linear(std::int64_t p, std::vector<std::vector<std::int64_t>> rows);
MatroidPtr make_sparse_paving(int r, int n, std::vector<ElemSet> circuit_hyperplanes);

/// Cycle matroid of the complete graph K_k.
MatroidPtr make_complete_graphic(int k);

/// R_10 as the GF(2) column matroid of [I_5 | A], A the circulant with first
/// row 1 1 0 0 1. Identity is verified by tests (162 bases, girth 4,
/// density 2), not assumed.
MatroidPtr make_r10();

bool is_prime(std::int64_t p);

}  // namespace msl
