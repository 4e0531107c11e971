#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace msl {

/// Subset of a ground set {0,...,n-1}; the bitset size is the ground-set size.
using ElemSet = boost::dynamic_bitset<>;

/// Non-negative per-element weights, indexed by element id.
using Weighting = std::vector<double>;

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

ElemSet make_set(std::size_t n, std::initializer_list<int> elems);
ElemSet make_set(std::size_t n, const std::vector<int>& elems);
ElemSet full_set(std::size_t n);

/// Members of X in ascending order.
std::vector<int> set_members(const ElemSet& X);

std::string set_to_string(const ElemSet& X);

// ---------------------------------------------------------------------------
// Randomness. All experiment entry points are seeded; per-trial substreams are
// derived with splitmix64 so results do not depend on evaluation order.
// Distribution sampling is hand-rolled on top of the raw generator because
// std::uniform_int_distribution is not bit-reproducible across standard
// library implementations.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t& state);

/// Generator for substream `stream` of master seed `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform integer in [0, k), k >= 1.
int rand_index(Rng& rng, int k);

/// Uniform double in (0, 1].
double rand_unit(Rng& rng);

/// Binomial(n, 1/2) by counting random bits.
int rand_binomial_half(Rng& rng, int n);

template <typename T>
void shuffle_vector(std::vector<T>& v, Rng& rng) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
        std::swap(v[i], v[static_cast<std::size_t>(rand_index(rng, i + 1))]);
    }
}

/// Uniformly random r-subset of {0,...,n-1}.
ElemSet rand_subset(Rng& rng, int n, int r);

}  // namespace msl
