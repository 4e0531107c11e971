#include "msl/common.hpp"

#include <sstream>

namespace msl {

ElemSet make_set(std::size_t n, std::initializer_list<int> elems) {
    ElemSet s(n);
    for (int e : elems) {
        if (e < 0 || static_cast<std::size_t>(e) >= n) {
            throw InputError("element " + std::to_string(e) + " out of range for ground set of size " +
                             std::to_string(n));
        }
        s.set(static_cast<std::size_t>(e));
    }
    return s;
}

ElemSet make_set(std::size_t n, const std::vector<int>& elems) {
    ElemSet s(n);
    for (int e : elems) {
        if (e < 0 || static_cast<std::size_t>(e) >= n) {
            throw InputError("element " + std::to_string(e) + " out of range for ground set of size " +
                             std::to_string(n));
        }
        s.set(static_cast<std::size_t>(e));
    }
    return s;
}

ElemSet full_set(std::size_t n) {
    ElemSet s(n);
    s.set();
    return s;
}

std::vector<int> set_members(const ElemSet& X) {
    std::vector<int> out;
    out.reserve(X.count());
    for (std::size_t i = X.find_first(); i != ElemSet::npos; i = X.find_next(i)) {
        out.push_back(static_cast<int>(i));
    }
    return out;
}

std::string set_to_string(const ElemSet& X) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : set_members(X)) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xa0761d6478bd642fULL * (stream + 1));
    std::uint64_t a = splitmix64(state);
    std::uint64_t b = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

int rand_index(Rng& rng, int k) {
    if (k <= 0) throw InputError("rand_index: k must be positive");
    const std::uint64_t bound = static_cast<std::uint64_t>(k);
    // rejection sampling on the top range keeps the draw exactly uniform
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<int>(x % bound);
}

double rand_unit(Rng& rng) {
    // 53 random bits mapped to (0,1]
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

int rand_binomial_half(Rng& rng, int n) {
    int count = 0;
    int remaining = n;
    while (remaining > 0) {
        int chunk = remaining < 64 ? remaining : 64;
        std::uint64_t bits = rng();
        if (chunk < 64) bits &= (1ULL << chunk) - 1;
        count += __builtin_popcountll(bits);
        remaining -= chunk;
    }
    return count;
}

ElemSet rand_subset(Rng& rng, int n, int r) {
    if (r < 0 || r > n) throw InputError("rand_subset: need 0 <= r <= n");
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    ElemSet out(static_cast<std::size_t>(n));
    for (int i = 0; i < r; ++i) {
        int j = i + rand_index(rng, n - i);
        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
        out.set(static_cast<std::size_t>(ids[static_cast<std::size_t>(i)]));
    }
    return out;
}

}  // namespace msl
