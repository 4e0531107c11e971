#include "msl/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace msl {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

// -- uniform -------------------------------------------------------------------

UniformMatroid::UniformMatroid(int r, int n) : Matroid(n), r_(r) {
    if (r < 0 || r > n) throw InputError("uniform: need 0 <= r <= n");
    init_full_rank();
}

int UniformMatroid::rank_unchecked(const ElemSet& X) const {
    return std::min(static_cast<int>(X.count()), r_);
}

std::string UniformMatroid::describe() const {
    std::ostringstream os;
    os << "uniform(" << r_ << "," << size() << ")";
    return os.str();
}

// -- graphic -------------------------------------------------------------------

GraphicMatroid::GraphicMatroid(int num_vertices, std::vector<std::pair<int, int>> edges)
    : Matroid(static_cast<int>(edges.size())), nv_(num_vertices), edges_(std::move(edges)) {
    if (nv_ < 0) throw InputError("graphic: negative vertex count");
    for (const auto& [u, v] : edges_) {
        if (u < 0 || u >= nv_ || v < 0 || v >= nv_) {
            throw InputError("graphic: edge endpoint out of range");
        }
    }
    init_full_rank();
}

int GraphicMatroid::rank_unchecked(const ElemSet& X) const {
    // union-find over the endpoints of X; rank = touched vertices - components
    std::vector<int> parent(static_cast<std::size_t>(nv_), -1);  // -1 = untouched
    auto find = [&parent](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    int rank = 0;
    for (std::size_t i = X.find_first(); i != ElemSet::npos; i = X.find_next(i)) {
        const auto [u, v] = edges_[i];
        if (parent[static_cast<std::size_t>(u)] < 0) parent[static_cast<std::size_t>(u)] = u;
        if (parent[static_cast<std::size_t>(v)] < 0) parent[static_cast<std::size_t>(v)] = v;
        const int ru = find(u);
        const int rv = find(v);
        if (ru != rv) {
            parent[static_cast<std::size_t>(ru)] = rv;
            ++rank;
        }
    }
    return rank;
}

std::string GraphicMatroid::describe() const {
    std::ostringstream os;
    os << "graphic(" << nv_ << "v," << size() << "e)";
    return os.str();
}

// -- linear over GF(p) -----------------------------------------------------------

LinearMatroid::LinearMatroid(std::int64_t p, std::vector<std::vector<std::int64_t>> rows)
    : Matroid(rows.empty() ? 0 : static_cast<int>(rows.front().size())), p_(p), rows_(std::move(rows)) {
    if (!is_prime(p_)) throw InputError("linear: field order must be prime");
    if (p_ > (static_cast<std::int64_t>(1) << 31)) throw InputError("linear: field order too large");
    for (auto& row : rows_) {
        if (static_cast<int>(row.size()) != size()) {
            throw InputError("linear: ragged matrix");
        }
        for (auto& x : row) {
            x %= p_;
            if (x < 0) x += p_;
        }
    }
    init_full_rank();
}

int LinearMatroid::rank_unchecked(const ElemSet& X) const {
    // Gaussian elimination on the selected columns, transposed into rows of a
    // work matrix so each selected column becomes a vector of length r.
    const auto cols = set_members(X);
    const std::size_t r = rows_.size();
    std::vector<std::vector<std::int64_t>> work;
    work.reserve(cols.size());
    for (int c : cols) {
        std::vector<std::int64_t> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = rows_[i][static_cast<std::size_t>(c)];
        work.push_back(std::move(v));
    }

    auto mod_pow = [this](std::int64_t base, std::int64_t exp) {
        std::int64_t acc = 1 % p_;
        base %= p_;
        while (exp > 0) {
            if (exp & 1) acc = acc * base % p_;
            base = base * base % p_;
            exp >>= 1;
        }
        return acc;
    };

    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < r && pivot_row < work.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < work.size() && work[sel][col] == 0) ++sel;
        if (sel == work.size()) continue;
        std::swap(work[sel], work[pivot_row]);
        const std::int64_t inv = mod_pow(work[pivot_row][col], p_ - 2);
        for (std::size_t j = col; j < r; ++j) work[pivot_row][j] = work[pivot_row][j] * inv % p_;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == pivot_row || work[i][col] == 0) continue;
            const std::int64_t f = work[i][col];
            for (std::size_t j = col; j < r; ++j) {
                work[i][j] = (work[i][j] - f * work[pivot_row][j]) % p_;
                if (work[i][j] < 0) work[i][j] += p_;
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

std::string LinearMatroid::describe() const {
    std::ostringstream os;
    os << "linear(p=" << p_ << "," << rows_.size() << "x" << size() << ")";
    return os.str();
}

// -- sparse paving ----------------------------------------------------------------

SparsePavingMatroid::SparsePavingMatroid(int r, int n, std::vector<ElemSet> circuit_hyperplanes)
    : Matroid(n), r_(r), hyperplanes_(std::move(circuit_hyperplanes)) {
    if (r < 0 || r > n) throw InputError("sparsepaving: need 0 <= r <= n");
    for (const auto& h : hyperplanes_) {
        if (static_cast<int>(h.size()) != n) throw InputError("sparsepaving: hyperplane sized wrongly");
        if (static_cast<int>(h.count()) != r) {
            throw InputError("sparsepaving: circuit-hyperplane must have exactly r elements");
        }
    }
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
        for (std::size_t j = i + 1; j < hyperplanes_.size(); ++j) {
            if (static_cast<int>((hyperplanes_[i] & hyperplanes_[j]).count()) > r_ - 2) {
                throw InputError("sparsepaving: circuit-hyperplanes intersect in more than r-2 elements");
            }
        }
    }
    init_full_rank();
}

int SparsePavingMatroid::rank_unchecked(const ElemSet& X) const {
    const int s = static_cast<int>(X.count());
    if (s < r_) return s;
    if (s > r_) return r_;
    for (const auto& h : hyperplanes_) {
        if (X == h) return r_ - 1;
    }
    return r_;
}

std::string SparsePavingMatroid::describe() const {
    std::ostringstream os;
    os << "sparsepaving(" << r_ << "," << size() << ",h=" << hyperplanes_.size() << ")";
    return os.str();
}

// -- factories ---------------------------------------------------------------------

MatroidPtr make_uniform(int r, int n) { return std::make_shared<UniformMatroid>(r, n); }

MatroidPtr make_graphic(int num_vertices, std::vector<std::pair<int, int>> edges) {
    return std::make_shared<GraphicMatroid>(num_vertices, std::move(edges));
}

MatroidPtr make_linear(std::int64_t p, std::vector<std::vector<std::int64_t>> rows) {
    return std::make_shared<LinearMatroid>(p, std::move(rows));
}

MatroidPtr make_sparse_paving(int r, int n, std::vector<ElemSet> circuit_hyperplanes) {
    return std::make_shared<SparsePavingMatroid>(r, n, std::move(circuit_hyperplanes));
}

MatroidPtr make_complete_graphic(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    }
    return make_graphic(k, std::move(edges));
}

MatroidPtr make_r10() {
    // [I_5 | A] over GF(2), A = circulant with first row 1 1 0 0 1.
    const int a[5][5] = {
        {1, 1, 0, 0, 1},
        {1, 1, 1, 0, 0},
        {0, 1, 1, 1, 0},
        {0, 0, 1, 1, 1},
        {1, 0, 0, 1, 1},
    };
    std::vector<std::vector<std::int64_t>> rows(5, std::vector<std::int64_t>(10, 0));
    for (int i = 0; i < 5; ++i) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        for (int j = 0; j < 5; ++j) {
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(5 + j)] = a[i][j];
        }
    }
    return make_linear(2, std::move(rows));
}

}  // namespace msl
