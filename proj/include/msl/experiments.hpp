#pragma once

#include "msl/families.hpp"
#include "msl/fixtures.hpp"
#include "msl/online.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace msl {

/// gamma default for the RB bound: sqrt(8 ln 2) + 0.01.
double default_gamma();

double rb_bound(int n, double gamma);   // 2 + gamma / sqrt(n)
double pav_bound(int r);                // (1 - 6/sqrt(r))^-1
double uni_bound(int r);                // (1 - 5/sqrt(r))^-1

/// Greedily samples r-sets, keeping each iff it intersects every kept set in
/// at most r-2 elements, until h are kept or the attempt budget runs out
/// (complete = false then; never an error). The result is validated by
/// is_paving when the ground set is within validate_cap.
struct SparsePavingSample {
    MatroidPtr matroid;
    int hyperplanes = 0;
    bool complete = true;
};
SparsePavingSample sample_sparse_paving(int n, int r, int h, Rng& rng, int validate_cap = 14,
                                        int attempts_per_hyperplane = 200);

struct SweepRow {
    std::string matroid;
    std::string algorithm;
    int n = 0;
    int r = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double se = 0.0;
    double opt = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    bool bound_satisfied = false;
    std::uint64_t violations = 0;
};

/// One-sided bound check at 3 standard errors: mean + 3 se >= opt / bound.
bool bound_satisfied(double mean, double se, double opt, double bound);

/// RB on random sparse paving matroids with r = n/2 and h = n circuit-
/// hyperplanes, i.i.d. uniform weights; bound column 2 + gamma/sqrt(n).
std::vector<SweepRow> rb_sweep(const std::vector<int>& ns, std::uint64_t trials, std::uint64_t seed,
                               double gamma);

/// PAV on random sparse paving instances with n = n_factor * r (bound
/// (1-6/sqrt(r))^-1), plus UNI rows at rank r-1 on uniform matroids (the
/// sub-bound (1-5/sqrt(r-1))^-1 from the proof chain).
std::vector<SweepRow> pav_sweep(const std::vector<int>& rs, int n_factor, std::uint64_t trials,
                                std::uint64_t seed);

struct LedgerReport {
    struct Row {
        std::string fixture;
        std::string wrapper;
        std::string bound_description;
        double inner_ratio = 0.0;
        double bound = 0.0;
        double outer_mean = 0.0;
        double outer_se = 0.0;
        double outer_opt = 0.0;
        double outer_ratio = 0.0;
        std::uint64_t violations = 0;
        bool pass = false;
    };
    std::vector<Row> rows;
    bool all_pass = true;
};

/// Runs the wrapper ratio-ledger property suite over the built-in fixtures.
LedgerReport ledger_verify(std::uint64_t seed, std::uint64_t trials = 10000);

/// Additional Monte Carlo soundness cases on larger instances (up to 100
/// elements), complementing the exhaustive built-in set.
std::vector<SoundnessCase> large_soundness_cases(std::uint64_t seed);

/// Weight models: "uniform" (i.i.d. uniform (0,1]) and "singleheavy" (one
/// random element of weight 1, the rest tiny distinct).
Weighting make_weights(int n, const std::string& model, Rng& rng);

/// Dispatches by config["experiment"]: rb_sweep | pav_sweep | eval | compose
/// | ledger. Writes CSV/JSON when out_csv/out_json are set, prints one line
/// per row. Exit codes: 0 ok, 3 validation error, 4 ledger violation.
int run_experiment(const std::map<std::string, std::string>& config, std::ostream& out);

/// Flat key=value config file; '#' comments. Throws InputError on bad lines.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace msl
