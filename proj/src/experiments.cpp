#include "msl/experiments.hpp"

#include "msl/algorithms.hpp"
#include "msl/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace msl {

double default_gamma() { return std::sqrt(8.0 * std::log(2.0)) + 0.01; }

double rb_bound(int n, double gamma) { return 2.0 + gamma / std::sqrt(static_cast<double>(n)); }

double pav_bound(int r) { return 1.0 / (1.0 - 6.0 / std::sqrt(static_cast<double>(r))); }

double uni_bound(int r) { return 1.0 / (1.0 - 5.0 / std::sqrt(static_cast<double>(r))); }

bool bound_satisfied(double mean, double se, double opt, double bound) {
    return mean + 3.0 * se >= opt / bound;
}

SparsePavingSample sample_sparse_paving(int n, int r, int h, Rng& rng, int validate_cap,
                                        int attempts_per_hyperplane) {
    if (r < 2) throw InputError("sample_sparse_paving: need r >= 2");
    if (h < 0) throw InputError("sample_sparse_paving: need h >= 0");

    std::vector<ElemSet> kept;
    long long attempts_left = static_cast<long long>(attempts_per_hyperplane) * (h + 1);
    while (static_cast<int>(kept.size()) < h && attempts_left-- > 0) {
        ElemSet cand = rand_subset(rng, n, r);
        bool ok = true;
        for (const ElemSet& other : kept) {
            if (static_cast<int>((cand & other).count()) > r - 2) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(std::move(cand));
    }

    SparsePavingSample out;
    out.hyperplanes = static_cast<int>(kept.size());
    out.complete = out.hyperplanes == h;
    out.matroid = make_sparse_paving(r, n, std::move(kept));
    if (n <= validate_cap && !is_paving(*out.matroid, validate_cap)) {
        throw std::logic_error("sample_sparse_paving: generated matroid is not paving");
    }
    return out;
}

Weighting make_weights(int n, const std::string& model, Rng& rng) {
    Weighting w(static_cast<std::size_t>(n));
    if (model == "uniform") {
        for (auto& x : w) x = rand_unit(rng);
        return w;
    }
    if (model == "singleheavy") {
        const int heavy = rand_index(rng, n);
        for (int i = 0; i < n; ++i) {
            w[static_cast<std::size_t>(i)] = i == heavy ? 1.0 : 1e-6 * rand_unit(rng);
        }
        return w;
    }
    throw InputError("unknown weight model '" + model + "'");
}

namespace {

SweepRow make_row(const std::string& matroid_name, const std::string& alg_name, int n, int r,
                  const EvalReport& rep, double bound) {
    SweepRow row;
    row.matroid = matroid_name;
    row.algorithm = alg_name;
    row.n = n;
    row.r = r;
    row.trials = rep.trials;
    row.mean = rep.expected_weight;
    row.se = rep.std_error;
    row.opt = rep.opt_value;
    row.ratio = rep.ratio;
    row.bound = bound;
    row.bound_satisfied = bound_satisfied(rep.expected_weight, rep.std_error, rep.opt_value, bound);
    row.violations = rep.violations;
    return row;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t state = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
    return splitmix64(state);
}

}  // namespace

std::vector<SweepRow> rb_sweep(const std::vector<int>& ns, std::uint64_t trials, std::uint64_t seed,
                               double gamma) {
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        if (n < 4) throw InputError("rb_sweep: n too small");
        const int r = n / 2;
        Rng rng = make_rng(derive_seed(seed, 0xb0 + i), 0);
        const SparsePavingSample sample = sample_sparse_paving(n, r, n, rng);
        const Weighting w = make_weights(n, "uniform", rng);
        auto alg = random_basis(sample.matroid);
        const EvalReport rep =
            evaluate_monte_carlo(*alg, sample.matroid, w, trials, derive_seed(seed, 0xe0 + i));
        rows.push_back(make_row(sample.matroid->describe(), "rb", n, r, rep, rb_bound(n, gamma)));
    }
    return rows;
}

std::vector<SweepRow> pav_sweep(const std::vector<int>& rs, int n_factor, std::uint64_t trials,
                                std::uint64_t seed) {
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const int r = rs[i];
        if (r < 2) throw InputError("pav_sweep: r too small");
        const int n = n_factor * r;
        Rng rng = make_rng(derive_seed(seed, 0xa0 + i), 0);
        const SparsePavingSample sample = sample_sparse_paving(n, r, n, rng);
        const Weighting w = make_weights(n, "uniform", rng);
        auto alg = pav(sample.matroid);
        const EvalReport rep =
            evaluate_monte_carlo(*alg, sample.matroid, w, trials, derive_seed(seed, 0xf0 + i));
        rows.push_back(make_row(sample.matroid->describe(), "pav", n, r, rep, pav_bound(r)));

        // the UNI sub-bound from the proof chain, measured on U_{r-1, n}
        const MatroidPtr uni_m = make_uniform(r - 1, n);
        const Weighting wu = make_weights(n, "uniform", rng);
        auto uni_alg = kleinberg_uni(r - 1, n);
        const EvalReport uni_rep =
            evaluate_monte_carlo(*uni_alg, uni_m, wu, trials, derive_seed(seed, 0xf8 + i));
        rows.push_back(
            make_row(uni_m->describe(), uni_alg->name(), n, r - 1, uni_rep, uni_bound(r - 1)));
    }
    return rows;
}

LedgerReport ledger_verify(std::uint64_t seed, std::uint64_t trials) {
    LedgerReport report;
    const auto cases = ledger_cases(seed);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const LedgerCase& c = cases[i];
        LedgerReport::Row row;
        row.fixture = c.name;
        row.wrapper = c.wrapper;
        row.bound_description = c.bound_description;

        double worst_inner = 0.0;
        for (std::size_t j = 0; j < c.inners.size(); ++j) {
            auto inner = c.inners[j].make();
            const EvalReport rep =
                evaluate_monte_carlo(*inner, c.inners[j].matroid, c.inners[j].weights, trials,
                                     derive_seed(seed, 0x100 + 16 * i + j));
            row.violations += rep.violations;
            worst_inner = std::max(worst_inner, rep.ratio);
        }
        row.inner_ratio = worst_inner;
        row.bound = c.bound_of(worst_inner);

        auto outer = c.make_outer();
        const EvalReport rep = evaluate_monte_carlo(*outer, c.outer_matroid, c.outer_weights, trials,
                                                    derive_seed(seed, 0x900 + i));
        row.outer_mean = rep.expected_weight;
        row.outer_se = rep.std_error;
        row.outer_opt = rep.opt_value;
        row.outer_ratio = rep.ratio;
        row.violations += rep.violations;
        row.pass = row.violations == 0 &&
                   bound_satisfied(rep.expected_weight, rep.std_error, rep.opt_value, row.bound);
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<SoundnessCase> large_soundness_cases(std::uint64_t seed) {
    std::vector<SoundnessCase> cases;
    Rng rng = make_rng(seed, 0xa11);

    {
        const SparsePavingSample sp = sample_sparse_paving(40, 20, 40, rng);
        const Weighting w = make_weights(40, "uniform", rng);
        cases.push_back({"sp40-rb", sp.matroid, w,
                         [m = sp.matroid] { return random_basis(m); }, false});
        cases.push_back({"sp40-pav", sp.matroid, w, [m = sp.matroid] { return pav(m); }, false});
        cases.push_back({"sp40-tgreedy", sp.matroid, w,
                         [m = sp.matroid] { return threshold_greedy(m, 1.0 / std::numbers::e); },
                         false});
    }
    {
        const MatroidPtr u = make_uniform(10, 100);
        const Weighting w = make_weights(100, "uniform", rng);
        cases.push_back({"u100-uni", u, w, [] { return kleinberg_uni(10, 100); }, false});
        cases.push_back({"u100-classical", u, w, [] { return classical_secretary(100); }, false});
    }
    {
        const SparsePavingSample sp = sample_sparse_paving(100, 50, 100, rng);
        const Weighting w = make_weights(100, "singleheavy", rng);
        cases.push_back({"sp100-pav", sp.matroid, w, [m = sp.matroid] { return pav(m); }, false});
        cases.push_back({"sp100-rb", sp.matroid, w,
                         [m = sp.matroid] { return random_basis(m); }, false});
    }
    {
        const MatroidPtr k6 = make_complete_graphic(6);
        const Weighting w = make_weights(15, "uniform", rng);
        cases.push_back({"k6-rb", k6, w, [k6] { return random_basis(k6, 10); }, false});
        cases.push_back({"k6-tgreedy", k6, w,
                         [k6] { return threshold_greedy(k6, 1.0 / std::numbers::e); }, false});
    }
    return cases;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot open '" + path + "' for writing");
    out << "n,r,algorithm,mean,se,opt_mean,ratio,bound,bound_satisfied,violations\n";
    out << std::setprecision(17);
    for (const SweepRow& r : rows) {
        out << r.n << ',' << r.r << ',' << csv_quote(r.algorithm) << ',' << r.mean << ',' << r.se
            << ',' << r.opt << ',' << r.ratio << ',' << r.bound << ','
            << (r.bound_satisfied ? 1 : 0) << ',' << r.violations << '\n';
    }
}

nlohmann::json row_to_json(const SweepRow& r) {
    return nlohmann::json{{"matroid", r.matroid},
                          {"algorithm", r.algorithm},
                          {"n", r.n},
                          {"r", r.r},
                          {"trials", r.trials},
                          {"mean", r.mean},
                          {"se", r.se},
                          {"opt", r.opt},
                          {"ratio", r.ratio},
                          {"bound", r.bound},
                          {"bound_satisfied", r.bound_satisfied},
                          {"violations", r.violations}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

std::string get_or(const std::map<std::string, std::string>& config, const std::string& key,
                   const std::string& fallback) {
    const auto it = config.find(key);
    return it == config.end() ? fallback : it->second;
}

std::string require(const std::map<std::string, std::string>& config, const std::string& key) {
    const auto it = config.find(key);
    if (it == config.end()) throw InputError("config: missing required key '" + key + "'");
    return it->second;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw InputError("empty integer list");
    return out;
}

void print_sweep_rows(std::ostream& out, const std::vector<SweepRow>& rows) {
    for (const SweepRow& r : rows) {
        out << r.algorithm << " n=" << r.n << " r=" << r.r << " mean=" << r.mean << " se=" << r.se
            << " opt=" << r.opt << " ratio=" << r.ratio << " bound=" << r.bound
            << (r.bound_satisfied ? " ok" : " VIOLATED") << " violations=" << r.violations << '\n';
    }
}

int finish_sweep(const std::map<std::string, std::string>& config, std::ostream& out,
                 const std::vector<SweepRow>& rows) {
    print_sweep_rows(out, rows);
    if (const std::string path = get_or(config, "out_csv", ""); !path.empty()) {
        write_sweep_csv(path, rows);
    }
    if (const std::string path = get_or(config, "out_json", ""); !path.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const SweepRow& r : rows) j.push_back(row_to_json(r));
        write_json(path, j);
    }
    for (const SweepRow& r : rows) {
        if (r.violations > 0) return 4;
    }
    return 0;
}

int run_eval(const std::map<std::string, std::string>& config, std::ostream& out) {
    const std::uint64_t seed = std::stoull(require(config, "seed"));
    const std::uint64_t trials = std::stoull(get_or(config, "trials", "10000"));
    const MatroidPtr m = load_matroid_file(require(config, "matroid")).result();
    auto alg = make_algorithm(get_or(config, "alg", "rb"), m);
    Rng wrng = make_rng(seed, 0x3e1);
    const Weighting w = make_weights(m->size(), get_or(config, "weights", "uniform"), wrng);

    EvalReport rep;
    if (get_or(config, "exact", "0") == "1") {
        rep = evaluate_exact(*alg, m, w);
    } else {
        rep = evaluate_monte_carlo(*alg, m, w, trials, derive_seed(seed, 0xe7a1));
    }

    SweepRow row = make_row(m->describe(), alg->name(), m->size(), m->full_rank(), rep,
                            report_ratio(rep.opt_value, rep.expected_weight));
    row.bound_satisfied = true;  // plain evaluation carries no theorem bound
    std::vector<SweepRow> rows{row};
    print_sweep_rows(out, rows);
    if (const std::string path = get_or(config, "out_csv", ""); !path.empty()) {
        std::ofstream csv(path);
        if (!csv) throw ResourceError("cannot open '" + path + "' for writing");
        csv << "matroid,algorithm,n,r,trials,mean,se,opt,ratio,violations\n";
        csv << std::setprecision(17) << csv_quote(row.matroid) << ',' << csv_quote(row.algorithm)
            << ',' << row.n << ',' << row.r << ',' << row.trials << ',' << row.mean << ',' << row.se
            << ',' << row.opt << ',' << row.ratio << ',' << row.violations << '\n';
    }
    if (const std::string path = get_or(config, "out_json", ""); !path.empty()) {
        write_json(path, row_to_json(row));
    }
    return rep.violations == 0 ? 0 : 4;
}

int run_compose(const std::map<std::string, std::string>& config, std::ostream& out) {
    const std::uint64_t seed = std::stoull(require(config, "seed"));
    const std::uint64_t trials = std::stoull(get_or(config, "trials", "10000"));
    const DecompositionSpec spec = load_decomposition_file(require(config, "file"));
    Rng rng = make_rng(seed, 0xc0);
    RegularComposeResult built = regular_compose(spec, rng);

    Rng wrng = make_rng(seed, 0x3e1);
    const Weighting w = make_weights(built.matroid->size(),
                                     get_or(config, "weights", "uniform"), wrng);
    const EvalReport rep =
        evaluate_monte_carlo(*built.alg, built.matroid, w, trials, derive_seed(seed, 0xc0de));

    SweepRow row = make_row(built.matroid->describe(), built.alg->name(), built.matroid->size(),
                            built.matroid->full_rank(), rep, built.plan.claimed_ratio);
    std::vector<SweepRow> rows{row};
    print_sweep_rows(out, rows);
    if (const std::string path = get_or(config, "out_csv", ""); !path.empty()) {
        write_sweep_csv(path, rows);
    }
    if (const std::string path = get_or(config, "out_json", ""); !path.empty()) {
        nlohmann::json j = row_to_json(row);
        j["plan"] = built.plan.to_json();
        write_json(path, j);
    }
    return rep.violations == 0 ? 0 : 4;
}

int run_ledger(const std::map<std::string, std::string>& config, std::ostream& out) {
    const std::uint64_t seed = std::stoull(require(config, "seed"));
    const std::uint64_t trials = std::stoull(get_or(config, "trials", "10000"));
    const LedgerReport report = ledger_verify(seed, trials);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : report.rows) {
        out << (r.pass ? "pass" : "FAIL") << ' ' << r.fixture << " (" << r.wrapper
            << "): inner=" << r.inner_ratio << " bound=" << r.bound << " [" << r.bound_description
            << "] outer=" << r.outer_ratio << " violations=" << r.violations << '\n';
        j.push_back({{"fixture", r.fixture},
                     {"wrapper", r.wrapper},
                     {"bound_description", r.bound_description},
                     {"inner_ratio", r.inner_ratio},
                     {"bound", r.bound},
                     {"outer_mean", r.outer_mean},
                     {"outer_se", r.outer_se},
                     {"outer_opt", r.outer_opt},
                     {"outer_ratio", r.outer_ratio},
                     {"violations", r.violations},
                     {"pass", r.pass}});
    }
    if (const std::string path = get_or(config, "out_json", ""); !path.empty()) {
        write_json(path, j);
    }
    if (const std::string path = get_or(config, "out_csv", ""); !path.empty()) {
        std::ofstream csv(path);
        if (!csv) throw ResourceError("cannot open '" + path + "' for writing");
        csv << "fixture,wrapper,inner_ratio,bound,outer_ratio,violations,pass\n";
        csv << std::setprecision(17);
        for (const auto& r : report.rows) {
            csv << csv_quote(r.fixture) << ',' << csv_quote(r.wrapper) << ',' << r.inner_ratio << ','
                << r.bound << ',' << r.outer_ratio << ',' << r.violations << ','
                << (r.pass ? 1 : 0) << '\n';
        }
    }
    return report.all_pass ? 0 : 4;
}

}  // namespace

int run_experiment(const std::map<std::string, std::string>& config, std::ostream& out) {
    try {
        const std::string experiment = require(config, "experiment");
        if (config.find("seed") == config.end()) {
            throw InputError("config: seed is mandatory");
        }
        if (experiment == "rb_sweep") {
            const std::uint64_t seed = std::stoull(require(config, "seed"));
            const std::uint64_t trials = std::stoull(get_or(config, "trials", "10000"));
            const std::vector<int> ns = parse_int_list(get_or(config, "n_list", "20,40,80"));
            const double gamma = std::stod(get_or(config, "gamma", std::to_string(default_gamma())));
            return finish_sweep(config, out, rb_sweep(ns, trials, seed, gamma));
        }
        if (experiment == "pav_sweep") {
            const std::uint64_t seed = std::stoull(require(config, "seed"));
            const std::uint64_t trials = std::stoull(get_or(config, "trials", "10000"));
            const std::vector<int> rs = parse_int_list(get_or(config, "r_list", "37,49,64"));
            const int n_factor = std::stoi(get_or(config, "n_factor", "2"));
            return finish_sweep(config, out, pav_sweep(rs, n_factor, trials, seed));
        }
        if (experiment == "eval") return run_eval(config, out);
        if (experiment == "compose") return run_compose(config, out);
        if (experiment == "ledger") return run_ledger(config, out);
        throw InputError("config: unknown experiment '" + experiment + "'");
    } catch (const InputError& err) {
        out << "error: " << err.what() << '\n';
        return 3;
    } catch (const ResourceError& err) {
        out << "error: " << err.what() << '\n';
        return 3;
    } catch (const UnsupportedError& err) {
        out << "error: " << err.what() << '\n';
        return 3;
    }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key.empty()) throw InputError(path + ":" + std::to_string(line_no) + ": empty key");
        config[key] = value;
    }
    return config;
}

}  // namespace msl
