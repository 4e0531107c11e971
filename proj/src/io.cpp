#include "msl/io.hpp"

#include "msl/families.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace msl {

namespace {

struct LineReader {
    std::istream& in;
    std::string context;
    int line_no = 0;

    /// Next non-empty, non-comment line split into tokens; false at EOF.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.assign(std::istream_iterator<std::string>(ss), std::istream_iterator<std::string>());
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw InputError(context + ":" + std::to_string(line_no) + ": " + why);
    }
};

int parse_int(const std::string& s, LineReader& r) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) r.fail("bad integer '" + s + "'");
        return v;
    } catch (const std::exception&) {
        r.fail("bad integer '" + s + "'");
    }
}

std::int64_t parse_int64(const std::string& s, LineReader& r) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(s, &used);
        if (used != s.size()) r.fail("bad integer '" + s + "'");
        return v;
    } catch (const std::exception&) {
        r.fail("bad integer '" + s + "'");
    }
}

/// "1,4,6" or "-" into a 0-based element set over a ground of size n.
ElemSet parse_id_list(const std::string& s, int n, LineReader& r) {
    ElemSet out(static_cast<std::size_t>(n));
    if (s == "-") return out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const int id = parse_int(item, r);
        if (id < 1 || id > n) r.fail("element id " + item + " out of range 1.." + std::to_string(n));
        out.set(static_cast<std::size_t>(id - 1));
    }
    return out;
}

MatroidPtr lookup(const MatroidLibrary& lib, const std::string& name, LineReader& r) {
    MatroidPtr m = lib.find(name);
    if (!m) r.fail("unknown matroid '" + name + "'");
    return m;
}

void parse_def(const std::vector<std::string>& t, MatroidLibrary& lib, LineReader& r) {
    if (t.size() < 3) r.fail("def needs a name and a kind");
    const std::string& name = t[1];
    const std::string& kind = t[2];
    if (lib.find(name)) r.fail("duplicate matroid name '" + name + "'");

    MatroidPtr m;
    if (kind == "uniform") {
        if (t.size() != 5) r.fail("usage: def NAME uniform R N");
        m = make_uniform(parse_int(t[3], r), parse_int(t[4], r));
    } else if (kind == "graphic") {
        if (t.size() != 5) r.fail("usage: def NAME graphic NV M");
        const int nv = parse_int(t[3], r);
        const int ne = parse_int(t[4], r);
        std::vector<std::pair<int, int>> edges;
        std::vector<std::string> row;
        for (int i = 0; i < ne; ++i) {
            if (!r.next(row) || row.size() != 2) r.fail("expected an edge line 'U V'");
            const int u = parse_int(row[0], r);
            const int v = parse_int(row[1], r);
            if (u < 1 || u > nv || v < 1 || v > nv) r.fail("vertex out of range 1.." + std::to_string(nv));
            edges.emplace_back(u - 1, v - 1);
        }
        m = make_graphic(nv, std::move(edges));
    } else if (kind == "linear") {
        if (t.size() != 6) r.fail("usage: def NAME linear P R N");
        const std::int64_t p = parse_int64(t[3], r);
        const int rows = parse_int(t[4], r);
        const int cols = parse_int(t[5], r);
        std::vector<std::vector<std::int64_t>> matrix;
        std::vector<std::string> row;
        for (int i = 0; i < rows; ++i) {
            if (!r.next(row) || static_cast<int>(row.size()) != cols) {
                r.fail("expected a matrix row with " + std::to_string(cols) + " entries");
            }
            std::vector<std::int64_t> vals;
            vals.reserve(row.size());
            for (const auto& s : row) vals.push_back(parse_int64(s, r));
            matrix.push_back(std::move(vals));
        }
        m = make_linear(p, std::move(matrix));
    } else if (kind == "sparsepaving") {
        if (t.size() != 6) r.fail("usage: def NAME sparsepaving R N H");
        const int rank = parse_int(t[3], r);
        const int n = parse_int(t[4], r);
        const int h = parse_int(t[5], r);
        std::vector<ElemSet> hyperplanes;
        std::vector<std::string> row;
        for (int i = 0; i < h; ++i) {
            if (!r.next(row) || static_cast<int>(row.size()) != rank) {
                r.fail("expected a circuit-hyperplane line with " + std::to_string(rank) + " ids");
            }
            ElemSet hp(static_cast<std::size_t>(n));
            for (const auto& s : row) {
                const int id = parse_int(s, r);
                if (id < 1 || id > n) r.fail("element id out of range 1.." + std::to_string(n));
                hp.set(static_cast<std::size_t>(id - 1));
            }
            hyperplanes.push_back(std::move(hp));
        }
        m = make_sparse_paving(rank, n, std::move(hyperplanes));
    } else if (kind == "dual") {
        if (t.size() != 4) r.fail("usage: def NAME dual BASE");
        m = make_dual(lookup(lib, t[3], r));
    } else if (kind == "truncate") {
        if (t.size() != 4) r.fail("usage: def NAME truncate BASE");
        m = make_truncate(lookup(lib, t[3], r));
    } else if (kind == "minor") {
        if (t.size() != 8 || t[4] != "contract" || t[6] != "delete") {
            r.fail("usage: def NAME minor BASE contract LIST delete LIST");
        }
        MatroidPtr base = lookup(lib, t[3], r);
        const ElemSet c = parse_id_list(t[5], base->size(), r);
        const ElemSet d = parse_id_list(t[7], base->size(), r);
        m = make_minor(std::move(base), c, d);
    } else if (kind == "directsum") {
        if (t.size() != 5) r.fail("usage: def NAME directsum BASE1 BASE2");
        m = make_direct_sum(lookup(lib, t[3], r), lookup(lib, t[4], r));
    } else {
        r.fail("unknown matroid kind '" + kind + "'");
    }
    lib.defs.emplace_back(name, std::move(m));
}

}  // namespace

MatroidPtr MatroidLibrary::find(const std::string& name) const {
    for (const auto& [n, m] : defs) {
        if (n == name) return m;
    }
    return nullptr;
}

MatroidPtr MatroidLibrary::result() const {
    if (defs.empty()) throw InputError("matroid file defines no matroid");
    return defs.back().second;
}

MatroidLibrary parse_matroids(std::istream& in, const std::string& context) {
    LineReader r{in, context};
    MatroidLibrary lib;
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens[0] != "def") r.fail("expected 'def', got '" + tokens[0] + "'");
        parse_def(tokens, lib, r);
    }
    return lib;
}

MatroidLibrary load_matroid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open matroid file '" + path + "'");
    return parse_matroids(in, path);
}

DecompositionSpec parse_decomposition(std::istream& in, const std::string& context) {
    LineReader r{in, context};
    MatroidLibrary lib;
    DecompositionSpec spec;
    bool in_tdecomp = false;
    std::vector<char> part_seen;

    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        const std::string& tag = tokens[0];
        if (tag == "def") {
            if (in_tdecomp) r.fail("matroid definitions must precede the tdecomp section");
            parse_def(tokens, lib, r);
        } else if (tag == "tdecomp") {
            if (in_tdecomp) r.fail("duplicate tdecomp section");
            if (tokens.size() != 4 || tokens[2] != "on") r.fail("usage: tdecomp NV on NAME");
            in_tdecomp = true;
            spec.td.num_vertices = parse_int(tokens[1], r);
            if (spec.td.num_vertices < 1) r.fail("tdecomp needs at least one vertex");
            spec.matroid = lookup(lib, tokens[3], r);
            spec.td.parts.assign(static_cast<std::size_t>(spec.td.num_vertices),
                                 ElemSet(static_cast<std::size_t>(spec.matroid->size())));
            spec.labels.assign(static_cast<std::size_t>(spec.td.num_vertices), "");
            part_seen.assign(static_cast<std::size_t>(spec.td.num_vertices), 0);
        } else if (tag == "part") {
            if (!in_tdecomp) r.fail("part before tdecomp");
            if (tokens.size() < 2) r.fail("usage: part V [label L] [elements LIST]");
            const int v = parse_int(tokens[1], r);
            if (v < 1 || v > spec.td.num_vertices) r.fail("vertex out of range");
            if (part_seen[static_cast<std::size_t>(v - 1)]) r.fail("duplicate part for vertex " + tokens[1]);
            part_seen[static_cast<std::size_t>(v - 1)] = 1;
            std::size_t i = 2;
            while (i < tokens.size()) {
                if (tokens[i] == "label" && i + 1 < tokens.size()) {
                    spec.labels[static_cast<std::size_t>(v - 1)] = tokens[i + 1];
                    i += 2;
                } else if (tokens[i] == "elements" && i + 1 < tokens.size()) {
                    spec.td.parts[static_cast<std::size_t>(v - 1)] =
                        parse_id_list(tokens[i + 1], spec.matroid->size(), r);
                    i += 2;
                } else {
                    r.fail("unexpected token '" + tokens[i] + "' in part line");
                }
            }
        } else if (tag == "edge") {
            if (!in_tdecomp) r.fail("edge before tdecomp");
            if (tokens.size() != 3) r.fail("usage: edge U V");
            const int u = parse_int(tokens[1], r);
            const int v = parse_int(tokens[2], r);
            if (u < 1 || u > spec.td.num_vertices || v < 1 || v > spec.td.num_vertices) {
                r.fail("vertex out of range");
            }
            spec.td.edges.emplace_back(u - 1, v - 1);
        } else if (tag == "restrict") {
            if (!in_tdecomp) r.fail("restrict before tdecomp");
            if (tokens.size() != 2) r.fail("usage: restrict LIST");
            spec.has_restrict = true;
            spec.restrict_to = parse_id_list(tokens[1], spec.matroid->size(), r);
        } else {
            r.fail("unknown tag '" + tag + "'");
        }
    }
    if (!in_tdecomp) r.fail("missing tdecomp section");

    spec.td.validate(*spec.matroid);
    for (int e = 0; e < static_cast<int>(spec.td.edges.size()); ++e) {
        spec.per_edge_thickness.push_back(edge_thickness(*spec.matroid, spec.td, e));
    }
    return spec;
}

DecompositionSpec load_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open decomposition file '" + path + "'");
    return parse_decomposition(in, path);
}

}  // namespace msl
