#pragma once

#include "msl/connectivity.hpp"
#include "msl/matroid.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace msl {

/// Parsed matroid description file. Grammar (line oriented, '#' comments):
///
///   def NAME uniform R N
///   def NAME graphic NV M         followed by M lines "U V" (1-based vertices)
///   def NAME linear P R N         followed by R rows of N integers
///   def NAME sparsepaving R N H   followed by H lines of R element ids (1-based)
///   def NAME dual BASE
///   def NAME truncate BASE
///   def NAME minor BASE contract LIST delete LIST    (LIST = 1-based ids "1,2" or "-")
///   def NAME directsum BASE1 BASE2
///
/// Elements are 1-based in files and 0-based in the API. The final definition
/// is the file's result. Unknown tags are rejected.
struct MatroidLibrary {
    std::vector<std::pair<std::string, MatroidPtr>> defs;

    MatroidPtr find(const std::string& name) const;  // null when absent
    MatroidPtr result() const;                       // last definition
};

MatroidLibrary parse_matroids(std::istream& in, const std::string& context);
MatroidLibrary load_matroid_file(const std::string& path);

/// Decomposition file: matroid definitions as above, then
///
///   tdecomp NV on NAME
///   part V [label graphic|cographic|r10] [elements LIST]
///   edge U V
///   restrict LIST                 (optional; default is the whole ground set)
///
/// Vertices are 1-based in files. The loader validates the partition and
/// tree-ness and computes per-edge thickness.
struct DecompositionSpec {
    MatroidPtr matroid;                     // the ambient matroid M'
    TreeDecomposition td;
    std::vector<std::string> labels;        // per vertex; may be empty
    bool has_restrict = false;
    ElemSet restrict_to;                    // over E(M')
    std::vector<int> per_edge_thickness;    // aligned with td.edges
};

DecompositionSpec parse_decomposition(std::istream& in, const std::string& context);
DecompositionSpec load_decomposition_file(const std::string& path);

}  // namespace msl
