#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/graph.hpp"

namespace shiftlab {

enum class Status { Nonempty, Empty, FiniteSufficient, Inconclusive };

std::string to_string(Status s);

// outcome of a single matrix criterion
struct Verdict {
    Status status = Status::Inconclusive;
    std::string criterion;
    std::string detail;
    std::optional<TorusConfig> witness;
};

// axis products in both compositions, the transpose variants, and the pruned
// products that only count squares extendable to larger admissible blocks
struct ProductReport {
    Mat hv, vh;             // horizontal-then-vertical and vertical-then-horizontal
    Mat hvt, vth;           // same with the vertical direction reversed
    Mat pruned_hv, pruned_vh;
};

// corner triomino: for the lower-right kind, a sits at the origin, b to its
// right, c above b; for the upper-left kind, a at the origin, b above it, c to
// the right of b
struct Triomino {
    int a = 0, b = 0, c = 0;
    friend bool operator==(const Triomino&, const Triomino&) = default;
    friend auto operator<=>(const Triomino&, const Triomino&) = default;
};

// square-extension structure: a1 holds the extendable lower-right triominoes,
// a2 the extendable upper-left ones; m links vertically stacked a1 squares,
// n horizontally consecutive a2 squares; epairs lists the (a1 index, a2 index)
// pairs that frame the same square
struct EPairTables {
    std::vector<Triomino> a1, a2;
    Mat m, n;
    std::vector<std::pair<int, int>> epairs;

    std::vector<int> epairs_of_a1(int i) const;
    std::vector<int> epairs_of_a2(int j) const;
};

struct MatrixPredicates {
    bool permutation = false;
    bool irreducible = false;
};

ProductReport products(const MultiGraph& g);

// mutual masking: zero each entry where the other matrix is zero, so both
// outputs share one zero pattern; a path counted by a surviving entry always
// closes into an admissible square
std::pair<Mat, Mat> prune_products(const Mat& hv, const Mat& vh);

MatrixPredicates matrix_predicates(const Mat& m);

Verdict perm_commute_test(const MultiGraph& g);
Verdict zero_pattern_test(const MultiGraph& g);
Verdict transpose_variant_test(const MultiGraph& g);
EPairTables build_epair_tables(const MultiGraph& g);
Verdict epair_nonempty_test(const MultiGraph& g);
Verdict mn_finiteness_test(const MultiGraph& g);

struct AnalysisOptions {
    int oracle_n_max = 6;
    SearchBudget budget{};
    bool run_oracle = true;
};

struct ComponentAnalysis {
    std::vector<int> vertex_ids; // indices into the original (untrimmed) graph
    MultiGraph graph;
    MatrixPredicates h_pred, v_pred;
    ProductReport products;
    EPairTables tables;
    std::vector<Verdict> criteria;
    OracleVerdict oracle;
    Verdict conclusion;
};

struct AnalysisResult {
    TrimResult trim;
    std::vector<ComponentAnalysis> components;
    Verdict overall;
};

// full pipeline: trim, split into components, run every criterion on each
// component, cross-check against the bounded oracle, and combine; throws
// consistency_error if a criterion and the oracle disagree
AnalysisResult analyze(const MultiGraph& g, const AnalysisOptions& opts = {});

} // namespace shiftlab
