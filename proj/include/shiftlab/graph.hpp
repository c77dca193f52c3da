#pragma once

/*
 * One-step shifts as multigraphs: one 0/1 adjacency matrix per axis over a
 * common vertex set. Matrix entry M[a](i,j) = 1 means symbol j may sit one
 * step along axis a from symbol i (to its right for axis 0, above for axis 1).
 */

#include <string>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/recode.hpp"

namespace shiftlab {

// dense square integer matrix (0/1 adjacencies and their count products)
struct Mat {
    int n = 0;
    std::vector<long long> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
    Mat(int n_, std::vector<long long> vals);

    long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }

    static Mat from_rows(const std::vector<std::vector<long long>>& rows);
    std::vector<std::vector<long long>> rows() const;
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_transpose(const Mat& x);
bool same_zero_pattern(const Mat& x, const Mat& y);
// true iff x(i,j) != 0 implies y(i,j) != 0 everywhere
bool zero_pattern_implies(const Mat& x, const Mat& y);

struct MultiGraph {
    Alphabet vertices;
    std::vector<Mat> axes;

    int dimension() const { return static_cast<int>(axes.size()); }
    int size() const { return vertices.size(); }
    void validate() const; // throws spec_error on shape mismatch or non-0/1 entries
};

struct TrimResult {
    MultiGraph graph;
    std::vector<int> kept;    // original vertex ids, in order
    std::vector<int> removed; // original vertex ids, in order
};

struct Component {
    std::vector<int> vertex_ids; // ids into the input graph, ascending
    MultiGraph graph;
};

struct OneStepRecoding {
    MultiGraph graph;
    ShiftSpec one_step;
    BlockAlphabetCoding coding;
};

// requires every forbidden pattern of `spec` to be an axis-aligned domino
MultiGraph graph_from_one_step(const ShiftSpec& spec);

// the explicit one-step spec whose dominoes are the zero entries of G
ShiftSpec spec_from_graph(const MultiGraph& g);

// repeatedly delete vertices with a zero row or zero column in any axis
TrimResult trim(const MultiGraph& g);

// recode an arbitrary SFT to a one-step graph via the higher-block code
OneStepRecoding one_step_graph_for_sft(const ShiftSpec& spec, const Coords& window,
                                       const SearchBudget& budget = {});

// connected components of the undirected union of all axis relations
std::vector<Component> decompose_components(const MultiGraph& g);

// convenience: the graph with its two axes swapped (d must be 2)
MultiGraph swap_axes(const MultiGraph& g);

} // namespace shiftlab
