#include "shiftlab/graph.hpp"

#include <algorithm>
#include <numeric>

namespace shiftlab {

Mat::Mat(int n_, std::vector<long long> vals) : n(n_), a(std::move(vals)) {
    if (static_cast<long long>(a.size()) != static_cast<long long>(n) * n)
        throw spec_error("matrix data does not match its declared size");
}

Mat Mat::from_rows(const std::vector<std::vector<long long>>& rows) {
    Mat m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i) {
        if (static_cast<int>(rows[i].size()) != m.n)
            throw spec_error("matrix rows must form a square");
        for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<long long>> Mat::rows() const {
    std::vector<std::vector<long long>> out(n);
    for (int i = 0; i < n; ++i)
        out[i].assign(a.begin() + static_cast<long long>(i) * n,
                      a.begin() + static_cast<long long>(i + 1) * n);
    return out;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.n != y.n) throw spec_error("matrix size mismatch");
    Mat out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            long long v = x(i, k);
            if (!v) continue;
            for (int j = 0; j < x.n; ++j) out(i, j) += v * y(k, j);
        }
    return out;
}

Mat mat_transpose(const Mat& x) {
    Mat out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) out(j, i) = x(i, j);
    return out;
}

bool same_zero_pattern(const Mat& x, const Mat& y) {
    if (x.n != y.n) throw spec_error("matrix size mismatch");
    for (std::size_t k = 0; k < x.a.size(); ++k)
        if ((x.a[k] != 0) != (y.a[k] != 0)) return false;
    return true;
}

bool zero_pattern_implies(const Mat& x, const Mat& y) {
    if (x.n != y.n) throw spec_error("matrix size mismatch");
    for (std::size_t k = 0; k < x.a.size(); ++k)
        if (x.a[k] != 0 && y.a[k] == 0) return false;
    return true;
}

void MultiGraph::validate() const {
    if (axes.empty())
        throw spec_error("graph needs at least one axis");
    for (const auto& m : axes) {
        if (m.n != size())
            throw spec_error("axis matrix size does not match the vertex count");
        for (long long v : m.a)
            if (v != 0 && v != 1)
                throw spec_error("adjacency matrices must be 0/1");
    }
}

MultiGraph graph_from_one_step(const ShiftSpec& spec) {
    spec.validate();
    if (!spec.is_one_step())
        throw spec_error("spec is not one-step: a forbidden pattern is not a domino");
    const int n = spec.alphabet.size();
    MultiGraph g;
    g.vertices = spec.alphabet;
    g.axes.assign(static_cast<std::size_t>(spec.dimension), Mat(n));
    for (auto& m : g.axes)
        std::fill(m.a.begin(), m.a.end(), 1);
    for (const auto& p : spec.forbidden) {
        int axis = *p.domino_axis();
        g.axes[axis](p.cells[0], p.cells[1]) = 0;
    }
    return g;
}

ShiftSpec spec_from_graph(const MultiGraph& g) {
    g.validate();
    ShiftSpec spec;
    spec.dimension = g.dimension();
    spec.alphabet = g.vertices;
    for (int axis = 0; axis < g.dimension(); ++axis)
        for (int i = 0; i < g.size(); ++i)
            for (int j = 0; j < g.size(); ++j)
                if (!g.axes[axis](i, j))
                    spec.forbidden.push_back(GeneralPattern::domino(g.dimension(), axis, i, j));
    return spec;
}

static MultiGraph induced_subgraph(const MultiGraph& g, const std::vector<int>& ids) {
    MultiGraph out;
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (int id : ids) labels.push_back(g.vertices.symbols[id]);
    out.vertices = Alphabet(std::move(labels));
    const int m = static_cast<int>(ids.size());
    for (const auto& axis : g.axes) {
        Mat sub(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sub(i, j) = axis(ids[i], ids[j]);
        out.axes.push_back(std::move(sub));
    }
    return out;
}

TrimResult trim(const MultiGraph& g) {
    g.validate();
    std::vector<int> alive(g.size());
    std::iota(alive.begin(), alive.end(), 0);
    bool changed = true;
    while (changed && !alive.empty()) {
        changed = false;
        std::vector<int> keep;
        keep.reserve(alive.size());
        for (int idx : alive) {
            bool ok = true;
            for (const auto& axis : g.axes) {
                bool row = false, col = false;
                for (int other : alive) {
                    if (axis(idx, other)) row = true;
                    if (axis(other, idx)) col = true;
                }
                if (!row || !col) { ok = false; break; }
            }
            if (ok)
                keep.push_back(idx);
            else
                changed = true;
        }
        alive.swap(keep);
    }
    TrimResult res;
    res.kept = alive;
    std::vector<char> kept(g.size(), 0);
    for (int id : alive) kept[id] = 1;
    for (int i = 0; i < g.size(); ++i)
        if (!kept[i]) res.removed.push_back(i);
    res.graph = induced_subgraph(g, alive);
    return res;
}

OneStepRecoding one_step_graph_for_sft(const ShiftSpec& spec, const Coords& window,
                                       const SearchBudget& budget) {
    auto [one_step, coding] = higher_block_spec(spec, window, budget);
    OneStepRecoding out;
    out.graph = graph_from_one_step(one_step);
    out.one_step = std::move(one_step);
    out.coding = std::move(coding);
    return out;
}

std::vector<Component> decompose_components(const MultiGraph& g) {
    g.validate();
    const int n = g.size();
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = n_comp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (comp[v] != -1 || v == u) continue;
                bool adj = false;
                for (const auto& axis : g.axes)
                    if (axis(u, v) || axis(v, u)) { adj = true; break; }
                if (adj) {
                    comp[v] = n_comp;
                    stack.push_back(v);
                }
            }
        }
        ++n_comp;
    }
    std::vector<Component> out(static_cast<std::size_t>(n_comp));
    for (int i = 0; i < n; ++i) out[comp[i]].vertex_ids.push_back(i);
    for (auto& c : out) c.graph = induced_subgraph(g, c.vertex_ids);
    return out;
}

MultiGraph swap_axes(const MultiGraph& g) {
    if (g.dimension() != 2)
        throw spec_error("axis swap requires exactly two axes");
    MultiGraph out = g;
    std::swap(out.axes[0], out.axes[1]);
    return out;
}

} // namespace shiftlab
