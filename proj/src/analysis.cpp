#include "shiftlab/analysis.hpp"

#include <algorithm>
#include <tuple>

namespace shiftlab {

std::string to_string(Status s) {
    switch (s) {
        case Status::Nonempty: return "nonempty";
        case Status::Empty: return "empty";
        case Status::FiniteSufficient: return "finite";
        case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<int> EPairTables::epairs_of_a1(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : epairs)
        if (a == i) out.push_back(b);
    return out;
}

std::vector<int> EPairTables::epairs_of_a2(int j) const {
    std::vector<int> out;
    for (const auto& [a, b] : epairs)
        if (b == j) out.push_back(a);
    return out;
}

namespace {

void require_two_axes(const MultiGraph& g) {
    g.validate();
    if (g.dimension() != 2)
        throw spec_error("matrix criteria require exactly two axes");
}

std::string tri_str(const MultiGraph& g, const Triomino& t) {
    return "(" + g.vertices.name(t.a) + ", " + g.vertices.name(t.b) + ", " + g.vertices.name(t.c) +
           ")";
}

// true iff the digraph of nonzero entries contains a cycle: iteratively strip
// vertices with no surviving out- or in-edges
bool has_cycle(const Mat& m) {
    const int n = m.n;
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (!alive[static_cast<std::size_t>(i)]) continue;
            bool has_out = false, has_in = false;
            for (int j = 0; j < n; ++j) {
                if (!alive[static_cast<std::size_t>(j)]) continue;
                if (m(i, j)) has_out = true;
                if (m(j, i)) has_in = true;
            }
            if (!has_out || !has_in) {
                alive[static_cast<std::size_t>(i)] = 0;
                changed = true;
            }
        }
    }
    return std::any_of(alive.begin(), alive.end(), [](char c) { return c != 0; });
}

} // namespace

MatrixPredicates matrix_predicates(const Mat& m) {
    MatrixPredicates out;
    const int n = m.n;
    out.permutation = n > 0;
    for (int i = 0; i < n && out.permutation; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < n; ++j) {
            if (m(i, j)) row += static_cast<int>(m(i, j));
            if (m(j, i)) col += static_cast<int>(m(j, i));
        }
        if (row != 1 || col != 1) out.permutation = false;
    }
    // strongly connected, and aperiodic in the degenerate one-vertex case only
    // if the self-loop is present
    if (n == 0) return out;
    auto reaches = [&](int from) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j)
                if (m(u, j) && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    stack.push_back(j);
                }
        }
        return seen;
    };
    bool strong = true;
    for (int i = 0; i < n && strong; ++i) {
        auto seen = reaches(i);
        strong = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }
    out.irreducible = strong && (n > 1 || m(0, 0) > 0);
    return out;
}

ProductReport products(const MultiGraph& g) {
    require_two_axes(g);
    const Mat& h = g.axes[0];
    const Mat& v = g.axes[1];
    ProductReport out;
    out.hv = mat_mul(h, v);
    out.vh = mat_mul(v, h);
    Mat vt = mat_transpose(v);
    out.hvt = mat_mul(h, vt);
    out.vth = mat_mul(vt, h);

    std::tie(out.pruned_hv, out.pruned_vh) = prune_products(out.hv, out.vh);
    return out;
}

std::pair<Mat, Mat> prune_products(const Mat& hv, const Mat& vh) {
    if (hv.n != vh.n) throw spec_error("pruning requires matrices of equal shape");
    Mat a = hv, b = vh;
    for (int i = 0; i < hv.n; ++i)
        for (int j = 0; j < hv.n; ++j)
            if (hv(i, j) == 0 || vh(i, j) == 0) {
                a(i, j) = 0;
                b(i, j) = 0;
            }
    return {a, b};
}

Verdict perm_commute_test(const MultiGraph& g) {
    require_two_axes(g);
    Verdict out;
    out.criterion = "perm_commute";
    auto hp = matrix_predicates(g.axes[0]);
    auto vp = matrix_predicates(g.axes[1]);
    if (!hp.permutation || !vp.permutation) {
        out.detail = std::string(!hp.permutation ? "horizontal" : "vertical") +
                     " matrix is not a permutation";
        return out;
    }
    if (!hp.irreducible || !vp.irreducible) {
        out.detail = std::string(!hp.irreducible ? "horizontal" : "vertical") +
                     " matrix is not irreducible";
        return out;
    }
    Mat hv = mat_mul(g.axes[0], g.axes[1]);
    Mat vh = mat_mul(g.axes[1], g.axes[0]);
    if (hv == vh) {
        auto prop = propagate_permutation(g, 0);
        if (prop.status != OracleStatus::NonemptyWitness)
            throw consistency_error("commuting permutations failed to propagate: " + prop.note);
        out.status = Status::Nonempty;
        out.detail = "both matrices are irreducible commuting permutations; deterministic "
                     "propagation yields a doubly periodic configuration";
        out.witness = prop.witness;
        return out;
    }
    out.status = Status::Empty;
    out.detail = "both matrices are irreducible permutations but the two compositions differ; "
                 "every symbol propagates to a contradiction";
    return out;
}

namespace {

Verdict zero_pattern_impl(const MultiGraph& g, const std::string& prefix,
                          const std::string& flavor) {
    Verdict out;
    out.criterion = prefix + "zero_pattern";
    TrimResult tr = trim(g);
    if (tr.graph.size() == 0) {
        out.status = Status::Empty;
        out.criterion = prefix + "zero_pattern";
        out.detail = "iterative pruning removes every symbol" + flavor;
        return out;
    }
    Mat hv = mat_mul(tr.graph.axes[0], tr.graph.axes[1]);
    Mat vh = mat_mul(tr.graph.axes[1], tr.graph.axes[0]);
    if (same_zero_pattern(hv, vh)) {
        out.status = Status::Nonempty;
        out.criterion = prefix + "zero_pattern_equal";
        out.detail = "after pruning, the two compositions share one zero pattern" + flavor +
                     "; a doubly periodic configuration exists";
        return out;
    }
    if (zero_pattern_implies(hv, vh)) {
        out.status = Status::Nonempty;
        out.criterion = prefix + "zero_pattern_hv_implies_vh";
        out.detail = "after pruning, every nonzero of the horizontal-first composition is nonzero "
                     "in the vertical-first one" +
                     flavor + "; a doubly periodic configuration exists";
        return out;
    }
    if (zero_pattern_implies(vh, hv)) {
        out.status = Status::Nonempty;
        out.criterion = prefix + "zero_pattern_vh_implies_hv";
        out.detail = "after pruning, every nonzero of the vertical-first composition is nonzero "
                     "in the horizontal-first one" +
                     flavor + "; a doubly periodic configuration exists";
        return out;
    }
    out.detail = "the pruned compositions differ in both directions" + flavor;
    return out;
}

} // namespace

Verdict zero_pattern_test(const MultiGraph& g) {
    require_two_axes(g);
    return zero_pattern_impl(g, "", "");
}

Verdict transpose_variant_test(const MultiGraph& g) {
    require_two_axes(g);
    MultiGraph mirrored = g;
    mirrored.axes[1] = mat_transpose(mirrored.axes[1]);
    // reflecting the vertical direction preserves emptiness, so any verdict
    // for the mirrored shift transfers back
    Verdict out = zero_pattern_impl(mirrored, "transpose_", " in the vertically mirrored shift");
    out.witness.reset(); // witnesses, if any, would live in the mirrored shift
    return out;
}

EPairTables build_epair_tables(const MultiGraph& g) {
    require_two_axes(g);
    const Mat& h = g.axes[0];
    const Mat& v = g.axes[1];
    const int n = g.size();
    EPairTables out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (h(a, b) && v(b, c)) {
                    bool ext = false;
                    for (int d = 0; d < n && !ext; ++d) ext = v(a, d) && h(d, c);
                    if (ext) out.a1.push_back({a, b, c});
                }
                if (v(a, b) && h(b, c)) {
                    bool ext = false;
                    for (int w = 0; w < n && !ext; ++w) ext = h(a, w) && v(w, c);
                    if (ext) out.a2.push_back({a, b, c});
                }
            }

    auto in_a2 = [&](int x, int y, int z) {
        return std::binary_search(out.a2.begin(), out.a2.end(), Triomino{x, y, z});
    };
    auto in_a1 = [&](int a, int b, int c) {
        return std::binary_search(out.a1.begin(), out.a1.end(), Triomino{a, b, c});
    };

    const int n1 = static_cast<int>(out.a1.size());
    const int n2 = static_cast<int>(out.a2.size());
    out.m = Mat(n1);
    out.n = Mat(n2);
    // m: square J sits directly above square I
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            const Triomino& I = out.a1[static_cast<std::size_t>(i)];
            const Triomino& J = out.a1[static_cast<std::size_t>(j)];
            if (J.a == I.c && in_a2(I.b, I.c, J.b)) out.m(i, j) = 1;
        }
    // n: square S sits directly to the right of square R
    for (int r = 0; r < n2; ++r)
        for (int s = 0; s < n2; ++s) {
            const Triomino& R = out.a2[static_cast<std::size_t>(r)];
            const Triomino& S = out.a2[static_cast<std::size_t>(s)];
            if (S.a == R.c && in_a1(R.b, R.c, S.b)) out.n(r, s) = 1;
        }
    // e-pairs: both triominoes frame one square (same diagonal corners)
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const Triomino& I = out.a1[static_cast<std::size_t>(i)];
            const Triomino& J = out.a2[static_cast<std::size_t>(j)];
            if (I.a == J.a && I.c == J.c) out.epairs.emplace_back(i, j);
        }
    return out;
}

Verdict epair_nonempty_test(const MultiGraph& g) {
    require_two_axes(g);
    Verdict out;
    out.criterion = "epair_extension";
    EPairTables t = build_epair_tables(g);
    if (t.a1.empty()) {
        out.detail = "no extendable square exists";
        return out;
    }
    if (!has_cycle(t.m)) {
        out.detail = "the vertical linking digraph has no cycle";
        return out;
    }
    if (!has_cycle(t.n)) {
        out.detail = "the horizontal linking digraph has no cycle";
        return out;
    }

    const int n1 = static_cast<int>(t.a1.size());
    const int n2 = static_cast<int>(t.a2.size());
    auto mn_holds = [&]() {
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n1; ++j) {
                if (!t.m(i, j)) continue;
                for (int i1 : t.epairs_of_a1(i)) {
                    bool found = false;
                    for (int j1 : t.epairs_of_a1(j))
                        if (t.n(i1, j1)) {
                            found = true;
                            break;
                        }
                    if (!found) return false;
                }
            }
        return true;
    };
    auto nm_holds = [&]() {
        for (int r = 0; r < n2; ++r)
            for (int s = 0; s < n2; ++s) {
                if (!t.n(r, s)) continue;
                for (int r1 : t.epairs_of_a2(r)) {
                    bool found = false;
                    for (int s1 : t.epairs_of_a2(s))
                        if (t.m(r1, s1)) {
                            found = true;
                            break;
                        }
                    if (!found) return false;
                }
            }
        return true;
    };

    if (mn_holds()) {
        out.status = Status::Nonempty;
        out.criterion = "epair_mn";
        out.detail = "both linking digraphs have cycles and every vertical link extends across "
                     "each paired upper-left square";
        return out;
    }
    if (nm_holds()) {
        out.status = Status::Nonempty;
        out.criterion = "epair_nm";
        out.detail = "both linking digraphs have cycles and every horizontal link extends across "
                     "each paired lower-right square";
        return out;
    }
    out.detail = "linking digraphs have cycles but the paired extension condition fails in both "
                 "orientations";
    return out;
}

Verdict mn_finiteness_test(const MultiGraph& g) {
    require_two_axes(g);
    Verdict out;
    out.criterion = "mn_finiteness";
    EPairTables t = build_epair_tables(g);
    if (t.a1.empty()) {
        out.status = Status::FiniteSufficient;
        out.detail = "no extendable square exists, so the shift is empty and in particular finite";
        return out;
    }
    if (!matrix_predicates(t.m).permutation) {
        out.detail = "the vertical linking matrix is not a permutation";
        return out;
    }
    if (!matrix_predicates(t.n).permutation) {
        out.detail = "the horizontal linking matrix is not a permutation";
        return out;
    }
    for (int i = 0; i < static_cast<int>(t.a1.size()); ++i) {
        auto p = t.epairs_of_a1(i);
        if (p.size() != 1) {
            out.detail = "lower-right square " + tri_str(g, t.a1[static_cast<std::size_t>(i)]) +
                         " has " + std::to_string(p.size()) + " pairings";
            return out;
        }
    }
    for (int j = 0; j < static_cast<int>(t.a2.size()); ++j) {
        auto p = t.epairs_of_a2(j);
        if (p.size() != 1) {
            out.detail = "upper-left square " + tri_str(g, t.a2[static_cast<std::size_t>(j)]) +
                         " has " + std::to_string(p.size()) + " pairings";
            return out;
        }
    }
    out.status = Status::FiniteSufficient;
    out.detail = "both linking matrices are permutations and every square has a unique pairing; "
                 "the shift contains at most finitely many configurations";
    return out;
}

AnalysisResult analyze(const MultiGraph& g, const AnalysisOptions& opts) {
    require_two_axes(g);
    AnalysisResult result;
    result.trim = trim(g);
    if (result.trim.graph.size() == 0) {
        result.overall.status = Status::Empty;
        result.overall.criterion = "trim";
        result.overall.detail = "iterative pruning removes every symbol";
        return result;
    }

    auto comps = decompose_components(result.trim.graph);
    bool any_nonempty = false, all_empty = true, all_decided = true;
    std::string first_nonempty;
    for (const auto& comp : comps) {
        ComponentAnalysis ca;
        for (int vid : comp.vertex_ids)
            ca.vertex_ids.push_back(result.trim.kept[static_cast<std::size_t>(vid)]);
        ca.graph = comp.graph;
        ca.h_pred = matrix_predicates(comp.graph.axes[0]);
        ca.v_pred = matrix_predicates(comp.graph.axes[1]);
        ca.products = products(comp.graph);
        ca.tables = build_epair_tables(comp.graph);
        ca.criteria.push_back(perm_commute_test(comp.graph));
        ca.criteria.push_back(zero_pattern_test(comp.graph));
        ca.criteria.push_back(transpose_variant_test(comp.graph));
        ca.criteria.push_back(epair_nonempty_test(comp.graph));
        ca.criteria.push_back(mn_finiteness_test(comp.graph));

        if (opts.run_oracle) {
            ca.oracle = bounded_emptiness(comp.graph, opts.oracle_n_max, opts.budget);
        } else {
            ca.oracle.note = "oracle disabled";
        }

        const Verdict* empty_v = nullptr;
        const Verdict* nonempty_v = nullptr;
        for (const auto& verdict : ca.criteria) {
            if (verdict.status == Status::Empty && !empty_v) empty_v = &verdict;
            if (verdict.status == Status::Nonempty && !nonempty_v) nonempty_v = &verdict;
        }
        if (empty_v && nonempty_v)
            throw consistency_error("criteria disagree: '" + empty_v->criterion +
                                    "' claims empty while '" + nonempty_v->criterion +
                                    "' claims nonempty");
        if (empty_v && ca.oracle.status == OracleStatus::NonemptyWitness)
            throw consistency_error("criterion '" + empty_v->criterion +
                                    "' claims empty but the oracle found a torus witness");
        if (nonempty_v && ca.oracle.status == OracleStatus::EmptyCertificate)
            throw consistency_error("criterion '" + nonempty_v->criterion +
                                    "' claims nonempty but the oracle certifies emptiness");

        if (empty_v) {
            ca.conclusion = *empty_v;
        } else if (nonempty_v) {
            ca.conclusion = *nonempty_v;
        } else if (ca.oracle.status == OracleStatus::NonemptyWitness) {
            ca.conclusion.status = Status::Nonempty;
            ca.conclusion.criterion = "oracle";
            ca.conclusion.detail = ca.oracle.note;
            ca.conclusion.witness = ca.oracle.witness;
        } else if (ca.oracle.status == OracleStatus::EmptyCertificate) {
            ca.conclusion.status = Status::Empty;
            ca.conclusion.criterion = "oracle";
            ca.conclusion.detail = ca.oracle.note;
        } else {
            ca.conclusion.status = Status::Inconclusive;
            ca.conclusion.criterion = "none";
            ca.conclusion.detail = "no criterion applies; oracle: " + ca.oracle.note;
        }

        if (ca.conclusion.status == Status::Nonempty) {
            any_nonempty = true;
            if (first_nonempty.empty())
                first_nonempty = "component of " + comp.graph.vertices.name(0);
        }
        if (ca.conclusion.status != Status::Empty) all_empty = false;
        if (ca.conclusion.status == Status::Inconclusive) all_decided = false;
        result.components.push_back(std::move(ca));
    }

    if (any_nonempty) {
        result.overall.status = Status::Nonempty;
        result.overall.criterion = "components";
        result.overall.detail = "the " + first_nonempty + " already carries a configuration";
    } else if (all_empty && all_decided) {
        result.overall.status = Status::Empty;
        result.overall.criterion = "components";
        result.overall.detail = "every component is empty and configurations cannot mix components";
    } else {
        result.overall.status = Status::Inconclusive;
        result.overall.criterion = "components";
        result.overall.detail = "no component is known nonempty and not all are known empty";
    }
    return result;
}

} // namespace shiftlab
