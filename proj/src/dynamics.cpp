#include "shiftlab/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace shiftlab {

namespace {

std::string coords_str(const Coords& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

long long checked_cell_count(const Coords& periods, long long max_cells, const char* what) {
    long long n = 1;
    for (int p : periods) {
        if (p <= 0) throw spec_error(std::string(what) + " must have positive periods");
        n *= p;
    }
    if (n > max_cells)
        throw budget_error(std::string(what) + " exceeds the cell budget (" + std::to_string(n) +
                           " > " + std::to_string(max_cells) + ")");
    return n;
}

} // namespace

std::optional<std::string> find_invalid_seam(const MultiGraph& g, const TorusConfig& t) {
    g.validate();
    if (t.dimension() != g.dimension())
        return "torus dimension does not match the graph";
    for (int s : t.cells)
        if (s < 0 || s >= g.size()) return "torus uses a symbol outside the vertex set";
    std::optional<std::string> bad;
    for_each_coords(t.periods, [&](const Coords& v) {
        if (bad) return;
        for (int axis = 0; axis < g.dimension(); ++axis) {
            Coords w = v;
            ++w[axis];
            int a = t.cell(v), b = t.cell(w);
            if (!g.axes[axis](a, b)) {
                bad = "axis " + std::to_string(axis) + " adjacency " +
                      g.vertices.name(a) + " -> " + g.vertices.name(b) + " at " + coords_str(v);
                return;
            }
        }
    });
    return bad;
}

bool validate_torus(const MultiGraph& g, const TorusConfig& t) {
    return !find_invalid_seam(g, t).has_value();
}

std::vector<TorusConfig> torus_search(const MultiGraph& g, const Coords& periods,
                                      const SearchBudget& budget, long long limit) {
    g.validate();
    if (static_cast<int>(periods.size()) != g.dimension())
        throw spec_error("period vector dimension does not match the graph");
    const long long n_cells = checked_cell_count(periods, budget.max_cells, "torus search domain");
    const int n_sym = g.size();
    std::vector<TorusConfig> out;
    if (n_sym == 0) return out;

    std::vector<Coords> coords;
    coords.reserve(static_cast<std::size_t>(n_cells));
    for_each_coords(periods, [&](const Coords& v) { coords.push_back(v); });
    TorusConfig probe(periods, std::vector<int>(static_cast<std::size_t>(n_cells), 0));

    struct Chk {
        int axis;
        std::size_t other;
        bool outgoing; // true: edge current -> other, false: other -> current
    };
    std::vector<std::vector<Chk>> checks(static_cast<std::size_t>(n_cells));
    for (std::size_t idx = 0; idx < coords.size(); ++idx) {
        const Coords& v = coords[idx];
        for (int a = 0; a < g.dimension(); ++a) {
            if (v[a] > 0) {
                Coords u = v;
                --u[a];
                checks[idx].push_back({a, probe.cell_index(u), false});
            }
            if (v[a] == periods[a] - 1) {
                Coords w = v;
                w[a] = 0;
                checks[idx].push_back({a, probe.cell_index(w), true});
            }
        }
    }

    std::vector<int> cells(static_cast<std::size_t>(n_cells), 0);
    std::vector<int> next_sym(static_cast<std::size_t>(n_cells) + 1, 0);
    long long nodes = 0;
    std::size_t depth = 0;
    while (true) {
        if (depth == static_cast<std::size_t>(n_cells)) {
            out.emplace_back(periods, cells);
            if (limit > 0 && static_cast<long long>(out.size()) >= limit) return out;
            --depth;
            continue;
        }
        int s = next_sym[depth];
        if (s >= n_sym) {
            next_sym[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        next_sym[depth] = s + 1;
        if (++nodes > budget.max_nodes)
            throw budget_error("torus search exceeded the node budget after finding " +
                               std::to_string(out.size()) + " configuration(s)");
        cells[depth] = s;
        bool ok = true;
        for (const auto& c : checks[depth]) {
            int from = c.outgoing ? s : cells[c.other];
            int to = c.outgoing ? cells[c.other] : s;
            if (!g.axes[c.axis](from, to)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++depth;
            next_sym[depth] = 0;
        }
    }
    return out;
}

std::vector<TorusConfig> torus_search_spec(const ShiftSpec& spec, const Coords& periods,
                                           const SearchBudget& budget, long long limit) {
    spec.validate();
    if (static_cast<int>(periods.size()) != spec.dimension)
        throw spec_error("period vector dimension does not match the spec");
    const long long n_cells = checked_cell_count(periods, budget.max_cells, "torus search domain");
    const int n_sym = spec.alphabet.size();
    const int d = spec.dimension;
    TorusConfig probe(periods, std::vector<int>(static_cast<std::size_t>(n_cells), 0));

    // wraparound placements of each forbidden pattern, grouped by the last
    // cell index they cover
    struct Placement {
        std::vector<std::pair<std::size_t, int>> checks;
    };
    std::vector<std::vector<Placement>> by_last(static_cast<std::size_t>(n_cells));
    for (const auto& p : spec.forbidden) {
        for_each_coords(periods, [&](const Coords& o) {
            std::map<std::size_t, int> folded;
            bool possible = true;
            Coords w(d);
            for (std::size_t k = 0; k < p.support.size() && possible; ++k) {
                for (int i = 0; i < d; ++i) w[i] = (p.support[k][i] + o[i]) % periods[i];
                auto [it, fresh] = folded.emplace(probe.cell_index(w), p.cells[k]);
                if (!fresh && it->second != p.cells[k]) possible = false;
            }
            if (!possible) return; // folds onto itself inconsistently, can never match
            Placement pl;
            pl.checks.assign(folded.begin(), folded.end());
            by_last[pl.checks.back().first].push_back(std::move(pl));
        });
    }

    std::vector<TorusConfig> out;
    std::vector<int> cells(static_cast<std::size_t>(n_cells), 0);
    std::vector<int> next_sym(static_cast<std::size_t>(n_cells) + 1, 0);
    long long nodes = 0;
    std::size_t depth = 0;
    while (true) {
        if (depth == static_cast<std::size_t>(n_cells)) {
            out.emplace_back(periods, cells);
            if (limit > 0 && static_cast<long long>(out.size()) >= limit) return out;
            --depth;
            continue;
        }
        int s = next_sym[depth];
        if (s >= n_sym) {
            next_sym[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        next_sym[depth] = s + 1;
        if (++nodes > budget.max_nodes)
            throw budget_error("torus search exceeded the node budget after finding " +
                               std::to_string(out.size()) + " configuration(s)");
        cells[depth] = s;
        bool ok = true;
        for (const auto& pl : by_last[depth]) {
            bool match = true;
            for (const auto& [idx, sym] : pl.checks)
                if (cells[idx] != sym) {
                    match = false;
                    break;
                }
            if (match) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++depth;
            next_sym[depth] = 0;
        }
    }
    return out;
}

namespace {

// counts admissible blocks of the given extents (no wraparound); stops early
// at `limit` solutions when limit > 0; sets `exhausted` instead of throwing
// when the node budget runs out
long long count_admissible_blocks(const MultiGraph& g, const Coords& extents, long long& nodes,
                                  long long max_nodes, bool& exhausted, long long limit) {
    long long n_cells = 1;
    for (int e : extents) n_cells *= e;
    const int n_sym = g.size();
    if (n_sym == 0) return 0;

    std::vector<Coords> coords;
    coords.reserve(static_cast<std::size_t>(n_cells));
    for_each_coords(extents, [&](const Coords& v) { coords.push_back(v); });
    RectBlock probe(extents, std::vector<int>(static_cast<std::size_t>(n_cells), 0));
    std::vector<std::vector<std::pair<int, std::size_t>>> back(static_cast<std::size_t>(n_cells));
    for (std::size_t idx = 0; idx < coords.size(); ++idx) {
        const Coords& v = coords[idx];
        for (int a = 0; a < g.dimension(); ++a) {
            if (v[a] == 0) continue;
            Coords u = v;
            --u[a];
            back[idx].emplace_back(a, probe.cell_index(u));
        }
    }

    long long found = 0;
    std::vector<int> cells(static_cast<std::size_t>(n_cells), 0);
    std::vector<int> next_sym(static_cast<std::size_t>(n_cells) + 1, 0);
    std::size_t depth = 0;
    while (true) {
        if (depth == static_cast<std::size_t>(n_cells)) {
            ++found;
            if (limit > 0 && found >= limit) return found;
            --depth;
            continue;
        }
        int s = next_sym[depth];
        if (s >= n_sym) {
            next_sym[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        next_sym[depth] = s + 1;
        if (++nodes > max_nodes) {
            exhausted = true;
            return found;
        }
        cells[depth] = s;
        bool ok = true;
        for (const auto& [axis, other] : back[depth])
            if (!g.axes[axis](cells[other], s)) {
                ok = false;
                break;
            }
        if (ok) {
            ++depth;
            next_sym[depth] = 0;
        }
    }
    return found;
}

} // namespace

BlockGrowth block_growth(const MultiGraph& g, int n_max, const SearchBudget& budget) {
    g.validate();
    if (n_max < 1) throw spec_error("n_max must be positive");
    BlockGrowth out;
    long long nodes = 0;
    for (int n = 1; n <= n_max; ++n) {
        Coords ext(static_cast<std::size_t>(g.dimension()), n);
        long long n_cells = 1;
        for (int e : ext) n_cells *= e;
        if (n_cells > budget.max_cells) {
            out.truncated = true;
            break;
        }
        bool exhausted = false;
        long long c = count_admissible_blocks(g, ext, nodes, budget.max_nodes, exhausted, -1);
        if (exhausted) {
            out.truncated = true;
            break;
        }
        out.counts.push_back(c);
    }
    return out;
}

OracleVerdict bounded_emptiness(const MultiGraph& g, int n_max, const SearchBudget& budget) {
    g.validate();
    OracleVerdict out;
    if (g.size() == 0) {
        out.status = OracleStatus::EmptyCertificate;
        out.certificate_n = 1;
        out.note = "empty vertex set";
        return out;
    }
    long long nodes = 0;
    const int d = g.dimension();
    for (int n = 1; n <= n_max; ++n) {
        Coords ext(static_cast<std::size_t>(d), n);
        long long n_cells = 1;
        for (int e : ext) n_cells *= e;
        if (n_cells <= budget.max_cells) {
            bool exhausted = false;
            long long c = count_admissible_blocks(g, ext, nodes, budget.max_nodes, exhausted, 1);
            if (exhausted) {
                out.note = "node budget exhausted while probing size-" + std::to_string(n) + " blocks";
                return out;
            }
            if (c == 0) {
                out.status = OracleStatus::EmptyCertificate;
                out.certificate_n = n;
                out.note = "no admissible block of side " + std::to_string(n);
                return out;
            }
        }
        // all period vectors with entries <= n and at least one entry == n
        bool budget_hit = false;
        Coords counter(static_cast<std::size_t>(d), n);
        for_each_coords(counter, [&](const Coords& v) {
            if (out.status != OracleStatus::Unknown || budget_hit) return;
            Coords periods(static_cast<std::size_t>(d));
            int mx = 0;
            long long cells = 1;
            for (int i = 0; i < d; ++i) {
                periods[i] = v[i] + 1;
                mx = std::max(mx, periods[i]);
                cells *= periods[i];
            }
            if (mx != n || cells > budget.max_cells) return;
            try {
                auto found = torus_search(g, periods, budget, 1);
                if (!found.empty()) {
                    out.status = OracleStatus::NonemptyWitness;
                    out.witness = found.front();
                    out.note = "torus witness with periods " + coords_str(periods);
                }
            } catch (const budget_error&) {
                budget_hit = true;
            }
        });
        if (out.status != OracleStatus::Unknown) return out;
        if (budget_hit) {
            out.note = "node budget exhausted while searching period-" + std::to_string(n) + " tori";
            return out;
        }
    }
    out.note = "no certificate within side bound " + std::to_string(n_max);
    return out;
}

namespace {

// all cyclic walks of length m in the digraph of M, lexicographically sorted
std::vector<std::vector<int>> closed_rows(const Mat& M, int m, long long max_nodes,
                                          long long& nodes) {
    std::vector<std::vector<int>> out;
    const int n = M.n;
    if (n == 0) return out;
    std::vector<int> r(static_cast<std::size_t>(m), 0);
    std::vector<int> next_sym(static_cast<std::size_t>(m) + 1, 0);
    int depth = 0;
    while (true) {
        if (depth == m) {
            if (M(r[static_cast<std::size_t>(m) - 1], r[0])) out.push_back(r);
            --depth;
            continue;
        }
        int s = next_sym[depth];
        if (s >= n) {
            next_sym[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        next_sym[depth] = s + 1;
        if (++nodes > max_nodes)
            throw budget_error("row enumeration exceeded the node budget");
        if (depth > 0 && !M(r[static_cast<std::size_t>(depth) - 1], s)) continue;
        r[static_cast<std::size_t>(depth)] = s;
        ++depth;
        next_sym[depth] = 0;
    }
    return out;
}

// column-graph successors: row j may sit directly above row i
std::vector<std::vector<int>> column_graph(const Mat& V, const std::vector<std::vector<int>>& rows,
                                           long long max_nodes, long long& nodes) {
    const int R = static_cast<int>(rows.size());
    const int m = R ? static_cast<int>(rows[0].size()) : 0;
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(R));
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < R; ++j) {
            nodes += m;
            if (nodes > max_nodes)
                throw budget_error("column graph construction exceeded the node budget");
            bool ok = true;
            for (int x = 0; x < m && ok; ++x)
                ok = V(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)],
                       rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)]) != 0;
            if (ok) succ[static_cast<std::size_t>(i)].push_back(j);
        }
    return succ;
}

// shortest cycle through s (BFS, deterministic tie-breaking by vertex order);
// returns the cycle as [s, ..., last] with an edge last -> s
std::optional<std::vector<int>> shortest_cycle_through(const std::vector<std::vector<int>>& succ,
                                                       int s) {
    const int R = static_cast<int>(succ.size());
    std::vector<int> parent(static_cast<std::size_t>(R), -2);
    std::deque<int> queue;
    for (int t : succ[static_cast<std::size_t>(s)]) {
        if (t == s) return std::vector<int>{s}; // self-loop
        if (parent[static_cast<std::size_t>(t)] == -2) {
            parent[static_cast<std::size_t>(t)] = s;
            queue.push_back(t);
        }
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int t : succ[static_cast<std::size_t>(u)]) {
            if (t == s) {
                std::vector<int> cyc;
                for (int x = u; x != s; x = parent[static_cast<std::size_t>(x)]) cyc.push_back(x);
                cyc.push_back(s);
                std::reverse(cyc.begin(), cyc.end());
                return cyc;
            }
            if (parent[static_cast<std::size_t>(t)] == -2) {
                parent[static_cast<std::size_t>(t)] = u;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

TorusConfig torus_from_row_cycle(const std::vector<std::vector<int>>& rows,
                                 const std::vector<int>& cycle, int m) {
    const int L = static_cast<int>(cycle.size());
    TorusConfig t(Coords{m, L}, std::vector<int>(static_cast<std::size_t>(m) * L, 0));
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < m; ++x)
            t.cells[t.cell_index({x, y})] =
                rows[static_cast<std::size_t>(cycle[static_cast<std::size_t>(y)])]
                    [static_cast<std::size_t>(x)];
    return t;
}

int min_cyclic_period(const std::vector<int>& r) {
    const int L = static_cast<int>(r.size());
    for (int p = 1; p < L; ++p) {
        if (L % p) continue;
        bool ok = true;
        for (int i = 0; i + p < L && ok; ++i)
            ok = r[static_cast<std::size_t>(i)] == r[static_cast<std::size_t>(i + p)];
        if (ok) return p;
    }
    return L;
}

} // namespace

PeriodicExistence horizontal_periodic_exists(const MultiGraph& g, int m,
                                             const SearchBudget& budget) {
    g.validate();
    if (g.dimension() != 2) throw spec_error("periodicity tests require exactly two axes");
    if (m < 1) throw spec_error("period must be positive");
    PeriodicExistence out;
    long long nodes = 0;
    auto rows = closed_rows(g.axes[0], m, budget.max_nodes, nodes);
    if (rows.empty()) return out;
    auto succ = column_graph(g.axes[1], rows, budget.max_nodes, nodes);
    for (int s = 0; s < static_cast<int>(rows.size()); ++s) {
        auto cycle = shortest_cycle_through(succ, s);
        if (!cycle) continue;
        TorusConfig t = torus_from_row_cycle(rows, *cycle, m);
        if (auto seam = find_invalid_seam(g, t))
            throw construction_error("periodic strip witness failed validation: " + *seam);
        out.exists = true;
        out.witness = std::move(t);
        return out;
    }
    return out;
}

PeriodicExistence vertical_periodic_exists(const MultiGraph& g, int n, const SearchBudget& budget) {
    auto res = horizontal_periodic_exists(swap_axes(g), n, budget);
    if (!res.witness) return res;
    // transpose the witness back into the original orientation
    const TorusConfig& w = *res.witness;
    TorusConfig t(Coords{w.periods[1], w.periods[0]},
                  std::vector<int>(w.cells.size(), 0));
    for_each_coords(t.periods, [&](const Coords& v) {
        t.cells[t.cell_index(v)] = w.cell({v[1], v[0]});
    });
    if (auto seam = find_invalid_seam(g, t))
        throw construction_error("transposed periodic witness failed validation: " + *seam);
    res.witness = std::move(t);
    return res;
}

TorusConfig cut_repeated_row(const MultiGraph& g, const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw construction_error("cannot cut an empty walk");
    const std::size_t m = rows[0].size();
    if (m == 0) throw construction_error("rows must be non-empty");
    for (const auto& r : rows)
        if (r.size() != m) throw construction_error("rows have mixed widths");

    int lo = -1, hi = -1;
    for (std::size_t v = 1; v < rows.size() && lo < 0; ++v)
        for (std::size_t u = 0; u < v; ++u)
            if (rows[u] == rows[v]) {
                lo = static_cast<int>(u);
                hi = static_cast<int>(v);
                break;
            }
    if (lo < 0) throw construction_error("walk contains no repeated row to cut at");

    const int L = hi - lo;
    TorusConfig t(Coords{static_cast<int>(m), L},
                  std::vector<int>(m * static_cast<std::size_t>(L), 0));
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < static_cast<int>(m); ++x)
            t.cells[t.cell_index({x, y})] =
                rows[static_cast<std::size_t>(lo + y)][static_cast<std::size_t>(x)];
    if (auto seam = find_invalid_seam(g, t))
        throw construction_error("cut walk is not a valid torus: " + *seam);
    return t;
}

TorusConfig diagonal_arrangement(const MultiGraph& g, const std::vector<RectBlock>& blocks) {
    if (blocks.empty()) throw construction_error("diagonal arrangement needs at least one block");
    if (blocks[0].dimension() != 2)
        throw construction_error("diagonal arrangement is two-dimensional");
    const Coords ext = blocks[0].extents;
    for (const auto& b : blocks)
        if (b.extents != ext) throw construction_error("blocks have mixed extents");
    const int k1 = static_cast<int>(blocks.size());
    const int m = ext[0], n = ext[1];

    TorusConfig t(Coords{k1 * m, k1 * n},
                  std::vector<int>(static_cast<std::size_t>(k1) * m * k1 * n, 0));
    for_each_coords(t.periods, [&](const Coords& v) {
        const int i = v[0] / m, j = v[1] / n;
        const int idx = ((i - j) % k1 + k1) % k1; // = (k - j + i + 1) mod (k+1)
        t.cells[t.cell_index(v)] = blocks[static_cast<std::size_t>(idx)].cell({v[0] % m, v[1] % n});
    });
    if (auto seam = find_invalid_seam(g, t))
        throw construction_error("diagonal arrangement has an invalid seam: " + *seam);
    return t;
}

std::vector<RectBlock> extract_block_run(const TorusConfig& torus, int m, int n) {
    if (torus.dimension() != 2) throw spec_error("block runs are two-dimensional");
    if (m < 1 || n < 1) throw spec_error("block extents must be positive");
    auto read = [&](int tpos) {
        RectBlock b(Coords{m, n}, std::vector<int>(static_cast<std::size_t>(m) * n, 0));
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < m; ++x) b.cell({x, y}) = torus.cell({tpos * m + x, y});
        return b;
    };
    RectBlock b0 = read(0);
    std::vector<RectBlock> run{b0};
    for (int tpos = 1; tpos <= torus.periods[0]; ++tpos) {
        RectBlock bt = read(tpos);
        if (bt == b0) return run;
        run.push_back(std::move(bt));
    }
    throw construction_error("block sequence does not recur within one horizontal period");
}

TorusConfig arbitrary_period_construct(const MultiGraph& g, int m, const SearchBudget& budget) {
    g.validate();
    if (g.dimension() != 2) throw spec_error("the construction requires exactly two axes");
    if (m < 1) throw spec_error("target period must be positive");

    long long nodes = 0;
    const int slack = 4;
    for (int width = m; width <= m + slack; ++width) {
        std::vector<std::vector<int>> rows;
        std::vector<std::vector<int>> succ;
        try {
            rows = closed_rows(g.axes[0], width, budget.max_nodes, nodes);
            if (rows.empty()) continue;
            if (static_cast<long long>(rows.size()) > 4096) break;
            succ = column_graph(g.axes[1], rows, budget.max_nodes, nodes);
        } catch (const budget_error&) {
            break;
        }
        // prefer rows whose minimal cyclic period already reaches m: any torus
        // through such a row has minimal horizontal period >= m
        for (int s = 0; s < static_cast<int>(rows.size()); ++s) {
            if (min_cyclic_period(rows[static_cast<std::size_t>(s)]) < m) continue;
            auto cycle = shortest_cycle_through(succ, s);
            if (!cycle) continue;
            TorusConfig t = torus_from_row_cycle(rows, *cycle, width);
            if (auto seam = find_invalid_seam(g, t))
                throw construction_error("constructed torus failed validation: " + *seam);
            return t;
        }
    }
    // fall back to any cycle at the requested width: the torus still carries
    // the declared horizontal period m
    auto any = horizontal_periodic_exists(g, m, budget);
    if (any.exists) return *any.witness;
    throw budget_error("no fully periodic configuration found within the construction budget");
}

OrbitEncoding permutation_generators_from_orbit(const std::vector<TorusConfig>& orbit,
                                                const Alphabet& base) {
    if (orbit.empty()) throw spec_error("orbit must be non-empty");
    const int d = orbit[0].dimension();
    if (d < 1) throw spec_error("orbit members must have positive dimension");
    for (const auto& t : orbit) {
        if (t.dimension() != d) throw spec_error("orbit members have mixed dimensions");
        for (int s : t.cells)
            if (s < 0 || s >= base.size())
                throw spec_error("orbit uses symbols outside the alphabet (incompatible alphabets)");
    }

    Coords common(static_cast<std::size_t>(d), 1);
    for (const auto& t : orbit)
        for (int i = 0; i < d; ++i) common[i] = std::lcm(common[i], t.periods[i]);
    long long n_cells = 1;
    for (int p : common) {
        n_cells *= p;
        if (n_cells > 4096) throw budget_error("least common periods of the orbit are too large");
    }

    // unroll every member to the common periods and close under translation
    std::set<TorusConfig> closed;
    for (const auto& t : orbit) {
        TorusConfig u(common, std::vector<int>(static_cast<std::size_t>(n_cells), 0));
        for_each_coords(common, [&](const Coords& v) { u.cells[u.cell_index(v)] = t.cell(v); });
        for_each_coords(common, [&](const Coords& a) { closed.insert(translate(u, a)); });
    }

    auto window_at = [&](const TorusConfig& c, const Coords& v) {
        RectBlock b(common, std::vector<int>(static_cast<std::size_t>(n_cells), 0));
        for_each_coords(common, [&](const Coords& u) {
            Coords p(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) p[i] = v[i] + u[i];
            b.cell(u) = c.cell(p);
        });
        return b;
    };

    std::map<std::vector<int>, int> win_id;
    for (const auto& c : closed)
        for_each_coords(common, [&](const Coords& v) { win_id.emplace(window_at(c, v).cells, -1); });
    OrbitEncoding out;
    out.window_extents = common;
    int next_id = 0;
    for (auto& [cells, id] : win_id) {
        id = next_id++;
        out.windows.emplace_back(common, cells);
    }

    const int W = next_id;
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(d),
                                       std::vector<int>(static_cast<std::size_t>(W), -1));
    for (const auto& c : closed)
        for_each_coords(common, [&](const Coords& v) {
            int w = win_id.at(window_at(c, v).cells);
            for (int a = 0; a < d; ++a) {
                Coords vv = v;
                ++vv[a];
                int w2 = win_id.at(window_at(c, vv).cells);
                int& slot = succ[static_cast<std::size_t>(a)][static_cast<std::size_t>(w)];
                if (slot == -1)
                    slot = w2;
                else if (slot != w2)
                    throw construction_error(
                        "window successor is not well-defined; the input is not a union of full "
                        "periodic orbits");
            }
        });

    out.graph.axes.assign(static_cast<std::size_t>(d), Mat(W));
    for (int a = 0; a < d; ++a) {
        std::vector<int> indeg(static_cast<std::size_t>(W), 0);
        for (int w = 0; w < W; ++w) {
            int t = succ[static_cast<std::size_t>(a)][static_cast<std::size_t>(w)];
            out.graph.axes[static_cast<std::size_t>(a)](w, t) = 1;
            ++indeg[static_cast<std::size_t>(t)];
        }
        for (int w = 0; w < W; ++w)
            if (indeg[static_cast<std::size_t>(w)] != 1)
                throw construction_error("window successor relation is not a permutation");
    }

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(W));
    for (const auto& w : out.windows) labels.push_back(block_label(w, base));
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (static_cast<int>(uniq.size()) != W)
        for (int i = 0; i < W; ++i) labels[static_cast<std::size_t>(i)] += "#" + std::to_string(i);
    out.graph.vertices = Alphabet(std::move(labels));
    return out;
}

OracleVerdict propagate_permutation(const MultiGraph& g, int seed, const SearchBudget& budget) {
    g.validate();
    if (g.dimension() != 2) throw spec_error("propagation requires exactly two axes");
    if (seed < 0 || seed >= g.size()) throw spec_error("seed symbol out of range");

    auto perm_of = [&](const Mat& M, const char* which) {
        std::vector<int> f(static_cast<std::size_t>(M.n), -1);
        std::vector<int> indeg(static_cast<std::size_t>(M.n), 0);
        for (int i = 0; i < M.n; ++i)
            for (int j = 0; j < M.n; ++j)
                if (M(i, j)) {
                    if (f[static_cast<std::size_t>(i)] != -1)
                        throw spec_error(std::string(which) + " matrix is not a permutation");
                    f[static_cast<std::size_t>(i)] = j;
                    ++indeg[static_cast<std::size_t>(j)];
                }
        for (int i = 0; i < M.n; ++i)
            if (f[static_cast<std::size_t>(i)] == -1 || indeg[static_cast<std::size_t>(i)] != 1)
                throw spec_error(std::string(which) + " matrix is not a permutation");
        return f;
    };
    auto h = perm_of(g.axes[0], "horizontal");
    auto v = perm_of(g.axes[1], "vertical");

    // closure of the seed under both permutations
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    std::vector<int> stack{seed}, members;
    in[static_cast<std::size_t>(seed)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        members.push_back(u);
        for (int w : {h[static_cast<std::size_t>(u)], v[static_cast<std::size_t>(u)]})
            if (!in[static_cast<std::size_t>(w)]) {
                in[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    std::sort(members.begin(), members.end());

    OracleVerdict out;
    for (int s : members) {
        int rl = v[static_cast<std::size_t>(h[static_cast<std::size_t>(s)])];
        int lr = h[static_cast<std::size_t>(v[static_cast<std::size_t>(s)])];
        if (rl != lr) {
            out.status = OracleStatus::EmptyCertificate;
            out.note = "propagation from seed '" + g.vertices.name(seed) + "' contradicts at '" +
                       g.vertices.name(s) + "': right-then-up gives '" + g.vertices.name(rl) +
                       "' but up-then-right gives '" + g.vertices.name(lr) +
                       "'; no configuration contains the seed";
            return out;
        }
    }

    auto cycle_lcm = [&](const std::vector<int>& f) {
        long long L = 1;
        std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
        for (int s : members) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            int len = 0, x = s;
            do {
                seen[static_cast<std::size_t>(x)] = 1;
                x = f[static_cast<std::size_t>(x)];
                ++len;
            } while (x != s);
            L = std::lcm(L, static_cast<long long>(len));
        }
        return L;
    };
    const long long p = cycle_lcm(h), q = cycle_lcm(v);
    if (p * q > std::max(budget.max_cells, 4096LL))
        throw budget_error("propagation torus exceeds the cell budget");

    TorusConfig t(Coords{static_cast<int>(p), static_cast<int>(q)},
                  std::vector<int>(static_cast<std::size_t>(p * q), 0));
    int x0 = seed;
    for (int i = 0; i < p; ++i) {
        int y0 = x0;
        for (int j = 0; j < q; ++j) {
            t.cells[t.cell_index({i, j})] = y0;
            y0 = v[static_cast<std::size_t>(y0)];
        }
        x0 = h[static_cast<std::size_t>(x0)];
    }
    if (auto seam = find_invalid_seam(g, t))
        throw construction_error("propagation witness failed validation: " + *seam);
    out.status = OracleStatus::NonemptyWitness;
    out.witness = std::move(t);
    out.note = "deterministic propagation from seed '" + g.vertices.name(seed) + "'";
    return out;
}

} // namespace shiftlab
