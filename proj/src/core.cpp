#include "shiftlab/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> syms) : symbols(std::move(syms)) {
    for (int i = 0; i < static_cast<int>(symbols.size()); ++i) {
        if (symbols[i].empty())
            throw spec_error("alphabet symbol must be a non-empty string");
        auto [it, fresh] = index.emplace(symbols[i], i);
        if (!fresh)
            throw spec_error("duplicate alphabet symbol '" + symbols[i] + "'");
    }
}

std::optional<int> Alphabet::find(const std::string& s) const {
    auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

const std::string& Alphabet::name(int ordinal) const {
    if (ordinal < 0 || ordinal >= size())
        throw spec_error("symbol ordinal " + std::to_string(ordinal) + " out of range");
    return symbols[ordinal];
}

GeneralPattern::GeneralPattern(std::vector<Coords> support_, std::vector<int> cells_) {
    if (support_.size() != cells_.size())
        throw spec_error("pattern support/cell length mismatch");
    if (support_.empty())
        throw spec_error("pattern must have non-empty support");
    const std::size_t d = support_[0].size();
    if (d == 0)
        throw spec_error("pattern dimension must be positive");
    for (const auto& v : support_)
        if (v.size() != d)
            throw spec_error("pattern support has mixed dimensions");

    Coords mins = support_[0];
    for (const auto& v : support_)
        for (std::size_t i = 0; i < d; ++i)
            mins[i] = std::min(mins[i], v[i]);

    std::map<Coords, int> ordered;
    for (std::size_t k = 0; k < support_.size(); ++k) {
        Coords v = support_[k];
        for (std::size_t i = 0; i < d; ++i) v[i] -= mins[i];
        auto [it, fresh] = ordered.emplace(std::move(v), cells_[k]);
        if (!fresh)
            throw spec_error("pattern support contains a duplicate cell");
    }
    support.reserve(ordered.size());
    cells.reserve(ordered.size());
    for (auto& [v, sym] : ordered) {
        support.push_back(v);
        cells.push_back(sym);
    }
}

Coords GeneralPattern::bounding_extents() const {
    Coords ext(dimension(), 1);
    for (const auto& v : support)
        for (int i = 0; i < dimension(); ++i)
            ext[i] = std::max(ext[i], v[i] + 1);
    return ext;
}

GeneralPattern GeneralPattern::domino(int dimension, int axis, int from, int to) {
    if (axis < 0 || axis >= dimension)
        throw spec_error("domino axis out of range");
    Coords origin(dimension, 0), step(dimension, 0);
    step[axis] = 1;
    return GeneralPattern({origin, step}, {from, to});
}

std::optional<int> GeneralPattern::domino_axis() const {
    if (support.size() != 2) return std::nullopt;
    // support is normalised and sorted, so support[0] is the origin
    for (int x : support[0])
        if (x != 0) return std::nullopt;
    int axis = -1;
    for (int i = 0; i < dimension(); ++i) {
        if (support[1][i] == 0) continue;
        if (support[1][i] != 1 || axis != -1) return std::nullopt;
        axis = i;
    }
    if (axis == -1) return std::nullopt;
    return axis;
}

static long long checked_product(const Coords& extents) {
    long long n = 1;
    for (int e : extents) {
        if (e <= 0) throw spec_error("extents must be positive");
        n *= e;
        if (n > (1LL << 40)) throw spec_error("extents product overflows the supported range");
    }
    return n;
}

RectBlock::RectBlock(Coords extents_, std::vector<int> cells_)
    : extents(std::move(extents_)), cells(std::move(cells_)) {
    if (static_cast<long long>(cells.size()) != checked_product(extents))
        throw spec_error("block cell array does not match its extents");
}

long long RectBlock::cell_count() const { return static_cast<long long>(cells.size()); }

std::size_t RectBlock::cell_index(const Coords& v) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < extents.size(); ++i) {
        if (v[i] < 0 || v[i] >= extents[i])
            throw spec_error("block coordinate out of range");
        idx += static_cast<std::size_t>(v[i]) * stride;
        stride *= static_cast<std::size_t>(extents[i]);
    }
    return idx;
}

bool RectBlock::operator<(const RectBlock& o) const {
    if (extents != o.extents) return extents < o.extents;
    return cells < o.cells;
}

GeneralPattern RectBlock::as_pattern() const {
    std::vector<Coords> support;
    support.reserve(cells.size());
    std::vector<int> syms;
    syms.reserve(cells.size());
    for_each_coords(extents, [&](const Coords& v) {
        support.push_back(v);
        syms.push_back(cell(v));
    });
    return GeneralPattern(std::move(support), std::move(syms));
}

TorusConfig::TorusConfig(Coords periods_, std::vector<int> cells_)
    : periods(std::move(periods_)), cells(std::move(cells_)) {
    if (static_cast<long long>(cells.size()) != checked_product(periods))
        throw spec_error("torus cell array does not match its periods");
}

long long TorusConfig::cell_count() const { return static_cast<long long>(cells.size()); }

std::size_t TorusConfig::cell_index(const Coords& v) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        idx += static_cast<std::size_t>(v[i]) * stride;
        stride *= static_cast<std::size_t>(periods[i]);
    }
    return idx;
}

int TorusConfig::cell(const Coords& v) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        int r = v[i] % periods[i];
        if (r < 0) r += periods[i];
        idx += static_cast<std::size_t>(r) * stride;
        stride *= static_cast<std::size_t>(periods[i]);
    }
    return cells[idx];
}

bool TorusConfig::operator<(const TorusConfig& o) const {
    if (periods != o.periods) return periods < o.periods;
    return cells < o.cells;
}

std::vector<Coords> PeriodLattice::generators() const {
    std::vector<Coords> out = fundamental;
    const int d = static_cast<int>(axis_periods.size());
    for (int i = 0; i < d; ++i) {
        Coords v(d, 0);
        v[i] = axis_periods[i];
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ShiftSpec::is_one_step() const {
    for (const auto& p : forbidden)
        if (!p.domino_axis().has_value()) return false;
    return true;
}

void ShiftSpec::validate() const {
    if (dimension <= 0)
        throw spec_error("spec dimension must be positive");
    if (alphabet.size() == 0)
        throw spec_error("spec alphabet must be non-empty");
    for (const auto& p : forbidden) {
        if (p.dimension() != dimension)
            throw spec_error("forbidden pattern dimension does not match the spec");
        for (int s : p.cells)
            if (s < 0 || s >= alphabet.size())
                throw spec_error("forbidden pattern uses a symbol outside the alphabet");
    }
}

bool occurs_at(const GeneralPattern& pattern, const RectBlock& block, const Coords& offset) {
    if (pattern.dimension() != block.dimension())
        throw spec_error("pattern/block dimension mismatch");
    const int d = block.dimension();
    for (std::size_t k = 0; k < pattern.support.size(); ++k) {
        Coords w(d);
        for (int i = 0; i < d; ++i) {
            w[i] = pattern.support[k][i] + offset[i];
            if (w[i] < 0 || w[i] >= block.extents[i]) return false;
        }
        if (block.cell(w) != pattern.cells[k]) return false;
    }
    return true;
}

bool is_locally_admissible(const RectBlock& block, const ShiftSpec& spec) {
    spec.validate();
    if (block.dimension() != spec.dimension)
        throw spec_error("block dimension does not match the spec");
    for (int s : block.cells)
        if (s < 0 || s >= spec.alphabet.size())
            throw spec_error("block uses a symbol outside the alphabet");
    const int d = spec.dimension;
    for (const auto& p : spec.forbidden) {
        Coords bbox = p.bounding_extents();
        Coords range(d);
        bool fits = true;
        for (int i = 0; i < d; ++i) {
            range[i] = block.extents[i] - bbox[i] + 1;
            if (range[i] <= 0) { fits = false; break; }
        }
        if (!fits) continue;
        bool found = false;
        for_each_coords(range, [&](const Coords& o) {
            if (!found && occurs_at(p, block, o)) found = true;
        });
        if (found) return false;
    }
    return true;
}

bool is_torus_admissible(const TorusConfig& config, const ShiftSpec& spec) {
    spec.validate();
    if (config.dimension() != spec.dimension)
        throw spec_error("torus dimension does not match the spec");
    for (int s : config.cells)
        if (s < 0 || s >= spec.alphabet.size())
            throw spec_error("torus uses a symbol outside the alphabet");
    const int d = spec.dimension;
    for (const auto& p : spec.forbidden) {
        bool found = false;
        for_each_coords(config.periods, [&](const Coords& o) {
            if (found) return;
            bool match = true;
            Coords w(d);
            for (std::size_t k = 0; k < p.support.size() && match; ++k) {
                for (int i = 0; i < d; ++i) w[i] = p.support[k][i] + o[i];
                match = config.cell(w) == p.cells[k];
            }
            if (match) found = true;
        });
        if (found) return false;
    }
    return true;
}

namespace {

// One concrete placement of a forbidden pattern inside a block, precomputed
// as (cell index, symbol) pairs and grouped by the largest index it covers,
// so the enumeration can reject a prefix as soon as the placement completes.
struct Placement {
    std::vector<std::pair<std::size_t, int>> checks; // sorted by index
};

std::vector<std::vector<Placement>> placements_by_last_cell(const ShiftSpec& spec,
                                                            const Coords& extents,
                                                            std::size_t n_cells) {
    const int d = spec.dimension;
    std::vector<std::vector<Placement>> by_last(n_cells);
    RectBlock probe(extents, std::vector<int>(n_cells, 0));
    for (const auto& p : spec.forbidden) {
        Coords bbox = p.bounding_extents();
        Coords range(d);
        bool fits = true;
        for (int i = 0; i < d; ++i) {
            range[i] = extents[i] - bbox[i] + 1;
            if (range[i] <= 0) { fits = false; break; }
        }
        if (!fits) continue;
        for_each_coords(range, [&](const Coords& o) {
            Placement pl;
            Coords w(d);
            for (std::size_t k = 0; k < p.support.size(); ++k) {
                for (int i = 0; i < d; ++i) w[i] = p.support[k][i] + o[i];
                pl.checks.emplace_back(probe.cell_index(w), p.cells[k]);
            }
            std::sort(pl.checks.begin(), pl.checks.end());
            std::size_t last = pl.checks.back().first;
            by_last[last].push_back(std::move(pl));
        });
    }
    return by_last;
}

} // namespace

std::vector<RectBlock> enumerate_admissible_blocks(const ShiftSpec& spec, const Coords& extents,
                                                   const SearchBudget& budget) {
    spec.validate();
    if (static_cast<int>(extents.size()) != spec.dimension)
        throw spec_error("extents dimension does not match the spec");
    const long long n_cells = checked_product(extents);
    if (n_cells > budget.max_cells)
        throw budget_error("block extents exceed the cell budget (" + std::to_string(n_cells) +
                           " > " + std::to_string(budget.max_cells) + ")");

    const auto by_last = placements_by_last_cell(spec, extents, static_cast<std::size_t>(n_cells));
    const int n_sym = spec.alphabet.size();

    std::vector<RectBlock> out;
    std::vector<int> cells(static_cast<std::size_t>(n_cells), 0);
    long long nodes = 0;

    // depth-first over cell indices, symbols ascending: output is sorted
    // lexicographically on the cell array
    std::size_t depth = 0;
    std::vector<int> next_sym(static_cast<std::size_t>(n_cells) + 1, 0);
    while (true) {
        if (depth == static_cast<std::size_t>(n_cells)) {
            out.emplace_back(extents, cells);
            if (depth == 0) break; // zero-cell degenerate case
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
            throw budget_error("block enumeration exceeded the node budget");
        cells[depth] = s;
        bool ok = true;
        for (const auto& pl : by_last[depth]) {
            bool match = true;
            for (const auto& [idx, sym] : pl.checks)
                if (cells[idx] != sym) { match = false; break; }
            if (match) { ok = false; break; }
        }
        if (ok) {
            ++depth;
            next_sym[depth] = 0;
        }
    }
    return out;
}

TorusConfig translate(const TorusConfig& config, const Coords& a) {
    if (static_cast<int>(a.size()) != config.dimension())
        throw spec_error("translation vector dimension mismatch");
    TorusConfig out = config;
    const int d = config.dimension();
    for_each_coords(config.periods, [&](const Coords& v) {
        Coords w(d);
        for (int i = 0; i < d; ++i) w[i] = v[i] + a[i];
        out.cells[out.cell_index(v)] = config.cell(w);
    });
    return out;
}

PeriodLattice period_lattice(const TorusConfig& config) {
    PeriodLattice lat;
    lat.axis_periods = config.periods;
    for_each_coords(config.periods, [&](const Coords& v) {
        if (translate(config, v) == config) lat.fundamental.push_back(v);
    });
    std::sort(lat.fundamental.begin(), lat.fundamental.end());
    return lat;
}

} // namespace shiftlab
