#pragma once

/*
 * Core types for d-dimensional symbolic dynamics at desk scale: alphabets,
 * finite patterns with arbitrary support, rectangular blocks, fully periodic
 * (torus) configurations and their period lattices.
 *
 * Conventions used throughout the library:
 *   - axis 0 runs to the right, axis 1 runs upward; the origin cell of a
 *     block or torus is its bottom-left corner;
 *   - blocks and tori store cells in a dense array with axis 0 fastest
 *     (bottom row first, left to right);
 *   - symbols are ordinals into an Alphabet; all orderings are lexicographic
 *     on the dense cell array, which makes every enumeration deterministic.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftlab/errors.hpp"

namespace shiftlab {

using Coords = std::vector<int>; // one entry per axis

struct Alphabet {
    std::vector<std::string> symbols;
    std::unordered_map<std::string, int> index;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> syms);

    int size() const { return static_cast<int>(symbols.size()); }
    std::optional<int> find(const std::string& s) const;
    const std::string& name(int ordinal) const;
};

// Finite pattern over arbitrary support, normalised so that every axis
// touches coordinate 0. Support is kept sorted; cells[i] is the symbol at
// support[i].
struct GeneralPattern {
    std::vector<Coords> support;
    std::vector<int> cells;

    GeneralPattern() = default;
    GeneralPattern(std::vector<Coords> support_, std::vector<int> cells_);

    int dimension() const { return support.empty() ? 0 : static_cast<int>(support[0].size()); }
    // extents of the bounding box (support is normalised, so max coord + 1)
    Coords bounding_extents() const;
    bool operator==(const GeneralPattern& o) const { return support == o.support && cells == o.cells; }

    // axis-aligned domino: `from` at the origin, `to` one step along `axis`
    static GeneralPattern domino(int dimension, int axis, int from, int to);
    // if the pattern is a domino, returns its axis; nullopt otherwise
    std::optional<int> domino_axis() const;
};

// Dense rectangular block. Cell layout: index(v) = sum_i v[i] * stride[i]
// with stride[0] = 1 and stride[i] = stride[i-1] * extents[i-1].
struct RectBlock {
    Coords extents;
    std::vector<int> cells;

    RectBlock() = default;
    RectBlock(Coords extents_, std::vector<int> cells_);

    int dimension() const { return static_cast<int>(extents.size()); }
    long long cell_count() const;
    int cell(const Coords& v) const { return cells[cell_index(v)]; }
    int& cell(const Coords& v) { return cells[cell_index(v)]; }
    std::size_t cell_index(const Coords& v) const;
    bool operator==(const RectBlock& o) const { return extents == o.extents && cells == o.cells; }
    bool operator<(const RectBlock& o) const;

    GeneralPattern as_pattern() const;
};

// Fully periodic configuration, stored as one fundamental domain
// [0,p_0) x ... x [0,p_{d-1}) and interpreted with wraparound adjacency.
struct TorusConfig {
    Coords periods;
    std::vector<int> cells;

    TorusConfig() = default;
    TorusConfig(Coords periods_, std::vector<int> cells_);

    int dimension() const { return static_cast<int>(periods.size()); }
    long long cell_count() const;
    // reads with coordinates reduced modulo the periods (negatives allowed)
    int cell(const Coords& v) const;
    std::size_t cell_index(const Coords& v) const; // v already inside the domain
    bool operator==(const TorusConfig& o) const { return periods == o.periods && cells == o.cells; }
    bool operator<(const TorusConfig& o) const;
};

// Period vectors of a torus configuration.
struct PeriodLattice {
    Coords axis_periods;               // the torus periods p_i (p_i * e_i are always periods)
    std::vector<Coords> fundamental;   // all v in the fundamental domain with translate fix, incl. 0

    // fundamental vectors plus the axis vectors p_i * e_i
    std::vector<Coords> generators() const;
};

struct ShiftSpec {
    int dimension = 0;
    Alphabet alphabet;
    std::vector<GeneralPattern> forbidden;

    // true when every forbidden pattern is an axis-aligned domino
    bool is_one_step() const;
    void validate() const; // throws spec_error on malformed content
};

// Search/enumeration budgets shared across the library.
struct SearchBudget {
    long long max_cells = 64;
    long long max_nodes = 1000000;
};

// --- operations ---

// true iff `pattern` placed at `offset` lies inside `block` and matches it
bool occurs_at(const GeneralPattern& pattern, const RectBlock& block, const Coords& offset);

// true iff no forbidden pattern of `spec` occurs anywhere inside `block`
bool is_locally_admissible(const RectBlock& block, const ShiftSpec& spec);

// true iff no forbidden pattern occurs in the infinite periodic extension of
// `config` (equivalently: at any offset in the fundamental domain, reading
// with wraparound)
bool is_torus_admissible(const TorusConfig& config, const ShiftSpec& spec);

// all locally admissible blocks of the given extents, in lexicographic order
// on the dense cell array
std::vector<RectBlock> enumerate_admissible_blocks(const ShiftSpec& spec, const Coords& extents,
                                                   const SearchBudget& budget = {});

// the shifted configuration sigma_a(x), i.e. result(v) = config(v + a)
TorusConfig translate(const TorusConfig& config, const Coords& a);

PeriodLattice period_lattice(const TorusConfig& config);

// iterate the fundamental domain of `extents` in cell-index order;
// f(coords) is called once per cell
template <typename F>
void for_each_coords(const Coords& extents, F&& f) {
    const int d = static_cast<int>(extents.size());
    for (int i = 0; i < d; ++i)
        if (extents[i] <= 0) return;
    Coords v(d, 0);
    for (;;) {
        f(const_cast<const Coords&>(v));
        int axis = 0;
        while (axis < d) {
            if (++v[axis] < extents[axis]) break;
            v[axis] = 0;
            ++axis;
        }
        if (axis == d) return;
    }
}

} // namespace shiftlab
