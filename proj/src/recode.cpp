#include "shiftlab/recode.hpp"

#include <algorithm>

namespace shiftlab {

bool overlap_progressive(const RectBlock& b, const RectBlock& c, int axis) {
    if (b.extents != c.extents)
        throw spec_error("progressive overlap requires equal extents");
    if (axis < 0 || axis >= b.dimension())
        throw spec_error("overlap axis out of range");
    bool ok = true;
    for_each_coords(b.extents, [&](const Coords& v) {
        if (!ok || v[axis] < 1) return;
        Coords w = v;
        --w[axis];
        if (b.cell(v) != c.cell(w)) ok = false;
    });
    return ok;
}

ShiftSpec uniformize_forbidden(const ShiftSpec& spec, const Coords& target,
                               const SearchBudget& budget) {
    spec.validate();
    if (static_cast<int>(target.size()) != spec.dimension)
        throw spec_error("target extents dimension does not match the spec");
    for (const auto& p : spec.forbidden) {
        Coords bbox = p.bounding_extents();
        for (int i = 0; i < spec.dimension; ++i)
            if (bbox[i] > target[i])
                throw spec_error("a forbidden pattern does not fit inside the target extents");
    }
    // a target-extent block contains a forbidden occurrence iff it is not
    // locally admissible, so the uniformized set is the complement of the
    // admissible enumeration
    std::vector<RectBlock> admissible = enumerate_admissible_blocks(spec, target, budget);
    std::size_t next = 0;
    ShiftSpec out;
    out.dimension = spec.dimension;
    out.alphabet = spec.alphabet;
    long long total = 1;
    for (int e : target) total *= e;
    const int n_sym = spec.alphabet.size();
    long long count = 1;
    for (long long i = 0; i < total; ++i) {
        count *= n_sym;
        if (count > budget.max_nodes)
            throw budget_error("uniformization exceeds the node budget");
    }
    // walk all blocks in lexicographic order on the cell array (first cell
    // most significant, matching enumerate_admissible_blocks) and keep the gaps
    std::vector<int> cells(static_cast<std::size_t>(total), 0);
    for (;;) {
        RectBlock blk(target, cells);
        if (next < admissible.size() && admissible[next] == blk)
            ++next;
        else
            out.forbidden.push_back(blk.as_pattern());
        std::size_t i = cells.size();
        while (i > 0) {
            --i;
            if (++cells[i] < n_sym) break;
            cells[i] = 0;
            if (i == 0) { i = cells.size(); break; }
        }
        if (i == cells.size()) break;
    }
    return out;
}

std::string block_label(const RectBlock& block, const Alphabet& alphabet) {
    std::string out;
    if (block.dimension() == 2) {
        for (int y = block.extents[1] - 1; y >= 0; --y) {
            if (!out.empty()) out += '/';
            for (int x = 0; x < block.extents[0]; ++x) {
                if (x) out += '.';
                out += alphabet.name(block.cell({x, y}));
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < block.cells.size(); ++i) {
        if (i) out += '.';
        out += alphabet.name(block.cells[i]);
    }
    return out;
}

std::pair<ShiftSpec, BlockAlphabetCoding> higher_block_spec(const ShiftSpec& spec,
                                                            const Coords& window,
                                                            const SearchBudget& budget) {
    spec.validate();
    if (static_cast<int>(window.size()) != spec.dimension)
        throw spec_error("window dimension does not match the spec");
    for (const auto& p : spec.forbidden) {
        Coords bbox = p.bounding_extents();
        for (int i = 0; i < spec.dimension; ++i)
            if (bbox[i] > window[i])
                throw spec_error("window is smaller than a forbidden pattern");
    }

    BlockAlphabetCoding coding;
    coding.window = window;
    coding.base = spec;
    coding.blocks = enumerate_admissible_blocks(spec, window, budget);
    std::vector<std::string> labels;
    labels.reserve(coding.blocks.size());
    for (int i = 0; i < static_cast<int>(coding.blocks.size()); ++i) {
        coding.ordinal_of.emplace(coding.blocks[i].cells, i);
        labels.push_back(block_label(coding.blocks[i], spec.alphabet));
    }
    coding.block_alphabet = Alphabet(std::move(labels));

    ShiftSpec out;
    out.dimension = spec.dimension;
    out.alphabet = coding.block_alphabet;
    if (coding.blocks.empty())
        throw spec_error("no admissible window blocks: the recoded alphabet would be empty");

    const int d = spec.dimension;
    const int n = static_cast<int>(coding.blocks.size());
    for (int axis = 0; axis < d; ++axis) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                bool allowed = overlap_progressive(coding.blocks[i], coding.blocks[j], axis);
                if (allowed) {
                    // guard against forbidden occurrences inside the union of
                    // the two windows (cannot fire once both blocks are
                    // admissible and the window dominates every forbidden
                    // pattern, but the check keeps the construction honest)
                    Coords uext = window;
                    ++uext[axis];
                    long long ucount = 1;
                    for (int e : uext) ucount *= e;
                    RectBlock u(uext, std::vector<int>(static_cast<std::size_t>(ucount), 0));
                    for_each_coords(uext, [&](const Coords& v) {
                        if (v[axis] < window[axis]) {
                            u.cell(v) = coding.blocks[i].cell(v);
                        } else {
                            Coords w = v;
                            --w[axis];
                            u.cell(v) = coding.blocks[j].cell(w);
                        }
                    });
                    allowed = is_locally_admissible(u, spec);
                }
                if (!allowed)
                    out.forbidden.push_back(GeneralPattern::domino(d, axis, i, j));
            }
        }
    }
    return {out, coding};
}

TorusConfig beta_apply(const TorusConfig& config, const BlockAlphabetCoding& coding) {
    const int d = static_cast<int>(coding.window.size());
    if (config.dimension() != d)
        throw spec_error("torus dimension does not match the coding window");
    for (int i = 0; i < d; ++i)
        if (config.periods[i] < coding.window[i])
            throw spec_error("torus periods smaller than the coding window are not recoded");
    if (!is_torus_admissible(config, coding.base))
        throw consistency_error("torus is not admissible for the base spec");

    TorusConfig out;
    out.periods = config.periods;
    out.cells.assign(config.cells.size(), 0);
    long long wcount = 1;
    for (int e : coding.window) wcount *= e;
    bool bad = false;
    for_each_coords(config.periods, [&](const Coords& v) {
        if (bad) return;
        std::vector<int> wcells(static_cast<std::size_t>(wcount));
        RectBlock w(coding.window, std::move(wcells));
        for_each_coords(coding.window, [&](const Coords& u) {
            Coords p(d);
            for (int i = 0; i < d; ++i) p[i] = v[i] + u[i];
            w.cell(u) = config.cell(p);
        });
        auto it = coding.ordinal_of.find(w.cells);
        if (it == coding.ordinal_of.end()) { bad = true; return; }
        out.cells[out.cell_index(v)] = it->second;
    });
    if (bad)
        throw consistency_error("a window of the torus is not an admissible block");
    return out;
}

TorusConfig beta_inverse(const TorusConfig& config, const BlockAlphabetCoding& coding) {
    const int d = static_cast<int>(coding.window.size());
    if (config.dimension() != d)
        throw spec_error("torus dimension does not match the coding window");
    const int n = static_cast<int>(coding.blocks.size());
    for (int s : config.cells)
        if (s < 0 || s >= n)
            throw spec_error("torus uses a symbol outside the block alphabet");

    bool consistent = true;
    for_each_coords(config.periods, [&](const Coords& v) {
        if (!consistent) return;
        for (int axis = 0; axis < d && consistent; ++axis) {
            Coords w = v;
            ++w[axis];
            const RectBlock& b = coding.blocks[config.cell(v)];
            const RectBlock& c = coding.blocks[config.cell(w)];
            if (!overlap_progressive(b, c, axis)) consistent = false;
        }
    });
    if (!consistent)
        throw consistency_error("adjacent block symbols do not overlap progressively");

    TorusConfig out;
    out.periods = config.periods;
    out.cells.assign(config.cells.size(), 0);
    Coords origin(d, 0);
    for_each_coords(config.periods, [&](const Coords& v) {
        out.cells[out.cell_index(v)] = coding.blocks[config.cell(v)].cell(origin);
    });
    return out;
}

} // namespace shiftlab
