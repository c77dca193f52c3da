#pragma once

/*
 * Higher-block recoding: replace the alphabet by the admissible window blocks
 * of a base spec and translate the constraints into one-step (domino)
 * constraints, via the progressive-overlap relation. beta_apply/beta_inverse
 * realise the induced conjugacy on torus configurations.
 */

#include <map>
#include <utility>
#include <vector>

#include "shiftlab/core.hpp"

namespace shiftlab {

struct BlockAlphabetCoding {
    Coords window;
    ShiftSpec base;
    std::vector<RectBlock> blocks;          // block symbols, lexicographic on cells
    std::map<std::vector<int>, int> ordinal_of; // dense cell array -> block ordinal
    Alphabet block_alphabet;                // rendered labels, aligned with blocks
};

// true iff blocks B and C of equal extents may sit one step apart along
// `axis`: B with its first slice removed equals C with its last slice removed
bool overlap_progressive(const RectBlock& b, const RectBlock& c, int axis);

// replace every forbidden pattern by the rectangular fillings of `target`
// extents that contain it; the result has uniform forbidden extents and the
// same admissible blocks at all extents >= target
ShiftSpec uniformize_forbidden(const ShiftSpec& spec, const Coords& target,
                               const SearchBudget& budget = {});

// the one-step spec over the admissible `window` blocks plus the coding data;
// requires every forbidden pattern to fit inside the window
std::pair<ShiftSpec, BlockAlphabetCoding> higher_block_spec(const ShiftSpec& spec,
                                                            const Coords& window,
                                                            const SearchBudget& budget = {});

// recode a valid torus of the base spec (periods >= window, componentwise)
TorusConfig beta_apply(const TorusConfig& config, const BlockAlphabetCoding& coding);

// decode a torus over the block alphabet back to base symbols; verifies that
// adjacent block symbols overlap progressively (wraparound included)
TorusConfig beta_inverse(const TorusConfig& config, const BlockAlphabetCoding& coding);

// human-readable label for a block symbol ("top-row/.../bottom-row" for d=2)
std::string block_label(const RectBlock& block, const Alphabet& alphabet);

} // namespace shiftlab
