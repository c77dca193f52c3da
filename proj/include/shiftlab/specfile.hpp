#pragma once

/*
 * Plain-text spec files and rendering helpers.
 *
 * Format (one directive per line, '#' starts a comment):
 *   dim D                       dimension, must come first
 *   symbols s1 s2 ...           alphabet, once, before any constraint
 *   forbid h s1 ... sk          horizontal run, left to right
 *   forbid v s1 ... sk          vertical run, bottom to top (dim >= 2)
 *   forbid rect W H             followed by H rows of W symbols, top row first
 *   hmatrix / vmatrix           followed by one 0/1 row per symbol (dim == 2);
 *                               row i column j = 1 allows j right of / above i
 *
 * Matrices and forbid lines may coexist; they must then describe the same
 * one-step shift.
 */

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/graph.hpp"

namespace shiftlab {

struct SpecFile {
    ShiftSpec spec;
    std::optional<MultiGraph> graph; // present when adjacency matrices were given
    std::string source;              // the raw text that was parsed
    std::string digest_hex;          // "fnv1a64:" + 16 hex digits over `source`
};

SpecFile parse_spec_text(const std::string& text);
SpecFile parse_spec_file(const std::string& path);

// canonical spec text that parses back to the same shift; requires every
// forbidden pattern to be a full rectangle (always true for parsed specs)
std::string print_spec(const ShiftSpec& spec);

// rows top to bottom, symbols padded to equal width and space-separated
std::vector<std::string> render_ascii(const TorusConfig& t, const Alphabet& alphabet);
std::vector<std::string> render_ascii(const RectBlock& b, const Alphabet& alphabet);

std::string fnv1a64_hex(const std::string& data);

} // namespace shiftlab
