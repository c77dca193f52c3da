#pragma once

/*
 * Bounded search and constructive procedures over one-step graphs: exhaustive
 * torus search, bounded emptiness certificates, block-count growth, periodic
 * strip machinery (column graphs over closed rows), diagonal arrangements,
 * and deterministic propagation for permutation-generated shifts.
 *
 * Every torus returned by an operation here has been re-checked by
 * validate_torus before being handed back.
 */

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/core.hpp"
#include "shiftlab/graph.hpp"

namespace shiftlab {

enum class OracleStatus { NonemptyWitness, EmptyCertificate, Unknown };

struct OracleVerdict {
    OracleStatus status = OracleStatus::Unknown;
    std::optional<TorusConfig> witness;
    std::optional<int> certificate_n; // side length of the empty-block certificate
    std::string note;
};

struct BlockGrowth {
    std::vector<long long> counts; // counts[k] = admissible (k+1)^d blocks
    bool truncated = false;        // budget ran out before n_max
};

struct PeriodicExistence {
    bool exists = false;
    std::optional<TorusConfig> witness;
};

// the first failing wraparound adjacency, if any, as a human-readable seam
std::optional<std::string> find_invalid_seam(const MultiGraph& g, const TorusConfig& t);
bool validate_torus(const MultiGraph& g, const TorusConfig& t);

// all valid torus configurations with the given periods, lexicographic on the
// cell array; `limit` > 0 stops after that many
std::vector<TorusConfig> torus_search(const MultiGraph& g, const Coords& periods,
                                      const SearchBudget& budget = {}, long long limit = -1);

// torus search for an arbitrary spec (wraparound pattern checks)
std::vector<TorusConfig> torus_search_spec(const ShiftSpec& spec, const Coords& periods,
                                           const SearchBudget& budget = {}, long long limit = -1);

// emptiness certificate (no admissible n^d block for some n <= n_max) or a
// torus witness with periods <= n_max, whichever the graph yields first
OracleVerdict bounded_emptiness(const MultiGraph& g, int n_max = 6, const SearchBudget& budget = {});

// admissible n^d block counts for n = 1..n_max
BlockGrowth block_growth(const MultiGraph& g, int n_max, const SearchBudget& budget = {});

// is there a valid configuration with horizontal period m (equivalently a
// cycle in the column graph over closed m-rows)? witness: the cycle stacked
// into an (m, cycle-length) torus
PeriodicExistence horizontal_periodic_exists(const MultiGraph& g, int m,
                                             const SearchBudget& budget = {});
// the axis-swapped twin; witness periods come out as (cycle-length, n)
PeriodicExistence vertical_periodic_exists(const MultiGraph& g, int n,
                                           const SearchBudget& budget = {});

// cut a vertical walk of rows at its first repeated row, yielding a torus
TorusConfig cut_repeated_row(const MultiGraph& g, const std::vector<std::vector<int>>& rows);

// arrange blocks B_0..B_k of equal extents (m, n) diagonally: block
// B_{(k-j+i+1) mod (k+1)} at block position (i, j), giving a
// ((k+1)m, (k+1)n) torus; every seam is validated
TorusConfig diagonal_arrangement(const MultiGraph& g, const std::vector<RectBlock>& blocks);

// consecutive (m, n) blocks along the bottom strip of a torus, up to (and
// excluding) the first recurrence of the initial block
std::vector<RectBlock> extract_block_run(const TorusConfig& torus, int m, int n);

// a verified torus whose horizontal period is at least m, built from the
// closed-row column graph at widths m, m+1, ...; rows of minimal cyclic
// period >= m are preferred so the torus's minimal horizontal period is
// >= m whenever such a cycle exists within budget. The zero-pattern
// non-emptiness condition guarantees such configurations exist but is not
// required to call this.
TorusConfig arbitrary_period_construct(const MultiGraph& g, int m, const SearchBudget& budget = {});

struct OrbitEncoding {
    MultiGraph graph;               // permutation matrices over the windows
    Coords window_extents;          // least common periods of the orbit
    std::vector<RectBlock> windows; // vertex i <-> windows[i]
};

// encode a finite union of periodic orbits by its window shifts: vertices are
// the distinct least-common-period windows, each axis relation is the
// one-step window successor (always a permutation)
OrbitEncoding permutation_generators_from_orbit(const std::vector<TorusConfig>& orbit,
                                                const Alphabet& base);

// deterministic fill from a single seed symbol; requires both matrices to be
// permutations. Returns a torus witness, or a contradiction report that rules
// out every configuration containing the seed.
OracleVerdict propagate_permutation(const MultiGraph& g, int seed, const SearchBudget& budget = {});

} // namespace shiftlab
