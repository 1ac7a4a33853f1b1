#ifndef ZDPP_STRUCTURES_HPP
#define ZDPP_STRUCTURES_HPP

#include <map>
#include <utility>
#include <vector>

#include "zdpp/partitions.hpp"

namespace zdpp {

// ---------------------------------------------------------------------------
// Block/fragment combinatorics.  A structure with n blocks is a partition of
// the positions 1..n into fragments; the earliest position of each fragment
// is its hook block, and every later position carries a horizontal or
// vertical label.  The total order of blocks is the position order.
// ---------------------------------------------------------------------------
enum class BlockKind : char { Hook = 'k', Horizontal = 'h', Vertical = 'v' };

struct Structure {
    // fragment id per position (0-based, fragments numbered by first use)
    std::vector<int> fragment_of;
    std::vector<BlockKind> kind;

    int blocks() const { return static_cast<int>(kind.size()); }
    int fragments() const;
    int vertical_blocks() const;  // v(T)
};

/// A structure together with hook fillings; linear fillings are the
/// cardinalities themselves.
struct FilledStructure {
    Structure structure;
    std::vector<std::pair<int, int>> hook_fill;  // (p', q') per fragment
    std::vector<int> cardinality;                // rho, per position

    /// fragment filling numbers (P_i, Q_i)
    std::vector<std::pair<int, int>> fragment_numbers() const;
    int sign() const;  // sgn T; 0 when P or Q numbers collide
    bool proper() const;
};

/// All structures with n blocks (n <= 8).
std::vector<Structure> enumerate_structures(int n);

/// chi^lambda_rho via Theorem-style summation over filled structures.
/// Includes improper fillings by default (their net contribution cancels);
/// proper_only restricts to proper fillings.
long long structure_character(const Partition& lam, const CycleType& rho,
                              bool proper_only = false);

/// One sweep over all filled structures of cardinality rho, accumulating
/// sum(sgn T) per Frobenius-coordinate class.  Key: (sorted p desc, sorted q desc).
std::map<std::pair<std::vector<int>, std::vector<int>>, long long>
structure_character_table(const CycleType& rho, bool proper_only = false);

}  // namespace zdpp

#endif
