#pragma once

// Query-model protocols: every mechanism talks to the agents only through
// eval and cut, and returns the allocation together with the transcript.
//
// Moving-knife procedures (Austin, Stromquist, Brams-Taylor) have no finite
// query formulation and are not provided.

#include "cake/oracle.hpp"

namespace cake {

/// Agent 0 halves the cake with cut(0, 1/2); agent 1 takes the half it values
/// strictly more, otherwise the right half. Requires exactly two oracles.
MechanismResult cut_and_choose(OracleSet oracles);

/// Single ascending pass per round over the remaining agents on [s, 1]: an
/// agent valuing the candidate above 1/n trims it to exactly 1/n; the last
/// trimmer takes it. The final agent takes whatever is left. n >= 2.
///
/// The trimming agent issues the cut (the textbook description), and a trim
/// can only shrink the candidate.
MechanismResult last_diminisher(OracleSet oracles);

/// Selfridge-Conway for exactly three agents. Portions may be non-contiguous.
MechanismResult selfridge(OracleSet oracles);

/// Recursive halving. In a group of k agents on [s, t] each agent marks the
/// point where its value of [s, m] is floor(k/2)/k of its value of [s, t];
/// the floor(k/2) smallest marks (ties by agent index) go left of the
/// floor(k/2)-th mark, the rest go right. n >= 1.
MechanismResult even_paz(OracleSet oracles);

}  // namespace cake
