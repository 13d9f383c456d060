#pragma once

#include "cake/piece.hpp"
#include "cake/valuation.hpp"

#include <map>

namespace cake {

// `cutter` halves the piece by its own measure and `chooser` takes the half it
// prefers (the left one on a tie).
std::map<int, Piece> divide_and_choose(const Piece& cake, int cutter, int chooser, Oracle& oracle);

// Envy-free division among three agents: `cutter` makes thirds, `trimmer`
// levels its favourite third down to its runner-up, `chooser` picks first, and
// the trimmings are split in a second round by whichever of the two others
// did not take the trimmed piece.
std::map<int, Piece> selfridge_conway(const Piece& cake, int cutter, int trimmer, int chooser, Oracle& oracle);

}  // namespace cake
