#pragma once

#include <vector>

#include "swfh/hinv.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

/// Constructor-built complexes exercised by `verify` and the acceptance run.
std::vector<Complex> bundled_corpus();
/// Cochain maps between small corpus members.
std::vector<NamedMap> bundled_maps();

}  // namespace swfh
