#pragma once

#include "shiftree/shift.hpp"

namespace shiftree {

/// Pulls a configuration on G back along the quotient f: F_M -> G:
/// result(w) = sigma(f(w)) for every reduced word w of F_M.
///
/// The result is a configuration over the free group F_M with the same
/// alphabet. For a free model this is the identity map on configurations.
ConfigOracle induced_config(const GroupPtr& model, const ConfigOracle& sigma);

} // namespace shiftree
