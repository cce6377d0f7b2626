#pragma once

#include <cstdint>

#include "client/data/series.hpp"

namespace client {

// Small hourly synthetic series for tests and demos: daily and weekly cycles,
// a mild trend and a little noise per variable. The last variable is an exact
// copy of the first, so the pair is perfectly correlated.
MultivariateSeries make_fixture(std::size_t rows = 2000, std::size_t variables = 4, std::uint64_t seed = 7);

}  // namespace client
