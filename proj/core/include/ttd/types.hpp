#pragma once

#include <cstdint>

namespace ttd {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

}  // namespace ttd
