#pragma once

#include <cstdint>

namespace targetum {

using ItemId = std::int32_t;  // non-negative item identifier
using Tid = std::int32_t;     // transaction id, 1-based in input order
using Money = std::int64_t;   // exact integer money units; no floating point

}  // namespace targetum
