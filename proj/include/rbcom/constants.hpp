#pragma once

namespace rbcom {

inline constexpr double speed_of_light = 299792458.0;  // [m/s]

}  // namespace rbcom
