#pragma once

namespace aoi {

/// Library version, "major.minor.patch".
const char* version();

}  // namespace aoi
