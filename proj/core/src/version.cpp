#include "aoi/version.hpp"

namespace aoi {

const char* version() { return AOI_VERSION; }

}  // namespace aoi
