#pragma once

#include "reebarr/reeb.h"
#include "reebarr/scene.h"

#include <string>

namespace test {

inline std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

inline reebarr::Arrangement disk(double r = 1.0) { return reebarr::Arrangement::initial({{{0, 0}, r}}); }

inline reebarr::Arrangement annulus() { return reebarr::Arrangement::initial({{{0, 0}, 2}, {{0, 0}, 1}}); }

}  // namespace test
