#pragma once

#include <cstdlib>
#include <filesystem>

#ifndef LITSYNTH_DEFAULT_DATA_DIR
#define LITSYNTH_DEFAULT_DATA_DIR "data"
#endif

namespace litsynth {

/// $LITSYNTH_DATA_DIR when set, otherwise the data directory of the source tree.
inline std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("LITSYNTH_DATA_DIR"); env && *env) return env;
    return LITSYNTH_DEFAULT_DATA_DIR;
}

}  // namespace litsynth
