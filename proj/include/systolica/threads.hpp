#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace systolica {

// Worker cap for scans and verification suites: SYSTOLICA_THREADS if set,
// else hardware concurrency.
inline int scan_thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SYSTOLICA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<int>(std::min<unsigned>(static_cast<unsigned>(v), hw));
    }
    return static_cast<int>(hw);
}

}  // namespace systolica
