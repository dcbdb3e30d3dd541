#include "minami/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace minami {

int worker_count() {
    static const int cached = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        long cap = static_cast<long>(hw);
        if (const char* env = std::getenv("MINAMI_LAB_THREADS")) {
            char* end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end != env && parsed >= 1) cap = std::min(cap, parsed);
        }
        return static_cast<int>(cap);
    }();
    return cached;
}

double pairwise_sum(const double* values, std::size_t count) {
    if (count == 0) return 0.0;
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += values[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

}  // namespace minami
