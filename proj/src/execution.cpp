#include "purepair/execution.hpp"

#include <cstdlib>
#include <algorithm>
#include <string>

#include <omp.h>

namespace purepair
{
    auto set_thread_count(int threads) -> void
    {
        if (threads >= 1)
            omp_set_num_threads(threads);
    }

    auto thread_count() -> int
    {
        return omp_get_max_threads();
    }

    auto thread_count_from_env() -> int
    {
        const char * s = std::getenv("PUREPAIR_THREADS");
        if (! s)
            return 0;
        try {
            return std::max(0, std::stoi(s));
        }
        catch (const std::exception &) {
            return 0;
        }
    }
}
