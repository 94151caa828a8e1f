#pragma once

namespace purepair
{
    /**
     * Serial runs are the reference; parallel runs use OpenMP and must give
     * identical results (witnesses are always chosen by canonical order, not
     * by completion order).
     */
    enum class Execution
    {
        serial,
        parallel
    };

    /// Set the OpenMP thread count; values < 1 leave the runtime default.
    auto set_thread_count(int threads) -> void;
    auto thread_count() -> int;

    /// Reads PUREPAIR_THREADS if set (0 when absent or malformed).
    auto thread_count_from_env() -> int;
}
