#ifndef SSTLAB_BUDGET_HH
#define SSTLAB_BUDGET_HH

#include <chrono>
#include <cstdint>
#include <optional>

namespace sstlab {

/// Step and wall-clock cap shared by the exhaustive searches.
class Budget {
public:
    Budget() = default;
    explicit Budget(std::optional<std::chrono::milliseconds> time, std::uint64_t max_steps = UINT64_MAX);

    /// Reads SSTLAB_BUDGET_MS; unlimited when unset or unparsable.
    static Budget from_env();
    static Budget unlimited() { return Budget{}; }

    /// Counts one step; throws Error(Budget) once a limit is passed.
    void charge(std::uint64_t steps = 1);
    bool exhausted() const;
    std::uint64_t steps() const { return steps_; }

private:
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::uint64_t max_steps_{UINT64_MAX};
    std::uint64_t steps_{0};
};

} // namespace sstlab

#endif
