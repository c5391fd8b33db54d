#include "sstlab/budget.hh"

#include <cstdlib>
#include <string>

#include "sstlab/error.hh"

namespace sstlab {

Budget::Budget(std::optional<std::chrono::milliseconds> time, std::uint64_t max_steps) : max_steps_(max_steps) {
    if (time) { deadline_ = std::chrono::steady_clock::now() + *time; }
}

Budget Budget::from_env() {
    const char* raw = std::getenv("SSTLAB_BUDGET_MS");
    if (raw == nullptr || *raw == '\0') { return Budget{}; }
    char* end = nullptr;
    const long long ms = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0' || ms < 0) { return Budget{}; }
    return Budget{std::chrono::milliseconds(ms)};
}

bool Budget::exhausted() const {
    if (steps_ > max_steps_) { return true; }
    return deadline_ && std::chrono::steady_clock::now() > *deadline_;
}

void Budget::charge(std::uint64_t steps) {
    steps_ += steps;
    // The clock is only consulted every 1024 steps.
    if (steps_ > max_steps_ || (deadline_ && (steps_ & 1023U) < steps && exhausted())) {
        fail(ErrorKind::Budget, "budget exhausted after " + std::to_string(steps_) + " steps");
    }
}

} // namespace sstlab
