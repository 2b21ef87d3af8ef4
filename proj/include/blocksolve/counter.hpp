#pragma once

#include <atomic>
#include <cstdint>

namespace blocksolve {

// Thread-safe event counter used for matvec and scalar-operation accounting.
// Copies snapshot the current value so instrumented objects stay regular.
class OpCounter {
public:
    OpCounter() = default;
    OpCounter(const OpCounter& other) noexcept : value_(other.get()) {}
    OpCounter& operator=(const OpCounter& other) noexcept {
        value_.store(other.get(), std::memory_order_relaxed);
        return *this;
    }

    void add(std::uint64_t k = 1) const noexcept { value_.fetch_add(k, std::memory_order_relaxed); }
    std::uint64_t get() const noexcept { return value_.load(std::memory_order_relaxed); }
    void reset() const noexcept { value_.store(0, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> value_{0};
};

}  // namespace blocksolve
