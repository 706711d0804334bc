#pragma once

#include <cstdint>

// Per-thread arithmetic operation counter used by the scaling benchmarks.
// Each unit is one inner-loop step of an evaluation kernel (one term of
// the explicit sum, one recurrence step, one factorial-table entry).
namespace qsixj::ops {

inline thread_local std::uint64_t counter = 0;

inline void add(std::uint64_t n = 1) noexcept { counter += n; }
inline std::uint64_t count() noexcept { return counter; }
inline void reset() noexcept { counter = 0; }

}  // namespace qsixj::ops
