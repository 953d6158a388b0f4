#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eea/schedule.hpp"

namespace eea {

inline constexpr std::array<const char*, 5> window_block_names = {"r", "swap", "t", "lt_update",
                                                                   "lrp_update"};

struct WindowViolation {
    uint64_t p = 0, x = 0;
    int T = 0, block = 0, lo = 0, hi = 0, k = 0, K = 0;
};

struct WindowAudit {
    uint64_t inputs = 0;
    std::array<uint64_t, 5> violations{};
    std::vector<WindowViolation> examples;  // first few per block

    uint64_t total() const;
};

// Runs the step model on every prime 5 <= p <= p_max and every x, for the
// sound schedule length, and records operand positions outside the windows
// of `rule`.
WindowAudit audit_windows(uint64_t p_max, WindowRule rule);

std::string describe(const WindowViolation& v);

}  // namespace eea
