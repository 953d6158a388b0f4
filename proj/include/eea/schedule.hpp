#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace eea {

// Step-dependent active windows. Index 0..4: r arithmetic, location swap,
// t arithmetic, l_t update, l_r' update. Positions are 1-based.
struct ActiveWindow {
    int T = 0;
    std::array<int, 5> k{}, K{};

    bool empty(int i) const { return k[i] > K[i]; }
};

// Closed form: the golden-ratio formulas with 4*ceil(c n) steps.
// Sound: bounds from the exact minimal growth of the t sequence; the
// golden-ratio bounds fail for quotient runs such as 2,1,2,1,...
enum class WindowRule { closed_form, sound };

struct StepSchedule {
    int n = 0;
    int steps = 0;
    WindowRule rule = WindowRule::sound;
    std::vector<ActiveWindow> windows;  // windows[T - 1]

    bool runs_length_update(int T) const { return T % 4 == 0; }
    const ActiveWindow& at(int T) const { return windows.at(T - 1); }
};

StepSchedule step_schedule(int n, WindowRule rule = WindowRule::sound);

// The closed-form windows; throws std::out_of_range unless 1 <= T <= 4*ceil(c n)
// (any T >= 1 when `beyond_schedule` is set).
ActiveWindow active_windows(int n, int T, bool beyond_schedule = false);

// Minimal-growth data for n-bit moduli, from a Pareto search over quotient
// sequences (first quotient >= 2, each quotient 2^b costing b+1 weight units).
struct GrowthBounds {
    int n = 0;
    int max_weight = 0;        // largest sum of (b_i + 1) over all p < 2^n
    std::vector<int> min_tlen;  // min_tlen[W]: least bit length of t_j after weight W
};

GrowthBounds growth_bounds(int n);

// Sound counterpart of active_windows, valid for 1 <= T <= 4 * max_weight.
ActiveWindow sound_windows(const GrowthBounds& g, int T);

}  // namespace eea
