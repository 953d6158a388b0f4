#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eea {

struct ProblemInstance {
    uint64_t p = 0;
    uint64_t x = 0;
    int n = 0;

    // Throws std::domain_error unless p is an odd prime and 1 <= x <= p-1.
    ProblemInstance(uint64_t p, uint64_t x);
};

using Bits = std::vector<uint8_t>;

// Work registers are stored with index 0 as the leftmost position.
struct MachineState {
    int n = 0;
    Bits work1, work2;
    int lt = 0, lq = 0, lrp = 0, ls = 0;
    uint8_t phase1 = 0, phase2 = 0, sign = 0, iter = 0, ctrl = 0;

    int width() const { return n + 3; }
    // Physical index of logical work2 position i (work2 is rotated left by ls).
    int w2_phys(int i) const;

    uint64_t t() const;
    uint64_t q_bits() const;
    uint64_t q() const;  // quotient field as printed: q bits scaled by 2^ls
    uint64_t r() const;
    uint64_t t_prime() const;
    uint64_t r_prime() const;

    bool operator==(const MachineState&) const = default;
};

struct StepTrace {
    int T = 0;
    std::string work1, work2;
    uint64_t t = 0, q = 0, r = 0, t_prime = 0, r_prime = 0;
    int lt = 0, lq = 0, lrp = 0, ls = 0;
    int phase1 = 0, phase2 = 0, iter = 0, sign = 0;

    bool operator==(const StepTrace&) const = default;
};

struct EEATrace {
    std::vector<uint64_t> quotients;
    std::vector<int> b;  // floor(log2 q_i)
    int k = 0;           // iteration count, quotients has k-1 entries
    int N = 0;           // 4 * sum(b_i + 1)
};

// 1-based position ranges touched by the blocks of one step.
struct Extent {
    bool active = false;
    int lo = 0, hi = 0;
};

struct StepOperands {
    Extent r, swap, t, lt_update, lrp_update;
};

MachineState init_state(const ProblemInstance& inst);
MachineState step(const MachineState& s, StepOperands* ops = nullptr);
MachineState step_inverse(const MachineState& s);

// Structural checks that the circuit relies on; returns an empty string when
// the state is consistent, else a description of the first violation.
std::string check_state(const MachineState& s);

// Runs `steps` forward steps (default: the fixed schedule), decodes, runs the
// inverse steps and checks that the initial state is restored.
uint64_t run_inversion(const ProblemInstance& inst, int steps = 0);
int active_step_count(const ProblemInstance& inst);
// Same count for any coprime pair 1 <= x < a, a odd (no primality needed).
int active_step_count(uint64_t a, uint64_t x);
EEATrace eea_trace(const ProblemInstance& inst);

StepTrace trace_row(const MachineState& s, int T);
std::vector<StepTrace> classical_trace(const ProblemInstance& inst);
std::string trace_tsv(const std::vector<StepTrace>& rows);

std::string bits_string(const Bits& b);

}  // namespace eea
