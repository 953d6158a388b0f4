#pragma once

#include <gmpxx.h>

#include <string>

#include "eea/blocks.hpp"
#include "eea/layout.hpp"
#include "eea/model.hpp"
#include "eea/schedule.hpp"

namespace eea {

// Generator for the full inversion circuit of one modulus. Gates are
// produced on demand so large n can be counted without storing them.
class InversionSynth {
   public:
    InversionSynth(const mpz_class& p, WindowRule rule = WindowRule::sound);
    explicit InversionSynth(uint64_t p, WindowRule rule = WindowRule::sound);

    const QubitLayout& layout() const { return layout_; }
    const StepSchedule& schedule() const { return schedule_; }
    int n() const { return layout_.n; }
    const mpz_class& modulus() const { return p_; }

    void emit_preamble(GateSink& out) const;
    void emit_step(GateSink& out, int T) const;
    void emit_step_inverse(GateSink& out, int T) const;
    void emit_finale(GateSink& out) const;  // copy and correction
    // Preamble, forward loop, finale, backward loop, inverse preamble.
    void emit(GateSink& out) const;
    Circuit build() const;
    // Largest scratch-bank occupancy seen so far.
    size_t bank_peak() const { return peak_; }

   private:
    template <class F>
    void run(GateSink& out, F&& body) const;

    mpz_class p_;
    Bits pbits_;
    QubitLayout layout_;
    StepSchedule schedule_;
    mutable size_t peak_ = 0;
};

// Model state held in one simulator lane.
MachineState decode_state(const QubitLayout& L, const Simulator& sim, int lane);
void encode_state(const QubitLayout& L, const MachineState& s, Simulator& sim, int lane);

// Lane-wise input/output helpers.
void set_input(const QubitLayout& L, Simulator& sim, int lane, uint64_t x);
uint64_t read_output(const QubitLayout& L, const Simulator& sim, int lane);
// True iff every wire other than the input field and the output is zero.
bool auxiliaries_clean(const QubitLayout& L, const Simulator& sim, int lane);

std::string manifest_json(const InversionSynth& s);

// Trace rows decoded from the simulated circuit after the preamble and after
// each forward step.
std::vector<StepTrace> circuit_trace(const InversionSynth& s, uint64_t x);

struct VerifyFailure {
    uint64_t x = 0, got = 0, want = 0;
    bool input_kept = false, clean = false;
};

struct VerifyResult {
    uint64_t checked = 0;
    std::vector<VerifyFailure> failures;
};

// Simulates the circuit 64 inputs at a time and checks the output against
// the extended-gcd inverse, the input field and the auxiliaries.
VerifyResult verify_inputs(const InversionSynth& s, const Circuit& c,
                           const std::vector<uint64_t>& xs);

// Largest n-bit prime (probabilistic test; used for counting at large n).
mpz_class largest_prime_below_pow2(int n);

}  // namespace eea
