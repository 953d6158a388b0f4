#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "eea/circuit.hpp"
#include "eea/layout.hpp"
#include "eea/model.hpp"

namespace eea {

// Stack of clean scratch wires. Callers return wires clean and in LIFO order.
class Bank {
   public:
    explicit Bank(Reg wires);
    Wire take();
    Reg take(int k);
    void give(Wire w);
    void give(const Reg& ws);
    size_t peak() const { return peak_; }
    size_t available() const { return free_.size(); }

   private:
    Reg free_;
    size_t total_ = 0, peak_ = 0;
};

class Emitter {
   public:
    Emitter(GateSink& sink, Bank& bank) : sink_(&sink), bank_(&bank) {}

    void x(Wire t) { sink_->gate(Gate::x(t)); }
    void cx(Control c, Wire t) { sink_->gate(Gate::cx(c, t)); }
    void cx(Wire c, Wire t) { cx(pos(c), t); }
    void ccx(Control a, Control b, Wire t) { sink_->gate(Gate::ccx(a, b, t)); }
    void ccx(Wire a, Wire b, Wire t) { ccx(pos(a), pos(b), t); }
    void swap(Wire a, Wire b) { sink_->gate(Gate::swap(a, b)); }
    void cswap(Control c, Wire a, Wire b) { sink_->gate(Gate::cswap(c, a, b)); }
    void begin(std::string_view label);
    void end() { sink_->marker("end"); }

    Bank& bank() { return *bank_; }
    GateSink& sink() { return *sink_; }

    // Records body into a buffer without emitting it.
    Circuit record(const std::function<void(Emitter&)>& body);
    void emit(const Circuit& c) { c.emit(*sink_); }
    // Emits the inverse of a recorded buffer, mirroring its block markers.
    void emit_reversed(const Circuit& c);
    void inverse(const std::function<void(Emitter&)>& body) { emit_reversed(record(body)); }

   private:
    GateSink* sink_;
    Bank* bank_;
};

// Replays c backwards into out; "begin L ... end" pairs stay well nested.
void emit_reversed(const Circuit& c, GateSink& out);

// ---- arithmetic on little-endian registers, mod 2^width ----

// b += 1 (or b += ctl when a control is given). Scratch carries come from
// the bank; the uncontrolled form uses b0 itself as the first carry.
void increment(Emitter& e, const Reg& b, std::optional<Control> ctl = {});
void decrement(Emitter& e, const Reg& b, std::optional<Control> ctl = {});

// b += k (times ctl); zero bits below the lowest set bit of k cost nothing.
void add_const(Emitter& e, const Reg& b, int64_t k, std::optional<Control> ctl = {});
void add_const(Emitter& e, const Reg& b, const Bits& k, std::optional<Control> ctl = {});

// target ^= carry out of (b + k), leaving b unchanged.
void carry_of_const(Emitter& e, const Reg& b, uint64_t k, Wire target);
void carry_of_const(Emitter& e, const Reg& b, const Bits& k, Wire target);

struct AddOptions {
    bool subtract = false;
    std::optional<Control> gate;       // sum written only when the gate fires
    std::optional<Wire> carry_out;     // XOR of the final carry (borrow)
};

// Cuccaro ripple adder b += a (or b -= a), a restored; equal widths.
void add_reg(Emitter& e, const Reg& a, const Reg& b, const AddOptions& opt = {});

// Controlled cyclic rotation of wires by k places: new[i] = old[i + k]
// (left) for k > 0. Uses len - gcd(len, k) controlled swaps per nonzero k.
void rotate(Emitter& e, const Reg& wires, int k, std::optional<Control> ctl = {});

// ---- standalone building blocks with explicit wire layouts ----

// Cuccaro adder on registers a (wires 0..w-1), b (w..2w-1), carry ancilla
// c0 (2w) and the carry/sign wire z (2w+1): 2w Toffoli, 4w+1 CNOT.
Circuit cuccaro_adder(int width, bool subtract = false);

// Incrementer with carry-out: b (0..w-1), carries (w..2w-1), overflow (2w).
// 2w-2 Toffoli and w+2 CNOT.
Circuit incrementer(int width);

// Constant adder with carry-out, same wire layout as incrementer.
Circuit constant_adder(int width, uint64_t k);

// Controlled rotation: control (0), data (1..width).
Circuit cyclic_shift(int width, int k);

// ---- location-controlled blocks of one step ----

// A register stepped once per scanned position; its sign bit tells whether
// the position lies inside the run-time field.
struct Walker {
    Reg reg;
    bool increments = true;  // direction of a forward step
    bool in_when_set = true;  // sign value meaning "inside"
};

// Ripple add (or subtract) of addend into target over the positions whose
// walkers report "inside". Positions are listed least significant first.
// The cut walker starts one state before positions[0] and clears the carry
// entering the field; the top walker starts at positions[0], is stepped
// between positions and once after the last, and hands the field's final
// carry to `capture`. Walkers end where they started.
struct WindowedAdd {
    std::vector<std::pair<Wire, Wire>> positions;  // (target, addend)
    std::optional<Walker> cut;
    Walker top;
    Control ctrl;
    bool subtract = false;
    std::optional<Wire> capture;
    bool capture_past_end = false;  // field may continue past the scan
};

void windowed_add(Emitter& e, const WindowedAdd& op);

// Block 1: r -/+ 2^ls r' with the borrow captured into Sign.
void r_block(Emitter& e, const QubitLayout& L, int k, int K);
// Block 2: quotient-bit placement, Sign <-> Work1[lt + lq + 1].
void loc_swap_block(Emitter& e, const QubitLayout& L, int k, int K);
// Block 3: t' -/+ 2^ls t with the carry captured into Sign.
void t_block(Emitter& e, const QubitLayout& L, int k, int K);
void shift_block(Emitter& e, const QubitLayout& L, bool post);
void phase_update(Emitter& e, const QubitLayout& L);
// Work swap and length recomputation when lq = ls = 0; windows for the
// l_t scan (k4, K4) and the l_r' scan (k5, K5).
void iteration_end(Emitter& e, const QubitLayout& L, int k4, int K4, int k5, int K5);

// Loads p (little-endian bits), reduces x to at most p/2 (setting Iter) and
// sets l_r' = bitlen(x).
void preamble(Emitter& e, const QubitLayout& L, const Bits& p);
// out ^= t' (Work2 rotated back by ls for the copy).
void copy_out(Emitter& e, const QubitLayout& L);
// out <- p - out when Iter = 0.
void correct_out(Emitter& e, const QubitLayout& L, const Bits& p);

}  // namespace eea
