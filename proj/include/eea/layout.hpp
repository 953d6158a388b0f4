#pragma once

#include <vector>

#include "eea/circuit.hpp"

namespace eea {

// Little-endian wire list; the last wire is the sign bit for registers that
// use the stored-minus-one encoding.
using Reg = std::vector<Wire>;

inline Wire sign_of(const Reg& r) { return r.back(); }

struct QubitLayout {
    int n = 0, N = 0, ell = 0;
    // Work registers in 1-based positions: w1[i - 1] is position i.
    // Work2 also carries the input x in positions 4..N.
    Reg w1, w2;
    Reg lt, lq, lrp, ls;  // stored value = length - 1
    Wire p1 = 0, p2 = 0, sign = 0, iter = 0, ctrl = 0;
    Reg bank;  // clean scratch wires
    Reg out;   // n-wire output, outside the inversion width

    int inversion_width() const { return static_cast<int>(width() - out.size()); }
    uint32_t width() const { return width_; }

    uint32_t width_ = 0;
};

// Deterministic wire assignment for a run of `steps` steps. The scratch bank
// has n wires for n >= 8 so the inversion width is 3n + 4 floor(log2 n) + 20;
// smaller n get a padded bank.
QubitLayout make_layout(int n, int steps);

int length_bits(int n);  // floor(log2 n) + 2
// floor(log2 n) + 3, widened when the padding steps after termination can
// push l_s past the register range.
int shift_bits(int n, int steps);
int bank_size(int n);

}  // namespace eea
