#include "eea/layout.hpp"

#include <algorithm>
#include <stdexcept>

#include "eea/numeric.hpp"

namespace eea {

int length_bits(int n) { return floor_log2(n) + 2; }

int shift_bits(int n, int steps) {
    // l_s reaches n + 2 inside an iteration and steps - 4n after termination.
    int ls_max = std::max(n + 2, steps - 4 * n);
    return std::max(floor_log2(n) + 3, bitlen(static_cast<uint64_t>(ls_max - 1)) + 1);
}

int bank_size(int n) { return std::max(n, floor_log2(n) + 5); }

QubitLayout make_layout(int n, int steps) {
    if (n < 2) throw std::domain_error("make_layout: n < 2");
    QubitLayout L;
    L.n = n;
    L.N = n + 3;
    L.ell = floor_log2(n);
    Wire next = 0;
    auto reg = [&](int k) {
        Reg r;
        for (int i = 0; i < k; ++i) r.push_back(next++);
        return r;
    };
    L.w1 = reg(L.N);
    L.w2 = reg(L.N);
    L.lt = reg(length_bits(n));
    L.lq = reg(length_bits(n));
    L.lrp = reg(length_bits(n));
    L.ls = reg(shift_bits(n, steps));
    L.p1 = next++;
    L.p2 = next++;
    L.sign = next++;
    L.iter = next++;
    L.ctrl = next++;
    L.bank = reg(bank_size(n));
    L.out = reg(n);
    L.width_ = next;
    return L;
}

}  // namespace eea
