#include "eea/blocks.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace eea {

Bank::Bank(Reg wires) : free_(std::move(wires)), total_(free_.size()) {
    std::reverse(free_.begin(), free_.end());
}

Wire Bank::take() {
    if (free_.empty()) throw CircuitError("scratch bank exhausted");
    Wire w = free_.back();
    free_.pop_back();
    peak_ = std::max(peak_, total_ - free_.size());
    return w;
}

Reg Bank::take(int k) {
    Reg r;
    for (int i = 0; i < k; ++i) r.push_back(take());
    return r;
}

void Bank::give(Wire w) { free_.push_back(w); }

void Bank::give(const Reg& ws) {
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) give(*it);
}

void Emitter::begin(std::string_view label) {
    std::string m = "begin ";
    m += label;
    sink_->marker(m);
}

Circuit Emitter::record(const std::function<void(Emitter&)>& body) {
    Circuit buf;
    Emitter sub(buf, *bank_);
    body(sub);
    return buf;
}

void Emitter::emit_reversed(const Circuit& c) { eea::emit_reversed(c, *sink_); }

void emit_reversed(const Circuit& c, GateSink& out) {
    // Pair each "end" with its "begin" label.
    std::vector<std::string> label_of(c.markers.size());
    std::vector<size_t> open;
    for (size_t m = 0; m < c.markers.size(); ++m) {
        const std::string& t = c.markers[m].second;
        if (t.rfind("begin ", 0) == 0) {
            open.push_back(m);
        } else if (t == "end" && !open.empty()) {
            label_of[m] = c.markers[open.back()].second;
            open.pop_back();
        }
    }
    size_t m = c.markers.size();
    for (size_t i = c.gates.size() + 1; i-- > 0;) {
        if (i < c.gates.size()) out.gate(c.gates[i]);
        while (m > 0 && c.markers[m - 1].first == i) {
            --m;
            const std::string& t = c.markers[m].second;
            if (t == "end" && !label_of[m].empty())
                out.marker(label_of[m]);
            else if (t.rfind("begin ", 0) == 0)
                out.marker("end");
            else
                out.marker(t);
        }
    }
}

void increment(Emitter& e, const Reg& b, std::optional<Control> ctl) {
    const int w = static_cast<int>(b.size());
    if (w == 0) return;
    if (!ctl) {
        if (w == 1) {
            e.x(b[0]);
            return;
        }
        // c[i] is the carry into bit i; c[1] is b0 itself.
        Reg d = e.bank().take(w - 2);
        auto c = [&](int i) { return i == 1 ? b[0] : d[i - 2]; };
        for (int i = 1; i <= w - 2; ++i) e.ccx(b[i], c(i), c(i + 1));
        for (int i = w - 1; i >= 1; --i) {
            e.cx(c(i), b[i]);
            if (i >= 2) e.ccx(b[i - 1], c(i - 1), c(i));
        }
        e.x(b[0]);
        e.bank().give(d);
        return;
    }
    if (w == 1) {
        e.cx(*ctl, b[0]);
        return;
    }
    Reg d = e.bank().take(w - 1);  // d[i-1] = carry into bit i
    e.ccx(*ctl, pos(b[0]), d[0]);
    for (int i = 1; i <= w - 2; ++i) e.ccx(b[i], d[i - 1], d[i]);
    for (int i = w - 1; i >= 1; --i) {
        e.cx(d[i - 1], b[i]);
        if (i >= 2)
            e.ccx(b[i - 1], d[i - 2], d[i - 1]);
        else
            e.ccx(*ctl, pos(b[0]), d[0]);
    }
    e.cx(*ctl, b[0]);
    e.bank().give(d);
}

void decrement(Emitter& e, const Reg& b, std::optional<Control> ctl) {
    e.inverse([&](Emitter& s) { increment(s, b, ctl); });
}

void add_const(Emitter& e, const Reg& b, int64_t k, std::optional<Control> ctl) {
    Bits K(b.size());
    for (size_t i = 0; i < b.size(); ++i) K[i] = i < 64 ? (static_cast<uint64_t>(k) >> i) & 1 : (k < 0);
    add_const(e, b, K, ctl);
}

void add_const(Emitter& e, const Reg& b, const Bits& K, std::optional<Control> ctl) {
    const int w = static_cast<int>(b.size());
    auto bit = [&](int i) { return i < static_cast<int>(K.size()) && K[i]; };
    int j = 0;
    while (j < w && !bit(j)) ++j;
    if (j == w) return;
    if (j == w - 1) {
        if (ctl)
            e.cx(*ctl, b[j]);
        else
            e.x(b[j]);
        return;
    }
    if (!ctl) {
        Reg d = e.bank().take(w - j - 2);
        auto c = [&](int i) { return i == j + 1 ? b[j] : d[i - j - 2]; };
        auto carry = [&](int i) {  // c(i+1) ^= maj(k_i, b_i, c_i)
            if (bit(i)) {
                e.ccx(neg(b[i]), neg(c(i)), c(i + 1));
                e.x(c(i + 1));
            } else {
                e.ccx(b[i], c(i), c(i + 1));
            }
        };
        for (int i = j + 1; i <= w - 2; ++i) carry(i);
        for (int i = w - 1; i >= j + 1; --i) {
            e.cx(c(i), b[i]);
            if (bit(i)) e.x(b[i]);
            if (i >= j + 2) carry(i - 1);
        }
        e.x(b[j]);
        e.bank().give(d);
        return;
    }
    const Control g = *ctl;
    Reg d = e.bank().take(w - j - 1);  // d[i-j-1] = carry into bit i
    auto c = [&](int i) { return d[i - j - 1]; };
    auto carry = [&](int i) {
        if (bit(i)) {
            e.ccx(g, pos(b[i]), c(i + 1));
            e.cx(c(i), c(i + 1));
            e.ccx(b[i], c(i), c(i + 1));
        } else {
            e.ccx(b[i], c(i), c(i + 1));
        }
    };
    e.ccx(g, pos(b[j]), c(j + 1));
    for (int i = j + 1; i <= w - 2; ++i) carry(i);
    for (int i = w - 1; i >= j + 1; --i) {
        e.cx(c(i), b[i]);
        if (bit(i)) e.cx(g, b[i]);
        if (i >= j + 2)
            carry(i - 1);
        else
            e.ccx(g, pos(b[j]), c(j + 1));
    }
    e.cx(g, b[j]);
    e.bank().give(d);
}

void carry_of_const(Emitter& e, const Reg& b, uint64_t k, Wire target) {
    Bits K(b.size());
    for (size_t i = 0; i < b.size() && i < 64; ++i) K[i] = (k >> i) & 1;
    carry_of_const(e, b, K, target);
}

void carry_of_const(Emitter& e, const Reg& b, const Bits& K, Wire target) {
    const int w = static_cast<int>(b.size());
    auto bit = [&](int i) { return i < static_cast<int>(K.size()) && K[i]; };
    int j = 0;
    while (j < w && !bit(j)) ++j;
    if (j == w) return;
    Reg d = e.bank().take(w - j - 1);
    auto c = [&](int i) { return i == j + 1 ? b[j] : d[i - j - 2]; };
    auto carry = [&](int i) {
        if (bit(i)) {
            e.ccx(neg(b[i]), neg(c(i)), c(i + 1));
            e.x(c(i + 1));
        } else {
            e.ccx(b[i], c(i), c(i + 1));
        }
    };
    for (int i = j + 1; i <= w - 1; ++i) carry(i);
    e.cx(c(w), target);
    for (int i = w - 1; i >= j + 1; --i) carry(i);
    e.bank().give(d);
}

void add_reg(Emitter& e, const Reg& a, const Reg& b, const AddOptions& opt) {
    const int w = static_cast<int>(b.size());
    if (static_cast<int>(a.size()) != w) throw CircuitError("add_reg: width mismatch");
    Wire c0 = e.bank().take();
    auto xw = [&](int i) { return i == 0 ? c0 : a[i - 1]; };
    if (opt.subtract)
        for (Wire v : b) e.x(v);
    for (int i = 0; i < w; ++i) {
        e.cx(a[i], b[i]);
        e.cx(a[i], xw(i));
        e.ccx(xw(i), b[i], a[i]);
    }
    if (opt.carry_out) {
        if (opt.gate)
            e.ccx(*opt.gate, pos(a[w - 1]), *opt.carry_out);
        else
            e.cx(a[w - 1], *opt.carry_out);
    }
    for (int i = w - 1; i >= 0; --i) {
        e.ccx(xw(i), b[i], a[i]);
        if (opt.gate) {
            e.ccx(*opt.gate, pos(xw(i)), b[i]);
            e.cx(a[i], xw(i));
            e.cx(a[i], b[i]);
        } else {
            e.cx(a[i], xw(i));
            e.cx(xw(i), b[i]);
        }
    }
    if (opt.subtract)
        for (Wire v : b) e.x(v);
    e.bank().give(c0);
}

void rotate(Emitter& e, const Reg& v, int k, std::optional<Control> ctl) {
    const int len = static_cast<int>(v.size());
    if (len == 0) return;
    k = ((k % len) + len) % len;
    if (k == 0) return;
    auto sw = [&](Wire a, Wire b) {
        if (ctl)
            e.cswap(*ctl, a, b);
        else
            e.swap(a, b);
    };
    // Each cycle start -> start+k -> ... is rotated by successive swaps.
    int g = std::gcd(len, k);
    for (int s = 0; s < g; ++s) {
        int cur = s;
        for (int m = 0; m < len / g - 1; ++m) {
            int nxt = (cur + k) % len;
            sw(v[cur], v[nxt]);
            cur = nxt;
        }
    }
}

Circuit cuccaro_adder(int width, bool subtract) {
    if (width < 1) throw std::invalid_argument("cuccaro_adder: width < 1");
    const uint32_t W = 2 * width + 2;
    Circuit c(W);
    Reg a, b, z;
    for (int i = 0; i < width; ++i) a.push_back(i), b.push_back(width + i);
    Bank bank({Wire(2 * width)});
    Emitter e(c, bank);
    add_reg(e, a, b, {subtract, {}, Wire(2 * width + 1)});
    c.layout["a"] = a;
    c.layout["b"] = b;
    c.layout["carry_in"] = {Wire(2 * width)};
    c.layout["carry_out"] = {Wire(2 * width + 1)};
    return c;
}

namespace {

// Carry-copy form: all carries in scratch wires, including a copy of the first
// one, and the final carry XORed into an overflow wire.
Circuit carry_copy_adder(int width, uint64_t K) {
    if (width < 1) throw std::invalid_argument("width < 1");
    if (width < 64) K &= (uint64_t(1) << width) - 1;
    Circuit c(2 * width + 1);
    Reg b, d;
    for (int i = 0; i < width; ++i) b.push_back(i), d.push_back(width + i);
    const Wire ovf = 2 * width;
    c.layout["b"] = b;
    c.layout["carry"] = d;
    c.layout["overflow"] = {ovf};
    if (K == 0) return c;
    Bank bank({});
    Emitter e(c, bank);
    auto bit = [&](int i) { return (K >> i) & 1; };
    int j = std::countr_zero(K);
    auto cw = [&](int i) { return d[i - 1]; };  // carry into bit i, i >= 1
    auto carry = [&](int i) {
        if (bit(i)) {
            e.ccx(neg(b[i]), neg(cw(i)), cw(i + 1));
            e.x(cw(i + 1));
        } else {
            e.ccx(b[i], cw(i), cw(i + 1));
        }
    };
    if (j == width - 1) {
        e.cx(b[j], ovf);
        e.x(b[j]);
        return c;
    }
    e.cx(b[j], cw(j + 1));
    for (int i = j + 1; i <= width - 1; ++i) carry(i);
    e.cx(cw(width), ovf);
    carry(width - 1);
    for (int i = width - 1; i >= j + 1; --i) {
        e.cx(cw(i), b[i]);
        if (bit(i)) e.x(b[i]);
        if (i >= j + 2) carry(i - 1);
    }
    e.cx(b[j], cw(j + 1));
    e.x(b[j]);
    return c;
}

}  // namespace

Circuit incrementer(int width) { return carry_copy_adder(width, 1); }

Circuit constant_adder(int width, uint64_t k) { return carry_copy_adder(width, k); }

Circuit cyclic_shift(int width, int k) {
    Circuit c(width + 1);
    Reg v;
    for (int i = 0; i < width; ++i) v.push_back(i + 1);
    Bank bank({});
    Emitter e(c, bank);
    rotate(e, v, k, pos(0));
    c.layout["control"] = {0};
    c.layout["data"] = v;
    return c;
}

}  // namespace eea
