#include "eea/blocks.hpp"

namespace eea {

namespace {

void step_walker(Emitter& e, const Walker& w, bool forward) {
    if (w.increments == forward)
        increment(e, w.reg);
    else
        decrement(e, w.reg);
}

Reg low_bits(const Reg& r, size_t k) { return Reg(r.begin(), r.begin() + std::min(k, r.size())); }

}  // namespace

void windowed_add(Emitter& e, const WindowedAdd& op) {
    const int m = static_cast<int>(op.positions.size());
    if (m == 0) return;
    Bank& bank = e.bank();
    const Wire c0 = bank.take();
    const Wire zc = op.cut ? bank.take() : c0;
    const Wire zk = op.capture ? bank.take() : c0;
    const Wire hw = bank.take();
    const Wire st = sign_of(op.top.reg);
    auto tgt = [&](int k) { return op.positions[k].first; };
    auto add = [&](int k) { return op.positions[k].second; };
    auto cw = [&](int k) { return k == 0 ? c0 : add(k - 1); };

    // A swap on both sides of a walker step fires once exactly when the
    // walker's sign changes, i.e. at the field boundary.
    auto cut_step = [&](int k, bool fwd) {
        Wire sc = sign_of(op.cut->reg);
        e.cswap(pos(sc), cw(k), zc);
        step_walker(e, *op.cut, fwd);
        e.cswap(pos(sc), cw(k), zc);
    };
    auto top_step = [&](int k, bool fwd) {
        if (op.capture) e.cswap(pos(st), cw(k), zk);
        step_walker(e, op.top, fwd);
        if (op.capture) e.cswap(pos(st), cw(k), zk);
    };
    auto past_end = [&]() {
        if (op.capture && op.capture_past_end) e.cswap(Control{st, op.top.in_when_set}, cw(m), zk);
    };

    if (op.subtract)
        for (int k = 0; k < m; ++k) e.x(tgt(k));
    for (int k = 0; k < m; ++k) {
        if (op.cut) cut_step(k, true);
        if (k >= 1) top_step(k, true);
        e.cx(add(k), tgt(k));
        e.cx(add(k), cw(k));
        e.ccx(cw(k), tgt(k), add(k));
    }
    if (op.capture) {
        top_step(m, true);
        past_end();
        e.ccx(op.ctrl, pos(zk), *op.capture);
        past_end();
        top_step(m, false);
    }
    for (int k = m - 1; k >= 0; --k) {
        // hw = ctrl AND inside. With both walkers the two "outside" cases
        // exclude each other, so inside = NOT(out_cut XOR out_top).
        Control in;
        if (op.cut) {
            Wire sc = sign_of(op.cut->reg);
            e.cx(sc, st);
            bool flip = 1 ^ op.cut->in_when_set ^ op.top.in_when_set;
            in = Control{st, !flip};
        } else {
            in = Control{st, op.top.in_when_set};
        }
        e.ccx(op.ctrl, in, hw);
        e.ccx(cw(k), tgt(k), add(k));
        e.ccx(pos(hw), pos(cw(k)), tgt(k));
        e.cx(add(k), cw(k));
        e.cx(add(k), tgt(k));
        e.ccx(op.ctrl, in, hw);
        if (op.cut) e.cx(sign_of(op.cut->reg), st);
        if (k >= 1) top_step(k, false);
        if (op.cut) cut_step(k, false);
    }
    if (op.subtract)
        for (int k = 0; k < m; ++k) e.x(tgt(k));
    bank.give(hw);
    if (op.capture) bank.give(zk);
    if (op.cut) bank.give(zc);
    bank.give(c0);
}

void r_block(Emitter& e, const QubitLayout& L, int k, int K) {
    const int N = L.N;
    const Wire ct = L.ctrl, slrp = sign_of(L.lrp);
    if (k <= K) {
        WindowedAdd op;
        for (int i = K; i >= k; --i) op.positions.push_back({L.w1[i - 1], L.w2[i - 1]});
        // cut: LS holds ls - 1 - N + i, negative iff i <= N - ls
        op.cut = Walker{L.ls, false, true};
        // top: LQ holds lt + lq + 1 - i, negative iff i >= lt + lq + 2
        op.top = Walker{L.lq, true, true};
        op.ctrl = pos(ct);
        Circuit setup = e.record([&](Emitter& s) {
            add_const(s, L.ls, K + 1 - N);
            add_reg(s, L.lt, L.lq);
            add_const(s, L.lq, 3 - K);
        });
        e.emit(setup);
        e.ccx(neg(L.p1), neg(slrp), ct);
        op.subtract = true;
        op.capture = L.sign;
        windowed_add(e, op);
        e.ccx(neg(L.p1), neg(slrp), ct);
        e.ccx(neg(L.p1), pos(L.p2), L.sign);
        // ct = not p1 and lr' > 0 and not (p2 and sign); the temporaries are
        // released during the addition to keep scratch use low.
        auto readd_ctrl = [&]() {
            Wire t1 = e.bank().take(), t2 = e.bank().take();
            e.ccx(L.p2, L.sign, t1);
            e.ccx(neg(L.p1), neg(slrp), t2);
            e.ccx(pos(t2), neg(t1), ct);
            e.ccx(neg(L.p1), neg(slrp), t2);
            e.ccx(L.p2, L.sign, t1);
            e.bank().give(t2);
            e.bank().give(t1);
        };
        readd_ctrl();
        op.subtract = false;
        op.capture.reset();
        windowed_add(e, op);
        readd_ctrl();
        e.emit_reversed(setup);
    } else {
        e.ccx(neg(L.p1), pos(L.p2), L.sign);
    }
}

void loc_swap_block(Emitter& e, const QubitLayout& L, int k, int K) {
    const Wire ct = L.ctrl, slq = sign_of(L.lq);
    e.cx(L.p1, L.p2);  // p2 now marks phases 01 and 10
    e.ccx(neg(L.p1), pos(L.p2), ct);
    increment(e, L.lq, pos(ct));
    e.ccx(neg(L.p1), pos(L.p2), ct);
    if (k <= K) {
        // LQ holds lt + lq - i, negative iff i >= lt + lq + 1
        add_reg(e, L.lt, L.lq);
        add_const(e, L.lq, 2 - (k - 1));
        Wire hw = e.bank().take();
        e.ccx(L.p2, slq, hw);
        for (int i = k; i <= K; ++i) {
            e.cswap(pos(hw), L.sign, L.w1[i - 1]);
            e.ccx(L.p2, slq, hw);
            decrement(e, L.lq);
            e.ccx(L.p2, slq, hw);
            e.cswap(pos(hw), L.sign, L.w1[i - 1]);
        }
        e.ccx(L.p2, slq, hw);
        e.bank().give(hw);
        add_const(e, L.lq, K - 2);
        add_reg(e, L.lt, L.lq, {true, {}, {}});
    }
    e.ccx(L.p1, L.p2, ct);
    decrement(e, L.lq, pos(ct));
    e.ccx(L.p1, L.p2, ct);
    e.cx(L.p1, L.p2);
}

void t_block(Emitter& e, const QubitLayout& L, int k, int K) {
    const Wire ct = L.ctrl;
    if (k > K) {
        e.cx(L.p1, L.sign);
        return;
    }
    const int w = static_cast<int>(L.lt.size());
    // The field top G is lt + 1 in phase 10 and min(F, K) in phase 11,
    // F = N - lr' - ls. In phase 11 lq = 0, so LQ is free to hold the
    // walker; the positions between lt + 1 and F are zero in Work1 there.
    // The walker holds G - i, negative iff i > G.
    Circuit setup = e.record([&](Emitter& s) {
        for (int b = 0; b < w; ++b) s.cswap(pos(L.p2), L.lt[b], L.lq[b]);
        increment(s, L.lt);
        add_const(s, L.lt, L.N - 3, pos(L.p2));
        add_reg(s, L.lrp, L.lt, {true, pos(L.p2), {}});
        add_reg(s, low_bits(L.ls, w), L.lt, {true, pos(L.p2), {}});
        add_const(s, L.lt, -(k - 1));
    });
    e.emit(setup);
    WindowedAdd op;
    for (int i = k; i <= K; ++i) op.positions.push_back({L.w2[i - 1], L.w1[i - 1]});
    op.top = Walker{L.lt, false, false};
    // subtract when phase2 or not sign
    Wire t1 = e.bank().take();
    e.ccx(neg(L.p2), pos(L.sign), t1);
    e.ccx(pos(L.p1), neg(t1), ct);
    op.ctrl = pos(ct);
    op.subtract = true;
    windowed_add(e, op);
    e.ccx(pos(L.p1), neg(t1), ct);
    e.ccx(neg(L.p2), pos(L.sign), t1);
    e.bank().give(t1);
    e.cx(L.p1, L.sign);
    op.ctrl = pos(L.p1);
    op.subtract = false;
    op.capture = L.sign;
    op.capture_past_end = true;
    windowed_add(e, op);
    e.emit_reversed(setup);
}

void shift_block(Emitter& e, const QubitLayout& L, bool post) {
    const Control p1 = post ? pos(L.p1) : neg(L.p1);
    const Wire ct = L.ctrl;
    // left by one (ls + 1) in phase x0, right by one (ls - 1) in phase x1
    e.ccx(p1, neg(L.p2), ct);
    rotate(e, L.w2, 1, pos(ct));
    increment(e, L.ls, pos(ct));
    e.ccx(p1, neg(L.p2), ct);
    e.ccx(p1, pos(L.p2), ct);
    rotate(e, L.w2, -1, pos(ct));
    decrement(e, L.ls, pos(ct));
    e.ccx(p1, pos(L.p2), ct);
}

void phase_update(Emitter& e, const QubitLayout& L) {
    const Wire ct = L.ctrl, slq = sign_of(L.lq), slrp = sign_of(L.lrp), sls = sign_of(L.ls);
    e.ccx(pos(slq), neg(slrp), ct);
    e.ccx(ct, L.sign, L.p2);
    e.ccx(ct, L.p1, L.p2);
    e.ccx(ct, L.p2, L.sign);
    e.ccx(pos(slq), neg(slrp), ct);
    e.cx(sls, L.p1);
    e.cx(sls, L.p2);
}

namespace {

// Counter C (stored -1 for zero) is incremented at the first masked one and
// at every later position, so it ends at (positions from the first one) - 1.
void latch(Emitter& e, Wire ctrl, Control mask, Wire bit, const Reg& C) {
    Bank& bank = e.bank();
    Wire a = bank.take(), x = bank.take(), y = bank.take();
    e.ccx(mask, pos(bit), a);
    e.ccx(pos(sign_of(C)), neg(a), x);
    e.ccx(pos(ctrl), neg(x), y);
    increment(e, C, pos(y));
    e.ccx(pos(ctrl), neg(x), y);
    e.ccx(pos(sign_of(C)), neg(a), x);
    e.ccx(mask, pos(bit), a);
    bank.give(y);
    bank.give(x);
    bank.give(a);
}

}  // namespace

void iteration_end(Emitter& e, const QubitLayout& L, int k4, int K4, int k5, int K5) {
    const Wire ct = L.ctrl, slq = sign_of(L.lq), sls = sign_of(L.ls);
    const size_t w = L.lt.size();
    e.ccx(slq, sls, ct);
    e.begin("swap_work");
    for (int i = 0; i < L.N; ++i) e.cswap(pos(ct), L.w1[i], L.w2[i]);
    e.end();

    e.begin("lt_update");
    if (k4 + 1 <= K4) {
        // mask: LRP holds lr' - 1 + i - N, negative iff i <= N - lr'
        Circuit scan = e.record([&](Emitter& s) {
            add_const(s, L.lrp, K4 - L.N);
            for (int i = K4; i >= k4 + 1; --i) {
                latch(s, ct, pos(sign_of(L.lrp)), L.w1[i - 1], L.ls);
                latch(s, ct, pos(sign_of(L.lrp)), L.w2[i - 1], L.lq);
                if (i > k4 + 1) decrement(s, L.lrp);
            }
        });
        e.emit(scan);
        add_reg(e, low_bits(L.ls, w), L.lt, {false, pos(ct), {}});
        add_reg(e, L.lq, L.lt, {true, pos(ct), {}});
        e.emit_reversed(scan);
    }
    e.end();

    e.begin("lrp_update");
    if (k5 <= K5) {
        // mask: LT holds lt + 1 - i, negative iff i >= lt + 2
        Circuit scan = e.record([&](Emitter& s) {
            add_const(s, L.lt, 2 - k5);
            for (int i = k5; i <= K5; ++i) {
                latch(s, ct, pos(sign_of(L.lt)), L.w1[i - 1], L.ls);
                latch(s, ct, pos(sign_of(L.lt)), L.w2[i - 1], L.lq);
                if (i < K5) decrement(s, L.lt);
            }
        });
        e.emit(scan);
        add_reg(e, L.lq, L.lrp, {false, pos(ct), {}});
        add_reg(e, low_bits(L.ls, w), L.lrp, {true, pos(ct), {}});
        e.emit_reversed(scan);
    }
    e.end();
    e.cx(ct, L.iter);
    e.ccx(slq, sls, ct);
}

namespace {

// p + 1 truncated to p's width.
Bits plus_one(Bits v) {
    for (auto& b : v) {
        b ^= 1;
        if (b) break;
    }
    return v;
}

// reg <- p - reg = ~reg + p + 1 under c (reg holds a value in [1, p-1]).
void reflect(Emitter& e, const Reg& reg, const Bits& p, Control c) {
    for (Wire v : reg) e.cx(c, v);
    add_const(e, reg, plus_one(p), c);
}

Reg x_field(const QubitLayout& L) {
    Reg r;
    for (int j = 0; j < L.n; ++j) r.push_back(L.w2[L.N - 1 - j]);
    return r;
}

}  // namespace

void preamble(Emitter& e, const QubitLayout& L, const Bits& p) {
    const int n = L.n, N = L.N;
    e.x(L.w1[0]);
    for (int j = 0; j < n; ++j)
        if (p[j]) e.x(L.w1[N - 1 - j]);
    for (Wire v : L.lq) e.x(v);
    for (Wire v : L.ls) e.x(v);
    for (Wire v : L.lrp) e.x(v);
    Reg xr = x_field(L);
    // iter = [x > p/2] = carry of x + (2^n - 1 - floor(p/2))
    Bits k(n);
    for (int j = 0; j < n; ++j) k[j] = !(j + 1 < n && p[j + 1]);
    carry_of_const(e, xr, k, L.iter);
    reflect(e, xr, p, pos(L.iter));
    // LRP counts from the leading one of x down to position N.
    Wire x = e.bank().take();
    for (int i = 4; i <= N; ++i) {
        e.ccx(pos(sign_of(L.lrp)), neg(L.w2[i - 1]), x);
        increment(e, L.lrp, neg(x));
        e.ccx(pos(sign_of(L.lrp)), neg(L.w2[i - 1]), x);
    }
    e.bank().give(x);
}

void copy_out(Emitter& e, const QubitLayout& L) {
    const int N = L.N;
    const int w = static_cast<int>(L.ls.size());
    // Rotate right by ls = LS + 1 so that physical equals logical.
    Circuit align = e.record([&](Emitter& s) {
        rotate(s, L.w2, -1);
        for (int j = 0; j < w; ++j) {
            int64_t amount = (int64_t(1) << j) % N;
            if (j == w - 1) amount = -amount;
            rotate(s, L.w2, static_cast<int>(-amount), pos(L.ls[j]));
        }
    });
    e.emit(align);
    for (int j = 0; j < L.n; ++j) e.cx(L.w2[j], L.out[j]);
    e.emit_reversed(align);
}

void correct_out(Emitter& e, const QubitLayout& L, const Bits& p) { reflect(e, L.out, p, neg(L.iter)); }

}  // namespace eea
