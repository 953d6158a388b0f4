#include <gtest/gtest.h>

#include <random>

#include "eea/blocks.hpp"

using namespace eea;

namespace {

uint64_t read(const std::vector<uint8_t>& s, const Reg& r) {
    uint64_t v = 0;
    for (size_t i = 0; i < r.size(); ++i) v |= uint64_t(s[r[i]]) << i;
    return v;
}

void write(std::vector<uint8_t>& s, const Reg& r, uint64_t v) {
    for (size_t i = 0; i < r.size(); ++i) s[r[i]] = (v >> i) & 1;
}

// Registers b (0..w-1), a (w..2w-1), control 2w, target 2w+1, bank after.
struct Rig {
    int w;
    Reg b, a, bank;
    Wire ctl, tgt;
    Circuit c;
    explicit Rig(int w_) : w(w_) {
        for (int i = 0; i < w; ++i) b.push_back(i), a.push_back(w + i);
        ctl = 2 * w;
        tgt = 2 * w + 1;
        for (int i = 0; i < w + 2; ++i) bank.push_back(2 * w + 2 + i);
        c.width = 3 * w + 4;
    }
    template <class F>
    void build(F f) {
        Bank bk(bank);
        Emitter e(c, bk);
        f(e);
        EXPECT_EQ(bk.available(), bank.size());
    }
    std::vector<uint8_t> run(uint64_t bv, uint64_t av, int cv, int tv = 0) {
        std::vector<uint8_t> s(c.width, 0);
        write(s, b, bv);
        write(s, a, av);
        s[ctl] = cv;
        s[tgt] = tv;
        auto o = eea::apply(c, s);
        for (Wire x : bank) EXPECT_EQ(o[x], 0) << "dirty scratch";
        return o;
    }
};

}  // namespace

TEST(Blocks, IncrementAndDecrement) {
    for (int w = 1; w <= 6; ++w)
        for (int ctl = 0; ctl < 3; ++ctl) {
            Rig r(w);
            std::optional<Control> c;
            if (ctl == 1) c = pos(r.ctl);
            if (ctl == 2) c = neg(r.ctl);
            r.build([&](Emitter& e) { increment(e, r.b, c); });
            Rig d(w);
            d.build([&](Emitter& e) { decrement(e, d.b, c); });
            uint64_t M = (1ull << w) - 1;
            for (uint64_t v = 0; v <= M; ++v)
                for (int cv = 0; cv < 2; ++cv) {
                    int fire = ctl == 0 ? 1 : ctl == 1 ? cv : !cv;
                    EXPECT_EQ(read(r.run(v, 0, cv), r.b), (v + fire) & M);
                    EXPECT_EQ(read(d.run(v, 0, cv), d.b), (v - fire) & M);
                }
        }
}

TEST(Blocks, AddConstAndCarry) {
    for (int w = 1; w <= 5; ++w) {
        uint64_t M = (1ull << w) - 1;
        for (uint64_t k = 0; k <= M; ++k)
            for (int ctl = 0; ctl < 2; ++ctl) {
                Rig r(w);
                r.build([&](Emitter& e) {
                    add_const(e, r.b, static_cast<int64_t>(k), ctl ? std::optional<Control>(pos(r.ctl)) : std::nullopt);
                });
                Rig q(w);
                q.build([&](Emitter& e) { carry_of_const(e, q.b, k, q.tgt); });
                for (uint64_t v = 0; v <= M; ++v)
                    for (int cv = 0; cv < 2; ++cv) {
                        int fire = ctl ? cv : 1;
                        EXPECT_EQ(read(r.run(v, 0, cv), r.b), (v + fire * k) & M);
                        auto o = q.run(v, 0, cv);
                        EXPECT_EQ(read(o, q.b), v);
                        EXPECT_EQ(o[q.tgt], (v + k) > M);
                    }
            }
    }
}

TEST(Blocks, RegisterAdder) {
    for (int w = 1; w <= 4; ++w) {
        uint64_t M = (1ull << w) - 1;
        for (int sub = 0; sub < 2; ++sub)
            for (int gated = 0; gated < 2; ++gated) {
                Rig r(w);
                AddOptions opt;
                opt.subtract = sub;
                opt.carry_out = r.tgt;
                if (gated) opt.gate = pos(r.ctl);
                r.build([&](Emitter& e) { add_reg(e, r.a, r.b, opt); });
                for (uint64_t bv = 0; bv <= M; ++bv)
                    for (uint64_t av = 0; av <= M; ++av)
                        for (int cv = 0; cv < 2; ++cv) {
                            auto o = r.run(bv, av, cv);
                            int fire = gated ? cv : 1;
                            uint64_t want = sub ? (bv - fire * av) & M : (bv + fire * av) & M;
                            int carry = sub ? av > bv : bv + av > M;
                            EXPECT_EQ(read(o, r.b), want);
                            EXPECT_EQ(read(o, r.a), av);
                            EXPECT_EQ(o[r.tgt], fire ? carry : 0);
                        }
            }
    }
}

TEST(Blocks, Rotation) {
    for (int len = 1; len <= 9; ++len)
        for (int k = -len; k <= len; ++k) {
            Circuit c = cyclic_shift(len, k);
            std::vector<uint8_t> s(len + 1, 0);
            s[0] = 1;
            std::vector<int> tag(len);
            for (int i = 0; i < len; ++i) tag[i] = i;
            // Track one-hot positions.
            for (int i = 0; i < len; ++i) {
                std::fill(s.begin() + 1, s.end(), 0);
                s[1 + i] = 1;
                auto o = eea::apply(c, s);
                int j = ((i - k) % len + len) % len;
                EXPECT_EQ(o[1 + j], 1) << len << " " << k << " " << i;
            }
        }
}

TEST(Blocks, StandaloneExactCounts) {
    for (int w = 2; w <= 64; ++w) {
        auto a = count(lower(cuccaro_adder(w))).total;
        EXPECT_EQ(a.toffoli, uint64_t(2 * w));
        EXPECT_EQ(a.cnot, uint64_t(4 * w + 1));
        auto i = count(lower(incrementer(w))).total;
        EXPECT_EQ(i.toffoli, uint64_t(2 * w - 2));
        EXPECT_EQ(i.cnot, uint64_t(w + 2));
    }
    auto i5 = count(lower(constant_adder(5, 1))).total;
    EXPECT_EQ(i5.toffoli, 8u);
    EXPECT_EQ(i5.cnot, 7u);
}

TEST(Blocks, StandaloneSemantics) {
    for (int w = 1; w <= 5; ++w) {
        uint64_t M = (1ull << w) - 1;
        for (uint64_t k = 0; k <= M; ++k) {
            Circuit c = constant_adder(w, k);
            for (uint64_t v = 0; v <= M; ++v) {
                std::vector<uint8_t> s(c.width, 0);
                write(s, c.layout["b"], v);
                auto o = eea::apply(c, s);
                EXPECT_EQ(read(o, c.layout["b"]), (v + k) & M);
                EXPECT_EQ(o[c.layout["overflow"][0]], (v + k) > M);
                EXPECT_EQ(read(o, c.layout["carry"]), 0u);
            }
        }
        Circuit c = cuccaro_adder(w, true);
        for (uint64_t bv = 0; bv <= M; ++bv)
            for (uint64_t av = 0; av <= M; ++av) {
                std::vector<uint8_t> s(c.width, 0);
                write(s, c.layout["a"], av);
                write(s, c.layout["b"], bv);
                auto o = eea::apply(c, s);
                EXPECT_EQ(read(o, c.layout["b"]), (bv - av) & M);
                EXPECT_EQ(o[c.layout["carry_out"][0]], av > bv);
            }
    }
}
