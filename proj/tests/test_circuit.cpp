#include <gtest/gtest.h>

#include <random>

#include "eea/circuit.hpp"

using namespace eea;

namespace {

Circuit random_circuit(uint32_t width, int gates, std::mt19937& rng) {
    Circuit c(width);
    auto w = [&] { return Wire(rng() % width); };
    for (int i = 0; i < gates; ++i) {
        Wire a = w(), b = w(), t = w();
        while (b == a) b = w();
        while (t == a || t == b) t = w();
        switch (rng() % 5) {
            case 0: c.gate(Gate::x(t)); break;
            case 1: c.gate(Gate::cx({a, bool(rng() & 1)}, t)); break;
            case 2: c.gate(Gate::ccx({a, bool(rng() & 1)}, {b, bool(rng() & 1)}, t)); break;
            case 3: c.gate(Gate::swap(a, t)); break;
            default: c.gate(Gate::cswap({a, bool(rng() & 1)}, b, t)); break;
        }
        if (i % 7 == 0) {
            c.marker("begin blk");
            c.marker("end");
        }
    }
    return c;
}

std::vector<uint8_t> random_bits(uint32_t width, std::mt19937& rng) {
    std::vector<uint8_t> b(width);
    for (auto& v : b) v = rng() & 1;
    return b;
}

}  // namespace

TEST(Circuit, TextAndJsonRoundTrip) {
    std::mt19937 rng(1);
    Circuit c = random_circuit(9, 200, rng);
    EXPECT_EQ(parse(serialize(c)), c);
    EXPECT_EQ(parse_json(serialize_json(c)), c);
}

TEST(Circuit, ParseRejectsMalformed) {
    EXPECT_THROW(parse("width 2\nccx 0 1 1\n"), CircuitError);
    EXPECT_THROW(parse("width 2\nfoo 0\n"), CircuitError);
}

TEST(Circuit, InverseAndLoweringPreserveSemantics) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c = random_circuit(8, 60, rng);
        Circuit low = lower(c);
        EXPECT_NO_THROW(count(low));
        for (int k = 0; k < 20; ++k) {
            auto in = random_bits(8, rng);
            EXPECT_EQ(eea::apply(invert(c), eea::apply(c, in)), in);
            EXPECT_EQ(eea::apply(low, in), eea::apply(c, in));
        }
    }
}

TEST(Circuit, SimulatorMatchesApply) {
    std::mt19937 rng(3);
    Circuit c = random_circuit(10, 300, rng);
    Simulator sim(10);
    std::vector<std::vector<uint8_t>> ins;
    for (int l = 0; l < 64; ++l) {
        ins.push_back(random_bits(10, rng));
        for (Wire w = 0; w < 10; ++w) sim.set(w, l, ins.back()[w]);
    }
    sim.run(c);
    for (int l = 0; l < 64; ++l) {
        auto want = eea::apply(c, ins[l]);
        for (Wire w = 0; w < 10; ++w) ASSERT_EQ(sim.get(w, l), bool(want[w]));
    }
}

TEST(Circuit, CountRequiresLoweredGates) {
    Circuit c(3);
    c.gate(Gate::cswap(pos(0), 1, 2));
    EXPECT_THROW(count(c), CircuitError);
    ResourceReport r = count(lower(c));
    EXPECT_EQ(r.total.toffoli, 1u);
    EXPECT_EQ(r.total.cnot, 2u);
}
