#include <gtest/gtest.h>

#include "eea/estimate.hpp"
#include "eea/numeric.hpp"
#include "eea/synth.hpp"

using namespace eea;

TEST(Synth, FullCircuitP37) {
    InversionSynth s(37);
    Circuit c = s.build();
    std::vector<uint64_t> xs;
    for (uint64_t x = 1; x < 37; ++x) xs.push_back(x);
    VerifyResult r = verify_inputs(s, c, xs);
    EXPECT_EQ(r.checked, 36u);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_LE(s.bank_peak(), s.layout().bank.size());
}

TEST(Synth, CircuitTraceMatchesModel) {
    for (uint64_t x : {1, 13, 20, 36}) {
        InversionSynth s(37);
        EXPECT_EQ(circuit_trace(s, x), classical_trace(ProblemInstance(37, x))) << x;
    }
}

TEST(Synth, WidthMatchesFormula) {
    for (int n : {8, 9, 12, 16, 24, 32}) {
        QubitLayout L = make_layout(n, step_schedule(n).steps);
        EXPECT_EQ(L.inversion_width(), inversion_width(n)) << n;
        EXPECT_EQ(L.width(), uint32_t(inversion_width(n) + n));
    }
}

TEST(Synth, StreamedCountEqualsParsedCount) {
    InversionSynth s(largest_prime_below_pow2(8));
    GateCounter gc;
    s.emit(gc);
    Circuit parsed = parse(serialize(lower(s.build())));
    ResourceReport a = gc.report(), b = count(parsed);
    EXPECT_EQ(a.total, b.total);
    GateCounts sum;
    for (const auto& [k, v] : a.per_block) sum += v;
    EXPECT_EQ(sum, a.total);
}

TEST(Synth, WholeCircuitIsReversible) {
    InversionSynth s(101);
    Circuit c = s.build();
    Simulator sim(s.layout().width());
    for (int l = 0; l < 64; ++l) set_input(s.layout(), sim, l, 1 + l);
    auto before = sim.lanes;
    sim.run(c);
    sim.run(invert(c));
    EXPECT_EQ(sim.lanes, before);
}

TEST(Synth, ManifestCarriesSchedule) {
    InversionSynth s(37);
    std::string m = manifest_json(s);
    EXPECT_NE(m.find("\"steps\": 36"), std::string::npos);
}
