// Acceptance run: one PASS/FAIL line per criterion. Criteria listed with
// --expect-fail are known to fail (see README); the exit status is nonzero
// when the set of failing criteria differs from that list.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "eea/audit.hpp"
#include "eea/estimate.hpp"
#include "eea/numeric.hpp"
#include "eea/synth.hpp"

using namespace eea;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<uint64_t> primes_between(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> ps;
    for (uint64_t p = lo; p <= hi; ++p)
        if (p % 2 && is_prime(p)) ps.push_back(p);
    return ps;
}

std::vector<uint64_t> tested_primes() {
    auto ps = primes_between(5, 251);
    for (uint64_t p : {509, 1021, 8191}) ps.push_back(p);
    return ps;
}

std::map<int, std::unique_ptr<InversionSynth>> big_synths;

const InversionSynth& synth_for_n(int n) {
    auto& s = big_synths[n];
    if (!s) s = std::make_unique<InversionSynth>(largest_prime_below_pow2(n));
    return *s;
}

Outcome golden_trace() {
    auto t0 = Clock::now();
    std::ifstream f(std::string(EEA_TEST_DATA) + "/trace_p37_x13.tsv");
    std::stringstream want;
    want << f.rdbuf();
    std::string model = trace_tsv(classical_trace(ProblemInstance(37, 13)));
    std::string circuit = trace_tsv(circuit_trace(InversionSynth(37), 13));
    double dt = seconds_since(t0);
    int rows = 0;
    for (char c : model) rows += c == '\n';
    bool ok = !want.str().empty() && model == want.str() && circuit == want.str() && dt < 1.0;
    std::ostringstream os;
    os << rows - 1 << " rows, model " << (model == want.str() ? "exact" : "differs") << ", circuit "
       << (circuit == want.str() ? "exact" : "differs") << ", " << dt << " s";
    return {ok, os.str()};
}

Outcome exhaustive_correctness() {
    auto t0 = Clock::now();
    uint64_t checked = 0, failed = 0;
    std::string first;
    for (uint64_t p : tested_primes()) {
        InversionSynth s(p);
        Circuit c = s.build();
        std::vector<uint64_t> xs(p - 1);
        std::iota(xs.begin(), xs.end(), 1);
        VerifyResult r = verify_inputs(s, c, xs);
        checked += r.checked;
        failed += r.failures.size();
        if (first.empty() && !r.failures.empty())
            first = " first p=" + std::to_string(p) + " x=" + std::to_string(r.failures[0].x);
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << checked << " inputs, " << failed << " failures, " << dt << " s" << first;
    return {failed == 0 && dt < 600, os.str()};
}

Outcome lockstep() {
    uint64_t states = 0, mismatches = 0, dirty = 0;
    for (uint64_t p : {37, 101}) {
        InversionSynth syn(p);
        const QubitLayout& L = syn.layout();
        std::vector<Circuit> steps(syn.schedule().steps + 1);
        syn.emit_preamble(steps[0]);
        for (int T = 1; T <= syn.schedule().steps; ++T) syn.emit_step(steps[T], T);
        for (uint64_t x0 = 1; x0 < p; x0 += 64) {
            Simulator sim(L.width());
            int lanes = 0;
            std::vector<MachineState> ms;
            for (uint64_t x = x0; x < p && lanes < 64; ++x, ++lanes) {
                set_input(L, sim, lanes, x);
                ms.push_back(init_state(ProblemInstance(p, x)));
            }
            for (int T = 0; T <= syn.schedule().steps; ++T) {
                sim.run(steps[T]);
                for (int l = 0; l < lanes; ++l) {
                    if (T > 0) ms[l] = step(ms[l]);
                    ++states;
                    if (!(decode_state(L, sim, l) == ms[l])) ++mismatches;
                    for (Wire w : L.bank)
                        if (sim.get(w, l)) {
                            ++dirty;
                            break;
                        }
                }
            }
        }
    }
    std::ostringstream os;
    os << states << " states, " << mismatches << " mismatches, " << dirty << " dirty scratch";
    return {mismatches == 0 && dirty == 0, os.str()};
}

Outcome step_bound() {
    uint64_t checked = 0, below = 0, above = 0;
    std::string first;
    for (uint64_t p : tested_primes()) {
        const int n = bitlen(p);
        const int lo = 4 * n, hi = static_cast<int>(schedule_steps(n));
        for (uint64_t x = 1; x < p; ++x) {
            int N = active_step_count(ProblemInstance(p, x));
            ++checked;
            if (N < lo) ++below;
            if (N > hi) {
                if (!above++)
                    first = "; e.g. p=" + std::to_string(p) + " x=" + std::to_string(x) + " N=" +
                            std::to_string(N) + " > " + std::to_string(hi);
            }
        }
    }
    std::ostringstream os;
    os << checked << " inputs, " << below << " below 4n, " << above << " above 4*ceil(cn)" << first
       << "; Fibonacci moduli:";
    bool fib_ok = true;
    for (int m : {8, 10, 12}) {
        uint64_t a = fibonacci(m + 2);
        int best = 0;
        for (uint64_t x = 1; x < a; ++x)
            if (std::gcd(a, x) == 1) best = std::max(best, active_step_count(a, x));
        int bound = static_cast<int>(schedule_steps(bitlen(a)));
        fib_ok = fib_ok && best == bound;
        os << " F" << m + 2 << "=" << a << " max N " << best << " vs " << bound << ";";
    }
    return {below == 0 && above == 0 && fib_ok, os.str()};
}

Outcome standalone_counts() {
    int bad = 0;
    for (int w = 2; w <= 64; ++w) {
        GateCounts a = count(lower(cuccaro_adder(w))).total;
        GateCounts s = count(lower(cuccaro_adder(w, true))).total;
        GateCounts i = count(lower(incrementer(w))).total;
        auto want_add = [&](const GateCounts& g) {
            return g.toffoli == uint64_t(2 * w) && g.cnot == uint64_t(4 * w + 1);
        };
        if (!want_add(a) || !want_add(s)) ++bad;
        if (i.toffoli != uint64_t(2 * w - 2) || i.cnot != uint64_t(w + 2)) ++bad;
    }
    return {bad == 0, "widths 2-64, " + std::to_string(bad) + " mismatches"};
}

Outcome width_formulas() {
    std::ostringstream os;
    bool ok = true;
    for (int n : {8, 16, 32, 64, 128, 256}) {
        int got = synth_for_n(n).layout().inversion_width();
        ok = ok && got == inversion_width(n) && got == 3 * n + 4 * floor_log2(n) + 20;
        os << n << ":" << got << " ";
    }
    for (int n : {160, 192, 224, 256, 384, 521}) {
        int want = *reference_ecdlp_width(n);
        ok = ok && ecdlp_width(n) == want;
        os << "ecdlp" << n << ":" << ecdlp_width(n) << "/" << want << " ";
    }
    return {ok, os.str()};
}

Outcome gate_counts() {
    std::ostringstream os;
    bool ok = true;
    std::map<int, GateCounts> got;
    double slowest = 0;
    for (int n : {64, 128, 256}) {
        auto t0 = Clock::now();
        const InversionSynth& s = synth_for_n(n);
        GateCounter gc;
        s.emit(gc);
        double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        got[n] = gc.report().total;
        ReferenceCounts ref = *reference_counts(n);
        double rt = got[n].toffoli / ref.toffoli, rc = got[n].cnot / ref.cnot;
        bool in = rt >= 1 / 1.5 && rt <= 1.5 && rc >= 1 / 1.5 && rc <= 1.5;
        ok = ok && in;
        char buf[160];
        std::snprintf(buf, sizeof buf, "n=%d tof %.3e (x%.2f) cnot %.3e (x%.2f) %.1fs; ", n,
                      double(got[n].toffoli), rt, double(got[n].cnot), rc, dt);
        os << buf;
    }
    for (int n : {64, 128}) {
        double ratio = double(got[2 * n].toffoli) / double(got[n].toffoli);
        double target = 4 * std::log2(2.0 * n) / std::log2(double(n));
        bool in = std::abs(ratio / target - 1) <= 0.15;
        ok = ok && in;
        char buf[96];
        std::snprintf(buf, sizeof buf, "ratio %d->%d %.3f vs %.3f; ", n, 2 * n, ratio, target);
        os << buf;
    }
    ok = ok && slowest < 1800;
    return {ok, os.str()};
}

Outcome window_soundness() {
    auto t0 = Clock::now();
    WindowAudit closed = audit_windows(1024, WindowRule::closed_form);
    WindowAudit sound = audit_windows(1024, WindowRule::sound);
    std::ostringstream os;
    os << closed.inputs << " inputs; outside closed-form windows:";
    for (int i = 0; i < 5; ++i) os << " " << window_block_names[i] << "=" << closed.violations[i];
    if (!closed.examples.empty()) os << " (e.g. " << describe(closed.examples[0]) << ")";
    os << "; outside circuit windows: " << sound.total() << "; " << seconds_since(t0) << " s";
    return {closed.total() == 0, os.str()};
}

Outcome reversibility() {
    std::mt19937_64 rng(20261019);
    std::ostringstream os;
    uint64_t model_bad = 0, circuit_bad = 0, full_bad = 0;
    bool enough = true;
    for (int n : {6, 8, 10, 12}) {
        auto primes = primes_between(uint64_t(1) << (n - 1), (uint64_t(1) << n) - 1);
        uint64_t states = 0;
        for (int round = 0; states < 10000; ++round) {
            uint64_t p = primes[rng() % primes.size()];
            InversionSynth syn(p);
            const QubitLayout& L = syn.layout();
            const int S = syn.schedule().steps;
            int T = static_cast<int>(rng() % S);  // state after T steps, step T+1 applied
            Circuit fwd;
            syn.emit_step(fwd, T + 1);
            Circuit bwd = invert(fwd);
            Simulator sim(L.width());
            std::vector<MachineState> ms;
            for (int l = 0; l < 64; ++l) {
                MachineState s = init_state(ProblemInstance(p, 1 + rng() % (p - 1)));
                for (int t = 0; t < T; ++t) s = step(s);
                MachineState nxt = step(s);
                if (!(step_inverse(nxt) == s)) ++model_bad;
                if (T > 0 && !(step(step_inverse(s)) == s)) ++model_bad;
                encode_state(L, s, sim, l);
                ms.push_back(s);
            }
            auto before = sim.lanes;
            sim.run(fwd);
            for (int l = 0; l < 64; ++l)
                if (!(decode_state(L, sim, l) == step(ms[l]))) ++circuit_bad;
            sim.run(bwd);
            if (sim.lanes != before) ++circuit_bad;
            states += 64;
            (void)round;
        }
        // whole circuit followed by its inverse, on random inputs
        uint64_t p = primes.back();
        InversionSynth syn(p);
        Circuit c = syn.build();
        Simulator sim(syn.layout().width());
        for (int l = 0; l < 64; ++l) set_input(syn.layout(), sim, l, 1 + rng() % (p - 1));
        auto before = sim.lanes;
        sim.run(c);
        sim.run(invert(c));
        if (sim.lanes != before) ++full_bad;
        enough = enough && states >= 10000;
        os << "n=" << n << ":" << states << " ";
    }
    os << "states; failures model " << model_bad << ", step circuit " << circuit_bad
       << ", full circuit " << full_bad;
    return {enough && model_bad == 0 && circuit_bad == 0 && full_bad == 0, os.str()};
}

Outcome estimator_identities() {
    const double c = golden_c();
    double sum = 0;
    for (const auto& b : block_coefficients()) sum += b.coeff;
    bool ok = std::abs(sum - (80 * c - 13)) < 1e-12;
    ok = ok && std::abs(inversion_coefficient() - 2 * (80 * c - 13)) < 1e-12;
    int composition = point_addition_inversions * 204 + (point_addition_products - 1) *
                      product_coefficient + product_coefficient;
    ok = ok && composition == point_addition_coefficient && composition == 976;
    std::ostringstream os;
    os << "block sum " << sum << " = 80c-13; composition " << composition << "; n^3 coefficient";
    for (int n : {64, 128, 256, 512}) {
        EcdlpTotals t = ecdlp_totals(n, 2 * floor_log2(n));
        double coef = t.toffoli_leading / std::pow(double(n), 3);
        ok = ok && std::abs(coef - 976) < 1e-9;
        os << " " << coef;
    }
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"golden trace p=37 x=13", golden_trace},
        {"exhaustive functional correctness", exhaustive_correctness},
        {"circuit/model lockstep p=37,101", lockstep},
        {"step bound 4n <= N <= 4ceil(cn)", step_bound},
        {"adder and incrementer exact counts", standalone_counts},
        {"width formulas", width_formulas},
        {"gate counts vs reference table", gate_counts},
        {"operands inside the closed-form windows", window_soundness},
        {"reversibility suite", reversibility},
        {"estimator identities", estimator_identities},
    };

    std::set<int> failing;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failing.insert(int(i + 1));
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::printf("%zu/%zu criteria pass", criteria.size() - failing.size(), criteria.size());
    if (!expected.empty()) {
        std::printf("; expected failures:");
        for (int k : expected) std::printf(" %d", k);
    }
    std::printf("\n");
    return failing == expected ? 0 : 1;
}
