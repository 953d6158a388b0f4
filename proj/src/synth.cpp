#include "eea/synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

#include "eea/numeric.hpp"

namespace eea {

namespace {

Bits to_bits(const mpz_class& v, int n) {
    Bits b(n);
    for (int j = 0; j < n; ++j) b[j] = mpz_tstbit(v.get_mpz_t(), j);
    return b;
}

int bit_length(const mpz_class& v) { return v == 0 ? 0 : static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

std::string at(std::string_view label, int T) { return std::string(label) + "@T=" + std::to_string(T); }

}  // namespace

InversionSynth::InversionSynth(const mpz_class& p, WindowRule rule) : p_(p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t())) throw std::domain_error("modulus must be odd and at least 3");
    int n = bit_length(p);
    schedule_ = step_schedule(n, rule);
    layout_ = make_layout(n, schedule_.steps);
    pbits_ = to_bits(p, n);
}

InversionSynth::InversionSynth(uint64_t p, WindowRule rule) : InversionSynth(mpz_class(std::to_string(p)), rule) {}

template <class F>
void InversionSynth::run(GateSink& out, F&& body) const {
    Bank bank(layout_.bank);
    Emitter e(out, bank);
    body(e);
    if (bank.available() != layout_.bank.size()) throw std::logic_error("scratch bank not returned");
    peak_ = std::max(peak_, bank.peak());
}

void InversionSynth::emit_preamble(GateSink& out) const {
    run(out, [&](Emitter& e) {
        e.begin("preamble");
        preamble(e, layout_, pbits_);
        e.end();
    });
}

void InversionSynth::emit_step(GateSink& out, int T) const {
    const ActiveWindow& w = schedule_.at(T);
    const QubitLayout& L = layout_;
    run(out, [&](Emitter& e) {
        e.begin(at("pre_shift", T));
        shift_block(e, L, false);
        e.end();
        e.begin(at("r_arith", T));
        r_block(e, L, w.k[0], w.K[0]);
        e.end();
        e.begin(at("loc_swap", T));
        loc_swap_block(e, L, w.k[1], w.K[1]);
        e.end();
        e.begin(at("t_arith", T));
        t_block(e, L, w.k[2], w.K[2]);
        e.end();
        e.begin(at("post_shift", T));
        shift_block(e, L, true);
        e.end();
        e.begin(at("phase_update", T));
        phase_update(e, L);
        e.end();
        if (schedule_.runs_length_update(T)) {
            e.begin(at("iteration_end", T));
            iteration_end(e, L, w.k[3], w.K[3], w.k[4], w.K[4]);
            e.end();
        }
    });
}

void InversionSynth::emit_step_inverse(GateSink& out, int T) const {
    Circuit buf;
    emit_step(buf, T);
    emit_reversed(buf, out);
}

void InversionSynth::emit_finale(GateSink& out) const {
    run(out, [&](Emitter& e) {
        e.begin("copy");
        copy_out(e, layout_);
        e.end();
        e.begin("correction");
        correct_out(e, layout_, pbits_);
        e.end();
    });
}

void InversionSynth::emit(GateSink& out) const {
    emit_preamble(out);
    for (int T = 1; T <= schedule_.steps; ++T) emit_step(out, T);
    emit_finale(out);
    for (int T = schedule_.steps; T >= 1; --T) emit_step_inverse(out, T);
    Circuit pre;
    emit_preamble(pre);
    emit_reversed(pre, out);
}

Circuit InversionSynth::build() const {
    Circuit c(layout_.width());
    emit(c);
    const QubitLayout& L = layout_;
    c.layout["work1"] = L.w1;
    c.layout["work2"] = L.w2;
    c.layout["lt"] = L.lt;
    c.layout["lq"] = L.lq;
    c.layout["lrp"] = L.lrp;
    c.layout["ls"] = L.ls;
    c.layout["flags"] = {L.p1, L.p2, L.sign, L.iter, L.ctrl};
    c.layout["scratch"] = L.bank;
    c.layout["output"] = L.out;
    return c;
}

namespace {

int read_signed(const Reg& r, const Simulator& sim, int lane) {
    int64_t v = 0;
    for (size_t i = 0; i < r.size(); ++i) v |= int64_t(sim.get(r[i], lane)) << i;
    if (sim.get(r.back(), lane)) v -= int64_t(1) << r.size();
    return static_cast<int>(v);
}

void write_signed(const Reg& r, int64_t v, Simulator& sim, int lane) {
    for (size_t i = 0; i < r.size(); ++i) sim.set(r[i], lane, (static_cast<uint64_t>(v) >> i) & 1);
}

}  // namespace

MachineState decode_state(const QubitLayout& L, const Simulator& sim, int lane) {
    MachineState s;
    s.n = L.n;
    for (int i = 0; i < L.N; ++i) {
        s.work1.push_back(sim.get(L.w1[i], lane));
        s.work2.push_back(sim.get(L.w2[i], lane));
    }
    s.lt = read_signed(L.lt, sim, lane) + 1;
    s.lq = read_signed(L.lq, sim, lane) + 1;
    s.lrp = read_signed(L.lrp, sim, lane) + 1;
    s.ls = read_signed(L.ls, sim, lane) + 1;
    s.phase1 = sim.get(L.p1, lane);
    s.phase2 = sim.get(L.p2, lane);
    s.sign = sim.get(L.sign, lane);
    s.iter = sim.get(L.iter, lane);
    s.ctrl = sim.get(L.ctrl, lane);
    return s;
}

void encode_state(const QubitLayout& L, const MachineState& s, Simulator& sim, int lane) {
    for (int i = 0; i < L.N; ++i) {
        sim.set(L.w1[i], lane, s.work1[i]);
        sim.set(L.w2[i], lane, s.work2[i]);
    }
    write_signed(L.lt, s.lt - 1, sim, lane);
    write_signed(L.lq, s.lq - 1, sim, lane);
    write_signed(L.lrp, s.lrp - 1, sim, lane);
    write_signed(L.ls, s.ls - 1, sim, lane);
    sim.set(L.p1, lane, s.phase1);
    sim.set(L.p2, lane, s.phase2);
    sim.set(L.sign, lane, s.sign);
    sim.set(L.iter, lane, s.iter);
    sim.set(L.ctrl, lane, s.ctrl);
}

void set_input(const QubitLayout& L, Simulator& sim, int lane, uint64_t x) {
    for (int j = 0; j < L.n; ++j) sim.set(L.w2[L.N - 1 - j], lane, j < 64 && ((x >> j) & 1));
}

uint64_t read_output(const QubitLayout& L, const Simulator& sim, int lane) {
    uint64_t v = 0;
    for (int j = 0; j < L.n && j < 64; ++j) v |= uint64_t(sim.get(L.out[j], lane)) << j;
    return v;
}

bool auxiliaries_clean(const QubitLayout& L, const Simulator& sim, int lane) {
    std::vector<uint8_t> skip(L.width(), 0);
    for (int j = 0; j < L.n; ++j) skip[L.w2[L.N - 1 - j]] = 1;
    for (Wire w : L.out) skip[w] = 1;
    for (Wire w = 0; w < L.width(); ++w)
        if (!skip[w] && sim.get(w, lane)) return false;
    return true;
}

std::string manifest_json(const InversionSynth& s) {
    const QubitLayout& L = s.layout();
    nlohmann::json j;
    j["n"] = L.n;
    j["modulus"] = s.modulus().get_str();
    j["steps"] = s.schedule().steps;
    j["window_rule"] = s.schedule().rule == WindowRule::sound ? "sound" : "closed_form";
    j["width"] = L.width();
    j["inversion_width"] = L.inversion_width();
    j["registers"] = {{"work1", L.w1}, {"work2", L.w2},   {"lt", L.lt},     {"lq", L.lq},
                      {"lrp", L.lrp},  {"ls", L.ls},      {"scratch", L.bank}, {"output", L.out}};
    j["flags"] = {{"phase1", L.p1}, {"phase2", L.p2}, {"sign", L.sign}, {"iter", L.iter}, {"ctrl", L.ctrl}};
    nlohmann::json wins = nlohmann::json::array();
    for (const auto& w : s.schedule().windows) wins.push_back({{"T", w.T}, {"k", w.k}, {"K", w.K}});
    j["windows"] = wins;
    return j.dump(1);
}

std::vector<StepTrace> circuit_trace(const InversionSynth& s, uint64_t x) {
    const QubitLayout& L = s.layout();
    Simulator sim(L.width());
    set_input(L, sim, 0, x);
    Circuit c;
    s.emit_preamble(c);
    sim.run(c);
    std::vector<StepTrace> rows{trace_row(decode_state(L, sim, 0), 0)};
    for (int T = 1; T <= s.schedule().steps; ++T) {
        Circuit st;
        s.emit_step(st, T);
        sim.run(st);
        rows.push_back(trace_row(decode_state(L, sim, 0), T));
    }
    return rows;
}

VerifyResult verify_inputs(const InversionSynth& s, const Circuit& c,
                           const std::vector<uint64_t>& xs) {
    const QubitLayout& L = s.layout();
    const uint64_t p = s.modulus().get_ui();
    VerifyResult res;
    for (size_t i0 = 0; i0 < xs.size(); i0 += 64) {
        const size_t lanes = std::min<size_t>(64, xs.size() - i0);
        Simulator sim(L.width());
        for (size_t l = 0; l < lanes; ++l) set_input(L, sim, int(l), xs[i0 + l]);
        sim.run(c);
        for (size_t l = 0; l < lanes; ++l) {
            VerifyFailure f;
            f.x = xs[i0 + l];
            f.want = egcd_inverse(f.x, p).value_or(0);
            f.got = read_output(L, sim, int(l));
            f.input_kept = true;
            for (int j = 0; j < L.n; ++j)
                if (sim.get(L.w2[L.N - 1 - j], int(l)) != ((f.x >> j) & 1)) f.input_kept = false;
            f.clean = auxiliaries_clean(L, sim, int(l));
            ++res.checked;
            if (f.got != f.want || !f.input_kept || !f.clean) res.failures.push_back(f);
        }
    }
    return res;
}

mpz_class largest_prime_below_pow2(int n) {
    mpz_class c = (mpz_class(1) << n) - 1;
    while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0) c -= 2;
    return c;
}

}  // namespace eea
