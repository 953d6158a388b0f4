#include "eea/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "eea/numeric.hpp"

namespace eea {

ProblemInstance::ProblemInstance(uint64_t p_, uint64_t x_) : p(p_), x(x_) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::domain_error("p must be an odd prime");
    if (x == 0 || x >= p) throw std::domain_error("x must lie in [1, p-1]");
    n = bitlen(p);
}

int MachineState::w2_phys(int i) const {
    int N = width();
    return ((i - ls) % N + N) % N;
}

namespace {

uint64_t read_le(const Bits& b, int from, int len) {
    uint64_t v = 0;
    for (int j = len - 1; j >= 0; --j) v = (v << 1) | b[from + j];
    return v;
}

uint64_t read_be(const Bits& b, int from, int len) {
    uint64_t v = 0;
    for (int j = 0; j < len; ++j) v = (v << 1) | b[from + j];
    return v;
}

// dst += src over the given positions (least significant first); returns carry.
uint8_t add_at(Bits& dst, const Bits& src, const std::vector<int>& pos) {
    uint8_t c = 0;
    for (int i : pos) {
        int s = dst[i] + src[i] + c;
        dst[i] = s & 1;
        c = s >> 1;
    }
    return c;
}

// dst -= src over the given positions; returns borrow.
uint8_t sub_at(Bits& dst, const Bits& src, const std::vector<int>& pos) {
    int b = 0;
    for (int i : pos) {
        int d = dst[i] - src[i] - b;
        b = d < 0;
        dst[i] = d & 1;
    }
    return static_cast<uint8_t>(b);
}

std::vector<int> r_window(const MachineState& s) {
    std::vector<int> pos;
    for (int i = s.width() - s.ls - 1; i >= s.lt + s.lq + 1; --i) pos.push_back(i);
    return pos;
}

// Integer part of t' in physical Work2 positions [0, N - lr' - ls).
std::vector<int> t_window(const MachineState& s) {
    std::vector<int> pos;
    int top = std::max(s.width() - s.lrp - s.ls, s.lt + 1);
    for (int i = 0; i < top; ++i) pos.push_back(i);
    return pos;
}

// Work1 restricted to the t field, zero above it.
Bits t_operand(const MachineState& s) {
    Bits a(s.work1.begin(), s.work1.end());
    for (int i = s.lt + 1; i < s.width(); ++i) a[i] = 0;
    return a;
}

void rotate_left(Bits& b, int k) {
    std::rotate(b.begin(), b.begin() + (k % static_cast<int>(b.size())), b.end());
}

void rotate_right(Bits& b, int k) {
    int N = static_cast<int>(b.size());
    std::rotate(b.begin(), b.begin() + (N - k % N) % N, b.end());
}

// Bit length of the new t (work1 little-endian over [0, N - lrp_old)).
int new_lt(const MachineState& s, int lrp_old) {
    return bitlen(read_le(s.work1, 0, s.width() - lrp_old));
}

// Bit length of the new r' (work2 big-endian over [lt_old + 1, N)).
int new_lrp(const MachineState& s, int lt_old) {
    return bitlen(read_be(s.work2, lt_old + 1, s.width() - lt_old - 1));
}

}  // namespace

uint64_t MachineState::t() const { return read_le(work1, 0, lt + 1); }
uint64_t MachineState::q_bits() const { return read_be(work1, lt + 1, lq); }
uint64_t MachineState::q() const { return q_bits() << ls; }
uint64_t MachineState::r() const {
    int from = lt + 1 + lq;
    return read_be(work1, from, width() - from);
}

uint64_t MachineState::t_prime() const {
    uint64_t v = 0;
    for (int i = width() - lrp - 1; i >= 0; --i) v = (v << 1) | work2[w2_phys(i)];
    return v;
}

uint64_t MachineState::r_prime() const {
    uint64_t v = 0;
    for (int i = width() - lrp; i < width(); ++i) v = (v << 1) | work2[w2_phys(i)];
    return v;
}

MachineState init_state(const ProblemInstance& inst) {
    MachineState s;
    s.n = inst.n;
    int N = s.width();
    s.work1.assign(N, 0);
    s.work2.assign(N, 0);
    s.work1[0] = 1;
    for (int j = 0; j < inst.n; ++j) s.work1[N - 1 - j] = (inst.p >> j) & 1;
    uint64_t xr = inst.x;
    if (2 * inst.x > inst.p) {
        xr = inst.p - inst.x;
        s.iter = 1;
    }
    for (int j = 0; j < inst.n; ++j) s.work2[N - 1 - j] = (xr >> j) & 1;
    s.lt = 1;
    s.lq = 0;
    s.lrp = bitlen(xr);
    s.ls = 0;
    return s;
}

namespace {

// Highest nonzero physical position (1-based) of the t' integer part, 0 if none.
int t_field_top(const MachineState& s) {
    int top = 0;
    for (int i : t_window(s))
        if (s.work2[i]) top = i + 1;
    return top;
}

}  // namespace

MachineState step(const MachineState& in, StepOperands* ops) {
    MachineState s = in;
    const int N = s.width();
    // pre-shift
    if (!s.phase1) {
        rotate_left(s.work2, 1);
        s.ls += 1;
    }
    if (!s.phase1 && s.phase2) {
        rotate_right(s.work2, 2);
        s.ls -= 2;
    }
    // block 1: r arithmetic
    if (ops && !s.phase1 && s.lrp > 0) ops->r = {true, s.lt + s.lq + 2, N - s.ls};
    if (!s.phase1 && s.lrp > 0) s.sign ^= sub_at(s.work1, s.work2, r_window(s));
    if (!s.phase1 && s.phase2) s.sign ^= 1;
    if (!s.phase1 && s.lrp > 0 && !(s.phase2 && s.sign)) add_at(s.work1, s.work2, r_window(s));
    // block 2: quotient bit placement
    if (!s.phase1 && s.phase2) {
        s.lq += 1;
        if (ops) ops->swap = {true, s.lt + s.lq + 1, s.lt + s.lq + 1};
        std::swap(s.sign, s.work1[s.lt + s.lq]);
    } else if (s.phase1 && !s.phase2) {
        if (ops) ops->swap = {true, s.lt + s.lq + 1, s.lt + s.lq + 1};
        std::swap(s.sign, s.work1[s.lt + s.lq]);
        s.lq -= 1;
    }
    // block 3: t arithmetic
    int t_top = s.phase1 ? t_field_top(s) : 0;
    if (s.phase1 && (s.phase2 || !s.sign)) sub_at(s.work2, t_operand(s), t_window(s));
    if (s.phase1) s.sign ^= 1;
    if (s.phase1) s.sign ^= add_at(s.work2, t_operand(s), t_window(s));
    if (ops && s.phase1)
        ops->t = {true, 1, std::max({s.lt + 1, t_top, t_field_top(s)})};
    // post-shift
    if (s.phase1) {
        rotate_left(s.work2, 1);
        s.ls += 1;
    }
    if (s.phase1 && s.phase2) {
        rotate_right(s.work2, 2);
        s.ls -= 2;
    }
    // phase update
    if (s.lq == 0 && s.lrp > 0) {
        s.phase2 ^= s.sign ^ s.phase1;
        s.sign ^= s.phase2;
    }
    if (s.ls == 0) {
        s.phase1 ^= 1;
        s.phase2 ^= 1;
    }
    // end of iteration
    if (s.lq == 0 && s.ls == 0) {
        int lt_old = s.lt, lrp_old = s.lrp;
        std::swap(s.work1, s.work2);
        s.lt = new_lt(s, lrp_old);
        s.lrp = new_lrp(s, lt_old);
        s.iter ^= 1;
        if (ops) {
            ops->lt_update = {true, lt_old, N - lrp_old};
            ops->lrp_update = {true, s.lt + 2, N + 1 - s.lrp};
        }
    }
    return s;
}

MachineState step_inverse(const MachineState& in) {
    MachineState s = in;
    if (s.lq == 0 && s.ls == 0) {
        s.iter ^= 1;
        int lt_old = bitlen(s.t_prime());
        int lrp_old = bitlen(s.r());
        std::swap(s.work1, s.work2);
        s.lt = lt_old;
        s.lrp = lrp_old;
    }
    if (s.ls == 0) {
        s.phase1 ^= 1;
        s.phase2 ^= 1;
    }
    if (s.lq == 0 && s.lrp > 0) {
        s.sign ^= s.phase2;
        s.phase2 ^= s.sign ^ s.phase1;
    }
    if (s.phase1 && s.phase2) {
        rotate_left(s.work2, 2);
        s.ls += 2;
    }
    if (s.phase1) {
        rotate_right(s.work2, 1);
        s.ls -= 1;
    }
    if (s.phase1) s.sign ^= sub_at(s.work2, t_operand(s), t_window(s));
    if (s.phase1) s.sign ^= 1;
    if (s.phase1 && (s.phase2 || !s.sign)) add_at(s.work2, t_operand(s), t_window(s));
    if (!s.phase1 && s.phase2) {
        std::swap(s.sign, s.work1[s.lt + s.lq]);
        s.lq -= 1;
    } else if (s.phase1 && !s.phase2) {
        s.lq += 1;
        std::swap(s.sign, s.work1[s.lt + s.lq]);
    }
    if (!s.phase1 && s.lrp > 0 && !(s.phase2 && s.sign)) sub_at(s.work1, s.work2, r_window(s));
    if (!s.phase1 && s.phase2) s.sign ^= 1;
    if (!s.phase1 && s.lrp > 0) s.sign ^= add_at(s.work1, s.work2, r_window(s));
    if (!s.phase1 && s.phase2) {
        rotate_left(s.work2, 2);
        s.ls += 2;
    }
    if (!s.phase1) {
        rotate_right(s.work2, 1);
        s.ls -= 1;
    }
    return s;
}

std::string check_state(const MachineState& s) {
    const int N = s.width();
    std::ostringstream err;
    if (s.lt < 1 || s.lt > s.n) err << "lt out of range; ";
    if (s.lq < 0 || s.lq > s.n) err << "lq out of range; ";
    if (s.lrp < 0 || s.lrp > s.n) err << "lrp out of range; ";
    if (s.ls < 0) err << "ls negative; ";
    if (s.lt + 1 + s.lq > N) err << "t and q overflow work1; ";
    if (s.work1[s.lt] != 0) err << "appended zero of t is set; ";
    if (s.lrp > 0) {
        if (s.ls > N) err << "ls exceeds width; ";
        if (s.lt + s.lq + 1 > N - s.ls - 1) err << "r window empty; ";
        // r' must sit inside the r window, clear of t and q
        if (N - s.ls - s.lrp < s.lt + s.lq + 1) err << "r' overlaps t/q; ";
    }
    return err.str();
}

EEATrace eea_trace(const ProblemInstance& inst) {
    uint64_t xr = 2 * inst.x > inst.p ? inst.p - inst.x : inst.x;
    EEATrace tr;
    tr.quotients = euclid_quotients(inst.p, xr);
    tr.k = static_cast<int>(tr.quotients.size()) + 1;
    for (uint64_t q : tr.quotients) {
        tr.b.push_back(floor_log2(q));
        tr.N += 4 * (tr.b.back() + 1);
    }
    return tr;
}

int active_step_count(const ProblemInstance& inst) { return eea_trace(inst).N; }

int active_step_count(uint64_t a, uint64_t x) {
    uint64_t xr = 2 * x > a ? a - x : x;
    int N = 0;
    for (uint64_t q : euclid_quotients(a, xr)) N += 4 * (floor_log2(q) + 1);
    return N;
}

uint64_t run_inversion(const ProblemInstance& inst, int steps) {
    const MachineState s0 = init_state(inst);
    if (steps <= 0) steps = static_cast<int>(schedule_steps(inst.n));
    MachineState s = s0;
    for (int T = 0; T < steps; ++T) s = step(s);
    uint64_t out = s.t_prime();
    if (!s.iter) out = inst.p - out;
    for (int T = 0; T < steps; ++T) s = step_inverse(s);
    if (!(s == s0)) throw std::logic_error("run_inversion: backward loop did not restore the initial state");
    return out;
}

std::string bits_string(const Bits& b) {
    std::string out;
    for (uint8_t v : b) out.push_back(v ? '1' : '0');
    return out;
}

StepTrace trace_row(const MachineState& s, int T) {
    StepTrace row;
    row.T = T;
    const int N = s.width();
    if (s.lrp == 0) {
        row.work1 = row.work2 = "Terminated";
    } else {
        std::string w1 = bits_string(s.work1);
        row.work1 = w1.substr(0, s.lt + 1) + "|" + w1.substr(s.lt + 1, s.lq) + "|" + w1.substr(s.lt + 1 + s.lq);
        std::string w2 = bits_string(s.work2);
        int a = N - s.lrp - s.ls;
        row.work2 = w2.substr(0, a) + "|" + w2.substr(a, s.lrp) + "|" + w2.substr(a + s.lrp);
    }
    row.t = s.t();
    row.q = s.q();
    row.r = s.r();
    row.t_prime = s.t_prime();
    row.r_prime = s.r_prime();
    row.lt = s.lt;
    row.lq = s.lq;
    row.lrp = s.lrp;
    row.ls = s.ls;
    row.phase1 = s.phase1;
    row.phase2 = s.phase2;
    row.iter = s.iter;
    row.sign = s.sign;
    return row;
}

std::vector<StepTrace> classical_trace(const ProblemInstance& inst) {
    std::vector<StepTrace> rows;
    MachineState s = init_state(inst);
    const int steps = static_cast<int>(schedule_steps(inst.n));
    rows.push_back(trace_row(s, 0));
    for (int T = 1; T <= steps; ++T) {
        s = step(s);
        rows.push_back(trace_row(s, T));
    }
    return rows;
}

std::string trace_tsv(const std::vector<StepTrace>& rows) {
    std::ostringstream out;
    out << "step\twork1\twork2\tt\tq\tr\tt_prime\tr_prime\tlt\tlq\tlrp\tls\tphase1\tphase2\titer\tsign\n";
    for (const auto& r : rows) {
        out << r.T << '\t' << r.work1 << '\t' << r.work2 << '\t' << r.t << '\t' << r.q << '\t' << r.r << '\t'
            << r.t_prime << '\t' << r.r_prime << '\t' << r.lt << '\t' << r.lq << '\t' << r.lrp << '\t' << r.ls
            << '\t' << r.phase1 << '\t' << r.phase2 << '\t' << r.iter << '\t' << r.sign << '\n';
    }
    return out.str();
}

}  // namespace eea
