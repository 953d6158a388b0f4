#include "eea/schedule.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <utility>

#include "eea/numeric.hpp"

namespace eea {

ActiveWindow active_windows(int n, int T, bool beyond_schedule) {
    if (T < 1 || (!beyond_schedule && T > schedule_steps(n)))
        throw std::out_of_range("active_windows: T out of schedule");
    auto c = [](int64_t A, int64_t a, int64_t b) { return static_cast<int>(ceil_over_c(A, a, b)); };
    ActiveWindow w;
    w.T = T;
    w.k[0] = std::max(c(T - n - 2, 4, 1), 1) + 2;
    w.K[0] = n + 3;
    w.k[1] = std::max(c(T - 3 * (n + 2), 4, 3), 1) + 1;
    w.K[1] = std::min(T / 2 + 2, n + 2);
    w.k[2] = 1;
    w.K[2] = std::min((T + 3) / 4 + 1, n + 1);
    w.k[3] = std::max(c(T - 4 * (n + 2), 4, 4), 1);
    w.K[3] = std::min(T / 4 + 3, n + 3);
    w.k[4] = c(T, 4, 0);
    w.K[4] = std::min(T / 4 + 4, n + 3);
    return w;
}

namespace {

using Pair = std::pair<mpz_class, mpz_class>;  // (t_{j-1}, t_j)

void pareto(std::vector<Pair>& v) {
    std::sort(v.begin(), v.end());
    std::vector<Pair> out;
    for (auto& e : v)
        if (out.empty() || e.second < out.back().second) out.push_back(std::move(e));
    v.swap(out);
}

int bits(const mpz_class& v) { return v == 0 ? 0 : static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

}  // namespace

GrowthBounds growth_bounds(int n) {
    if (n < 2) throw std::domain_error("growth_bounds: n < 2");
    const mpz_class limit = mpz_class(1) << (n + 2);
    const mpz_class pmax = mpz_class(1) << n;
    const int wmax = 2 * n + 8;
    std::vector<std::vector<Pair>> front(wmax + 1);
    front[0].push_back({0, 1});
    std::vector<int> tlen(wmax + 1, INT_MAX);
    tlen[0] = 1;
    GrowthBounds g;
    g.n = n;
    for (int W = 1; W <= wmax; ++W) {
        std::vector<Pair> cand;
        for (int w = 1; w <= W && w <= n + 2; ++w) {
            const int b = w - 1;
            if (W == w && b == 0) continue;  // first quotient is at least 2
            for (const auto& [a, t] : front[W - w]) {
                mpz_class next = a + (t << b);
                if (next >= limit) continue;
                // A run may end on this quotient iff it is at least 2.
                if (b >= 1 && next < pmax) g.max_weight = std::max(g.max_weight, W);
                cand.push_back({t, std::move(next)});
            }
        }
        pareto(cand);
        for (const auto& e : cand) tlen[W] = std::min(tlen[W], bits(e.second));
        front[W] = std::move(cand);
    }
    g.min_tlen.assign(wmax + 2, n + 3);
    for (int W = wmax; W >= 0; --W) g.min_tlen[W] = std::min({g.min_tlen[W + 1], tlen[W], n + 3});
    return g;
}

ActiveWindow sound_windows(const GrowthBounds& g, int T) {
    const int n = g.n;
    if (T < 1 || T > 4 * g.max_weight) throw std::out_of_range("sound_windows: T out of schedule");
    auto L = [&](int W) { return W < static_cast<int>(g.min_tlen.size()) ? g.min_tlen[W] : n + 3; };
    ActiveWindow w = active_windows(n, T, true);
    std::array<int, 5> lo;
    lo.fill(INT_MAX);
    lo[2] = 1;
    // Step T is step u of iteration j, T = 4W + u with W the weight before j,
    // b = floor(log2 q_j), 1 <= u <= 4(b+1), and l_t + b <= n since t_{j+1} <= p.
    for (int W = 0; 4 * W < T; ++W) {
        const int u = T - 4 * W;
        const int lt = L(W);
        if (lt > W + 1) continue;
        for (int b = std::max(0, (u - 1) / 4); lt + b <= n; ++b) {
            const int ph = (u - 1) / (b + 1);
            const int k = (u - 1) % (b + 1);
            if (ph == 0) lo[0] = std::min(lo[0], lt + 2);
            if (ph == 1) {
                lo[0] = std::min(lo[0], lt + k + 2);
                lo[1] = std::min(lo[1], lt + k + 2);
            }
            if (ph == 2) lo[1] = std::min(lo[1], lt + b + 2 - k);
            if (u == 4 * (b + 1)) {
                lo[3] = std::min(lo[3], lt);
                lo[4] = std::min(lo[4], L(W + b + 1) + 2);
            }
        }
    }
    // The new r' = r_{j+1} has no lower bound from the quotients up to step T,
    // so its leading position may reach the end of the register.
    w.K[4] = n + 3;
    for (int i = 0; i < 5; ++i) w.k[i] = lo[i] == INT_MAX ? w.K[i] + 1 : lo[i];
    return w;
}

StepSchedule step_schedule(int n, WindowRule rule) {
    StepSchedule s;
    s.n = n;
    s.rule = rule;
    if (rule == WindowRule::closed_form) {
        s.steps = static_cast<int>(schedule_steps(n));
        for (int T = 1; T <= s.steps; ++T) s.windows.push_back(active_windows(n, T));
    } else {
        GrowthBounds g = growth_bounds(n);
        s.steps = 4 * g.max_weight;
        for (int T = 1; T <= s.steps; ++T) s.windows.push_back(sound_windows(g, T));
    }
    return s;
}

}  // namespace eea
