#include "eea/audit.hpp"

#include <map>
#include <sstream>

#include "eea/model.hpp"
#include "eea/numeric.hpp"

namespace eea {

uint64_t WindowAudit::total() const {
    uint64_t t = 0;
    for (uint64_t v : violations) t += v;
    return t;
}

WindowAudit audit_windows(uint64_t p_max, WindowRule rule) {
    WindowAudit a;
    std::map<int, StepSchedule> sound;
    for (uint64_t p = 5; p <= p_max; p += 2) {
        if (!is_prime(p)) continue;
        const int n = bitlen(p);
        auto it = sound.find(n);
        if (it == sound.end()) it = sound.emplace(n, step_schedule(n)).first;
        const StepSchedule& S = it->second;
        std::vector<ActiveWindow> wins;
        for (int T = 1; T <= S.steps; ++T)
            wins.push_back(rule == WindowRule::sound ? S.at(T) : active_windows(n, T, true));
        for (uint64_t x = 1; x < p; ++x) {
            MachineState s = init_state(ProblemInstance(p, x));
            for (int T = 1; T <= S.steps; ++T) {
                StepOperands o;
                s = step(s, &o);
                // once l_r' reaches zero the l_r' scan has nothing to count
                if (o.lrp_update.active && s.lrp == 0) o.lrp_update.hi = o.lrp_update.lo;
                const ActiveWindow& w = wins[T - 1];
                const Extent* ext[5] = {&o.r, &o.swap, &o.t, &o.lt_update, &o.lrp_update};
                for (int i = 0; i < 5; ++i) {
                    if (!ext[i]->active || (ext[i]->lo >= w.k[i] && ext[i]->hi <= w.K[i])) continue;
                    if (a.violations[i]++ < 3)
                        a.examples.push_back({p, x, T, i, ext[i]->lo, ext[i]->hi, w.k[i], w.K[i]});
                }
            }
            ++a.inputs;
        }
    }
    return a;
}

std::string describe(const WindowViolation& v) {
    std::ostringstream os;
    os << window_block_names[v.block] << " p=" << v.p << " x=" << v.x << " T=" << v.T << " operands ["
       << v.lo << "," << v.hi << "] window [" << v.k << "," << v.K << "]";
    return os.str();
}

}  // namespace eea
