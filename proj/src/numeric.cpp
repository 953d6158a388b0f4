#include "eea/numeric.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace eea {

double golden_c() {
    static const double c = 1.0 / std::log2((1.0 + std::sqrt(5.0)) / 2.0);
    return c;
}

int bitlen(uint64_t v) {
    int b = 0;
    while (v) {
        ++b;
        v >>= 1;
    }
    return b;
}

int floor_log2(uint64_t v) {
    if (v == 0) throw std::domain_error("floor_log2(0)");
    return bitlen(v) - 1;
}

bool is_prime(uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

std::optional<uint64_t> egcd_inverse(uint64_t x, uint64_t p) {
    int64_t r0 = static_cast<int64_t>(p), r1 = static_cast<int64_t>(x % p);
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) return std::nullopt;
    int64_t m = static_cast<int64_t>(p);
    return static_cast<uint64_t>(((s0 % m) + m) % m);
}

uint64_t fibonacci(int k) {
    uint64_t a = 0, b = 1;
    for (int i = 0; i < k; ++i) {
        uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<uint64_t> euclid_quotients(uint64_t a, uint64_t b) {
    std::vector<uint64_t> q;
    while (b != 0) {
        q.push_back(a / b);
        uint64_t r = a % b;
        a = b;
        b = r;
    }
    return q;
}

namespace {

// 2^a >= phi^b for a, b >= 1. Equality is impossible since phi^b is irrational.
bool pow2_at_least_phi_pow(int64_t a, int64_t b) {
    mpz_class lhs = 1;
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(a + 1));
    mpz_class lucas, fib;
    mpz_lucnum_ui(lucas.get_mpz_t(), static_cast<unsigned long>(b));
    mpz_fib_ui(fib.get_mpz_t(), static_cast<unsigned long>(b));
    lhs -= lucas;
    if (lhs < 0) return false;
    return lhs * lhs >= 5 * fib * fib;
}

}  // namespace

bool exceeds_phi_scaled(int64_t e1, int64_t e2) {
    if (e2 == 0) return e1 >= 0;
    if (e2 > 0) {
        if (e1 <= 0) return false;
        return pow2_at_least_phi_pow(e1, e2);
    }
    // e1 >= e2*lambda  <=>  -e1 <= (-e2)*lambda
    if (-e1 <= 0) return true;
    return !pow2_at_least_phi_pow(-e1, -e2);
}

int64_t ceil_over_c(int64_t A, int64_t a, int64_t b) {
    const long double c = 1.0L / std::log2((1.0L + std::sqrt(5.0L)) / 2.0L);
    const long double denom = a * c - b;
    if (!(denom > 0)) throw std::domain_error("ceil_over_c: nonpositive denominator");
    auto ok = [&](int64_t m) { return exceeds_phi_scaled(m * a, A + b * m); };
    int64_t m = static_cast<int64_t>(std::ceil(A / denom));
    while (!ok(m)) ++m;
    while (ok(m - 1)) --m;
    return m;
}

int64_t ceil_c_times(int64_t n) {
    // m >= c*n  <=>  m*log2(phi) >= n
    auto ok = [&](int64_t m) { return exceeds_phi_scaled(-n, -m); };
    int64_t m = static_cast<int64_t>(std::ceil(golden_c() * static_cast<double>(n)));
    while (!ok(m)) ++m;
    while (ok(m - 1)) --m;
    return m;
}

int64_t schedule_steps(int n) { return 4 * ceil_c_times(n); }

}  // namespace eea
