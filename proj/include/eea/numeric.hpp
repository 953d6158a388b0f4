#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace eea {

// c = 1 / log2(golden ratio), the constant in the 4*ceil(c*n) step bound.
double golden_c();

int bitlen(uint64_t v);
int floor_log2(uint64_t v);
bool is_prime(uint64_t v);

// Modular inverse via the textbook extended Euclidean algorithm.
std::optional<uint64_t> egcd_inverse(uint64_t x, uint64_t p);

uint64_t fibonacci(int k);

// Quotients of the Euclidean algorithm on (a, b), a > b > 0.
std::vector<uint64_t> euclid_quotients(uint64_t a, uint64_t b);

// True iff e1 >= e2 * log2(phi), decided exactly with Lucas/Fibonacci
// integers: 2^a >= phi^b  <=>  2^(a+1) - L_b >= F_b * sqrt(5).
bool exceeds_phi_scaled(int64_t e1, int64_t e2);

// Smallest integer m with m * (a*c - b) >= A, where a*c - b > 0.
int64_t ceil_over_c(int64_t A, int64_t a, int64_t b);

// ceil(c * n)
int64_t ceil_c_times(int64_t n);

int64_t schedule_steps(int n);

}  // namespace eea
