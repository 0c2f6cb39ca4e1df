#pragma once

#include <cstdint>
#include <vector>

namespace picent::nt {

bool is_prime(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Least k >= 1 with a^k == 1 (mod m); requires gcd(a, m) == 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Least primitive root modulo a prime q.
std::uint64_t primitive_root(std::uint64_t q);

// Returns base^exp, or 0 when the result would exceed `limit`.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                          std::uint64_t limit);

// True when n = p^k for a prime p (k >= 1); p is written to *prime.
bool is_prime_power(std::uint64_t n, std::uint64_t* prime);

std::uint64_t isqrt(std::uint64_t n);

}  // namespace picent::nt
