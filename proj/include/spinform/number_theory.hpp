#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinform {

// Exact 128-bit integers keep every identity exact through g = 60
// (C(120,60) < 2^117). Larger genus is rejected, never approximated.
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr int kExactGenusMax = 60;

std::string to_string(u128 value);
std::string to_string(i128 value);

// Binomial sums A_i = sum of C(2g, k) over k = i mod 4.
struct ClassSums {
  int genus = 0;
  u128 a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  u128 total() const { return a0 + a1 + a2 + a3; }
};

ClassSums class_sums(int genus);

// A_0 - A_2 and A_1 - A_3 against the real/imaginary parts of (1+i)^(2g):
// (2^g, 0), (0, 2^g), (-2^g, 0), (0, -2^g) for g = 0,1,2,3 mod 4.
bool closed_form_check(int genus);

// A_0+A_1 zeros for the constant-0 orbit structure, A_0+A_3 for constant-1.
u128 zero_count_prediction(int genus, unsigned orbit_constant);

// |B_g| = 2^(2g-1) + 2^(g-1) and |U_g| = 2^(2g-1) - 2^(g-1).
u128 bg_card(int genus);
u128 ug_card(int genus);

bool is_odd_prime(uint64_t p);
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod);

// p | 2^(2g-1) + 2^(g-1), i.e. p | 2^g + 1 for odd p. Modular, any genus.
bool divides_bg(uint64_t p, uint64_t genus);
// p | 2^(2g-1) - 2^(g-1), i.e. p | 2^g - 1 for odd p.
bool divides_ug(uint64_t p, uint64_t genus);

std::vector<uint64_t> primes_below(uint64_t limit);
// Ascending primes p < limit with p = 7 mod 8.
std::vector<uint64_t> primes_8k7(uint64_t limit);

uint64_t multiplicative_order(uint64_t a, uint64_t p);

// True iff 2^g = -1 mod p has no solution, i.e. ord_p(2) is odd. Such p
// divides no |B_g| at all.
bool never_divides_2g_plus_1(uint64_t p);

// Euler criterion a^((p-1)/2) = 1 mod p.
bool quadratic_residue(uint64_t a, uint64_t p);

struct PrimeVerdict {
  uint64_t p = 0;
  bool is_8k7 = false;
  uint64_t order_of_two = 0;
  bool never_divides_bg = false;
};

PrimeVerdict prime_verdict(uint64_t p);

}  // namespace spinform
