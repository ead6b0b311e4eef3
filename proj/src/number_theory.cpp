#include "spinform/number_theory.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinform {

namespace {

void require_exact_range(int genus) {
  if (genus < 1 || genus > kExactGenusMax)
    throw std::invalid_argument("genus " + std::to_string(genus) +
                                " outside exact range 1.." +
                                std::to_string(kExactGenusMax));
}

void require_odd_prime(uint64_t p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

}  // namespace

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out += static_cast<char>('0' + static_cast<unsigned>(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 value) {
  if (value < 0) return "-" + to_string(static_cast<u128>(-value));
  return to_string(static_cast<u128>(value));
}

ClassSums class_sums(int genus) {
  require_exact_range(genus);
  ClassSums out;
  out.genus = genus;
  const unsigned n = 2 * static_cast<unsigned>(genus);
  // Pascal-row iteration: C(n,k+1) = C(n,k) * (n-k) / (k+1), always exact.
  u128 binom = 1;
  for (unsigned k = 0; k <= n; ++k) {
    switch (k % 4) {
      case 0: out.a0 += binom; break;
      case 1: out.a1 += binom; break;
      case 2: out.a2 += binom; break;
      case 3: out.a3 += binom; break;
    }
    if (k < n) binom = binom * (n - k) / (k + 1);
  }
  return out;
}

bool closed_form_check(int genus) {
  ClassSums s = class_sums(genus);
  i128 re = static_cast<i128>(s.a0) - static_cast<i128>(s.a2);
  i128 im = static_cast<i128>(s.a1) - static_cast<i128>(s.a3);
  i128 pow = static_cast<i128>(u128{1} << genus);
  switch (genus % 4) {
    case 0: return re == pow && im == 0;
    case 1: return re == 0 && im == pow;
    case 2: return re == -pow && im == 0;
    case 3: return re == 0 && im == -pow;
  }
  return false;
}

u128 zero_count_prediction(int genus, unsigned orbit_constant) {
  if (orbit_constant > 1)
    throw std::invalid_argument("orbit constant must be 0 or 1");
  ClassSums s = class_sums(genus);
  return orbit_constant == 0 ? s.a0 + s.a1 : s.a0 + s.a3;
}

u128 bg_card(int genus) {
  require_exact_range(genus);
  return (u128{1} << (2 * genus - 1)) + (u128{1} << (genus - 1));
}

u128 ug_card(int genus) {
  require_exact_range(genus);
  return (u128{1} << (2 * genus - 1)) - (u128{1} << (genus - 1));
}

bool is_odd_prime(uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod) {
  if (mod == 0) throw std::invalid_argument("mod_pow: zero modulus");
  u128 acc = 1;
  u128 b = base % mod;
  while (exp) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<uint64_t>(acc);
}

bool divides_bg(uint64_t p, uint64_t genus) {
  require_odd_prime(p);
  if (genus < 1) throw std::invalid_argument("genus must be positive");
  return (mod_pow(2, genus, p) + 1) % p == 0;
}

bool divides_ug(uint64_t p, uint64_t genus) {
  require_odd_prime(p);
  if (genus < 1) throw std::invalid_argument("genus must be positive");
  return mod_pow(2, genus, p) == 1;
}

std::vector<uint64_t> primes_below(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit <= 2) return out;
  std::vector<bool> composite(limit, false);
  for (uint64_t n = 2; n < limit; ++n) {
    if (composite[n]) continue;
    out.push_back(n);
    for (uint64_t m = n * n; m < limit; m += n) composite[m] = true;
  }
  return out;
}

std::vector<uint64_t> primes_8k7(uint64_t limit) {
  if (limit < 7) throw std::invalid_argument("limit must be at least 7");
  std::vector<uint64_t> out;
  for (uint64_t p : primes_below(limit))
    if (p % 8 == 7) out.push_back(p);
  return out;
}

uint64_t multiplicative_order(uint64_t a, uint64_t p) {
  require_odd_prime(p);
  a %= p;
  if (a == 0) throw std::invalid_argument("order of 0 is undefined");

  // Factor p-1, then strip prime factors while the power stays 1.
  uint64_t n = p - 1;
  std::vector<uint64_t> factors;
  uint64_t rest = n;
  for (uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) factors.push_back(rest);

  uint64_t order = n;
  for (uint64_t q : factors)
    while (order % q == 0 && mod_pow(a, order / q, p) == 1) order /= q;
  return order;
}

bool never_divides_2g_plus_1(uint64_t p) {
  return multiplicative_order(2, p) % 2 == 1;
}

bool quadratic_residue(uint64_t a, uint64_t p) {
  require_odd_prime(p);
  if (a % p == 0)
    throw std::invalid_argument("quadratic_residue: a is divisible by p");
  return mod_pow(a, (p - 1) / 2, p) == 1;
}

PrimeVerdict prime_verdict(uint64_t p) {
  require_odd_prime(p);
  PrimeVerdict out;
  out.p = p;
  out.is_8k7 = (p % 8 == 7);
  out.order_of_two = multiplicative_order(2, p);
  out.never_divides_bg = (out.order_of_two % 2 == 1);
  return out;
}

}  // namespace spinform
