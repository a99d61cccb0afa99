#include "ilab/number.hpp"

#include <numeric>

#include "ilab/errors.hpp"

namespace ilab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

bool is_odd_prime(std::int64_t n) { return n != 2 && is_prime(n); }

bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  auto f = prime_factors(q);
  return f.size() == 1;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  std::int64_t b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return result;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorKind::DivisionByZero,
                std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return mod(old_s, m);
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p = 2
}

std::int64_t smallest_nonresidue(std::int64_t p) {
  for (std::int64_t a = 2; a < p; ++a) {
    if (mod_pow(a, (p - 1) / 2, p) == p - 1) return a;
  }
  throw Error(ErrorKind::InvariantViolation, "no non-residue mod " + std::to_string(p));
}

bool is_projective_prime(std::int64_t p) {
  for (std::int64_t q = 2; q < p; ++q) {
    if (!is_prime_power(q)) continue;
    // 1 + q + ... + q^(n-1) for n >= 2
    std::int64_t sum = 1 + q;
    while (sum < p) sum = sum * q + 1;
    if (sum == p) return true;
  }
  return false;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

namespace {
void partitions_rec(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> partitions(int n, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, max_part, cur, out);
  return out;
}

}  // namespace ilab
