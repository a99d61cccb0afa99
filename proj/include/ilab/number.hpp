#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace ilab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

bool is_prime(std::int64_t n);
bool is_odd_prime(std::int64_t n);
bool is_prime_power(std::int64_t q);

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m);
// Throws DivisionByZero when a is not invertible mod m.
std::int64_t mod_inv(std::int64_t a, std::int64_t m);

std::int64_t lcm(std::int64_t a, std::int64_t b);
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);

std::int64_t smallest_primitive_root(std::int64_t p);
std::int64_t smallest_nonresidue(std::int64_t p);

// p = (q^n - 1)/(q - 1) for a prime power q and n >= 2.
bool is_projective_prime(std::int64_t p);

BigInt factorial(int n);

// Integer partitions of n in non-increasing order, parts <= max_part.
std::vector<std::vector<int>> partitions(int n, int max_part);

}  // namespace ilab
