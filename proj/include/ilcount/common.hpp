#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ilc {

// Arbitrary-precision scalars. Counts and activities overflow 64 bits
// quickly: twenty variables with domain size 64 already count to 64^20.
using BigInt = mpz_class;
using BigRational = mpq_class;

using VarId = int;
using RowId = int;

// Mathematical floor division: floor_div(-5, 2) == -3.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Mathematical ceiling division: ceil_div(-5, 2) == -2.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline BigInt positive_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Canonical byte encoding shared by cache keys and normalized row keys.
// An integer encodes as a sign byte (0 negative, 1 zero, 2 positive), a
// 4-byte big-endian magnitude length, then the magnitude bytes big-endian;
// concatenations of such encodings are injective.
void encode_u32(std::string& out, std::uint32_t v);
void encode_int(std::string& out, const BigInt& v);

}  // namespace ilc
