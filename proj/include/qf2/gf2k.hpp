// GF(2^k) arithmetic for the randomized (Schwartz–Zippel) linear-algebra
// fast path.  Carry-less shift/xor multiply against a fixed low-weight
// irreducible; square roots come for free from the Frobenius (x -> x^2 is a
// bijection, so sqrt(x) = x^(2^(k-1))), which is what lets a specialization
// point be pushed through sqrt-extensions of the tower unconditionally.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace qf2 {

class Gf2kField {
 public:
  explicit Gf2kField(int k) : k_(k), mod_(modulus_for(k)) {}

  int k() const { return k_; }
  uint64_t mask() const { return k_ == 64 ? ~0ull : (1ull << k_) - 1; }

  uint64_t mul(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      // shift a, reducing the bit that falls off the top
      bool hi = (k_ == 64) ? (a >> 63) & 1 : (a >> (k_ - 1)) & 1;
      a = (a << 1) & mask();
      if (hi) a ^= mod_;
    }
    return r;
  }
  uint64_t sq(uint64_t a) const { return mul(a, a); }

  uint64_t pow(uint64_t a, __uint128_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = sq(a);
      e >>= 1;
    }
    return r;
  }

  uint64_t inv(uint64_t a) const {
    if (!a) throw std::domain_error("GF(2^k) inverse of zero");
    // a^(2^k - 2)
    return pow(a, ((__uint128_t(1) << k_) - 2));
  }

  uint64_t sqrt(uint64_t a) const {
    for (int i = 0; i < k_ - 1; ++i) a = sq(a);
    return a;
  }

 private:
  // Reduction bits (the irreducible minus its leading x^k term), from the
  // standard low-weight irreducible tables.
  static uint64_t modulus_for(int k) {
    switch (k) {
      case 1: return 0x1;            // x + 1
      case 2: return 0x3;            // x^2 + x + 1
      case 3: return 0x3;            // x^3 + x + 1
      case 4: return 0x3;            // x^4 + x + 1
      case 8: return 0x1b;           // x^8 + x^4 + x^3 + x + 1
      case 16: return 0x2b;          // x^16 + x^5 + x^3 + x + 1
      case 32: return 0x8d;          // x^32 + x^7 + x^3 + x^2 + 1
      case 64: return 0x1b;          // x^64 + x^4 + x^3 + x + 1
      default:
        throw std::invalid_argument("unsupported GF(2^k) size");
    }
  }

  int k_;
  uint64_t mod_;
};

}  // namespace qf2
