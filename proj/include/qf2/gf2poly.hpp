// Sparse multivariate polynomials and rational functions over GF(2).
//
// A polynomial is a set of monomials (all nonzero coefficients are 1), so
// addition is symmetric difference.  Over GF(2) the Frobenius is additive,
// which the rest of the library leans on heavily: p^2 just doubles every
// exponent, and a polynomial is a perfect square iff every exponent is even.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf2 {

// Exponents are capped well below overflow; hitting the cap is a hard error
// rather than silent wraparound.
inline constexpr unsigned kMaxExponent = 1u << 30;

inline unsigned checked_exp_add(unsigned a, unsigned b) {
  unsigned s = a + b;
  if (s > kMaxExponent || s < a)
    throw std::overflow_error("monomial exponent overflow");
  return s;
}

// A monomial: sorted (variable, exponent>0) pairs.  Variables are small
// integer ids; names live in the field tower that owns them.
struct Monomial {
  std::vector<std::pair<int, unsigned>> factors;

  static Monomial one() { return {}; }
  static Monomial var(int v, unsigned e = 1) {
    Monomial m;
    if (e) m.factors.push_back({v, e});
    return m;
  }

  bool is_one() const { return factors.empty(); }
  unsigned degree_of(int v) const {
    for (auto& f : factors)
      if (f.first == v) return f.second;
    return 0;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& f : factors) d += f.second;
    return d;
  }
  int max_var() const {
    int m = -1;
    for (auto& f : factors) m = std::max(m, f.first);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    auto a = factors.begin(), b = o.factors.begin();
    while (a != factors.end() || b != o.factors.end()) {
      if (b == o.factors.end() || (a != factors.end() && a->first < b->first))
        r.factors.push_back(*a++);
      else if (a == factors.end() || b->first < a->first)
        r.factors.push_back(*b++);
      else {
        r.factors.push_back({a->first, checked_exp_add(a->second, b->second)});
        ++a, ++b;
      }
    }
    return r;
  }

  // Componentwise min, used for content stripping.
  Monomial gcd(const Monomial& o) const {
    Monomial r;
    for (auto& f : factors) {
      unsigned e = std::min(f.second, o.degree_of(f.first));
      if (e) r.factors.push_back({f.first, e});
    }
    return r;
  }

  // Requires d | *this.
  Monomial divide(const Monomial& d) const {
    Monomial r;
    for (auto& f : factors) {
      unsigned e = d.degree_of(f.first);
      if (e > f.second) throw std::logic_error("monomial division");
      if (f.second - e) r.factors.push_back({f.first, f.second - e});
    }
    return r;
  }

  Monomial square() const {
    Monomial r = *this;
    for (auto& f : r.factors) f.second = checked_exp_add(f.second, f.second);
    return r;
  }
  bool all_even() const {
    for (auto& f : factors)
      if (f.second & 1) return false;
    return true;
  }
  Monomial halve() const {  // requires all_even()
    Monomial r = *this;
    for (auto& f : r.factors) f.second >>= 1;
    return r;
  }
  // Split into (parity part, halved even part): m = even.square() * odd.
  std::pair<Monomial, Monomial> parity_split() const {
    Monomial odd, even;
    for (auto& f : factors) {
      if (f.second & 1) odd.factors.push_back({f.first, 1});
      if (f.second >> 1) even.factors.push_back({f.first, f.second >> 1});
    }
    return {odd, even};
  }

  auto operator<=>(const Monomial&) const = default;
};

struct Gf2Poly {
  // Sorted, duplicate-free: set of monomials.
  std::vector<Monomial> terms;

  static Gf2Poly zero() { return {}; }
  static Gf2Poly one() { return from(Monomial::one()); }
  static Gf2Poly var(int v, unsigned e = 1) { return from(Monomial::var(v, e)); }
  static Gf2Poly from(Monomial m) {
    Gf2Poly p;
    p.terms.push_back(std::move(m));
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_one() const { return terms.size() == 1 && terms[0].is_one(); }
  bool is_monomial() const { return terms.size() == 1; }
  int max_var() const {
    int m = -1;
    for (auto& t : terms) m = std::max(m, t.max_var());
    return m;
  }

  Gf2Poly operator+(const Gf2Poly& o) const {
    Gf2Poly r;
    std::set_symmetric_difference(terms.begin(), terms.end(), o.terms.begin(),
                                  o.terms.end(), std::back_inserter(r.terms));
    return r;
  }

  Gf2Poly operator*(const Gf2Poly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    // Accumulate into a map; GF(2) coefficients cancel in pairs.
    std::map<Monomial, bool> acc;
    for (auto& a : terms)
      for (auto& b : o.terms) {
        Monomial m = a * b;
        auto [it, fresh] = acc.try_emplace(std::move(m), true);
        if (!fresh) it->second = !it->second;
      }
    Gf2Poly r;
    for (auto& [m, on] : acc)
      if (on) r.terms.push_back(m);
    return r;
  }

  Gf2Poly square() const {
    Gf2Poly r;
    r.terms.reserve(terms.size());
    for (auto& t : terms) r.terms.push_back(t.square());
    return r;  // squaring preserves monomial order
  }

  // Exact square root if this is a perfect square (all exponents even —
  // sufficient over GF(2) since squaring is a ring homomorphism).
  std::optional<Gf2Poly> sqrt() const {
    Gf2Poly r;
    r.terms.reserve(terms.size());
    for (auto& t : terms) {
      if (!t.all_even()) return std::nullopt;
      r.terms.push_back(t.halve());
    }
    return r;
  }

  // GCD of all monomials (the monomial content).
  Monomial content() const {
    if (terms.empty()) return Monomial::one();
    Monomial c = terms[0];
    for (size_t i = 1; i < terms.size() && !c.is_one(); ++i) c = c.gcd(terms[i]);
    return c;
  }
  Gf2Poly divide_monomial(const Monomial& m) const {
    Gf2Poly r;
    r.terms.reserve(terms.size());
    for (auto& t : terms) r.terms.push_back(t.divide(m));
    // dividing shifts variables out of some terms, which is not monotone in
    // the lex order on factor lists
    std::sort(r.terms.begin(), r.terms.end());
    return r;
  }

  auto operator<=>(const Gf2Poly&) const = default;
};

// Rational function num/den over GF(2).  Denominators are only ever reduced
// by monomial-content stripping; full gcd reduction is not required for
// correctness anywhere (equality tests cross-multiply), and the F^2-linear
// algebra built on top is invariant under scaling by nonzero squares.
struct Gf2RatFn {
  Gf2Poly num, den;  // den nonzero

  Gf2RatFn() : num(Gf2Poly::zero()), den(Gf2Poly::one()) {}
  Gf2RatFn(Gf2Poly n, Gf2Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    normalize();
  }
  static Gf2RatFn zero() { return {}; }
  static Gf2RatFn one() { return {Gf2Poly::one(), Gf2Poly::one()}; }
  static Gf2RatFn var(int v) { return {Gf2Poly::var(v), Gf2Poly::one()}; }
  static Gf2RatFn poly(Gf2Poly p) { return {std::move(p), Gf2Poly::one()}; }

  void normalize() {
    if (num.is_zero()) {
      den = Gf2Poly::one();
      return;
    }
    Monomial c = num.content().gcd(den.content());
    if (!c.is_one()) {
      num = num.divide_monomial(c);
      den = den.divide_monomial(c);
    }
    if (num == den) num = den = Gf2Poly::one();
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return !num.is_zero() && num == den; }

  Gf2RatFn operator+(const Gf2RatFn& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den == o.den) return {num + o.num, den};
    return {num * o.den + o.num * den, den * o.den};
  }
  Gf2RatFn operator*(const Gf2RatFn& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return {num * o.num, den * o.den};
  }
  Gf2RatFn inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return {den, num};
  }
  Gf2RatFn square() const {
    Gf2RatFn r;
    r.num = num.square();
    r.den = den.square();
    return r;
  }
  std::optional<Gf2RatFn> sqrt() const {
    if (is_zero()) return zero();
    // num/den = num*den / den^2, so a square root exists iff num*den is a
    // perfect square polynomial.
    auto s = (num * den).sqrt();
    if (!s) return std::nullopt;
    return Gf2RatFn{*s, den};
  }

  bool operator==(const Gf2RatFn& o) const {
    if (den == o.den) return num == o.num;
    return num * o.den == o.num * den;
  }
};

}  // namespace qf2
