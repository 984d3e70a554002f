#pragma once

// Integer-coefficient Laurent polynomials in u, v, w, kept in canonical
// form (no zero coefficients, terms ordered lexicographically on the
// exponent triple). Equality is structural equality of canonical forms.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "flopcone/numeric.hpp"

namespace flopcone {

using Expo = std::array<std::int64_t, 3>;

class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }

  static LaurentPoly constant(Int c) {
    LaurentPoly p;
    if (c != 0) p.terms_[{0, 0, 0}] = std::move(c);
    return p;
  }

  static LaurentPoly monomial(Int coeff, Expo e) {
    LaurentPoly p;
    if (coeff != 0) p.terms_[e] = std::move(coeff);
    return p;
  }

  const std::map<Expo, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }

  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }

  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  LaurentPoly pow(std::int64_t k) const {
    if (k < 0) throw std::invalid_argument("negative power of a polynomial");
    LaurentPoly r = constant(1);
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  // Exact division by (1+u) in the Laurent ring; nullopt when not divisible.
  std::optional<LaurentPoly> divide_by_one_plus_u() const {
    // Work term by term from the lowest u-degree upward within each fixed
    // (v,w) exponent pair: if p = (1+u) q then q's coefficients follow by
    // a telescoping recursion.
    std::map<std::array<std::int64_t, 2>, std::map<std::int64_t, Int>> cols;
    for (const auto& [e, c] : terms_) cols[{e[1], e[2]}][e[0]] = c;
    LaurentPoly q;
    for (const auto& [vw, col] : cols) {
      std::int64_t lo = col.begin()->first;
      std::int64_t hi = col.rbegin()->first;
      Int carry = 0;
      for (std::int64_t d = lo; d <= hi; ++d) {
        auto it = col.find(d);
        Int cd = it == col.end() ? Int(0) : it->second;
        Int qd = cd - carry;
        if (qd != 0) q.terms_[{d, vw[0], vw[1]}] = qd;
        carry = qd;
      }
      if (carry != 0) return std::nullopt;  // remainder left over
    }
    return q;
  }

  // Grammar: terms in ascending lex order on (u,v,w) exponents, explicit
  // coefficients, exponents written as u^2*v*w^-1.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Int a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string vars = vars_str(e);
      if (vars.empty()) {
        os << a.get_str();
      } else {
        os << a.get_str() << "*" << vars;
      }
    }
    return os.str();
  }

 private:
  static std::string vars_str(const Expo& e) {
    static const char* names[3] = {"u", "v", "w"};
    std::string s;
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names[i];
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  void add_term(const Expo& e, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Expo, Int> terms_;
};

inline LaurentPoly u_mono() { return LaurentPoly::monomial(1, {1, 0, 0}); }
inline LaurentPoly v_mono() { return LaurentPoly::monomial(1, {0, 1, 0}); }
inline LaurentPoly w_mono() { return LaurentPoly::monomial(1, {0, 0, 1}); }
inline LaurentPoly one_plus_u() {
  return LaurentPoly::constant(1) + u_mono();
}

// num / (1+u)^k with k >= 0, kept reduced: wall crossing is the only
// source of denominators and every denominator is a power of 1+u.
struct FormalFraction {
  LaurentPoly num;
  std::int64_t k = 0;

  FormalFraction() = default;
  FormalFraction(LaurentPoly n, std::int64_t kk) : num(std::move(n)), k(kk) {
    reduce();
  }

  bool is_polynomial() const { return k == 0; }

  void reduce() {
    while (k > 0) {
      auto q = num.divide_by_one_plus_u();
      if (!q) break;
      num = *q;
      --k;
    }
    if (num.is_zero()) k = 0;
  }

  friend FormalFraction operator*(const FormalFraction& a,
                                  const FormalFraction& b) {
    return FormalFraction(a.num * b.num, a.k + b.k);
  }

  friend bool operator==(const FormalFraction& a, const FormalFraction& b) {
    // Reduced forms are unique: cross-multiply to be safe.
    return a.num * one_plus_u().pow(b.k) == b.num * one_plus_u().pow(a.k);
  }
};

// Polynomials with integer coefficients in the theta variables
// th1..th_{n+3}; exponent vectors are dense and sized to the variable
// count. Used to hold the mirror matrix entries and its minors before
// substitution.
class ThetaPoly {
 public:
  explicit ThetaPoly(std::size_t nvars) : nvars_(nvars) {}

  static ThetaPoly zero(std::size_t nvars) { return ThetaPoly(nvars); }

  static ThetaPoly variable(std::size_t nvars, std::size_t i) {
    ThetaPoly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<std::vector<int>, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ThetaPoly& operator+=(const ThetaPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend ThetaPoly operator+(ThetaPoly a, const ThetaPoly& b) {
    a += b;
    return a;
  }

  friend ThetaPoly operator-(ThetaPoly a, const ThetaPoly& b) {
    a.check(b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }

  friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) {
    a.check(b);
    ThetaPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<int> e(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  // Substitute Laurent polynomials for the variables and expand.
  LaurentPoly eval(const std::vector<LaurentPoly>& values) const {
    if (values.size() != nvars_)
      throw std::invalid_argument("substitution arity mismatch");
    LaurentPoly out;
    for (const auto& [e, c] : terms_) {
      LaurentPoly t = LaurentPoly::constant(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= values[i];
      out += t;
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Int a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string vars;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "th" + std::to_string(i + 1);
        if (e[i] != 1) vars += "^" + std::to_string(e[i]);
      }
      if (vars.empty())
        os << a.get_str();
      else
        os << a.get_str() << "*" << vars;
    }
    return os.str();
  }

 private:
  void check(const ThetaPoly& o) const {
    if (o.nvars_ != nvars_)
      throw std::invalid_argument("theta variable count mismatch");
  }

  void add_term(const std::vector<int>& e, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_;
  std::map<std::vector<int>, Int> terms_;
};

}  // namespace flopcone
