#pragma once

// Theta functions on the mirror cluster variety, the wall-crossing
// automorphism attached to the single wall f_H = 1 + u, and the mirror
// singularity's determinantal ideal together with the symbolic identities
// that exhibit its generators.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flopcone/laurent.hpp"
#include "flopcone/trop_u.hpp"

namespace flopcone {

// theta_(a,b,c) = u^a v^b w^c               if b - nc <= 0
//              = u^a v^b w^c (1+u)^{b-nc}   if b - nc >= 0
// (both branches agree when b = nc).
inline LaurentPoly theta(const FlopConfig& cfg, const Vec3& p) {
  std::int64_t a = p(0).get_si();
  std::int64_t b = p(1).get_si();
  std::int64_t c = p(2).get_si();
  LaurentPoly mono = LaurentPoly::monomial(1, {a, b, c});
  std::int64_t e = b - std::int64_t(cfg.n) * c;
  if (e <= 0) return mono;
  return mono * one_plus_u().pow(e);
}

// theta_H(u^a v^b w^c) = u^a v^b w^c (1+u)^{-<(a,b,c),(0,-1,n)>}; the
// exponent is b - nc, so the image is a Laurent polynomial exactly when
// b - nc >= 0 and otherwise a formal fraction over (1+u)^{nc-b}.
inline FormalFraction wall_cross(const FlopConfig& cfg, const Vec3& m) {
  std::int64_t a = m(0).get_si();
  std::int64_t b = m(1).get_si();
  std::int64_t c = m(2).get_si();
  LaurentPoly mono = LaurentPoly::monomial(1, {a, b, c});
  std::int64_t e = b - std::int64_t(cfg.n) * c;
  if (e >= 0) return FormalFraction(mono * one_plus_u().pow(e), 0);
  return FormalFraction(mono, -e);
}

// The 2 x n mirror matrix in the variables th1..th_{n+3}:
//   ( th1+th2  th3  th4 ... th_{n+2} )
//   ( th1*th2  th4  th5 ... th_{n+3} )
// and its 2x2 minors, ordered by column pairs (i,j), i < j.
struct MirrorIdeal {
  int n = 1;
  std::size_t nvars = 4;                  // th1..th_{n+3}
  std::vector<ThetaPoly> row1, row2;      // n entries each
  std::vector<ThetaPoly> minors;          // n(n-1)/2 entries
  std::vector<std::pair<int, int>> minor_cols;
  int codimension = 1;                    // recorded from the presentation
};

inline MirrorIdeal mirror_ideal(int n) {
  if (n < 1) throw std::invalid_argument("mirror ideal requires n >= 1");
  MirrorIdeal mi;
  mi.n = n;
  mi.nvars = std::size_t(n) + 3;
  mi.codimension = n;
  auto th = [&](int i) {  // 1-based theta variable
    return ThetaPoly::variable(mi.nvars, std::size_t(i - 1));
  };
  mi.row1.push_back(th(1) + th(2));
  mi.row2.push_back(th(1) * th(2));
  for (int j = 2; j <= n; ++j) {
    mi.row1.push_back(th(j + 1));
    mi.row2.push_back(th(j + 2));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mi.minors.push_back(mi.row1[i] * mi.row2[j] - mi.row1[j] * mi.row2[i]);
      mi.minor_cols.push_back({i + 1, j + 1});
    }
  return mi;
}

// Substitution dictionary: th_i evaluated through the theta formula, so
// the closed form above is the single source of truth.
inline std::vector<LaurentPoly> theta_substitution(const FlopConfig& cfg) {
  std::vector<LaurentPoly> vals;
  vals.push_back(theta(cfg, vec3(1, 1, 0)));  // th1 = theta_{d1}
  vals.push_back(theta(cfg, vec3(0, 1, 0)));  // th2 = theta_{d2}
  vals.push_back(theta(cfg, vec3(0, 0, 1)));  // th3 = theta_{d3}
  for (int i = 1; i <= cfg.n; ++i)
    vals.push_back(theta(cfg, vec3(i, i, 1)));  // th_{i+3} = theta_{f_i}
  return vals;
}

struct MinorCheck {
  bool ok = true;
  std::string failing;  // first failing identity, when any
};

// Substitutes the theta values into every 2x2 minor and into the cleared
// row-ratio identities th1*th2*th3 = th4*(th1+th2) and uv*row1 = row2.
inline MinorCheck verify_minors(const FlopConfig& cfg) {
  MirrorIdeal mi = mirror_ideal(cfg.n);
  std::vector<LaurentPoly> vals = theta_substitution(cfg);
  MinorCheck r;
  for (std::size_t k = 0; k < mi.minors.size(); ++k) {
    if (!mi.minors[k].eval(vals).is_zero()) {
      r.ok = false;
      r.failing = "minor(" + std::to_string(mi.minor_cols[k].first) + "," +
                  std::to_string(mi.minor_cols[k].second) + ")";
      return r;
    }
  }
  // Row ratio uv = th1*th2/(th1+th2) = th4/th3 = ..., cleared of
  // denominators entrywise.
  LaurentPoly uv = u_mono() * v_mono();
  for (std::size_t j = 0; j < mi.row1.size(); ++j) {
    if (uv * mi.row1[j].eval(vals) != mi.row2[j].eval(vals)) {
      r.ok = false;
      r.failing = "row ratio at column " + std::to_string(j + 1);
      return r;
    }
  }
  // n = 1 carries the hypersurface relation as its generator.
  LaurentPoly lhs = vals[0] * vals[1] * vals[2];
  LaurentPoly rhs = vals[3] * (vals[0] + vals[1]);
  if (lhs != rhs) {
    r.ok = false;
    r.failing = "hypersurface relation th1*th2*th3 = th4*(th1+th2)";
    return r;
  }
  // Gluing relation (uv)^n th3 = th_{n+3}.
  LaurentPoly pw = uv.pow(cfg.n) * vals[2];
  if (pw != vals[std::size_t(cfg.n) + 2]) {
    r.ok = false;
    r.failing = "(uv)^n*th3 = th_{n+3}";
    return r;
  }
  return r;
}

inline Int binomial(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// theta_{(0,k,1)} = sum_{i=0}^{k} (-1)^i C(k,i) th2^{k-i} th_{i+3},
// asserted for 0 <= k <= n (the inductive range used to generate the
// coordinate ring).
inline bool binomial_relation(const FlopConfig& cfg, int k) {
  if (k < 0 || k > cfg.n)
    throw std::invalid_argument("relation only asserted for k <= n");
  std::vector<LaurentPoly> vals = theta_substitution(cfg);
  LaurentPoly lhs = theta(cfg, vec3(0, k, 1));
  LaurentPoly rhs;
  for (int i = 0; i <= k; ++i) {
    LaurentPoly term = LaurentPoly::constant((i % 2 == 0) ? binomial(k, i)
                                                          : -binomial(k, i));
    term *= vals[1].pow(k - i);        // th2^{k-i}
    term *= vals[std::size_t(i) + 2];  // th_{i+3}, with th_{0+3} = th3
    rhs += term;
  }
  return lhs == rhs;
}

struct IdentityCheck {
  bool ok = true;
  std::string failing;
  std::string detail;  // counterexample expansion on failure
};

// theta_{(0,1,1)} = th2*th3 - th4 and theta_{(2,1,1)} = th1*th3 - th4.
inline IdentityCheck base_relations(const FlopConfig& cfg) {
  std::vector<LaurentPoly> vals = theta_substitution(cfg);
  IdentityCheck r;
  LaurentPoly lhs1 = theta(cfg, vec3(0, 1, 1));
  LaurentPoly rhs1 = vals[1] * vals[2] - vals[3];
  if (lhs1 != rhs1) {
    r.ok = false;
    r.failing = "theta(0,1,1) = th2*th3 - th4";
    r.detail = lhs1.str() + " != " + rhs1.str();
    return r;
  }
  LaurentPoly lhs2 = theta(cfg, vec3(2, 1, 1));
  LaurentPoly rhs2 = vals[0] * vals[2] - vals[3];
  if (lhs2 != rhs2) {
    r.ok = false;
    r.failing = "theta(2,1,1) = th1*th3 - th4";
    r.detail = lhs2.str() + " != " + rhs2.str();
    return r;
  }
  return r;
}

// Chart equations of the crepant resolution with t = uv: the row ratio
// th1*th2 = uv*(th1+th2) and the gluing (uv)^n th3 = th_{n+3}.
inline IdentityCheck chart_identities(const FlopConfig& cfg) {
  std::vector<LaurentPoly> vals = theta_substitution(cfg);
  IdentityCheck r;
  LaurentPoly uv = u_mono() * v_mono();
  LaurentPoly lhs1 = vals[0] * vals[1];
  LaurentPoly rhs1 = uv * (vals[0] + vals[1]);
  if (lhs1 != rhs1) {
    r.ok = false;
    r.failing = "th1*th2 = uv*(th1+th2)";
    r.detail = lhs1.str() + " != " + rhs1.str();
    return r;
  }
  LaurentPoly lhs2 = uv.pow(cfg.n) * vals[2];
  const LaurentPoly& rhs2 = vals[std::size_t(cfg.n) + 2];
  if (lhs2 != rhs2) {
    r.ok = false;
    r.failing = "(uv)^n*th3 = th_{n+3}";
    r.detail = lhs2.str() + " != " + rhs2.str();
    return r;
  }
  return r;
}

}  // namespace flopcone
