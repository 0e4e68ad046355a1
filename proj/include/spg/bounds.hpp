#pragma once

// Diameter bound formulas, the quasi-polynomial recursion table, and the
// numeric verifiers for the two lemmas and the main inequality chain.
//
// All logs are base 2. Zero bases follow the convention 0^p = 0 (and the one
// corner 0^0, reachable only as the quasi-polynomial bound at d = n = 1, is
// also taken as 0 so the dominance order of the bounds is preserved).
//
// Numeric comparison policy: evaluate in double; when two sides agree to
// within 1e-6 relative, re-evaluate in long double; differences within 1e-12
// relative are reported as equal-within-precision rather than ordered.

#include <array>
#include <cassert>
#include <cmath>

#include "spg/util.hpp"

namespace spg {

inline constexpr double kLog2Of3 = 1.5849625007211561814537389439478;

namespace detail {

// x^p with 0^p := 0 (conventions above); x must be nonnegative.
template <class Real>
Real pow_or_zero(Real x, Real p) {
  assert(x >= 0);
  if (x == 0) return 0;
  return std::pow(x, p);
}

// base^(log2 x) for x > 0, continuously extended by 0 at x = 0: swapping
// exponents gives base^(log2 x) = x^(log2 base), which tends to 0 for the
// bases (>= 2) this is used with.
template <class Real>
Real pow_log2(Real base, Real x) {
  assert(base > 0);
  if (x <= 0) return 0;
  return std::pow(base, std::log2(x));
}

// f(d) from the single-variable inequality lemma. Written against log1p so
// the first factor stays accurate for d beyond 2^53.
template <class Real>
Real lemma1_f_impl(long long d) {
  const Real dd = static_cast<Real>(d);
  const Real c = static_cast<Real>(kLog2Of3);
  const Real ln2 = std::log(static_cast<Real>(2));
  const Real log_ratio = std::log1p(static_cast<Real>(-1) / dd) / ln2;  // log2((d-1)/d)
  const Real first = std::exp2(c * log_ratio);
  const Real lg_d = std::log2(dd);
  const Real d_pow_lg_d = std::exp2(lg_d * lg_d);  // d^(log2 d), inf for huge d is fine
  return first + 1 / dd + 2 / (dd * d_pow_lg_d);
}

}  // namespace detail

struct BoundValues {
  int d = 0, n = 0;
  long long hirsch = 0;   // n - d
  long long haehnle = 0;  // d (n - 1)
  double todd = 0;        // (n-d)^(log2 d)
  double spg = 0;         // (n-d)^(1 + log2 d)
  double kk = 0;          // n^(1 + log2 d)
};

inline BoundValues bound_values(int d, int n) {
  if (d < 1 || n < d)
    throw InvalidArgument("bound_values requires 1 <= d <= n");
  BoundValues b;
  b.d = d;
  b.n = n;
  b.hirsch = n - d;
  b.haehnle = static_cast<long long>(d) * (n - 1);
  const double log_d = std::log2(static_cast<double>(d));
  b.todd = detail::pow_or_zero<double>(n - d, log_d);
  b.spg = detail::pow_or_zero<double>(n - d, 1 + log_d);
  b.kk = std::pow(static_cast<double>(n), 1 + log_d);
  return b;
}

inline double lemma1_f(long long d) {
  if (d < 2) throw InvalidArgument("lemma1_f requires d >= 2");
  return detail::lemma1_f_impl<double>(d);
}

struct Lemma1Report {
  long long d_max = 0;
  long long checked = 0;
  bool sampled = false;  // octave sampling above the full-sweep limit
  double f3 = 0;
  double f4 = 0;  // meaningful iff has_f4
  bool has_f4 = false;
  // Max over the increasing range d >= 5 (all checked d when d_max < 5).
  double max_f = 0;
  long long argmax_d = 0;
  bool all_below_one = true;
  long long first_violation_d = 0;
  long long inconclusive = 0;  // f within extended-precision distance of 1
  bool monotone_increasing = true;
  long long first_monotone_break = 0;
  bool pass = false;
};

// Sweeps f over [3, d_max]: f <= 1 everywhere, increasing from d = 5 on.
// Every integer is checked up to 2^21; beyond that, ~4096 points per octave.
inline Lemma1Report verify_lemma1(long long d_max) {
  if (d_max < 3) throw InvalidArgument("verify_lemma1 requires d_max >= 3");
  Lemma1Report r;
  r.d_max = d_max;
  r.f3 = lemma1_f(3);
  if (d_max >= 4) {
    r.f4 = lemma1_f(4);
    r.has_f4 = true;
  }

  const long long full_limit = 1ll << 21;
  r.sampled = d_max > full_limit;
  double prev_f = 0;
  bool have_prev = false;
  bool have_max = false;
  for (long long d = 3; d <= d_max;) {
    double f = detail::lemma1_f_impl<double>(d);
    ++r.checked;

    if (f > 1 - 1e-6) {  // marginal: settle against 1 in extended precision
      long double fe = detail::lemma1_f_impl<long double>(d);
      if (fe > 1 + 1e-12L) {
        if (r.all_below_one) {
          r.all_below_one = false;
          r.first_violation_d = d;
        }
      } else if (fe > 1 - 1e-12L) {
        ++r.inconclusive;
      }
    }

    const bool in_monotone_range = d >= 5 || d_max < 5;
    if (in_monotone_range) {
      if (!have_max || f > r.max_f) {
        r.max_f = f;
        r.argmax_d = d;
        have_max = true;
      }
      if (d >= 5) {
        if (have_prev && f < prev_f - 1e-12 && r.monotone_increasing) {
          r.monotone_increasing = false;
          r.first_monotone_break = d;
        }
        prev_f = f;
        have_prev = true;
      }
    }

    long long step = d < full_limit ? 1 : std::max(1ll, d >> 12);
    if (d < d_max && d + step > d_max) step = d_max - d;
    d += step;
  }

  r.pass = r.all_below_one && r.monotone_increasing;
  return r;
}

// T(1,n) = n-1, T(2,n) = (n-2)^2, and for d >= 3:
// T(d,n) = T(d-1,n-1) when n < 2d, else T(d-1,n-1) + 2 T(d,floor(n/2)) + 2.
struct RecursionTable {
  int d_max = 0, n_max = 0;
  std::vector<uint64_t> values;  // (d-1)*n_max + (n-1); cells with n < d unused

  uint64_t at(int d, int n) const {
    if (d < 1 || d > d_max || n < d || n > n_max)
      throw InvalidArgument("recursion table lookup outside computed range");
    return values[static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(n_max) +
                  static_cast<std::size_t>(n - 1)];
  }
};

inline RecursionTable recursion_table(int d_max, int n_max) {
  if (d_max < 1 || n_max < d_max)
    throw InvalidArgument("recursion_table requires 1 <= d_max <= n_max");
  if (static_cast<long long>(d_max) * n_max > 100'000'000ll)
    throw ResourceLimit("recursion table too large");
  RecursionTable t;
  t.d_max = d_max;
  t.n_max = n_max;
  t.values.assign(static_cast<std::size_t>(d_max) * static_cast<std::size_t>(n_max), 0);
  auto cell = [&t](int d, int n) -> uint64_t& {
    return t.values[static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(t.n_max) +
                    static_cast<std::size_t>(n - 1)];
  };
  for (int d = 1; d <= d_max; ++d) {
    for (int n = d; n <= n_max; ++n) {
      uint64_t v = 0;
      if (d == 1) {
        v = static_cast<uint64_t>(n - 1);
      } else if (d == 2) {
        v = sat_mul(static_cast<uint64_t>(n - 2), static_cast<uint64_t>(n - 2));
      } else if (n < 2 * d) {
        v = cell(d - 1, n - 1);
      } else {
        v = sat_add(cell(d - 1, n - 1), sat_add(sat_mul(2, cell(d, n / 2)), 2));
      }
      if (v == kSaturated) throw ResourceLimit("recursion value overflows 64 bits");
      cell(d, n) = v;
    }
  }
  return t;
}

inline uint64_t recursion_value(int d, int n) {
  if (d < 1 || n < d) throw InvalidArgument("recursion_value requires 1 <= d <= n");
  return recursion_table(d, n).at(d, n);
}

enum class CompareVerdict { Less, Greater, EqualWithinPrecision };

inline const char* verdict_name(CompareVerdict v) {
  switch (v) {
    case CompareVerdict::Less: return "less";
    case CompareVerdict::Greater: return "greater";
    case CompareVerdict::EqualWithinPrecision: return "equal";
  }
  return "unknown";
}

struct Comparison {
  CompareVerdict verdict = CompareVerdict::EqualWithinPrecision;
  bool used_extended = false;
};

inline Comparison compare_adaptive(double l, double r, long double le, long double re) {
  Comparison c;
  double scale = std::max({1.0, std::fabs(l), std::fabs(r)});
  if (std::fabs(l - r) > 1e-6 * scale) {
    c.verdict = l < r ? CompareVerdict::Less : CompareVerdict::Greater;
    return c;
  }
  c.used_extended = true;
  long double scale_e = std::max({static_cast<long double>(1), std::fabs(le), std::fabs(re)});
  if (std::fabs(le - re) <= 1e-12L * scale_e) {
    c.verdict = CompareVerdict::EqualWithinPrecision;
  } else {
    c.verdict = le < re ? CompareVerdict::Less : CompareVerdict::Greater;
  }
  return c;
}

// (n-2)^2 against the edge budget n(n-1)/2 - 1; they meet exactly at n = 5.
struct Lemma2Row {
  long long n = 0;
  uint64_t quadratic = 0;
  uint64_t edge_bound = 0;
  CompareVerdict verdict = CompareVerdict::EqualWithinPrecision;
};

inline Lemma2Row lemma2_comparison(long long n) {
  if (n < 2 || n > 4'000'000'000ll)
    throw InvalidArgument("lemma2_comparison requires 2 <= n <= 4e9");
  Lemma2Row row;
  row.n = n;
  row.quadratic = static_cast<uint64_t>(n - 2) * static_cast<uint64_t>(n - 2);
  row.edge_bound = static_cast<uint64_t>(n) * static_cast<uint64_t>(n - 1) / 2 - 1;
  if (row.quadratic < row.edge_bound)
    row.verdict = CompareVerdict::Less;
  else if (row.quadratic > row.edge_bound)
    row.verdict = CompareVerdict::Greater;
  else
    row.verdict = CompareVerdict::EqualWithinPrecision;
  return row;
}

// The ten closed-form lines of the inductive diameter bound, evaluated
// numerically. half = n/2 as displayed, or floor(n/2) in the floor variant.
namespace detail {

template <class Real>
std::array<Real, 10> chain_lines(int d, int n, bool floored) {
  const Real D = static_cast<Real>(n - d);
  const Real dd = static_cast<Real>(d);
  const Real c = static_cast<Real>(kLog2Of3);
  const Real half = floored ? static_cast<Real>(n / 2) : static_cast<Real>(n) / 2;
  const Real H = half - dd;  // >= 0 given n >= 2d
  const Real lg_D = std::log2(D);
  const Real ratio = (dd - 1) / dd;

  std::array<Real, 10> v{};
  v[0] = pow_or_zero<Real>(D, 1 + std::log2(dd - 1)) +
         2 * pow_or_zero<Real>(H, 1 + std::log2(dd)) + 2;
  v[1] = D * pow_or_zero<Real>(D, std::log2(dd - 1)) +
         2 * H * pow_or_zero<Real>(H, std::log2(dd)) + 2;
  v[2] = D * pow_log2<Real>(dd - 1, D) + 2 * H * pow_log2<Real>(dd, H) + 2;
  v[3] = D * std::pow(ratio, lg_D) * pow_log2<Real>(dd, D) +
         2 * H * pow_log2<Real>(dd, H) + 2;
  v[4] = D * std::pow(ratio, lg_D) * pow_log2<Real>(dd, D) +
         D * pow_log2<Real>(dd, D / 2) + 2;
  v[5] = D * std::pow(ratio, lg_D) * pow_log2<Real>(dd, D) +
         D * pow_log2<Real>(dd, D) / dd + 2;
  v[6] = D * std::pow(ratio, c) * pow_log2<Real>(dd, D) +
         D * pow_log2<Real>(dd, D) / dd + 2;
  v[7] = D * pow_log2<Real>(dd, D) *
         (std::pow(ratio, c) + 1 / dd + 2 / (D * pow_log2<Real>(dd, D)));
  v[8] = D * pow_log2<Real>(dd, D) *
         (std::pow(ratio, c) + 1 / dd + 2 / (dd * pow_log2<Real>(dd, dd)));
  v[9] = pow_or_zero<Real>(D, 1 + std::log2(dd));
  return v;
}

}  // namespace detail

struct ChainStep {
  int index = 0;  // 1-based position in the chain
  bool is_equality = false;
  double lhs = 0, rhs = 0;
  bool holds = false;
  bool equal_within_precision = false;
};

struct ChainVariant {
  bool floored = false;
  std::array<double, 10> lines{};
  std::vector<ChainStep> steps;
  bool pass = false;
  int first_failed_step = 0;
};

struct ChainReport {
  int d = 0, n = 0;
  double log_nd = 0;
  double c = kLog2Of3;
  bool log_ge_c = false;
  ChainVariant halved_real, halved_floor;
  bool pass = false;
};

namespace detail {

inline ChainVariant chain_variant(int d, int n, bool floored) {
  ChainVariant v;
  v.floored = floored;
  auto lines = chain_lines<double>(d, n, floored);
  auto lines_e = chain_lines<long double>(d, n, floored);
  v.lines = lines;
  // Relation between consecutive lines; true marks an equality step.
  constexpr std::array<bool, 9> kEquality = {true, true,  true, false, true,
                                             false, true, false, false};
  v.pass = true;
  for (int i = 0; i < 9; ++i) {
    ChainStep step;
    step.index = i + 1;
    step.is_equality = kEquality[static_cast<std::size_t>(i)];
    step.lhs = lines[static_cast<std::size_t>(i)];
    step.rhs = lines[static_cast<std::size_t>(i) + 1];
    auto cmp = compare_adaptive(step.lhs, step.rhs, lines_e[static_cast<std::size_t>(i)],
                                lines_e[static_cast<std::size_t>(i) + 1]);
    step.equal_within_precision = cmp.verdict == CompareVerdict::EqualWithinPrecision;
    double scale = std::max({1.0, std::fabs(step.lhs), std::fabs(step.rhs)});
    if (step.is_equality) {
      step.holds = std::fabs(step.lhs - step.rhs) <= 1e-9 * scale;
    } else {
      step.holds = step.lhs <= step.rhs + 1e-9 * scale ||
                   step.equal_within_precision;
    }
    if (!step.holds && v.pass) {
      v.pass = false;
      v.first_failed_step = step.index;
    }
    v.steps.push_back(step);
  }
  return v;
}

}  // namespace detail

// Checks every step of the displayed derivation numerically, both with the
// displayed n/2 and with floor(n/2). Requires d >= 3 and n >= 2d.
inline ChainReport verify_theorem_chain(int d, int n) {
  if (d < 3 || n < 2 * d)
    throw InvalidArgument("verify_theorem_chain requires d >= 3 and n >= 2d");
  ChainReport r;
  r.d = d;
  r.n = n;
  r.log_nd = std::log2(static_cast<double>(n - d));
  r.log_ge_c = r.log_nd >= r.c - 1e-12;
  r.halved_real = detail::chain_variant(d, n, false);
  r.halved_floor = detail::chain_variant(d, n, true);
  r.pass = r.log_ge_c && r.halved_real.pass && r.halved_floor.pass;
  return r;
}

}  // namespace spg
