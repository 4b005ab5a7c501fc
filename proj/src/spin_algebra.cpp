// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spinwitness {

namespace {

// ---------------------------------------------------------------------------
// Exact integer backend for the Racah sum. Factorials are held as prime
// exponent vectors, the alternating sum as an arbitrary-precision integer,
// so every combinatorial cancellation happens exactly; the only floating
// point rounding is the final conversion.
// ---------------------------------------------------------------------------

// Non-negative arbitrary-precision integer, little-endian 64-bit limbs.
class BigUInt {
 public:
  BigUInt() = default;
  explicit BigUInt(std::uint64_t v) {
    if (v) limbs_.push_back(v);
  }

  bool is_zero() const { return limbs_.empty(); }

  void mul_small(std::uint64_t f) {
    if (f == 0) {
      limbs_.clear();
      return;
    }
    unsigned __int128 carry = 0;
    for (auto& limb : limbs_) {
      const unsigned __int128 prod = static_cast<unsigned __int128>(limb) * f + carry;
      limb = static_cast<std::uint64_t>(prod);
      carry = prod >> 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
  }

  void add(const BigUInt& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 sum = carry + limbs_[i];
      if (i < o.limbs_.size()) sum += o.limbs_[i];
      limbs_[i] = static_cast<std::uint64_t>(sum);
      carry = sum >> 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
  }

  // this - o, requires this >= o.
  void sub(const BigUInt& o) {
    unsigned __int128 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 need = borrow;
      if (i < o.limbs_.size()) need += o.limbs_[i];
      if (limbs_[i] >= need) {
        limbs_[i] = static_cast<std::uint64_t>(limbs_[i] - need);
        borrow = 0;
      } else {
        limbs_[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) + limbs_[i] - need);
        borrow = 1;
      }
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  int compare(const BigUInt& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }

  // Mantissa and base-2 exponent such that value = m * 2^e. Limbs below the
  // top three are beyond double precision and ignored.
  void to_scaled(double& m, long& e) const {
    if (is_zero()) {
      m = 0;
      e = 0;
      return;
    }
    const std::size_t top = limbs_.size() - 1;
    const std::size_t lo = top >= 2 ? top - 2 : 0;
    double acc = 0;
    for (std::size_t i = top + 1; i-- > lo;)
      acc = acc * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
    int shift = 0;
    m = std::frexp(acc, &shift);
    e = shift + 64 * static_cast<long>(lo);
  }

 private:
  std::vector<std::uint64_t> limbs_;
};

// value = mantissa * 2^exp2; keeps huge/tiny products representable.
struct Scaled {
  double mantissa = 1.0;
  long exp2 = 0;

  void normalize() {
    if (mantissa == 0) {
      exp2 = 0;
      return;
    }
    int e = 0;
    mantissa = std::frexp(mantissa, &e);
    exp2 += e;
  }
  void mul(double f) {
    mantissa *= f;
    normalize();
  }
  void mul(const Scaled& o) {
    mantissa *= o.mantissa;
    exp2 += o.exp2;
    normalize();
  }
  void sqrt_inplace() {
    if (exp2 % 2 != 0) {
      mantissa *= 2;
      exp2 -= 1;
    }
    mantissa = std::sqrt(mantissa);
    exp2 /= 2;
  }
  double value() const { return std::ldexp(mantissa, static_cast<int>(exp2)); }
};

std::vector<int> primes_up_to(int n) {
  std::vector<bool> sieve(std::max(n + 1, 2), true);
  std::vector<int> primes;
  for (int p = 2; p <= n; ++p) {
    if (!sieve[p]) continue;
    primes.push_back(p);
    for (int q = 2 * p; q <= n; q += p) sieve[q] = false;
  }
  return primes;
}

int legendre_exponent(int n, int p) {
  int e = 0;
  for (long q = p; q <= n; q *= p) e += n / static_cast<int>(q);
  return e;
}

void add_factorial(std::vector<int>& exps, const std::vector<int>& primes, int n, int sign) {
  for (std::size_t i = 0; i < primes.size(); ++i)
    exps[i] += sign * legendre_exponent(n, primes[i]);
}

Scaled prime_power_product(const std::vector<int>& primes, const std::vector<int>& exps) {
  Scaled out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const double p = primes[i];
    for (int k = 0; k < exps[i]; ++k) out.mul(p);
    for (int k = 0; k > exps[i]; --k) out.mul(1.0 / p);
  }
  return out;
}

void validate_pair(HalfInt j, HalfInt m) {
  if (j.twice() < 0) throw std::invalid_argument("negative angular momentum");
  if (m.abs() > j) throw std::invalid_argument("|m| exceeds j");
  if (((j.twice() - m.twice()) % 2) != 0)
    throw std::invalid_argument("m and j differ by a non-integer");
}

}  // namespace

std::vector<HalfInt> site_m_values(HalfInt s) {
  if (s.twice() < 0) throw std::invalid_argument("negative spin");
  std::vector<HalfInt> out;
  for (int t = s.twice(); t >= -s.twice(); t -= 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

SparseOperator spin_matrix(HalfInt s, SpinComponent which) {
  if (s.twice() < 0) throw std::invalid_argument("negative spin");
  const int d = s.twice() + 1;
  const auto ms = site_m_values(s);
  std::vector<Eigen::Triplet<double>> entries;
  auto ladder = [&](int i) {
    // sqrt(s(s+1) - m(m+1)) for the raise from m = ms[i]; exact in twice-units.
    const double num = s.twice() * (s.twice() + 2.0) - ms[i].twice() * (ms[i].twice() + 2.0);
    return std::sqrt(num) / 2.0;
  };
  bool symmetric = true;
  switch (which) {
    case SpinComponent::Z:
      for (int i = 0; i < d; ++i)
        if (ms[i].twice() != 0) entries.emplace_back(i, i, ms[i].to_double());
      break;
    case SpinComponent::Plus:
      for (int i = 1; i < d; ++i) entries.emplace_back(i - 1, i, ladder(i));
      symmetric = false;
      break;
    case SpinComponent::Minus:
      for (int i = 1; i < d; ++i) entries.emplace_back(i, i - 1, ladder(i));
      symmetric = false;
      break;
    case SpinComponent::X:
      for (int i = 1; i < d; ++i) {
        entries.emplace_back(i - 1, i, ladder(i) / 2.0);
        entries.emplace_back(i, i - 1, ladder(i) / 2.0);
      }
      break;
    case SpinComponent::IY:
      for (int i = 1; i < d; ++i) {
        entries.emplace_back(i - 1, i, ladder(i) / 2.0);
        entries.emplace_back(i, i - 1, -ladder(i) / 2.0);
      }
      symmetric = false;
      break;
  }
  return make_operator({d}, entries, symmetric);
}

double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt m1, HalfInt m2, HalfInt J, HalfInt M) {
  validate_pair(j1, m1);
  validate_pair(j2, m2);
  validate_pair(J, M);

  if (M != m1 + m2) return 0.0;
  if (J < (j1 - j2).abs() || J > j1 + j2) return 0.0;
  if (((j1 + j2 + J).twice() % 2) != 0) return 0.0;  // j1+j2+J must be an integer

  const int p1 = (j1 + j2 - J).twice() / 2;
  const int p2 = (j1 - j2 + J).twice() / 2;
  const int p3 = (-j1 + j2 + J).twice() / 2;
  const int q = (j1 + j2 + J).twice() / 2 + 1;
  const int a1 = (j1 + m1).twice() / 2;
  const int a2 = (j1 - m1).twice() / 2;
  const int b1 = (j2 + m2).twice() / 2;
  const int b2 = (j2 - m2).twice() / 2;
  const int c1 = (J + M).twice() / 2;
  const int c2 = (J - M).twice() / 2;
  const int e5 = (J - j2 + m1).twice() / 2;  // d5 = e5 + k
  const int e6 = (J - j1 - m2).twice() / 2;  // d6 = e6 + k

  const int kmin = std::max({0, -e5, -e6});
  const int kmax = std::min({p1, a2, b1});
  if (kmax < kmin) return 0.0;

  const auto primes = primes_up_to(std::max(q, 2));
  const std::size_t np = primes.size();

  // Exponents of the squared prefactor (2J+1) p1! p2! p3! a1!...c2! / q!.
  std::vector<int> pre(np, 0);
  for (int n : {p1, p2, p3, a1, a2, b1, b2, c1, c2}) add_factorial(pre, primes, n, +1);
  add_factorial(pre, primes, q, -1);
  {
    int rest = J.twice() + 1;
    for (std::size_t i = 0; i < np && rest > 1; ++i)
      while (rest % primes[i] == 0) {
        ++pre[i];
        rest /= primes[i];
      }
  }

  // Denominator exponents per k, and the componentwise maximum.
  const int nk = kmax - kmin + 1;
  std::vector<std::vector<int>> den(nk, std::vector<int>(np, 0));
  std::vector<int> den_max(np, 0);
  for (int k = kmin; k <= kmax; ++k) {
    auto& e = den[k - kmin];
    for (int n : {k, p1 - k, a2 - k, b1 - k, e5 + k, e6 + k}) add_factorial(e, primes, n, +1);
    for (std::size_t i = 0; i < np; ++i) den_max[i] = std::max(den_max[i], e[i]);
  }

  // Sum over k of (-1)^k / den_k  =  (prod p^-den_max) * sum of exact integers.
  BigUInt positive, negative;
  for (int k = kmin; k <= kmax; ++k) {
    BigUInt term(1);
    for (std::size_t i = 0; i < np; ++i)
      for (int c = den[k - kmin][i]; c < den_max[i]; ++c)
        term.mul_small(static_cast<std::uint64_t>(primes[i]));
    (k % 2 == 0 ? positive : negative).add(term);
  }
  const int cmp = positive.compare(negative);
  if (cmp == 0) return 0.0;
  BigUInt sum_mag = cmp > 0 ? positive : negative;
  sum_mag.sub(cmp > 0 ? negative : positive);

  Scaled result = prime_power_product(primes, pre);
  result.sqrt_inplace();
  std::vector<int> shift(np);
  for (std::size_t i = 0; i < np; ++i) shift[i] = -den_max[i];
  result.mul(prime_power_product(primes, shift));
  Scaled mag;
  sum_mag.to_scaled(mag.mantissa, mag.exp2);
  result.mul(mag);
  return cmp > 0 ? result.value() : -result.value();
}

CGTable::CGTable(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
  if (j1.twice() < 0 || j2.twice() < 0) throw std::invalid_argument("negative spin");
  const int d1 = j1.twice() + 1;
  const int d2 = j2.twice() + 1;
  n_j_ = (j_max() - j_min()).twice() / 2 + 1;
  coeffs_.assign(static_cast<std::size_t>(d1) * d2 * n_j_, 0.0);
  const auto m1s = site_m_values(j1);
  const auto m2s = site_m_values(j2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int jx = 0; jx < n_j_; ++jx) {
        const HalfInt J = j_min() + HalfInt::from_int(jx);
        const HalfInt M = m1s[i1] + m2s[i2];
        if (M.abs() > J) continue;
        coeffs_[(static_cast<std::size_t>(i1) * d2 + i2) * n_j_ + jx] =
            clebsch_gordan(j1, j2, m1s[i1], m2s[i2], J, M);
      }
}

double CGTable::coefficient(HalfInt m1, HalfInt m2, HalfInt J, HalfInt M) const {
  validate_pair(j1_, m1);
  validate_pair(j2_, m2);
  validate_pair(J, M);
  if (M != m1 + m2) return 0.0;
  if (J < j_min() || J > j_max()) return 0.0;
  if (((j1_ + j2_ + J).twice() % 2) != 0) return 0.0;
  const int i1 = (j1_ - m1).twice() / 2;
  const int i2 = (j2_ - m2).twice() / 2;
  const int jx = (J - j_min()).twice() / 2;
  return coeffs_[(static_cast<std::size_t>(i1) * (j2_.twice() + 1) + i2) * n_j_ + jx];
}

std::vector<CoupledState> coupled_basis(HalfInt s2, HalfInt s3) {
  std::vector<CoupledState> out;
  const HalfInt j_max = s2 + s3;
  const HalfInt j_min = (s2 - s3).abs();
  for (int tM = j_max.twice(); tM >= -j_max.twice(); tM -= 2) {
    const HalfInt M = HalfInt::from_twice(tM);
    for (HalfInt S = std::max(M.abs(), j_min); S <= j_max; S = S + HalfInt::from_int(1))
      out.push_back({S, M});
  }
  return out;
}

SparseOperator coupled_transform(HalfInt s2, HalfInt s3) {
  const CGTable table(s2, s3);
  const auto m2s = site_m_values(s2);
  const auto m3s = site_m_values(s3);
  const auto basis = coupled_basis(s2, s3);
  const int d2 = s2.twice() + 1;
  const int d3 = s3.twice() + 1;
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto [S, M] = basis[col];
    for (int i2 = 0; i2 < d2; ++i2) {
      const HalfInt m3 = M - m2s[i2];
      if (m3.abs() > s3) continue;
      const int i3 = (s3 - m3).twice() / 2;
      const double c = table.coefficient(m2s[i2], m3, S, M);
      if (c != 0.0) entries.emplace_back(i2 * d3 + i3, static_cast<int>(col), c);
    }
  }
  return make_operator({d2, d3}, entries, /*symmetric=*/false);
}

double eta(HalfInt s) {
  if (s.twice() <= 0) throw std::invalid_argument("eta requires s > 0");
  const double sv = s.to_double();
  return std::sqrt(sv * (sv + 1.0) / 3.0);
}

}  // namespace spinwitness
