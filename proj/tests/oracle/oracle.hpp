#pragma once

// Reference constructions that share no code with the library: brute-force
// configuration filters and operators built as site-wise products of 2x2
// matrices on the full 2^L space, then restricted to blockade-allowed states.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Mat2 = std::array<std::array<double, 2>, 2>;  // m[out][in], index 1 = up

inline const Mat2 kX{{{0, 1}, {1, 0}}};
inline const Mat2 kP{{{1, 0}, {0, 0}}};  // projector on down
inline const Mat2 kN{{{0, 0}, {0, 1}}};  // projector on up
inline const Mat2 kRaise{{{0, 0}, {1, 0}}};
inline const Mat2 kLower{{{0, 1}, {0, 0}}};

inline int wrap(int s, int L) { return ((s % L) + L) % L; }

inline bool allowed(std::uint32_t c, int L) {
  for (int i = 0; i < L; ++i) {
    const bool a = (c >> i) & 1u, b = (c >> ((i + 1) % L)) & 1u;
    if (a && b) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> brute_basis(int L) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << L); ++c)
    if (allowed(static_cast<std::uint32_t>(c), L)) out.push_back(static_cast<std::uint32_t>(c));
  return out;
}

inline std::uint64_t lucas(int n) {
  if (n == 0) return 2;
  if (n == 1) return 1;
  return lucas(n - 1) + lucas(n - 2);
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Product of single-site operators; sites not listed carry the identity.
using SiteOps = std::map<int, Mat2>;

// Dense matrix (row-major, dim x dim) of sum_terms coefficient * product, on `states`.
class Dense {
 public:
  explicit Dense(std::vector<std::uint32_t> states) : states_(std::move(states)), m_(states_.size() * states_.size()) {
    for (std::size_t i = 0; i < states_.size(); ++i) pos_[states_[i]] = i;
  }
  std::size_t dim() const { return states_.size(); }
  double operator()(std::size_t r, std::size_t c) const { return m_[r * dim() + c]; }
  const std::vector<std::uint32_t>& states() const { return states_; }

  // Apply the site product to every basis configuration and keep in-space images.
  void add(const SiteOps& ops, int L, double coef) {
    for (std::size_t col = 0; col < dim(); ++col) {
      std::vector<std::pair<std::uint32_t, double>> branch{{states_[col], 1.0}};
      for (const auto& [site, m] : ops) {
        const int s = wrap(site, L);
        std::vector<std::pair<std::uint32_t, double>> next;
        for (auto [c, amp] : branch) {
          const int in = (c >> s) & 1u;
          for (int o = 0; o < 2; ++o) {
            if (m[o][in] == 0.0) continue;
            const std::uint32_t d = (c & ~(1u << s)) | (static_cast<std::uint32_t>(o) << s);
            next.push_back({d, amp * m[o][in]});
          }
        }
        branch = std::move(next);
      }
      for (auto [c, amp] : branch) {
        auto it = pos_.find(c);
        if (it != pos_.end()) m_[it->second * dim() + col] += coef * amp;
      }
    }
  }

  void add_matrix(const Dense& other, double coef) {
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += coef * other.m_[i];
  }

  void add_transpose_of(const Dense& other, double coef) {
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c) m_[r * dim() + c] += coef * other(c, r);
  }

 private:
  std::vector<std::uint32_t> states_;
  std::map<std::uint32_t, std::size_t> pos_;
  std::vector<double> m_;
};

inline void add_pxp(Dense& d, int L, double coef = 1.0) {
  for (int j = 0; j < L; ++j) d.add({{j - 1, kP}, {j, kX}, {j + 1, kP}}, L, coef);
}

// P X P dressed with a down-projector two sites away on either side.
inline void add_z2pert(Dense& d, int L, double coef) {
  for (int j = 0; j < L; ++j) {
    d.add({{j - 2, kP}, {j - 1, kP}, {j, kX}, {j + 1, kP}}, L, coef);
    d.add({{j - 1, kP}, {j, kX}, {j + 1, kP}, {j + 2, kP}}, L, coef);
  }
}

// Period-3 perturbations, unit cells anchored at multiples of three.
inline void add_z3pert(Dense& d, int L, int which, double coef) {
  for (int a = 0; a < L; a += 3) {
    if (which == 1) {
      d.add({{a - 2, kP}, {a - 1, kX}, {a, kP}, {a + 1, kP}}, L, coef);
      d.add({{a - 1, kP}, {a, kP}, {a + 1, kX}, {a + 2, kP}}, L, coef);
      d.add({{a - 1, kP}, {a, kX}, {a + 1, kP}, {a + 2, kP}}, L, coef);
      d.add({{a - 2, kP}, {a - 1, kP}, {a, kX}, {a + 1, kP}}, L, coef);
    } else if (which == 2) {
      d.add({{a, kP}, {a + 1, kP}, {a + 2, kX}, {a + 3, kP}}, L, coef);
      d.add({{a, kP}, {a + 1, kX}, {a + 2, kP}, {a + 3, kP}}, L, coef);
    } else {
      d.add({{a, kP}, {a + 1, kX}, {a + 2, kX}, {a + 3, kX}, {a + 4, kP}}, L, coef);
      d.add({{a - 1, kP}, {a, kX}, {a + 1, kX}, {a + 2, kX}, {a + 3, kP}}, L, coef);
    }
  }
}

// Window operator: ordered product of lowering (even offsets) and raising (odd
// offsets) across 2k+1 sites, down-projected flanks, plus its transpose.
inline void add_sigma(Dense& d, int L, int k, double coef) {
  Dense lower(d.states());
  for (int i = 0; i < L; ++i) {
    SiteOps ops{{i - k - 1, kP}, {i + k + 1, kP}};
    for (int m = 0; m <= 2 * k; ++m) ops[i - k + m] = (m % 2 == 0) ? kLower : kRaise;
    lower.add(ops, L, 1.0);
  }
  d.add_matrix(lower, coef);
  d.add_transpose_of(lower, coef);
}

// Full 2^L paramagnet sum_j X_j.
inline Dense paramagnet(int L) {
  std::vector<std::uint32_t> all;
  for (std::uint32_t c = 0; c < (1u << L); ++c) all.push_back(c);
  Dense d(all);
  for (int j = 0; j < L; ++j) d.add({{j, kX}}, L, 1.0);
  return d;
}

}  // namespace oracle
