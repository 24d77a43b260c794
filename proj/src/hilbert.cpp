#include "scar/hilbert.hpp"

#include <algorithm>
#include <bit>

#include "scar/error.hpp"

namespace scar {

StateTag parse_state_tag(std::string_view s) {
  if (s == "vacuum") return StateTag::vacuum;
  if (s == "z2") return StateTag::z2;
  if (s == "z2prime") return StateTag::z2prime;
  if (s == "z3") return StateTag::z3;
  throw ConfigError("unknown initial state '" + std::string(s) + "'");
}

std::string to_string(StateTag tag) {
  switch (tag) {
    case StateTag::vacuum: return "vacuum";
    case StateTag::z2: return "z2";
    case StateTag::z2prime: return "z2prime";
    case StateTag::z3: return "z3";
  }
  return "?";
}

static Config mask(int L) { return L >= 32 ? ~Config{0} : ((Config{1} << L) - 1); }

Config translate(Config c, int L, int shift) {
  shift %= L;
  if (shift < 0) shift += L;
  if (shift == 0) return c;
  return ((c << shift) | (c >> (L - shift))) & mask(L);
}

bool is_valid(Config c, int L) {
  if ((c & ~mask(L)) != 0) return false;
  return (c & translate(c, L, 1)) == 0;
}

int hamming_from_vacuum(Config c) { return std::popcount(c); }

int hamming(Config a, Config b) { return std::popcount(a ^ b); }

Config tag_config(int L, StateTag tag) {
  Config c = 0;
  switch (tag) {
    case StateTag::vacuum: return 0;
    case StateTag::z2:
    case StateTag::z2prime:
      if (L % 2 != 0) throw ConfigError("Z2 states need an even number of sites");
      for (int j = 0; j < L; j += 2) c |= Config{1} << j;
      return tag == StateTag::z2 ? c : translate(c, L, 1);
    case StateTag::z3:
      if (L % 3 != 0) throw ConfigError("Z3 state needs L divisible by 3");
      for (int j = 0; j < L; j += 3) c |= Config{1} << j;
      return c;
  }
  return c;
}

ConstrainedBasis::ConstrainedBasis(int L, std::vector<Config> states)
    : L_(L), states_(std::move(states)) {}

std::optional<std::size_t> ConstrainedBasis::find(Config c) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), c);
  if (it == states_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::size_t ConstrainedBasis::index(Config c) const {
  auto i = find(c);
  if (!i) throw InputError("configuration is not in the constrained basis");
  return *i;
}

ConstrainedBasis enumerate_basis(int L) {
  if (L < kMinSites || L > kMaxSites)
    throw SizeError("L must lie in [" + std::to_string(kMinSites) + ", " +
                    std::to_string(kMaxSites) + "], got " + std::to_string(L));
  std::vector<Config> out;
  const std::uint64_t end = std::uint64_t{1} << L;
  const Config top = Config{1} << (L - 1);
  std::uint64_t s = 0;
  while (s < end) {
    const Config c = static_cast<Config>(s);
    const Config adj = c & (c >> 1);
    if (adj != 0) {
      // Every integer below the next multiple of 2^p shares the offending pair at p, p+1.
      const int p = std::countr_zero(adj);
      s = ((s >> p) + 1) << p;
      continue;
    }
    if (!((c & 1) && (c & top))) out.push_back(c);
    ++s;
  }
  return ConstrainedBasis(L, std::move(out));
}

std::vector<double> special_state(const ConstrainedBasis& basis, StateTag tag) {
  std::vector<double> v(basis.dim(), 0.0);
  v[basis.index(tag_config(basis.L(), tag))] = 1.0;
  return v;
}

std::size_t count_sector(const ConstrainedBasis& basis, int k) {
  return static_cast<std::size_t>(std::count_if(
      basis.states().begin(), basis.states().end(),
      [k](Config c) { return std::popcount(c) == k; }));
}

}  // namespace scar
