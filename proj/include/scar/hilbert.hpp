#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scar {

// One configuration of the ring. Site j is bit j (site 0 = least significant).
using Config = std::uint32_t;

inline constexpr int kMinSites = 3;
inline constexpr int kMaxSites = 30;

enum class StateTag { vacuum, z2, z2prime, z3 };

StateTag parse_state_tag(std::string_view s);
std::string to_string(StateTag tag);

bool is_valid(Config c, int L);
Config translate(Config c, int L, int shift);
int hamming_from_vacuum(Config c);
int hamming(Config a, Config b);

/// Configuration carried by a special state; throws ConfigError when L is incompatible.
Config tag_config(int L, StateTag tag);

class ConstrainedBasis {
 public:
  ConstrainedBasis(int L, std::vector<Config> states);

  int L() const { return L_; }
  std::size_t dim() const { return states_.size(); }
  Config state(std::size_t i) const { return states_[i]; }
  const std::vector<Config>& states() const { return states_; }

  std::optional<std::size_t> find(Config c) const;
  /// Ordinal of c; throws InputError if c is not a basis state.
  std::size_t index(Config c) const;
  bool contains(Config c) const { return find(c).has_value(); }

 private:
  int L_;
  std::vector<Config> states_;
};

ConstrainedBasis enumerate_basis(int L);

/// Unit vector on the tagged configuration.
std::vector<double> special_state(const ConstrainedBasis& basis, StateTag tag);

std::size_t count_sector(const ConstrainedBasis& basis, int k);

}  // namespace scar
