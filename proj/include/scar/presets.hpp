#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scar::presets {

using Terms = std::map<std::string, double>;

inline constexpr double kZ2Lambda = 0.108;

inline Terms z3_optimal() { return {{"z3pert1", 0.18244}, {"z3pert2", -0.10390}, {"z3pert3", 0.05445}}; }

// Vacuum-revival couplings: three-site only, three- and five-site, and the long-range set.
inline Terms vacuum_sigma3() { return {{"sigma3", 0.31}}; }
inline Terms vacuum_sigma35() { return {{"sigma3", 0.43}, {"sigma5", 0.28}}; }
inline Terms vacuum_long_range() {
  return {{"sigma3", 0.31}, {"sigma5", 0.23}, {"sigma7", 0.2},
          {"sigma9", 0.18}, {"sigma11", 0.19}, {"sigma13", 0.01}};
}

inline std::vector<std::pair<std::string, Terms>> vacuum_sets() {
  return {{"bare", {}}, {"sigma3", vacuum_sigma3()}, {"sigma35", vacuum_sigma35()}, {"long_range", vacuum_long_range()}};
}

}  // namespace scar::presets
