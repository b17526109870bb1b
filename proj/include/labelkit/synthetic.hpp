#pragma once

#include <cstdint>
#include <vector>

#include "labelkit/model.hpp"

namespace labelkit {

struct GeneratorOptions {
  std::size_t n = 30;
  int k = 5;
  Size screen{300.0, 300.0};
  Size label{60.0, 60.0};
  // Largest allowed equal-weight group; 0 means unlimited.
  std::size_t max_group = 0;
};

/// Uniform positions on a 0.01 px grid strictly above the port line and
/// star ratings drawn uniformly from {1, 1.5, ..., 5}.
Instance generate_instance(const GeneratorOptions& options, std::uint64_t seed);

/// Instance i uses its own stream seeded from (seed, i).
std::vector<Instance> generate_instances(const GeneratorOptions& options, std::size_t count,
                                         std::uint64_t seed);

}  // namespace labelkit
