#include "labelkit/synthetic.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace labelkit {

namespace {

constexpr std::array<const char*, 8> kCategories = {
    "pizza", "sushi", "burger", "cafe", "thai", "bakery", "steakhouse", "vegan"};

double on_grid(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

Instance generate_instance(const GeneratorOptions& options, std::uint64_t seed) {
  if (options.n == 0) throw UsageError("n: must be positive");
  if (options.max_group > 0 && options.n > 9 * options.max_group) {
    throw UsageError("max-group: cannot fit n features into 9 rating groups");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, options.screen.width);
  std::uniform_real_distribution<double> uy(0.0, options.screen.height - 1.0);
  std::uniform_int_distribution<int> half_stars(2, 10);
  std::uniform_int_distribution<std::size_t> category(0, kCategories.size() - 1);

  std::vector<int> stars(options.n);
  for (;;) {
    std::map<int, std::size_t> groups;
    bool ok = true;
    for (int& s : stars) {
      s = half_stars(rng);
      if (options.max_group > 0 && ++groups[s] > options.max_group) ok = false;
    }
    if (ok) break;
  }

  std::set<std::pair<double, double>> taken;
  std::vector<Feature> features;
  const int width = static_cast<int>(std::to_string(options.n).size());
  for (std::size_t i = 0; i < options.n; ++i) {
    Feature f;
    do {
      f.x = on_grid(ux(rng));
      f.y = on_grid(uy(rng));
    } while (!taken.emplace(f.x, f.y).second);
    std::string number = std::to_string(i + 1);
    f.id = "f" + std::string(static_cast<std::size_t>(width) - number.size(), '0') + number;
    f.weight = (stars[i] / 2.0 - 1.0) / 4.0;
    f.category = kCategories[category(rng)];
    f.name = std::string(1, static_cast<char>(std::toupper(f.category[0]))) +
             f.category.substr(1) + " " + number;
    features.push_back(std::move(f));
  }
  return Instance(options.screen, options.label, options.k, std::move(features));
}

std::vector<Instance> generate_instances(const GeneratorOptions& options, std::size_t count,
                                         std::uint64_t seed) {
  std::vector<Instance> instances;
  instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 derive(seq);
    instances.push_back(generate_instance(options, derive()));
  }
  return instances;
}

}  // namespace labelkit
