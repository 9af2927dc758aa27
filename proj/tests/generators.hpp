#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "indexforge/core_model.hpp"
#include "indexforge/linalg.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t between(Rng& rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline indexforge::SymmetricMatrix symmetric(Rng& rng, std::size_t n)
{
  std::vector<double> a(n * n);
  double scale = uniform(rng, 0.1, 10.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double v = uniform(rng, -scale, scale);
      a[i * n + j] = v;
      a[j * n + i] = v;
    }
  }
  return indexforge::SymmetricMatrix(n, std::move(a));
}

struct Dataset {
  indexforge::Manifest manifest;
  indexforge::IndicatorMatrix raw;
};

// 3-12 regions, 4-25 indicators spread over all four pillars. A few columns are
// constant so the degenerate path gets exercised too.
inline Dataset dataset(Rng& rng)
{
  std::size_t regions = between(rng, 3, 12);
  std::size_t indicators = between(rng, 4, 25);
  std::vector<std::size_t> pillar_of(indicators);
  for (std::size_t i = 0; i < indicators; ++i) pillar_of[i] = i < 4 ? i : between(rng, 0, 3);
  std::shuffle(pillar_of.begin(), pillar_of.end(), rng);

  std::vector<indexforge::IndicatorSpec> specs;
  for (std::size_t i = 0; i < indicators; ++i) {
    indexforge::IndicatorSpec s;
    s.id = "x" + std::to_string(i);
    s.label = s.id;
    s.pillar = indexforge::kPillars[pillar_of[i]];
    s.direction = uniform(rng, 0, 1) < 0.25 ? indexforge::Direction::Cost : indexforge::Direction::Benefit;
    specs.push_back(s);
  }
  std::vector<std::string> ids;
  for (const auto& s : specs) ids.push_back(s.id);
  auto manifest = indexforge::validate_manifest(std::move(specs));

  std::vector<double> values(regions * indicators);
  for (std::size_t c = 0; c < indicators; ++c) {
    bool constant = uniform(rng, 0, 1) < 0.04;
    double offset = uniform(rng, -50, 50);
    double scale = uniform(rng, 1, 50);
    for (std::size_t r = 0; r < regions; ++r) {
      values[r * indicators + c] = constant ? offset : offset + scale * uniform(rng, 0, 1);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < regions; ++r) labels.push_back("region" + std::to_string(r));
  indexforge::IndicatorMatrix raw(std::move(labels), std::move(ids), std::move(values), indexforge::Stage::Raw);
  return {std::move(manifest), std::move(raw)};
}

}  // namespace gen
