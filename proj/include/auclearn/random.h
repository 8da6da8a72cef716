// Copyright 2026 The auclearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUCLEARN_RANDOM_H_
#define AUCLEARN_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace auclearn {

// Seeded generator with a platform-independent uniform draw. All sampling in
// the library goes through this type so results depend only on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n).
  std::uint64_t Below(std::uint64_t n);

  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Child seed derived from a base seed and a label (splitmix64 over FNV-1a).
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view label);
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

}  // namespace auclearn

#endif  // AUCLEARN_RANDOM_H_
