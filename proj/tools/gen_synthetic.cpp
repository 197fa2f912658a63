// Copyright 2026 The treeglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic categorical benchmark: 12 categorical features with a
// planted main effect on f03=v2, an interaction with f07=v1, and two weaker
// effects. The committed copy lives at tests/data/synthetic_planted.csv.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "treeglass/core.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <output.csv> [rows] [seed]\n", argv[0]);
    return 2;
  }
  const std::string path = argv[1];
  const std::size_t rows = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 7;

  const std::vector<std::size_t> cardinality = {4, 3, 5, 6, 4, 5, 3, 6, 8, 4, 5, 3};
  treeglass::Rng rng(seed);

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot write %s\n", path.c_str());
    return 3;
  }
  for (std::size_t f = 0; f < cardinality.size(); ++f) {
    char name[8];
    std::snprintf(name, sizeof(name), "f%02zu", f);
    out << name << ",";
  }
  out << "label\n";

  std::vector<std::size_t> cell(cardinality.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t f = 0; f < cardinality.size(); ++f) {
      cell[f] = rng.bounded(cardinality[f]);
    }
    double logit = -1.0;
    if (cell[3] == 2) logit += 2.8;
    if (cell[3] == 2 && cell[7] == 1) logit += 1.4;
    if (cell[5] == 0) logit -= 1.1;
    if (cell[9] == 3) logit += 0.7;
    bool positive = rng.next_unit() < treeglass::sigmoid(logit);
    for (std::size_t f = 0; f < cardinality.size(); ++f) {
      out << "v" << cell[f] << ",";
    }
    out << (positive ? "pos" : "neg") << "\n";
  }
  std::printf("wrote %zu rows to %s\n", rows, path.c_str());
  return 0;
}
