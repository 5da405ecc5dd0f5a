// Copyright 2026 The medol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEDOL_DATAIO_HPP
#define MEDOL_DATAIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace medol {

/// One labeled sample: sparse features as (index, value) pairs with
/// 1-based indices sorted ascending, and a label in {-1, +1}.
struct Sample {
  std::vector<std::pair<int, double>> features;
  int label = 1;
};

struct Dataset {
  std::vector<Sample> samples;
  int dim = 0;  // max feature index across samples

  std::size_t size() const { return samples.size(); }
};

/// Index shards of an equal partition. Shards are disjoint and each
/// holds exactly floor(m / n) sample indices; the m mod n leftovers are
/// discarded and counted.
struct Partition {
  std::vector<std::vector<std::size_t>> shards;
  std::size_t discarded = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses LIBSVM text: one "<label> <idx>:<val> ..." sample per line.
/// Labels +1/1 map to +1 and -1/0 map to -1. Blank lines are skipped.
/// Malformed tokens, nonpositive or duplicate indices, and unknown
/// labels raise ParseError with the 1-based line number.
Dataset parse_libsvm(std::string_view text);

/// Reads a LIBSVM file; paths ending in ".gz" are inflated with zlib.
Dataset load_libsvm(const std::string& path);

/// Serializes back to LIBSVM text with 17-significant-digit values, so
/// parse(to_libsvm(ds)) reproduces ds exactly.
std::string to_libsvm(const Dataset& ds);

/// Scales every sample to unit Euclidean norm; all-zero samples are
/// left unchanged.
Dataset normalize(Dataset ds);

/// Seeded shuffle, then n shards of floor(m / n) indices each.
Partition make_partition(const Dataset& ds, int n_agents, std::uint64_t seed);

/// Seeded shuffle split; the test set gets floor(m * test_fraction)
/// samples. Returns (train, test).
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed);

/// Two-Gaussian-cluster binary classification generator used by the
/// preset configs as a stand-in for downloaded datasets. Feature vector
/// for label b is b * separation * mu + noise * N(0, I/d), where mu is a
/// seeded unit direction. Not normalized; apply normalize() if wanted.
struct SyntheticSpec {
  std::size_t samples = 1000;
  int dim = 20;
  double separation = 0.9;
  double noise = 0.3;
  std::uint64_t seed = 0;
};

Dataset make_synthetic(const SyntheticSpec& spec);

}  // namespace medol

#endif  // MEDOL_DATAIO_HPP
