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

#include "medol/dataio.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "medol/rng.hpp"

namespace medol {

namespace {

bool parse_label(std::string_view token, int& label) {
  if (token == "+1" || token == "1") {
    label = 1;
    return true;
  }
  if (token == "-1" || token == "0") {
    label = -1;
    return true;
  }
  return false;
}

std::vector<std::size_t> shuffled_indices(std::size_t m, std::uint64_t seed) {
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  // Fisher-Yates with the project RNG, not std::shuffle, so the order is
  // identical across standard libraries.
  for (std::size_t i = m; i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

std::string read_gz(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_libsvm: cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  const bool failed = got < 0;
  gzclose(f);
  if (failed) throw std::runtime_error("load_libsvm: gzip read error in " + path);
  return out;
}

}  // namespace

Dataset parse_libsvm(std::string_view text) {
  Dataset ds;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;

    std::istringstream iss{std::string(line)};
    std::string token;
    if (!(iss >> token)) continue;  // blank line

    Sample sample;
    if (!parse_label(token, sample.label))
      throw ParseError(line_no, "unparseable label '" + token + "'");

    while (iss >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
        throw ParseError(line_no, "malformed feature '" + token + "'");
      int idx = 0;
      double val = 0.0;
      try {
        std::size_t used = 0;
        idx = std::stoi(token.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
        const std::string vtext = token.substr(colon + 1);
        val = std::stod(vtext, &used);
        if (used != vtext.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed feature '" + token + "'");
      }
      if (idx <= 0) throw ParseError(line_no, "feature index must be positive");
      sample.features.emplace_back(idx, val);
      ds.dim = std::max(ds.dim, idx);
    }

    std::sort(sample.features.begin(), sample.features.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sample.features.size(); ++i)
      if (sample.features[i].first == sample.features[i - 1].first)
        throw ParseError(line_no, "duplicate feature index " +
                                      std::to_string(sample.features[i].first));
    ds.samples.push_back(std::move(sample));
  }
  return ds;
}

Dataset load_libsvm(const std::string& path) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0)
    return parse_libsvm(read_gz(path));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_libsvm: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

std::string to_libsvm(const Dataset& ds) {
  std::string out;
  char buf[48];
  for (const Sample& s : ds.samples) {
    out += s.label > 0 ? "+1" : "-1";
    for (const auto& [idx, val] : s.features) {
      std::snprintf(buf, sizeof buf, " %d:%.17g", idx, val);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Dataset normalize(Dataset ds) {
  for (Sample& s : ds.samples) {
    double sq = 0.0;
    for (const auto& [idx, val] : s.features) sq += val * val;
    if (sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& [idx, val] : s.features) val *= inv;
  }
  return ds;
}

Partition make_partition(const Dataset& ds, int n_agents, std::uint64_t seed) {
  if (ds.samples.empty()) throw std::invalid_argument("make_partition: empty dataset");
  if (n_agents < 1) throw std::invalid_argument("make_partition: need at least one agent");
  const std::size_t m = ds.size();
  if (static_cast<std::size_t>(n_agents) > m)
    throw std::invalid_argument("make_partition: more agents than samples");

  const auto idx = shuffled_indices(m, seed);
  const std::size_t per_shard = m / static_cast<std::size_t>(n_agents);
  Partition part;
  part.shards.resize(static_cast<std::size_t>(n_agents));
  std::size_t next = 0;
  for (auto& shard : part.shards) {
    shard.assign(idx.begin() + next, idx.begin() + next + per_shard);
    next += per_shard;
  }
  part.discarded = m - next;
  return part;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("train_test_split: fraction must be in (0, 1)");
  const std::size_t m = ds.size();
  const std::size_t test_count =
      static_cast<std::size_t>(std::floor(static_cast<double>(m) * test_fraction));
  const auto idx = shuffled_indices(m, seed);

  Dataset train, test;
  train.dim = test.dim = ds.dim;
  train.samples.reserve(m - test_count);
  test.samples.reserve(test_count);
  for (std::size_t i = 0; i < m; ++i) {
    (i < m - test_count ? train : test).samples.push_back(ds.samples[idx[i]]);
  }
  return {std::move(train), std::move(test)};
}

Dataset make_synthetic(const SyntheticSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("make_synthetic: dim must be positive");
  if (spec.samples == 0) throw std::invalid_argument("make_synthetic: need samples");

  Rng rng(spec.seed);
  Vec mu = rng.gaussian_vec(spec.dim);
  const double mu_norm = norm2(mu);
  if (mu_norm > 0) scale(mu, 1.0 / mu_norm);

  const double noise_scale = spec.noise / std::sqrt(static_cast<double>(spec.dim));
  Dataset ds;
  ds.dim = spec.dim;
  ds.samples.reserve(spec.samples);
  for (std::size_t s = 0; s < spec.samples; ++s) {
    Sample sample;
    sample.label = rng.uniform01() < 0.5 ? -1 : 1;
    sample.features.reserve(static_cast<std::size_t>(spec.dim));
    for (int j = 0; j < spec.dim; ++j) {
      const double v = sample.label * spec.separation * mu[static_cast<std::size_t>(j)] +
                       noise_scale * rng.gaussian();
      sample.features.emplace_back(j + 1, v);
    }
    ds.samples.push_back(std::move(sample));
  }
  return ds;
}

}  // namespace medol
