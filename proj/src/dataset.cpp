// Copyright 2026-present the pivex authors
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

#include "pivex/dataset.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "pivex/error.hpp"

namespace pivex {

static_assert(std::endian::native == std::endian::little,
              "dataset I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 4> kMagic = {'M', 'S', 'P', 'D'};
constexpr std::size_t kHeaderBytes = 16;

}  // namespace

Dataset::Dataset(std::size_t dim, std::vector<double> values, MetricId metric)
    : dim_(dim), values_(std::move(values)), metric_(metric) {
  if (dim_ == 0 && !values_.empty()) {
    fail(ErrorCode::invalid_argument, "dataset with values needs dim >= 1");
  }
  if (dim_ != 0 && values_.size() % dim_ != 0) {
    fail(ErrorCode::dimension_mismatch,
         "value count is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < size(); ++i) validate_point(metric_, row(i));
}

Dataset Dataset::select(std::span<const std::size_t> ids) const {
  std::vector<double> out;
  out.reserve(ids.size() * dim_);
  for (std::size_t id : ids) {
    if (id >= size()) {
      fail(ErrorCode::invalid_argument,
           "point id " + std::to_string(id) + " out of range");
    }
    auto r = row(id);
    out.insert(out.end(), r.begin(), r.end());
  }
  return Dataset(dim_, std::move(out), metric_);
}

Dataset Dataset::with_metric(MetricId metric) const {
  return Dataset(dim_, values_, metric);
}

void Dataset::check_query(std::span<const double> q) const {
  if (q.size() != dim_) {
    fail(ErrorCode::dimension_mismatch,
         "query dimension " + std::to_string(q.size()) +
             " does not match dataset dimension " + std::to_string(dim_));
  }
  validate_point(metric_, q);
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");

  const auto dim = static_cast<std::uint32_t>(ds.dim());
  const auto count = static_cast<std::uint64_t>(ds.size());
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  auto values = ds.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size_bytes()));
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

Dataset load_dataset(const std::string& path, MetricId metric) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");

  std::array<char, kHeaderBytes> header{};
  in.read(header.data(), header.size());
  if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes) ||
      std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    fail(ErrorCode::format, "'" + path + "' is not an MSPD dataset file");
  }
  std::uint32_t dim = 0;
  std::uint64_t count = 0;
  std::memcpy(&dim, header.data() + 4, sizeof dim);
  std::memcpy(&count, header.data() + 8, sizeof count);

  std::vector<double> values(static_cast<std::size_t>(count) * dim);
  const auto bytes = static_cast<std::streamsize>(values.size() * sizeof(double));
  in.read(reinterpret_cast<char*>(values.data()), bytes);
  if (in.gcount() != bytes) {
    fail(ErrorCode::format, "'" + path + "' is truncated");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    fail(ErrorCode::format, "'" + path + "' has trailing bytes");
  }
  return Dataset(dim, std::move(values), metric);
}

}  // namespace pivex
