// Copyright 2026 The qnnlab Authors
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

/**
 * @file
 * Two-class datasets: a seeded synthetic generator, IDX (MNIST-style) file
 * parsing, area-average resampling, and l2 normalization.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qnnlab {

/// Equal-length feature vectors of dimension 2^n with labels in {0, 1}.
struct RawDataset {
    std::vector<std::vector<double>> vectors;
    std::vector<int> labels;
    nlohmann::json provenance;

    [[nodiscard]] std::size_t size() const noexcept { return vectors.size(); }
    /// log2 of the vector dimension.
    [[nodiscard]] int n_qubits() const;
    /// Throws std::invalid_argument when the invariants fail.
    void validate() const;
};

/**
 * Class c is normalize(mu_c + noise). mu_0 and mu_1 are random non-negative
 * unit vectors supported on the lower and upper half of the index range
 * (qubit 1 reads 0 or 1), hence orthogonal. Noise is i.i.d. Gaussian with
 * per-entry sigma = 1 / (separation * sqrt(2^n)), so its expected norm is
 * about 1 / separation. Samples alternate between the classes.
 */
[[nodiscard]] RawDataset generate_synthetic(int n_qubits, int per_class,
                                            double separation,
                                            std::uint64_t seed);

struct DatasetSplit {
    RawDataset train;
    RawDataset test;
};

/// One generator draw split into train and test parts sharing mu_0, mu_1.
[[nodiscard]] DatasetSplit generate_synthetic_split(int n_qubits,
                                                    int train_per_class,
                                                    int test_per_class,
                                                    double separation,
                                                    std::uint64_t seed);

/// IDX parsing failure with the byte offset where it was detected.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &what, std::size_t offset);
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

struct IdxImages {
    int rows{0};
    int cols{0};
    /// Row-major pixel bytes, rows * cols per image.
    std::vector<std::vector<std::uint8_t>> images;
};

struct IdxData {
    IdxImages images;
    std::vector<std::uint8_t> labels;
};

[[nodiscard]] IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
[[nodiscard]] std::vector<std::uint8_t>
parse_idx_labels(std::span<const std::uint8_t> bytes);

/// Reads both files and checks that the item counts agree.
[[nodiscard]] IdxData parse_idx(const std::filesystem::path &images_path,
                                const std::filesystem::path &labels_path);

[[nodiscard]] std::vector<std::uint8_t> write_idx_images(const IdxImages &img);
[[nodiscard]] std::vector<std::uint8_t>
write_idx_labels(std::span<const std::uint8_t> labels);

/// Area-average resampling of a rows x cols image to side x side. Each
/// output pixel is the mean of the source over its footprint, with partial
/// pixels weighted by overlap, so constants and the mean are preserved.
[[nodiscard]] std::vector<double> area_resample(std::span<const double> image,
                                                int rows, int cols, int side);

/// Keeps labels a and b (relabelled 0 and 1), resamples to side x side,
/// flattens row-major, and drops all-zero images. side^2 must be 2^n.
[[nodiscard]] RawDataset downsample_and_filter(const IdxData &data,
                                               std::pair<int, int> class_pair,
                                               int side);

/// Scales every vector to unit l2 norm; rejects zero vectors by index.
[[nodiscard]] RawDataset normalize(RawDataset dataset);

void to_json(nlohmann::json &j, const RawDataset &d);
void from_json(const nlohmann::json &j, RawDataset &d);

} // namespace qnnlab
