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

#include "qnnlab/data.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>

namespace qnnlab {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes,
                        std::size_t offset) {
    if (bytes.size() < offset + 4) {
        throw ParseError("truncated header", bytes.size());
    }
    return (static_cast<std::uint32_t>(bytes[offset]) << 24U) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16U) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8U) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

void write_be32(std::vector<std::uint8_t> &out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24U));
    out.push_back(static_cast<std::uint8_t>(v >> 16U));
    out.push_back(static_cast<std::uint8_t>(v >> 8U));
    out.push_back(static_cast<std::uint8_t>(v));
}

void check_magic(std::span<const std::uint8_t> bytes, std::uint32_t want) {
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != want) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "bad magic 0x%08x, expected 0x%08x",
                      magic, want);
        throw ParseError(buf, 0);
    }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double l2_norm(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

// Overlap length of [a0, a1) and [b0, b1).
double overlap_1d(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

} // namespace

int RawDataset::n_qubits() const {
    if (vectors.empty()) {
        throw std::invalid_argument("empty dataset has no qubit count");
    }
    const std::size_t dim = vectors.front().size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("vector dimension is not a power of two");
    }
    return std::countr_zero(dim);
}

void RawDataset::validate() const {
    if (vectors.size() != labels.size()) {
        throw std::invalid_argument("vector and label counts differ");
    }
    if (vectors.empty()) {
        return;
    }
    const std::size_t dim = vectors.front().size();
    (void)n_qubits();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) {
            throw std::invalid_argument("vector " + std::to_string(i) +
                                        " has a different dimension");
        }
        if (labels[i] != 0 && labels[i] != 1) {
            throw std::invalid_argument("label " + std::to_string(i) +
                                        " is not 0 or 1");
        }
    }
}

RawDataset generate_synthetic(int n_qubits, int per_class, double separation,
                              std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > 20) {
        throw std::invalid_argument("synthetic data needs 1 <= n <= 20");
    }
    if (per_class < 1) {
        throw std::invalid_argument("per_class must be >= 1");
    }
    if (!(separation > 0.0)) {
        throw std::invalid_argument("separation must be > 0");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t half = dim / 2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::array<std::vector<double>, 2> mu;
    for (int c = 0; c < 2; ++c) {
        auto &m = mu[static_cast<std::size_t>(c)];
        m.assign(dim, 0.0);
        for (std::size_t i = 0; i < half; ++i) {
            // Strictly positive entries keep the mean away from zero.
            m[c * half + i] = 0.1 + uniform(rng);
        }
        const double norm = l2_norm(m);
        for (double &v : m) {
            v /= norm;
        }
    }

    const double sigma =
        std::isinf(separation)
            ? 0.0
            : 1.0 / (separation * std::sqrt(static_cast<double>(dim)));
    std::normal_distribution<double> noise(0.0, 1.0);

    RawDataset out;
    for (int i = 0; i < per_class; ++i) {
        for (int c = 0; c < 2; ++c) {
            std::vector<double> v = mu[static_cast<std::size_t>(c)];
            double norm = 0.0;
            do {
                for (std::size_t k = 0; k < dim; ++k) {
                    v[k] = mu[static_cast<std::size_t>(c)][k] +
                           sigma * noise(rng);
                }
                norm = l2_norm(v);
            } while (!(norm > 0.0));
            for (double &x : v) {
                x /= norm;
            }
            out.vectors.push_back(std::move(v));
            out.labels.push_back(c);
        }
    }
    out.provenance = {{"source", "synthetic"},
                      {"n_qubits", n_qubits},
                      {"per_class", per_class},
                      {"separation", separation},
                      {"seed", seed}};
    return out;
}

DatasetSplit generate_synthetic_split(int n_qubits, int train_per_class,
                                      int test_per_class, double separation,
                                      std::uint64_t seed) {
    if (train_per_class < 1 || test_per_class < 1) {
        throw std::invalid_argument("train and test need >= 1 per class");
    }
    RawDataset all = generate_synthetic(
        n_qubits, train_per_class + test_per_class, separation, seed);
    const auto cut = static_cast<std::ptrdiff_t>(2 * train_per_class);
    DatasetSplit split;
    split.train.vectors.assign(all.vectors.begin(), all.vectors.begin() + cut);
    split.train.labels.assign(all.labels.begin(), all.labels.begin() + cut);
    split.test.vectors.assign(all.vectors.begin() + cut, all.vectors.end());
    split.test.labels.assign(all.labels.begin() + cut, all.labels.end());
    split.train.provenance = all.provenance;
    split.train.provenance["part"] = "train";
    split.test.provenance = all.provenance;
    split.test.provenance["part"] = "test";
    return split;
}

ParseError::ParseError(const std::string &what, std::size_t offset)
    : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
      offset_{offset} {}

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kIdxImagesMagic);
    const std::uint32_t count = read_be32(bytes, 4);
    const std::uint32_t rows = read_be32(bytes, 8);
    const std::uint32_t cols = read_be32(bytes, 12);
    constexpr std::size_t header = 16;
    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    if (rows == 0 || cols == 0) {
        throw ParseError("zero image dimension", 8);
    }
    const std::size_t need = header + static_cast<std::size_t>(count) * pixels;
    if (bytes.size() < need) {
        throw ParseError("truncated image data: need " + std::to_string(need) +
                             " bytes, have " + std::to_string(bytes.size()),
                         bytes.size());
    }
    IdxImages out;
    out.rows = static_cast<int>(rows);
    out.cols = static_cast<int>(cols);
    out.images.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto *begin = bytes.data() + header + i * pixels;
        out.images.emplace_back(begin, begin + pixels);
    }
    return out;
}

std::vector<std::uint8_t>
parse_idx_labels(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kIdxLabelsMagic);
    const std::uint32_t count = read_be32(bytes, 4);
    constexpr std::size_t header = 8;
    if (bytes.size() < header + count) {
        throw ParseError("truncated label data: need " +
                             std::to_string(header + count) + " bytes, have " +
                             std::to_string(bytes.size()),
                         bytes.size());
    }
    return {bytes.begin() + header, bytes.begin() + header + count};
}

IdxData parse_idx(const std::filesystem::path &images_path,
                  const std::filesystem::path &labels_path) {
    const auto image_bytes = read_file(images_path);
    const auto label_bytes = read_file(labels_path);
    IdxData data;
    data.images = parse_idx_images(image_bytes);
    data.labels = parse_idx_labels(label_bytes);
    if (data.images.images.size() != data.labels.size()) {
        // Both counts live at offset 4 of their files.
        throw ParseError("count mismatch: " +
                             std::to_string(data.images.images.size()) +
                             " images vs " + std::to_string(data.labels.size()) +
                             " labels",
                         4);
    }
    return data;
}

std::vector<std::uint8_t> write_idx_images(const IdxImages &img) {
    std::vector<std::uint8_t> out;
    write_be32(out, kIdxImagesMagic);
    write_be32(out, static_cast<std::uint32_t>(img.images.size()));
    write_be32(out, static_cast<std::uint32_t>(img.rows));
    write_be32(out, static_cast<std::uint32_t>(img.cols));
    for (const auto &image : img.images) {
        if (image.size() != static_cast<std::size_t>(img.rows) * img.cols) {
            throw std::invalid_argument("image size does not match rows*cols");
        }
        out.insert(out.end(), image.begin(), image.end());
    }
    return out;
}

std::vector<std::uint8_t>
write_idx_labels(std::span<const std::uint8_t> labels) {
    std::vector<std::uint8_t> out;
    write_be32(out, kIdxLabelsMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

std::vector<double> area_resample(std::span<const double> image, int rows,
                                  int cols, int side) {
    if (rows < 1 || cols < 1 || side < 1) {
        throw std::invalid_argument("resample dimensions must be >= 1");
    }
    if (image.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("image size does not match rows*cols");
    }
    const double sy = static_cast<double>(rows) / side;
    const double sx = static_cast<double>(cols) / side;
    std::vector<double> out(static_cast<std::size_t>(side) * side, 0.0);
    for (int r = 0; r < side; ++r) {
        const double y0 = r * sy;
        const double y1 = (r + 1) * sy;
        const int r_lo = static_cast<int>(std::floor(y0));
        const int r_hi = std::min(rows, static_cast<int>(std::ceil(y1)));
        for (int c = 0; c < side; ++c) {
            const double x0 = c * sx;
            const double x1 = (c + 1) * sx;
            const int c_lo = static_cast<int>(std::floor(x0));
            const int c_hi = std::min(cols, static_cast<int>(std::ceil(x1)));
            double acc = 0.0;
            for (int rr = r_lo; rr < r_hi; ++rr) {
                const double wy = overlap_1d(y0, y1, rr, rr + 1);
                for (int cc = c_lo; cc < c_hi; ++cc) {
                    const double wx = overlap_1d(x0, x1, cc, cc + 1);
                    acc += wy * wx *
                           image[static_cast<std::size_t>(rr) * cols + cc];
                }
            }
            out[static_cast<std::size_t>(r) * side + c] = acc / (sy * sx);
        }
    }
    return out;
}

RawDataset downsample_and_filter(const IdxData &data,
                                 std::pair<int, int> class_pair, int side) {
    const auto [a, b] = class_pair;
    if (a == b) {
        throw std::invalid_argument("class pair needs two distinct labels");
    }
    const std::size_t dim = static_cast<std::size_t>(side) * side;
    if (side < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("side^2 must be a power of two");
    }
    RawDataset out;
    std::array<int, 2> kept{0, 0};
    std::vector<double> pixels;
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        const int label = data.labels[i];
        if (label != a && label != b) {
            continue;
        }
        const auto &img = data.images.images[i];
        if (std::all_of(img.begin(), img.end(),
                        [](std::uint8_t p) { return p == 0; })) {
            continue;
        }
        pixels.assign(img.begin(), img.end());
        out.vectors.push_back(
            area_resample(pixels, data.images.rows, data.images.cols, side));
        out.labels.push_back(label == a ? 0 : 1);
        ++kept[label == a ? 0 : 1];
    }
    if (kept[0] == 0 || kept[1] == 0) {
        throw std::invalid_argument("class " +
                                    std::to_string(kept[0] == 0 ? a : b) +
                                    " is empty after filtering");
    }
    out.provenance = {{"source", "idx"},
                      {"class_pair", {a, b}},
                      {"side", side}};
    return out;
}

RawDataset normalize(RawDataset dataset) {
    for (std::size_t i = 0; i < dataset.vectors.size(); ++i) {
        auto &v = dataset.vectors[i];
        const double norm = l2_norm(v);
        if (!(norm > 0.0)) {
            throw std::invalid_argument("vector " + std::to_string(i) +
                                        " is zero and cannot be normalized");
        }
        for (double &x : v) {
            x /= norm;
        }
    }
    return dataset;
}

void to_json(nlohmann::json &j, const RawDataset &d) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < d.vectors.size(); ++i) {
        rows.push_back({{"label", d.labels[i]}, {"vector", d.vectors[i]}});
    }
    j = nlohmann::json{{"provenance", d.provenance}, {"rows", rows}};
}

void from_json(const nlohmann::json &j, RawDataset &d) {
    d = RawDataset{};
    d.provenance = j.value("provenance", nlohmann::json::object());
    for (const auto &row : j.at("rows")) {
        d.labels.push_back(row.at("label").get<int>());
        d.vectors.push_back(row.at("vector").get<std::vector<double>>());
    }
    d.validate();
}

} // namespace qnnlab
