/*
 *  Copyright 2026 cnnrec contributors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnnrec/image.hpp"

namespace cnnrec {

/// Loads an IDX image/label file pair (the MNIST container format).
/// Byte pixels are scaled by 1/255, sample order follows file order and
/// class_count = 1 + max label. Throws cnnrec::parse_error naming the file
/// and byte offset on malformed magic, truncated payload or an image/label
/// count mismatch.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Loads CIFAR-style binary files (per record: 1 label byte + 1024 R +
/// 1024 G + 1024 B bytes, 32x32). RGB collapses to luminance with fixed
/// weights 0.299 R + 0.587 G + 0.114 B. Throws cnnrec::parse_error when a
/// file length is not a multiple of 3073 or a label byte >= class_count.
LabeledDataset load_cifar_binary(const std::vector<std::string>& paths, int class_count);

/// Loads a directory with one subdirectory per class (ids assigned by
/// lexicographic subdirectory order). Accepts PNG (8-bit gray or RGB) and
/// binary PGM/PPM (P5/P6, maxval 255); color converts to luminance with the
/// fixed weights above. Undecodable files abort ingestion with a
/// cnnrec::parse_error naming the path; fewer than two class directories is
/// a std::invalid_argument.
LabeledDataset load_image_dir(const std::string& root);

/// Seeded synthetic task: per class, a deterministic Gaussian-blob template
/// whose position is offset from the image center by `separation` (1.0 puts
/// blob centers on a circle of radius image_side/4); each sample adds i.i.d.
/// pixel noise of std `noise_sigma`, clamped to [0, 1]. Bitwise reproducible
/// from the seed.
LabeledDataset synth_blob_task(int class_count,
                               int samples_per_class,
                               int image_side,
                               double separation,
                               double noise_sigma,
                               std::uint64_t seed);

/// Writes a dataset as an IDX image/label file pair (pixels quantized to
/// bytes). All images must share one width/height. Inverse of load_idx up
/// to quantization.
void write_idx(const LabeledDataset& dataset,
               const std::string& images_path,
               const std::string& labels_path);

/// Decodes a binary PGM (P5) or PPM (P6) with maxval 255.
GrayImage decode_pnm(const std::string& path);

/// Decodes an 8-bit gray or RGB PNG.
GrayImage decode_png(const std::string& path);

/// Fixed luminance weights applied to byte-valued RGB, result in [0, 1].
double rgb_to_luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b);

} // namespace cnnrec
