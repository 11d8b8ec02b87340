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

#include <png.h>

#include <vector>

#include "cnnrec/errors.hpp"
#include "cnnrec/ingest.hpp"

namespace cnnrec {

// Reads any PNG as 8-bit RGB so the luminance conversion uses the project's
// fixed weights rather than libpng's.
GrayImage decode_png(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        const std::string message = image.message;
        png_image_free(&image);
        throw parse_error(path, 0, "PNG decode failed: " + message);
    }
    image.format = PNG_FORMAT_RGB;

    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw parse_error(path, 0, "PNG decode failed: " + message);
    }

    const std::size_t pixel_count =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> pixels(pixel_count);
    for (std::size_t p = 0; p < pixel_count; ++p) {
        pixels[p] = rgb_to_luminance(buffer[3 * p], buffer[3 * p + 1], buffer[3 * p + 2]);
    }
    return make_gray_image(width, height, std::move(pixels));
}

} // namespace cnnrec
