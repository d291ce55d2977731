// Copyright 2026 The spotseg Authors
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

#ifndef SPOTSEG_IMAGE_IO_HPP_
#define SPOTSEG_IMAGE_IO_HPP_

#include <filesystem>
#include <stdexcept>

#include "spotseg/image.hpp"

namespace spotseg
{

class ImageIoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Decodes a PNG or JPEG (detected by signature). Alpha is dropped.
RgbImage load_rgb(const std::filesystem::path & path);

/// Decodes a PNG or JPEG as 8-bit gray.
Gray8 load_gray8(const std::filesystem::path & path);

/// Loads a mask; pixels with gray value >= 128 are foreground.
BinaryMask load_mask(const std::filesystem::path & path);

// PNG writers. Output bytes depend only on the raster.
void save_gray8(const Gray8 & gray, const std::filesystem::path & path);
void save_rgb(const RgbImage & img, const std::filesystem::path & path);
/// Foreground is written as 255, background as 0.
void save_mask(const BinaryMask & mask, const std::filesystem::path & path);

}  // namespace spotseg

#endif  // SPOTSEG_IMAGE_IO_HPP_
