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

#include "spotseg/image_io.hpp"

#include <array>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace spotseg
{
namespace
{

enum class Codec { png, jpeg };

Codec sniff(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ImageIoError("cannot open image: " + path.string());
  }
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char *>(sig.data()), sig.size());
  const auto got = in.gcount();
  if (got >= 8 && png_sig_cmp(sig.data(), 0, 8) == 0) {
    return Codec::png;
  }
  if (got >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) {
    return Codec::jpeg;
  }
  throw ImageIoError("unrecognized image format: " + path.string());
}

struct Decoded
{
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

Decoded decode_png(const std::filesystem::path & path, bool gray)
{
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw ImageIoError("PNG decode failed for " + path.string() + ": " + image.message);
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw ImageIoError("zero-dimension image: " + path.string());
  }
  // RGBA keeps the color channels untouched; the alpha channel is discarded below.
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGBA;
  Decoded out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("PNG decode failed for " + path.string() + ": " + msg);
  }
  if (gray) {
    out.channels = 1;
    out.pixels = std::move(buffer);
  } else {
    out.channels = 3;
    const std::size_t n = static_cast<std::size_t>(out.width) * out.height;
    out.pixels.resize(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      out.pixels[3 * i] = buffer[4 * i];
      out.pixels[3 * i + 1] = buffer[4 * i + 1];
      out.pixels[3 * i + 2] = buffer[4 * i + 2];
    }
  }
  return out;
}

struct JpegErrorManager
{
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  std::array<char, JMSG_LENGTH_MAX> message{};
};

void jpeg_error_exit(j_common_ptr cinfo)
{
  auto * err = reinterpret_cast<JpegErrorManager *>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message.data());
  std::longjmp(err->jump, 1);
}

// Corrupt-data warnings (truncated streams included) are fatal here.
void jpeg_emit_message(j_common_ptr cinfo, int level)
{
  if (level < 0) {
    jpeg_error_exit(cinfo);
  }
}

Decoded decode_jpeg(const std::filesystem::path & path, bool gray)
{
  std::unique_ptr<FILE, int (*)(FILE *)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) {
    throw ImageIoError("cannot open image: " + path.string());
  }
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  err.pub.emit_message = jpeg_emit_message;

  Decoded out;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw ImageIoError("JPEG decode failed for " + path.string() + ": " + err.message.data());
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  out.width = static_cast<int>(cinfo.output_width);
  out.height = static_cast<int>(cinfo.output_height);
  out.channels = cinfo.output_components;
  if (out.width == 0 || out.height == 0) {
    jpeg_destroy_decompress(&cinfo);
    throw ImageIoError("zero-dimension image: " + path.string());
  }
  const std::size_t stride = static_cast<std::size_t>(out.width) * out.channels;
  out.pixels.resize(stride * out.height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.pixels.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

Decoded decode(const std::filesystem::path & path, bool gray)
{
  return sniff(path) == Codec::png ? decode_png(path, gray) : decode_jpeg(path, gray);
}

void write_png(
  const std::filesystem::path & path, int width, int height, png_uint_32 format,
  const std::uint8_t * pixels)
{
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels, 0, nullptr)) {
    throw ImageIoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace

RgbImage load_rgb(const std::filesystem::path & path)
{
  Decoded d = decode(path, false);
  RgbImage out;
  out.width = d.width;
  out.height = d.height;
  out.data = std::move(d.pixels);
  return out;
}

Gray8 load_gray8(const std::filesystem::path & path)
{
  const Decoded d = decode(path, true);
  return Eigen::Map<const Gray8>(d.pixels.data(), d.height, d.width);
}

BinaryMask load_mask(const std::filesystem::path & path)
{
  return load_gray8(path) >= std::uint8_t{128};
}

void save_gray8(const Gray8 & gray, const std::filesystem::path & path)
{
  write_png(
    path, static_cast<int>(gray.cols()), static_cast<int>(gray.rows()), PNG_FORMAT_GRAY,
    gray.data());
}

void save_rgb(const RgbImage & img, const std::filesystem::path & path)
{
  write_png(path, img.width, img.height, PNG_FORMAT_RGB, img.data.data());
}

void save_mask(const BinaryMask & mask, const std::filesystem::path & path)
{
  const Gray8 gray = mask.select(Gray8::Constant(mask.rows(), mask.cols(), 255),
                                 Gray8::Zero(mask.rows(), mask.cols()));
  save_gray8(gray, path);
}

}  // namespace spotseg
