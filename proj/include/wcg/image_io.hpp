#pragma once

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcg/image.hpp"
#include "wcg/transfer.hpp"

namespace wcg {

namespace detail {

inline std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline uint16_t quantize(double v, uint16_t max_code) {
  v = std::clamp(v, 0.0, 1.0);
  const double code = std::floor(v * max_code + 0.5);  // round half up
  return static_cast<uint16_t>(code);
}

inline void silence_tiff_once() {
  static const bool done = [] {
    TIFFSetWarningHandler(nullptr);
    return true;
  }();
  (void)done;
}

// Interleaved integer codes in [0, max] -> linear planes.
inline LinearImage decode_codes(const std::vector<uint16_t>& codes, int width,
                                int height, uint16_t max_code,
                                const TransferFunction& transfer, const Gamut& gamut) {
  LinearImage img(width, height, ColorEncoding::rgb(gamut));
  const double inv = 1.0 / max_code;
  const size_t n = img.pixel_count();
  for (size_t i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c)
      img.at(c, i) = transfer.eotf(codes[3 * i + c] * inv);
  return img;
}

inline LinearImage load_png(const std::string& path, const TransferFunction& transfer,
                            const Gamut& gamut) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: allocation failure");
  }

  std::vector<uint16_t> codes;
  int width = 0, height = 0, bit_depth = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: failed to decode " + path);
  }

  png_init_io(png, f.get());
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (color_type != PNG_COLOR_TYPE_RGB) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error(path + ": only 3-channel RGB PNG is supported (alpha/gray/palette rejected)");
  }
  if (bit_depth != 8 && bit_depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error(path + ": unsupported PNG bit depth");
  }
  if (bit_depth == 16) png_set_swap(png);  // file is big-endian

  const size_t stride = static_cast<size_t>(width) * 3;
  std::vector<std::vector<png_byte>> rows(
      height, std::vector<png_byte>(stride * (bit_depth / 8)));
  std::vector<png_bytep> row_ptrs(height);
  for (int r = 0; r < height; ++r) row_ptrs[r] = rows[r].data();
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  codes.resize(static_cast<size_t>(width) * height * 3);
  for (int r = 0; r < height; ++r) {
    if (bit_depth == 8) {
      for (size_t i = 0; i < stride; ++i)
        codes[r * stride + i] = rows[r][i];
    } else {
      const uint16_t* p = reinterpret_cast<const uint16_t*>(rows[r].data());
      for (size_t i = 0; i < stride; ++i) codes[r * stride + i] = p[i];
    }
  }
  const uint16_t max_code = bit_depth == 8 ? 255 : 65535;
  return decode_codes(codes, width, height, max_code, transfer, gamut);
}

inline void save_png(const LinearImage& img, const std::string& path,
                     const TransferFunction& transfer, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16)
    throw std::invalid_argument("save_png: bit depth must be 8 or 16");
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("cannot create " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: failed to encode " + path);
  }

  png_init_io(png, f.get());
  png_set_IHDR(png, info, img.width(), img.height(), bit_depth, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);

  const uint16_t max_code = bit_depth == 8 ? 255 : 65535;
  const size_t stride = static_cast<size_t>(img.width()) * 3;
  std::vector<png_byte> row8(bit_depth == 8 ? stride : 0);
  std::vector<uint16_t> row16(bit_depth == 16 ? stride : 0);
  for (int r = 0; r < img.height(); ++r) {
    for (int x = 0; x < img.width(); ++x) {
      const size_t i = static_cast<size_t>(r) * img.width() + x;
      for (int c = 0; c < 3; ++c) {
        const double encoded = transfer.oetf(std::clamp(img.at(c, i), 0.0, 1.0));
        const uint16_t q = quantize(encoded, max_code);
        if (bit_depth == 8)
          row8[3 * x + c] = static_cast<png_byte>(q);
        else
          row16[3 * x + c] = q;
      }
    }
    png_write_row(png, bit_depth == 8 ? row8.data()
                                      : reinterpret_cast<png_bytep>(row16.data()));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

inline LinearImage load_tiff(const std::string& path, const TransferFunction& transfer,
                             const Gamut& gamut) {
  silence_tiff_once();
  TIFF* tif = TIFFOpen(path.c_str(), "r");
  if (!tif) throw std::runtime_error("cannot open " + path);
  struct Closer {
    TIFF* t;
    ~Closer() { TIFFClose(t); }
  } closer{tif};

  uint32_t width = 0, height = 0;
  uint16_t bits = 0, samples = 0, fmt = SAMPLEFORMAT_UINT, planar = PLANARCONFIG_CONTIG;
  TIFFGetField(tif, TIFFTAG_IMAGEWIDTH, &width);
  TIFFGetField(tif, TIFFTAG_IMAGELENGTH, &height);
  TIFFGetField(tif, TIFFTAG_BITSPERSAMPLE, &bits);
  TIFFGetField(tif, TIFFTAG_SAMPLESPERPIXEL, &samples);
  TIFFGetFieldDefaulted(tif, TIFFTAG_SAMPLEFORMAT, &fmt);
  TIFFGetFieldDefaulted(tif, TIFFTAG_PLANARCONFIG, &planar);

  if (samples != 3)
    throw std::runtime_error(path + ": only 3-channel TIFF is supported");
  if (planar != PLANARCONFIG_CONTIG)
    throw std::runtime_error(path + ": planar TIFF layout not supported");
  const bool is_float = fmt == SAMPLEFORMAT_IEEEFP;
  if (!((is_float && bits == 32) ||
        (fmt == SAMPLEFORMAT_UINT && (bits == 8 || bits == 16))))
    throw std::runtime_error(path + ": unsupported TIFF sample format");

  LinearImage img(static_cast<int>(width), static_cast<int>(height),
                  ColorEncoding::rgb(gamut));
  std::vector<uint8_t> scanline(TIFFScanlineSize(tif));
  for (uint32_t r = 0; r < height; ++r) {
    if (TIFFReadScanline(tif, scanline.data(), r) < 0)
      throw std::runtime_error(path + ": TIFF read error");
    for (uint32_t x = 0; x < width; ++x) {
      const size_t i = static_cast<size_t>(r) * width + x;
      for (int c = 0; c < 3; ++c) {
        double v;
        if (is_float)
          v = reinterpret_cast<const float*>(scanline.data())[3 * x + c];
        else if (bits == 8)
          v = scanline[3 * x + c] / 255.0;
        else
          v = reinterpret_cast<const uint16_t*>(scanline.data())[3 * x + c] / 65535.0;
        img.at(c, i) = transfer.eotf(v);
      }
    }
  }
  img.require_finite();
  return img;
}

inline void save_tiff(const LinearImage& img, const std::string& path,
                      const TransferFunction& transfer, int bit_depth) {
  silence_tiff_once();
  if (bit_depth != 8 && bit_depth != 16 && bit_depth != 32)
    throw std::invalid_argument("save_tiff: bit depth must be 8, 16, or 32 (float)");
  TIFF* tif = TIFFOpen(path.c_str(), "w");
  if (!tif) throw std::runtime_error("cannot create " + path);
  struct Closer {
    TIFF* t;
    ~Closer() { TIFFClose(t); }
  } closer{tif};

  const bool is_float = bit_depth == 32;
  TIFFSetField(tif, TIFFTAG_IMAGEWIDTH, static_cast<uint32_t>(img.width()));
  TIFFSetField(tif, TIFFTAG_IMAGELENGTH, static_cast<uint32_t>(img.height()));
  TIFFSetField(tif, TIFFTAG_SAMPLESPERPIXEL, static_cast<uint16_t>(3));
  TIFFSetField(tif, TIFFTAG_BITSPERSAMPLE, static_cast<uint16_t>(bit_depth));
  TIFFSetField(tif, TIFFTAG_SAMPLEFORMAT,
               static_cast<uint16_t>(is_float ? SAMPLEFORMAT_IEEEFP : SAMPLEFORMAT_UINT));
  TIFFSetField(tif, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_RGB);
  TIFFSetField(tif, TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(tif, TIFFTAG_COMPRESSION, COMPRESSION_NONE);
  TIFFSetField(tif, TIFFTAG_ROWSPERSTRIP, 1);

  std::vector<uint8_t> row8(is_float || bit_depth != 8 ? 0 : img.width() * 3);
  std::vector<uint16_t> row16(bit_depth == 16 ? img.width() * 3 : 0);
  std::vector<float> rowf(is_float ? img.width() * 3 : 0);
  for (int r = 0; r < img.height(); ++r) {
    for (int x = 0; x < img.width(); ++x) {
      const size_t i = static_cast<size_t>(r) * img.width() + x;
      for (int c = 0; c < 3; ++c) {
        const double encoded = transfer.oetf(std::clamp(img.at(c, i), 0.0, 1.0));
        if (is_float)
          rowf[3 * x + c] = static_cast<float>(encoded);
        else if (bit_depth == 8)
          row8[3 * x + c] = static_cast<uint8_t>(quantize(encoded, 255));
        else
          row16[3 * x + c] = quantize(encoded, 65535);
      }
    }
    void* data = is_float ? static_cast<void*>(rowf.data())
                          : (bit_depth == 8 ? static_cast<void*>(row8.data())
                                            : static_cast<void*>(row16.data()));
    if (TIFFWriteScanline(tif, data, r) < 0)
      throw std::runtime_error(path + ": TIFF write error");
  }
}

}  // namespace detail

// Decodes an 8/16-bit PNG or 8/16-bit integer / 32-bit float TIFF into
// linear light tagged with `gamut`.
inline LinearImage load_image(const std::string& path, const TransferFunction& transfer,
                              const Gamut& gamut) {
  const std::string ext = detail::lower_ext(path);
  if (ext == "png") return detail::load_png(path, transfer, gamut);
  if (ext == "tif" || ext == "tiff") return detail::load_tiff(path, transfer, gamut);
  throw std::runtime_error(path + ": unsupported image format (expect .png/.tif/.tiff)");
}

// Encodes with the inverse transfer, clamping to [0,1] and quantizing
// round-half-up. bit_depth 32 selects float TIFF (TIFF only).
inline void save_image(const LinearImage& img, const std::string& path,
                       const TransferFunction& transfer, int bit_depth) {
  const std::string ext = detail::lower_ext(path);
  if (ext == "png")
    detail::save_png(img, path, transfer, bit_depth);
  else if (ext == "tif" || ext == "tiff")
    detail::save_tiff(img, path, transfer, bit_depth);
  else
    throw std::runtime_error(path + ": unsupported image format (expect .png/.tif/.tiff)");
}

// Conventional defaults: PNG carries sRGB-encoded codes, TIFF linear data.
inline TransferFunction default_transfer_for(const std::string& path) {
  const std::string ext = detail::lower_ext(path);
  if (ext == "png") return TransferFunction::srgb();
  return TransferFunction::linear();
}

}  // namespace wcg
