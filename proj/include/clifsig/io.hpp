/**
 * @file io.hpp
 * @brief Grayscale image loading, field archives and preview/quiver exports.
 *
 * Archive layout: the 8 bytes "CLIFSIG1", a 4-byte little-endian header
 * length, a JSON header, then one little-endian f64 plane per component in
 * header order.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clifsig/analytic.hpp"
#include "clifsig/field.hpp"

namespace clifsig::io {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  ///< row-major, in [0, 1]

  /// Field of shape {width, height}; pixel (x, y) is cell x + width * y.
  ScalarField to_field() const;
};

/// 8-bit binary PGM (P5) or 8/16-bit grayscale PNG.
GrayImage load_image(const std::filesystem::path& path);

/// Whitespace-separated real samples, '#' starts a comment.
ScalarField load_signal_1d(const std::filesystem::path& path);

inline constexpr char kArchiveMagic[] = "CLIFSIG1";

struct FieldArchive {
  Shape shape;
  std::vector<std::string> components;
  std::vector<std::vector<double>> planes;  ///< one per component, cell order
  std::string multiplier;
  std::optional<std::uint64_t> seed;
  std::string symmetry_class;
  /// Extra header entries (multiplier parameters, scale factors, ...).
  nlohmann::json extra = nlohmann::json::object();

  const std::vector<double>& plane(const std::string& name) const;
  bool has(const std::string& name) const;
  void add(std::string name, std::vector<double> values);
  ScalarField field(const std::string& name) const;
};

/// Header fields equal and every payload double identical bit for bit.
bool bitwise_equal(const FieldArchive& a, const FieldArchive& b);

std::vector<std::uint8_t> encode_archive(const FieldArchive& archive);
FieldArchive decode_archive(const std::vector<std::uint8_t>& bytes);

void save_field(const FieldArchive& archive, const std::filesystem::path& path);
FieldArchive load_field(const std::filesystem::path& path);

/// Min-max normalized 8-bit preview; a constant field maps to 0.
struct Preview {
  std::vector<std::uint8_t> bytes;
  double min = 0.0;
  double max = 0.0;
};

Preview make_preview(const ScalarField& f);
/// preview * (max - min) + min
ScalarField invert_preview(const Preview& p, const Shape& shape);
void write_pgm(const std::filesystem::path& path, const Shape& shape,
               const std::vector<std::uint8_t>& bytes);

/// Writes PGM previews of the decomposition's fields, a sidecar maps.json
/// with the normalization constants, and for vector-kind generic
/// decompositions the quiver files vhat.csv and phase_vector.csv sampled
/// every `stride` cells along each axis. Returns the written file names.
std::vector<std::string> export_maps(const analytic::AnalyticDecomposition& d,
                                     const std::filesystem::path& dir, std::size_t stride = 1);

}  // namespace clifsig::io
