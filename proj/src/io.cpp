/**
 * @file io.cpp
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "clifsig/error.hpp"

namespace clifsig::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const void* data, std::size_t n) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- PGM -----------------------------------------------------------------

// Next header token, skipping whitespace and '#' comments.
std::string pgm_token(const std::vector<std::uint8_t>& b, std::size_t& pos) {
  for (;;) {
    while (pos < b.size() && std::isspace(b[pos])) ++pos;
    if (pos < b.size() && b[pos] == '#') {
      while (pos < b.size() && b[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::string tok;
  while (pos < b.size() && !std::isspace(b[pos]) && b[pos] != '#') tok += static_cast<char>(b[pos++]);
  if (tok.empty()) throw Error("PGM header truncated");
  return tok;
}

std::size_t pgm_number(const std::vector<std::uint8_t>& b, std::size_t& pos, const char* what) {
  const std::string tok = pgm_token(b, pos);
  if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(std::string("PGM header: bad ") + what + " '" + tok + "'");
  }
  return std::stoul(tok);
}

GrayImage decode_pgm(const std::vector<std::uint8_t>& b) {
  std::size_t pos = 2;
  GrayImage img;
  img.width = pgm_number(b, pos, "width");
  img.height = pgm_number(b, pos, "height");
  const std::size_t maxval = pgm_number(b, pos, "maxval");
  if (img.width == 0 || img.height == 0) throw Error("image has zero dimension");
  if (maxval == 0 || maxval > 255) {
    throw Error("unsupported format: PGM maxval " + std::to_string(maxval) + " (8-bit only)");
  }
  ++pos;  // single whitespace after maxval
  const std::size_t n = img.width * img.height;
  if (pos > b.size() || b.size() - pos < n) {
    throw Error("truncated PGM: expected " + std::to_string(n) + " pixel bytes");
  }
  img.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    img.pixels[i] = static_cast<double>(b[pos + i]) / static_cast<double>(maxval);
  }
  return img;
}

// ---- PNG -----------------------------------------------------------------

struct PngSource {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos;
  char error[256];
  std::jmp_buf jump;
};

void png_read_mem(png_structp png, png_bytep out, png_size_t n) {
  auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
  if (src->bytes->size() - src->pos < n) png_error(png, "truncated PNG");
  std::memcpy(out, src->bytes->data() + src->pos, n);
  src->pos += n;
}

void png_on_error(png_structp png, png_const_charp msg) {
  auto* src = static_cast<PngSource*>(png_get_error_ptr(png));
  std::snprintf(src->error, sizeof src->error, "%s", msg);
  std::longjmp(src->jump, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

// Only trivially destructible locals live across setjmp; `img` and `row`
// belong to the caller frame.
bool decode_png_raw(PngSource& src, GrayImage& img, std::vector<std::uint8_t>& row,
                    std::string& reject) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &src, png_on_error,
                                           png_on_warning);
  if (!png) {
    reject = "libpng initialization failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(src.jump)) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    reject = src.error[0] ? src.error : "PNG decode failed";
    return false;
  }
  png_set_read_fn(png, &src, png_read_mem);
  png_read_info(png, info);
  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    reject = "grayscale required (PNG color type " + std::to_string(color) + ")";
    return false;
  }
  if (depth != 8 && depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    reject = "unsupported format: PNG bit depth " + std::to_string(depth);
    return false;
  }
  if (w == 0 || h == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    reject = "image has zero dimension";
    return false;
  }
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  row.resize(png_get_rowbytes(png, info));
  const double scale = depth == 8 ? 255.0 : 65535.0;
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) {
      const unsigned v = depth == 8 ? row[x] : (unsigned{row[2 * x]} << 8) | row[2 * x + 1];
      img.pixels[static_cast<std::size_t>(y) * w + x] = static_cast<double>(v) / scale;
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
  PngSource src{&bytes, 0, {}, {}};
  GrayImage img;
  std::vector<std::uint8_t> row;
  std::string reject;
  if (!decode_png_raw(src, img, row, reject)) throw Error(reject);
  return img;
}

// ---- archive -------------------------------------------------------------

void put_f64_le(std::vector<std::uint8_t>& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
}

double get_f64_le(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= std::uint64_t{p[k]} << (8 * k);
  return std::bit_cast<double>(bits);
}

json header_of(const FieldArchive& a) {
  json h;
  h["shape"] = a.shape;
  h["components"] = a.components;
  h["dtype"] = "f64-le";
  h["multiplier"] = a.multiplier;
  h["seed"] = a.seed ? json(*a.seed) : json(nullptr);
  h["class"] = a.symmetry_class;
  for (const auto& [k, v] : a.extra.items()) h[k] = v;
  return h;
}

// ---- export --------------------------------------------------------------

struct MapWriter {
  fs::path dir;
  json sidecar = json::object();
  std::vector<std::string> written;

  void pgm(const std::string& name, const ScalarField& f) {
    const Preview p = make_preview(f);
    write_pgm(dir / (name + ".pgm"), f.shape, p.bytes);
    sidecar[name] = {{"file", name + ".pgm"}, {"min", p.min}, {"max", p.max}};
    written.push_back(name + ".pgm");
  }
};

}  // namespace

ScalarField GrayImage::to_field() const { return ScalarField{{width, height}, pixels}; }

GrayImage load_image(const fs::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() < 2) throw Error("truncated image file '" + path.string() + "'");
  static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  if (bytes.size() >= 8 && std::equal(kPngSig, kPngSig + 8, bytes.begin())) {
    return decode_png(bytes);
  }
  if (bytes[0] == 0x89 && bytes.size() < 8) throw Error("truncated PNG signature");
  if (bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '3')) {
    throw Error("grayscale required (PPM color image)");
  }
  throw Error("unsupported format: '" + path.string() + "' is neither P5 PGM nor PNG");
}

ScalarField load_signal_1d(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(x)) {
        throw Error("bad sample '" + tok + "' in '" + path.string() + "'");
      }
      samples.push_back(x);
    }
  }
  if (samples.empty()) throw Error("signal file '" + path.string() + "' has zero samples");
  const std::size_t n = samples.size();
  return ScalarField{{n}, std::move(samples)};
}

const std::vector<double>& FieldArchive::plane(const std::string& name) const {
  auto it = std::find(components.begin(), components.end(), name);
  if (it == components.end()) throw Error("archive has no component '" + name + "'");
  return planes[static_cast<std::size_t>(it - components.begin())];
}

bool FieldArchive::has(const std::string& name) const {
  return std::find(components.begin(), components.end(), name) != components.end();
}

void FieldArchive::add(std::string name, std::vector<double> values) {
  if (values.size() != cell_count(shape)) {
    throw Error("component '" + name + "' has " + std::to_string(values.size()) +
                " values, shape needs " + std::to_string(cell_count(shape)));
  }
  if (has(name)) throw Error("duplicate archive component '" + name + "'");
  components.push_back(std::move(name));
  planes.push_back(std::move(values));
}

ScalarField FieldArchive::field(const std::string& name) const {
  return ScalarField{shape, plane(name)};
}

bool bitwise_equal(const FieldArchive& a, const FieldArchive& b) {
  if (header_of(a) != header_of(b) || a.planes.size() != b.planes.size()) return false;
  for (std::size_t k = 0; k < a.planes.size(); ++k) {
    const auto& p = a.planes[k];
    const auto& q = b.planes[k];
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(p[i]) != std::bit_cast<std::uint64_t>(q[i])) return false;
    }
  }
  return true;
}

std::vector<std::uint8_t> encode_archive(const FieldArchive& a) {
  if (a.components.size() != a.planes.size()) throw Error("archive component/plane count mismatch");
  const std::size_t cells = cell_count(a.shape);
  for (std::size_t k = 0; k < a.planes.size(); ++k) {
    if (a.planes[k].size() != cells) {
      throw Error("archive plane '" + a.components[k] + "' does not match shape");
    }
  }
  const std::string header = header_of(a).dump();
  std::vector<std::uint8_t> out(kArchiveMagic, kArchiveMagic + 8);
  const auto len = static_cast<std::uint32_t>(header.size());
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(len >> (8 * k)));
  out.insert(out.end(), header.begin(), header.end());
  out.reserve(out.size() + cells * a.planes.size() * 8);
  for (const auto& p : a.planes) {
    for (double x : p) put_f64_le(out, x);
  }
  return out;
}

FieldArchive decode_archive(const std::vector<std::uint8_t>& b) {
  if (b.size() < 12 || !std::equal(kArchiveMagic, kArchiveMagic + 8, b.begin())) {
    throw Error("bad magic: not a CLIFSIG1 archive");
  }
  std::uint32_t len = 0;
  for (int k = 0; k < 4; ++k) len |= std::uint32_t{b[8 + k]} << (8 * k);
  if (b.size() - 12 < len) throw Error("archive header truncated");
  json h;
  try {
    h = json::parse(b.begin() + 12, b.begin() + 12 + len);
  } catch (const json::exception& e) {
    throw Error(std::string("archive header is not valid JSON: ") + e.what());
  }
  FieldArchive a;
  try {
    if (h.at("dtype").get<std::string>() != "f64-le") {
      throw Error("unsupported archive dtype '" + h.at("dtype").get<std::string>() + "'");
    }
    a.shape = h.at("shape").get<Shape>();
    a.components = h.at("components").get<std::vector<std::string>>();
    a.multiplier = h.at("multiplier").get<std::string>();
    if (!h.at("seed").is_null()) a.seed = h.at("seed").get<std::uint64_t>();
    a.symmetry_class = h.at("class").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(std::string("archive header: ") + e.what());
  }
  for (const auto& [k, v] : h.items()) {
    if (k != "shape" && k != "components" && k != "dtype" && k != "multiplier" && k != "seed" &&
        k != "class") {
      a.extra[k] = v;
    }
  }
  const std::size_t cells = cell_count(a.shape);
  const std::size_t expected = cells * a.components.size() * 8;
  const std::size_t actual = b.size() - 12 - len;
  if (expected != actual) {
    throw Error("archive payload length mismatch: expected " + std::to_string(expected) +
                " bytes, got " + std::to_string(actual) + " bytes");
  }
  const std::uint8_t* p = b.data() + 12 + len;
  for (std::size_t k = 0; k < a.components.size(); ++k) {
    std::vector<double> plane(cells);
    for (std::size_t i = 0; i < cells; ++i, p += 8) plane[i] = get_f64_le(p);
    a.planes.push_back(std::move(plane));
  }
  return a;
}

void save_field(const FieldArchive& archive, const fs::path& path) {
  const auto bytes = encode_archive(archive);
  write_bytes(path, bytes.data(), bytes.size());
}

FieldArchive load_field(const fs::path& path) { return decode_archive(read_bytes(path)); }

Preview make_preview(const ScalarField& f) {
  Preview p;
  if (f.size() == 0) return p;
  const auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
  p.min = *lo;
  p.max = *hi;
  p.bytes.resize(f.size(), 0);
  const double range = p.max - p.min;
  if (range > 0.0) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      p.bytes[i] = static_cast<std::uint8_t>(std::lround((f[i] - p.min) / range * 255.0));
    }
  }
  return p;
}

ScalarField invert_preview(const Preview& p, const Shape& shape) {
  ScalarField f = ScalarField::zeros(shape);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = static_cast<double>(p.bytes[i]) / 255.0 * (p.max - p.min) + p.min;
  }
  return f;
}

void write_pgm(const fs::path& path, const Shape& shape, const std::vector<std::uint8_t>& bytes) {
  if (shape.empty() || shape.size() > 2) throw Error("PGM preview needs a 1-D or 2-D field");
  const std::size_t w = shape[0];
  const std::size_t h = shape.size() == 2 ? shape[1] : 1;
  if (bytes.size() != w * h) throw Error("PGM preview size mismatch");
  std::string header = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), bytes.begin(), bytes.end());
  write_bytes(path, out.data(), out.size());
}

std::vector<std::string> export_maps(const analytic::AnalyticDecomposition& d, const fs::path& dir,
                                     std::size_t stride) {
  if (stride == 0) throw Error("export stride must be positive");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("cannot create output directory '" + dir.string() + "'");
  }
  MapWriter w{dir, json::object(), {}};
  w.pgm("f", d.f);
  if (d.kind == multipliers::Kind::scalar) {
    w.pgm("fH_re", *d.fH_re);
    w.pgm("fH_im", *d.fH_im);
  } else {
    w.pgm("fH1", (*d.V)[0]);
    w.pgm("fH2", (*d.V)[1]);
    w.pgm("fH3", (*d.V)[2]);
    if (!d.has_polar()) {
      for (std::size_t k = 0; k < 3; ++k) w.pgm("W" + std::to_string(k + 1), (*d.W)[k]);
    }
  }
  if (d.has_polar()) {
    w.pgm("R", *d.R);
    w.pgm("theta", *d.theta);
    w.pgm("vnorm", *d.fH_norm);
  }
  if (d.vhat) {
    w.pgm("sigma", *d.sigma);
    w.pgm("kappa", *d.kappa);
    const Shape& shape = d.f.shape;
    const std::size_t width = shape[0];
    const std::size_t height = shape.size() > 1 ? shape[1] : 1;
    std::ofstream vh(dir / "vhat.csv");
    std::ofstream pv(dir / "phase_vector.csv");
    if (!vh || !pv) throw Error("cannot write quiver CSV in '" + dir.string() + "'");
    vh << "x,y,vx,vy,valid\n";
    pv << "x,y,vx,vy,valid\n";
    const auto& vhat = *d.vhat;
    for (std::size_t y = 0; y < height; y += stride) {
      for (std::size_t x = 0; x < width; x += stride) {
        const std::size_t i = x + width * y;
        const int valid = d.invalid[i] ? 0 : 1;
        const double th = (*d.theta)[i];
        vh << x << ',' << y << ',' << fmt17(vhat[0][i]) << ',' << fmt17(vhat[1][i]) << ','
           << valid << '\n';
        pv << x << ',' << y << ',' << fmt17(th * vhat[0][i]) << ',' << fmt17(th * vhat[1][i])
           << ',' << valid << '\n';
      }
    }
    if (!vh || !pv) throw Error("write failed for quiver CSV in '" + dir.string() + "'");
    w.written.push_back("vhat.csv");
    w.written.push_back("phase_vector.csv");
  }
  json sidecar = {{"maps", w.sidecar},
                  {"stride", stride},
                  {"multiplier", d.multiplier},
                  {"class", multipliers::to_string(d.symmetry)}};
  if (!d.invalid.empty()) {
    sidecar["invalid_cells"] =
        std::count(d.invalid.begin(), d.invalid.end(), std::uint8_t{1});
  }
  const std::string text = sidecar.dump(2) + "\n";
  write_bytes(dir / "maps.json", text.data(), text.size());
  w.written.push_back("maps.json");
  return w.written;
}

}  // namespace clifsig::io
