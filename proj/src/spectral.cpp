/**
 * @file spectral.cpp
 * @brief GA Fourier transform via four I_3-complex planes and FFTW.
 *
 * G_3 splits into the planes {1, I}, {e1, I e1}, {e2, I e2}, {e3, I e3}.
 * Because I_3 is central and squares to -1, multiplying by exp(-I phi)
 * acts on each plane exactly like complex multiplication by exp(-i phi).
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/spectral.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "clifsig/error.hpp"

namespace clifsig::spectral {

namespace {

constexpr std::uint32_t kPseudo3 = 0b111;

struct Plane {
  std::uint32_t base;
  std::uint32_t partner;  // blade of I * base
  double sign;            // I * base = sign * partner
};

constexpr std::array<Plane, 4> make_planes() {
  std::array<Plane, 4> planes{};
  constexpr std::array<std::uint32_t, 4> bases{0b000, 0b001, 0b010, 0b100};
  for (std::size_t k = 0; k < 4; ++k) {
    planes[k] = Plane{bases[k], kPseudo3 ^ bases[k],
                      static_cast<double>(ga::blade_product_sign(kPseudo3, bases[k]))};
  }
  return planes;
}

constexpr auto kPlanes = make_planes();

void require_dim3(const MultivectorField& g) {
  if (g.dim() != 3) {
    throw Error("Fourier transform pipeline supports L = 3 only, got L = " +
                std::to_string(g.dim()));
  }
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw Error("fftw_malloc failed");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

// The FFTW planner is not re-entrant; plans are created once per
// (shape, sign) under a lock and executed on fresh aligned buffers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Shape& shape, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(shape, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> dims(shape.rbegin(), shape.rend());
    FftwBuffer scratch(cell_count(shape));
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch.data,
                                   scratch.data, sign, FFTW_ESTIMATE);
    if (!plan) throw Error("FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<Shape, int>, fftw_plan> plans_;
};

MultivectorField transform(const MultivectorField& g, Direction direction) {
  require_dim3(g);
  const std::size_t n = g.cell_count();
  const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  const double scale = direction == Direction::forward ? 1.0 : 1.0 / static_cast<double>(n);
  fftw_plan plan = PlanCache::instance().get(g.shape(), sign);

  MultivectorField out(g.shape(), direction == Direction::forward ? Domain::frequency
                                                                  : Domain::spatial,
                       3);
  FftwBuffer buf(n);
  for (const Plane& p : kPlanes) {
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      auto c = g.cell(i);
      buf.data[i][0] = c[p.base];
      buf.data[i][1] = p.sign * c[p.partner];
      any = any || c[p.base] != 0.0 || c[p.partner] != 0.0;
    }
    if (!any) continue;
    fftw_execute_dft(plan, buf.data, buf.data);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = out.cell(i);
      c[p.base] = scale * buf.data[i][0];
      c[p.partner] = p.sign * scale * buf.data[i][1];
    }
  }
  return out;
}

// Mixed-radix digits of a flat index, axis 0 fastest.
void unflatten(std::size_t flat, const Shape& shape, std::vector<std::size_t>& idx) {
  for (std::size_t k = 0; k < shape.size(); ++k) {
    idx[k] = flat % shape[k];
    flat /= shape[k];
  }
}

}  // namespace

FrequencyGrid::FrequencyGrid(Shape shape) : shape_(std::move(shape)) {
  if (shape_.empty()) throw Error("frequency grid needs at least one axis");
  for (std::size_t n : shape_) {
    if (n == 0) throw Error("frequency grid axis has zero length");
  }
  size_ = cell_count(shape_);
  negation_.resize(size_);
  exceptional_.resize(size_);
  std::vector<std::size_t> idx(shape_.size());
  for (std::size_t flat = 0; flat < size_; ++flat) {
    unflatten(flat, shape_, idx);
    std::size_t neg = 0;
    std::size_t stride = 1;
    bool all_zero = true;
    bool nyquist = false;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
      const std::size_t n = shape_[k];
      const std::size_t ni = (n - idx[k]) % n;
      neg += ni * stride;
      stride *= n;
      if (idx[k] != 0) all_zero = false;
      // the bin is its own negation along this axis but not zero: Nyquist
      if (idx[k] != 0 && ni == idx[k]) nyquist = true;
    }
    negation_[flat] = neg;
    exceptional_[flat] = (all_zero || nyquist) ? 1 : 0;
  }
}

long FrequencyGrid::bin_coordinate(std::size_t i, std::size_t n) {
  return i <= n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

long FrequencyGrid::omega(std::size_t flat, std::size_t axis) const {
  for (std::size_t k = 0; k < axis; ++k) flat /= shape_[k];
  return bin_coordinate(flat % shape_[axis], shape_[axis]);
}

std::vector<long> FrequencyGrid::omega(std::size_t flat) const {
  std::vector<long> w(shape_.size());
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    w[k] = bin_coordinate(flat % shape_[k], shape_[k]);
    flat /= shape_[k];
  }
  return w;
}

std::size_t FrequencyGrid::index_of(std::span<const long> coords) const {
  if (coords.size() != shape_.size()) throw Error("frequency coordinate rank mismatch");
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    const long n = static_cast<long>(shape_[k]);
    const long i = ((coords[k] % n) + n) % n;
    flat += static_cast<std::size_t>(i) * stride;
    stride *= shape_[k];
  }
  return flat;
}

MultivectorField forward_ft(const MultivectorField& g) {
  if (g.domain() != Domain::spatial) throw Error("forward_ft expects a spatial-domain field");
  return transform(g, Direction::forward);
}

MultivectorField inverse_ft(const MultivectorField& G) {
  if (G.domain() != Domain::frequency) {
    throw Error("inverse_ft expects a frequency-domain field");
  }
  return transform(G, Direction::inverse);
}

MultivectorField brute_force_ft(const MultivectorField& g, Direction direction) {
  const std::size_t n = g.cell_count();
  if (n > kBruteForceMaxCells) {
    throw Error("brute_force_ft limited to " + std::to_string(kBruteForceMaxCells) +
                " cells, got " + std::to_string(n));
  }
  if (!ga::is_pseudoscalar_dim(g.dim())) {
    throw Error("brute_force_ft needs L = 4n+3 for a pseudoscalar kernel");
  }
  const Shape& shape = g.shape();
  const FrequencyGrid grid(shape);
  const auto& table = ga::AlgebraTable::of(g.dim());
  const std::uint32_t pseudo = (std::uint32_t{1} << g.dim()) - 1;
  const double sgn = direction == Direction::forward ? -1.0 : 1.0;
  const double scale = direction == Direction::forward ? 1.0 : 1.0 / static_cast<double>(n);

  MultivectorField out(shape,
                       direction == Direction::forward ? Domain::frequency : Domain::spatial,
                       g.dim());
  // in the forward sum the outer index is the frequency bin, in the inverse
  // sum it is the spatial cell; the phase is symmetric in the two roles
  std::vector<double> kernel(g.blade_count(), 0.0);
  std::vector<double> term(g.blade_count(), 0.0);
  std::vector<std::size_t> outer(shape.size());
  std::vector<std::size_t> inner(shape.size());
  for (std::size_t o = 0; o < n; ++o) {
    unflatten(o, shape, outer);
    auto acc = out.cell(o);
    for (std::size_t i = 0; i < n; ++i) {
      unflatten(i, shape, inner);
      double phase = 0.0;
      for (std::size_t k = 0; k < shape.size(); ++k) {
        const std::size_t x = direction == Direction::forward ? inner[k] : outer[k];
        const long w = FrequencyGrid::bin_coordinate(
            direction == Direction::forward ? outer[k] : inner[k], shape[k]);
        phase += 2.0 * std::numbers::pi * static_cast<double>(x) * static_cast<double>(w) /
                 static_cast<double>(shape[k]);
      }
      kernel[0] = std::cos(phase);
      kernel[pseudo] = sgn * std::sin(phase);
      table.multiply(g.cell(i), kernel, term);
      for (std::size_t b = 0; b < term.size(); ++b) acc[b] += term[b];
    }
    for (double& c : acc) c *= scale;
  }
  return out;
}

std::pair<MultivectorField, MultivectorField> even_odd_split(const MultivectorField& f) {
  if (f.domain() != Domain::spatial) throw Error("even_odd_split expects a spatial field");
  // spatial reflection x -> -x modulo the grid is the same index map as bin negation
  const FrequencyGrid grid(f.shape());
  MultivectorField even(f.shape(), Domain::spatial, f.dim());
  MultivectorField odd(f.shape(), Domain::spatial, f.dim());
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    auto a = f.cell(i);
    auto b = f.cell(grid.negate(i));
    auto e = even.cell(i);
    auto o = odd.cell(i);
    for (std::size_t k = 0; k < a.size(); ++k) {
      e[k] = 0.5 * (a[k] + b[k]);
      o[k] = 0.5 * (a[k] - b[k]);
    }
  }
  return {std::move(even), std::move(odd)};
}

std::pair<ScalarField, ScalarField> even_odd_split(const ScalarField& f) {
  auto [e, o] = even_odd_split(lift(f));
  return {scalar_part(e), scalar_part(o)};
}

SpectrumSplit split_spectrum(const MultivectorField& F) {
  require_dim3(F);
  SpectrumSplit s{F.component(ga::BladeIndex{0}), F.component(ga::BladeIndex{kPseudo3})};
  for (double& v : s.odd.values) v = -v;
  return s;
}

}  // namespace clifsig::spectral
