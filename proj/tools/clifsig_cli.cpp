// SPDX-License-Identifier: Apache-2.0
//
// clifsig: batch front end for the analytic-signal pipeline.
//
//   clifsig analytic    --multiplier NAME [opts] INPUT OUTDIR
//   clifsig reconstruct [--orientation-only] [--keep-mean] ARCHIVE OUTDIR
//   clifsig field       --multiplier NAME [--shape 32x32] OUT.csv
//   clifsig selftest    [--json] [--inject-fault hahn-sign]
//
// stdout carries JSON lines only; prose goes to stderr.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "clifsig/acceptance.hpp"
#include "clifsig/analytic.hpp"
#include "clifsig/error.hpp"
#include "clifsig/io.hpp"
#include "clifsig/multipliers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace clifsig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

const char* const kBladeNames[8] = {"s", "e1", "e2", "e12", "e3", "e13", "e23", "e123"};

struct InputError : Error {
  using Error::Error;
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

// One verification line; returns whether it passed.
bool emit_check(const std::string& check, double residual, double tolerance) {
  const bool pass = residual <= tolerance;
  emit({{"check", check},
        {"status", pass ? "pass" : "fail"},
        {"residual", residual},
        {"tolerance", tolerance}});
  return pass;
}

void emit_info(const std::string& check, json extra) {
  json j = {{"check", check}, {"status", "info"}, {"residual", nullptr}, {"tolerance", nullptr}};
  j.update(extra);
  emit(j);
}

struct MultiplierOptions {
  std::string name = "monogenic";
  std::optional<std::uint64_t> seed;
  multipliers::ParametricParams params;
  bool params_given = false;
  std::string s_rule = "one";

  void attach(CLI::App* cmd) {
    cmd->add_option("--multiplier", name, "Multiplier constructor")
        ->check(CLI::IsMember(multipliers::known_multiplier_names()));
    cmd->add_option("--seed", seed, "Seed for --multiplier random");
    add_param(cmd, "--A", params.A, "Overall magnitude A >= 1");
    add_param(cmd, "--A1", params.A1, "Coefficient A1");
    add_param(cmd, "--A2", params.A2, "Coefficient A2");
    add_param(cmd, "--B1", params.B1, "Coefficient B1");
    add_param(cmd, "--B2", params.B2, "Coefficient B2");
    add_param(cmd, "--alpha1", params.alpha1, "Exponent alpha1");
    add_param(cmd, "--alpha2", params.alpha2, "Exponent alpha2");
    add_param(cmd, "--beta1", params.beta1, "Exponent beta1");
    add_param(cmd, "--beta2", params.beta2, "Exponent beta2");
    cmd->add_option("--s-rule", s_rule, "Pseudovector sign rule: one | sign-product")
        ->each([this](const std::string&) { params_given = true; });
  }

  void add_param(CLI::App* cmd, const std::string& flag, double& slot, const std::string& help) {
    cmd->add_option(flag, slot, help)->each([this](const std::string&) { params_given = true; });
  }

  multipliers::MultiplierSpec spec() const {
    multipliers::MultiplierSpec s;
    s.name = name;
    s.seed = seed;
    if (params_given) {
      s.params = params;
      s.params->s_rule = multipliers::sign_rule_from_string(s_rule);
    }
    return s;
  }
};

json params_json(const multipliers::ParametricParams& p) {
  return {{"A", p.A},           {"A1", p.A1},         {"A2", p.A2},
          {"B1", p.B1},         {"B2", p.B2},         {"alpha1", p.alpha1},
          {"alpha2", p.alpha2}, {"beta1", p.beta1},   {"beta2", p.beta2},
          {"s_rule", multipliers::to_string(p.s_rule)}};
}

multipliers::ParametricParams params_from_json(const json& j) {
  multipliers::ParametricParams p;
  p.A = j.at("A");
  p.A1 = j.at("A1");
  p.A2 = j.at("A2");
  p.B1 = j.at("B1");
  p.B2 = j.at("B2");
  p.alpha1 = j.at("alpha1");
  p.alpha2 = j.at("alpha2");
  p.beta1 = j.at("beta1");
  p.beta2 = j.at("beta2");
  p.s_rule = multipliers::sign_rule_from_string(j.at("s_rule"));
  return p;
}

ScalarField load_input(const fs::path& path) {
  if (!fs::exists(path)) throw InputError("input '" + path.string() + "' does not exist");
  const std::string ext = path.extension().string();
  if (ext == ".pgm" || ext == ".png" || ext == ".PGM" || ext == ".PNG") {
    return io::load_image(path).to_field();
  }
  return io::load_signal_1d(path);
}

Shape parse_shape(const std::string& text) {
  Shape shape;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t x = text.find('x', pos);
    const std::string part = text.substr(pos, x == std::string::npos ? std::string::npos : x - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad --shape '" + text + "', expected e.g. 32x32");
    }
    shape.push_back(std::stoul(part));
    if (x == std::string::npos) break;
    pos = x + 1;
  }
  return shape;
}

std::vector<double> values_of(const ScalarField& f) { return f.values; }

// ---- analytic ------------------------------------------------------------

struct AnalyticArgs {
  MultiplierOptions mult;
  std::string input;
  std::string outdir;
  bool engineering = false;
  std::size_t stride = 1;
};

int cmd_analytic(const AnalyticArgs& args) {
  const ScalarField f = load_input(args.input);
  const multipliers::MultiplierSpec spec = args.mult.spec();
  const auto a = multipliers::build(spec, spectral::FrequencyGrid(f.shape));
  const analytic::AnalyticDecomposition d = analytic::decompose(f, a);
  const analytic::ExceptionalSplit split = analytic::remove_exceptional(f, a);

  const auto files = io::export_maps(d, args.outdir, args.stride);

  const double scale = args.engineering ? 2.0 : 1.0;
  io::FieldArchive ar;
  ar.shape = f.shape;
  ar.multiplier = spec.name;
  ar.seed = spec.seed;
  ar.symmetry_class = multipliers::to_string(d.symmetry);
  ar.extra["kind"] = multipliers::to_string(d.kind);
  ar.extra["fA_scale"] = scale;
  if (spec.params) ar.extra["params"] = params_json(*spec.params);
  ar.add("f", values_of(f));
  ar.add("exceptional", values_of(split.removed));
  for (std::uint32_t b = 0; b < 8; ++b) {
    ar.add(std::string("fH.") + kBladeNames[b], values_of(d.fH.component(ga::BladeIndex{b})));
  }
  for (std::uint32_t b = 0; b < 8; ++b) {
    ScalarField c = d.fA.component(ga::BladeIndex{b});
    for (double& x : c.values) x *= scale;
    ar.add(std::string("fA.") + kBladeNames[b], values_of(c));
  }
  if (d.has_polar()) {
    ar.add("R", values_of(*d.R));
    ar.add("theta", values_of(*d.theta));
    ar.add("vnorm", values_of(*d.fH_norm));
    std::vector<double> invalid(d.invalid.begin(), d.invalid.end());
    ar.add("invalid", std::move(invalid));
  }
  if (d.vhat) {
    for (std::size_t k = 0; k < 3; ++k) ar.add("vhat" + std::to_string(k + 1), values_of((*d.vhat)[k]));
    ar.add("sigma", values_of(*d.sigma));
    ar.add("kappa", values_of(*d.kappa));
  }
  const fs::path archive_path = fs::path(args.outdir) / "analytic.clifsig";
  io::save_field(ar, archive_path);

  emit_info("classification", {{"multiplier", spec.name},
                               {"kind", multipliers::to_string(d.kind)},
                               {"class", multipliers::to_string(d.symmetry)},
                               {"archive", archive_path.string()},
                               {"files", files}});
  bool ok = true;
  ok &= emit_check("multiplier-unit", a.unit_residual(), multipliers::kUnitTolerance);
  const auto rec = analytic::reconstruct(analytic::extended_hilbert(split.kept, a), a);
  ok &= emit_check("toggle", std::max(max_abs_diff(rec.f, split.kept), rec.nonscalar_residual),
                   1e-8);
  if (d.has_polar()) {
    double vanish = 0.0;
    if (d.kind == multipliers::Kind::scalar) {
      vanish = max_abs(*d.fH_re);
    } else {
      for (const auto& w : *d.W) vanish = std::max(vanish, max_abs(w));
    }
    ok &= emit_check("generic-vanishing", vanish, 1e-10);
    double polar = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double R = (*d.R)[i], th = (*d.theta)[i];
      polar = std::max(polar, std::abs(0.5 * R * std::cos(th) - 0.5 * f[i]));
      polar = std::max(polar, std::abs(0.5 * R * std::sin(th) - 0.5 * (*d.fH_norm)[i]));
    }
    ok &= emit_check("polar-consistency", polar, 1e-10);
  }
  return ok ? kExitOk : kExitVerify;
}

// ---- reconstruct ---------------------------------------------------------

struct ReconstructArgs {
  MultiplierOptions mult;
  std::string archive;
  std::string outdir;
  bool orientation_only = false;
  bool keep_mean = false;
  bool multiplier_given = false;
};

int cmd_reconstruct(const ReconstructArgs& args) {
  if (!fs::exists(args.archive)) {
    throw InputError("archive '" + args.archive + "' does not exist");
  }
  const io::FieldArchive ar = io::load_field(args.archive);
  multipliers::MultiplierSpec spec;
  spec.name = ar.multiplier;
  spec.seed = ar.seed;
  if (ar.extra.contains("params")) spec.params = params_from_json(ar.extra["params"]);
  if (args.multiplier_given) {
    const auto asked = args.mult.spec();
    if (asked.name != spec.name || asked.seed != spec.seed) {
      throw InputError("archive was made with multiplier '" + spec.name + "'" +
                       (spec.seed ? " seed " + std::to_string(*spec.seed) : "") +
                       ", not '" + asked.name + "'" +
                       (asked.seed ? " seed " + std::to_string(*asked.seed) : ""));
    }
  }
  const auto a = multipliers::build(spec, spectral::FrequencyGrid(ar.shape));
  if (multipliers::to_string(multipliers::classify(a)) != ar.symmetry_class) {
    throw InputError("archive class '" + ar.symmetry_class + "' does not match multiplier '" +
                     spec.name + "'");
  }

  const ScalarField f = ar.field("f");
  const ScalarField removed = ar.field("exceptional");
  ScalarField reference = f;
  if (!args.keep_mean) {
    for (std::size_t i = 0; i < f.size(); ++i) reference[i] -= removed[i];
  }

  ScalarField raw;
  if (args.orientation_only) {
    if (!ar.has("vhat1")) {
      throw InputError("archive has no orientation field; --orientation-only needs a "
                       "vector-kind generic multiplier");
    }
    raw = analytic::reconstruct_from_orientation(
        {ar.field("vhat1"), ar.field("vhat2"), ar.field("vhat3")}, a);
  } else {
    MultivectorField fH(ar.shape, Domain::spatial, 3);
    for (std::uint32_t b = 0; b < 8; ++b) {
      fH.set_component(ga::BladeIndex{b}, ar.field(std::string("fH.") + kBladeNames[b]));
    }
    raw = analytic::reconstruct(fH, a).f;
  }
  // drop whatever sits on exceptional bins, then optionally put the recorded content back
  ScalarField out = analytic::remove_exceptional(raw, a).kept;
  if (args.keep_mean) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += removed[i];
  }

  std::error_code ec;
  fs::create_directories(args.outdir, ec);
  if (ec || !fs::is_directory(args.outdir)) {
    throw InputError("cannot create output directory '" + args.outdir + "'");
  }
  const io::Preview p = io::make_preview(out);
  const fs::path dir(args.outdir);
  if (out.shape.size() <= 2) io::write_pgm(dir / "reconstructed.pgm", out.shape, p.bytes);
  {
    std::ofstream side(dir / "reconstructed.json");
    side << json{{"file", "reconstructed.pgm"}, {"min", p.min}, {"max", p.max}}.dump(2) << '\n';
  }
  io::FieldArchive rec;
  rec.shape = out.shape;
  rec.multiplier = ar.multiplier;
  rec.seed = ar.seed;
  rec.symmetry_class = ar.symmetry_class;
  rec.extra = ar.extra;
  rec.extra["mode"] = args.orientation_only ? "orientation-only" : "full";
  rec.extra["keep_mean"] = args.keep_mean;
  rec.add("f", out.values);
  io::save_field(rec, dir / "reconstructed.clifsig");

  const double rho = acceptance::pearson(out, reference);
  emit_info("pearson-correlation", {{"value", rho}});
  if (args.orientation_only) {
    emit_info("orientation-only", {{"max_abs", max_abs_diff(out, reference)}});
    return kExitOk;
  }
  return emit_check("reconstruction", max_abs_diff(out, reference), 1e-8) ? kExitOk : kExitVerify;
}

// ---- field ---------------------------------------------------------------

struct FieldArgs {
  MultiplierOptions mult;
  std::string shape = "32x32";
  std::string output;
};

int cmd_field(const FieldArgs& args) {
  const auto a = multipliers::build(args.mult.spec(), spectral::FrequencyGrid(parse_shape(args.shape)));
  if (a.kind() != multipliers::Kind::vector_pseudovector) {
    throw InputError("multiplier '" + a.name() + "' is scalar; field export needs a vector kind");
  }
  const multipliers::QuiverTable table = multipliers::field_export(a);
  std::ofstream out(args.output);
  if (!out) throw InputError("cannot write '" + args.output + "'");
  multipliers::write_quiver_csv(table, out);
  if (!out) throw InputError("write failed for '" + args.output + "'");
  emit_info("field-export", {{"rows", table.rows.size()}, {"file", args.output}});
  return emit_check("odd-symmetry", table.odd_residual, multipliers::kSymmetryTolerance)
             ? kExitOk
             : kExitVerify;
}

// ---- selftest ------------------------------------------------------------

struct SelftestArgs {
  bool json = false;
  std::string fault;
};

int cmd_selftest(const SelftestArgs& args) {
  acceptance::Options opt;
  if (args.fault == "hahn-sign") {
    opt.inject_hahn_sign_fault = true;
  } else if (!args.fault.empty()) {
    throw InputError("unknown fault '" + args.fault + "' (known: hahn-sign)");
  }
  bool ok = true;
  for (const auto& r : acceptance::run_all(opt)) {
    ok = ok && r.pass;
    if (args.json) {
      emit({{"check", r.check},
            {"id", r.id},
            {"status", r.pass ? "pass" : "fail"},
            {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
            {"tolerance", r.tolerance},
            {"detail", r.detail}});
    }
    std::fprintf(stderr, "[%s] %2d %-32s residual=%.3e tol=%.0e  %s\n", r.pass ? "PASS" : "FAIL",
                 r.id, r.check.c_str(), r.residual, r.tolerance, r.detail.c_str());
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivector analytic signals in G_3"};
  app.require_subcommand(1);

  AnalyticArgs an;
  auto* c_an = app.add_subcommand("analytic", "Decompose an image or 1-D signal");
  an.mult.attach(c_an);
  c_an->add_option("input", an.input, "PGM/PNG image or 1-D sample file")->required();
  c_an->add_option("outdir", an.outdir, "Output directory")->required();
  c_an->add_flag("--engineering-scale", an.engineering, "Store 2 f_A instead of f_A");
  c_an->add_option("--stride", an.stride, "Quiver subsampling stride")->check(CLI::PositiveNumber);

  ReconstructArgs re;
  auto* c_re = app.add_subcommand("reconstruct", "Recover f from an analytic archive");
  re.mult.attach(c_re);
  c_re->add_option("archive", re.archive, "Archive written by 'analytic'")->required();
  c_re->add_option("outdir", re.outdir, "Output directory")->required();
  c_re->add_flag("--orientation-only", re.orientation_only, "Use only the unit orientation field");
  c_re->add_flag("--keep-mean", re.keep_mean, "Re-add the exceptional-bin content");

  FieldArgs fi;
  auto* c_fi = app.add_subcommand("field", "Write a multiplier's vector field as CSV");
  fi.mult.attach(c_fi);
  c_fi->add_option("--shape", fi.shape, "Grid shape, e.g. 32x32");
  c_fi->add_option("output", fi.output, "CSV path")->required();

  SelftestArgs st;
  auto* c_st = app.add_subcommand("selftest", "Run the acceptance suite");
  c_st->add_flag("--json", st.json, "One JSON object per check on stdout");
  c_st->add_option("--inject-fault", st.fault, "Negative control (hahn-sign)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"check", "usage"}, {"status", "error"}, {"message", e.what()}});
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c_an->parsed()) return cmd_analytic(an);
    if (c_re->parsed()) {
      re.multiplier_given = c_re->count("--multiplier") > 0;
      return cmd_reconstruct(re);
    }
    if (c_fi->parsed()) return cmd_field(fi);
    if (c_st->parsed()) return cmd_selftest(st);
  } catch (const std::exception& e) {
    emit({{"check", "error"}, {"status", "error"}, {"message", e.what()}});
    std::cerr << "clifsig: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
