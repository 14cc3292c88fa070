#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "acutance/batchloss.hpp"
#include "acutance/deadleaves.hpp"
#include "acutance/degrade.hpp"
#include "acutance/rawpath.hpp"
#include "cli/png_io.hpp"

namespace acut::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Options shared by measure and report.
struct MetricOptions {
  double pixel_mm = 0.2;
  double distance_mm = 1000.0;
  double csf_b = 0.2;
  double csf_c = 0.8;
  bool cap40 = false;
  std::optional<double> cap_cpd;
  double eps = 1e-12;
  std::string window = "none";
  std::string ring_order = "ratio";

  acutance::ViewingConditions viewing() const { return {pixel_mm, distance_mm}; }

  acutance::CsfParams csf() const {
    acutance::CsfParams p{csf_b, csf_c, cap_cpd};
    if (cap40 && !p.cap_cpd) p.cap_cpd = acutance::kVisualLimitCpd;
    return p;
  }

  spectrum::MeasureOptions measure() const {
    spectrum::MeasureOptions m;
    m.rel_eps = eps;
    m.hann_window = window == "hann";
    m.order = ring_order == "mean" ? spectrum::RingOrder::mean_then_ratio : spectrum::RingOrder::ratio_then_mean;
    return m;
  }

  json to_json(const acutance::AcutanceBreakdown& breakdown) const {
    const auto p = csf();
    json j;
    j["b"] = p.b;
    j["c"] = p.c;
    j["a"] = breakdown.csf_normalizer;
    j["nyquist_cpd"] = acutance::nyquist_cpd(viewing());
    j["cap_cpd"] = p.cap_cpd ? json(*p.cap_cpd) : json(nullptr);
    return {{"csf", j},
            {"viewing", {{"pixel_size_mm", pixel_mm}, {"distance_mm", distance_mm}}},
            {"measure", {{"eps", eps}, {"window", window}, {"ring_order", ring_order}}}};
  }
};

void add_metric_options(CLI::App& cmd, MetricOptions& o) {
  cmd.add_option("--pixel-mm", o.pixel_mm, "Pixel pitch P in mm")->capture_default_str();
  cmd.add_option("--distance-mm", o.distance_mm, "Viewing distance D in mm")->capture_default_str();
  cmd.add_option("--csf-b", o.csf_b, "CSF decay b")->capture_default_str();
  cmd.add_option("--csf-c", o.csf_c, "CSF exponent c")->capture_default_str();
  cmd.add_flag("--cap40", o.cap40, "Integrate only up to 40 cycles/degree");
  cmd.add_option("--cap-cpd", o.cap_cpd, "Integrate only up to this many cycles/degree");
  cmd.add_option("--eps", o.eps, "Reference power threshold relative to the spectral peak")->capture_default_str();
  cmd.add_option("--window", o.window, "Apodization before the DFT")
      ->check(CLI::IsMember({"none", "hann"}))
      ->capture_default_str();
  cmd.add_option("--ring-order", o.ring_order, "ratio: per-bin ratio then ring mean; mean: ratio of ring means")
      ->check(CLI::IsMember({"ratio", "mean"}))
      ->capture_default_str();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw IoError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

fs::path sidecar_path(const fs::path& out) { return fs::path(out.string() + ".json"); }

bool is_rawf_path(const fs::path& p) { return p.extension() == ".rawf"; }

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "not a number: '" + token + "'");
    }
  }
  return out;
}

raw::WhiteBalance parse_wb(const std::string& text) {
  const auto v = parse_number_list(text, "--wb");
  if (v.size() != 3) throw CLI::ValidationError("--wb", "expected three gains r,g,b");
  return {v[0], v[1], v[2]};
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  fs::path out;
  int size = 512;
  std::optional<int> width;
  std::optional<int> height;
  double alpha = 3.0;
  double r_min = 1.0;
  std::optional<double> r_max;
  std::string color = "uniform-rgb";
  std::string palette;
  std::uint64_t seed = 0;
  int bit_depth = 16;
  std::uint64_t max_disks = 10'000'000;
  std::string wb = "1,1,1";
  fs::path from_sidecar;
};

json params_to_json(const deadleaves::Params& p) {
  json palette = json::array();
  for (const auto& c : p.palette) palette.push_back({c[0], c[1], c[2]});
  return {{"alpha", p.alpha},        {"r_min", p.r_min},   {"r_max", p.r_max},
          {"width", p.width},        {"height", p.height}, {"color_mode", deadleaves::to_string(p.color_mode)},
          {"palette", palette},      {"seed", p.seed},     {"disk_budget", p.disk_budget}};
}

deadleaves::Params params_from_json(const json& j) {
  deadleaves::Params p;
  try {
    p.alpha = j.at("alpha").get<double>();
    p.r_min = j.at("r_min").get<double>();
    p.r_max = j.at("r_max").get<double>();
    p.width = j.at("width").get<int>();
    p.height = j.at("height").get<int>();
    p.color_mode = deadleaves::color_mode_from_string(j.at("color_mode").get<std::string>());
    for (const auto& c : j.at("palette")) p.palette.push_back({c.at(0), c.at(1), c.at(2)});
    p.seed = j.at("seed").get<std::uint64_t>();
    p.disk_budget = j.at("disk_budget").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw IoError(std::string("sidecar is missing generator parameters: ") + e.what());
  }
  return p;
}

int cmd_generate(const GenerateArgs& a) {
  deadleaves::Params p;
  json output;
  if (!a.from_sidecar.empty()) {
    const json side = read_json(a.from_sidecar);
    if (side.value("schema", "") != kSchema || side.value("command", "") != "generate") {
      throw IoError(a.from_sidecar.string() + " is not a generate sidecar of schema " + kSchema);
    }
    p = params_from_json(side.at("params"));
    output = side.at("output");
  } else {
    p.width = a.width.value_or(a.size);
    p.height = a.height.value_or(a.size);
    p.alpha = a.alpha;
    p.r_min = a.r_min;
    p.r_max = a.r_max.value_or(p.width / 4.0);
    p.color_mode = deadleaves::color_mode_from_string(a.color);
    if (!a.palette.empty()) {
      std::istringstream ss(a.palette);
      std::string triple;
      while (std::getline(ss, triple, ';')) {
        const auto v = parse_number_list(triple, "--palette");
        if (v.size() != 3) throw CLI::ValidationError("--palette", "each color needs three components");
        p.palette.push_back({v[0], v[1], v[2]});
      }
    }
    p.seed = a.seed;
    p.disk_budget = a.max_disks;
    if (is_rawf_path(a.out)) {
      const auto wb = parse_wb(a.wb);
      output = {{"format", "rawf"}, {"wb", {wb.r, wb.g, wb.b}}};
    } else {
      output = {{"format", "png"}, {"bit_depth", a.bit_depth}};
    }
  }

  const Image target = deadleaves::generate(p);
  if (output.at("format") == "rawf") {
    const raw::WhiteBalance wb{output["wb"][0], output["wb"][1], output["wb"][2]};
    const Image rgb = target.channels() == 3 ? target : [&] {
      std::vector<double> d(target.pixel_count() * 3);
      for (std::size_t i = 0; i < target.pixel_count(); ++i) d[3 * i] = d[3 * i + 1] = d[3 * i + 2] = target.data()[i];
      return Image(target.width(), target.height(), 3, std::move(d));
    }();
    raw::write_rawf(a.out, raw::mosaic_from_rgb(rgb, wb));
  } else {
    io::write_png(a.out, target, output.at("bit_depth").get<int>());
  }

  json side = {{"schema", kSchema}, {"command", "generate"}, {"params", params_to_json(p)}, {"output", output}};
  side["output"]["path"] = a.out.filename().string();
  write_text(sidecar_path(a.out), side.dump(2) + "\n");
  return kOk;
}

// ----------------------------------------------------------------- degrade

struct DegradeArgs {
  fs::path input;
  fs::path out;
  std::optional<double> awgn;
  std::string preset;
  std::optional<double> blur;
  std::optional<double> sharpen;
  double sharpen_sigma = 1.0;
  bool poisson_gaussian = false;
  double shot = raw::kDefaultShot;
  double read = raw::kDefaultRead;
  std::string denoise;
  std::uint64_t seed = 0;
  std::optional<int> bit_depth;
  fs::path replay;
};

json build_steps(const DegradeArgs& a) {
  json steps = json::array();
  if (a.blur) steps.push_back({{"op", "blur"}, {"sigma", *a.blur}});
  if (a.sharpen) steps.push_back({{"op", "sharpen"}, {"amount", *a.sharpen}, {"sigma", a.sharpen_sigma}});
  std::optional<double> sigma = a.awgn;
  if (!a.preset.empty()) sigma = a.preset == "sigma50" ? 50.0 : 25.0;
  if (sigma) steps.push_back({{"op", "awgn"}, {"sigma_255", *sigma}});
  if (a.poisson_gaussian) steps.push_back({{"op", "poisson_gaussian"}, {"shot", a.shot}, {"read", a.read}});
  if (!a.denoise.empty()) {
    const auto colon = a.denoise.find(':');
    const std::string filter = a.denoise.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : a.denoise.substr(colon + 1);
    const auto value = arg.empty() ? std::vector<double>{} : parse_number_list(arg, "--denoise");
    if (value.size() > 1) throw CLI::ValidationError("--denoise", "expected a single parameter");
    if (filter == "gaussian") {
      steps.push_back({{"op", "denoise"}, {"filter", "gaussian"}, {"sigma", value.empty() ? 1.0 : value[0]}});
    } else if (filter == "median") {
      steps.push_back({{"op", "denoise"}, {"filter", "median"}, {"window", value.empty() ? 3 : static_cast<int>(value[0])}});
    } else {
      throw CLI::ValidationError("--denoise", "expected gaussian:SIGMA or median:WINDOW");
    }
  }
  return steps;
}

Image apply_spatial(const json& step, const Image& img) {
  const std::string op = step.at("op");
  if (op == "blur") return degrade::gaussian_blur(img, step.at("sigma"));
  if (op == "sharpen") return degrade::unsharp_mask(img, step.at("amount"), step.at("sigma"));
  if (op == "denoise") {
    const auto kind = step.at("filter") == "median" ? degrade::DenoiserKind::median(step.at("window"))
                                                    : degrade::DenoiserKind::gaussian(step.at("sigma"));
    return degrade::reference_denoiser(kind)(img);
  }
  throw DomainError("unknown spatial step " + op);
}

Image apply_steps(const json& steps, Image img, std::uint64_t seed) {
  for (const auto& step : steps) {
    const std::string op = step.at("op");
    if (op == "awgn") {
      img = degrade::add_awgn(img, step.at("sigma_255"), seed);
    } else if (op == "poisson_gaussian") {
      throw CLI::ValidationError("--poisson-gaussian", "Poisson-Gaussian noise needs a RAWF input");
    } else {
      img = apply_spatial(step, img);
    }
  }
  return img;
}

raw::RawImage apply_steps(const json& steps, raw::RawImage img, std::uint64_t seed) {
  for (const auto& step : steps) {
    const std::string op = step.at("op");
    if (op == "awgn") {
      const Image mosaic(img.width(), img.height(), 1, std::vector<double>(img.data().begin(), img.data().end()));
      const Image noisy = degrade::add_awgn(mosaic, step.at("sigma_255"), seed);
      img = raw::RawImage(img.width(), img.height(), {noisy.data().begin(), noisy.data().end()}, img.wb());
    } else if (op == "poisson_gaussian") {
      img = raw::add_poisson_gaussian(img, step.at("shot"), step.at("read"), seed + 1);
    } else {
      // Spatial filters act on each CFA plane separately.
      auto packed = raw::pack_rggb(img);
      for (auto& plane : packed.planes) {
        const Image filtered = apply_spatial(step, Image(packed.width, packed.height, 1, plane));
        plane.assign(filtered.data().begin(), filtered.data().end());
      }
      img = raw::unpack_rggb(packed, img.wb());
    }
  }
  return img;
}

int cmd_degrade(const DegradeArgs& a) {
  fs::path input = a.input;
  json steps;
  std::uint64_t seed = a.seed;
  std::optional<int> depth = a.bit_depth;
  if (!a.replay.empty()) {
    const json side = read_json(a.replay);
    if (side.value("schema", "") != kSchema || side.value("command", "") != "degrade") {
      throw IoError(a.replay.string() + " is not a degrade sidecar of schema " + kSchema);
    }
    if (input.empty()) input = a.replay.parent_path() / side.at("input").get<std::string>();
    steps = side.at("steps");
    seed = side.at("seed").get<std::uint64_t>();
    if (side.at("output").contains("bit_depth")) depth = side["output"]["bit_depth"].get<int>();
  } else {
    steps = build_steps(a);
  }
  if (input.empty()) throw CLI::ValidationError("input", "an input image is required");

  json output;
  if (io::has_rawf_magic(input)) {
    if (!is_rawf_path(a.out)) throw CLI::ValidationError("--out", "RAWF input must be written as .rawf");
    raw::write_rawf(a.out, apply_steps(steps, raw::read_rawf(input), seed));
    output = {{"format", "rawf"}};
  } else {
    io::PngInfo info;
    const Image img = io::read_png(input, &info);
    const int bits = depth.value_or(info.bit_depth);
    io::write_png(a.out, apply_steps(steps, img, seed), bits);
    output = {{"format", "png"}, {"bit_depth", bits}};
  }
  output["path"] = a.out.filename().string();

  std::error_code ec;
  auto rel = fs::relative(fs::absolute(input), fs::absolute(a.out).parent_path(), ec);
  const json side = {{"schema", kSchema}, {"command", "degrade"},
                     {"input", ec ? fs::absolute(input).string() : rel.string()},
                     {"seed", seed},     {"steps", steps},
                     {"output", output}};
  write_text(sidecar_path(a.out), side.dump(2) + "\n");
  return kOk;
}

// ----------------------------------------------------------------- measure

struct MeasureArgs {
  fs::path ref;
  fs::path test;
  fs::path csv;
  fs::path json_out;
  double peak = 1.0;
  MetricOptions metric;
};

struct Measurement {
  acutance::AcutanceBreakdown breakdown;
  double psnr = 0.0;
  int n = 0;
  std::string domain;
};

Measurement measure_files(const fs::path& ref_path, const fs::path& test_path, const MetricOptions& o, double peak) {
  const bool ref_raw = io::has_rawf_magic(ref_path);
  const bool test_raw = io::has_rawf_magic(test_path);
  if (ref_raw != test_raw) throw DomainError("reference and test must both be PNG or both be RAWF");
  Measurement m;
  spectrum::MtfCurve curve;
  if (ref_raw) {
    const auto ref = raw::read_rawf(ref_path);
    const auto test = raw::read_rawf(test_path);
    if (!(ref.wb() == test.wb())) throw DomainError("RAWF white-balance gains differ");
    curve = spectrum::measure_mtf(raw::raw_to_grey(raw::pack_rggb(ref), ref.wb()),
                                  raw::raw_to_grey(raw::pack_rggb(test), test.wb()), o.measure());
    m.psnr = psnr(Image(ref.width(), ref.height(), 1, {ref.data().begin(), ref.data().end()}),
                  Image(test.width(), test.height(), 1, {test.data().begin(), test.data().end()}), peak);
    m.domain = "raw";
  } else {
    const Image ref = io::read_png(ref_path);
    const Image test = io::read_png(test_path);
    require_same_shape(ref, test, "measure");
    curve = spectrum::measure_mtf(ref, test, o.measure());
    m.psnr = psnr(ref, test, peak);
    m.domain = "rgb";
  }
  m.n = curve.n();
  m.breakdown = acutance::evaluate(curve, o.csf(), o.viewing());
  return m;
}

json psnr_json(double value) { return std::isinf(value) ? json(nullptr) : json(value); }

int cmd_measure(const MeasureArgs& a) {
  const auto m = measure_files(a.ref, a.test, a.metric, a.peak);
  json j = a.metric.to_json(m.breakdown);
  j["schema"] = kSchema;
  j["command"] = "measure";
  j["ref"] = a.ref.string();
  j["test"] = a.test.string();
  j["domain"] = m.domain;
  j["n"] = m.n;
  j["acutance"] = m.breakdown.acutance;
  j["acutance_loss"] = std::abs(1.0 - m.breakdown.acutance);
  j["psnr"] = psnr_json(m.psnr);
  j["psnr_infinite"] = std::isinf(m.psnr);
  if (!a.csv.empty()) write_text(a.csv, rings_csv(m.breakdown.rows));
  if (!a.json_out.empty()) write_text(a.json_out, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kOk;
}

// ------------------------------------------------------------------ report

struct ReportArgs {
  fs::path manifest;
  fs::path out_dir;
  std::string lambdas;
  std::string fidelity = "l2";
  MetricOptions metric;
};

struct ItemResult {
  bool ok = false;
  std::string error;
  Measurement m;
  double l2 = 0.0;
  double l1 = 0.0;
};

int cmd_report(const ReportArgs& a) {
  const auto entries = parse_manifest(read_text(a.manifest), a.manifest.parent_path());
  if (entries.empty()) throw DomainError("manifest " + a.manifest.string() + " lists no items");
  std::vector<double> lambdas = a.lambdas.empty() ? std::vector<double>(std::begin(batch::kLambdaGrid),
                                                                        std::end(batch::kLambdaGrid))
                                                  : parse_number_list(a.lambdas, "--lambdas");
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw CLI::ValidationError("--lambdas", "lambda values must be >= 0");
  }

  std::vector<ItemResult> results(entries.size());
  const auto n_items = static_cast<std::ptrdiff_t>(entries.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n_items; ++i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    auto& r = results[static_cast<std::size_t>(i)];
    try {
      for (const auto& p : {e.clean, e.restored}) {
        if (!fs::exists(p)) throw IoError("missing file " + p.string());
      }
      r.m = measure_files(e.clean, e.restored, a.metric, 1.0);
      if (r.m.domain != "rgb") throw DomainError("report items must be PNG images");
      const Image clean = io::read_png(e.clean);
      const Image restored = io::read_png(e.restored);
      r.l2 = batch::l2_loss(clean, restored);
      r.l1 = batch::l1_loss(clean, restored);
      r.ok = true;
    } catch (const std::exception& ex) {
      r.error = ex.what();
    }
  }

  fs::create_directories(a.out_dir);
  json missing = json::array();
  std::vector<batch::ItemTerms> terms;
  std::ostringstream items_csv;
  items_csv << "index,clean,restored,is_dead_leaves,n,l2,l1,psnr,acutance,acutance_loss\n";
  const std::vector<acutance::RingRow>* mean_template = nullptr;
  std::vector<double> mean_mtf;
  std::size_t mean_count = 0;
  double acutance_sum = 0.0;
  std::size_t dead_leaves_ok = 0;
  const bool any_dead_leaves = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.is_dead_leaves; });

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto& r = results[i];
    if (!r.ok) {
      missing.push_back({{"index", i}, {"clean", e.clean.string()}, {"restored", e.restored.string()},
                         {"error", r.error}});
      continue;
    }
    const double a_score = r.m.breakdown.acutance;
    items_csv << i << ',' << csv_field(e.clean.string()) << ',' << csv_field(e.restored.string()) << ','
              << (e.is_dead_leaves ? 1 : 0) << ',' << r.m.n << ',' << format_double(r.l2) << ','
              << format_double(r.l1) << ',' << (std::isinf(r.m.psnr) ? std::string("inf") : format_double(r.m.psnr))
              << ',' << format_double(a_score) << ',' << format_double(std::abs(1.0 - a_score)) << '\n';
    terms.push_back({a.fidelity == "l1" ? r.l1 : r.l2, std::abs(1.0 - a_score), e.is_dead_leaves});
    if (e.is_dead_leaves) {
      acutance_sum += a_score;
      ++dead_leaves_ok;
    }
    // Dataset-mean curve over dead leaves items (all items when none is flagged), same size as the first.
    if (e.is_dead_leaves || !any_dead_leaves) {
      if (!mean_template) {
        mean_template = &r.m.breakdown.rows;
        mean_mtf.assign(mean_template->size(), 0.0);
      }
      if (r.m.breakdown.rows.size() == mean_template->size()) {
        for (std::size_t k = 0; k < mean_mtf.size(); ++k) mean_mtf[k] += r.m.breakdown.rows[k].mtf;
        ++mean_count;
      } else {
        missing.push_back({{"index", i}, {"error", "size differs from the first item; excluded from mean curve"}});
      }
    }
  }

  write_text(a.out_dir / "items.csv", items_csv.str());

  std::optional<double> mean_curve_acutance;
  if (mean_template) {
    auto rows = *mean_template;
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].mtf = mean_mtf[k] / static_cast<double>(mean_count);
    write_text(a.out_dir / "mean_mtf.csv", rings_csv(rows));
    mean_curve_acutance = reintegrate(rows);
  }

  std::ostringstream sweep;
  sweep << "lambda,fidelity,acutance_term,total\n";
  if (!terms.empty()) {
    for (double l : lambdas) {
      const auto loss = batch::combine(terms, l);
      sweep << format_double(l) << ',' << format_double(loss.fidelity) << ',' << format_double(loss.acutance) << ','
            << format_double(loss.total) << '\n';
    }
  }
  write_text(a.out_dir / "lambda_sweep.csv", sweep.str());

  const bool partial = terms.size() != entries.size();
  const auto first_ok = std::find_if(results.begin(), results.end(), [](const ItemResult& r) { return r.ok; });
  json summary = a.metric.to_json(first_ok != results.end() ? first_ok->m.breakdown : acutance::AcutanceBreakdown{});
  summary["schema"] = kSchema;
  summary["command"] = "report";
  summary["manifest"] = a.manifest.string();
  summary["fidelity"] = a.fidelity;
  summary["lambdas"] = lambdas;
  summary["items"] = entries.size();
  summary["items_measured"] = terms.size();
  summary["dead_leaves_items"] = dead_leaves_ok;
  summary["mean_acutance"] = dead_leaves_ok ? json(acutance_sum / static_cast<double>(dead_leaves_ok)) : json(nullptr);
  summary["mean_curve_items"] = mean_count;
  summary["mean_curve_acutance"] = mean_curve_acutance ? json(*mean_curve_acutance) : json(nullptr);
  summary["problems"] = missing;
  summary["partial"] = partial;
  write_text(a.out_dir / "summary.json", summary.dump(2) + "\n");

  if (partial) {
    std::cerr << "report is partial: " << (entries.size() - terms.size()) << " item(s) could not be measured\n";
    return kIo;
  }
  return kOk;
}

}  // namespace

std::string rings_csv(const std::vector<acutance::RingRow>& rows) {
  std::string out = "k,f_digital,f_angular,mtf,csf_weight\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + format_double(r.f_digital) + ',' + format_double(r.f_angular) + ',' +
           format_double(r.mtf) + ',' + format_double(r.csf_weight) + '\n';
  }
  return out;
}

std::vector<acutance::RingRow> parse_rings_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "k,f_digital,f_angular,mtf,csf_weight") {
    throw IoError("ring CSV: unexpected header");
  }
  std::vector<acutance::RingRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    acutance::RingRow r{};
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf", &r.k, &r.f_digital, &r.f_angular, &r.mtf, &r.csf_weight) !=
        5) {
      throw IoError("ring CSV: malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

double reintegrate(const std::vector<acutance::RingRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.f_angular);
    y.push_back(r.csf_weight * r.mtf);
  }
  return acutance::trapezoid(x, y);
}

std::vector<ManifestEntry> parse_manifest(const std::string& text, const fs::path& base_dir) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    if (f.size() < 3 || f.size() > 4) {
      throw IoError("manifest line " + std::to_string(line_no) + ": expected 'clean restored flag [degraded]'");
    }
    ManifestEntry e;
    auto resolve = [&](const std::string& p) {
      fs::path path(p);
      return path.is_absolute() ? path : base_dir / path;
    };
    e.clean = resolve(f[0]);
    e.restored = resolve(f[1]);
    if (f[2] == "1" || f[2] == "true") {
      e.is_dead_leaves = true;
    } else if (f[2] == "0" || f[2] == "false") {
      e.is_dead_leaves = false;
    } else {
      throw IoError("manifest line " + std::to_string(line_no) + ": flag must be 0 or 1");
    }
    if (f.size() == 4) e.degraded = resolve(f[3]);
    out.push_back(std::move(e));
  }
  return out;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Dead leaves texture acutance bench: target generation, degradation and MTF/acutance measurement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kSchema));

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a dead leaves target (PNG, or RAWF mosaic for *.rawf)");
  generate->add_option("-o,--out", gen.out, "Output path (.png or .rawf)")->required();
  generate->add_option("--size", gen.size, "Side length of a square target")->capture_default_str();
  generate->add_option("--width", gen.width, "Width, overrides --size");
  generate->add_option("--height", gen.height, "Height, overrides --size");
  generate->add_option("--alpha", gen.alpha, "Radius power-law exponent")->capture_default_str();
  generate->add_option("--rmin", gen.r_min, "Smallest disk radius in pixels")->capture_default_str();
  generate->add_option("--rmax", gen.r_max, "Largest disk radius in pixels (default width/4)");
  generate->add_option("--color", gen.color, "Disk color law")
      ->check(CLI::IsMember({"uniform-rgb", "grey-uniform", "palette"}))
      ->capture_default_str();
  generate->add_option("--palette", gen.palette, "Palette colors as 'r,g,b;r,g,b;...'");
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--bit-depth", gen.bit_depth, "PNG bit depth")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  generate->add_option("--max-disks", gen.max_disks, "Disk budget before giving up")->capture_default_str();
  generate->add_option("--wb", gen.wb, "White-balance gains r,g,b for RAWF output")->capture_default_str();
  generate->add_option("--from-sidecar", gen.from_sidecar, "Regenerate from a generate sidecar JSON");

  DegradeArgs deg;
  auto* degrade_cmd = app.add_subcommand("degrade", "Apply blur/sharpen/noise/denoise steps to an image");
  degrade_cmd->add_option("input", deg.input, "Input PNG or RAWF");
  degrade_cmd->add_option("-o,--out", deg.out, "Output path")->required();
  degrade_cmd->add_option("--awgn", deg.awgn, "Additive white Gaussian noise, sigma on the 0..255 scale");
  degrade_cmd->add_option("--preset", deg.preset, "Noise preset: sigma25 or sigma50")
      ->check(CLI::IsMember({"sigma25", "sigma50"}));
  degrade_cmd->add_option("--blur", deg.blur, "Periodic Gaussian blur sigma in pixels");
  degrade_cmd->add_option("--sharpen", deg.sharpen, "Unsharp-mask amount");
  degrade_cmd->add_option("--sharpen-sigma", deg.sharpen_sigma, "Unsharp-mask blur sigma")->capture_default_str();
  degrade_cmd->add_flag("--poisson-gaussian", deg.poisson_gaussian, "Heteroscedastic sensor noise (RAWF input)");
  degrade_cmd->add_option("--shot", deg.shot, "Poisson-Gaussian shot coefficient")->capture_default_str();
  degrade_cmd->add_option("--read", deg.read, "Poisson-Gaussian read variance")->capture_default_str();
  degrade_cmd->add_option("--denoise", deg.denoise, "Reference restorer: gaussian:SIGMA or median:WINDOW");
  degrade_cmd->add_option("--seed", deg.seed, "Noise seed")->capture_default_str();
  degrade_cmd->add_option("--bit-depth", deg.bit_depth, "PNG output depth (default: input depth)")
      ->check(CLI::IsMember({8, 16}));
  degrade_cmd->add_option("--replay", deg.replay, "Re-run the steps recorded in a degrade sidecar");

  MeasureArgs mea;
  auto* measure = app.add_subcommand("measure", "MTF and texture acutance of a test image against its reference");
  measure->add_option("ref", mea.ref, "Reference image (PNG or RAWF)")->required();
  measure->add_option("test", mea.test, "Test image (PNG or RAWF)")->required();
  measure->add_option("--csv", mea.csv, "Write per-ring rows here");
  measure->add_option("--json", mea.json_out, "Write the JSON summary here (also printed)");
  measure->add_option("--peak", mea.peak, "PSNR peak value")->capture_default_str();
  add_metric_options(*measure, mea.metric);

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Dataset report: mean MTF, per-item scores and a lambda sweep");
  report->add_option("manifest", rep.manifest, "Manifest: clean restored flag per line")
      ->required();
  report->add_option("-o,--out-dir", rep.out_dir, "Output directory")->required();
  report->add_option("--lambdas", rep.lambdas, "Comma-separated lambda values (default 0,2,5,10,20,50,100,200,500)");
  report->add_option("--fidelity", rep.fidelity, "Fidelity term")
      ->check(CLI::IsMember({"l2", "l1"}))
      ->capture_default_str();
  add_metric_options(*report, rep.metric);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (generate->parsed()) return cmd_generate(gen);
    if (degrade_cmd->parsed()) return cmd_degrade(deg);
    if (measure->parsed()) return cmd_measure(mea);
    if (report->parsed()) return cmd_report(rep);
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const json::exception& e) {
    std::cerr << "I/O error: malformed sidecar: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace acut::cli
