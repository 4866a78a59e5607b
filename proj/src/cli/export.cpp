#include "gft/cli/export.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "gft/dsl.hpp"
#include "gft/parallel.hpp"

namespace gft::cli {

ExtensionExport extension_field(const Chain& chain, int resolution, double r_outer, double step) {
  if (resolution < 1) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 1");
  const DiskGrid inner{resolution, 2 * resolution, 1.0 - 1e-3, 0};
  const AnnulusGrid outer{resolution, 4 * resolution, 1.0 + 1e-3, r_outer};
  outer.validate();
  ExtensionExport out;
  out.rows.resize(inner.size());
  parallel_for(inner.size(), [&](std::size_t n) {
    const Complex z = inner.point(n);
    out.rows[n] = {z, becker_extension(chain, z), 0.0};
  });
  ExtensionField F{chain};
  auto samples = sample_annulus(F, outer, step);
  for (const auto& s : samples) out.rows.push_back({s.z, s.F, s.abs_mu});
  out.dilatation = summarize_dilatation(samples, outer, step);
  return out;
}

std::string field_csv(const std::vector<FieldRow>& rows) {
  std::string out = "x,y,reF,imF,absMu\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.z.real(), r.z.imag(), r.F.real(),
                  r.F.imag(), r.abs_mu);
    out += line;
  }
  return out;
}

namespace {

// HSV with v = 1 to 8-bit RGB.
void hsv_pixel(double hue, double sat, unsigned char* rgb) {
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = 1.0 - sat, q = 1.0 - sat * f, t = 1.0 - sat * (1.0 - f);
  double r, g, b;
  switch (sector) {
    case 0: r = 1, g = t, b = p; break;
    case 1: r = q, g = 1, b = p; break;
    case 2: r = p, g = 1, b = t; break;
    case 3: r = p, g = q, b = 1; break;
    case 4: r = t, g = p, b = 1; break;
    default: r = 1, g = p, b = q; break;
  }
  rgb[0] = static_cast<unsigned char>(std::lround(255.0 * r));
  rgb[1] = static_cast<unsigned char>(std::lround(255.0 * g));
  rgb[2] = static_cast<unsigned char>(std::lround(255.0 * b));
}

}  // namespace

std::string field_ppm(const Chain& chain, int size, double extent, double step) {
  if (size < 1) throw Error(ErrorKind::InvalidArgument, "raster size must be >= 1");
  if (!(extent > 0.0)) throw Error(ErrorKind::InvalidArgument, "raster extent must be positive");
  const std::string header = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
  std::string out(header.size() + 3 * static_cast<std::size_t>(size) * size, '\0');
  out.replace(0, header.size(), header);
  ExtensionField F{chain};
  parallel_for(static_cast<std::size_t>(size) * size, [&](std::size_t n) {
    const std::size_t row = n / size, col = n % size;
    const double x = -extent + 2.0 * extent * (col + 0.5) / size;
    const double y = extent - 2.0 * extent * (row + 0.5) / size;
    Complex z{x, y};
    Complex value;
    double mu = 0.0;
    if (std::abs(z) < 1.0) {
      value = F(z);
    } else {
      // the finite-difference stencil must stay outside the disk
      if (std::abs(z) <= 1.0 + 3.0 * step) z *= (1.0 + 3.0 * step) / std::abs(z);
      auto s = beltrami_estimate(F, z, step);
      value = s.F;
      mu = s.abs_mu;
    }
    const double hue = (std::arg(value) + kPi) / (2.0 * kPi);
    hsv_pixel(hue >= 1.0 ? 0.0 : hue, std::clamp(mu, 0.0, 1.0),
              reinterpret_cast<unsigned char*>(&out[header.size() + 3 * n]));
  });
  return out;
}

ExtendOutcome cmd_extend(const RunConfig& c, const ExtendOptions& o, bool timings) {
  const auto t0 = std::chrono::steady_clock::now();
  ExtendOutcome out;
  Json& rep = out.report;
  rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  rep["config"] = to_json(c);
  rep["extend"] = {{"resolution", o.resolution}, {"r_outer", o.r_outer}, {"step", o.step}, {"force", o.force},
                   {"ppm_size", o.ppm_size},     {"ppm_extent", o.ppm_extent}};
  try {
    if (o.resolution < 1) throw ConfigError("--resolution", "must be >= 1");
    if (!(o.r_outer > 1.0 + 1e-3)) throw ConfigError("--r-outer", "must exceed 1.001");
    if (!(o.step > 0.0)) throw ConfigError("--step", "must be positive");
    if (o.ppm_size < 0) throw ConfigError("--ppm-size", "must be >= 0");
    c.grid.validate();
    c.quadrature.validate();
    ResolvedRun r = resolve(c);
    CriterionReport report = run_criterion(r, c);
    rep["criterion"] = to_json(report);
    out.exit_code = report.satisfied ? kSatisfied : kUnsatisfied;
    if (report.satisfied || o.force) {
      Chain chain = certified_chain(r, c);
      ExtensionExport field = extension_field(chain, o.resolution, o.r_outer, o.step);
      rep["chain"] = chain.description;
      rep["dilatation"] = to_json(field.dilatation);
      rep["seam"] = to_json(seam_continuity(chain));
      std::optional<double> bound;
      if (report.qc_bound) bound = report.qc_bound->K;
      if (r.route == "T6") bound = r.params.k;
      rep["dilatation_bound"] = bound ? Json(*bound) : Json(nullptr);
      rep["bound_respected"] = bound ? Json(field.dilatation.max_abs_mu <= *bound + 0.02) : Json(nullptr);
      rep["rows"] = field.rows.size();
      out.csv = field_csv(field.rows);
      if (o.ppm_size > 0) out.ppm = field_ppm(chain, o.ppm_size, o.ppm_extent, o.step);
    }
    if (timings) rep["timings"] = {{"total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  } catch (const std::exception& e) {
    for (const char* k : {"criterion", "chain", "dilatation", "seam", "dilatation_bound", "bound_respected", "rows"})
      rep.erase(k);
    rep["error"] = error_json(e);
    out.exit_code = kInputError;
    out.csv.clear();
    out.ppm.clear();
  }
  rep["exit_code"] = out.exit_code;
  return out;
}

namespace {

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : list) {
    if (ch == ',' || ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<Complex> parse_complex_list(const std::string& list) {
  std::vector<Complex> out;
  for (const auto& item : split(list)) {
    FunctionExpr e = parse(item);
    if (e.depends_on_z()) throw ConfigError("", "list entry '" + item + "' is not a constant");
    out.push_back(eval(e, 0.0));
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& list) {
  std::vector<double> out;
  for (Complex v : parse_complex_list(list)) {
    if (v.imag() != 0.0) throw ConfigError("", "expected real list entries");
    out.push_back(v.real());
  }
  return out;
}

std::string ktable_csv(const std::vector<Complex>& s_list, const std::vector<double>& k_list) {
  std::string out = "s_re,s_im,k,l1,l2,l3,K\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (Complex s : s_list)
    for (double k : k_list) {
      QcBound b = qc_bound_K(s, k);
      out += format_double(s.real()) + "," + format_double(s.imag()) + "," + format_double(k) + "," + opt(b.l1) +
             "," + opt(b.l2) + "," + opt(b.l3) + "," + format_double(b.K) + "\n";
    }
  return out;
}

}  // namespace gft::cli
