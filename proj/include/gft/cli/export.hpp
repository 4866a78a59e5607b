#pragma once

#include <string>
#include <vector>

#include "gft/cli/run.hpp"

namespace gft::cli {

struct ExtendOptions {
  int resolution = 64;        ///< interior N x 2N, exterior N x 4N
  double r_outer = 10.0;
  double step = 1e-5;
  bool force = false;         ///< export even when the criterion fails
  int ppm_size = 0;           ///< 0: no raster
  double ppm_extent = 2.0;    ///< raster covers [-extent, extent]^2
};

struct FieldRow {
  Complex z;
  Complex F;
  double abs_mu = 0.0;
};

struct ExtensionExport {
  std::vector<FieldRow> rows;
  DilatationReport dilatation;  ///< over the exterior part of `rows`
};

/// Interior polar grid (N x 2N, r_max = 1 - 1e-3) followed by the exterior
/// annulus (N x 4N from 1 + 1e-3 to r_outer). Inside the disk F is L(z, 0),
/// analytic, so |mu| is 0 there by construction.
ExtensionExport extension_field(const Chain& chain, int resolution, double r_outer, double step);

/// Header `x,y,reF,imF,absMu`, one row per sample, 17 significant digits.
std::string field_csv(const std::vector<FieldRow>& rows);

/// Binary P6 raster: hue from arg F, saturation from |mu| clamped to [0, 1].
std::string field_ppm(const Chain& chain, int size, double extent, double step);

struct ExtendOutcome {
  Json report;
  std::string csv;
  std::string ppm;
  int exit_code = kInputError;
};

ExtendOutcome cmd_extend(const RunConfig& c, const ExtendOptions& o, bool timings = true);

/// Lists like "1, 2, 1+1i" parsed as constant expressions.
std::vector<Complex> parse_complex_list(const std::string& list);
std::vector<double> parse_real_list(const std::string& list);

/// Header `s_re,s_im,k,l1,l2,l3,K`; absent l values are empty fields.
std::string ktable_csv(const std::vector<Complex>& s_list, const std::vector<double>& k_list);

}  // namespace gft::cli
