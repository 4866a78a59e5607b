#include <algorithm>
#include <cmath>

#include "gft/criteria.hpp"
#include "gft/dsl.hpp"

namespace gft {

namespace {

struct Preset {
  const char* name;
  const char* description;
};

constexpr Preset kPresets[] = {
    {"ruscheweyh", "m = 2, h = 1, g = f, alpha = 1/s; checked with T3"},
    {"moldoveanu-pascu-remark", "m = 2, h = 1, g = z, Re s = 1, c = -1/alpha; checked with T3"},
    {"singh-chichra", "h replaced by 1/h (h(0) = 1), g = f, alpha = 1/s, m = 2; checked with T3"},
    {"lewandowski", "g = f, s = alpha = 1, c = -1, m = 2, h = (k + 1)/2 with k given in the h field; checked with T3"},
    {"ovesea", "m = 2, h(0) = 1; checked with T2 (or T3 when requested)"},
    {"becker", "s = alpha = 1, h = -c; checked with the becker criterion"},
};

FunctionExpr one() { return FunctionExpr::constant(1.0); }

void require_h0_one(const FunctionExpr& h, const char* preset) {
  Complex h0 = eval(h, 0.0);
  if (std::abs(h0 - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, std::string(preset) + " preset needs h(0) = 1");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : kPresets) v.emplace_back(p.name);
    return v;
  }();
  return names;
}

std::string preset_description(std::string_view name) {
  for (const auto& p : kPresets)
    if (name == p.name) return p.description;
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

bool is_preset(std::string_view name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

PresetResult apply_preset(std::string_view name, const PresetInput& in) {
  PresetResult out{"T3", in.f, in.g, in.h, in.params};
  CriterionParams& p = out.params;
  if (name == "ruscheweyh") {
    p.m = 2.0;
    out.h = one();
    out.g = in.f;
    p.alpha = 1.0 / p.s;
  } else if (name == "moldoveanu-pascu-remark") {
    p.m = 2.0;
    out.h = one();
    out.g = FunctionExpr::variable();
    p.s = Complex(1.0, p.s.imag());
    p.c = -1.0 / p.alpha;
  } else if (name == "singh-chichra") {
    require_h0_one(in.h, "singh-chichra");
    out.h = one() / in.h;
    out.g = in.f;
    p.alpha = 1.0 / p.s;
    p.m = 2.0;
  } else if (name == "lewandowski") {
    require_h0_one(in.h, "lewandowski");
    out.g = in.f;
    p.s = 1.0;
    p.alpha = 1.0;
    p.c = -1.0;
    p.m = 2.0;
    out.h = (in.h + one()) / FunctionExpr::constant(2.0);
  } else if (name == "ovesea") {
    require_h0_one(in.h, "ovesea");
    p.m = 2.0;
    out.route = in.requested_check == "T3" ? "T3" : "T2";
  } else if (name == "becker") {
    p.s = 1.0;
    p.alpha = 1.0;
    out.h = FunctionExpr::constant(-p.c);
    out.route = "becker";
  } else {
    throw Error(ErrorKind::UnknownPreset, "unknown preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace gft
