// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Reference values come from closed forms, series
// expansions or brute-force sampling computed here, not from the library
// routine under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gft/cli/export.hpp"
#include "gft/dsl.hpp"
#include "gft/operators.hpp"
#include "gft/oracle.hpp"
#include "gft/qc_extension.hpp"
#include "support/series.hpp"

using namespace gft;
using namespace gft::cli;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  // (0, hi]
  double open_closed(double hi) { return hi - uniform(0.0, hi); }
  Complex disk(double r) { return std::polar(r * std::sqrt(uniform(0, 1)), uniform(-kPi, kPi)); }
  Complex box(double half) { return {uniform(-half, half), uniform(-half, half)}; }
};

// z + eps z^2 with eps printed exactly
std::string polynomial_source(double eps) { return "z + " + format_double(eps) + "*z^2"; }

// Passing verdicts collected for the oracle sweep.
struct Certified {
  std::string label;
  std::function<Complex(Complex)> F;
};
std::vector<Certified> g_certified;

RunConfig base_config() {
  RunConfig c;
  c.seed = 20261019;
  return c;
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void time_limit(Outcome& o, double elapsed, double limit) {
  o.require(elapsed < limit, "runtime " + fmt("%.2f", elapsed) + " s exceeds " + fmt("%.0f", limit) + " s");
}

// ---------------------------------------------------------------------------

Outcome trivial_configuration() {
  Outcome o;
  const auto t0 = Clock::now();
  RunConfig c = base_config();
  ResolvedRun r = resolve(c);
  CriterionReport rep = run_criterion(r, c);
  o.require(rep.satisfied, "main criterion not satisfied");
  o.require(std::abs(rep.margin - 1.0) <= 1e-9, "margin " + fmt("%.17g", rep.margin) + " != 1");

  Chain chain = certified_chain(r, c);
  Draw d(1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Complex z = d.disk(0.999);
    double t = d.uniform(0.0, 5.0);
    worst = std::max(worst, std::abs(chain(z, t) - std::exp(t) * z));
  }
  o.require(worst <= 1e-10, "chain deviates from e^t z by " + fmt("%.3g", worst));

  auto dil = max_dilatation(ExtensionField{chain});
  o.require(dil.max_abs_mu <= 1e-8, "max dilatation " + fmt("%.3g", dil.max_abs_mu));
  double id_gap = 0.0;
  for (Complex z : {Complex(2.0, 1.0), Complex(-5.0, 0.3), Complex(0.2, -0.7)})
    id_gap = std::max(id_gap, std::abs(becker_extension(chain, z) - z));
  o.require(id_gap <= 1e-12 * 6, "extension is not the identity");
  const double elapsed = seconds(t0);
  time_limit(o, elapsed, 5.0);
  o.note("margin " + fmt("%.12g", rep.margin) + ", chain err " + fmt("%.2g", worst) + ", max|mu| " +
         fmt("%.2g", dil.max_abs_mu) + ", " + fmt("%.2f", elapsed) + " s");
  if (o.pass) g_certified.push_back({"trivial configuration", [chain](Complex z) { return chain(z, 0.0); }});
  return o;
}

Outcome becker_positive() {
  Outcome o;
  const auto t0 = Clock::now();
  RunConfig c = base_config();
  c.f = "z + 0.1*z^2";
  c.preset = "becker";
  c.check = "becker";
  ResolvedRun r = resolve(c);
  o.require(r.route == "becker", "preset routed to " + r.route);
  CriterionReport rep = run_criterion(r, c);
  o.require(rep.satisfied, "criterion not satisfied");
  o.require(rep.max_lhs <= 0.25, "grid max " + fmt("%.6g", rep.max_lhs) + " > 0.25");
  // LHS = (1 - r^2)|0.2 z/(1 + 0.2 z)|, dense brute force
  double dense = 0.0, shaped = 0.0;
  for (int i = 1; i <= 512; ++i)
    for (int j = 0; j < 1024; ++j) {
      Complex z = std::polar(0.999 * i / 512, 2 * kPi * j / 1024);
      double v = (1 - std::norm(z)) * std::abs(0.2 * z / (1.0 + 0.2 * z));
      dense = std::max(dense, v);
      shaped = std::max(shaped, v / (0.25 * (1 - std::norm(z))));
    }
  o.require(std::abs(rep.max_lhs - dense) <= 2e-3 * dense, "grid max differs from dense sampling");
  o.require(shaped <= 1.0, "LHS exceeds 0.25 (1 - r^2)");
  auto inj = injectivity_test([](Complex z) { return z + 0.1 * z * z; }, DiskGrid{200, 200, 0.999, 0});
  o.require(inj.injective_on_grid, "oracle found a collision on the 200x200 grid");
  const double elapsed = seconds(t0);
  time_limit(o, elapsed, 10.0);
  o.note("max LHS " + fmt("%.6f", rep.max_lhs) + " (dense " + fmt("%.6f", dense) + "), " + fmt("%.2f", elapsed) + " s");
  if (o.pass) g_certified.push_back({"becker z + 0.1 z^2", [](Complex z) { return z + 0.1 * z * z; }});
  return o;
}

Outcome becker_negative() {
  Outcome o;
  RunConfig c = base_config();
  c.f = "z/(1-z)";
  c.preset = "becker";
  c.check = "becker";
  CriterionReport rep = run_criterion(resolve(c), c);
  o.require(!rep.satisfied, "criterion unexpectedly satisfied");
  const double r = c.grid.r_max;
  const double sup = 2 * r * (1 + r);
  o.require(std::abs(rep.max_lhs - sup) <= 0.02 * sup, "grid max " + fmt("%.6g", rep.max_lhs) + " vs " + fmt("%.6g", sup));
  const double angle_deg = std::abs(std::arg(rep.witness)) * 180.0 / kPi;
  o.require(angle_deg <= 1.0, "witness angle " + fmt("%.3g", angle_deg) + " deg");
  o.note("max LHS " + fmt("%.6f", rep.max_lhs) + " vs 2r(1+r) = " + fmt("%.6f", sup) + ", witness angle " +
         fmt("%.2g", angle_deg) + " deg");
  return o;
}

// l3 straight from its defining quotient, in long double.
long double naive_l3(Complex s, double k) {
  const long double a = s.real(), b = s.imag();
  const long double dm = std::sqrt((a - 1) * (a - 1) + b * b);  // |s - 1|
  const long double dp = std::sqrt((a + 1) * (a + 1) + b * b);  // |s + 1|
  return (dm + k * dp) / (dp + k * dm);
}

Outcome k_table() {
  Outcome o;
  for (int i = 0; i <= 9; ++i) {
    const double k = i / 10.0;
    QcBound b = qc_bound_K(1.0, k);
    o.require(b.K == k, "s = 1, k = " + fmt("%.1f", k) + " gives K = " + fmt("%.17g", b.K));
  }
  const double third = qc_bound_K(2.0, 0.0).K;
  o.require(std::abs(third - 1.0 / 3.0) <= 1e-12, "s = 2 gives " + fmt("%.17g", third));
  const double k594 = qc_bound_K({1.0, 1.0}, 0.2).K;
  o.require(std::abs(k594 - 0.5940) <= 5e-4, "s = 1+i gives " + fmt("%.6g", k594));
  const double hand = (1 + 0.2 * std::sqrt(5.0)) / (std::sqrt(5.0) + 0.2);
  o.require(std::abs(k594 - hand) <= 1e-12, "s = 1+i differs from (1 + 0.2 sqrt5)/(sqrt5 + 0.2)");
  o.note("K(2,0) - 1/3 = " + fmt("%.2g", third - 1.0 / 3.0) + ", K(1+i,0.2) = " + fmt("%.6f", k594));
  return o;
}

Outcome disk_inclusion() {
  Outcome o;
  const auto t0 = Clock::now();
  Draw d(5);
  double worst = INFINITY, worst_naive = INFINITY, worst_l3 = 0.0;
  int failures = 0, order = 0;
  for (int i = 0; i < 10000; ++i) {
    const Complex s{d.open_closed(10.0), d.uniform(-10.0, 10.0)};
    const double k = d.uniform(0.0, 1.0);
    const double m = d.open_closed(10.0);
    QcBound b = qc_bound_K(s, k);
    InclusionCheck chk = disk_inclusion_check(s, m, k, b.K);
    if (!chk.holds) ++failures;
    worst = std::min(worst, chk.slack);
    if (b.l2 && b.l3 && !(*b.l2 <= *b.l3 && *b.l3 < 1.0)) ++order;
    if (b.l3) {
      const long double ref = naive_l3(s, k);
      worst_l3 = std::max(worst_l3, double(std::abs(ref - *b.l3) / ref));
    }
    // independent evaluation of both disks in long double
    const long double a = s.real(), bb = s.imag(), l = b.K, L2 = l * l;
    const long double den = 2 * a * (1 + L2) + (1 - L2) * (1 + a * a + bb * bb);
    const long double c_re = m * ((1 + L2) + a * (1 - L2)) / den, c_im = -m * bb * (1 - L2) / den;
    const long double r1 = 2 * l * m / den, c2 = m / (2 * a), r2 = k * m / (2 * a);
    const long double slack = r1 - std::hypot(c_re - c2, c_im) - r2;
    worst_naive = std::min(worst_naive, double(slack));
  }
  o.require(failures == 0, std::to_string(failures) + " draws where the inclusion fails");
  o.require(worst >= -1e-9, "library slack down to " + fmt("%.3g", worst));
  o.require(worst_naive >= -1e-9, "independent slack down to " + fmt("%.3g", worst_naive));
  o.require(order == 0, std::to_string(order) + " draws violate l2 <= l3 < 1");
  o.require(worst_l3 <= 1e-12, "l3 differs from its quotient by " + fmt("%.3g", worst_l3));
  const double elapsed = seconds(t0);
  time_limit(o, elapsed, 5.0);
  o.note("min slack " + fmt("%.3g", worst) + " (independent " + fmt("%.3g", worst_naive) + "), " +
         fmt("%.2f", elapsed) + " s");
  return o;
}

Outcome equivalences() {
  Outcome o;
  Draw d(6);
  int w_violations = 0, uk_violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const Complex s{d.uniform(1e-3, 5.0), d.uniform(-5.0, 5.0)};
    const double m = d.uniform(1e-3, 10.0);
    const double half = m / (2 * s.real());
    const Complex A = half + d.disk(2.0 * half);
    Complex w;
    try {
      w = transfer_w(A, s, m);
    } catch (const Error&) {
      continue;
    }
    const double gap_w = std::abs(w) - 1.0;
    const double gap_A = (std::abs(A - half) - half) / half;
    if ((gap_w < 0.0) != (gap_A < 0.0) && std::min(std::abs(gap_w), std::abs(gap_A)) > 1e-12) ++w_violations;
  }
  for (int i = 0; i < 100000; ++i) {
    const Complex w = d.box(6.0);
    const double k = d.uniform(0.0, 1.0);
    const double center = (1 + k * k) / (1 - k * k), radius = 2 * k / (1 - k * k);
    auto ratio = in_Uk(w, k);
    const double ratio_gap = std::abs((w - 1.0) / (w + 1.0)) - k;
    const double disk_gap = (std::abs(w - center) - radius) / (1.0 + radius);
    if (ratio.member != (disk_gap <= 0.0) && std::min(std::abs(ratio_gap), std::abs(disk_gap)) > 1e-12) ++uk_violations;
  }
  o.require(w_violations == 0, std::to_string(w_violations) + " |w| < 1 mismatches");
  o.require(uk_violations == 0, std::to_string(uk_violations) + " U(k) form mismatches");
  o.note("1e5 + 1e5 samples, no violations");
  return o;
}

Outcome simplified_implies_main() {
  Outcome o;
  Draw d(7);
  int violations = 0, tested = 0;
  for (int i = 0; i < 10000; ++i) {
    CriterionParams p;
    p.s = {d.uniform(0.05, 3.0), d.uniform(-3.0, 3.0)};
    p.m = d.uniform(0.1, 5.0);
    const double half = p.m / (2 * p.s.real());
    do p.alpha = half + d.disk(half * 0.999);
    while (std::abs(p.alpha) < 1e-3);
    do p.c = d.box(3.0);
    while (p.c.imag() == 0.0 && p.c.real() >= 0.0);
    const Complex ch = -p.m / (2.0 * p.alpha) + d.disk(p.m / (2 * std::abs(p.alpha)));
    if (ch == Complex(0.0)) continue;
    const Complex h = p.c / ch;
    const Complex bracket = half + d.disk(half);
    const double r = d.uniform(0.0, 1.0);
    if (!check_alpha_condition(p)) continue;
    if (!(std::abs(p.c / h + p.m / (2.0 * p.alpha)) < p.m / (2 * std::abs(p.alpha)))) continue;
    if (!(std::abs(bracket - half) <= half)) continue;
    ++tested;
    const double lambda = std::pow(r, p.m / p.s.real());
    const double main = std::abs(-p.c * p.alpha / (p.s.real() * h) * lambda + (1 - lambda) * bracket - half);
    const double lib = lhs::blend(p, h, bracket, r, p.m / p.s.real());
    if (main > half * (1 + 1e-12) + 1e-12 || lib > half * (1 + 1e-12) + 1e-12) ++violations;
  }
  o.require(tested >= 9000, "only " + std::to_string(tested) + " admissible draws");
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.note(std::to_string(tested) + " admissible draws, no violations");
  return o;
}

// F = z + eps z / conj(z) outside the disk; |mu| = eps / |conj(z) + eps|.
Outcome qc_dilatation() {
  Outcome o;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto t0 = Clock::now();
    const double k = eps / (1 - eps);
    const std::string tag = "eps " + fmt("%.2f", eps) + ": ";
    auto f = parse(polynomial_source(eps));
    auto t6 = check_T6(f, parse("z"), 1.0, k + 1e-6, DiskGrid{});
    o.require(t6.satisfied, tag + "U(k) criterion not satisfied");
    Chain chain = make_t6_chain(f, parse("z"), 1.0);
    auto dil = max_dilatation(ExtensionField{chain});
    o.require(std::abs(dil.max_abs_mu - k) <= 0.02 * k, tag + "max |mu| " + fmt("%.6g", dil.max_abs_mu));
    double closed = 0.0;
    for (std::size_t n = 0; n < dil.grid.size(); ++n) {
      Complex z = dil.grid.point(n);
      closed = std::max(closed, eps / std::abs(std::conj(z) + eps));
    }
    o.require(std::abs(dil.max_abs_mu - closed) <= 1e-5 * closed, tag + "differs from the closed-form grid max");
    const double elapsed = seconds(t0);
    time_limit(o, elapsed, 30.0);
    o.note(tag + fmt("%.6f", dil.max_abs_mu) + " vs " + fmt("%.6f", k) + " (" + fmt("%.2f", elapsed) + " s)");
    if (t6.satisfied) g_certified.push_back({tag + "extension family", [chain](Complex z) { return chain(z, 0.0); }});
  }
  return o;
}

Outcome seam_continuity_all() {
  Outcome o;
  std::vector<std::pair<std::string, Chain>> chains;
  chains.emplace_back("trivial", make_main_chain(AnalyticTriple(parse("z"), parse("z"), parse("1")), CriterionParams{}));
  for (double eps : {0.05, 0.1, 0.2})
    chains.emplace_back("eps " + fmt("%.2f", eps), make_t6_chain(parse(polynomial_source(eps)), parse("z"), 1.0));
  CriterionParams qc;
  qc.k = 0.2;
  chains.emplace_back("qc z + 0.05 z^2", make_main_chain(AnalyticTriple(parse("z + 0.05*z^2"), parse("z"), parse("1")), qc));
  double worst = 0.0;
  for (auto& [name, chain] : chains) {
    auto seam = seam_continuity(chain, 360);
    o.require(seam.max_mismatch <= 1e-6, name + " mismatch " + fmt("%.3g", seam.max_mismatch));
    worst = std::max(worst, seam.max_mismatch);
  }
  o.note(std::to_string(chains.size()) + " extensions, worst mismatch " + fmt("%.3g", worst));
  return o;
}

Outcome quadrature() {
  Outcome o;
  using testing::Series;
  constexpr std::size_t kTerms = 200;
  double worst = 0.0;
  {  // f = z, g = z exp(0.1 z), alpha = 2: psi = exp(0.1 u)
    Series psi = testing::series_exp_linear(0.1, kTerms);
    for (Complex z : {Complex(0.5), Complex(-0.3, 0.6), Complex(0.1, -0.9)})
      worst = std::max(worst, std::abs(operator_G_alpha(parse("z"), parse("z*exp(0.1*z)"), 2.0, z).value -
                                       testing::operator_by_series(psi, 2.0, z)));
  }
  {  // Moldoveanu-Pascu with g = z/(1-z), alpha = 2: psi = 1/(1-u)
    Series psi(kTerms, 1.0);
    for (Complex z : {Complex(0.3), Complex(0.2, 0.4)})
      worst = std::max(worst, std::abs(operator_moldoveanu_pascu(parse("z/(1-z)"), 2.0, z).value -
                                       testing::operator_by_series(psi, 2.0, z)));
  }
  {  // g = z exp(4 i z) with alpha = 1.5: continued power of exp(4 i u)
    Series psi = testing::series_power(testing::series_exp_linear(Complex(0.0, 4.0), kTerms), 0.5);
    for (Complex z : {Complex(0.9), Complex(0.0, 0.8)})
      worst = std::max(worst, std::abs(operator_moldoveanu_pascu(parse("z*exp(4i*z)"), 1.5, z).value -
                                       testing::operator_by_series(psi, 1.5, z)));
  }
  o.require(worst <= 1e-9, "worst disagreement " + fmt("%.3g", worst));
  o.note("worst disagreement with the series " + fmt("%.3g", worst));
  return o;
}

Outcome oracle_sweep() {
  Outcome o;
  const DiskGrid grid{64, 128, 0.999, 0};
  for (const auto& c : g_certified) {
    auto inj = injectivity_test(c.F, grid);
    auto counts = preimage_probe(c.F, 0.9, 20, 11);
    bool ok = std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0 || n == 1; });
    o.require(inj.injective_on_grid, c.label + ": collision");
    o.require(ok, c.label + ": preimage count outside {0, 1}");
  }
  o.require(g_certified.size() >= 5, "only " + std::to_string(g_certified.size()) + " passing verdicts collected");
  // sufficient, not necessary: z/(1-z) fails the criterion but the oracle finds nothing
  RunConfig c = base_config();
  c.f = "z/(1-z)";
  c.preset = "becker";
  CriterionReport rep = run_criterion(resolve(c), c);
  auto F = [](Complex z) { return z / (1.0 - z); };
  auto inj = injectivity_test(F, grid);
  auto counts = preimage_probe(F, 0.9, 20, 11);
  bool ok = std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0 || n == 1; });
  o.require(!rep.satisfied && inj.injective_on_grid && ok, "z/(1-z) is not (criterion FAIL, oracle PASS)");
  o.note(std::to_string(g_certified.size()) + " passing verdicts confirmed; z/(1-z): criterion FAIL, oracle PASS");
  return o;
}

std::string chain_fingerprint() {
  RunConfig c = base_config();
  ResolvedRun r = resolve(c);
  Chain chain = certified_chain(r, c);
  Draw d(1);
  Json j = Json::array();
  for (int i = 0; i < 100; ++i) {
    Complex z = d.disk(0.999);
    j.push_back(to_json(chain(z, d.uniform(0.0, 5.0))));
  }
  j.push_back(to_json(max_dilatation(ExtensionField{chain}, {16, 64})));
  return j.dump();
}

Outcome determinism() {
  Outcome o;
  std::vector<RunConfig> configs;
  configs.push_back(base_config());
  RunConfig pos = base_config();
  pos.f = "z + 0.1*z^2";
  pos.preset = "becker";
  configs.push_back(pos);
  RunConfig neg = pos;
  neg.f = "z/(1-z)";
  configs.push_back(neg);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string a = cmd_check(configs[i], false).report.dump();
    const std::string b = cmd_check(configs[i], false).report.dump();
    o.require(a == b, "check report " + std::to_string(i) + " differs between runs");
  }
  o.require(chain_fingerprint() == chain_fingerprint(), "chain samples differ between runs");
  auto s = parse_complex_list("1,2,1+1i");
  auto k = parse_real_list("0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9");
  o.require(ktable_csv(s, k) == ktable_csv(s, k), "K table differs between runs");
  o.note("4 report families byte-identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"trivial configuration end to end", trivial_configuration},
      {"Becker positive case", becker_positive},
      {"Becker negative case", becker_negative},
      {"K formula table", k_table},
      {"disk inclusion property", disk_inclusion},
      {"|w| < 1 and U(k) equivalences", equivalences},
      {"simplified criterion implies the main one", simplified_implies_main},
      {"quasiconformal extension dilatation", qc_dilatation},
      {"seam continuity", seam_continuity_all},
      {"quadrature against series", quadrature},
      {"oracle soundness sweep", oracle_sweep},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %-44s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", index, c.name, seconds(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
