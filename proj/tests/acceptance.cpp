// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--strict]
//
// Exits 0 once every criterion has been evaluated; with --strict, exits 1
// if any criterion failed.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyflow/analysis.hpp"
#include "polyflow/cli.hpp"
#include "polyflow/generators.hpp"
#include "polyflow/simulate.hpp"
#include "polyflow/spectral.hpp"
#include "polyflow/trajectory_io.hpp"
#include "polyflow/validation.hpp"

using namespace polyflow;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr unsigned kThreads = 0;

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string describe(const CheckReport& r) {
  std::string s = fmt("%s: %zu samples, worst margin %.3g", r.check_name.c_str(), r.samples_checked,
                      r.worst_margin);
  if (r.first_violation_time) s += fmt(", first violation at t=%.6g", *r.first_violation_time);
  return s;
}

// Eigenvalues of the explicit circulant generator, sorted.
std::vector<double> eigen_spectrum(std::size_t n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = -1.0;
    a(i, (i + 1) % n) += 0.5;
    a(i, (i + n - 1) % n) += 0.5;
  }
  const auto ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

long double perimeter_ld(const std::vector<std::complex<long double>>& z) {
  long double p = 0;
  for (std::size_t i = 0; i < z.size(); ++i) p += std::abs(z[(i + 1) % z.size()] - z[i]);
  return p;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polyflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

Verdict eigenvalues_match() {
  double worst = 0.0;
  for (std::size_t n = 3; n <= 64; ++n) {
    auto mine = eigenvalues(n);
    std::sort(mine.begin(), mine.end());
    const auto ref = eigen_spectrum(n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(mine[i] - ref[i]));
  }
  return {worst <= 1e-10, fmt("n=3..64, max |error| %.3g", worst)};
}

// Forward difference of the long-double perimeter along the bisector field:
// the error against perimeter_rate must shrink in proportion to h.
Verdict finite_difference_order() {
  SplitMix64 rng(kSeed);
  const double hs[] = {1e-5, 1e-6, 1e-7};
  double worst_ratio_dev = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.next() % 10;
    const Polygon p = generate({GeneratorKind::RandomPoints, n}, rng.next());
    const auto u = bisector_velocity(p, FlowSpec::bisector());
    const double rate = perimeter_rate(p, u);
    std::vector<std::complex<long double>> z0(n);
    for (std::size_t i = 0; i < n; ++i) z0[i] = {p[i].real(), p[i].imag()};
    const long double p0 = perimeter_ld(z0);
    double err[3];
    for (int k = 0; k < 3; ++k) {
      auto z = z0;
      for (std::size_t i = 0; i < n; ++i) z[i] += static_cast<long double>(hs[k]) *
                                                 std::complex<long double>(u[i].real(), u[i].imag());
      const long double fd = (perimeter_ld(z) - p0) / hs[k];
      err[k] = static_cast<double>(std::abs(fd - rate));
    }
    for (int k = 0; k + 1 < 3; ++k) {
      const double ratio = err[k] / err[k + 1];
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(std::log10(ratio) - 1.0));
      ok = ok && ratio > 10.0 / 1.5 && ratio < 10.0 * 1.5;
    }
  }
  return {ok, fmt("error ratio per decade of h within 10^(1 +- %.2g)", worst_ratio_dev)};
}

template <class F>
auto timed(F&& f, double& secs) {
  const auto start = std::chrono::steady_clock::now();
  auto out = f();
  secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  int failures = 0;
  const auto report = [&](int id, const char* title, double secs, double budget_s,
                          const std::function<Verdict()>& body) {
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (budget_s > 0 && secs > budget_s) {
      v.passed = false;
      v.detail += fmt("; over the %.0f s budget", budget_s);
    }
    failures += v.passed ? 0 : 1;
    std::printf("%s criterion %2d %-24s %6.2fs  %s\n", v.passed ? "PASS" : "FAIL", id, title, secs,
                v.detail.c_str());
    std::fflush(stdout);
  };

  // The linear ensembles feed several criteria, so run each once up front.
  double t_eig = 0, t_oracle = 0, t_star = 0, t_convex = 0, t_flat = 0, t_ellipse = 0;
  const Verdict eig = timed(eigenvalues_match, t_eig);
  const auto oracle = timed([] { return oracle_ensemble(20, kSeed, kThreads); }, t_oracle);
  const auto stars = timed([] { return star_ensemble(100, kSeed, kThreads); }, t_star);
  const auto convex = timed([] { return convex_ensemble(100, kSeed, kThreads); }, t_convex);
  const auto flat = timed([] { return flat_convex_ensemble(20, kSeed, kThreads); }, t_flat);
  const auto ellipse = timed([] { return ellipse_ensemble(20, kSeed, kThreads); }, t_ellipse);

  report(1, "eigenvalue_exactness", t_eig, 5.0, [&] { return eig; });
  report(2, "oracle_equivalence", t_oracle, 10.0,
         [&] { return Verdict{oracle.check.passed, describe(oracle.check)}; });
  report(3, "star_preservation", t_star, 30.0,
         [&] { return Verdict{stars.check.passed, describe(stars.check)}; });
  report(4, "convexity_preservation", t_convex + t_flat, 30.0, [&] {
    return Verdict{convex.check.passed && flat.check.passed,
                   describe(convex.check) + "; " + describe(flat.check)};
  });
  report(5, "perimeter_monotone", 0.0, 0.0, [&] {
    const auto all = aggregate("perimeter_monotone", {*oracle.perimeter, *stars.perimeter, *convex.perimeter,
                                                      *flat.perimeter, *ellipse.perimeter});
    return Verdict{all.passed, describe(all)};
  });
  report(6, "ellipse_convergence", t_ellipse, 0.0,
         [&] { return Verdict{ellipse.check.passed, describe(ellipse.check)}; });

  double secs = 0;
  const auto optimality = timed(
      [] { return std::make_pair(optimality_ensemble(50, kSeed, kThreads), finite_difference_order()); }, secs);
  report(7, "bisector_optimality", secs, 0.0, [&] {
    const auto& [r, fd] = optimality;
    return Verdict{r.passed && fd.passed, describe(r) + "; " + fd.detail};
  });

  const auto counter = timed([] { return std::make_pair(boomerang_area_check(), embedded_loss_check()); }, secs);
  report(8, "counterexamples", secs, 0.0, [&] {
    const auto& [area, loss] = counter;
    return Verdict{area.passed && loss.passed, describe(area) + "; " + describe(loss)};
  });

  report(9, "centroid_conservation", 0.0, 0.0, [&] {
    const std::vector<double> drifts{oracle.max_centroid_drift, stars.max_centroid_drift,
                                     convex.max_centroid_drift, flat.max_centroid_drift,
                                     ellipse.max_centroid_drift};
    const auto r = centroid_report(drifts);
    return Verdict{r.passed, fmt("max drift %.3g of the initial diameter",
                                 *std::max_element(drifts.begin(), drifts.end()))};
  });

  const auto collinear = timed([] { return collinear_ensemble(10, kSeed, kThreads); }, secs);
  report(10, "collinearity_invariance", secs, 0.0,
         [&] { return Verdict{collinear.check.passed, describe(collinear.check)}; });

  const auto determinism = timed([] {
    const fs::path dir = fs::temp_directory_path() / "polyflow_acceptance";
    fs::remove_all(dir);
    for (const char* sub : {"a", "b"}) {
      fs::create_directories(dir / sub);
      const auto json = (dir / sub / "validate.json").string();
      if (run_cli({"validate", "--seed", "1", "--report-json", json}) == 2) {
        return Verdict{false, "validate reported a usage error"};
      }
      if (run_cli({"reproduce", "fig7", "--out-dir", (dir / sub).string()}) != 0) {
        return Verdict{false, "reproduce fig7 failed"};
      }
    }
    const bool same_json =
        read_text_file(dir / "a" / "validate.json") == read_text_file(dir / "b" / "validate.json");
    const bool same_svg = read_text_file(dir / "a" / "fig7.svg") == read_text_file(dir / "b" / "fig7.svg");
    return Verdict{same_json && same_svg, fmt("validate JSON %s, fig7 SVG %s",
                                              same_json ? "identical" : "differs",
                                              same_svg ? "identical" : "differs")};
  }, secs);
  report(11, "determinism", secs, 0.0, [&] { return determinism; });

  std::printf("%d of 11 criteria failed\n", failures);
  return strict && failures > 0 ? 1 : 0;
}
