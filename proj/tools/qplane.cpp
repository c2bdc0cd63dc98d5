#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qplane/error.hpp"
#include "qplane/fourier.hpp"
#include "qplane/io.hpp"
#include "qplane/qexp.hpp"
#include "qplane/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  qplane::VerifyConfig config;
  std::vector<std::string> suites;
  std::string format = "json";
  std::string out;
  std::optional<int> kernel_kmax;
};

void add_config_options(CLI::App& cmd, CommonOptions& o) {
  auto& c = o.config;
  cmd.add_option("--q", c.q, "deformation parameter, 0 < q < 1")->capture_default_str();
  cmd.add_option("--kmin", c.kmin, "lowest circle index of the test window")->capture_default_str();
  cmd.add_option("--kmax", c.kmax, "highest circle index of the test window")->capture_default_str();
  cmd.add_option("--lmax", c.lmax, "largest |l| of the test window")->capture_default_str();
  cmd.add_option("--ntheta", c.n_theta, "angular samples per circle")->capture_default_str();
  cmd.add_option("--tol-exact", c.tol_exact, "tolerance of exact identities")->capture_default_str();
  cmd.add_option("--tol-quad", c.tol_quad, "tolerance of truncated identities")->capture_default_str();
  cmd.add_option("--seed", c.seed, "seed of the random test functions")->capture_default_str();
  cmd.add_option("--kernel-kmax", o.kernel_kmax,
                 "half-width of the Fourier kernel radial window (default 2*max(|kmin|,|kmax|))");
}

void output_target(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    qplane::write_text_file(out, text);
  }
}

int run_verify(CommonOptions& o) {
  auto& c = o.config;
  c.kernel_kmax = o.kernel_kmax;
  if (!o.suites.empty()) {
    c.suites.clear();
    for (const auto& s : o.suites) c.suites.push_back(qplane::parse_suite(s));
  }
  const auto format = qplane::parse_report_format(o.format);
  const qplane::Report report = qplane::run_verify(c);
  output_target(o.out, qplane::format_report(report, format));
  std::fprintf(stderr, "%d passed, %d failed\n", report.passed(), report.failed());
  return report.all_pass() ? kExitPass : kExitFail;
}

struct FqOptions {
  double q = 0.5;
  std::vector<double> point;
  std::optional<int> circle;
  int n_theta = 256;
  std::string format = "text";
  std::string out;
};

int run_fq(const FqOptions& o) {
  const qplane::QLattice lat(o.q);
  const qplane::FqEvaluator ev(lat);
  if (o.point.empty() == !o.circle.has_value()) throw qplane::ConfigError("give exactly one of --point or --circle");
  if (!o.point.empty()) {
    const double kd = o.point[0];
    if (kd != static_cast<double>(static_cast<int>(kd))) throw qplane::ConfigError("--point K must be an integer");
    const qplane::CirclePoint p(static_cast<int>(kd), o.point[1]);
    const qplane::Complex v = ev.point(p);
    std::string text;
    if (o.format == "json") {
      nlohmann::ordered_json j{{"k", p.k()}, {"theta", p.theta()}, {"re", v.real()}, {"im", v.imag()}};
      text = j.dump() + "\n";
    } else {
      char buf[96];
      if (o.format == "csv")
        std::snprintf(buf, sizeof buf, "k,theta,re,im\n%d,%.17g,%.15g,%.15g\n", p.k(), p.theta(), v.real(), v.imag());
      else if (v.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.15g\n", v.real());
      else
        std::snprintf(buf, sizeof buf, "%.15g %+.15gi\n", v.real(), v.imag());
      text = buf;
    }
    output_target(o.out, text);
    return kExitPass;
  }
  if (o.n_theta <= 0) throw qplane::ConfigError("--ntheta must be positive");
  std::string text = "k,theta,re,im\n";
  for (int j = 0; j < o.n_theta; ++j) {
    const qplane::CirclePoint p(*o.circle, qplane::kTwoPi * j / o.n_theta);
    const qplane::Complex v = ev.point(p);
    text += std::to_string(p.k()) + "," + qplane::format_number(p.theta()) + "," + qplane::format_number(v.real()) +
            "," + qplane::format_number(v.imag()) + "\n";
  }
  output_target(o.out, text);
  return kExitPass;
}

struct TransformOptions {
  std::optional<double> q;
  std::string in;
  std::string out;
  int kernel_kmax = 16;
  std::optional<int> kmin;
  std::optional<int> kmax;
  std::optional<int> n_theta;
  std::string format;
};

int run_transform(const TransformOptions& o) {
  std::optional<qplane::QLattice> lat;
  if (o.q) lat.emplace(*o.q);
  const qplane::ModeFunction f = qplane::read_mode_file(o.in, lat);
  if (lat && !(f.lattice() == *lat)) throw qplane::ConfigError("--q disagrees with the q stored in the input file");
  if (o.kmin.has_value() != o.kmax.has_value()) throw qplane::ConfigError("give both --kmin and --kmax, or neither");

  const int l_half = std::max(1, f.max_abs_l());
  int n_theta = 256;
  while (n_theta < 4 * (2 * l_half + 1)) n_theta *= 2;
  if (o.n_theta) n_theta = *o.n_theta;
  const qplane::FourierData data = qplane::build_fourier_data(
      f.lattice(), {-o.kernel_kmax, o.kernel_kmax}, {-l_half, l_half}, n_theta);
  std::optional<qplane::IndexWindow> window;
  if (o.kmin) window = qplane::IndexWindow{*o.kmin, *o.kmax};
  const qplane::TransformResult t = qplane::fourier_apply(f, data, window);

  const bool csv = o.format.empty() ? qplane::mode_format_for(o.out) == qplane::ModeFormat::Csv : o.format == "csv";
  if (!o.format.empty() && o.format != "csv" && o.format != "json")
    throw qplane::ConfigError("transform writes json or csv mode files");
  const std::string text = csv ? qplane::to_mode_csv(t.value) : qplane::to_mode_json(t.value);

  nlohmann::ordered_json tail;
  tail["out_window"] = {t.out_window.lo, t.out_window.hi};
  tail["tail_estimate"] = t.tail_estimate;
  tail["kernel_kmax"] = o.kernel_kmax;
  tail["kernel_lmax"] = l_half;
  tail["ntheta"] = n_theta;
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cerr << "tail: " << tail.dump() << "\n";
  } else {
    qplane::write_text_file(o.out, text);
    qplane::write_text_file(o.out + ".tail.json", tail.dump(2) + "\n");
  }
  return kExitPass;
}

struct ConvergenceOptions {
  CommonOptions common;
  std::string axis = "kwindow";
  std::vector<int> values;
};

int run_convergence(ConvergenceOptions& o) {
  auto& c = o.common.config;
  c.kernel_kmax = o.common.kernel_kmax;
  const auto axis = qplane::parse_sweep_axis(o.axis);
  std::vector<int> values = o.values;
  if (values.empty()) values = axis == qplane::SweepAxis::KWindow ? std::vector<int>{8, 12, 16} : std::vector<int>{128, 256, 512};
  const auto format = qplane::parse_report_format(o.common.format);
  output_target(o.common.out, qplane::format_sweep(qplane::run_convergence(c, axis, values), format));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on the quantum az+b homogeneous space: checks, F_q values, transforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qplane 0.1.0");

  CommonOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "run verification suites and print a report");
  add_config_options(*verify, verify_opts);
  verify->add_option("--suite", verify_opts.suites, "suites to run (measure, calculus, forms, fq, fourier)")
      ->delimiter(',');
  verify->add_option("--format", verify_opts.format, "json, csv or text")->capture_default_str();
  verify->add_option("--out", verify_opts.out, "report file (default stdout)");
  verify->add_option("--random-functions", verify_opts.config.n_random, "seeded random functions per check")
      ->capture_default_str();

  FqOptions fq_opts;
  auto* fq = app.add_subcommand("fq", "evaluate the quantum exponential");
  fq->add_option("--q", fq_opts.q, "deformation parameter")->capture_default_str();
  fq->add_option("--point", fq_opts.point, "single point K THETA")->expected(2);
  fq->add_option("--circle", fq_opts.circle, "sample circle K at ntheta angles");
  fq->add_option("--ntheta", fq_opts.n_theta, "samples on the circle")->capture_default_str();
  fq->add_option("--format", fq_opts.format, "text, csv or json (single point)")->capture_default_str();
  fq->add_option("--out", fq_opts.out, "output file (default stdout)");

  TransformOptions tr_opts;
  auto* transform = app.add_subcommand("transform", "apply the Fourier transform to a mode file");
  transform->add_option("--in", tr_opts.in, "input mode file (.json or .csv)")->required();
  transform->add_option("--out", tr_opts.out, "output mode file; a .tail.json sidecar is written next to it");
  transform->add_option("--q", tr_opts.q, "q for CSV input (JSON files carry their own)");
  transform->add_option("--kernel-kmax", tr_opts.kernel_kmax, "half-width of the kernel radial window")
      ->capture_default_str();
  transform->add_option("--kmin", tr_opts.kmin, "lowest output circle");
  transform->add_option("--kmax", tr_opts.kmax, "highest output circle");
  transform->add_option("--ntheta", tr_opts.n_theta, "angular samples for the kernel (power of two)");
  transform->add_option("--format", tr_opts.format, "json or csv (default from the --out extension)");

  ConvergenceOptions conv_opts;
  conv_opts.common.format = "csv";
  auto* convergence = app.add_subcommand("convergence", "residual families as a discretization parameter grows");
  add_config_options(*convergence, conv_opts.common);
  convergence->add_option("--axis", conv_opts.axis, "ntheta or kwindow")->capture_default_str();
  convergence->add_option("--values", conv_opts.values, "comma separated parameter values")->delimiter(',');
  convergence->add_option("--format", conv_opts.common.format, "json, csv or text")->capture_default_str();
  convergence->add_option("--out", conv_opts.common.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return run_verify(verify_opts);
    if (*fq) return run_fq(fq_opts);
    if (*transform) return run_transform(tr_opts);
    if (*convergence) return run_convergence(conv_opts);
  } catch (const qplane::ParseError& e) {
    std::cerr << "qplane: parse error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const qplane::ConfigError& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qplane::AliasingError& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qplane::Error& e) {
    std::cerr << "qplane: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
