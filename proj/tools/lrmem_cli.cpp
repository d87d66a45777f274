// Command-line front end over the lrmem C API.
//
//   lrmem simulate --d 0.1,0.4 --rho 0.3 --n 1000 --seed 42 --out x.csv
//   lrmem spectrum --input x.csv --method smoothed --beta 0.7
//   lrmem estimate --input x.csv --method ssh --alpha 0.85 --beta 0.9
//   lrmem mc --config grid.json --out-dir results --threads 8
//
// Exit codes: 0 ok, 1 I/O, 2 flags/config, 3 data, 4 non-convergence under
// --strict. Every failure prints a single line starting with "error:".

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lrmem/lrmem.h"

namespace {

enum ExitCode { kOk = 0, kIo = 1, kUsage = 2, kData = 3, kNotConverged = 4 };

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int report(int code, const std::string& msg) {
  std::cerr << "error: " << one_line(msg) << '\n';
  return code;
}

int exit_code_for(lrmem_status st) {
  switch (st) {
    case LRMEM_OK: return kOk;
    case LRMEM_E_IO: return kIo;
    case LRMEM_E_INVALID_ARGUMENT: return kUsage;
    case LRMEM_E_DATA:
    case LRMEM_E_NUMERIC: return kData;
    default: return kIo;
  }
}

struct CallFailed {
  int code;
};

void check(lrmem_status st) {
  if (st != LRMEM_OK) throw CallFailed{report(exit_code_for(st), lrmem_last_error())};
}

struct StringDeleter {
  void operator()(char* p) const { lrmem_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Series = std::unique_ptr<lrmem_series, HandleDeleter<lrmem_series, lrmem_series_free>>;
using Spectrum = std::unique_ptr<lrmem_spectrum, HandleDeleter<lrmem_spectrum, lrmem_spectrum_free>>;
using Estimate = std::unique_ptr<lrmem_estimate, HandleDeleter<lrmem_estimate, lrmem_estimate_free>>;
using Grid = std::unique_ptr<lrmem_mc_grid, HandleDeleter<lrmem_mc_grid, lrmem_mc_grid_free>>;
using McResult = std::unique_ptr<lrmem_mc_result, HandleDeleter<lrmem_mc_result, lrmem_mc_result_free>>;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  check(lrmem_write_file(path.c_str(), text.data(), text.size()));
}

Series load_series(const std::string& path) {
  lrmem_series* s = nullptr;
  check(lrmem_series_read_csv(path.c_str(), &s));
  return Series(s);
}

struct SimulateArgs {
  std::vector<double> d;
  double rho = 0.0;
  std::size_t n = 1000;
  std::size_t truncation = 50000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  for (double v : a.d)
    if (!(std::abs(v) < 0.5))
      return report(kUsage, "--d: every memory parameter must lie in (-1/2,1/2), got " + std::to_string(v));
  if (!(a.rho > -1.0 && a.rho < 1.0)) return report(kUsage, "--rho: correlation must lie in (-1,1)");
  if (a.n < 2) return report(kUsage, "--n: sample size must be at least 2");
  if (a.truncation < 1) return report(kUsage, "--truncation: must be at least 1");

  const std::size_t q = a.d.size();
  std::vector<double> corr(q * q, a.rho);
  for (std::size_t i = 0; i < q; ++i) corr[i * q + i] = 1.0;
  lrmem_sim_options opts{q, a.d.data(), corr.data(), a.n, a.truncation, a.seed};
  lrmem_series* raw = nullptr;
  check(lrmem_simulate(&opts, &raw));
  Series s(raw);

  std::cerr << "simulate: VARFIMA(0,d,0) q=" << q << " d=";
  for (std::size_t i = 0; i < q; ++i) std::cerr << (i ? "," : "") << a.d[i];
  std::cerr << " rho=" << a.rho << " n=" << a.n << " truncation=" << a.truncation << " seed=" << a.seed << '\n';

  if (a.out.empty() || a.out == "-") {
    std::vector<double> v(a.n * q);
    check(lrmem_series_values(s.get(), v.data(), v.size()));
    std::ostringstream os;
    char buf[32];
    for (std::size_t t = 0; t < a.n; ++t) {
      for (std::size_t i = 0; i < q; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[t * q + i]);
        os << (i ? "," : "") << buf;
      }
      os << '\n';
    }
    std::cout << os.str();
  } else {
    check(lrmem_series_write_csv(s.get(), a.out.c_str()));
  }
  return kOk;
}

struct SpectrumArgs {
  std::string input;
  std::string method = "periodogram";
  double alpha = 0.85;
  std::size_t m = 0;
  double beta = 0.9;
  long long ell = -1;
  bool exclude_minus_j = false;
  bool keep_mean = false;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a) {
  lrmem_spectrum_options opts{};
  if (a.method == "periodogram")
    opts.kind = LRMEM_SPECTRUM_PERIODOGRAM;
  else if (a.method == "tapered")
    opts.kind = LRMEM_SPECTRUM_TAPERED;
  else if (a.method == "smoothed")
    opts.kind = LRMEM_SPECTRUM_SMOOTHED;
  else
    return report(kUsage, "--method: expected periodogram, tapered or smoothed");
  if (a.m == 0 && !(a.alpha > 0.0 && a.alpha < 1.0)) return report(kUsage, "--alpha: must lie in (0,1)");
  if (a.ell < 0 && !(a.beta > 0.0 && a.beta < 1.0)) return report(kUsage, "--beta: must lie in (0,1)");
  opts.m = a.m;
  opts.alpha = a.alpha;
  opts.use_beta = a.ell < 0 ? 1 : 0;
  opts.ell = a.ell < 0 ? 0 : static_cast<std::size_t>(a.ell);
  opts.beta = a.beta;
  opts.exclude_minus_j = a.exclude_minus_j ? 1 : 0;
  opts.keep_mean = a.keep_mean ? 1 : 0;

  auto s = load_series(a.input);
  lrmem_spectrum* raw = nullptr;
  check(lrmem_spectrum_compute(s.get(), &opts, &raw));
  Spectrum sp(raw);
  char* csv = nullptr;
  check(lrmem_spectrum_to_csv(sp.get(), &csv));
  CString text(csv);
  emit(a.out, text.get());
  return kOk;
}

struct EstimateArgs {
  std::string input;
  std::string method = "sh";
  double alpha = 0.85;
  std::size_t m = 0;
  double beta = 0.9;
  double eps1 = 0.001;
  double eps2 = 0.001;
  bool strict = false;
  bool keep_mean = false;
  bool real_cross = false;
  std::string out;
};

int cmd_estimate(const EstimateArgs& a) {
  lrmem_estimate_options opts;
  lrmem_estimate_options_init(&opts);
  if (lrmem_method_parse(a.method.c_str(), &opts.method) != LRMEM_OK)
    return report(kUsage, std::string("--method: ") + lrmem_last_error());
  if (a.m == 0 && !(a.alpha > 0.0 && a.alpha < 1.0)) return report(kUsage, "--alpha: must lie in (0,1)");
  if (!(a.beta > 0.0 && a.beta < 1.0)) return report(kUsage, "--beta: must lie in (0,1)");
  if (!(a.eps1 > 0.0 && a.eps1 < 1.0)) return report(kUsage, "--eps1: must lie in (0,1)");
  if (!(a.eps2 > 0.0 && a.eps2 < 1.0)) return report(kUsage, "--eps2: must lie in (0,1)");
  opts.alpha = a.alpha;
  opts.m = a.m;
  opts.beta = a.beta;
  opts.eps1 = a.eps1;
  opts.eps2 = a.eps2;
  opts.keep_mean = a.keep_mean ? 1 : 0;
  opts.real_cross_spectrum = a.real_cross ? 1 : 0;

  auto s = load_series(a.input);
  lrmem_estimate* raw = nullptr;
  check(lrmem_estimate_run(s.get(), &opts, &raw));
  Estimate e(raw);
  char* json = nullptr;
  check(lrmem_estimate_to_json(e.get(), &json));
  CString text(json);
  emit(a.out, text.get());
  if (a.strict && !lrmem_estimate_converged(e.get()))
    return report(kNotConverged, "optimizer did not converge within the iteration limit");
  return kOk;
}

struct McArgs {
  std::string config;
  std::string out_dir;
  std::size_t replications = 0;
  std::size_t threads = 0;
  bool full = false;
};

int cmd_mc(const McArgs& a) {
  lrmem_mc_grid* graw = nullptr;
  if (a.config.empty()) {
    check(lrmem_mc_grid_default(&graw));
  } else {
    std::ifstream in(a.config, std::ios::binary);
    if (!in) return report(kIo, "cannot open config '" + a.config + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    check(lrmem_mc_grid_from_json(text.data(), text.size(), &graw));
  }
  Grid grid(graw);
  if (a.full) check(lrmem_mc_grid_set_replications(grid.get(), 1000));
  if (a.replications) check(lrmem_mc_grid_set_replications(grid.get(), a.replications));

  std::error_code ec;
  std::filesystem::create_directories(std::filesystem::path(a.out_dir) / "raw", ec);
  if (ec) return report(kIo, "cannot create output directory '" + a.out_dir + "': " + ec.message());

  const std::size_t threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  std::cerr << "mc: " << lrmem_mc_grid_cell_count(grid.get()) << " cells, " << threads << " worker(s)\n";
  lrmem_mc_result* rraw = nullptr;
  check(lrmem_mc_run(grid.get(), threads, &rraw));
  McResult result(rraw);

  char* table = nullptr;
  check(lrmem_mc_result_table_csv(result.get(), &table));
  CString table_text(table);
  const auto dir = std::filesystem::path(a.out_dir);
  emit((dir / "table.csv").string(), table_text.get());

  std::string index = "cell,file,label\n";
  const std::size_t cells = lrmem_mc_result_cell_count(result.get());
  for (std::size_t c = 0; c < cells; ++c) {
    char* label = nullptr;
    check(lrmem_mc_result_cell_label(result.get(), c, &label));
    CString label_text(label);
    char* raw_csv = nullptr;
    check(lrmem_mc_result_raw_csv(result.get(), c, &raw_csv));
    CString raw_text(raw_csv);
    char name[32];
    std::snprintf(name, sizeof name, "cell_%03zu.csv", c);
    emit((dir / "raw" / name).string(), raw_text.get());
    index += std::to_string(c) + ",raw/" + name + ",\"" + label_text.get() + "\"\n";
  }
  emit((dir / "cells.csv").string(), index);
  std::cerr << "mc: wrote " << (dir / "table.csv").string() << " and " << cells << " raw files\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate long-memory estimation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lrmem_version()));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a Gaussian VARFIMA(0,d,0) series");
  simulate->add_option("--d", sim.d, "Memory parameters, comma separated")->required()->delimiter(',');
  simulate->add_option("--rho", sim.rho, "Innovation correlation (all pairs)");
  simulate->add_option("--n", sim.n, "Sample size");
  simulate->add_option("--truncation", sim.truncation, "Number of moving-average coefficients");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--out", sim.out, "Output CSV (default stdout)");

  SpectrumArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "Spectral density estimate at the first m Fourier frequencies");
  spectrum->add_option("--input", spec.input, "Input CSV")->required();
  spectrum->add_option("--method", spec.method, "periodogram, tapered or smoothed");
  spectrum->add_option("--alpha", spec.alpha, "Bandwidth exponent, m = floor(n^alpha)");
  spectrum->add_option("--m", spec.m, "Bandwidth (overrides --alpha)");
  spectrum->add_option("--beta", spec.beta, "Smoothing exponent, ell = floor(n^beta)");
  spectrum->add_option("--ell", spec.ell, "Smoothing half-width (overrides --beta; 0 = no smoothing)");
  spectrum->add_flag("--exclude-minus-j", spec.exclude_minus_j, "Drop the k = -j term when smoothing");
  spectrum->add_flag("--keep-mean", spec.keep_mean, "Do not subtract the sample mean");
  spectrum->add_option("--out", spec.out, "Output CSV (default stdout)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the memory vector d");
  estimate->add_option("--input", est.input, "Input CSV")->required();
  estimate->add_option("--method", est.method, "sh, tsh, ssh or ssh-star");
  estimate->add_option("--alpha", est.alpha, "Bandwidth exponent, m = floor(n^alpha)");
  estimate->add_option("--m", est.m, "Bandwidth (overrides --alpha)");
  estimate->add_option("--beta", est.beta, "Smoothing exponent for ssh/ssh-star");
  estimate->add_option("--eps1", est.eps1, "Lower bound offset: d >= -1/2 + eps1");
  estimate->add_option("--eps2", est.eps2, "Upper bound offset: d <= 1/2 - eps2");
  estimate->add_flag("--keep-mean", est.keep_mean, "Do not subtract the sample mean");
  estimate->add_flag("--real-cross-spectrum", est.real_cross, "Use only the real part of the spectral estimate");
  estimate->add_flag("--strict", est.strict, "Exit 4 when the optimizer does not converge");
  estimate->add_option("--out", est.out, "Output JSON (default stdout)");

  McArgs mc;
  auto* mcc = app.add_subcommand("mc", "Run the Monte Carlo experiment grid");
  mcc->add_option("--config", mc.config, "Grid JSON (default: the built-in four-method design)");
  mcc->add_option("--out-dir", mc.out_dir, "Directory for table.csv and raw/ files")->required();
  mcc->add_option("--replications", mc.replications, "Override the replication count");
  mcc->add_option("--threads", mc.threads, "Worker threads (default: hardware concurrency)");
  mcc->add_flag("--full", mc.full, "Use 1000 replications");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(kUsage, e.what());
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (spectrum->parsed()) return cmd_spectrum(spec);
    if (estimate->parsed()) return cmd_estimate(est);
    if (mcc->parsed()) return cmd_mc(mc);
  } catch (const CallFailed& f) {
    return f.code;
  } catch (const std::exception& e) {
    return report(kIo, e.what());
  }
  return kUsage;
}
