#include "lrmem/lrmem.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrmem/core.hpp"
#include "lrmem/csv.hpp"
#include "lrmem/errors.hpp"
#include "lrmem/gse.hpp"
#include "lrmem/montecarlo.hpp"
#include "lrmem/simulator.hpp"
#include "lrmem/spectral.hpp"

struct lrmem_series {
  lrmem::MultivariateSeries value;
};
struct lrmem_spectrum {
  lrmem::SpectralSequence value;
};
struct lrmem_estimate {
  lrmem::EstimateResult value;
  lrmem::Method method;
};
struct lrmem_mc_grid {
  lrmem::ExperimentGrid value;
};
struct lrmem_mc_result {
  std::vector<lrmem::CellResult> cells;
};

namespace {

thread_local std::string g_last_error;

lrmem_status fail(lrmem_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
lrmem_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return LRMEM_OK;
  } catch (const lrmem::IoError& e) {
    return fail(LRMEM_E_IO, e.what());
  } catch (const lrmem::InvalidArgument& e) {
    return fail(LRMEM_E_INVALID_ARGUMENT, e.what());
  } catch (const lrmem::DataError& e) {
    return fail(LRMEM_E_DATA, e.what());
  } catch (const lrmem::NumericError& e) {
    return fail(LRMEM_E_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LRMEM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LRMEM_E_INTERNAL, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw lrmem::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void copy_out(const std::vector<double>& src, double* out, size_t len) {
  require(out != nullptr, "output buffer is null");
  require(len >= src.size(), "output buffer too small");
  std::copy(src.begin(), src.end(), out);
}

std::vector<double> matrix_row_major(const lrmem::RealMatrix& m) {
  std::vector<double> v;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace

extern "C" {

const char* lrmem_last_error(void) { return g_last_error.c_str(); }

void lrmem_string_free(char* s) { std::free(s); }

const char* lrmem_version(void) { return "1.0.0"; }

lrmem_status lrmem_series_create(const double* values, size_t n, size_t q, lrmem_series** out) {
  return guarded([&] {
    require(out != nullptr && values != nullptr, "null argument");
    *out = nullptr;
    *out = new lrmem_series{lrmem::MultivariateSeries::from_rows(n, q, std::span<const double>(values, n * q))};
  });
}

lrmem_status lrmem_series_read_csv(const char* path, lrmem_series** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = nullptr;
    *out = new lrmem_series{lrmem::read_series_csv(path)};
  });
}

lrmem_status lrmem_series_parse_csv(const char* text, size_t len, lrmem_series** out) {
  return guarded([&] {
    require(out != nullptr && (text != nullptr || len == 0), "null argument");
    *out = nullptr;
    *out = new lrmem_series{lrmem::parse_series_csv(std::string_view(text ? text : "", len))};
  });
}

lrmem_status lrmem_series_write_csv(const lrmem_series* s, const char* path) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null argument");
    lrmem::write_text_file(path, lrmem::format_series_csv(s->value));
  });
}

size_t lrmem_series_rows(const lrmem_series* s) { return s ? s->value.rows() : 0; }
size_t lrmem_series_cols(const lrmem_series* s) { return s ? s->value.cols() : 0; }

lrmem_status lrmem_series_values(const lrmem_series* s, double* out, size_t len) {
  return guarded([&] {
    require(s != nullptr, "null series");
    const auto& v = s->value;
    std::vector<double> rows(v.rows() * v.cols());
    for (size_t t = 0; t < v.rows(); ++t)
      for (size_t i = 0; i < v.cols(); ++i) rows[t * v.cols() + i] = v(t, i);
    copy_out(rows, out, len);
  });
}

void lrmem_series_free(lrmem_series* s) { delete s; }

lrmem_status lrmem_simulate(const lrmem_sim_options* opts, lrmem_series** out) {
  return guarded([&] {
    require(opts != nullptr && out != nullptr, "null argument");
    require(opts->q >= 1 && opts->d != nullptr && opts->corr != nullptr, "simulation needs q >= 1, d and corr");
    *out = nullptr;
    lrmem::Varfima0Spec spec;
    spec.d.d.assign(opts->d, opts->d + opts->q);
    const auto q = static_cast<Eigen::Index>(opts->q);
    spec.innovation_corr.resize(q, q);
    for (Eigen::Index r = 0; r < q; ++r)
      for (Eigen::Index c = 0; c < q; ++c) spec.innovation_corr(r, c) = opts->corr[r * q + c];
    spec.n = opts->n;
    spec.truncation = opts->truncation;
    spec.seed = opts->seed;
    *out = new lrmem_series{lrmem::simulate(spec)};
  });
}

lrmem_status lrmem_spectrum_compute(const lrmem_series* s, const lrmem_spectrum_options* opts, lrmem_spectrum** out) {
  return guarded([&] {
    require(s != nullptr && opts != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    const auto x = opts->keep_mean ? s->value : lrmem::demean(s->value);
    const std::size_t n = x.rows();
    const std::size_t m = opts->m ? opts->m : lrmem::bandwidth_from_exponent(n, opts->alpha);
    const auto grid = lrmem::fourier_grid(n, m);
    switch (opts->kind) {
      case LRMEM_SPECTRUM_PERIODOGRAM:
        *out = new lrmem_spectrum{lrmem::periodogram(x, grid)};
        break;
      case LRMEM_SPECTRUM_TAPERED:
        *out = new lrmem_spectrum{lrmem::tapered_periodogram(x, grid, lrmem::cosine_bell_taper(n, x.cols()))};
        break;
      case LRMEM_SPECTRUM_SMOOTHED: {
        const std::size_t ell = opts->use_beta ? lrmem::halfwidth_from_exponent(n, opts->beta) : opts->ell;
        const bool excl = opts->exclude_minus_j != 0;
        const auto w = ell == 0 ? lrmem::SmoothingWeights::point_mass(excl) : lrmem::bartlett_weights(n, ell, excl);
        *out = new lrmem_spectrum{lrmem::smoothed_periodogram(x, grid, w)};
        break;
      }
      default:
        throw lrmem::InvalidArgument("unknown spectrum kind");
    }
  });
}

size_t lrmem_spectrum_m(const lrmem_spectrum* sp) { return sp ? sp->value.grid.m() : 0; }
size_t lrmem_spectrum_dim(const lrmem_spectrum* sp) { return sp ? sp->value.dim() : 0; }

lrmem_status lrmem_spectrum_matrix(const lrmem_spectrum* sp, size_t j, double* out, size_t len) {
  return guarded([&] {
    require(sp != nullptr, "null spectrum");
    require(j >= 1 && j <= sp->value.grid.m(), "frequency index out of range");
    const auto& f = sp->value.mats[j - 1];
    std::vector<double> v;
    for (Eigen::Index r = 0; r < f.rows(); ++r)
      for (Eigen::Index c = 0; c < f.cols(); ++c) {
        v.push_back(f(r, c).real());
        v.push_back(f(r, c).imag());
      }
    copy_out(v, out, len);
  });
}

lrmem_status lrmem_spectrum_to_csv(const lrmem_spectrum* sp, char** out) {
  return guarded([&] {
    require(sp != nullptr && out != nullptr, "null argument");
    const auto& seq = sp->value;
    const std::size_t q = seq.dim();
    std::string csv = "j,lambda";
    for (std::size_t r = 1; r <= q; ++r)
      for (std::size_t c = 1; c <= q; ++c) {
        const std::string tag = std::to_string(r) + "_" + std::to_string(c);
        csv += ",re_" + tag + ",im_" + tag;
      }
    csv += '\n';
    for (std::size_t j = 1; j <= seq.grid.m(); ++j) {
      csv += std::to_string(j) + ',' + lrmem::format_double(seq.grid.lambda(j));
      const auto& f = seq.mats[j - 1];
      for (Eigen::Index r = 0; r < f.rows(); ++r)
        for (Eigen::Index c = 0; c < f.cols(); ++c)
          csv += ',' + lrmem::format_double(f(r, c).real()) + ',' + lrmem::format_double(f(r, c).imag());
      csv += '\n';
    }
    *out = dup_string(csv);
  });
}

void lrmem_spectrum_free(lrmem_spectrum* sp) { delete sp; }

void lrmem_estimate_options_init(lrmem_estimate_options* opts) {
  if (!opts) return;
  opts->method = LRMEM_METHOD_SH;
  opts->alpha = 0.85;
  opts->m = 0;
  opts->beta = 0.9;
  opts->eps1 = 0.001;
  opts->eps2 = 0.001;
  opts->keep_mean = 0;
  opts->real_cross_spectrum = 0;
}

lrmem_status lrmem_method_parse(const char* name, lrmem_method* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = static_cast<lrmem_method>(lrmem::parse_method(name));
  });
}

lrmem_status lrmem_estimate_run(const lrmem_series* s, const lrmem_estimate_options* opts, lrmem_estimate** out) {
  return guarded([&] {
    require(s != nullptr && opts != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    require(opts->method >= LRMEM_METHOD_SH && opts->method <= LRMEM_METHOD_SSH_STAR, "unknown method");
    lrmem::GseConfig cfg;
    cfg.method = static_cast<lrmem::Method>(opts->method);
    cfg.alpha = opts->alpha;
    cfg.m = opts->m;
    cfg.beta = opts->beta;
    cfg.bounds = lrmem::ParamBounds{opts->eps1, opts->eps2};
    cfg.demean = opts->keep_mean == 0;
    cfg.cross_spectrum = opts->real_cross_spectrum ? lrmem::CrossSpectrum::real_part : lrmem::CrossSpectrum::full;
    *out = new lrmem_estimate{lrmem::estimate(s->value, cfg), cfg.method};
  });
}

size_t lrmem_estimate_dim(const lrmem_estimate* e) { return e ? e->value.d_hat.size() : 0; }

lrmem_status lrmem_estimate_d_hat(const lrmem_estimate* e, double* out, size_t len) {
  return guarded([&] {
    require(e != nullptr, "null estimate");
    copy_out(e->value.d_hat.d, out, len);
  });
}

lrmem_status lrmem_estimate_se(const lrmem_estimate* e, double* out, size_t len) {
  return guarded([&] {
    require(e != nullptr, "null estimate");
    copy_out(e->value.asymptotic_sd, out, len);
  });
}

lrmem_status lrmem_estimate_g_hat(const lrmem_estimate* e, double* out, size_t len) {
  return guarded([&] {
    require(e != nullptr, "null estimate");
    copy_out(matrix_row_major(e->value.g_hat), out, len);
  });
}

double lrmem_estimate_objective(const lrmem_estimate* e) { return e ? e->value.objective_value : NAN; }
size_t lrmem_estimate_m(const lrmem_estimate* e) { return e ? e->value.m : 0; }
int lrmem_estimate_converged(const lrmem_estimate* e) { return e && e->value.converged ? 1 : 0; }
int lrmem_estimate_iterations(const lrmem_estimate* e) { return e ? e->value.iterations : 0; }

lrmem_status lrmem_estimate_to_json(const lrmem_estimate* e, char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    const auto& r = e->value;
    auto finite = [](const std::vector<double>& v, const char* what) {
      for (double x : v)
        if (!std::isfinite(x)) throw lrmem::NumericError(std::string("non-finite value in ") + what);
      return v;
    };
    std::vector<std::vector<double>> g;
    for (Eigen::Index i = 0; i < r.g_hat.rows(); ++i) {
      std::vector<double> row;
      for (Eigen::Index k = 0; k < r.g_hat.cols(); ++k) row.push_back(r.g_hat(i, k));
      g.push_back(finite(row, "g_hat"));
    }
    if (!std::isfinite(r.objective_value)) throw lrmem::NumericError("non-finite objective value");
    nlohmann::ordered_json j;
    j["d_hat"] = finite(r.d_hat.d, "d_hat");
    j["se"] = finite(r.asymptotic_sd, "se");
    j["g_hat"] = g;
    j["objective_value"] = r.objective_value;
    j["m"] = r.m;
    j["method"] = std::string(lrmem::method_cli_name(e->method));
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    *out = dup_string(j.dump(2) + "\n");
  });
}

void lrmem_estimate_free(lrmem_estimate* e) { delete e; }

lrmem_status lrmem_mc_grid_default(lrmem_mc_grid** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new lrmem_mc_grid{lrmem::ExperimentGrid::standard_design()};
  });
}

lrmem_status lrmem_mc_grid_from_json(const char* text, size_t len, lrmem_mc_grid** out) {
  return guarded([&] {
    require(out != nullptr && text != nullptr, "null argument");
    *out = nullptr;
    *out = new lrmem_mc_grid{lrmem::ExperimentGrid::from_json(std::string_view(text, len))};
  });
}

lrmem_status lrmem_mc_grid_set_replications(lrmem_mc_grid* g, size_t replications) {
  return guarded([&] {
    require(g != nullptr, "null grid");
    require(replications >= 1, "replications must be at least 1");
    g->value.replications = replications;
  });
}

size_t lrmem_mc_grid_cell_count(const lrmem_mc_grid* g) { return g ? g->value.cells().size() : 0; }

void lrmem_mc_grid_free(lrmem_mc_grid* g) { delete g; }

lrmem_status lrmem_mc_run(const lrmem_mc_grid* g, size_t threads, lrmem_mc_result** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new lrmem_mc_result{lrmem::run_grid(g->value, threads)};
  });
}

size_t lrmem_mc_result_cell_count(const lrmem_mc_result* r) { return r ? r->cells.size() : 0; }

lrmem_status lrmem_mc_result_cell_label(const lrmem_mc_result* r, size_t cell, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    require(cell < r->cells.size(), "cell index out of range");
    *out = dup_string(r->cells[cell].summary.key.label());
  });
}

lrmem_status lrmem_mc_result_table_csv(const lrmem_mc_result* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    std::vector<lrmem::CellSummary> s;
    for (const auto& c : r->cells) s.push_back(c.summary);
    *out = dup_string(lrmem::emit_table(s));
  });
}

lrmem_status lrmem_mc_result_raw_csv(const lrmem_mc_result* r, size_t cell, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    require(cell < r->cells.size(), "cell index out of range");
    *out = dup_string(lrmem::emit_raw_estimates(r->cells[cell].raw));
  });
}

void lrmem_mc_result_free(lrmem_mc_result* r) { delete r; }

lrmem_status lrmem_write_file(const char* path, const char* text, size_t len) {
  return guarded([&] {
    require(path != nullptr && (text != nullptr || len == 0), "null argument");
    lrmem::write_text_file(path, std::string_view(text ? text : "", len));
  });
}

}  // extern "C"
