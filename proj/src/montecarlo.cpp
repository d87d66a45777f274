#include "lrmem/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "lrmem/csv.hpp"
#include "lrmem/errors.hpp"
#include "lrmem/rng.hpp"
#include "lrmem/simulator.hpp"

namespace lrmem {

namespace {

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fixed4(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Runs task(i) for i in [0, count) on `threads` workers. The first exception
// stops further scheduling; every exception is kept with its index.
template <class Task>
std::vector<std::pair<std::size_t, std::exception_ptr>> parallel_for(std::size_t count, std::size_t threads,
                                                                      Task&& task) {
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  std::mutex err_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        errors.emplace_back(i, std::current_exception());
        failed = true;
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::sort(errors.begin(), errors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return errors;
}

[[noreturn]] void rethrow_with_context(std::exception_ptr e, const std::string& context) {
  try {
    std::rethrow_exception(e);
  } catch (const InvalidArgument& ex) {
    throw InvalidArgument(context + ": " + ex.what());
  } catch (const DataError& ex) {
    throw DataError(context + ": " + ex.what());
  } catch (const std::exception& ex) {
    throw NumericError(context + ": " + ex.what());
  }
}

}  // namespace

std::string CellKey::label() const {
  std::string s(method_label(method));
  s += "|beta=" + (beta ? short_double(*beta) : std::string("-"));
  s += "|alpha=" + short_double(alpha);
  s += "|rho=" + short_double(rho);
  s += "|d=";
  for (std::size_t k = 0; k < d_true.size(); ++k) {
    if (k) s += ',';
    s += short_double(d_true[k]);
  }
  return s;
}

std::uint64_t CellKey::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentGrid ExperimentGrid::standard_design() {
  ExperimentGrid g;
  g.d_list = {MemoryParams{{0.1, 0.4}}, MemoryParams{{0.2, 0.3}}, MemoryParams{{0.1, 0.3}}, MemoryParams{{0.3, 0.4}}};
  g.rho_list = {0.0, 0.3, 0.6, 0.8};
  g.methods = {Method::ssh, Method::ssh_star, Method::sh, Method::tsh};
  g.alpha_list = {0.65, 0.85};
  g.beta_list = {0.7, 0.9};
  return g;
}

ExperimentGrid ExperimentGrid::from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed grid config: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("grid config must be a JSON object");
  ExperimentGrid g = standard_design();
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n") g.n = value.get<std::size_t>();
      else if (key == "replications") g.replications = value.get<std::size_t>();
      else if (key == "truncation") g.truncation = value.get<std::size_t>();
      else if (key == "master_seed") g.master_seed = value.get<std::uint64_t>();
      else if (key == "rho_list") g.rho_list = value.get<std::vector<double>>();
      else if (key == "alpha_list") g.alpha_list = value.get<std::vector<double>>();
      else if (key == "beta_list") g.beta_list = value.get<std::vector<double>>();
      else if (key == "eps1") g.bounds.eps1 = value.get<double>();
      else if (key == "eps2") g.bounds.eps2 = value.get<double>();
      else if (key == "demean") g.demean = value.get<bool>();
      else if (key == "d_list") {
        g.d_list.clear();
        for (const auto& d : value) g.d_list.push_back(MemoryParams{d.get<std::vector<double>>()});
      } else if (key == "methods") {
        g.methods.clear();
        for (const auto& m : value) g.methods.push_back(parse_method(m.get<std::string>()));
      } else if (key == "cross_spectrum") {
        const auto v = value.get<std::string>();
        if (v == "full") g.cross_spectrum = CrossSpectrum::full;
        else if (v == "real") g.cross_spectrum = CrossSpectrum::real_part;
        else throw InvalidArgument("cross_spectrum must be \"full\" or \"real\", got \"" + v + "\"");
      } else {
        throw InvalidArgument("unknown grid config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed grid config: ") + e.what());
  }
  g.validate();
  return g;
}

void ExperimentGrid::validate() const {
  if (replications < 1) throw InvalidArgument("replications must be at least 1");
  if (n < 4) throw InvalidArgument("sample size n must be at least 4");
  if (truncation < 1) throw InvalidArgument("truncation must be at least 1");
  if (d_list.empty() || rho_list.empty() || methods.empty() || alpha_list.empty())
    throw InvalidArgument("grid lists d_list, rho_list, methods and alpha_list must be nonempty");
  const bool smoothed = std::any_of(methods.begin(), methods.end(), is_smoothed);
  if (smoothed && beta_list.empty()) throw InvalidArgument("smoothed methods need a nonempty beta_list");
  for (double a : alpha_list)
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha values must lie in (0,1)");
  for (double b : beta_list)
    if (!(b > 0.0 && b < 1.0)) throw InvalidArgument("beta values must lie in (0,1)");
  for (double r : rho_list)
    if (!(r > -1.0 && r < 1.0)) throw InvalidArgument("rho values must lie in (-1,1)");
  const std::size_t q = d_list.front().size();
  for (const auto& d : d_list) {
    if (d.size() != q || q == 0) throw InvalidArgument("all d vectors must share one nonzero length");
    for (double v : d.d)
      if (!(std::abs(v) < 0.5)) throw InvalidArgument("d values must lie in (-1/2, 1/2)");
  }
  bounds.validate();
}

std::vector<CellKey> ExperimentGrid::cells() const {
  std::vector<CellKey> out;
  for (Method m : methods) {
    std::vector<std::optional<double>> betas;
    if (is_smoothed(m))
      betas.assign(beta_list.begin(), beta_list.end());
    else
      betas.push_back(std::nullopt);
    for (const auto& b : betas)
      for (double a : alpha_list)
        for (double r : rho_list)
          for (const auto& d : d_list) out.push_back(CellKey{m, a, b, r, d});
  }
  return out;
}

std::uint64_t ExperimentGrid::replication_seed(const CellKey& key, std::size_t r) const noexcept {
  return hash_words({master_seed, key.hash(), static_cast<std::uint64_t>(r)});
}

CellSummary summarize(const CellKey& key, std::span<const MemoryParams> raw, std::size_t non_converged) {
  if (raw.empty()) throw InvalidArgument("cannot summarize an empty replication list");
  const std::size_t q = key.d_true.size();
  const auto R = static_cast<double>(raw.size());
  CellSummary s{key, std::vector<double>(q, 0.0), std::vector<double>(q, 0.0), std::vector<double>(q, 0.0),
                raw.size(), non_converged};
  for (const auto& d : raw) {
    if (d.size() != q) throw InvalidArgument("estimate dimension does not match the cell");
    for (std::size_t k = 0; k < q; ++k) s.mean[k] += d[k];
  }
  for (std::size_t k = 0; k < q; ++k) s.mean[k] /= R;
  for (std::size_t k = 0; k < q; ++k) {
    double ss = 0.0, se = 0.0;
    for (const auto& d : raw) {
      ss += (d[k] - s.mean[k]) * (d[k] - s.mean[k]);
      se += (d[k] - key.d_true[k]) * (d[k] - key.d_true[k]);
    }
    s.sd[k] = raw.size() > 1 ? std::sqrt(ss / (R - 1.0)) : 0.0;
    s.mse[k] = se / R;
  }
  return s;
}

EstimateResult run_replication(const ExperimentGrid& grid, const CellKey& key, std::size_t r) {
  Varfima0Spec spec{key.d_true, equicorrelation(key.d_true.size(), key.rho), grid.n, grid.truncation,
                    grid.replication_seed(key, r)};
  GseConfig cfg;
  cfg.method = key.method;
  cfg.alpha = key.alpha;
  cfg.beta = key.beta.value_or(0.9);
  cfg.bounds = grid.bounds;
  cfg.demean = grid.demean;
  cfg.cross_spectrum = grid.cross_spectrum;
  return estimate(simulate(spec), cfg);
}

std::vector<CellResult> run_grid(const ExperimentGrid& grid, std::size_t threads) {
  grid.validate();
  const auto keys = grid.cells();
  const std::size_t R = grid.replications;
  std::vector<MemoryParams> estimates(keys.size() * R);
  std::vector<char> converged(keys.size() * R, 0);

  const auto errors = parallel_for(keys.size() * R, threads, [&](std::size_t i) {
    auto res = run_replication(grid, keys[i / R], i % R);
    estimates[i] = std::move(res.d_hat);
    converged[i] = res.converged ? 1 : 0;
  });
  if (!errors.empty()) {
    const std::size_t i = errors.front().first;
    rethrow_with_context(errors.front().second,
                         "cell " + keys[i / R].label() + ", replication " + std::to_string(i % R + 1));
  }

  std::vector<CellResult> out;
  out.reserve(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    std::vector<MemoryParams> raw(estimates.begin() + static_cast<std::ptrdiff_t>(c * R),
                                  estimates.begin() + static_cast<std::ptrdiff_t>((c + 1) * R));
    const auto bad = static_cast<std::size_t>(
        std::count(converged.begin() + static_cast<std::ptrdiff_t>(c * R),
                   converged.begin() + static_cast<std::ptrdiff_t>((c + 1) * R), 0));
    auto summary = summarize(keys[c], raw, bad);
    out.push_back(CellResult{std::move(summary), std::move(raw)});
  }
  return out;
}

CellResult run_cell(const ExperimentGrid& grid, const CellKey& key, std::size_t threads) {
  ExperimentGrid one = grid;
  one.methods = {key.method};
  one.alpha_list = {key.alpha};
  one.beta_list = key.beta ? std::vector<double>{*key.beta} : grid.beta_list;
  if (is_smoothed(key.method) && !key.beta) throw InvalidArgument("smoothed cells need a beta value");
  one.rho_list = {key.rho};
  one.d_list = {key.d_true};
  auto res = run_grid(one, threads);
  return std::move(res.front());
}

std::string emit_table(std::span<const CellSummary> summaries) {
  if (summaries.empty()) throw InvalidArgument("no cell summaries to emit");
  const std::size_t q = summaries.front().key.d_true.size();
  std::string out = "method,beta,alpha,rho";
  for (std::size_t k = 1; k <= q; ++k) out += ",d_true_" + std::to_string(k);
  out += ",coord,mean,sd,mse\n";
  for (const auto& s : summaries) {
    if (s.key.d_true.size() != q) throw InvalidArgument("all cells in a table must share the dimension q");
    std::string prefix(method_label(s.key.method));
    prefix += ',' + (s.key.beta ? short_double(*s.key.beta) : std::string("-"));
    prefix += ',' + short_double(s.key.alpha) + ',' + short_double(s.key.rho);
    for (std::size_t k = 0; k < q; ++k) prefix += ',' + short_double(s.key.d_true[k]);
    for (std::size_t k = 0; k < q; ++k) {
      out += prefix + ',' + std::to_string(k + 1) + ',' + fixed4(s.mean[k]) + ',' + fixed4(s.sd[k]) + ',' +
             fixed4(s.mse[k]) + '\n';
    }
  }
  return out;
}

std::string emit_raw_estimates(std::span<const MemoryParams> raw) {
  if (raw.empty()) throw InvalidArgument("no estimates to emit");
  const std::size_t q = raw.front().size();
  std::string out = "replication";
  for (std::size_t k = 1; k <= q; ++k) out += ",d_hat_" + std::to_string(k);
  out += '\n';
  for (std::size_t r = 0; r < raw.size(); ++r) {
    out += std::to_string(r + 1);
    for (std::size_t k = 0; k < q; ++k) out += ',' + format_double(raw[r][k]);
    out += '\n';
  }
  return out;
}

}  // namespace lrmem
