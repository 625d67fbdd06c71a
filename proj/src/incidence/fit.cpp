#include "incwb/incidence/incidence.hpp"

#include <cmath>
#include <stdexcept>

namespace incwb {

namespace {

// Relative threshold below which a centered design column or the 2x2 normal
// matrix counts as singular.
constexpr long double kDegenerateTolerance = 1e-12L;

}  // namespace

long double ExponentFit::predict(long double m, long double n) const {
  if (!degenerate) return std::exp(*a * std::log(m) + *b * std::log(n) + c);
  if (combined_against == "m") return std::exp(*combined * std::log(m) + c);
  if (combined_against == "n") return std::exp(*combined * std::log(n) + c);
  return std::exp(c);
}

ExponentFit exponent_fit(const std::vector<SeriesPoint>& series) {
  if (series.size() < 3) throw std::invalid_argument("exponent_fit: need at least 3 data points");
  const auto N = static_cast<long double>(series.size());
  std::vector<long double> lm, ln, li;
  for (const auto& s : series) {
    if (!(s.incidences >= 1)) throw std::invalid_argument("exponent_fit: every incidence count must be >= 1");
    if (!(s.m > 0 && s.n > 0)) throw std::invalid_argument("exponent_fit: m and n must be positive");
    lm.push_back(std::log(s.m));
    ln.push_back(std::log(s.n));
    li.push_back(std::log(s.incidences));
  }
  long double mean_m = 0, mean_n = 0, mean_i = 0;
  for (std::size_t t = 0; t < lm.size(); ++t) {
    mean_m += lm[t];
    mean_n += ln[t];
    mean_i += li[t];
  }
  mean_m /= N;
  mean_n /= N;
  mean_i /= N;
  long double smm = 0, snn = 0, smn = 0, smi = 0, sni = 0;
  for (std::size_t t = 0; t < lm.size(); ++t) {
    const long double dm = lm[t] - mean_m, dn = ln[t] - mean_n, di = li[t] - mean_i;
    smm += dm * dm;
    snn += dn * dn;
    smn += dm * dn;
    smi += dm * di;
    sni += dn * di;
  }

  ExponentFit fit;
  const long double det = smm * snn - smn * smn;
  const bool m_varies = smm > kDegenerateTolerance * N;
  const bool n_varies = snn > kDegenerateTolerance * N;
  if (m_varies && n_varies && det > kDegenerateTolerance * smm * snn) {
    fit.a = (smi * snn - sni * smn) / det;
    fit.b = (sni * smm - smi * smn) / det;
    fit.c = mean_i - *fit.a * mean_m - *fit.b * mean_n;
  } else {
    fit.degenerate = true;
    if (m_varies) {
      fit.combined = smi / smm;
      fit.combined_against = "m";
      fit.c = mean_i - *fit.combined * mean_m;
    } else if (n_varies) {
      fit.combined = sni / snn;
      fit.combined_against = "n";
      fit.c = mean_i - *fit.combined * mean_n;
    } else {
      fit.combined = 0;
      fit.combined_against = "none";
      fit.c = mean_i;
    }
  }

  long double sq = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const long double pred = fit.predict(series[t].m, series[t].n);
    const long double r = std::log(pred) - li[t];
    sq += r * r;
    fit.max_relative_error =
        std::max(fit.max_relative_error, std::fabs(pred - series[t].incidences) / series[t].incidences);
  }
  fit.residual = std::sqrt(sq / N);
  return fit;
}

Json to_json(const ExponentFit& f) {
  Json j;
  j["schema"] = "incwb.fit/1";
  j["degenerate"] = f.degenerate;
  j["a"] = f.a ? Json(static_cast<double>(*f.a)) : Json(nullptr);
  j["b"] = f.b ? Json(static_cast<double>(*f.b)) : Json(nullptr);
  j["c"] = static_cast<double>(f.c);
  j["combined"] = f.combined ? Json(static_cast<double>(*f.combined)) : Json(nullptr);
  j["combined_against"] = f.degenerate ? Json(f.combined_against) : Json(nullptr);
  j["residual"] = static_cast<double>(f.residual);
  j["max_relative_error"] = static_cast<double>(f.max_relative_error);
  return j;
}

}  // namespace incwb
