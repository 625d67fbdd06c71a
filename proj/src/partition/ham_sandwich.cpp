#include "incwb/exact/matrix.hpp"
#include "incwb/partition/partition.hpp"
#include "incwb/simd/kernels.hpp"
#include "incwb/util/parallel.hpp"
#include "incwb/util/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace incwb {

namespace {

constexpr int kBatch = 8;
constexpr double kFilterSlack = 1e-12;
const mpz_class kSnapDenominator = mpz_class(1) << 32;
const mpz_class kScaleDenominator = mpz_class(1) << 16;
constexpr double kTauSchedule[] = {0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
constexpr int kIterationsPerTau = 30;

int exact_sign(const std::vector<Rational>& c, std::span<const Rational> x) {
  Rational s = c[0];
  for (std::size_t k = 0; k < x.size(); ++k) s += c[k + 1] * x[k];
  return s.sign();
}

// Sign of c0 + c.x from doubles when the rounding error bound allows it.
std::optional<int> filtered_sign(const double* c, const double* x, std::size_t dim) {
  double s = c[0], mag = std::abs(c[0]);
  for (std::size_t k = 0; k < dim; ++k) {
    const double p = c[k + 1] * x[k];
    s += p;
    mag += std::abs(p);
  }
  if (!std::isfinite(s) || !std::isfinite(mag) || mag < 1e-280) return std::nullopt;
  if (std::abs(s) <= mag * kFilterSlack) return std::nullopt;
  return s > 0 ? 1 : -1;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.to_double());
  return out;
}

std::size_t half_ceil(std::size_t n) { return (n + 1) / 2; }

double set_imbalance(const SideCounts& c, std::size_t n) {
  if (n == 0) return 0.0;
  const std::size_t half = half_ceil(n);
  const std::size_t heavy = std::max(c.positive, c.negative);
  return heavy <= half ? 0.0 : static_cast<double>(heavy - half) / static_cast<double>(half);
}

struct Candidate {
  std::vector<Rational> coeffs;
  std::vector<SideCounts> counts;
  double imbalance = std::numeric_limits<double>::infinity();
  std::size_t surface = 0;
  int restart = -1;
  bool valid = false;

  [[nodiscard]] auto key() const { return std::make_tuple(!valid, imbalance, surface, restart); }
};

class Search {
 public:
  Search(const std::vector<std::vector<RationalPoint>>& sets, const PartitionOptions& opt) : sets_(sets), opt_(opt) {
    dim_ = 0;
    for (const auto& s : sets_)
      for (const auto& p : s) {
        if (dim_ == 0) dim_ = p.size();
        if (p.size() != dim_ || p.empty()) throw std::invalid_argument("ham_sandwich_bisect: inconsistent point dimension");
      }
    if (dim_ == 0) dim_ = 1;
    if (sets_.size() > dim_) throw std::invalid_argument("ham_sandwich_bisect: more sets than dimensions");
    standardize();
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }

  Candidate evaluate(std::vector<Rational> coeffs, int restart) const {
    Candidate c;
    c.restart = restart;
    c.counts = counts(coeffs);
    c.imbalance = 0.0;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      c.imbalance = std::max(c.imbalance, set_imbalance(c.counts[s], sets_[s].size()));
      c.surface += c.counts[s].zero;
    }
    c.coeffs = std::move(coeffs);
    c.valid = true;
    return c;
  }

  std::vector<SideCounts> counts(const std::vector<Rational>& coeffs) const {
    const auto cd = to_doubles(coeffs);
    std::vector<SideCounts> out(sets_.size());
    std::vector<double> x(dim_);
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const std::size_t n = sets_[s].size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) x[k] = raw_[s][k * n + i];
        const auto f = filtered_sign(cd.data(), x.data(), dim_);
        const int sg = f ? *f : exact_sign(coeffs, sets_[s][i]);
        if (sg < 0)
          ++out[s].negative;
        else if (sg > 0)
          ++out[s].positive;
        else
          ++out[s].zero;
      }
    }
    return out;
  }

  Candidate restart(int index) const {
    Rng rng(derive_seed(opt_.seed, static_cast<std::uint64_t>(index)));
    std::vector<double> theta = initial(rng);
    descend(theta);
    return repair(theta, index);
  }

  std::vector<Candidate> anchor_candidates() const {
    std::vector<RationalPoint> anchors;
    std::vector<const RationalPoint*> pts;
    for (const auto& s : sets_)
      for (const auto& p : s) pts.push_back(&p);
    if (pts.size() > 8 || dim_ > 3) return {};
    auto add = [&](RationalPoint a) {
      if (std::find(anchors.begin(), anchors.end(), a) == anchors.end()) anchors.push_back(std::move(a));
    };
    for (const auto* p : pts) add(*p);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        RationalPoint mid(dim_);
        for (std::size_t k = 0; k < dim_; ++k) mid[k] = ((*pts[a])[k] + (*pts[b])[k]) / Rational(2);
        add(std::move(mid));
      }
    std::vector<Candidate> out;
    std::vector<std::size_t> idx(dim_);
    std::iota(idx.begin(), idx.end(), 0);
    if (anchors.size() < dim_) return out;
    while (true) {
      ExactMatrix<Rational> m(dim_, dim_ + 1);
      for (std::size_t r = 0; r < dim_; ++r) {
        m(r, 0) = Rational(1);
        for (std::size_t k = 0; k < dim_; ++k) m(r, k + 1) = anchors[idx[r]][k];
      }
      const auto ker = kernel_basis(m);
      if (ker.size() == 1) {
        bool linear_part = false;
        for (std::size_t k = 1; k <= dim_; ++k) linear_part = linear_part || !ker[0][k].is_zero();
        if (linear_part) out.push_back(evaluate(ker[0], -1));
      }
      // Next combination in lexicographic order.
      std::size_t pos = dim_;
      while (pos > 0 && idx[pos - 1] == anchors.size() - dim_ + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t k = pos; k < dim_; ++k) idx[k] = idx[k - 1] + 1;
    }
    return out;
  }

 private:
  void standardize() {
    std::vector<double> sum(dim_, 0.0), sq(dim_, 0.0);
    std::size_t total = 0;
    raw_.resize(sets_.size());
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const std::size_t n = sets_[s].size();
      raw_[s].assign(dim_ * n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
          const double v = sets_[s][i][k].to_double();
          raw_[s][k * n + i] = v;
          sum[k] += v;
        }
      total += n;
    }
    mu_.assign(dim_, Rational(0));
    sigma_.assign(dim_, Rational(1));
    if (total == 0) return;
    for (std::size_t k = 0; k < dim_; ++k) mu_[k] = Rational::approximate(sum[k] / static_cast<double>(total), kScaleDenominator);
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const std::size_t n = sets_[s].size();
      for (std::size_t k = 0; k < dim_; ++k) {
        const double m = mu_[k].to_double();
        for (std::size_t i = 0; i < n; ++i) sq[k] += (raw_[s][k * n + i] - m) * (raw_[s][k * n + i] - m);
      }
    }
    for (std::size_t k = 0; k < dim_; ++k) {
      const double sd = std::sqrt(sq[k] / static_cast<double>(total));
      if (sd > 1e-300) {
        sigma_[k] = Rational::approximate(sd, kScaleDenominator);
        if (sigma_[k].is_zero()) sigma_[k] = Rational(1, 65536);
      }
    }
    std_.resize(sets_.size());
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const std::size_t n = sets_[s].size();
      std_[s].resize(dim_ * n);
      for (std::size_t k = 0; k < dim_; ++k) {
        const double m = mu_[k].to_double(), sd = sigma_[k].to_double();
        for (std::size_t i = 0; i < n; ++i) std_[s][k * n + i] = (raw_[s][k * n + i] - m) / sd;
      }
    }
  }

  RationalPoint standardized(const RationalPoint& x) const {
    RationalPoint out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = (x[k] - mu_[k]) / sigma_[k];
    return out;
  }

  std::vector<Rational> to_original(const std::vector<Rational>& chat) const {
    std::vector<Rational> c(dim_ + 1);
    c[0] = chat[0];
    for (std::size_t k = 0; k < dim_; ++k) {
      c[k + 1] = chat[k + 1] / sigma_[k];
      c[0] -= c[k + 1] * mu_[k];
    }
    return c;
  }

  std::vector<double> affine(const std::vector<double>& theta, std::size_t s) const {
    const std::size_t n = sets_[s].size();
    std::vector<double> h(n);
    simd::kernels().affine_eval(std_[s].data(), n, dim_, theta.data(), h.data());
    return h;
  }

  std::vector<double> initial(Rng& rng) const {
    std::vector<double> theta(dim_ + 1, 0.0);
    double norm = 0.0;
    for (std::size_t k = 1; k <= dim_; ++k) {
      theta[k] = rng.normal();
      norm += theta[k] * theta[k];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      theta[1] = 1.0;
      norm = 1.0;
    }
    for (std::size_t k = 1; k <= dim_; ++k) theta[k] /= norm;
    std::vector<double> all;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const auto h = affine(theta, s);
      all.insert(all.end(), h.begin(), h.end());
    }
    if (!all.empty()) {
      auto mid = all.begin() + static_cast<std::ptrdiff_t>(all.size() / 2);
      std::nth_element(all.begin(), mid, all.end());
      theta[0] = -*mid;
    }
    return theta;
  }

  static void normalize(std::vector<double>& theta) {
    double norm = 0.0;
    for (std::size_t k = 1; k < theta.size(); ++k) norm += theta[k] * theta[k];
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (auto& t : theta) t /= norm;
  }

  // Smoothed signed imbalance per set and its Jacobian.
  double residuals(const std::vector<double>& theta, double tau, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const std::size_t q = sets_.size();
    r.setZero(static_cast<Eigen::Index>(q));
    if (jac) jac->setZero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(dim_ + 1));
    std::vector<double> w, sums(dim_);
    for (std::size_t s = 0; s < q; ++s) {
      const std::size_t n = sets_[s].size();
      if (n == 0) continue;
      const auto h = affine(theta, s);
      w.assign(n, 0.0);
      double acc = 0.0, wsum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = std::tanh(h[i] / tau);
        acc += t;
        w[i] = (1.0 - t * t) / (tau * static_cast<double>(n));
        wsum += w[i];
      }
      r(static_cast<Eigen::Index>(s)) = acc / static_cast<double>(n);
      if (jac) {
        simd::kernels().weighted_column_sums(std_[s].data(), n, dim_, w.data(), sums.data());
        (*jac)(static_cast<Eigen::Index>(s), 0) = wsum;
        for (std::size_t k = 0; k < dim_; ++k) (*jac)(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k + 1)) = sums[k];
      }
    }
    return r.squaredNorm();
  }

  void descend(std::vector<double>& theta) const {
    const auto q = static_cast<Eigen::Index>(sets_.size());
    Eigen::VectorXd r, rt;
    Eigen::MatrixXd jac;
    for (double tau : kTauSchedule) {
      double lambda = 1e-3;
      double f = residuals(theta, tau, r, &jac);
      for (int it = 0; it < kIterationsPerTau && f > 1e-30; ++it) {
        const Eigen::MatrixXd jjt = jac * jac.transpose() + lambda * Eigen::MatrixXd::Identity(q, q);
        const Eigen::VectorXd y = jjt.ldlt().solve(r);
        const Eigen::VectorXd step = -jac.transpose() * y;
        std::vector<double> trial = theta;
        for (std::size_t k = 0; k <= dim_; ++k) trial[k] += step(static_cast<Eigen::Index>(k));
        normalize(trial);
        const double ft = residuals(trial, tau, rt, nullptr);
        if (std::isfinite(ft) && ft < f) {
          theta = std::move(trial);
          lambda = std::max(lambda / 3.0, 1e-12);
          f = residuals(theta, tau, r, &jac);
        } else {
          lambda *= 4.0;
          if (lambda > 1e8) break;
        }
      }
    }
  }

  // Snap to rationals, then pin unbalanced sets at their medians by exact
  // projection onto {c : c0 + c.x_pin = 0}.
  Candidate repair(const std::vector<double>& theta, int index) const {
    std::vector<Rational> chat;
    for (double t : theta) chat.push_back(Rational::approximate(t, kSnapDenominator));
    std::vector<Rational> current = chat;
    std::vector<std::optional<RationalPoint>> pins(sets_.size());
    Candidate best = evaluate(to_original(current), index);
    Candidate last = best;
    for (std::size_t round = 0; round <= dim_ + 1 && last.imbalance > 0.0; ++round) {
      const auto cd = to_doubles(current);
      std::size_t pinned = 0;
      for (std::size_t s = 0; s < sets_.size(); ++s) {
        const std::size_t n = sets_[s].size();
        if (set_imbalance(last.counts[s], n) > 0.0) {
          const auto h = affine(cd, s);
          std::vector<std::size_t> order(n);
          std::iota(order.begin(), order.end(), 0);
          std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] < h[b] || (h[a] == h[b] && a < b); });
          if (n % 2 == 1) {
            pins[s] = standardized(sets_[s][order[(n - 1) / 2]]);
          } else {
            const auto a = standardized(sets_[s][order[n / 2 - 1]]);
            const auto b = standardized(sets_[s][order[n / 2]]);
            RationalPoint mid(dim_);
            for (std::size_t k = 0; k < dim_; ++k) mid[k] = (a[k] + b[k]) / Rational(2);
            pins[s] = std::move(mid);
          }
        }
        if (pins[s]) ++pinned;
      }
      if (pinned == 0 || pinned > dim_) break;
      std::vector<std::vector<Rational>> rows;
      for (const auto& p : pins) {
        if (!p) continue;
        std::vector<Rational> row{Rational(1)};
        row.insert(row.end(), p->begin(), p->end());
        rows.push_back(std::move(row));
      }
      const std::size_t m = rows.size();
      ExactMatrix<Rational> gram(m, m);
      std::vector<Rational> rhs(m);
      for (std::size_t a = 0; a < m; ++a) {
        rhs[a] = dot(rows[a], chat);
        for (std::size_t b = 0; b < m; ++b) gram(a, b) = dot(rows[a], rows[b]);
      }
      const auto y = solve(gram, std::span<const Rational>(rhs));
      if (!y) break;
      current = chat;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t k = 0; k <= dim_; ++k) current[k] -= (*y)[a] * rows[a][k];
      bool linear_part = false;
      for (std::size_t k = 1; k <= dim_; ++k) linear_part = linear_part || !current[k].is_zero();
      if (!linear_part) break;
      Candidate next = evaluate(to_original(current), index);
      if (next.key() < best.key()) best = next;
      last = std::move(next);
    }
    return best;
  }

  const std::vector<std::vector<RationalPoint>>& sets_;
  const PartitionOptions& opt_;
  std::size_t dim_ = 0;
  std::vector<Rational> mu_, sigma_;
  std::vector<std::vector<double>> raw_;  // per set, column-major
  std::vector<std::vector<double>> std_;  // per set, column-major, standardized
};

}  // namespace

int hyperplane_sign(const std::vector<Rational>& coeffs, std::span<const Rational> x) {
  if (coeffs.size() != x.size() + 1) throw std::invalid_argument("hyperplane_sign: dimension mismatch");
  const auto cd = to_doubles(coeffs);
  std::vector<double> xd;
  for (const auto& v : x) xd.push_back(v.to_double());
  const auto f = filtered_sign(cd.data(), xd.data(), x.size());
  return f ? *f : exact_sign(coeffs, x);
}

std::vector<SideCounts> side_counts(const std::vector<std::vector<RationalPoint>>& sets,
                                    const std::vector<Rational>& coeffs) {
  std::vector<SideCounts> out(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (const auto& p : sets[s]) {
      const int sg = exact_sign(coeffs, p);
      if (sg < 0)
        ++out[s].negative;
      else if (sg > 0)
        ++out[s].positive;
      else
        ++out[s].zero;
    }
  return out;
}

BisectionResult ham_sandwich_bisect(const std::vector<std::vector<RationalPoint>>& sets,
                                    const PartitionOptions& options) {
  if (options.delta < 0.0) throw std::invalid_argument("ham_sandwich_bisect: delta must be non-negative");
  if (options.restarts < 1) throw std::invalid_argument("ham_sandwich_bisect: restart budget must be positive");
  const Search search(sets, options);

  Candidate best;
  for (auto& c : search.anchor_candidates())
    if (c.key() < best.key()) best = std::move(c);

  int used = 0;
  // An exact split ends the search after the current batch; an anchor cut
  // with no points on it ends it before any descent.
  while (used < options.restarts) {
    if (best.valid && best.imbalance == 0.0 && (best.surface == 0 || used > 0)) break;
    const int batch = std::min(kBatch, options.restarts - used);
    std::vector<Candidate> found(static_cast<std::size_t>(batch));
    parallel_for(static_cast<std::size_t>(batch), options.threads,
                 [&](std::size_t i) { found[i] = search.restart(used + static_cast<int>(i)); });
    for (auto& c : found)
      if (c.key() < best.key()) best = std::move(c);
    used += batch;
  }

  BisectionResult out;
  out.restarts_used = used;
  if (!best.valid) {
    // No sets at all: any hyperplane works.
    out.coeffs.assign(search.dim() + 1, Rational(0));
    out.coeffs[1] = Rational(1);
    out.counts = side_counts(sets, out.coeffs);
    return out;
  }
  out.coeffs = std::move(best.coeffs);
  out.counts = std::move(best.counts);
  out.imbalance = best.imbalance;
  out.restart = best.restart;
  out.status = best.imbalance <= options.delta ? SearchStatus::Ok : SearchStatus::BudgetExhausted;
  return out;
}

}  // namespace incwb
