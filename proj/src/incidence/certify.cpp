#include "incwb/incidence/incidence.hpp"
#include "incwb/util/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace incwb {

std::string_view to_string(DofStatus s) {
  switch (s) {
    case DofStatus::Certified: return "certified";
    case DofStatus::Violated: return "violated";
    case DofStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

// C(d, k), saturating at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t d, std::uint64_t k) {
  if (k > d) return 0;
  k = std::min(k, d - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t t = 1; t <= k; ++t) {
    acc = acc * (d - k + t) / t;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t add_saturating(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

// Calls fn on every r-subset of items in lexicographic order.
template <class Fn>
void for_each_subset(const std::vector<std::uint32_t>& items, std::size_t r, Fn&& fn) {
  if (r > items.size()) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t t = 0; t < r; ++t) idx[t] = t;
  std::vector<std::uint32_t> subset(r);
  while (true) {
    for (std::size_t t = 0; t < r; ++t) subset[t] = items[idx[t]];
    fn(subset);
    std::size_t t = r;
    while (t > 0 && idx[t - 1] == items.size() - r + t - 1) --t;
    if (t == 0) return;
    ++idx[t - 1];
    for (std::size_t u = t; u < r; ++u) idx[u] = idx[u - 1] + 1;
  }
}

// Smallest violating k-subset whose first point is p.
std::optional<SubsetWitness> subset_violation_at(const IncidenceMatrix& M, std::uint32_t p, std::size_t k,
                                                 std::size_t s) {
  const auto& curves = M.point_curves()[p];
  if (curves.size() <= s) return std::nullopt;
  std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> table;
  for (std::uint32_t c : curves) {
    const auto& pts = M.curve_points()[c];
    const std::vector<std::uint32_t> later(std::upper_bound(pts.begin(), pts.end(), p), pts.end());
    for_each_subset(later, k - 1, [&](const std::vector<std::uint32_t>& rest) { table[rest].push_back(c); });
  }
  for (const auto& [rest, on] : table) {
    if (on.size() <= s) continue;
    SubsetWitness w;
    w.points.push_back(p);
    w.points.insert(w.points.end(), rest.begin(), rest.end());
    w.curves = on;
    return w;
  }
  return std::nullopt;
}

// Smallest b > a with more than s shared points.
std::optional<PairWitness> pair_violation_at(const IncidenceMatrix& M, std::uint32_t a, std::size_t s) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> shared;
  for (std::uint32_t p : M.curve_points()[a])
    for (std::uint32_t b : M.point_curves()[p])
      if (b > a) shared[b].push_back(p);
  for (const auto& [b, pts] : shared)
    if (pts.size() > s) return PairWitness{a, b, pts};
  return std::nullopt;
}

}  // namespace

DofCertificate certify_dof(const IncidenceMatrix& M, std::size_t k, std::size_t s, unsigned threads,
                           std::uint64_t table_cap) {
  if (k < 1 || s < 1) throw std::invalid_argument("certify_dof: k and s must be at least 1");
  DofCertificate cert;
  cert.k = k;
  cert.s = s;
  cert.table_cap = table_cap;
  for (const auto& pts : M.curve_points())
    cert.table_entries = add_saturating(cert.table_entries, binomial_saturating(pts.size(), k));

  std::vector<std::optional<PairWitness>> pair_hits(M.n());
  parallel_for(M.n(), threads,
               [&](std::size_t a) { pair_hits[a] = pair_violation_at(M, static_cast<std::uint32_t>(a), s); });
  for (auto& hit : pair_hits)
    if (hit) {
      cert.pair_witness = std::move(hit);
      break;
    }

  if (cert.table_entries > table_cap) {
    cert.status = cert.pair_witness ? DofStatus::Violated : DofStatus::Indeterminate;
    return cert;
  }

  std::vector<std::optional<SubsetWitness>> subset_hits(M.m());
  parallel_for(M.m(), threads, [&](std::size_t p) {
    subset_hits[p] = subset_violation_at(M, static_cast<std::uint32_t>(p), k, s);
  });
  for (auto& hit : subset_hits)
    if (hit) {
      cert.subset_witness = std::move(hit);
      break;
    }
  cert.status = (cert.pair_witness || cert.subset_witness) ? DofStatus::Violated : DofStatus::Certified;
  return cert;
}

bool verify_witness(const IncidenceMatrix& M, const DofCertificate& cert) {
  if (cert.subset_witness) {
    const auto& w = *cert.subset_witness;
    if (w.points.size() != cert.k || w.curves.size() <= cert.s) return false;
    if (!std::is_sorted(w.points.begin(), w.points.end()) ||
        std::adjacent_find(w.points.begin(), w.points.end()) != w.points.end())
      return false;
    for (std::uint32_t c : w.curves)
      for (std::uint32_t p : w.points)
        if (!M.contains(p, c)) return false;
  }
  if (cert.pair_witness) {
    const auto& w = *cert.pair_witness;
    if (w.first == w.second || w.shared_points.size() <= cert.s) return false;
    for (std::uint32_t p : w.shared_points)
      if (!M.contains(p, w.first) || !M.contains(p, w.second)) return false;
  }
  return cert.status != DofStatus::Violated || cert.subset_witness || cert.pair_witness;
}

Json to_json(const DofCertificate& c) {
  Json j;
  j["schema"] = "incwb.certificate/1";
  j["k"] = c.k;
  j["s"] = c.s;
  j["status"] = std::string(to_string(c.status));
  j["table_entries"] = c.table_entries;
  j["table_cap"] = c.table_cap;
  if (c.subset_witness) j["subset_witness"] = {{"points", c.subset_witness->points}, {"curves", c.subset_witness->curves}};
  if (c.pair_witness)
    j["pair_witness"] = {{"curves", {c.pair_witness->first, c.pair_witness->second}},
                         {"shared_points", c.pair_witness->shared_points}};
  return j;
}

KstReport kst_double_count(const IncidenceMatrix& M, std::size_t k, std::size_t s) {
  if (k < 1 || s < 1) throw std::invalid_argument("kst_double_count: k and s must be at least 1");
  KstReport r;
  r.k = k;
  r.s = s;
  mpz_class c;
  for (const auto& pts : M.curve_points()) {
    mpz_bin_uiui(c.get_mpz_t(), pts.size(), k);
    r.lhs += c;
  }
  mpz_bin_uiui(c.get_mpz_t(), M.m(), k);
  r.rhs = c * static_cast<unsigned long>(s);
  r.holds = r.lhs <= r.rhs;
  return r;
}

Json to_json(const KstReport& r) {
  Json j;
  j["schema"] = "incwb.kst/1";
  j["k"] = r.k;
  j["s"] = r.s;
  j["lhs"] = r.lhs.get_str();
  j["rhs"] = r.rhs.get_str();
  j["holds"] = r.holds;
  return j;
}

}  // namespace incwb
