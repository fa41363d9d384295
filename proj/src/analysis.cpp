#include "sentinf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

#include "sentinf/sampler.hpp"
#include "sentinf/survival.hpp"

namespace sentinf {

namespace {

double l1(std::span<const double> row) {
  double s = 0.0;
  for (double x : row) s += std::abs(x);
  return s;
}

}  // namespace

std::vector<NormRow> export_norms(const ParameterStore& params) {
  std::vector<NormRow> rows;
  rows.reserve(params.users() * params.classes());
  for (std::size_t u = 0; u < params.users(); ++u) {
    for (std::size_t k = 0; k < params.classes(); ++k) {
      const auto user = static_cast<UserIndex>(u);
      const auto cls = static_cast<SentimentClass>(k);
      rows.push_back({user, cls, l1(params.influence(user, cls)),
                      l1(params.susceptibility(user, cls))});
    }
  }
  return rows;
}

std::vector<RateRow> export_rates(const ParameterStore& params, const PairwiseRates& baseline,
                                  SentimentClass sentiment, std::optional<std::size_t> sample,
                                  std::uint64_t seed) {
  if (sentiment >= params.classes()) {
    throw ConfigError("export: sentiment class out of range");
  }
  const std::size_t m = params.users();
  const std::size_t pairs = m < 2 ? 0 : m * (m - 1);
  // pair index p maps to src = p / (m-1), dst = the (p % (m-1))-th user other than src
  std::vector<std::size_t> chosen;
  if (sample && *sample < pairs) {
    std::vector<std::size_t> all(pairs);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(seed);
    chosen.reserve(*sample);
    std::ranges::sample(all, std::back_inserter(chosen), static_cast<std::ptrdiff_t>(*sample),
                        rng);
  } else {
    chosen.resize(pairs);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  }

  std::vector<RateRow> rows;
  rows.reserve(chosen.size());
  for (std::size_t p : chosen) {
    const auto src = static_cast<UserIndex>(p / (m - 1));
    auto dst = static_cast<UserIndex>(p % (m - 1));
    if (dst >= src) ++dst;
    rows.push_back({src, dst, transmission_rate(params, src, dst, sentiment),
                    baseline.get(src, dst)});
  }
  // ranges::sample preserves input order, so rows are already sorted
  return rows;
}

void write_norms_csv(std::ostream& out, const std::vector<NormRow>& rows) {
  const auto old = out.precision(17);
  out << "user,sentiment,influence_l1,susceptibility_l1\n";
  for (const auto& r : rows) {
    out << r.user << ',' << r.sentiment << ',' << r.influence_l1 << ',' << r.susceptibility_l1
        << '\n';
  }
  out.precision(old);
}

void write_rates_csv(std::ostream& out, const std::vector<RateRow>& rows) {
  const auto old = out.precision(17);
  out << "src,dst,phi,baseline_rate\n";
  for (const auto& r : rows) {
    out << r.src << ',' << r.dst << ',' << r.phi << ',' << r.baseline << '\n';
  }
  out.precision(old);
}

}  // namespace sentinf
