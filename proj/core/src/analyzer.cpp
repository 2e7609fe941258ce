#include "accrit/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "accrit/errors.hpp"
#include "accrit/zigzag.hpp"

namespace accrit {
namespace {

// Rounding grace applied to every length-budget comparison.
constexpr double kBudgetGrace = 1e-9;

// Exact search refuses rather than silently taking minutes or gigabytes.
constexpr double kMaxExactCells = 5e7;
constexpr double kMaxExactOps = 4e8;

std::size_t greedy_width_cap(std::size_t samples) {
  std::size_t cap = std::max<std::size_t>(64, samples / 64);
  return std::min(cap, samples - 1);
}

void validate_delta(double delta) {
  if (!(delta > 0) || !std::isfinite(delta)) {
    throw std::invalid_argument(
        "ac_modulus: delta must be positive and finite");
  }
}

double uniform_step_or_throw(const SampledCurve& curve) {
  const auto& t = curve.params();
  const double h = (t.back() - t.front()) / double(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (std::abs(t[i + 1] - t[i] - h) > 1e-9 * std::max(1.0, h)) {
      throw std::invalid_argument(
          "ac_modulus: exact search requires uniformly spaced parameters; use "
          "greedy mode on irregular grids");
    }
  }
  return h;
}

ModulusResult exact_modulus(const SampledCurve& curve, double delta) {
  const std::size_t n = curve.size();
  const double h = uniform_step_or_throw(curve);
  std::size_t steps =
      static_cast<std::size_t>(std::floor((delta + kBudgetGrace) / h));
  steps = std::min(steps, n - 1);

  ModulusResult res;
  res.delta = delta;
  res.mode = SearchMode::Exact;
  if (steps == 0) return res;

  const double cells = double(n) * double(steps + 1);
  const double ops = 0.5 * double(n) * double(steps) * double(steps);
  if (cells > kMaxExactCells || ops > kMaxExactOps) {
    std::ostringstream msg;
    msg << "ac_modulus: exact table would need " << cells
        << " cells and about " << ops << " updates (" << n << " samples, "
        << steps << "-step budget); use greedy mode";
    throw BudgetGuardError(msg.str());
  }

  // f[p][s] = best total gap over interval families inside [0, p] spending at
  // most s grid steps. An interval ending at p of width w costs w steps and
  // earns the distance between its endpoint images.
  const std::size_t W = steps + 1;
  std::vector<double> f(n * W, 0.0);
  for (std::size_t p = 1; p < n; ++p) {
    for (std::size_t s = 0; s <= steps; ++s) {
      double best = f[(p - 1) * W + s];
      const std::size_t wmax = std::min(p, s);
      for (std::size_t w = 1; w <= wmax; ++w) {
        const double cand =
            f[(p - w) * W + (s - w)] + curve.point_distance(p - w, p);
        if (cand > best) best = cand;
      }
      f[p * W + s] = best;
    }
  }

  // Walk the table back. Preferring the skip on ties avoids zero-gap
  // intervals; otherwise the longest matching interval is taken. Comparisons
  // are exact because the same expressions are recomputed on the same values.
  std::vector<std::array<std::size_t, 2>> taken;
  std::size_t p = n - 1;
  std::size_t s = steps;
  while (p > 0 && s > 0) {
    if (f[p * W + s] == f[(p - 1) * W + s]) {
      --p;
      continue;
    }
    bool matched = false;
    for (std::size_t w = std::min(p, s); w >= 1; --w) {
      if (f[p * W + s] ==
          f[(p - w) * W + (s - w)] + curve.point_distance(p - w, p)) {
        taken.push_back({p - w, p});
        p -= w;
        s -= w;
        matched = true;
        break;
      }
    }
    if (!matched) --p;
  }
  std::reverse(taken.begin(), taken.end());

  res.family.intervals = std::move(taken);
  for (const auto& iv : res.family.intervals) {
    res.family.total_length += curve.param(iv[1]) - curve.param(iv[0]);
    res.family.total_gap += curve.point_distance(iv[0], iv[1]);
  }
  return res;
}

struct Candidate {
  std::uint32_t begin = 0;
  std::uint32_t width = 0;
  double density = 0;
};

ModulusResult greedy_modulus(const SampledCurve& curve, double delta) {
  const std::size_t n = curve.size();
  const std::size_t wcap = greedy_width_cap(n);

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t wmax = std::min(wcap, n - 1 - i);
    for (std::size_t w = 1; w <= wmax; ++w) {
      const double len = curve.param(i + w) - curve.param(i);
      if (len > delta + kBudgetGrace) break;
      const double gap = curve.point_distance(i, i + w);
      if (gap > kEqTol) {
        cands.push_back({static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(w), gap / len});
      }
    }
  }
  // Highest gap per unit length first; widest first among equals so a full
  // feature beats its own sub-windows; position breaks the remaining ties.
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.density != b.density) return a.density > b.density;
              if (a.width != b.width) return a.width > b.width;
              return a.begin < b.begin;
            });

  std::map<std::size_t, std::size_t> occupied;
  double used = 0;
  for (const auto& c : cands) {
    const std::size_t lo = c.begin;
    const std::size_t hi = c.begin + c.width;
    const double len = curve.param(hi) - curve.param(lo);
    if (used + len > delta + kBudgetGrace) continue;
    auto it = occupied.lower_bound(lo);
    if (it != occupied.end() && it->first < hi) continue;
    if (it != occupied.begin() && std::prev(it)->second > lo) continue;
    occupied.emplace(lo, hi);
    used += len;
  }

  ModulusResult res;
  res.delta = delta;
  res.mode = SearchMode::Greedy;
  for (const auto& [lo, hi] : occupied) {
    res.family.intervals.push_back({lo, hi});
    res.family.total_length += curve.param(hi) - curve.param(lo);
    res.family.total_gap += curve.point_distance(lo, hi);
  }
  return res;
}

}  // namespace

ModulusResult ac_modulus(const SampledCurve& curve, double delta,
                         SearchMode mode) {
  validate_delta(delta);
  return mode == SearchMode::Exact ? exact_modulus(curve, delta)
                                   : greedy_modulus(curve, delta);
}

IntervalFamily merge_touching_intervals(const SampledCurve& curve,
                                        IntervalFamily family) {
  auto& iv = family.intervals;
  std::sort(iv.begin(), iv.end());
  std::vector<std::array<std::size_t, 2>> merged;
  for (const auto& cur : iv) {
    if (!merged.empty() && cur[0] <= merged.back()[1]) {
      merged.back()[1] = std::max(merged.back()[1], cur[1]);
    } else {
      merged.push_back(cur);
    }
  }
  family.intervals = std::move(merged);
  family.total_length = 0;
  family.total_gap = 0;
  for (const auto& m : family.intervals) {
    family.total_length += curve.param(m[1]) - curve.param(m[0]);
    family.total_gap += curve.point_distance(m[0], m[1]);
  }
  return family;
}

ACReport analyze(const SampledCurve& curve, double epsilon,
                 const std::vector<double>& deltas, SearchMode mode) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("analyze: epsilon must be positive and finite");
  }
  if (deltas.empty()) {
    throw std::invalid_argument("analyze: need at least one delta");
  }
  ACReport report;
  report.epsilon = epsilon;
  std::size_t smallest = 0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    auto mr = ac_modulus(curve, deltas[k], mode);
    ACEntry entry;
    entry.delta = deltas[k];
    entry.best_gap = mr.family.total_gap;
    entry.budget_used = mr.family.total_length;
    entry.family = std::move(mr.family);
    report.entries.push_back(std::move(entry));
    if (deltas[k] < deltas[smallest]) smallest = k;
  }
  report.violation = report.entries[smallest].best_gap > epsilon;
  return report;
}

FamilySearchResult find_violating_families(const SampledCurve& curve,
                                           double epsilon, std::size_t n_cap,
                                           SearchMode mode) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument(
        "find_violating_families: epsilon must be positive and finite");
  }
  if (n_cap == 0) {
    throw std::invalid_argument(
        "find_violating_families: n_cap must be at least 1");
  }
  FamilySearchResult out;
  out.n_cap = n_cap;
  out.all_found = true;
  const bool width_capped =
      mode == SearchMode::Greedy &&
      greedy_width_cap(curve.size()) < curve.size() - 1;
  for (std::size_t n = 1; n <= n_cap; ++n) {
    const double budget = 1.0 / double(n);
    auto mr = ac_modulus(curve, budget, mode);
    FamilySearchEntry entry;
    entry.n = n;
    entry.capped = width_capped;
    entry.family = merge_touching_intervals(curve, std::move(mr.family));
    entry.best_gap = entry.family.total_gap;
    entry.found = entry.family.total_gap > epsilon &&
                  entry.family.total_length <= budget + kBudgetGrace;
    out.all_found = out.all_found && entry.found;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

namespace {

using Span = std::array<std::size_t, 2>;

std::string format_span(const SampledCurve& curve, const Span& s) {
  std::ostringstream os;
  os << "[" << curve.param(s[0]) << ", " << curve.param(s[1]) << "]";
  return os.str();
}

}  // namespace

WitnessCertificate build_global_witness(const SampledCurve& curve,
                                        const FamilySearchResult& search,
                                        double epsilon, double theta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument(
        "build_global_witness: epsilon must be positive and finite");
  }
  if (!(theta > 0 && theta < 1)) {
    throw std::invalid_argument(
        "build_global_witness: theta must lie strictly between 0 and 1");
  }
  if (search.entries.empty() || !search.all_found) {
    throw std::invalid_argument(
        "build_global_witness: the family search must have found a family "
        "for every n");
  }

  const std::size_t last = curve.size() - 1;
  std::vector<std::string> log;

  // Pad each interval by at most one sample per side. A pad is taken only
  // when it stays inside the domain, cannot collide with a neighbour's pad,
  // and does not shrink the endpoint gap. If padding would blow the family's
  // length budget, the family keeps its original intervals.
  struct FamilyPlan {
    std::size_t n = 0;
    std::vector<Span> spans;
  };
  std::vector<FamilyPlan> plans;
  for (const auto& entry : search.entries) {
    std::vector<Span> ivs = entry.family.intervals;
    std::sort(ivs.begin(), ivs.end());
    std::vector<Span> padded;
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      std::size_t c = ivs[k][0];
      std::size_t d = ivs[k][1];
      const double base_gap = curve.point_distance(c, d);
      const bool room_left =
          c >= 1 && (k == 0 || c - ivs[k - 1][1] > 2);
      const bool room_right =
          d + 1 <= last && (k + 1 == ivs.size() || ivs[k + 1][0] - d > 2);
      if (room_left && curve.point_distance(c - 1, d) >= base_gap - 1e-9) {
        --c;
      }
      if (room_right &&
          curve.point_distance(c, d + 1) >= curve.point_distance(c, d) - 1e-9) {
        ++d;
      }
      padded.push_back({c, d});
    }
    double padded_length = 0;
    for (const auto& s : padded) {
      padded_length += curve.param(s[1]) - curve.param(s[0]);
    }
    if (padded_length > 1.0 / double(entry.n) + kBudgetGrace) {
      padded = ivs;
      std::ostringstream os;
      os << "family n=" << entry.n
         << ": padding exceeded the length budget, keeping the original "
            "intervals";
      log.push_back(os.str());
    }
    plans.push_back({entry.n, std::move(padded)});
  }

  // Families frequently select the same intervals; each distinct one is
  // processed once, left to right, and shared afterwards.
  std::map<Span, std::size_t> distinct;
  for (const auto& plan : plans) {
    for (const auto& s : plan.spans) distinct.emplace(s, 0);
  }
  std::vector<Span> order;
  {
    std::size_t id = 0;
    for (auto& [span, slot] : distinct) {
      slot = id++;
      order.push_back(span);
    }
  }

  auto acc = PartialLipschitzFunction::empty(curve.space());
  std::vector<double> ladder;
  std::vector<CertInterval> processed(order.size());
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const Span span = order[idx];
    const double constant = 2.0 - 1.0 / double(idx + 1);
    ladder.push_back(constant);

    CertInterval ci;
    ci.span = {curve.param(span[0]), curve.param(span[1])};
    ci.gap = curve.point_distance(span[0], span[1]);
    ci.length = ci.span[1] - ci.span[0];
    ci.constant = constant;

    if (acc.is_empty()) {
      // Nothing constrains the first interval: pin its endpoint values at
      // slope exactly one, which seeds the whole construction.
      acc.add(curve.point(span[0]), 0.0);
      acc.add(curve.point(span[1]), ci.gap);
      ci.partitions = {{ci.span[0], ci.span[1]}};
      ci.variation = ci.gap;
      ci.slack = 0;
    } else {
      try {
        auto built = staged_witness_general(curve.slice(span[0], span[1]), acc,
                                            constant, theta, kEqTol,
                                            /*skip_coarse=*/true);
        acc = built.staged.extended;
        for (const auto& run : built.staged.runs) {
          if (run.run) ci.partitions.push_back(run.run->partition_params);
        }
        ci.variation = built.staged.achieved_variation;
        ci.slack = built.staged.total_slack;
        if (built.modification.removed_count > 0) {
          std::ostringstream os;
          os << "interval " << format_span(curve, span) << ": removed "
             << built.modification.removed_count
             << " loop sample(s) before the staged build";
          log.push_back(os.str());
        }
        for (const auto& run : built.staged.runs) {
          if (run.skipped && !run.segment.zero_gap) {
            std::ostringstream os;
            os << "interval " << format_span(curve, span)
               << ": a rung found no usable inner segment (ratio "
               << run.segment.ratio << "), charged " << run.slack_charge
               << " to slack";
            log.push_back(os.str());
          }
        }
      } catch (const std::exception& e) {
        ci.skipped = true;
        ci.note = e.what();
        ci.partitions.clear();
        ci.variation = 0;
        ci.slack = theta * constant * ci.gap;
        std::ostringstream os;
        os << "interval " << format_span(curve, span)
           << " skipped: " << e.what();
        log.push_back(os.str());
      }
    }
    processed[idx] = std::move(ci);
  }

  std::vector<CertFamily> families;
  for (const auto& plan : plans) {
    CertFamily fam;
    fam.n = plan.n;
    for (const auto& s : plan.spans) {
      const CertInterval& ci = processed[distinct.at(s)];
      fam.total_length += ci.length;
      fam.total_gap += ci.gap;
      fam.variation_sum += ci.variation;
      fam.slack += ci.slack;
      fam.intervals.push_back(ci);
    }
    families.push_back(std::move(fam));
  }

  return WitnessCertificate{1,     epsilon,  theta,    std::move(ladder),
                            2.0,   std::move(acc),     std::move(families),
                            std::move(log)};
}

namespace {

std::string family_label(const CertFamily& fam, std::size_t interval_index) {
  std::ostringstream os;
  os << "family n=" << fam.n << ", interval " << interval_index;
  return os.str();
}

}  // namespace

VerifyResult verify_certificate(const SampledCurve& curve,
                                const WitnessCertificate& cert) {
  VerifyResult out;
  auto fail = [&](const char* check, const std::string& detail) {
    out.failures.push_back({check, detail});
  };

  // structure: everything the later checks rely on.
  if (cert.version != 1) {
    std::ostringstream os;
    os << "unsupported certificate version " << cert.version;
    fail("structure", os.str());
  }
  if (!(cert.epsilon > 0) || !std::isfinite(cert.epsilon)) {
    fail("structure", "epsilon must be positive and finite");
  }
  if (!(cert.theta > 0 && cert.theta < 1)) {
    fail("structure", "theta must lie strictly between 0 and 1");
  }
  if (!(cert.witness_constant > 0) || !std::isfinite(cert.witness_constant)) {
    fail("structure", "witness constant must be positive and finite");
  }
  if (cert.families.empty()) fail("structure", "certificate has no families");
  if (cert.ladder.empty()) {
    fail("structure", "certificate has an empty constant ladder");
  }
  for (std::size_t k = 0; k < cert.ladder.size(); ++k) {
    const double L = cert.ladder[k];
    if (!(L > 0) || !std::isfinite(L) || L > cert.witness_constant + 1e-9 ||
        (k > 0 && L <= cert.ladder[k - 1])) {
      fail("structure",
           "ladder constants must increase and stay at or below the witness "
           "constant");
      break;
    }
  }
  if (cert.witness.space().kind() != curve.space().kind()) {
    fail("structure", "witness metric kind differs from the curve's");
  }

  const auto& wsup = cert.witness.support();
  const auto& wval = cert.witness.values();
  auto witness_value_at = [&](const Point& x) -> std::optional<double> {
    for (std::size_t j = 0; j < wsup.size(); ++j) {
      if (curve.space().distance(x, wsup[j]) <= 1e-12) return wval[j];
    }
    return std::nullopt;
  };
  auto on_ladder = [&](double c) {
    for (double L : cert.ladder) {
      if (std::abs(L - c) <= 1e-12) return true;
    }
    return false;
  };

  for (const auto& fam : cert.families) {
    if (fam.n == 0) {
      fail("structure", "family index n must be at least 1");
      continue;
    }
    if (fam.intervals.empty()) {
      std::ostringstream os;
      os << "family n=" << fam.n << " has no intervals";
      fail("structure", os.str());
      continue;
    }
    double sum_length = 0;
    double sum_gap = 0;
    double sum_var = 0;
    double sum_slack = 0;
    for (std::size_t ii = 0; ii < fam.intervals.size(); ++ii) {
      const CertInterval& ci = fam.intervals[ii];
      const std::string label = family_label(fam, ii);
      sum_length += ci.length;
      sum_gap += ci.gap;
      sum_var += ci.variation;
      sum_slack += ci.slack;

      if (!(ci.span[0] < ci.span[1])) {
        fail("structure", label + ": interval span is not increasing");
        continue;
      }
      if (ci.span[0] < curve.param_start() - 1e-12 ||
          ci.span[1] > curve.param_end() + 1e-12) {
        fail("structure", label + ": span leaves the curve's domain");
        continue;
      }
      const auto i0 = curve.locate_param(ci.span[0], 1e-9);
      const auto i1 = curve.locate_param(ci.span[1], 1e-9);
      if (!i0 || !i1) {
        fail("structure", label + ": span endpoint is not a grid parameter");
        continue;
      }
      if (std::abs(curve.point_distance(*i0, *i1) - ci.gap) > 1e-9) {
        fail("structure", label + ": stored gap does not match the curve");
      }
      if (std::abs((ci.span[1] - ci.span[0]) - ci.length) > 1e-9) {
        fail("structure", label + ": stored length does not match the span");
      }
      if (!on_ladder(ci.constant)) {
        fail("structure", label + ": interval constant is not on the ladder");
      }
      if (ci.skipped) {
        if (!ci.partitions.empty()) {
          fail("structure", label + ": skipped interval carries partitions");
        }
        continue;
      }
      if (ci.partitions.empty()) {
        fail("structure", label + ": interval has no partitions");
        continue;
      }
      for (const auto& part : ci.partitions) {
        if (part.size() < 2) {
          fail("structure", label + ": partition needs at least two points");
          continue;
        }
        for (std::size_t k = 0; k < part.size(); ++k) {
          if (k > 0 && !(part[k] > part[k - 1])) {
            fail("structure", label + ": partition is not increasing");
            break;
          }
          if (part[k] < ci.span[0] - 1e-12 || part[k] > ci.span[1] + 1e-12) {
            fail("structure", label + ": partition leaves the interval span");
            break;
          }
          const auto pi = curve.locate_param(part[k], 1e-9);
          if (!pi) {
            fail("structure",
                 label + ": partition point is not a grid parameter");
            break;
          }
          if (!witness_value_at(curve.point(*pi))) {
            fail("structure",
                 label + ": partition point is not on the witness support");
            break;
          }
        }
      }
    }
    std::ostringstream os;
    os << "family n=" << fam.n;
    if (std::abs(sum_length - fam.total_length) > 1e-9) {
      fail("structure", os.str() + ": stored total length disagrees with its "
                                   "intervals");
    }
    if (std::abs(sum_gap - fam.total_gap) > 1e-9) {
      fail("structure",
           os.str() + ": stored total gap disagrees with its intervals");
    }
    if (std::abs(sum_var - fam.variation_sum) > 1e-9) {
      fail("structure",
           os.str() + ": stored variation sum disagrees with its intervals");
    }
    if (std::abs(sum_slack - fam.slack) > 1e-9) {
      fail("structure",
           os.str() + ": stored slack disagrees with its intervals");
    }
    if (!(fam.total_gap > cert.epsilon)) {
      fail("structure",
           os.str() + ": total gap does not exceed epsilon");
    }
  }

  // lipschitz: the witness must honour its declared constant.
  if (cert.witness.is_empty()) {
    fail("lipschitz", "witness has no support");
  } else if (cert.witness.size() >= 2) {
    try {
      const double inferred = infer_constant(cert.witness);
      if (inferred > cert.witness_constant + 1e-9) {
        std::ostringstream os;
        os << "witness constant " << inferred << " exceeds the declared "
           << cert.witness_constant;
        fail("lipschitz", os.str());
      }
    } catch (const std::exception& e) {
      fail("lipschitz", e.what());
    }
  }

  // family-length: the budget that makes the families evidence at all.
  for (const auto& fam : cert.families) {
    if (fam.n == 0) continue;
    double sum = 0;
    for (const auto& ci : fam.intervals) sum += ci.span[1] - ci.span[0];
    if (sum > 1.0 / double(fam.n) + kBudgetGrace) {
      std::ostringstream os;
      os << "family n=" << fam.n << ": total length " << sum << " exceeds 1/"
         << fam.n;
      fail("family-length", os.str());
    }
  }

  // family-disjoint: intervals within one family may touch but not overlap.
  for (const auto& fam : cert.families) {
    std::vector<std::array<double, 2>> spans;
    for (const auto& ci : fam.intervals) spans.push_back(ci.span);
    std::sort(spans.begin(), spans.end());
    for (std::size_t k = 1; k < spans.size(); ++k) {
      if (spans[k][0] < spans[k - 1][1] - 1e-12) {
        std::ostringstream os;
        os << "family n=" << fam.n << ": intervals overlap near parameter "
           << spans[k][0];
        fail("family-disjoint", os.str());
        break;
      }
    }
  }

  // variation-mismatch: recompute each interval's variation through the
  // witness and compare with the stored value.
  for (const auto& fam : cert.families) {
    for (std::size_t ii = 0; ii < fam.intervals.size(); ++ii) {
      const CertInterval& ci = fam.intervals[ii];
      if (ci.skipped) continue;
      double recomputed = 0;
      bool resolvable = true;
      for (const auto& part : ci.partitions) {
        std::optional<double> prev;
        for (double t : part) {
          const auto pi = curve.locate_param(t, 1e-9);
          if (!pi) {
            resolvable = false;
            break;
          }
          const auto v = witness_value_at(curve.point(*pi));
          if (!v) {
            resolvable = false;
            break;
          }
          if (prev) recomputed += std::abs(*v - *prev);
          prev = v;
        }
        if (!resolvable) break;
      }
      if (!resolvable) continue;  // already reported under structure
      if (std::abs(recomputed - ci.variation) > 1e-9) {
        std::ostringstream os;
        os << family_label(fam, ii) << ": stored variation " << ci.variation
           << " but the witness yields " << recomputed;
        fail("variation-mismatch", os.str());
      }
    }
  }

  // variation-bound: the certified margin itself.
  for (const auto& fam : cert.families) {
    const double margin = cert.theta * cert.epsilon;
    if (!(fam.slack < margin)) {
      std::ostringstream os;
      os << "family n=" << fam.n << ": slack " << fam.slack
         << " consumes the whole margin " << margin;
      fail("variation-bound", os.str());
      continue;
    }
    if (!(fam.variation_sum > margin - fam.slack - 1e-9)) {
      std::ostringstream os;
      os << "family n=" << fam.n << ": variation " << fam.variation_sum
         << " does not reach " << margin << " minus slack " << fam.slack;
      fail("variation-bound", os.str());
    }
  }

  out.pass = out.failures.empty();
  return out;
}

ProbeReport composition_probe(const SampledCurve& curve, std::size_t trials,
                              std::uint64_t seed,
                              const std::vector<double>& deltas,
                              SearchMode mode,
                              const ExtensionField* injected) {
  if (trials == 0) {
    throw std::invalid_argument("composition_probe: need at least one trial");
  }
  if (deltas.empty()) {
    throw std::invalid_argument("composition_probe: need at least one delta");
  }
  for (double d : deltas) validate_delta(d);

  ProbeReport report;
  report.deltas = deltas;
  report.max_gap_per_delta.assign(deltas.size(), 0.0);

  const std::size_t n = curve.size();
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ProbeTrial trial;
    trial.seed = rng();

    std::optional<ExtensionField> own;
    const ExtensionField* field = injected;
    if (field == nullptr) {
      // A random function of the sample points themselves: a signed mix of
      // distances to two anchors, so coincident points always agree.
      std::mt19937_64 trng(trial.seed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      const std::size_t want =
          std::min<std::size_t>(n, std::uniform_int_distribution<std::size_t>(
                                       2, 6)(trng));
      std::set<std::size_t> chosen;
      while (chosen.size() < want) chosen.insert(pick(trng));
      const Point anchor_a = curve.point(*chosen.begin());
      const Point anchor_b = curve.point(*std::prev(chosen.end()));
      const double ca = coef(trng);
      const double cb = coef(trng);
      auto pf = PartialLipschitzFunction::empty(curve.space());
      for (std::size_t i : chosen) {
        const Point& x = curve.point(i);
        pf.add(x, ca * curve.space().distance(x, anchor_a) +
                      cb * curve.space().distance(x, anchor_b));
      }
      const double constant = pf.size() >= 2 ? infer_constant(pf) : 0.0;
      own.emplace(std::move(pf), constant);
      field = &*own;
    }
    trial.support_constant = field->constant();

    std::vector<Point> values;
    values.reserve(n);
    double steepest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = field->upper(curve.point(i));
      if (i > 0) {
        const double dt = curve.param(i) - curve.param(i - 1);
        steepest = std::max(steepest, std::abs(v - values.back()[0]) / dt);
      }
      values.push_back({v});
    }
    trial.composite_constant = steepest;

    SampledCurve composite(MetricSpace::euclidean(1), curve.params(),
                           std::move(values));
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      auto mr = ac_modulus(composite, deltas[k], mode);
      trial.best_gaps.push_back(mr.family.total_gap);
      report.max_gap_per_delta[k] =
          std::max(report.max_gap_per_delta[k], mr.family.total_gap);
    }
    report.trials.push_back(std::move(trial));
  }
  return report;
}

}  // namespace accrit
