#include "accrit/modification.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace accrit {

CarrierSet CarrierSet::full(std::size_t grid_size) {
  if (grid_size < 2)
    throw std::invalid_argument("carrier needs at least two grid points");
  CarrierSet c;
  c.grid_size_ = grid_size;
  c.ranges_ = {{0, grid_size - 1}};
  return c;
}

bool CarrierSet::contains(std::size_t i) const {
  for (const auto& r : ranges_)
    if (r[0] <= i && i <= r[1]) return true;
  return false;
}

bool CarrierSet::is_hole_pair(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& h : holes_)
    if (h[0] == i && h[1] == j) return true;
  return false;
}

std::vector<std::size_t> CarrierSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(kept_count());
  for (const auto& r : ranges_)
    for (std::size_t i = r[0]; i <= r[1]; ++i) out.push_back(i);
  return out;
}

std::size_t CarrierSet::kept_count() const {
  std::size_t n = 0;
  for (const auto& r : ranges_) n += r[1] - r[0] + 1;
  return n;
}

bool CarrierSet::same_range(std::size_t i, std::size_t j) const {
  for (const auto& r : ranges_)
    if (r[0] <= i && i <= r[1]) return r[0] <= j && j <= r[1];
  return false;
}

void CarrierSet::puncture(std::size_t c, std::size_t d) {
  if (c >= d) throw std::invalid_argument("hole ends must be ordered");
  for (std::size_t k = 0; k < ranges_.size(); ++k) {
    auto r = ranges_[k];
    if (r[0] <= c && d <= r[1]) {
      std::vector<std::array<std::size_t, 2>> repl;
      repl.push_back({r[0], c});
      repl.push_back({d, r[1]});
      ranges_.erase(ranges_.begin() + k);
      ranges_.insert(ranges_.begin() + k, repl.begin(), repl.end());
      holes_.push_back({c, d});
      std::sort(holes_.begin(), holes_.end());
      return;
    }
  }
  throw std::invalid_argument("hole ends do not lie in one kept range");
}

namespace {

ModificationResult remove_loops(const SampledCurve& curve, CarrierSet carrier,
                                double eq_tol) {
  ModificationResult out{std::move(carrier), {}, 0};
  for (;;) {
    bool have = false;
    std::size_t best_c = 0, best_d = 0, best_len = 0;
    for (const auto& r : out.carrier.ranges()) {
      for (std::size_t c = r[0]; c < r[1]; ++c) {
        if (r[1] - c <= best_len) break;
        for (std::size_t d = r[1]; d > c; --d) {
          if (d - c <= best_len) break;
          if (curve.point_distance(c, d) <= eq_tol) {
            best_c = c;
            best_d = d;
            best_len = d - c;
            have = true;
            break;
          }
        }
      }
    }
    if (!have) break;
    out.carrier.puncture(best_c, best_d);
    out.removal_log.push_back({best_c, best_d});
    out.removed_count += best_d - best_c - 1;
  }
  return out;
}

}  // namespace

ModificationResult piecewise_injective_modification(const SampledCurve& curve,
                                                    double eq_tol) {
  return remove_loops(curve, CarrierSet::full(curve.size()), eq_tol);
}

ModificationResult refine_modification(const SampledCurve& curve,
                                       const CarrierSet& carrier,
                                       double eq_tol) {
  if (carrier.grid_size() != curve.size())
    throw std::invalid_argument("carrier grid size does not match the curve");
  return remove_loops(curve, carrier, eq_tol);
}

InjectivityReport verify_piecewise_injective(const SampledCurve& curve,
                                             const CarrierSet& carrier,
                                             double eq_tol) {
  if (carrier.grid_size() != curve.size())
    throw std::invalid_argument("carrier grid size does not match the curve");
  InjectivityReport rep;
  std::vector<std::size_t> kept = carrier.indices();
  std::vector<std::size_t> mult(kept.size(), 1);
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      if (curve.point_distance(kept[a], kept[b]) > eq_tol) continue;
      ++mult[a];
      ++mult[b];
      if (!carrier.is_hole_pair(kept[a], kept[b]))
        rep.violations.push_back({kept[a], kept[b]});
    }
  for (std::size_t m : mult) rep.max_multiplicity = std::max(rep.max_multiplicity, m);
  for (std::size_t a = 0; a + 1 < kept.size(); ++a)
    rep.max_jump =
        std::max(rep.max_jump, curve.point_distance(kept[a], kept[a + 1]));
  rep.pass = rep.violations.empty() && rep.max_multiplicity <= 2 &&
             rep.max_jump <= curve.oscillation() + eq_tol;
  return rep;
}

}  // namespace accrit
